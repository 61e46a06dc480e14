import json

import pytest

from monpoincare.cli import RunConfig, build_parser, main, run
from monpoincare.core import InputError


@pytest.fixture
def ideal_file(tmp_path):
    def write(name, vars_, gens):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps({"vars": vars_, "gens": gens}))
        return str(path)
    return write


@pytest.fixture
def closing_pair(ideal_file):
    a = ideal_file("I", ["x1", "x2", "x3"], [[2, 0, 0], [0, 2, 1]])
    b = ideal_file("Ip", ["x1", "x2", "x3"], [[1, 2, 0], [1, 0, 2]])
    return a, b


def test_q_closing_example_table(closing_pair, capsys):
    _, b = closing_pair
    assert main(["q", b]) == 0
    out = capsys.readouterr().out
    assert "Q = 1 - t^2*y1*y3^2 - t^2*y1*y2^2 - t^3*y1*y2^2*y3^2" in out


def test_q_empty_ideal(ideal_file, capsys):
    path = ideal_file("empty", ["x", "y"], [])
    assert main(["q", path]) == 0
    assert "Q = 1" in capsys.readouterr().out


def test_q_json_stable(closing_pair, capsys):
    a, _ = closing_pair
    assert main(["q", a, "--format", "json"]) == 0
    first = capsys.readouterr().out
    assert main(["q", a, "-f", "json"]) == 0
    second = capsys.readouterr().out
    assert first == second
    doc = json.loads(first)
    assert {"t": 4, "y": [2, 2, 1], "c": 1} in doc["terms"]


def test_q_check_passes(closing_pair):
    a, b = closing_pair
    assert run(RunConfig("q", [a], check=True)) == 0
    assert run(RunConfig("q", [b], check=True)) == 0


def test_lattice_iso_closing_pair(closing_pair, capsys):
    a, b = closing_pair
    assert main(["lattice-iso", a, b, "--transport"]) == 0
    out = capsys.readouterr().out
    assert "2 lattice isomorphism(s)" in out
    assert "gcd_preserving=False" in out
    assert "gcd_preserving=True" not in out


def test_lattice_iso_json(closing_pair, capsys):
    a, b = closing_pair
    assert main(["lattice-iso", a, b, "-f", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["count"] == 2
    assert all(not iso["gcd_preserving"] for iso in doc["isomorphisms"])


def test_lattice_iso_transport_consistency_self(closing_pair):
    a, _ = closing_pair
    # identity isomorphism is gcd-preserving; transported Q must match
    assert run(RunConfig("lattice-iso", [a, a], transport=True)) == 0


def test_poincare_and_deviations(closing_pair, capsys):
    _, b = closing_pair
    assert main(["poincare", b, "--tmax", "4", "--check"]) == 0
    out = capsys.readouterr().out
    assert "Tor^R(k,k)" in out
    assert main(["deviations", b, "--nmax", "4", "--check"]) == 0


def test_candidates_and_verify_lcm(closing_pair, capsys):
    a, _ = closing_pair
    assert main(["candidates", a]) == 0
    out = capsys.readouterr().out
    assert "candidate denominator terms" in out
    assert main(["verify-lcm", a]) == 0


def test_complex_subcommands(closing_pair, ideal_file, capsys):
    a, _ = closing_pair
    for sub in ("taylor", "scarf", "koszul", "betti"):
        assert main([sub, a, "--check"]) == 0, sub
    gen = ideal_file("gen", ["x", "y"], [[3, 0], [1, 1], [0, 2]])
    assert main(["scarf", gen]) == 0
    assert "ranks [1, 3, 2]" in capsys.readouterr().out


def test_golod_subcommands(closing_pair, ideal_file, capsys):
    a, b = closing_pair
    assert main(["golod", b, "--check"]) == 0
    assert "IS Golod" in capsys.readouterr().out
    assert main(["golod", a]) == 0
    assert "is NOT Golod" in capsys.readouterr().out
    gen = ideal_file("gen", ["x", "y"], [[3, 0], [1, 1], [0, 2]])
    assert main(["golod-generic", gen, "--check"]) == 0
    # non-generic input is a precondition violation: exit 2
    assert main(["golod-generic", b]) == 2


def test_eagon_subcommand(ideal_file):
    gen = ideal_file("gen", ["x", "y"], [[3, 0], [1, 1], [0, 2]])
    assert main(["eagon", gen, "--imax", "5", "--check"]) == 0


def test_polarize_subcommand(closing_pair, capsys):
    a, _ = closing_pair
    assert main(["polarize", a, "--check", "-f", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["polarized"]["vars"] == ["x1_1", "x1_2", "x2_1", "x2_2", "x3"]


def test_exit_codes(ideal_file, tmp_path, capsys):
    missing = str(tmp_path / "nope.json")
    assert main(["q", missing]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert main(["q", str(bad)]) == 2
    a = ideal_file("a", ["x"], [[2]])
    assert main(["q", a, "--char", "4"]) == 2  # not a prime
    assert main(["q", a, "--tmax", "1"]) == 2  # below deg m_I
    capsys.readouterr()


def test_char_option_runs(closing_pair, capsys):
    _, b = closing_pair
    assert main(["q", b, "--char", "2"]) == 0
    out = capsys.readouterr().out
    assert "t^3*y1*y2^2*y3^2" in out


def test_jobs_option(closing_pair):
    _, b = closing_pair
    assert run(RunConfig("poincare", [b], tmax=3, check=True, jobs=2)) == 0


def test_parser_rejects_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["frobnicate", "x.json"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_runconfig_validation():
    with pytest.raises(InputError):
        RunConfig("q", ["x.json"], characteristic=6)
    with pytest.raises(InputError):
        RunConfig("q", ["x.json"], fmt="yaml")
    with pytest.raises(InputError):
        RunConfig("q", ["x.json"], jobs=0)
    assert run(RunConfig("nonsense", ["x.json"])) == 2
