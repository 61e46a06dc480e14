"""Command-line interface: one binary, subcommand per operation.

Exit codes: 0 success, 1 verification failure (a requested check did not
hold), 2 input error (bad file, bad arguments, violated precondition).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .core import (
    InputError,
    MonomialIdeal,
    load_ideal,
    mdeg_add,
    monomial_str,
    polarize,
    total_degree,
)
from .complexes import (
    Ring,
    homology,
    is_taylor_minimal,
    koszul_complex,
    minimize,
    scarf_complex,
    taylor_complex,
)
from .lattice import (
    find_lattice_isomorphisms,
    polarization_lattice_map,
    transport_denominator,
)
from .resolution import (
    eagon_resolution,
    golod_denominator,
    is_golod_generic,
    is_golod_truncated,
    resolve_residue_field,
)
from .series import (
    candidate_terms,
    denominator,
    deviations,
    series_from_deviations,
    verify_lcm_coefficients,
)


class VerificationFailure(Exception):
    """A --check (or verify-style subcommand) found a violated property."""


@dataclass
class RunConfig:
    subcommand: str
    paths: list = field(default_factory=list)
    tmax: int | None = None
    nmax: int | None = None
    imax: int | None = None
    characteristic: int = 0
    fmt: str = "table"
    check: bool = False
    transport: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.characteristic:
            p = self.characteristic
            if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
                raise InputError(f"characteristic must be 0 or a prime, got {p}")
        if self.fmt not in ("table", "json"):
            raise InputError(f"unknown output format {self.fmt!r}")
        if self.jobs < 1:
            raise InputError("--jobs must be at least 1")


def _emit_json(payload):
    print(json.dumps(payload, sort_keys=True, indent=2))


def _series_payload(Q, ideal):
    return {"ideal": ideal.to_dict(), **Q.to_json_dict()}


def _print_series(Q, ideal, fmt, title):
    names = tuple(f"y{i + 1}" for i in range(ideal.num_vars))
    if fmt == "json":
        _emit_json(_series_payload(Q, ideal))
        return
    print(f"{title} = {Q.render(names)}")
    print(f"{'t':>3}  {'coeff':>6}  y-multidegree")
    for (t, j), c in Q.terms():
        print(f"{t:>3}  {c:>6}  {monomial_str(j, names)} {list(j)}")


def _print_betti(table, ideal, fmt, what):
    rows = sorted(table.items())
    if fmt == "json":
        _emit_json({"ideal": ideal.to_dict(), "what": what,
                    "table": [{"i": i, "y": list(j), "dim": d} for (i, j), d in rows]})
        return
    print(f"{what} ({ideal})")
    print(f"{'i':>3}  {'dim':>4}  multidegree")
    for (i, j), d in rows:
        print(f"{i:>3}  {d:>4}  {monomial_str(j, ideal.var_names)} {list(j)}")


def _ranks_payload(C):
    return [{"i": i, "rank": len(m),
             "multidegrees": sorted(list(d) for d in m)} for i, m in enumerate(C.modules)]


def _print_complex(C, ideal, fmt, what):
    if fmt == "json":
        _emit_json({"ideal": ideal.to_dict(), "what": what, "modules": _ranks_payload(C)})
        return
    print(f"{what}: ranks {C.ranks()}")
    for i, module in enumerate(C.modules):
        degs = ", ".join(monomial_str(j, C.ring.var_names) for j in module)
        print(f"  degree {i} (rank {len(module)}): {degs if degs else '-'}")


def _default_tmax(ideal, extra=1):
    return total_degree(ideal.top_lcm()) + extra


def _check_complex(C, what):
    C.validate()
    bad = C.d_squared_violations()
    if bad:
        raise VerificationFailure(f"{what}: d o d != 0 at {bad[:5]}")


def cmd_q(cfg):
    ideal = load_ideal(cfg.paths[0])
    Q = denominator(ideal, cfg.tmax, cfg.characteristic)
    _print_series(Q, ideal, cfg.fmt, "Q")
    if cfg.check:
        if not verify_lcm_coefficients(Q, ideal):
            raise VerificationFailure("a denominator multidegree is not a subset lcm")
        cands = {(s, t, j) for s, t, j in candidate_terms(ideal)}
        applicable = is_taylor_minimal(ideal) or is_golod_truncated(
            ideal, _default_tmax(ideal, 2), cfg.characteristic)
        if applicable:
            for (t, j), c in Q.terms():
                if t >= 1 and ((1 if c > 0 else -1), t, j) not in cands:
                    raise VerificationFailure(f"term {c} t^{t} y^{j} not a candidate term")
    return 0


def cmd_poincare(cfg):
    ideal = load_ideal(cfg.paths[0])
    tmax = cfg.tmax if cfg.tmax is not None else _default_tmax(ideal, 2)
    res = resolve_residue_field(ideal, tmax, char=cfg.characteristic)
    _print_betti(res.betti(), ideal, cfg.fmt,
                 f"Tor^R(k,k) to t-degree {tmax}, multidegrees <= {list(res.bound)}")
    if cfg.check:
        _check_complex(res.complex, "residue field resolution")
        H = homology(res.complex, res.bound, cfg.characteristic, cfg.jobs)
        for i in range(1, tmax):
            if H.get(i):
                raise VerificationFailure(f"resolution not exact at degree {i}: {H[i]}")
    return 0


def cmd_deviations(cfg):
    ideal = load_ideal(cfg.paths[0])
    nmax = cfg.nmax if cfg.nmax is not None else 6
    bound = mdeg_add(ideal.top_lcm(), (1,) * ideal.num_vars)
    P = resolve_residue_field(ideal, nmax, bound, cfg.characteristic).poincare_series()
    table = deviations(P, nmax)
    rows = table.rows()
    if cfg.fmt == "json":
        _emit_json({"ideal": ideal.to_dict(), "nmax": nmax,
                    "deviations": [{"n": n, "y": list(j), "e": e} for (n, j), e in rows]})
    else:
        print(f"multigraded deviations to order {nmax} ({ideal})")
        print(f"{'n':>3}  {'e':>4}  multidegree")
        for (n, j), e in rows:
            print(f"{n:>3}  {e:>4}  {monomial_str(j, ideal.var_names)} {list(j)}")
    if cfg.check:
        if series_from_deviations(table, ideal.num_vars, nmax, bound) != P:
            raise VerificationFailure("deviations do not reproduce the Poincare series")
    return 0


def cmd_candidates(cfg):
    ideal = load_ideal(cfg.paths[0])
    rows = sorted(candidate_terms(ideal), key=lambda x: (x[1], x[2], x[0]))
    if cfg.fmt == "json":
        _emit_json({"ideal": ideal.to_dict(),
                    "candidates": [{"sign": s, "t": t, "y": list(j)} for s, t, j in rows]})
    else:
        print(f"candidate denominator terms ({ideal})")
        print(f"{'sign':>4}  {'t':>3}  multidegree")
        for s, t, j in rows:
            print(f"{s:>4}  {t:>3}  {monomial_str(j, ideal.var_names)} {list(j)}")
    return 0


def cmd_verify_lcm(cfg):
    ideal = load_ideal(cfg.paths[0])
    Q = denominator(ideal, cfg.tmax, cfg.characteristic)
    ok = verify_lcm_coefficients(Q, ideal)
    if cfg.fmt == "json":
        _emit_json({"ideal": ideal.to_dict(), "all_terms_are_subset_lcms": ok})
    else:
        print("all denominator multidegrees are subset lcms" if ok
              else "FAIL: some denominator multidegree is not a subset lcm")
    if not ok:
        raise VerificationFailure("verify-lcm failed")
    return 0


def _complex_command(cfg, builder, what):
    ideal = load_ideal(cfg.paths[0])
    C = builder(ideal)
    _print_complex(C, ideal, cfg.fmt, what)
    if cfg.check:
        _check_complex(C, what)
    return 0


def cmd_taylor(cfg):
    return _complex_command(cfg, taylor_complex, "Taylor complex over S")


def cmd_scarf(cfg):
    return _complex_command(cfg, scarf_complex, "Scarf complex over S")


def cmd_koszul(cfg):
    return _complex_command(cfg, lambda I: koszul_complex(Ring.quotient(I)),
                            "Koszul complex over R")


def cmd_betti(cfg):
    ideal = load_ideal(cfg.paths[0])
    E = minimize(taylor_complex(ideal))
    table = {}
    for i, module in enumerate(E.modules):
        for j in module:
            table[(i, j)] = table.get((i, j), 0) + 1
    _print_betti(table, ideal, cfg.fmt, "multigraded Betti numbers of S/I over S")
    if cfg.check:
        _check_complex(E, "minimized Taylor complex")
        koszul_dims = homology(koszul_complex(Ring.quotient(ideal)), ideal.top_lcm(),
                               cfg.characteristic, cfg.jobs)
        flat = {(i, j): d for i, dd in koszul_dims.items() for j, d in dd.items() if i >= 1}
        if flat != {k: v for k, v in table.items() if k[0] >= 1}:
            raise VerificationFailure("Betti numbers disagree with Koszul homology of R")
    return 0


def cmd_golod(cfg):
    ideal = load_ideal(cfg.paths[0])
    tmax = cfg.tmax if cfg.tmax is not None else _default_tmax(ideal, 2)
    verdict = is_golod_truncated(ideal, tmax, cfg.characteristic)
    bound = mdeg_add(ideal.top_lcm(), (1,) * ideal.num_vars)
    if cfg.fmt == "json":
        _emit_json({"ideal": ideal.to_dict(), "tmax": tmax, "bound": list(bound),
                    "golod_certified_to_truncation": verdict})
    else:
        state = "IS" if verdict else "is NOT"
        print(f"R {state} Golod up to t-degree {tmax}, multidegrees <= {list(bound)}"
              " (certificate is truncation-bounded)")
    if cfg.check and verdict:
        Q = denominator(ideal, max(tmax, _default_tmax(ideal)), cfg.characteristic)
        if Q != golod_denominator(ideal, char=cfg.characteristic):
            raise VerificationFailure("certified Golod but Q differs from the Golod formula")
        cands = candidate_terms(ideal)
        for (t, j), c in Q.terms():
            if t >= 1 and ((1 if c > 0 else -1), t, j) not in cands:
                raise VerificationFailure(f"Golod denominator term at t^{t}, {j} not a candidate")
    return 0


def cmd_golod_generic(cfg):
    ideal = load_ideal(cfg.paths[0])
    verdict = is_golod_generic(ideal)
    if cfg.fmt == "json":
        _emit_json({"ideal": ideal.to_dict(), "golod": verdict})
    else:
        print(f"generic ideal; R {'IS' if verdict else 'is NOT'} Golod")
    if cfg.check:
        if verdict != is_golod_truncated(ideal, _default_tmax(ideal, 2), cfg.characteristic):
            raise VerificationFailure("generic criterion disagrees with truncated certificate")
    return 0


def cmd_eagon(cfg):
    ideal = load_ideal(cfg.paths[0])
    imax = cfg.imax if cfg.imax is not None else 6
    Y = eagon_resolution(ideal, imax, cfg.characteristic)
    ideal_names = ideal.var_names
    if cfg.fmt == "json":
        _emit_json({"ideal": ideal.to_dict(), "imax": imax, "modules": _ranks_payload(Y)})
    else:
        print(f"Eagon-style resolution of k over R = S/{ideal}, ranks {Y.ranks()}")
        for i, lab in enumerate(Y.labels):
            pretty = ["e[{}]*{}".format(
                ",".join(ideal_names[v] for v in S) or "1",
                "@".join("T" + str(list(f)) for f in chain) or "1") for S, chain in lab]
            print(f"  degree {i}: {'; '.join(pretty)}")
    if cfg.check:
        _check_complex(Y, "Eagon resolution")
        bound = mdeg_add(ideal.top_lcm(), (1,) * ideal.num_vars)
        H = homology(Y, bound, cfg.characteristic, cfg.jobs)
        for i in range(1, imax):
            if H.get(i):
                raise VerificationFailure(f"Eagon resolution not exact at degree {i}: {H[i]}")
    return 0


def cmd_lattice_iso(cfg):
    A = load_ideal(cfg.paths[0])
    B = load_ideal(cfg.paths[1])
    isos = find_lattice_isomorphisms(A, B)
    payload = []
    for m in isos:
        pairing = [[A.generator_str(A.generators[i]), B.generator_str(B.generators[k])]
                   for i, k in enumerate(m.atom_map)]
        payload.append({"atoms": pairing, "gcd_preserving": m.gcd_preserving})
    transported_out = []
    mismatch = None
    if cfg.transport and isos:
        QA = denominator(A, cfg.tmax, cfg.characteristic)
        QB = denominator(B, cfg.tmax, cfg.characteristic)
        for idx, m in enumerate(isos):
            T = transport_denominator(QA, m)
            transported_out.append(T)
            if m.gcd_preserving and T != QB:
                mismatch = idx
    if cfg.fmt == "json":
        doc = {"count": len(isos), "isomorphisms": payload}
        if cfg.transport:
            doc["transported"] = [T.to_json_dict() for T in transported_out]
        _emit_json(doc)
    else:
        print(f"{len(isos)} lattice isomorphism(s) from L_{A} to L_{B}")
        for k, item in enumerate(payload):
            arrows = ", ".join(f"{a} -> {b}" for a, b in item["atoms"])
            print(f"  [{k}] {arrows}   gcd_preserving={item['gcd_preserving']}")
            if cfg.transport and transported_out:
                names = tuple(f"y{i+1}" for i in range(B.num_vars))
                print(f"      transported Q = {transported_out[k].render(names)}")
    if mismatch is not None:
        raise VerificationFailure(
            f"isomorphism [{mismatch}] preserves GCD graphs but transported Q differs")
    return 0


def cmd_polarize(cfg):
    ideal = load_ideal(cfg.paths[0])
    pol = polarize(ideal)
    if cfg.fmt == "json":
        _emit_json({"ideal": ideal.to_dict(), "polarized": pol.ideal.to_dict(),
                    "arities": list(pol.arities)})
    else:
        print(f"polarization of {ideal}: {pol.ideal}")
        print(f"  variables: {', '.join(pol.ideal.var_names)}")
    if cfg.check:
        from .core import minimalize
        back = minimalize([pol.backward(g) for g in pol.ideal.generators],
                          ideal.num_vars, ideal.var_names)
        if back.generators != ideal.generators:
            raise VerificationFailure("depolarization does not recover the ideal")
        if not polarization_lattice_map(pol).gcd_preserving:
            raise VerificationFailure("polarization map is not a GCD-graph isomorphism")
    return 0


_COMMANDS = {
    "q": (cmd_q, 1),
    "poincare": (cmd_poincare, 1),
    "deviations": (cmd_deviations, 1),
    "candidates": (cmd_candidates, 1),
    "verify-lcm": (cmd_verify_lcm, 1),
    "taylor": (cmd_taylor, 1),
    "scarf": (cmd_scarf, 1),
    "koszul": (cmd_koszul, 1),
    "betti": (cmd_betti, 1),
    "golod": (cmd_golod, 1),
    "golod-generic": (cmd_golod_generic, 1),
    "eagon": (cmd_eagon, 1),
    "lattice-iso": (cmd_lattice_iso, 2),
    "polarize": (cmd_polarize, 1),
}


def run(cfg: RunConfig) -> int:
    """Dispatch a parsed configuration; returns the process exit code."""
    try:
        if cfg.subcommand not in _COMMANDS:
            raise InputError(f"unknown subcommand {cfg.subcommand!r}")
        handler, nargs = _COMMANDS[cfg.subcommand]
        if len(cfg.paths) != nargs:
            raise InputError(f"{cfg.subcommand} expects {nargs} ideal file(s)")
        return handler(cfg)
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monpoincare",
        description="Poincare series denominators, deviations, Golod certificates and "
                    "resolutions for monomial quotient rings (exact arithmetic).")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, helptext, npaths=1, tmax=False, nmax=False, imax=False, transport=False):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("paths", nargs=npaths, metavar="IDEAL.json",
                       help='ideal file: {"vars": [...], "gens": [[...], ...]}')
        if tmax:
            p.add_argument("--tmax", type=int, default=None)
        if nmax:
            p.add_argument("--nmax", type=int, default=None)
        if imax:
            p.add_argument("--imax", type=int, default=None)
        if transport:
            p.add_argument("--transport", action="store_true",
                           help="also transport the denominator along each isomorphism")
            p.add_argument("--tdeg", type=int, default=None, dest="tmax",
                           help="t-degree bound for the transported denominators")
        p.add_argument("--format", "-f", choices=("table", "json"), default="table")
        p.add_argument("--char", type=int, default=0,
                       help="coefficient field characteristic (0 or a prime)")
        p.add_argument("--check", action="store_true",
                       help="also run the invariant suite for this operation")
        p.add_argument("--jobs", type=int, default=1,
                       help="worker processes for per-multidegree homology")
        return p

    add("q", "denominator Q_R(y,t) of the Poincare series", tmax=True)
    add("poincare", "multigraded Betti numbers of k over R", tmax=True)
    add("deviations", "multigraded deviations from the Poincare series", nmax=True)
    add("candidates", "signed subset-lcm candidate terms for Q")
    add("verify-lcm", "check every Q multidegree is a subset lcm", tmax=True)
    add("taylor", "Taylor complex of S/I over S")
    add("scarf", "Scarf complex of I over S")
    add("koszul", "Koszul complex over R = S/I")
    add("betti", "multigraded Betti numbers of S/I over S")
    add("golod", "truncated Golod certificate via the resolution", tmax=True)
    add("golod-generic", "Golod criterion for generic ideals (Scarf splittings)")
    add("eagon", "Eagon-style resolution of k over R for generic I", imax=True)
    add("lattice-iso", "lattice isomorphisms between two ideals' LCM lattices",
        npaths=2, transport=True)
    add("polarize", "polarization to a squarefree ideal")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        subcommand=args.subcommand,
        paths=list(args.paths),
        tmax=getattr(args, "tmax", None),
        nmax=getattr(args, "nmax", None),
        imax=getattr(args, "imax", None),
        characteristic=args.char,
        fmt=args.format,
        check=args.check,
        transport=getattr(args, "transport", False),
        jobs=args.jobs,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
