import json

import pytest

from monpoincare.core import (
    InputError,
    MonomialIdeal,
    connected_components_lJ,
    is_generic,
    lcm_of_subset,
    load_ideal,
    minimalize,
    polarize,
)

from helpers import random_corpus


def test_minimalize_divisibility():
    # {x^2, x^3} in k[x] -> {x^2}
    I = minimalize([(2,), (3,)], 1)
    assert I.generators == ((2,),)


def test_minimalize_keeps_closing_example():
    I = minimalize([(2, 0, 0), (0, 2, 1)], 3)
    assert set(I.generators) == {(2, 0, 0), (0, 2, 1)}


def test_minimalize_empty():
    I = minimalize([], 2)
    assert I.generators == ()
    assert I.top_lcm() == (0, 0)


def test_minimalize_idempotent():
    for ideal in random_corpus(25, seed=5):
        again = minimalize(ideal.generators, ideal.num_vars, ideal.var_names)
        assert again.generators == ideal.generators


def test_minimalize_rejects_bad_input():
    with pytest.raises(InputError):
        minimalize([(1, 0)], 1)  # wrong length
    with pytest.raises(InputError):
        minimalize([(-1,)], 1)
    with pytest.raises(InputError):
        minimalize([(0, 0)], 2)  # the unit


def test_lcm_of_subset():
    I = minimalize([(1, 2, 0), (1, 0, 2)], 3)
    assert lcm_of_subset(I, [0, 1]) == (1, 2, 2)
    assert lcm_of_subset(I, [0]) == I.generators[0]
    assert lcm_of_subset(I, []) == (0, 0, 0)
    I2 = minimalize([(2, 0, 0), (0, 2, 1)], 3)
    assert lcm_of_subset(I2, [0, 1]) == (2, 2, 1)
    with pytest.raises(InputError):
        lcm_of_subset(I, [2])


def test_lcm_monotone():
    for ideal in random_corpus(20, seed=11):
        r = ideal.num_generators
        full = lcm_of_subset(ideal, range(r))
        for k in range(r):
            sub = lcm_of_subset(ideal, range(k))
            assert all(a <= b for a, b in zip(sub, full))


def test_connected_components():
    coprime_pair = minimalize([(2, 0, 0), (0, 2, 1)], 3)
    assert connected_components_lJ(coprime_pair, [0, 1]) == 2
    sharing = minimalize([(1, 2, 0), (1, 0, 2)], 3)
    assert connected_components_lJ(sharing, [0, 1]) == 1
    assert connected_components_lJ(sharing, [0]) == 1
    with pytest.raises(InputError):
        connected_components_lJ(sharing, [])


def test_connected_components_pairwise_sharing():
    # if all pairs share a variable the graph is complete, so l_J = 1
    I = minimalize([(1, 1, 0), (0, 1, 1), (1, 0, 1)], 3)
    assert connected_components_lJ(I, [0, 1, 2]) == 1


def test_is_generic():
    assert is_generic(minimalize([(3, 0), (1, 1), (0, 2)], 2))
    assert not is_generic(minimalize([(1, 2, 0), (1, 0, 2)], 3))  # equal x1 exponents
    assert is_generic(minimalize([(2,)], 1))  # no pairs
    assert is_generic(minimalize([(2, 0), (0, 2)], 2))  # no equal positive exponent
    # equal positive exponent pair rescued by a strictly dividing third generator
    assert is_generic(minimalize([(3, 1, 0), (0, 1, 3), (1, 0, 1)], 3))


def test_polarize_one_variable():
    pol = polarize(minimalize([(2,)], 1, ("x",)))
    assert pol.ideal.generators == ((1, 1),)
    assert pol.ideal.var_names == ("x_1", "x_2")
    assert pol.forward((2,)) == (1, 1)
    assert pol.backward((1, 1)) == (2,)


def test_polarize_closing_example():
    pol = polarize(minimalize([(2, 0, 0), (0, 2, 1)], 3))
    assert set(pol.ideal.generators) == {(1, 1, 0, 0, 0), (0, 0, 1, 1, 1)}
    assert pol.ideal.num_vars == 5


def test_polarize_squarefree_identity():
    I = minimalize([(1, 1, 0), (0, 1, 1)], 3, ("x", "y", "z"))
    pol = polarize(I)
    assert pol.ideal == I
    assert pol.forward((1, 1, 0)) == (1, 1, 0)


def test_polarize_depolarize_roundtrip():
    for ideal in random_corpus(25, seed=23):
        pol = polarize(ideal)
        assert all(max(g) <= 1 for g in pol.ideal.generators)
        back = minimalize([pol.backward(g) for g in pol.ideal.generators],
                          ideal.num_vars, ideal.var_names)
        assert back.generators == ideal.generators


def test_ideal_file_roundtrip(tmp_path):
    path = tmp_path / "ideal.json"
    path.write_text(json.dumps({"vars": ["x1", "x2", "x3"], "gens": [[2, 0, 0], [0, 2, 1]]}))
    ideal = load_ideal(path)
    assert ideal.var_names == ("x1", "x2", "x3")
    assert set(ideal.generators) == {(2, 0, 0), (0, 2, 1)}
    assert MonomialIdeal.from_dict(ideal.to_dict()) == ideal


def test_load_ideal_errors(tmp_path):
    with pytest.raises(InputError):
        load_ideal(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InputError):
        load_ideal(bad)
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"gens": [[1]]}))
    with pytest.raises(InputError):
        load_ideal(wrong)
