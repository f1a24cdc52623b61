import pytest

import qchev


def test_scalars():
    assert qchev.quantum_integer(2) == qchev.canonical_scalar("q^1+q^-1")
    assert qchev.classical_value(qchev.quantum_integer(5)) == "5"


def test_cartan():
    assert qchev.cartan_matrix("G2") == [[2, -3], [-1, 2]]
    assert qchev.weyl_group_order("B2") == 8
    assert qchev.module_dimension("A2", [[1, 1]]) == 8
    with pytest.raises(qchev.ConfigError):
        qchev.cartan_matrix("Q7")


def test_hom_table():
    assert [qchev.hom_dimension("A1", [l], [[4]]) for l in range(5)] == [0, 0, 1, 1, 1]


def test_trace_round_trip():
    (f,) = qchev.generate_traces("A1", [[2]], [3])
    assert f["mu"] == [3]
    assert qchev.check(f)["pass"]
    d = qchev.decompose(f)
    assert d["terms"][0]["mu"] == [3]
    assert qchev.classical_value(d["terms"][0]["v"][0]) == "1"


def test_condition_failure():
    f = {"cartan": "A1", "module_V": {"highest_weights": [[2]]}, "terms": [{"weight": [0], "coeffs": ["0", "1", "0"]}]}
    report = qchev.check(f)
    assert not report["pass"]
    assert not report["cond2_dynamical_invariance"]["pass"]
    with pytest.raises(qchev.Error):
        qchev.decompose(f)


def test_dynamical_formula():
    assert qchev.a_operator_rank1_direct(1, 3, 4) == qchev.a_operator_rank1_formula(1, 3)
    with pytest.raises(qchev.PoleError):
        qchev.a_operator_rank1_formula(2, 1)


def test_criterion_runner():
    r = qchev.run_criterion(1)
    assert r["passed"] and len(r["cases"]) == 6
