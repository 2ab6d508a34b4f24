import json
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import fixture_text
from elliptic_density.lie import (
    CATALOG,
    AntisymmetryViolation,
    DimensionMismatch,
    JacobiViolation,
    LieAlgebraSC,
    NotAnIdeal,
    Subspace,
    change_basis,
    derived_series,
    find_violation,
    is_ideal,
    is_nilpotent,
    is_solvable,
    lower_central_series,
    perfect_core,
    product_space,
    quotient,
    random_algebra,
    random_splice_candidate,
    splice_check,
    classify_derived_generation,
    validate,
)


def ad_matrices(a: LieAlgebraSC):
    return [sympy.Matrix(a.dim, a.dim, lambda k, j: a.c[i][j][k]) for i in range(a.dim)]


def nilpotent_oracle(a: LieAlgebraSC) -> bool:
    """The associative algebra generated by ad(e_i) is nilpotent iff a is (Engel)."""
    ads = ad_matrices(a)
    words = [sympy.eye(a.dim)]
    for _ in range(a.dim + 1):
        nxt = [A * W for A in ads for W in words]
        stacked = sympy.Matrix([list(M) for M in nxt]) if nxt else sympy.zeros(0, a.dim ** 2)
        if stacked.rank() == 0:
            return True
        basis = stacked.T.columnspace()
        words = [sympy.Matrix(a.dim, a.dim, list(b)) for b in basis]
    return False


def solvable_oracle(a: LieAlgebraSC) -> bool:
    """Cartan's criterion: tr(ad x ad y) = 0 for x in a, y in [a, a]."""
    ads = ad_matrices(a)
    derived = product_space(a, a.whole(), a.whole())
    for y in derived.basis:
        ady = sympy.Matrix(a.dim, a.dim, lambda i, j: sum(Fraction(c) * ads[k][i, j] for k, c in enumerate(y)))
        for A in ads:
            if (A * ady).trace() != 0:
                return False
    return True


EXPECTED_VERDICT = {"abelian2": False, "heisenberg": False, "heisenberg_plus_line": False,
              "e2": True, "aff1": True, "sl2": True}


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_classifier(name):
    a = CATALOG[name]()
    validate(a)
    assert classify_derived_generation(a).verdict == EXPECTED_VERDICT[name]


@pytest.mark.parametrize("fname, name", [("heisenberg.json", "heisenberg"), ("e2.json", "e2"),
                                          ("sl2.json", "sl2"), ("aff1.json", "aff1"),
                                          ("abelian2.json", "abelian2"),
                                          ("heisenberg-plus-line.json", "heisenberg_plus_line")])
def test_fixture_files_match_catalog(fname, name):
    a = LieAlgebraSC.from_json(fixture_text(fname))
    assert classify_derived_generation(a).verdict == EXPECTED_VERDICT[name]
    assert LieAlgebraSC.from_json(a.to_json()).c == a.c


def test_series_examples():
    h = CATALOG["heisenberg"]()
    assert [s.rank for s in lower_central_series(h)] == [3, 1, 0]
    assert [s.rank for s in derived_series(h)] == [3, 1, 0]
    e2 = CATALOG["e2"]()
    assert [s.rank for s in derived_series(e2)] == [3, 2, 0]
    assert [s.rank for s in lower_central_series(e2)] == [3, 2, 2]
    s = CATALOG["sl2"]()
    assert perfect_core(s).rank == 3 and not is_solvable(s)


def test_quotient_of_heisenberg_by_center_is_abelian():
    h = CATALOG["heisenberg"]()
    center = h.subspace(["z"])
    q = quotient(h, center)
    assert q.dim == 2
    assert all(x == 0 for plane in q.c for row in plane for x in row)


def test_quotient_requires_ideal():
    e2 = CATALOG["e2"]()
    with pytest.raises(NotAnIdeal):
        quotient(e2, e2.subspace(["x"]))


def test_jacobi_violation_detected():
    data = json.loads(fixture_text("e2.json"))
    data["brackets"].append({"i": "x", "j": "y", "coeffs": {"x": "1"}})
    a = LieAlgebraSC.from_json(data)
    err = find_violation(a)
    assert isinstance(err, JacobiViolation)
    with pytest.raises(JacobiViolation):
        validate(a)


def test_antisymmetry_violation_detected():
    c = [[[Fraction(0)] * 2 for _ in range(2)] for _ in range(2)]
    c[0][1][0] = Fraction(1)
    c[1][0][0] = Fraction(1)
    with pytest.raises(AntisymmetryViolation):
        validate(LieAlgebraSC(c))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        LieAlgebraSC.from_json({"dim": 2, "brackets": [{"i": 0, "j": 1, "coeffs": {"5": "1"}}]})
    with pytest.raises(DimensionMismatch):
        CATALOG["sl2"]().subspace([[1, 0]])


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_random_algebras_against_oracles(seed):
    a = random_algebra(random.Random(seed))
    validate(a)
    assert is_nilpotent(a) == nilpotent_oracle(a)
    assert is_solvable(a) == solvable_oracle(a)
    # upper triangular matrix algebras are solvable
    assert is_solvable(a)


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6), st.sampled_from(sorted(CATALOG)))
def test_classifier_invariant_under_basis_change(seed, name):
    rng = random.Random(seed)
    a = CATALOG[name]()
    n = a.dim
    while True:
        P = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        if Subspace.span(P, n).rank == n:
            break
    b = change_basis(a, P)
    validate(b)
    assert classify_derived_generation(b).verdict == classify_derived_generation(a).verdict
    assert [s.rank for s in derived_series(b)] == [s.rank for s in derived_series(a)]
    assert [s.rank for s in lower_central_series(b)] == [s.rank for s in lower_central_series(a)]


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_series_terms_are_ideals_and_nested(seed):
    a = random_algebra(random.Random(seed))
    for series in (derived_series(a), lower_central_series(a)):
        for big, small in zip(series, series[1:]):
            assert small <= big
            assert is_ideal(a, small)


def test_splice_examples():
    h = CATALOG["heisenberg"]()
    res = splice_check(h, h.whole(), h.subspace(["z"]))
    assert res.hypotheses_hold and res.conclusion_holds
    aff = CATALOG["aff1"]()
    res = splice_check(aff, aff.subspace(["x"]), aff.subspace(["x"]))
    assert not res.hypotheses_hold and not res.details["k_in_derived_j"]


@settings(max_examples=60)
@given(st.integers(0, 10 ** 6))
def test_splice_property(seed):
    a, j, k = random_splice_candidate(random.Random(seed))
    res = splice_check(a, j, k)
    if res.hypotheses_hold:
        assert res.conclusion_holds
