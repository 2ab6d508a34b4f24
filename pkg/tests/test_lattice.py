import itertools
import math
import random
from fractions import Fraction
from functools import reduce

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from elliptic_density.exact import DegenerateScalar, I, NotUnitModulus, GaussianRational, parse_scalar, pythagorean_scalar
from elliptic_density.lattice import (
    NOT_STABILIZED,
    STABILIZED,
    derived_module_chain,
    echelon,
    fg_derived_criterion,
    hnf,
    integer_kernel,
    smith_invariants,
    subgroup_of_Q_generator,
)

small = st.integers(-12, 12)
rationals = st.fractions(min_value=-12, max_value=12, max_denominator=12)


def int_matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def maximal_minor_gcd(rows, n):
    """Oracle: index of the integer span in Z^n (full rank) is the gcd of n x n minors."""
    g = 0
    for idx in itertools.combinations(range(len(rows)), n):
        g = math.gcd(g, int(sympy.Matrix([rows[i] for i in idx]).det()))
    return g


def test_hnf_example():
    L = hnf([(1, -1), (1, 1)])
    assert [list(r) for r in L.basis] == [[1, -1], [0, 2]]
    assert L.covolume == 2 and L.rank == 2


def test_hnf_empty():
    L = hnf([], ambient_dim=3)
    assert L.rank == 0 and L.covolume == 1


def test_hnf_denominators():
    L = hnf([(Fraction(1, 2), 0), (0, Fraction(1, 3))])
    assert L.covolume == Fraction(1, 6)
    assert L.contains((Fraction(1, 2), Fraction(-2, 3)))
    assert not L.contains((Fraction(1, 4), 0))


@given(st.lists(st.lists(small, min_size=2, max_size=2), min_size=2, max_size=5))
def test_covolume_is_gcd_of_minors(rows):
    L = hnf(rows, ambient_dim=2)
    g = maximal_minor_gcd(rows, 2)
    if g:
        assert L.rank == 2 and L.covolume == g
    else:
        assert L.rank < 2


@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=1, max_size=4))
def test_membership_both_ways(gens):
    L = hnf(gens, ambient_dim=3)
    for g in gens:
        assert L.contains(g)
    # every basis vector lies in the span of the generators: the span of gens + basis is L again
    assert hnf(list(gens) + L.vectors(), ambient_dim=3) == L


@given(st.lists(st.lists(rationals, min_size=2, max_size=2), min_size=1, max_size=4), st.randoms())
def test_hnf_is_canonical(gens, rnd):
    L = hnf(gens, ambient_dim=2)
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    i, j = rnd.randrange(len(shuffled)), rnd.randrange(len(shuffled))
    if i != j:
        k = rnd.randint(-3, 3)
        shuffled[i] = [a + k * b for a, b in zip(shuffled[i], shuffled[j])]
    assert hnf(shuffled, ambient_dim=2) == L
    assert hnf(L.vectors(), ambient_dim=2) == L


@given(int_matrices(3, 3))
def test_echelon_transform(rows):
    H, U = echelon(rows, 3, transform=True)
    prod = [[sum(U[i][k] * rows[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert prod == H
    assert abs(sympy.Matrix(U).det()) == 1


@given(int_matrices(3, 3))
def test_smith_product_is_gcd_of_minors(rows):
    inv = smith_invariants(rows)
    for a, b in zip(inv, inv[1:]):
        assert b % a == 0
    g = maximal_minor_gcd(rows, 3)
    if g:
        assert math.prod(inv) == g and len(inv) == 3
    else:
        assert len(inv) == sympy.Matrix(rows).rank()


def test_smith_example():
    assert smith_invariants([[2, 4], [6, 8]]) == [2, 4]


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=3))
def test_integer_kernel(rows):
    K = integer_kernel(rows, 4)
    for v in K:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
    assert len(K) == 4 - sympy.Matrix(rows).rank()
    # saturated: the kernel lattice has trivial torsion in Z^4 / K
    if K:
        assert set(smith_invariants(K)) <= {1}


def test_integer_kernel_example():
    assert integer_kernel([[-1, 1], [1, -1]]) == [(1, 1)]


@settings(max_examples=50)
@given(st.lists(rationals, min_size=1, max_size=6))
def test_subgroup_of_Q_generator(xs):
    g = subgroup_of_Q_generator(xs)
    assert g >= 0
    if g:
        assert all((x / g).denominator == 1 for x in xs)
    # g itself is an integer combination: it equals the hnf generator of the same set
    L = hnf([(x,) for x in xs], ambient_dim=1)
    assert (L.vectors()[0][0] if L.rank else 0) == g


def test_subgroup_example():
    assert subgroup_of_Q_generator([Fraction(1, 2), Fraction(1, 3)]) == Fraction(1, 6)


def test_chain_gaussian_integer_stabilizes():
    rep = derived_module_chain(I, bound=4)
    assert rep.verdict == STABILIZED and rep.stabilized_at == 2
    assert rep.covolumes[-1] == 2


def test_chain_pythagorean_frozen_covolumes():
    rep = derived_module_chain(pythagorean_scalar(3, 4, 5), bound=10)
    # frozen from an independent run: covolume 16 / 25^N
    assert rep.covolumes == [Fraction(16, 25 ** n) for n in range(1, 11)]
    assert rep.verdict == NOT_STABILIZED
    assert rep.strictly_decreasing_after_saturation()


def test_chain_abstract_scalars():
    rep = derived_module_chain(parse_scalar({"minpoly": [1, -1, 1], "root_box": ["0", "1", "0", "1"]}), bound=6)
    assert rep.verdict == STABILIZED and rep.stabilized_at == 2 and rep.covolumes[-1] == 1
    rep = derived_module_chain(parse_scalar({"minpoly": [2, -3, 2], "root_box": ["0", "1", "0", "1"]}), bound=6)
    assert rep.verdict == NOT_STABILIZED
    assert rep.covolumes == [Fraction(1, 2 * 4 ** (k - 1)) for k in range(1, 7)]


def _power_coords_oracle(minpoly, n):
    """Coordinates of x^n modulo the minimal polynomial, via sympy over Q."""
    x = sympy.Symbol("x")
    p = sympy.Poly(list(reversed(minpoly)), x, domain="QQ")
    if n >= 0:
        r = sympy.Poly(x ** n, x, domain="QQ").rem(p)
    else:
        inv = sympy.invert(sympy.Poly(x, x, domain="QQ"), p)
        r = (sympy.Poly(inv, x, domain="QQ") ** (-n)).rem(p)
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(r.all_coeffs())]
    return coeffs + [Fraction(0)] * (p.degree() - len(coeffs))


@pytest.mark.parametrize("lit", [
    {"minpoly": [2, -3, 2], "root_box": ["0", "1", "0", "1"]},
    {"minpoly": [1, -1, -1, -1, 1], "root_box": ["-1", "0", "0", "1"]},
])
def test_chain_abstract_matches_sympy_oracle(lit):
    N = 4
    rep = derived_module_chain(parse_scalar(lit), bound=N)
    d = len(lit["minpoly"]) - 1
    gens = []
    for n in itertools.chain(range(-N, 0), range(1, N + 1)):
        c = _power_coords_oracle(lit["minpoly"], n)
        gens.append([(1 if k == 0 else 0) - c[k] for k in range(d)])
    assert rep.levels[-1] == hnf(gens, ambient_dim=d)


def test_chain_minus_one():
    rep = derived_module_chain(GaussianRational(-1), bound=5)
    assert rep.ranks == [1] * 5 and rep.stabilized_at == 2


def test_chain_levels_nested():
    rep = derived_module_chain(pythagorean_scalar(5, 12, 13), bound=6)
    for small_, big in zip(rep.levels, rep.levels[1:]):
        assert big.contains_lattice(small_)


def test_chain_errors():
    with pytest.raises(DegenerateScalar):
        derived_module_chain(1)
    with pytest.raises(NotUnitModulus):
        derived_module_chain(GaussianRational(2))
    with pytest.raises(NotUnitModulus):
        fg_derived_criterion(1 + I)


def test_chain_generators_oracle():
    """Level N agrees with an HNF of directly computed 1 - z^n values."""
    z = pythagorean_scalar(8, 15, 17)
    rep = derived_module_chain(z, bound=4)
    gens = []
    for n in itertools.chain(range(-4, 0), range(1, 5)):
        w = 1 - z ** n
        gens.append((w.re, w.im))
    assert rep.levels[-1] == hnf(gens, ambient_dim=2)


def test_fg_criterion():
    assert fg_derived_criterion(I)
    assert not fg_derived_criterion(pythagorean_scalar(3, 4, 5))
    assert fg_derived_criterion(parse_scalar({"minpoly": [1, -1, -1, -1, 1], "root_box": ["-1", "0", "0", "1"]}))
