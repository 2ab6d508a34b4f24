"""Finitely generated subgroups of Q^n: Hermite normal forms, Smith invariants,
integer kernels, and the chain of truncations of sum_n Z(1 - z^n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .exact import (
    AlgebraicScalar,
    DegenerateScalar,
    NotUnitModulus,
    as_scalar,
    is_algebraic_integer,
    unit_modulus,
)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _sym_mod(a: int, p: int) -> int:
    """Representative of a mod p in [-p/2, p/2)."""
    r = a % p
    if 2 * r >= p:
        r -= p
    return r


@dataclass(frozen=True)
class GenSet:
    ambient_dim: int
    generators: tuple = ()

    def __post_init__(self):
        gens = tuple(tuple(Fraction(x) for x in g) for g in self.generators)
        for g in gens:
            if len(g) != self.ambient_dim:
                raise ValueError(f"generator {g} is not of length {self.ambient_dim}")
        object.__setattr__(self, "generators", gens)


def echelon(rows: Sequence[Sequence[int]], ncols: int, transform: bool = False):
    """Row Hermite form of an integer matrix.

    Returns ``(H, U)`` with ``U @ rows == H`` when *transform* is set (U
    unimodular), otherwise just ``H``. Zero rows are kept at the bottom of H.
    """
    H = [list(map(int, r)) for r in rows]
    m = len(H)
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transform else None

    def combine(i, j, a, b, c, d):
        # (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j)
        ri, rj = H[i], H[j]
        H[i] = [a * x + b * y for x, y in zip(ri, rj)]
        H[j] = [c * x + d * y for x, y in zip(ri, rj)]
        if U is not None:
            ui, uj = U[i], U[j]
            U[i] = [a * x + b * y for x, y in zip(ui, uj)]
            U[j] = [c * x + d * y for x, y in zip(ui, uj)]

    piv_row = 0
    pivots = []
    for col in range(ncols):
        if piv_row >= m:
            break
        for i in range(piv_row + 1, m):
            b = H[i][col]
            if b == 0:
                continue
            a = H[piv_row][col]
            if a == 0:
                combine(piv_row, i, 0, 1, 1, 0)
                continue
            g, x, y = _xgcd(a, b)
            combine(piv_row, i, x, y, -b // g, a // g)
        if H[piv_row][col] == 0:
            continue
        if H[piv_row][col] < 0:
            combine(piv_row, piv_row, -1, 0, -1, 0)
        p = H[piv_row][col]
        for i in range(piv_row):
            r = _sym_mod(H[i][col], p)
            q = (H[i][col] - r) // p
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[piv_row])]
                if U is not None:
                    U[i] = [x - q * y for x, y in zip(U[i], U[piv_row])]
        pivots.append(col)
        piv_row += 1
    return (H, U) if transform else H


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, x, y with x a + y b = g = gcd(a, b) > 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class LatticeForm:
    """The group (1/denominator) * rowspan_Z(basis), basis in Hermite form."""

    ambient_dim: int
    basis: tuple
    denominator: int
    rank: int
    covolume: Fraction

    def vectors(self) -> list[tuple]:
        return [tuple(Fraction(x, self.denominator) for x in row) for row in self.basis]

    def contains(self, v: Sequence) -> bool:
        w = [Fraction(x) * self.denominator for x in v]
        if any(x.denominator != 1 for x in w):
            return False
        w = [int(x) for x in w]
        for row in self.basis:
            col = next(k for k, x in enumerate(row) if x)
            if w[col] % row[col]:
                return False
            q = w[col] // row[col]
            w = [a - q * b for a, b in zip(w, row)]
        return not any(w)

    def contains_lattice(self, other: "LatticeForm") -> bool:
        return all(self.contains(v) for v in other.vectors())

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "basis": [[str(Fraction(x, self.denominator)) for x in row] for row in self.basis],
            "rank": self.rank,
            "covolume": str(self.covolume),
        }


def hnf(gens, ambient_dim: int | None = None) -> LatticeForm:
    """Canonical Hermite form of the Z-span of a finite set of rational vectors."""
    if not isinstance(gens, GenSet):
        gens = list(gens)
        if ambient_dim is None:
            if not gens:
                raise ValueError("ambient_dim is required for an empty generator list")
            ambient_dim = len(gens[0])
        gens = GenSet(ambient_dim, tuple(gens))
    n = gens.ambient_dim
    d = reduce(_lcm, (x.denominator for g in gens.generators for x in g), 1)
    rows = [[int(x * d) for x in g] for g in gens.generators]
    H = [r for r in echelon(rows, n) if any(r)]
    g = reduce(math.gcd, (x for r in H for x in r), d)
    H = tuple(tuple(x // g for x in r) for r in H)
    d //= g
    rank = len(H)
    pivots = [next(x for x in r if x) for r in H]
    covolume = Fraction(math.prod(pivots), d ** rank)
    return LatticeForm(n, H, d, rank, covolume)


def smith_invariants(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix."""
    A = [list(map(int, r)) for r in rows if any(r)]
    if not A:
        return []
    ncols = len(A[0])
    out = []
    while A and any(any(r) for r in A):
        # move a smallest nonzero entry to (0, 0)
        i, j = min(((i, j) for i, r in enumerate(A) for j, x in enumerate(r) if x),
                   key=lambda ij: abs(A[ij[0]][ij[1]]))
        A[0], A[i] = A[i], A[0]
        for r in A:
            r[0], r[j] = r[j], r[0]
        p = A[0][0]
        dirty = False
        for i in range(1, len(A)):
            q = A[i][0] // p
            A[i] = [x - q * y for x, y in zip(A[i], A[0])]
            dirty |= A[i][0] != 0
        for j in range(1, ncols):
            q = A[0][j] // p
            for r in A:
                r[j] -= q * r[0]
            dirty |= A[0][j] != 0
        if dirty:
            continue
        bad = next(((i, j) for i in range(1, len(A)) for j in range(1, ncols) if A[i][j] % p), None)
        if bad is not None:
            A[0] = [x + y for x, y in zip(A[0], A[bad[0]])]
            continue
        out.append(abs(p))
        A = [r[1:] for r in A[1:]]
        ncols -= 1
        if ncols == 0:
            break
    return out


def integer_kernel(matrix: Sequence[Sequence[int]], ncols: int | None = None) -> list[tuple]:
    """Hermite-form basis (as rows) of {x in Z^n : matrix @ x = 0}."""
    if ncols is None:
        ncols = len(matrix[0])
    transposed = [[int(matrix[i][j]) for i in range(len(matrix))] for j in range(ncols)]
    H, U = echelon(transposed, len(matrix), transform=True)
    kernel = [U[i] for i, r in enumerate(H) if not any(r)]
    if not kernel:
        return []
    return [tuple(r) for r in echelon(kernel, ncols) if any(r)]


def subgroup_of_Q_generator(gens: Iterable) -> Fraction:
    """Nonnegative g with <gens>_Z = g Z."""
    fr = [Fraction(x) for x in gens]
    if not fr:
        return Fraction(0)
    den = reduce(_lcm, (x.denominator for x in fr), 1)
    num = reduce(math.gcd, (int(x * den) for x in fr), 0)
    return Fraction(num, den)


# ---------------------------------------------------------------------------
# the derived-module chain
# ---------------------------------------------------------------------------

STABILIZED = "stabilized"
NOT_STABILIZED = "not_stabilized_by_bound"

DEFAULT_CHAIN_BOUND = 12


@dataclass
class ChainReport:
    levels: list = field(default_factory=list)
    stabilized_at: int | None = None
    verdict: str = NOT_STABILIZED

    @property
    def ranks(self) -> list[int]:
        return [lv.rank for lv in self.levels]

    @property
    def covolumes(self) -> list[Fraction]:
        return [lv.covolume for lv in self.levels]

    def strictly_decreasing_after_saturation(self) -> bool:
        """Covolumes shrink strictly at every level once full rank is reached."""
        if not self.levels:
            return False
        full = self.levels[0].ambient_dim
        tail = [lv.covolume for lv in self.levels if lv.rank == full]
        return len(tail) >= 2 and all(b < a for a, b in zip(tail, tail[1:]))

    def to_json(self) -> dict:
        return {
            "ranks": self.ranks,
            "covolumes": [str(c) for c in self.covolumes],
            "stabilized_at": self.stabilized_at,
            "verdict": self.verdict,
            "final_lattice": self.levels[-1].to_json() if self.levels else None,
        }


def chain_generators(z: AlgebraicScalar, n: int) -> list[list[Fraction]]:
    """Coordinates of 1 - z^n and 1 - z^-n in the power basis of Q(z)."""
    out = []
    for k in (n, -n):
        c = z.power_coordinates(k)
        one = [Fraction(1)] + [Fraction(0)] * (len(c) - 1)
        out.append([a - b for a, b in zip(one, c)])
    return out


def derived_module_chain(z, bound: int = DEFAULT_CHAIN_BOUND) -> ChainReport:
    """Hermite forms of the Z-span of {1 - z^n : 0 < |n| <= N} for N = 1..bound.

    The chain is reported stabilized at N* when levels N*-1, N*, ..., bound all
    coincide (N* >= 2).
    """
    z = as_scalar(z)
    if bound < 1:
        raise ValueError("bound must be positive")
    if z.is_one():
        raise DegenerateScalar("z = 1 gives the zero module")
    if not unit_modulus(z):
        raise NotUnitModulus(f"{z!r} is not on the unit circle")
    dim = len(z.power_coordinates(0))
    levels = []
    current = hnf([], ambient_dim=dim)
    for n in range(1, bound + 1):
        current = hnf(list(current.vectors()) + chain_generators(z, n), ambient_dim=dim)
        levels.append(current)
    report = ChainReport(levels=levels)
    start = len(levels)
    while start >= 2 and levels[start - 2] == levels[-1]:
        start -= 1
    if start < len(levels):
        report.stabilized_at = start + 1
        report.verdict = STABILIZED
    return report


def fg_derived_criterion(z) -> bool:
    """Whether sum_n Z(1 - z^n) is finitely generated: z must be an algebraic integer."""
    z = as_scalar(z)
    if not unit_modulus(z):
        raise NotUnitModulus(f"{z!r} is not on the unit circle")
    return is_algebraic_integer(z)
