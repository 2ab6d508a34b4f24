"""Lie algebras over Q given by structure constants.

Everything here is exact: subspaces are kept in reduced row echelon form with
Fraction entries, so equality of subspaces is equality of their bases.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import parse_gaussian


class LieAlgebraError(ValueError):
    pass


class AntisymmetryViolation(LieAlgebraError):
    def __init__(self, i: int, j: int):
        super().__init__(f"AntisymmetryViolation({i},{j})")
        self.indices = (i, j)


class JacobiViolation(LieAlgebraError):
    def __init__(self, i: int, j: int, k: int):
        super().__init__(f"JacobiViolation({i},{j},{k})")
        self.indices = (i, j, k)


class DimensionMismatch(LieAlgebraError):
    pass


class NotAnIdeal(LieAlgebraError):
    pass


# ---------------------------------------------------------------------------
# linear algebra over Q
# ---------------------------------------------------------------------------


def rref(vectors: Iterable[Sequence], ncols: int) -> tuple:
    rows = [[Fraction(x) for x in v] for v in vectors]
    out = []
    pivot_cols = []
    for col in range(ncols):
        pr = next((i for i, r in enumerate(rows) if r[col] != 0), None)
        if pr is None:
            continue
        row = rows.pop(pr)
        inv = 1 / row[col]
        row = [x * inv for x in row]
        for i, r in enumerate(rows):
            if r[col]:
                f = r[col]
                rows[i] = [x - f * y for x, y in zip(r, row)]
        for i, r in enumerate(out):
            if r[col]:
                f = r[col]
                out[i] = [x - f * y for x, y in zip(r, row)]
        out.append(row)
        pivot_cols.append(col)
    return tuple(tuple(r) for r in out)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^dim with a reduced row echelon basis."""

    dim: int
    basis: tuple = ()

    @classmethod
    def span(cls, vectors: Iterable[Sequence], dim: int) -> "Subspace":
        return cls(dim, rref(vectors, dim))

    @classmethod
    def whole(cls, dim: int) -> "Subspace":
        return cls(dim, tuple(tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)))

    @classmethod
    def zero(cls, dim: int) -> "Subspace":
        return cls(dim, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [next(k for k, x in enumerate(r) if x) for r in self.basis]

    def is_zero(self) -> bool:
        return not self.basis

    def reduce(self, v: Sequence) -> list[Fraction]:
        """v minus its component along the basis, read off at the pivots."""
        w = [Fraction(x) for x in v]
        for row, p in zip(self.basis, self.pivots):
            if w[p]:
                f = w[p]
                w = [a - f * b for a, b in zip(w, row)]
        return w

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.basis + other.basis, self.dim)

    def coordinates(self, v: Sequence) -> list[Fraction]:
        return [Fraction(v[p]) for p in self.pivots]


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------


class LieAlgebraSC:
    """Structure constants c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k."""

    def __init__(self, structure_constants, basis_names: Sequence[str] | None = None):
        c = tuple(tuple(tuple(Fraction(x) for x in cij) for cij in ci) for ci in structure_constants)
        n = len(c)
        if any(len(ci) != n or any(len(cij) != n for cij in ci) for ci in c):
            raise DimensionMismatch("structure constants must be n x n x n")
        self.c = c
        self.dim = n
        self.basis_names = tuple(basis_names) if basis_names else tuple(f"e{i}" for i in range(n))
        if len(self.basis_names) != n:
            raise DimensionMismatch("basis_names length differs from dimension")

    @classmethod
    def from_brackets(cls, names: Sequence[str], brackets: dict, antisymmetrize: bool = True):
        """Build from ``{(i, j): {k: coeff}}``; missing (j, i) entries are filled by antisymmetry."""
        n = len(names)
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (i, j), coeffs in brackets.items():
            for k, v in coeffs.items():
                c[i][j][k] = Fraction(v)
        if antisymmetrize:
            for (i, j), coeffs in brackets.items():
                if (j, i) not in brackets:
                    for k in range(n):
                        c[j][i][k] = -c[i][j][k]
        return cls(c, names)

    @classmethod
    def from_json(cls, data) -> "LieAlgebraSC":
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["dim"])
        names = list(data.get("basis") or [f"e{i}" for i in range(n)])
        index = {name: k for k, name in enumerate(names)}

        def idx(x):
            if isinstance(x, int):
                return x
            if x in index:
                return index[x]
            return int(x)

        brackets = {}
        for b in data.get("brackets", []):
            i, j = idx(b["i"]), idx(b["j"])
            coeffs = {}
            for k, v in b.get("coeffs", {}).items():
                z = parse_gaussian(str(v))
                if z.im:
                    raise LieAlgebraError("structure constants must be rational")
                coeffs[idx(k)] = z.re
            brackets[(i, j)] = coeffs
        for (i, j) in brackets:
            if not (0 <= i < n and 0 <= j < n) or any(not 0 <= k < n for k in brackets[(i, j)]):
                raise DimensionMismatch(f"bracket index out of range in ({i},{j})")
        return cls.from_brackets(names, brackets)

    def to_json(self) -> dict:
        brackets = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                coeffs = {self.basis_names[k]: str(x) for k, x in enumerate(self.c[i][j]) if x}
                if coeffs:
                    brackets.append({"i": self.basis_names[i], "j": self.basis_names[j], "coeffs": coeffs})
        return {"dim": self.dim, "basis": list(self.basis_names), "brackets": brackets}

    def bracket(self, u: Sequence, v: Sequence) -> list[Fraction]:
        n = self.dim
        out = [Fraction(0)] * n
        for i in range(n):
            if not u[i]:
                continue
            for j in range(n):
                if not v[j]:
                    continue
                f = u[i] * v[j]
                cij = self.c[i][j]
                for k in range(n):
                    if cij[k]:
                        out[k] += f * cij[k]
        return out

    def unit(self, i: int) -> list[Fraction]:
        return [Fraction(int(k == i)) for k in range(self.dim)]

    def whole(self) -> Subspace:
        return Subspace.whole(self.dim)

    def zero(self) -> Subspace:
        return Subspace.zero(self.dim)

    def subspace(self, vectors) -> Subspace:
        """Span of coordinate vectors or basis-element names."""
        rows = []
        for v in vectors:
            if isinstance(v, str):
                rows.append(self.unit(self.basis_names.index(v)))
            else:
                if len(v) != self.dim:
                    raise DimensionMismatch(f"vector of length {len(v)} in a {self.dim}-dimensional algebra")
                rows.append(v)
        return Subspace.span(rows, self.dim)

    def __repr__(self):
        return f"LieAlgebraSC(dim={self.dim}, basis={list(self.basis_names)})"


def find_violation(a: LieAlgebraSC) -> LieAlgebraError | None:
    n = a.dim
    for i in range(n):
        for j in range(i, n):
            if any(x != -y for x, y in zip(a.c[i][j], a.c[j][i])):
                return AntisymmetryViolation(i, j)
    e = [a.unit(i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                t1 = a.bracket(e[i], a.bracket(e[j], e[k]))
                t2 = a.bracket(e[j], a.bracket(e[k], e[i]))
                t3 = a.bracket(e[k], a.bracket(e[i], e[j]))
                if any(x + y + z for x, y, z in zip(t1, t2, t3)):
                    return JacobiViolation(i, j, k)
    return None


def validate(a: LieAlgebraSC) -> None:
    """Raise the first antisymmetry or Jacobi violation, if any."""
    err = find_violation(a)
    if err is not None:
        raise err


def _check(a: LieAlgebraSC, *spaces: Subspace) -> None:
    for s in spaces:
        if s.dim != a.dim:
            raise DimensionMismatch(f"subspace of Q^{s.dim} in a {a.dim}-dimensional algebra")


def product_space(a: LieAlgebraSC, U: Subspace, W: Subspace) -> Subspace:
    _check(a, U, W)
    return Subspace.span((a.bracket(u, w) for u in U.basis for w in W.basis), a.dim)


def _series(a: LieAlgebraSC, start: Subspace, step) -> list[Subspace]:
    terms = [start]
    while True:
        nxt = step(terms[-1])
        terms.append(nxt)
        if nxt.is_zero() or nxt == terms[-2]:
            return terms


def derived_series(a: LieAlgebraSC, start: Subspace | None = None) -> list[Subspace]:
    """g, [g,g], ... ending at 0 or at the first repeated term (the perfect core)."""
    start = a.whole() if start is None else start
    if start.is_zero():
        return [start]
    return _series(a, start, lambda s: product_space(a, s, s))


def lower_central_series(a: LieAlgebraSC, start: Subspace | None = None) -> list[Subspace]:
    """h, [h,h], [h,[h,h]], ... for the subalgebra h (default: all of a)."""
    start = a.whole() if start is None else start
    if start.is_zero():
        return [start]
    return _series(a, start, lambda s: product_space(a, start, s))


def is_solvable(a: LieAlgebraSC, sub: Subspace | None = None) -> bool:
    return derived_series(a, sub)[-1].is_zero()


def is_nilpotent(a: LieAlgebraSC, sub: Subspace | None = None) -> bool:
    """Nilpotency of a (or of the subalgebra *sub*) as a Lie algebra in its own right."""
    return lower_central_series(a, sub)[-1].is_zero()


def perfect_core(a: LieAlgebraSC) -> Subspace:
    return derived_series(a)[-1]


def is_ideal(a: LieAlgebraSC, I: Subspace) -> bool:
    _check(a, I)
    return all(I.contains(a.bracket(a.unit(i), v)) for i in range(a.dim) for v in I.basis)


def is_subalgebra(a: LieAlgebraSC, S: Subspace) -> bool:
    _check(a, S)
    return all(S.contains(a.bracket(u, v)) for u in S.basis for v in S.basis)


def quotient(a: LieAlgebraSC, ideal: Subspace) -> LieAlgebraSC:
    """Structure constants of a/ideal on the standard basis vectors off the pivots."""
    if not is_ideal(a, ideal):
        raise NotAnIdeal("subspace is not an ideal")
    piv = set(ideal.pivots)
    keep = [i for i in range(a.dim) if i not in piv]
    m = len(keep)
    c = [[[Fraction(0)] * m for _ in range(m)] for _ in range(m)]
    for p, i in enumerate(keep):
        for q, j in enumerate(keep):
            w = ideal.reduce(a.c[i][j])
            for r, k in enumerate(keep):
                c[p][q][r] = w[k]
    return LieAlgebraSC(c, [a.basis_names[i] for i in keep])


@dataclass(frozen=True)
class ClassifierResult:
    verdict: bool
    perfect_core: Subspace
    quotient_nilpotent: bool


def classify_derived_generation(a: LieAlgebraSC) -> ClassifierResult:
    """Decide whether generic dense tuples have non-finitely-generated derived subgroup.

    True iff the algebra is perfect and nonzero, or its largest solvable
    quotient a / a^(inf) is not nilpotent.
    """
    core = perfect_core(a)
    q_nil = is_nilpotent(quotient(a, core))
    perfect = a.dim > 0 and core.rank == a.dim
    return ClassifierResult(perfect or not q_nil, core, q_nil)


@dataclass(frozen=True)
class SpliceResult:
    hypotheses_hold: bool
    conclusion_holds: bool
    details: dict


def splice_check(a: LieAlgebraSC, j: Subspace, k: Subspace) -> SpliceResult:
    """Check nilpotent ideals k <= [j,j] <= j with a/k nilpotent, and whether a is nilpotent."""
    _check(a, j, k)
    details = {}
    details["j_ideal"] = is_ideal(a, j)
    details["k_ideal"] = is_ideal(a, k)
    dj = product_space(a, j, j)
    details["k_in_derived_j"] = k <= dj
    details["j_nilpotent"] = details["j_ideal"] and is_nilpotent(a, j)
    details["k_nilpotent"] = details["k_ideal"] and is_nilpotent(a, k)
    details["quotient_nilpotent"] = details["k_ideal"] and is_nilpotent(quotient(a, k))
    hyp = all(details.values())
    return SpliceResult(hyp, is_nilpotent(a), details)


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------


def abelian(n: int = 2) -> LieAlgebraSC:
    return LieAlgebraSC.from_brackets([f"e{i}" for i in range(n)], {})


def heisenberg() -> LieAlgebraSC:
    return LieAlgebraSC.from_brackets(["x", "y", "z"], {(0, 1): {2: 1}})


def heisenberg_plus_line() -> LieAlgebraSC:
    return LieAlgebraSC.from_brackets(["x", "y", "z", "w"], {(0, 1): {2: 1}})


def euclidean_plane() -> LieAlgebraSC:
    """Lie algebra of R^2 x| S^1: [r,x] = y, [r,y] = -x."""
    return LieAlgebraSC.from_brackets(["r", "x", "y"], {(0, 1): {2: 1}, (0, 2): {1: -1}})


def affine_line() -> LieAlgebraSC:
    return LieAlgebraSC.from_brackets(["h", "x"], {(0, 1): {1: 1}})


def sl2() -> LieAlgebraSC:
    return LieAlgebraSC.from_brackets(
        ["h", "e", "f"], {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}})


CATALOG = {
    "abelian2": abelian,
    "heisenberg": heisenberg,
    "heisenberg_plus_line": heisenberg_plus_line,
    "e2": euclidean_plane,
    "aff1": affine_line,
    "sl2": sl2,
}


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------


def _matmul(A, B):
    n = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _commutator(A, B):
    AB, BA = _matmul(A, B), _matmul(B, A)
    return [[x - y for x, y in zip(r, s)] for r, s in zip(AB, BA)]


def matrix_lie_algebra(generators: Sequence, max_dim: int = 12) -> LieAlgebraSC | None:
    """Structure constants of the Lie subalgebra of gl_n generated by some matrices.

    Returns None if the closure exceeds *max_dim*.
    """
    n = len(generators[0])
    flat = lambda M: [Fraction(x) for r in M for x in r]
    unflat = lambda v: [list(v[i * n:(i + 1) * n]) for i in range(n)]
    space = Subspace.span([flat(g) for g in generators], n * n)
    frontier = list(space.basis)
    while frontier:
        new = []
        for u in frontier:
            for v in space.basis:
                w = flat(_commutator(unflat(u), unflat(v)))
                if not space.contains(w):
                    space = Subspace.span(space.basis + (tuple(w),), n * n)
                    new.append(tuple(w))
                    if space.rank > max_dim:
                        return None
        frontier = new
    basis = [unflat(b) for b in space.basis]
    d = len(basis)
    c = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            w = flat(_commutator(basis[i], basis[j]))
            coords = space.coordinates(w)
            for k in range(d):
                c[i][j][k] = coords[k]
                c[j][i][k] = -coords[k]
    return LieAlgebraSC(c)


def change_basis(a: LieAlgebraSC, P: Sequence[Sequence]) -> LieAlgebraSC:
    """Structure constants in the basis f_i = sum_k P[i][k] e_k (P invertible)."""
    n = a.dim
    P = [[Fraction(x) for x in r] for r in P]
    rows = Subspace.span(P, n)
    if rows.rank != n:
        raise LieAlgebraError("change of basis matrix is singular")
    Pinv = _inverse(P)
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            w = a.bracket(P[i], P[j])
            # coordinates x with sum_k x_k P[k] = w, i.e. x = w P^-1
            for k in range(n):
                c[i][j][k] = sum(w[m] * Pinv[m][k] for m in range(n))
    return LieAlgebraSC(c, [f"f{i}" for i in range(n)])


def _inverse(P):
    n = len(P)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(P)]
    red = rref(aug, 2 * n)
    return [list(r[n:]) for r in red]


def ideal_generated(a: LieAlgebraSC, vectors: Iterable[Sequence]) -> Subspace:
    S = Subspace.span(vectors, a.dim)
    while True:
        extra = [a.bracket(a.unit(i), v) for i in range(a.dim) for v in S.basis]
        T = Subspace.span(S.basis + tuple(tuple(e) for e in extra), a.dim)
        if T == S:
            return S
        S = T


def _random_vector_in(rng: random.Random, S: Subspace) -> list[Fraction]:
    out = [Fraction(0)] * S.dim
    for row in S.basis:
        f = rng.randint(-3, 3)
        out = [x + f * y for x, y in zip(out, row)]
    return out


def random_algebra(rng: random.Random, nilpotent_bias: float = 0.5) -> LieAlgebraSC:
    """A random matrix Lie algebra of upper triangular matrices, basis scrambled."""
    while True:
        n = rng.choice([2, 3, 3, 4])
        strict = rng.random() < nilpotent_bias
        gens = []
        for _ in range(rng.choice([1, 2, 2, 3])):
            M = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    if i == j and strict:
                        continue
                    M[i][j] = rng.randint(-2, 2) if rng.random() < 0.7 else 0
            gens.append(M)
        if not any(any(any(r) for r in M) for M in gens):
            continue
        a = matrix_lie_algebra(gens, max_dim=8)
        if a is None or a.dim == 0:
            continue
        d = a.dim
        P = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
        for _ in range(d):
            i, j = rng.sample(range(d), 2) if d > 1 else (0, 0)
            if i != j:
                f = Fraction(rng.randint(-2, 2), rng.choice([1, 1, 2]))
                P[i] = [x + f * y for x, y in zip(P[i], P[j])]
        return change_basis(a, P)


def random_splice_candidate(rng: random.Random) -> tuple[LieAlgebraSC, Subspace, Subspace]:
    """Random (a, j, k) with j, k ideals of a; hypotheses of the splice check may or may not hold."""
    a = random_algebra(rng)
    choice = rng.random()
    if choice < 0.3:
        j = a.whole()
    elif choice < 0.6:
        series = derived_series(a)
        j = rng.choice(series)
    else:
        j = ideal_generated(a, [_random_vector_in(rng, a.whole()) for _ in range(rng.randint(1, 2))])
    dj = product_space(a, j, j)
    choice = rng.random()
    if choice < 0.4:
        k = dj
    elif choice < 0.8:
        k = ideal_generated(a, [_random_vector_in(rng, dj) for _ in range(rng.randint(0, 2))])
    else:
        # deliberately allowed to leave [j, j]
        k = j
    return a, j, k
