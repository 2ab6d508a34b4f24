"""Finite extensions K of a torus T acting linearly on V = C^m.

V is presented in a basis of weight lines; T acts on line p by the character
t^lambda_p, and each connected component sigma of K is recorded by the
automorphism it induces on T (an integer matrix acting on cocharacter
coordinates) together with a representative rho(sigma) in GL(V). The
decision procedures reduce density of fixed-point-free elements to the
question of whether a Laurent polynomial vanishes identically.
"""

from __future__ import annotations

import json
import logging
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import ONE, ZERO, GaussianRational, det_gaussian, parse_gaussian
from .lattice import integer_kernel, smith_invariants

log = logging.getLogger(__name__)


class SpecError(ValueError):
    """Invalid group specification."""


class WeightCompatibilityError(SpecError):
    pass


class GroupTableError(SpecError):
    pass


class InvalidComponent(SpecError):
    pass


class UnknownComponent(KeyError):
    pass


# ---------------------------------------------------------------------------
# Laurent polynomials with Gaussian-rational coefficients
# ---------------------------------------------------------------------------


class LaurentPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            c = GaussianRational.coerce(c)
            if c:
                clean[tuple(int(x) for x in e)] = c
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def constant(cls, nvars: int, c) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exponents: Sequence[int], c=ONE) -> "LaurentPoly":
        return cls(len(exponents), {tuple(exponents): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, ZERO) + c
        return LaurentPoly(self.nvars, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            c = GaussianRational.coerce(other)
            return LaurentPoly(self.nvars, {e: x * c for e, x in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, ZERO) + c1 * c2
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def evaluate(self, point: Sequence) -> GaussianRational:
        """Exact value at a point of (Q(i)^*)^nvars."""
        point = [GaussianRational.coerce(x) for x in point]
        total = ZERO
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                v = v * x ** k
            total = total + v
        return total

    def evaluate_numeric(self, point: Sequence[complex]) -> complex:
        total = 0j
        for e, c in self.terms.items():
            v = complex(c)
            for x, k in zip(point, e):
                v *= x ** k
            total += v
        return total

    def to_json(self) -> list:
        return [{"exponent": list(e), "coeff": str(c)} for e, c in self.terms.items()]

    def __str__(self):
        if not self.terms:
            return "0"
        names = ["t"] if self.nvars == 1 else [f"t{k + 1}" for k in range(self.nvars)]
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self})"


def symbolic_det(M: Sequence[Sequence[LaurentPoly]], nvars: int) -> LaurentPoly:
    """Determinant by expansion over column subsets, skipping zero entries."""
    n = len(M)
    memo = {}

    def rec(row: int, used: int) -> LaurentPoly:
        if row == n:
            return LaurentPoly.constant(nvars, ONE)
        if used in memo:
            return memo[used]
        acc = LaurentPoly(nvars)
        free_before = 0
        for col in range(n):
            if used >> col & 1:
                continue
            entry = M[row][col]
            if not entry.is_zero():
                sub = rec(row + 1, used | 1 << col)
                term = entry * sub
                acc = acc - term if free_before % 2 else acc + term
            free_before += 1
        memo[used] = acc
        return acc

    return rec(0, 0)


# ---------------------------------------------------------------------------
# group specs
# ---------------------------------------------------------------------------


def _int_det(A: Sequence[Sequence[int]]) -> int:
    return int(det_gaussian(A).re) if A else 1


def _matmul_int(A, B):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))) for i in range(len(A)))


def _matmul_g(A, B):
    n = len(A)
    return tuple(tuple(sum((A[i][k] * B[k][j] for k in range(n)), ZERO) for j in range(n)) for i in range(n))


def _transpose(A):
    return tuple(zip(*A)) if A else ()


def _apply_transpose(A, lam):
    """A^T lambda."""
    r = len(lam)
    return tuple(sum(A[i][j] * lam[i] for i in range(r)) for j in range(r))


@dataclass(frozen=True)
class TorusWeights:
    torus_rank: int
    weights: tuple

    def __post_init__(self):
        w = tuple(tuple(int(x) for x in lam) for lam in self.weights)
        if any(len(lam) != self.torus_rank for lam in w):
            raise SpecError("every weight must have torus_rank entries")
        object.__setattr__(self, "weights", w)

    @property
    def m(self) -> int:
        return len(self.weights)

    def negation_closed(self) -> bool:
        return Counter(self.weights) == Counter(tuple(-x for x in lam) for lam in self.weights)


@dataclass(frozen=True)
class ComponentDatum:
    label: str
    torus_aut: tuple
    rep_matrix: tuple

    def __post_init__(self):
        object.__setattr__(self, "torus_aut", tuple(tuple(int(x) for x in r) for r in self.torus_aut))
        object.__setattr__(
            self, "rep_matrix",
            tuple(tuple(GaussianRational.coerce(x) for x in r) for r in self.rep_matrix))


def identity_datum(label: str, r: int, m: int) -> ComponentDatum:
    return ComponentDatum(
        label,
        tuple(tuple(int(i == j) for j in range(r)) for i in range(r)),
        tuple(tuple(ONE if i == j else ZERO for j in range(m)) for i in range(m)),
    )


def torus_matrix(weights: TorusWeights, B: Sequence[Sequence[int]] | None = None) -> list[list[LaurentPoly]]:
    """D(B u) as a diagonal matrix of Laurent monomials in r' variables."""
    r, m = weights.torus_rank, weights.m
    if B is None:
        exps = list(weights.weights)
        nv = r
    else:
        nv = len(B[0]) if B else 0
        exps = [tuple(sum(B[i][k] * lam[i] for i in range(r)) for k in range(nv)) for lam in weights.weights]
    return [[LaurentPoly.monomial(exps[p]) if p == q else LaurentPoly(nv) for q in range(m)] for p in range(m)]


@dataclass
class CompactGroupSpec:
    weights: TorusWeights
    components: tuple
    component_table: tuple
    warnings: list = field(default_factory=list, compare=False)

    def __post_init__(self):
        self.components = tuple(self.components)
        self.component_table = tuple(tuple(row) for row in self.component_table)

    # -- access ---------------------------------------------------------------

    @property
    def labels(self) -> list[str]:
        return [c.label for c in self.components]

    def component(self, label: str) -> ComponentDatum:
        for c in self.components:
            if c.label == label:
                return c
        raise UnknownComponent(label)

    def product(self, a: str, b: str) -> str:
        labels = self.labels
        if a not in labels:
            raise UnknownComponent(a)
        if b not in labels:
            raise UnknownComponent(b)
        return self.component_table[labels.index(a)][labels.index(b)]

    @property
    def identity(self) -> str:
        labels = self.labels
        for i, e in enumerate(labels):
            if all(self.component_table[i][j] == x for j, x in enumerate(labels)):
                return e
        raise GroupTableError("component table has no identity")

    def inverse(self, a: str) -> str:
        e = self.identity
        return next(b for b in self.labels if self.product(a, b) == e)

    # -- validation -----------------------------------------------------------

    def validate(self) -> "CompactGroupSpec":
        r, m = self.weights.torus_rank, self.weights.m
        labels = self.labels
        if len(set(labels)) != len(labels):
            raise GroupTableError("duplicate component labels")
        n = len(labels)
        table = self.component_table
        if len(table) != n or any(len(row) != n for row in table):
            raise GroupTableError("component table must be square over the component labels")
        if any(x not in labels for row in table for x in row):
            raise GroupTableError("component table mentions an unknown label")
        for row in table:
            if len(set(row)) != n:
                raise GroupTableError("component table rows must be permutations")
        for j in range(n):
            if len({table[i][j] for i in range(n)}) != n:
                raise GroupTableError("component table columns must be permutations")
        e = self.identity
        for a in labels:
            for b in labels:
                for c in labels:
                    if self.product(self.product(a, b), c) != self.product(a, self.product(b, c)):
                        raise GroupTableError(f"component table not associative at ({a},{b},{c})")
        ident = identity_datum(e, r, m)
        ed = self.component(e)
        if ed.torus_aut != ident.torus_aut or ed.rep_matrix != ident.rep_matrix:
            raise InvalidComponent(f"identity component {e!r} must have A = I and rho = I")
        for comp in self.components:
            self._validate_component(comp)
        for a in labels:
            for b in labels:
                ca, cb, cab = self.component(a), self.component(b), self.component(self.product(a, b))
                if r and _matmul_int(ca.torus_aut, cb.torus_aut) != cab.torus_aut:
                    raise GroupTableError(f"torus automorphisms do not compose: {a}*{b}")
                if m and _matmul_g(ca.rep_matrix, cb.rep_matrix) != cab.rep_matrix:
                    raise GroupTableError(f"representation matrices do not compose: {a}*{b}")
        if not self.weights.negation_closed():
            msg = "weight multiset is not closed under negation (complex, not real, representation)"
            if msg not in self.warnings:
                self.warnings.append(msg)
            log.warning(msg)
        return self

    def _validate_component(self, comp: ComponentDatum) -> None:
        r, m = self.weights.torus_rank, self.weights.m
        A, rho = comp.torus_aut, comp.rep_matrix
        if len(A) != r or any(len(row) != r for row in A):
            raise InvalidComponent(f"{comp.label}: torus_aut must be {r}x{r}")
        if len(rho) != m or any(len(row) != m for row in rho):
            raise InvalidComponent(f"{comp.label}: rep_matrix must be {m}x{m}")
        if r and abs(_int_det(A)) != 1:
            raise InvalidComponent(f"{comp.label}: torus_aut must have determinant +-1")
        if m and not det_gaussian(rho):
            raise InvalidComponent(f"{comp.label}: rep_matrix is singular")
        lam = self.weights.weights
        moved = [_apply_transpose(A, l) for l in lam] if r else list(lam)
        if Counter(moved) != Counter(lam):
            raise WeightCompatibilityError(f"{comp.label}: torus_aut does not permute the weights")
        # rho D(t) rho^-1 = D(A t)  <=>  rho D(t) = D(A t) rho, checked symbolically
        D = torus_matrix(self.weights)
        At = [[LaurentPoly.monomial(moved[p]) if p == q else LaurentPoly(r) for q in range(m)] for p in range(m)]
        for p in range(m):
            for q in range(m):
                left = D[q][q] * rho[p][q]
                right = At[p][p] * rho[p][q]
                if left != right:
                    raise WeightCompatibilityError(
                        f"{comp.label}: rep_matrix entry ({p},{q}) breaks rho D(t) rho^-1 = D(A t)")

    # -- io ---------------------------------------------------------------------

    @classmethod
    def from_json(cls, data) -> "CompactGroupSpec":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            r = int(data["torus_rank"])
            weights = TorusWeights(r, tuple(tuple(w) for w in data["weights"]))
            comps = []
            for c in data["components"]:
                A = c.get("torus_aut")
                if A is None:
                    A = [[int(i == j) for j in range(r)] for i in range(r)]
                rho = [[parse_gaussian(str(x)) for x in row] for row in c["rep_matrix"]]
                comps.append(ComponentDatum(str(c["label"]), A, rho))
            labels = [c.label for c in comps]
            table = data.get("component_table")
            if table is None:
                if len(comps) != 1:
                    raise GroupTableError("component_table is required with several components")
                table = [[labels[0]]]
            table = [[labels[x] if isinstance(x, int) else str(x) for x in row] for row in table]
        except (KeyError, TypeError, IndexError) as exc:
            raise SpecError(f"malformed group spec: {exc!r}") from exc
        return cls(weights, tuple(comps), tuple(tuple(r_) for r_ in table))

    def to_json(self) -> dict:
        return {
            "torus_rank": self.weights.torus_rank,
            "weights": [list(w) for w in self.weights.weights],
            "components": [
                {"label": c.label,
                 "torus_aut": [list(r) for r in c.torus_aut],
                 "rep_matrix": [[str(x) for x in row] for row in c.rep_matrix]}
                for c in self.components
            ],
            "component_table": [list(row) for row in self.component_table],
        }


# ---------------------------------------------------------------------------
# decision procedures
# ---------------------------------------------------------------------------


def fixed_subtorus(A: Sequence[Sequence[int]]) -> list[list[int]]:
    """r x r' integer matrix whose columns span ker(A - I) in Z^r."""
    r = len(A)
    if r == 0:
        return []
    M = [[A[i][j] - int(i == j) for j in range(r)] for i in range(r)]
    ker = integer_kernel(M, r)
    return [[row[i] for row in ker] for i in range(r)]


def is_saturated(B: Sequence[Sequence[int]]) -> bool:
    """Columns of B span a saturated sublattice (all Smith invariants equal 1)."""
    if not B or not B[0]:
        return True
    inv = smith_invariants(_transpose(B))
    return len(inv) == len(B[0]) and all(d == 1 for d in inv)


def generic_det(spec: CompactGroupSpec, label: str, B: Sequence[Sequence[int]] | None = None) -> LaurentPoly:
    """det(I - D(B u) rho(sigma)) as a Laurent polynomial in u (B = None: the whole torus)."""
    try:
        comp = spec.component(label)
    except UnknownComponent as exc:
        raise InvalidComponent(f"unknown component {label!r}") from exc
    m = spec.weights.m
    if B is not None and spec.weights.torus_rank == 0:
        B = None
    nv = spec.weights.torus_rank if B is None else (len(B[0]) if B else 0)
    D = torus_matrix(spec.weights, B)
    rho = comp.rep_matrix
    M = []
    for p in range(m):
        row = []
        for q in range(m):
            entry = D[p][p] * (-rho[p][q])
            if p == q:
                entry = entry + LaurentPoly.constant(nv, ONE)
            row.append(entry)
        M.append(row)
    return symbolic_det(M, nv)


def cond_c_check(spec: CompactGroupSpec) -> dict[str, bool]:
    """Per component: the fixed-point-free elements are dense in the coset."""
    return {lab: not generic_det(spec, lab).is_zero() for lab in spec.labels}


def cond_d_check(spec: CompactGroupSpec) -> dict[str, bool]:
    """Per component: same question with s restricted to the identity component of T^sigma."""
    out = {}
    for comp in spec.components:
        B = fixed_subtorus(comp.torus_aut)
        out[comp.label] = not generic_det(spec, comp.label, B).is_zero()
    return out


def almost_elliptic(spec: CompactGroupSpec) -> bool:
    return all(cond_c_check(spec).values())


def condition_verdicts(spec: CompactGroupSpec, condition: str = "c") -> dict[str, bool]:
    """Per-component verdicts for condition b, c or d.

    With a toral identity component the whole-group condition (b) coincides
    with the per-coset condition (c).
    """
    if condition in ("b", "c"):
        return cond_c_check(spec)
    if condition == "d":
        return cond_d_check(spec)
    raise ValueError(f"unknown condition {condition!r}")


@dataclass
class AuditReport:
    cond_c: dict
    cond_d: dict
    disagreements: list

    @property
    def agree(self) -> bool:
        return not self.disagreements

    def to_json(self) -> dict:
        return {
            "cond_c": self.cond_c,
            "cond_d": self.cond_d,
            "cond_e": self.cond_d,
            "cond_f": self.cond_d,
            "disagreements": self.disagreements,
            "agree": self.agree,
        }


def equivalence_audit(spec: CompactGroupSpec) -> AuditReport:
    """Compare conditions (c) and (d) componentwise.

    The torus is the unique maximal torus of the identity component and is
    invariant under every component, so conditions (e) and (f) are (d).
    """
    c, d = cond_c_check(spec), cond_d_check(spec)
    bad = [lab for lab in spec.labels if c[lab] != d[lab]]
    return AuditReport(c, d, bad)


def cyclic_subgroup(spec: CompactGroupSpec, label: str) -> list[str]:
    e = spec.identity
    spec.component(label)
    out = [e]
    x = label
    while x != e:
        out.append(x)
        x = spec.product(x, label)
    return out


def monothetic_reduction(spec: CompactGroupSpec, label: str) -> CompactGroupSpec:
    """Sub-spec K_0 . <sigma>: same torus and weights, components the cyclic subgroup of sigma."""
    keep = cyclic_subgroup(spec, label)
    keep_set = set(keep)
    comps = tuple(c for c in spec.components if c.label in keep_set)
    labels = [c.label for c in comps]
    table = tuple(tuple(spec.product(a, b) for b in labels) for a in labels)
    return CompactGroupSpec(spec.weights, comps, table)


# ---------------------------------------------------------------------------
# random valid specs
# ---------------------------------------------------------------------------

_UNIT_GAUSSIANS = [
    ONE, -ONE, GaussianRational(0, 1), GaussianRational(0, -1),
    GaussianRational(Fraction(3, 5), Fraction(4, 5)), GaussianRational(Fraction(4, 5), Fraction(-3, 5)),
    GaussianRational(Fraction(5, 13), Fraction(12, 13)), GaussianRational(Fraction(-8, 17), Fraction(15, 17)),
]


def _elementary_unimodular(rng: random.Random, r: int):
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    Uinv = [row[:] for row in U]
    for _ in range(rng.randint(0, 3)):
        if r < 2:
            break
        i, j = rng.sample(range(r), 2)
        f = rng.choice([-1, 1])
        # U <- E U with E = I + f e_ij ; Uinv <- Uinv E^-1
        U[i] = [a + f * b for a, b in zip(U[i], U[j])]
        for row in Uinv:
            row[j] -= f * row[i]
    return U, Uinv


def _signed_permutation(rng: random.Random, r: int, order: int):
    """Integer matrix P with P^order = I."""
    blocks = []
    remaining = r
    while remaining:
        options = [1]
        if remaining >= 2 and order % 2 == 0:
            options += [2, 2]
        if remaining >= 2 and order == 3:
            options += ["rot3"]
        if remaining >= 3 and order == 3:
            options += [3]
        if remaining >= 2 and order == 4:
            options += ["rot4"]
        kind = rng.choice(options)
        if kind == 1:
            s = rng.choice([1, -1]) if order % 2 == 0 else 1
            blocks.append([[s]])
            remaining -= 1
        elif kind == 2:
            blocks.append([[0, 1], [1, 0]])
            remaining -= 2
        elif kind == "rot3":
            blocks.append([[0, -1], [1, -1]])
            remaining -= 2
        elif kind == "rot4":
            blocks.append([[0, -1], [1, 0]])
            remaining -= 2
        else:
            blocks.append([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
            remaining -= 3
    P = [[0] * r for _ in range(r)]
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                P[off + i][off + j] = b[i][j]
        off += k
    return P


def _mat_power(A, k, mul, ident):
    out = ident
    for _ in range(k):
        out = mul(out, A)
    return out


def random_spec(rng: random.Random, max_rank: int = 3, max_lines: int = 6, max_order: int = 4) -> CompactGroupSpec:
    """A random valid spec with cyclic component group of order <= max_order."""
    while True:
        r = rng.randint(1, max_rank)
        f = rng.randint(1, max_order)
        P = _signed_permutation(rng, r, f)
        U, Uinv = _elementary_unimodular(rng, r)
        A = _matmul_int(_matmul_int(U, P), Uinv)
        ident_int = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        if _mat_power(A, f, _matmul_int, ident_int) != ident_int:
            continue
        # weight lines as A^T-orbits
        target = rng.randint(1, max_lines)
        cycles, weights = [], []
        attempts = 0
        while len(weights) < target and attempts < 20:
            attempts += 1
            lam = tuple(rng.randint(-2, 2) if rng.random() < 0.8 else 0 for _ in range(r))
            orbit = [lam]
            while True:
                nxt = _apply_transpose(A, orbit[-1])
                if nxt == lam:
                    break
                orbit.append(nxt)
            if len(weights) + len(orbit) > max_lines:
                continue
            cycles.append(list(range(len(weights), len(weights) + len(orbit))))
            weights.extend(orbit)
        if not weights:
            continue
        m = len(weights)
        rho = [[ZERO] * m for _ in range(m)]
        for cyc in cycles:
            ell = len(cyc)
            q = f // ell
            targets = [ONE]
            if q % 2 == 0:
                targets.append(-ONE)
            if q % 4 == 0:
                targets += [GaussianRational(0, 1), GaussianRational(0, -1)]
            prod_target = rng.choice(targets)
            coeffs = [rng.choice(_UNIT_GAUSSIANS) for _ in range(ell - 1)]
            acc = ONE
            for c in coeffs:
                acc = acc * c
            coeffs.append(prod_target / acc)
            for s in range(ell):
                rho[cyc[s]][cyc[(s + 1) % ell]] = coeffs[s]
        # mix lines sharing a weight: conjugate by a weight-block-diagonal matrix
        S = [[ONE if i == j else ZERO for j in range(m)] for i in range(m)]
        for p in range(m):
            for q in range(m):
                if p != q and weights[p] == weights[q] and rng.random() < 0.5:
                    S[p][q] = GaussianRational(rng.randint(-1, 1), rng.randint(-1, 1))
        if not det_gaussian(S):
            continue
        Sinv = _inverse_g(S)
        rho = _matmul_g(_matmul_g(S, rho), Sinv)
        ident_g = tuple(tuple(ONE if i == j else ZERO for j in range(m)) for i in range(m))
        labels = ["1"] + ["s" if k == 1 else f"s^{k}" for k in range(1, f)]
        comps = [
            ComponentDatum(labels[k], _mat_power(A, k, _matmul_int, ident_int),
                           _mat_power(rho, k, _matmul_g, ident_g))
            for k in range(f)
        ]
        table = tuple(tuple(labels[(a + b) % f] for b in range(f)) for a in range(f))
        spec = CompactGroupSpec(TorusWeights(r, tuple(weights)), tuple(comps), table)
        logging.disable(logging.WARNING)
        try:
            spec.validate()
        finally:
            logging.disable(logging.NOTSET)
        return spec


def _inverse_g(M):
    n = len(M)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def direct_det(spec: CompactGroupSpec, label: str, torus_point: Sequence) -> GaussianRational:
    """det(I - D(t) rho(sigma)) evaluated numerically-exactly at a point t of the torus."""
    comp = spec.component(label)
    t = [GaussianRational.coerce(x) for x in torus_point]
    m = spec.weights.m
    chars = []
    for lam in spec.weights.weights:
        v = ONE
        for x, k in zip(t, lam):
            v = v * x ** k
        chars.append(v)
    M = [[(ONE if p == q else ZERO) - chars[p] * comp.rep_matrix[p][q] for q in range(m)] for p in range(m)]
    return det_gaussian(M)


def pythagorean_points(count: int, limit: int = 60) -> list[GaussianRational]:
    """Unit-modulus Gaussian rationals (a + b i)/c from Euclid's formula, all quadrants."""
    out = []
    for mm in range(2, limit):
        for nn in range(1, mm):
            if (mm - nn) % 2 == 0:
                continue
            if math.gcd(mm, nn) != 1:
                continue
            a, b, c = mm * mm - nn * nn, 2 * mm * nn, mm * mm + nn * nn
            for sa, sb in ((1, 1), (-1, 1), (1, -1), (-1, -1)):
                out.append(GaussianRational(Fraction(sa * a, c), Fraction(sb * b, c)))
                if len(out) >= count:
                    return out
    return out
