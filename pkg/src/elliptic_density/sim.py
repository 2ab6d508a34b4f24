"""Numeric laboratory for V x| K.

Elements are triples (v, angles, component): v in C^m stored as a real vector
of length 2m (real and imaginary parts interleaved), angles the torus part in
fractions of a turn, component a label of the group spec. Results here are
floating-point estimates; the exact verdicts live in :mod:`compact` and
:mod:`lattice`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import minimize

from .compact import CompactGroupSpec
from .exact import GaussianRational, NotUnitModulus
from .lattice import hnf


class SpecMismatch(ValueError):
    pass


class DegenerateInput(ValueError):
    pass


@dataclass
class SimConfig:
    tolerance: float = 1e-9
    delta: float = 0.1
    samples: int = 200
    report_threshold: float = 1e-3
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.tolerance < self.delta:
            raise ValueError("need 0 < tolerance < delta")


class SemidirectGroup:
    """Numeric model of V x| K for a validated spec (split extension)."""

    def __init__(self, spec: CompactGroupSpec):
        self.spec = spec
        self.m = spec.weights.m
        self.r = spec.weights.torus_rank
        self.lam = np.array(spec.weights.weights, dtype=float).reshape(self.m, self.r)
        self.rho = {c.label: np.array([[complex(x) for x in row] for row in c.rep_matrix],
                                      dtype=complex).reshape(self.m, self.m)
                    for c in spec.components}
        self.aut = {c.label: np.array(c.torus_aut, dtype=float).reshape(self.r, self.r)
                    for c in spec.components}

    def element(self, v, component: str, angles=None) -> "SemidirectElement":
        v = np.asarray(v)
        if np.iscomplexobj(v) or v.shape == (self.m,):
            v = _to_real(np.asarray(v, dtype=complex))
        angles = np.zeros(self.r) if angles is None else np.asarray(angles, dtype=float)
        self.spec.component(component)
        return SemidirectElement(np.asarray(v, dtype=float), component, np.mod(angles, 1.0), self)

    def identity(self) -> "SemidirectElement":
        return self.element(np.zeros(self.m, dtype=complex), self.spec.identity)

    def action(self, angles: np.ndarray, component: str) -> np.ndarray:
        """rho(t sigma) = D(t) rho(sigma) as a complex m x m matrix."""
        chars = np.exp(2j * np.pi * (self.lam @ np.asarray(angles, dtype=float))) if self.r else np.ones(self.m)
        return chars[:, None] * self.rho[component]


def _to_real(v: np.ndarray) -> np.ndarray:
    out = np.empty(2 * len(v))
    out[0::2] = v.real
    out[1::2] = v.imag
    return out


@dataclass
class SemidirectElement:
    v: np.ndarray
    component: str
    angles: np.ndarray
    group: SemidirectGroup = field(repr=False, compare=False)

    @property
    def complex_v(self) -> np.ndarray:
        return self.v[0::2] + 1j * self.v[1::2]

    def to_json(self) -> dict:
        return {"v": [float(x) for x in self.v], "component": self.component,
                "angles": [float(x) for x in self.angles]}


def _same_group(g: SemidirectElement, h: SemidirectElement) -> SemidirectGroup:
    if g.group is not h.group and g.group.spec is not h.group.spec:
        raise SpecMismatch("elements belong to different groups")
    return g.group


def multiply(g: SemidirectElement, h: SemidirectElement) -> SemidirectElement:
    G = _same_group(g, h)
    w = G.action(g.angles, g.component) @ h.complex_v
    angles = g.angles + G.aut[g.component] @ h.angles if G.r else g.angles
    comp = G.spec.product(g.component, h.component)
    return G.element(g.complex_v + w, comp, angles)


def invert(g: SemidirectElement) -> SemidirectElement:
    G = g.group
    inv_comp = G.spec.inverse(g.component)
    k = G.action(g.angles, g.component)
    v = -np.linalg.solve(k, g.complex_v)
    angles = G.aut[inv_comp] @ (-g.angles) if G.r else g.angles
    return G.element(v, inv_comp, angles)


def commutator(g: SemidirectElement, h: SemidirectElement) -> SemidirectElement:
    return multiply(multiply(g, h), multiply(invert(g), invert(h)))


def distance(g: SemidirectElement, h: SemidirectElement) -> float:
    """Vector distance plus circular angle distance; infinite across components."""
    if g.component != h.component:
        return math.inf
    d_ang = np.abs(((g.angles - h.angles) + 0.5) % 1.0 - 0.5)
    return float(np.linalg.norm(g.v - h.v) + (d_ang.max() if d_ang.size else 0.0))


# ---------------------------------------------------------------------------
# ellipticity
# ---------------------------------------------------------------------------


def _image_distance(M: np.ndarray, v: np.ndarray, tol: float) -> float:
    U, s, _ = np.linalg.svd(M)
    k = int(np.sum(s > tol))
    if k == len(v):
        return 0.0
    Uk = U[:, :k]
    return float(np.linalg.norm(v - Uk @ (Uk.conj().T @ v)))


def elliptic_distance(g: SemidirectElement, delta: float, tolerance: float = 1e-9, grid: int | None = None) -> float:
    """Distance from v to im(1 - rho(s k)), minimized over torus s within delta of 1.

    Zero exactly when (v, k) is a limit of elliptic elements (w - s k w, s k)
    with s close to the identity.
    """
    G = g.group
    v = g.complex_v
    m = G.m
    I = np.eye(m)

    def f(phi):
        return _image_distance(I - G.action(g.angles + phi, g.component), v, tolerance)

    if G.r == 0 or delta <= 0:
        return f(np.zeros(G.r))
    if grid is None:
        grid = {1: 21, 2: 9, 3: 5}.get(G.r, 3)
    axes = [np.linspace(-delta, delta, grid)] * G.r
    pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, G.r)
    vals = np.array([f(p) for p in pts])
    best = float(vals.min())
    if best <= tolerance:
        return best
    for idx in np.argsort(vals)[:3]:
        res = minimize(f, pts[idx], method="L-BFGS-B", bounds=[(-delta, delta)] * G.r,
                       options={"maxiter": 50})
        best = min(best, float(res.fun))
    return best


@dataclass
class EllipticityReport:
    verdict: bool
    max_distance: float
    witness: SemidirectElement | None
    per_component: dict
    samples: int
    seed: int
    delta: float
    threshold: float
    distances: list = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "max_distance": self.max_distance,
            "witness": None if self.witness is None else self.witness.to_json(),
            "per_component_max_distance": self.per_component,
            "samples": self.samples,
            "seed": self.seed,
            "delta": self.delta,
            "threshold": self.threshold,
        }


def sample_element(G: SemidirectGroup, seed: int, index: int) -> SemidirectElement:
    """Sample number *index* of a run; depends only on (seed, index)."""
    rng = np.random.default_rng([seed, index])
    labels = G.spec.labels
    comp = labels[index % len(labels)]
    while True:
        x = rng.standard_normal(2 * G.m)
        nrm = np.linalg.norm(x)
        if nrm == 0:
            continue
        x *= rng.random() ** (1.0 / (2 * G.m)) / nrm
        angles = rng.random(G.r)
        if G.r and not angles.any():
            continue
        return G.element(x[0::2] + 1j * x[1::2], comp, angles)


def empirical_ellipticity(spec: CompactGroupSpec, config: SimConfig | None = None) -> EllipticityReport:
    config = config or SimConfig()
    G = SemidirectGroup(spec)
    dists = []
    worst, worst_d = None, -1.0
    per = {lab: 0.0 for lab in spec.labels}
    for i in range(config.samples):
        g = sample_element(G, config.seed, i)
        d = elliptic_distance(g, config.delta, config.tolerance)
        dists.append((g.component, d))
        per[g.component] = max(per[g.component], d)
        if d > worst_d:
            worst, worst_d = g, d
    verdict = worst_d < config.report_threshold
    return EllipticityReport(
        verdict=verdict,
        max_distance=worst_d,
        witness=None if verdict else worst,
        per_component=per,
        samples=config.samples,
        seed=config.seed,
        delta=config.delta,
        threshold=config.report_threshold,
        distances=dists,
    )


# ---------------------------------------------------------------------------
# rotation orbits
# ---------------------------------------------------------------------------


def orbit_points(theta, N: int) -> np.ndarray:
    if isinstance(theta, (Fraction, int)):
        th = Fraction(theta)
        return np.array(sorted(float((n * th) % 1) for n in range(1, N + 1)))
    n = np.arange(1, N + 1, dtype=float)
    return np.sort(np.mod(n * float(theta), 1.0))


def orbit_gap_exact(theta, N: int) -> Fraction:
    """Exact largest circular gap for rational theta."""
    if N < 1:
        raise ValueError("N must be at least 1")
    th = Fraction(theta)
    pts = sorted({(n * th) % 1 for n in range(1, N + 1)})
    gaps = [b - a for a, b in zip(pts, pts[1:])] + [pts[0] + 1 - pts[-1]]
    return max(gaps)


def orbit_gap(theta, N: int) -> float:
    """Largest circular gap between consecutive points of {n theta mod 1 : 1 <= n <= N}."""
    if N < 1:
        raise ValueError("N must be at least 1")
    if isinstance(theta, (Fraction, int)):
        return float(orbit_gap_exact(theta, N))
    pts = orbit_points(theta, N)
    gaps = np.diff(pts)
    wrap = pts[0] + 1.0 - pts[-1]
    return float(max(gaps.max(initial=0.0), wrap))


# ---------------------------------------------------------------------------
# finite generation witnesses
# ---------------------------------------------------------------------------


def lll_reduce(basis: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> list[list[int]]:
    """LLL-reduce integer row vectors (exact rational Gram-Schmidt). Zero rows are dropped."""
    b = [list(map(int, r)) for r in basis if any(r)]
    n = len(b)
    if n == 0:
        return []

    def dot(x, y):
        return sum(p * q for p, q in zip(x, y))

    def gram_schmidt():
        bstar, mu, B = [], [[Fraction(0)] * n for _ in range(n)], []
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = Fraction(dot(b[i], bstar[j])) / B[j] if B[j] else Fraction(0)
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
            B.append(dot(v, v))
        return mu, B

    mu, B = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                mu, B = gram_schmidt()
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            mu, B = gram_schmidt()
            k = max(k - 1, 1)
    return b


@dataclass
class FgWitness:
    q_rank_estimate: int
    discrete: bool
    invariant_line: bool
    real_rank: int
    relations: list

    def to_json(self) -> dict:
        return {"q_rank_estimate": self.q_rank_estimate, "discrete": self.discrete,
                "invariant_line": self.invariant_line, "real_rank": self.real_rank,
                "relations": self.relations}


def fg_dense_witness(z: complex, v: complex, exponents: Iterable[int], tolerance: float = 1e-9,
                     coeff_bound: int = 10 ** 6) -> FgWitness:
    """Estimate the rank of the Z-span of {v - z^n v : n in exponents} inside C = R^2.

    Integer relations among the generators are searched for by lattice
    reduction; a relation counts when its coefficients are bounded by
    *coeff_bound* and its residual is below *tolerance* (relative to the
    largest generator). The estimate is an upper bound for the true rank.
    """
    z, v = complex(z), complex(v)
    F = list(exponents)
    if not F:
        raise DegenerateInput("need at least one exponent")
    if v == 0 or abs(z - 1) <= tolerance:
        raise DegenerateInput("v must be nonzero and z != 1")
    if abs(abs(z) - 1) > tolerance:
        raise NotUnitModulus(f"|z| = {abs(z)} is not 1")
    w = np.array([v - z ** n * v for n in F], dtype=complex)
    scale = np.abs(w).max()
    if scale == 0:
        return FgWitness(0, True, abs(z.imag) <= tolerance, 0, [[int(i == j) for j in range(len(F))] for i in range(len(F))])
    w = w / scale
    real = np.stack([w.real, w.imag])
    real_rank = int(np.linalg.matrix_rank(real, tol=math.sqrt(tolerance)))
    K = 0.1 / tolerance
    k = len(F)
    rows = []
    for i in range(k):
        rows.append([int(i == j) for j in range(k)] + [int(round(K * w[i].real)), int(round(K * w[i].imag))])
    reduced = lll_reduce(rows)
    relations = []
    for row in reduced:
        c = row[:k]
        if not any(c) or max(abs(x) for x in c) > coeff_bound:
            continue
        resid = abs(sum(ci * wi for ci, wi in zip(c, w)))
        if resid <= tolerance:
            relations.append(c)
    q_rank = k - len(relations)
    discrete = q_rank <= 2 and q_rank == real_rank
    return FgWitness(q_rank, discrete, abs(z.imag) <= tolerance, real_rank, relations)


def fg_lattice_witness(z, exponents: Iterable[int]) -> FgWitness:
    """Exact counterpart of :func:`fg_dense_witness` for Gaussian-rational z (v = 1).

    A finitely generated subgroup of Q(i) is discrete, so only its rank is informative.
    """
    z = GaussianRational.coerce(z)
    gens = []
    for n in exponents:
        w = 1 - z ** n
        gens.append((w.re, w.im))
    L = hnf(gens, ambient_dim=2)
    return FgWitness(L.rank, True, z.im == 0, L.rank, [])
