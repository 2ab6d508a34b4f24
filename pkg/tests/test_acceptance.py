"""Acceptance criteria. Each test prints one PASS/FAIL line with its timing.

Run alone with ``pytest tests/test_acceptance.py -v -s`` or
``python tests/test_acceptance.py``.
"""

import io
import json
import random
import sys
import time
from contextlib import contextmanager, redirect_stdout
from fractions import Fraction

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, fixture_text
from elliptic_density import cli
from elliptic_density.compact import (
    CompactGroupSpec,
    almost_elliptic,
    cond_c_check,
    cond_d_check,
    direct_det,
    generic_det,
    monothetic_reduction,
    pythagorean_points,
    random_spec,
)
from elliptic_density.exact import GaussianRational, I, parse_scalar, primitive_pythagorean_triples, pythagorean_scalar
from elliptic_density.lattice import NOT_STABILIZED, STABILIZED, derived_module_chain, fg_derived_criterion, hnf, subgroup_of_Q_generator
from elliptic_density.lie import CATALOG, random_splice_candidate, splice_check, classify_derived_generation
from elliptic_density.sim import SemidirectGroup, SimConfig, elliptic_distance, empirical_ellipticity, fg_dense_witness, fg_lattice_witness, orbit_gap

SEED = 20240531
HEX_ROOT = {"minpoly": [1, -1, 1], "root_box": ["0", "1", "0", "1"]}
CORPUS_SPECS = ["z2.json", "circle-rotation.json", "trivial-action.json"]


def load(name) -> CompactGroupSpec:
    return CompactGroupSpec.from_json(fixture_text(name)).validate()


@contextmanager
def criterion(number: int, title: str, budget: float):
    """Time a criterion, enforce its budget and print exactly one status line."""
    start = time.perf_counter()
    status, note = "FAIL", ""
    try:
        yield
        elapsed = time.perf_counter() - start
        if elapsed >= budget:
            note = f" (over budget {budget:g} s)"
            raise AssertionError(f"criterion {number} took {elapsed:.2f} s, budget {budget:g} s")
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        line = f"ACCEPTANCE {number} {status}: {title} [{elapsed:.2f} s / {budget:g} s]{note}"
        ACCEPTANCE_LINES.append(line)
        print(line)


def test_1_counterexample_reproduction():
    with criterion(1, "z2 counterexample: not almost elliptic, sigma determinant zero, identity reduction elliptic", 1.0):
        buf = io.StringIO()
        with redirect_stdout(buf):
            code = cli.main(["check", "--spec", "z2.json", "--format", "json"])
        assert code == 0
        rep = json.loads(buf.getvalue())
        assert rep["verdicts"]["almost_elliptic"] is False
        assert rep["verdicts"]["components"]["sigma"]["identically_zero"] is True
        spec = load("z2.json")
        assert generic_det(spec, "sigma").is_zero()
        assert almost_elliptic(monothetic_reduction(spec, "1")) is True


def test_2_equivalence_audit():
    with criterion(2, "per-coset vs fixed-torus conditions agree on 200 random specs", 60.0):
        rng = random.Random(SEED)
        disagreements = 0
        for _ in range(200):
            spec = random_spec(rng, max_rank=3, max_lines=6, max_order=4)
            spec.validate()
            assert spec.weights.torus_rank <= 3 and spec.weights.m <= 6 and len(spec.labels) <= 4
            c, d = cond_c_check(spec), cond_d_check(spec)
            disagreements += sum(c[lab] != d[lab] for lab in spec.labels)
        assert disagreements == 0


def test_3_fg_criterion_vs_chain():
    with criterion(3, "finite generation criterion matches chain stabilization", 30.0):
        shipped = json.loads(fixture_text("pythagorean.json"))
        assert [tuple(t) for t in shipped["triples"]] == primitive_pythagorean_triples(10)
        for (a, b, c), lit in zip(primitive_pythagorean_triples(10), shipped["scalars"]):
            z = pythagorean_scalar(a, b, c)
            assert parse_scalar(lit).gaussian == z
            assert fg_derived_criterion(z) is False
            rep = derived_module_chain(z, bound=12)
            assert rep.verdict == NOT_STABILIZED
            assert rep.strictly_decreasing_after_saturation()
        for z in (I, -I, parse_scalar(HEX_ROOT)):
            assert fg_derived_criterion(z) is True
            rep = derived_module_chain(z, bound=12)
            assert rep.verdict == STABILIZED and rep.stabilized_at <= 4


def test_4_classifier_catalog():
    expected = {"abelian2": False, "heisenberg": False, "heisenberg_plus_line": False,
                "e2": True, "aff1": True, "sl2": True}
    with criterion(4, "Lie algebra classifier on the catalog", 1.0):
        for name, verdict in expected.items():
            assert classify_derived_generation(CATALOG[name]()).verdict is verdict, name


def test_5_splice_property():
    with criterion(5, "500 random splice instances with hypotheses all nilpotent", 120.0):
        rng = random.Random(SEED)
        hits = violations = 0
        while hits < 500:
            a, j, k = random_splice_candidate(rng)
            res = splice_check(a, j, k)
            if res.hypotheses_hold:
                hits += 1
                violations += not res.conclusion_holds
        assert violations == 0


def test_6_empirical_vs_symbolic():
    with criterion(6, "empirical ellipticity matches symbolic verdict; z2 witness stays far", 60.0):
        z2 = load("z2.json")
        corpus = [z2, monothetic_reduction(z2, "1")] + [load(n) for n in CORPUS_SPECS[1:]]
        for spec in corpus:
            rep = empirical_ellipticity(spec, SimConfig(seed=SEED))
            assert rep.verdict == almost_elliptic(spec)
        G = SemidirectGroup(z2)
        g = G.element(np.array([1, 1], dtype=complex), "sigma")
        assert abs(elliptic_distance(g, 0.0) - 2 ** 0.5) < 1e-3
        assert elliptic_distance(g, 0.1) >= 1.0


def test_7_orbit_density_proxy():
    with criterion(7, "orbit gaps: sqrt(2) dense, 1/3 periodic", 5.0):
        assert orbit_gap(2 ** 0.5, 10 ** 4) < 1e-2
        assert abs(orbit_gap(Fraction(1, 3), 100) - 1 / 3) <= 1e-12


def test_8_cyclic_subgroups_of_Q():
    with criterion(8, "finite subsets of Q generate cyclic discrete subgroups", 5.0):
        rng = random.Random(SEED)
        for _ in range(100):
            xs = [Fraction(rng.randint(-500, 500), rng.randint(1, 60)) for _ in range(rng.randint(1, 8))]
            g = subgroup_of_Q_generator(xs)
            L = hnf([(x,) for x in xs], ambient_dim=1)
            assert L.rank <= 1
            assert all((x / g).denominator == 1 for x in xs) if g else not any(xs)
            assert (L.vectors()[0][0] if L.rank else 0) == g


def test_9_cross_module_consistency():
    with criterion(9, "numeric fg witness agrees with lattice engine; symbolic det equals direct det", 30.0):
        scalars = [pythagorean_scalar(*t) for t in primitive_pythagorean_triples(10)] + [I, -I, GaussianRational(-1)]
        for z in scalars:
            num = fg_dense_witness(complex(z), 1, range(1, 6))
            ex = fg_lattice_witness(z, range(1, 6))
            assert (num.q_rank_estimate, num.discrete, num.invariant_line) == \
                   (ex.q_rank_estimate, ex.discrete, ex.invariant_line), z
        rng = random.Random(SEED)
        pts = pythagorean_points(200)
        for name in CORPUS_SPECS + ["swap-torus.json"]:
            spec = load(name)
            for lab in spec.labels:
                poly = generic_det(spec, lab)
                for _ in range(50):
                    t = [rng.choice(pts) for _ in range(spec.weights.torus_rank)]
                    assert poly.evaluate(t) == direct_det(spec, lab, t)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
