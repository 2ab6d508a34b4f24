"""Command-line front end: ``elliptic-density <command> ...``.

Exit codes: 0 when a verdict was computed (true or false), 2 for invalid
input, 3 when an internal invariant fails.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import random
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import __version__
from . import compact, lattice, lie, sim
from .exact import (
    DegenerateScalar,
    NotUnitModulus,
    ReducibleMinpoly,
    RootIsolationError,
    ScalarSyntaxError,
    format_gaussian,
    is_algebraic_integer,
    is_root_of_unity,
    parse_gaussian,
    parse_scalar,
    root_of_unity_order,
    unit_modulus,
)

log = logging.getLogger("elliptic_density")

EXIT_OK, EXIT_INVALID, EXIT_INVARIANT = 0, 2, 3

INVALID_INPUT = (
    compact.SpecError,
    compact.UnknownComponent,
    lie.LieAlgebraError,
    ScalarSyntaxError,
    ReducibleMinpoly,
    NotUnitModulus,
    DegenerateScalar,
    sim.DegenerateInput,
    json.JSONDecodeError,
    FileNotFoundError,
)


class InvariantFailure(RuntimeError):
    pass


@dataclass
class RunReport:
    command: str
    inputs_digest: str
    verdicts: dict
    seed: int | None = None
    version: str = __version__
    figures: list = field(default_factory=list)

    def to_json(self) -> str:
        data = {"command": self.command, "inputs_digest": self.inputs_digest,
                "verdicts": self.verdicts, "seed": self.seed, "version": self.version}
        if self.figures:
            data["figures"] = self.figures
        return json.dumps(data, sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"command: {self.command}", f"version: {self.version}",
                 f"inputs_digest: {self.inputs_digest}"]
        if self.seed is not None:
            lines.append(f"seed: {self.seed}")
        lines.append("---")
        lines.extend(f"{k} = {v}" for k, v in _flatten(self.verdicts))
        for f in self.figures:
            lines.append(f"figure: {f}")
        return "\n".join(lines) + "\n"


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and all(isinstance(x, (dict, list)) for x in obj):
        for i, x in enumerate(obj):
            yield from _flatten(x, f"{prefix}[{i}]")
    else:
        yield prefix, json.dumps(obj) if not isinstance(obj, str) else obj


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------


def resolve_input(name: str) -> Path:
    """A path on disk, or else the name of a bundled fixture."""
    p = Path(name)
    if p.exists():
        return p
    fixture = resources.files("elliptic_density") / "fixtures" / p.name
    if fixture.is_file():
        return Path(str(fixture))
    raise FileNotFoundError(f"no such file or fixture: {name}")


class Inputs:
    """Collects everything read by a command so the report can hash it."""

    def __init__(self):
        self.parts: list[tuple[str, bytes]] = []

    def read(self, name: str) -> str:
        data = resolve_input(name).read_bytes()
        self.parts.append((Path(name).name, data))
        return data.decode()

    def value(self, key: str, val) -> None:
        self.parts.append((key, str(val).encode()))

    def digest(self) -> str:
        h = hashlib.sha256()
        for key, data in self.parts:
            h.update(key.encode() + b"\0" + hashlib.sha256(data).digest())
        return h.hexdigest()


def load_spec(inputs: Inputs, name: str) -> compact.CompactGroupSpec:
    return compact.CompactGroupSpec.from_json(inputs.read(name)).validate()


def load_algebra(inputs: Inputs, name: str) -> lie.LieAlgebraSC:
    a = lie.LieAlgebraSC.from_json(inputs.read(name))
    lie.validate(a)
    return a


def load_subspace(inputs: Inputs, a: lie.LieAlgebraSC, name: str) -> lie.Subspace:
    data = json.loads(inputs.read(name))
    vectors = data["vectors"] if isinstance(data, dict) else data
    rows = []
    for v in vectors:
        if isinstance(v, str):
            if v not in a.basis_names:
                raise lie.DimensionMismatch(f"unknown basis element {v!r}")
            rows.append(v)
        else:
            rows.append([_rational(x) for x in v])
    return a.subspace(rows)


def _rational(x) -> Fraction:
    z = parse_gaussian(str(x))
    if z.im:
        raise ScalarSyntaxError(f"expected a rational, got {x!r}")
    return z.re


def _subspace_json(a: lie.LieAlgebraSC, S: lie.Subspace) -> dict:
    return {"dim": S.rank, "basis": [[str(x) for x in row] for row in S.basis]}


_THETA_NAMES = {"sqrt", "pi", "E", "phi", "GoldenRatio", "exp", "log", "cbrt"}


def parse_theta(expr: str):
    """Evaluate a rotation-number expression: exact Fraction when rational, else float."""
    import sympy

    for name in re.findall(r"[A-Za-z_]+", expr):
        if name not in _THETA_NAMES:
            raise ScalarSyntaxError(f"unsupported name {name!r} in {expr!r}")
    if not re.fullmatch(r"[0-9A-Za-z_+\-*/(). ^]+", expr):
        raise ScalarSyntaxError(f"bad characters in {expr!r}")
    val = sympy.sympify(expr.replace("^", "**"), locals={"phi": sympy.GoldenRatio})
    if not val.is_real:
        raise ScalarSyntaxError(f"{expr!r} is not a real number")
    if val.is_Rational:
        return Fraction(int(val.p), int(val.q))
    return float(val)


def parse_complex(text: str) -> complex:
    try:
        re_, im_ = (float(x) for x in text.split(","))
    except ValueError:
        raise ScalarSyntaxError(f"expected RE,IM, got {text!r}") from None
    return complex(re_, im_)


def parse_exponents(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", part)
        if m:
            out.extend(range(int(m[1]), int(m[2]) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise ScalarSyntaxError(f"no exponents in {text!r}")
    return out


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_check(args, inputs):
    spec = load_spec(inputs, args.spec)
    inputs.value("condition", args.condition)
    verdicts = compact.condition_verdicts(spec, args.condition)
    comps = {}
    for lab in spec.labels:
        B = None if args.condition in ("b", "c") else compact.fixed_subtorus(spec.component(lab).torus_aut)
        det = compact.generic_det(spec, lab, B)
        comps[lab] = {"verdict": verdicts[lab], "generic_det": str(det), "identically_zero": det.is_zero()}
    return {"almost_elliptic": all(verdicts.values()), "condition": args.condition,
            "components": comps, "warnings": list(spec.warnings)}


def cmd_audit(args, inputs):
    if args.random:
        inputs.value("random", args.random)
        inputs.value("seed", args.seed)
        rng = random.Random(args.seed)
        bad = []
        for i in range(args.random):
            report = compact.equivalence_audit(compact.random_spec(rng))
            if not report.agree:
                bad.append({"index": i, "components": report.disagreements})
        return {"specs": args.random, "disagreements": bad, "agree": not bad}
    spec = load_spec(inputs, args.spec)
    return compact.equivalence_audit(spec).to_json()


def cmd_reduce(args, inputs):
    spec = load_spec(inputs, args.spec)
    inputs.value("component", args.component)
    red = compact.monothetic_reduction(spec, args.component)
    return {"component": args.component,
            "subgroup": [c.label for c in red.components],
            "almost_elliptic": compact.almost_elliptic(red),
            "almost_elliptic_full": compact.almost_elliptic(spec),
            "spec": red.to_json()}


def cmd_validate(args, inputs):
    if not (args.spec or args.algebra):
        raise compact.SpecError("validate needs --spec or --algebra")
    out = {}
    if args.spec:
        spec = load_spec(inputs, args.spec)
        out["spec"] = {"ok": True, "components": spec.labels, "warnings": list(spec.warnings)}
    if args.algebra:
        a = load_algebra(inputs, args.algebra)
        out["algebra"] = {"ok": True, "dim": a.dim}
    return out


def cmd_classify(args, inputs):
    a = load_algebra(inputs, args.algebra)
    res = lie.classify_derived_generation(a)
    return {"verdict": res.verdict, "perfect_core": _subspace_json(a, res.perfect_core),
            "quotient_nilpotent": res.quotient_nilpotent,
            "solvable": lie.is_solvable(a), "nilpotent": lie.is_nilpotent(a)}


def cmd_series(args, inputs):
    a = load_algebra(inputs, args.algebra)
    inputs.value("kind", args.kind)
    terms = lie.derived_series(a) if args.kind == "derived" else lie.lower_central_series(a)
    return {"kind": args.kind, "dims": [t.rank for t in terms],
            "terms": [_subspace_json(a, t) for t in terms],
            "terminates_at_zero": terms[-1].is_zero()}


def cmd_splice(args, inputs):
    a = load_algebra(inputs, args.algebra)
    j = load_subspace(inputs, a, args.j)
    k = load_subspace(inputs, a, args.k)
    res = lie.splice_check(a, j, k)
    return {"hypotheses_hold": res.hypotheses_hold, "conclusion_holds": res.conclusion_holds,
            "details": res.details}


def _scalar_summary(z) -> dict:
    out = {"z": z.to_literal() if not z.is_gaussian else format_gaussian(z.gaussian),
           "minpoly": str(z.minpoly()), "unit_modulus": unit_modulus(z),
           "algebraic_integer": is_algebraic_integer(z)}
    if out["unit_modulus"]:
        out["root_of_unity"] = is_root_of_unity(z)
        out["root_of_unity_order"] = root_of_unity_order(z)
    return out


def _scalar_arg(inputs, text):
    inputs.value("z", text)
    lit = text
    if text.lstrip().startswith("{"):
        lit = json.loads(text)
    return parse_scalar(lit)


def cmd_fg(args, inputs):
    z = _scalar_arg(inputs, args.z)
    out = _scalar_summary(z)
    if not out["unit_modulus"]:
        raise NotUnitModulus(f"{args.z} is not on the unit circle")
    out["fg"] = lattice.fg_derived_criterion(z)
    return out


def cmd_chain(args, inputs):
    z = _scalar_arg(inputs, args.z)
    inputs.value("bound", args.chain_bound)
    report = lattice.derived_module_chain(z, args.chain_bound)
    fg = lattice.fg_derived_criterion(z)
    if fg != (report.verdict == lattice.STABILIZED) and args.chain_bound >= 4 * z.degree:
        log.warning("chain verdict disagrees with the integrality criterion at bound %d", args.chain_bound)
    out = report.to_json()
    out["fg"] = fg
    out["minpoly"] = str(z.minpoly())
    out["strictly_decreasing_after_saturation"] = report.strictly_decreasing_after_saturation()
    if args.plot_dir:
        from .plotting import plot_chain
        args._figures.append(_plot(args, "chain.png", lambda p: plot_chain(report, p, args.z)))
    return out


def cmd_sim_ellipticity(args, inputs):
    spec = load_spec(inputs, args.spec)
    cfg = sim.SimConfig(delta=args.delta, samples=args.samples, seed=args.seed)
    for key in ("delta", "samples", "seed"):
        inputs.value(key, getattr(args, key))
    report = sim.empirical_ellipticity(spec, cfg)
    out = report.to_json()
    out["symbolic_almost_elliptic"] = compact.almost_elliptic(spec)
    out["agrees_with_symbolic"] = out["symbolic_almost_elliptic"] == report.verdict
    if args.plot_dir:
        from .plotting import plot_elliptic_distances
        args._figures.append(_plot(args, "elliptic_distances.png", lambda p: plot_elliptic_distances(report, p)))
    return out


def cmd_sim_orbit(args, inputs):
    theta = parse_theta(args.theta)
    inputs.value("theta", args.theta)
    inputs.value("n", args.n)
    out = {"theta": args.theta, "exact": isinstance(theta, Fraction), "n": args.n,
           "gap": sim.orbit_gap(theta, args.n)}
    if isinstance(theta, Fraction):
        out["gap_exact"] = str(sim.orbit_gap_exact(theta, args.n))
    if args.plot_dir:
        from .plotting import plot_orbit_gaps
        ns = sorted({min(args.n, 10 ** k) for k in range(1, 8)} | {args.n})
        args._figures.append(_plot(args, "orbit_gaps.png", lambda p: plot_orbit_gaps(theta, ns, p, args.theta)))
    return out


def cmd_sim_fg(args, inputs):
    z = parse_complex(args.z)
    v = parse_complex(args.v)
    F = parse_exponents(args.exponents)
    for key in ("z", "v", "exponents"):
        inputs.value(key, getattr(args, key))
    return sim.fg_dense_witness(z, v, F).to_json()


def _plot(args, filename, fn) -> str:
    path = Path(args.plot_dir) / filename
    fn(path)
    return filename


COMMANDS = {
    "check": cmd_check,
    "audit": cmd_audit,
    "reduce": cmd_reduce,
    "validate": cmd_validate,
    "classify-A": cmd_classify,
    "series": cmd_series,
    "splice": cmd_splice,
    "fg": cmd_fg,
    "chain": cmd_chain,
    "sim ellipticity": cmd_sim_ellipticity,
    "sim orbit": cmd_sim_orbit,
    "sim fg-witness": cmd_sim_fg,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--output", help="write the report to this file instead of stdout")
    common.add_argument("--plot-dir", help="render figures into this directory")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="elliptic-density", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="decide almost-ellipticity of V x| K")
    s.add_argument("--spec", required=True)
    s.add_argument("--condition", choices=["b", "c", "d"], default="c")

    s = sub.add_parser("audit", parents=[common], help="compare the per-coset and fixed-torus conditions")
    s.add_argument("--spec")
    s.add_argument("--random", type=int, default=0, help="audit this many random specs instead")
    s.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("reduce", parents=[common], help="restrict to the subgroup generated by one component")
    s.add_argument("--spec", required=True)
    s.add_argument("--component", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a group spec or algebra file")
    s.add_argument("--spec")
    s.add_argument("--algebra")

    s = sub.add_parser("classify-A", parents=[common], help="classify a Lie algebra")
    s.add_argument("--algebra", required=True)

    s = sub.add_parser("series", parents=[common], help="derived or lower central series")
    s.add_argument("--algebra", required=True)
    s.add_argument("--kind", choices=["derived", "lower-central"], default="derived")

    s = sub.add_parser("splice", parents=[common], help="check the nilpotent splice statement")
    s.add_argument("--algebra", required=True)
    s.add_argument("--j", required=True)
    s.add_argument("--k", required=True)

    s = sub.add_parser("fg", parents=[common], help="finite generation of sum Z(1 - z^n)")
    s.add_argument("--z", required=True)

    s = sub.add_parser("chain", parents=[common], help="truncated spans of 1 - z^n")
    s.add_argument("--z", required=True)
    s.add_argument("--chain-bound", type=int, default=lattice.DEFAULT_CHAIN_BOUND)

    s = sub.add_parser("sim", help="numeric cross-checks")
    simsub = s.add_subparsers(dest="sim_command", required=True)
    e = simsub.add_parser("ellipticity", parents=[common])
    e.add_argument("--spec", required=True)
    e.add_argument("--samples", type=int, default=200)
    e.add_argument("--delta", type=float, default=0.1)
    e.add_argument("--seed", type=int, default=0)
    o = simsub.add_parser("orbit", parents=[common])
    o.add_argument("--theta", required=True)
    o.add_argument("--n", type=int, default=10000)
    w = simsub.add_parser("fg-witness", parents=[common])
    w.add_argument("--z", required=True, help="RE,IM")
    w.add_argument("--v", default="1,0", help="RE,IM")
    w.add_argument("--exponents", default="1..5", help="comma list, ranges as a..b")
    return p


def dispatch(argv: Sequence[str] | None = None) -> tuple[int, RunReport | None]:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    name = args.command if args.command != "sim" else f"sim {args.sim_command}"
    args._figures = []
    inputs = Inputs()
    try:
        verdicts = COMMANDS[name](args, inputs)
    except INVALID_INPUT as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID, None
    except (InvariantFailure, RootIsolationError, AssertionError) as exc:
        print(f"invariant failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVARIANT, None
    seed = getattr(args, "seed", None) if name in ("sim ellipticity", "audit") else None
    report = RunReport(name, inputs.digest(), verdicts, seed, figures=args._figures)
    text = report.to_json() if args.format == "json" else report.to_text()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK, report


def main(argv: Sequence[str] | None = None) -> int:
    code, _ = dispatch(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
