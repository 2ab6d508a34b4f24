"""Exact scalars: rationals, Gaussian rationals, integer polynomials and
algebraic numbers given by a minimal polynomial plus an isolating box.

Rationals are plain :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import mpmath

Rational = Fraction


class NotUnitModulus(ValueError):
    """Raised when an operation needs |z| = 1 and the scalar is off the circle."""


class DegenerateScalar(ValueError):
    pass


class RootIsolationError(ValueError):
    """The rectangle given for an abstract scalar does not isolate one root."""


class ReducibleMinpoly(ValueError):
    pass


class ScalarSyntaxError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussianRational:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        return cls(Fraction(x))

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus re^2 + im^2."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            o = GaussianRational.coerce(other)
            return self.re == o.re and self.im == o.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_rational(self) -> bool:
        return self.im == 0

    def __str__(self):
        return format_gaussian(self)

    def __repr__(self):
        return f"GaussianRational({format_gaussian(self)!r})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def format_gaussian(z: GaussianRational) -> str:
    """Render in the literal syntax accepted by :func:`parse_gaussian`."""
    if z.im == 0:
        return str(z.re)
    sign = "+" if z.im > 0 else "-"
    mag = abs(z.im)
    im = "i" if mag == 1 else f"{mag}*i"
    if z.re == 0:
        return im if sign == "+" else "-" + im
    return f"{z.re}{sign}{im}"


def parse_gaussian(text: str) -> GaussianRational:
    s = str(text).replace(" ", "")
    if not s:
        raise ScalarSyntaxError("empty scalar literal")
    try:
        if not s.endswith("i"):
            return GaussianRational(Fraction(s))
        body = s[:-1]
        split = max(
            (k for k, ch in enumerate(body) if ch in "+-" and k > 0 and body[k - 1] not in "eE/*"),
            default=None,
        )
        if split is None:
            real_str, imag_str = "", body
        else:
            real_str, imag_str = body[:split], body[split:]
        if imag_str.endswith("*"):
            imag_str = imag_str[:-1]
        if imag_str in ("", "+"):
            im = Fraction(1)
        elif imag_str == "-":
            im = Fraction(-1)
        else:
            im = Fraction(imag_str)
        re_ = Fraction(real_str) if real_str else Fraction(0)
    except (ValueError, ZeroDivisionError) as exc:
        raise ScalarSyntaxError(f"cannot parse scalar literal {text!r}") from exc
    return GaussianRational(re_, im)


# ---------------------------------------------------------------------------
# Integer polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntPolynomial:
    """Primitive integer polynomial, coefficients lowest degree first.

    Construction normalizes: trailing zeros stripped, content divided out,
    leading coefficient made positive.
    """

    coefficients: tuple

    def __post_init__(self):
        coeffs = [int(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if coeffs:
            g = reduce(math.gcd, coeffs)
            if coeffs[-1] < 0:
                g = -g
            coeffs = [c // g for c in coeffs]
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_rational(cls, coeffs: Iterable) -> "IntPolynomial":
        fr = [Fraction(c) for c in coeffs]
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in fr), 1)
        return cls(tuple(int(c * den) for c in fr))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_monic(self) -> bool:
        return self.leading == 1

    def __call__(self, x):
        return _horner(self.coefficients, x)

    def derivative_coefficients(self) -> tuple:
        """Coefficients of p' (not content-normalized)."""
        return tuple(k * c for k, c in enumerate(self.coefficients))[1:]

    def reciprocal(self) -> tuple:
        """Coefficients of x^d p(1/x), not normalized."""
        return tuple(reversed(self.coefficients))

    def is_self_reciprocal(self) -> bool:
        """True if x^d p(1/x) = +-p(x)."""
        c = self.coefficients
        r = self.reciprocal()
        return c == r or c == tuple(-x for x in r)

    def discriminant(self) -> int:
        import sympy

        x = sympy.Symbol("x")
        return int(sympy.discriminant(sympy.Poly(list(reversed(self.coefficients)), x)))

    def __str__(self):
        return format_polynomial(self.coefficients)


def _horner(coeffs: Sequence, x):
    acc = 0 * x
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def format_polynomial(coeffs: Sequence, var: str = "x") -> str:
    """Compact text like ``5x^2-6x+5``."""
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + var + (f"^{k}" if k > 1 else "")
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out


def poly_divmod(num: Sequence, den: Sequence) -> tuple[list, list]:
    """Division over Q; coefficient lists lowest degree first."""
    num = [Fraction(c) for c in num]
    den = [Fraction(c) for c in den]
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    r = num[:]
    while len(r) >= len(den) and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(den):
            break
        shift = len(r) - len(den)
        f = r[-1] / den[-1]
        q[shift] = f
        for k, d in enumerate(den):
            r[k + shift] -= f * d
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return q, r


# ---------------------------------------------------------------------------
# Algebraic scalars
# ---------------------------------------------------------------------------

Box = tuple  # (re_lo, re_hi, im_lo, im_hi), Fractions


def _mpf_to_fraction(x) -> Fraction:
    num, den = mpmath.libmp.to_rational(mpmath.mpf(x)._mpf_)
    return Fraction(int(num), int(den))


def _sqrt_upper(q: Fraction) -> Fraction:
    """A rational upper bound for sqrt(q), within about 2^-60 relative."""
    if q <= 0:
        return Fraction(0)
    scale = 1 << 128
    n = q.numerator * scale * scale // q.denominator
    s = math.isqrt(n) + 1
    return Fraction(s, scale)


@dataclass(frozen=True)
class _Disc:
    center: GaussianRational
    radius: Fraction  # upper bound

    def disjoint(self, other: "_Disc") -> bool:
        d2 = (self.center - other.center).norm()
        r = self.radius + other.radius
        return d2 > r * r

    def inside_box(self, box: Box) -> bool:
        c, r = self.center, self.radius
        return box[0] < c.re - r and c.re + r < box[1] and box[2] < c.im - r and c.im + r < box[3]

    def outside_box(self, box: Box) -> bool:
        c, r = self.center, self.radius
        return c.re + r < box[0] or c.re - r > box[1] or c.im + r < box[2] or c.im - r > box[3]


def _inclusion_discs(p: IntPolynomial, dps: int) -> list[_Disc] | None:
    """Certified discs, one per root, or None when precision is insufficient.

    Each disc is centred at a numeric root x with radius d*|p(x)/p'(x)|,
    which always contains a root of p; pairwise disjoint discs therefore
    hold exactly one root each.
    """
    d = p.degree
    with mpmath.workdps(dps):
        approx = mpmath.polyroots(list(reversed(p.coefficients)), maxsteps=200 + 20 * dps,
                                  extraprec=2 * dps)
    dp = p.derivative_coefficients()
    discs = []
    for a in approx:
        c = mpmath.mpc(a)
        x = GaussianRational(_mpf_to_fraction(c.real), _mpf_to_fraction(c.imag))
        px, dpx = p(x), _horner(dp, x)
        if not dpx:
            return None
        discs.append(_Disc(x, d * _sqrt_upper(px.norm() / dpx.norm())))
    for a in range(len(discs)):
        for b in range(a + 1, len(discs)):
            if not discs[a].disjoint(discs[b]):
                return None
    return discs


_MAX_DPS = 2000


class AlgebraicScalar:
    """Either an exact Gaussian rational or an abstract algebraic number.

    The abstract form stores an irreducible primitive integer polynomial and
    a rectangle with rational corners containing exactly one of its roots.
    """

    __slots__ = ("gaussian", "_minpoly", "root_box")

    def __init__(self, gaussian: GaussianRational | None = None,
                 minpoly: IntPolynomial | None = None, root_box: Box | None = None):
        if (gaussian is None) == (minpoly is None):
            raise ValueError("give exactly one of gaussian or minpoly")
        self.gaussian = gaussian
        self._minpoly = minpoly
        self.root_box = None if root_box is None else tuple(Fraction(b) for b in root_box)
        if minpoly is not None:
            if self.root_box is None or len(self.root_box) != 4:
                raise RootIsolationError("abstract scalar needs a 4-corner root box")
            _check_irreducible(minpoly)
            self._locate()

    @classmethod
    def from_gaussian(cls, z) -> "AlgebraicScalar":
        return cls(gaussian=GaussianRational.coerce(z))

    @classmethod
    def from_minpoly(cls, coeffs: Sequence[int], root_box: Sequence) -> "AlgebraicScalar":
        return cls(minpoly=IntPolynomial(tuple(coeffs)), root_box=tuple(root_box))

    @property
    def is_gaussian(self) -> bool:
        return self.gaussian is not None

    def minpoly(self) -> IntPolynomial:
        if self.gaussian is not None:
            return minimal_polynomial(self.gaussian)
        return self._minpoly

    @property
    def degree(self) -> int:
        return self.minpoly().degree

    def _locate(self, dps: int = 30) -> tuple[_Disc, list[_Disc]]:
        """Disc around the selected root plus the discs of all roots."""
        p = self._minpoly
        if p.degree == 1:
            r = GaussianRational(Fraction(-p.coefficients[0], p.coefficients[1]))
            disc = _Disc(r, Fraction(0))
            b = self.root_box
            if not (b[0] <= r.re <= b[1] and b[2] <= 0 <= b[3]):
                raise RootIsolationError("root box misses the rational root")
            return disc, [disc]
        while dps <= _MAX_DPS:
            discs = _inclusion_discs(p, dps)
            if discs is not None:
                inside = [c for c in discs if c.inside_box(self.root_box)]
                outside = [c for c in discs if c.outside_box(self.root_box)]
                if len(inside) + len(outside) == len(discs):
                    if len(inside) != 1:
                        raise RootIsolationError(
                            f"root box contains {len(inside)} roots of {p}")
                    return inside[0], discs
            dps *= 2
        raise RootIsolationError("root box boundary too close to a root to certify")

    def approx(self, dps: int = 30) -> complex:
        if self.gaussian is not None:
            return complex(self.gaussian)
        disc, _ = self._locate(dps)
        return complex(disc.center)

    def power_coordinates(self, n: int) -> list[Fraction]:
        """Coordinates of z^n in the power basis 1, z, ..., z^(d-1) of Q(z).

        Gaussian scalars always use the basis (1, i) of Q(i).
        """
        if self.gaussian is not None:
            w = self.gaussian ** n
            return [w.re, w.im]
        p = self._minpoly
        d = p.degree
        if n >= 0:
            _, r = poly_divmod([0] * n + [1], p.coefficients)
        else:
            c = p.coefficients
            # z^-1 = -(c1 + c2 z + ... + cd z^(d-1)) / c0
            inv = [Fraction(-c[k + 1], c[0]) for k in range(d)]
            acc = [Fraction(1)]
            for _ in range(-n):
                prod = [Fraction(0)] * (len(acc) + len(inv) - 1)
                for a, x in enumerate(acc):
                    for b, y in enumerate(inv):
                        prod[a + b] += x * y
                _, acc = poly_divmod(prod, p.coefficients)
                acc = acc or [Fraction(0)]
            r = acc
        r = list(r) + [Fraction(0)] * (d - len(r))
        return r[:d]

    def is_one(self) -> bool:
        if self.gaussian is not None:
            return self.gaussian == ONE
        return self._minpoly.coefficients == (-1, 1)

    def to_literal(self):
        if self.gaussian is not None:
            return format_gaussian(self.gaussian)
        return {"minpoly": list(self._minpoly.coefficients),
                "root_box": [str(b) for b in self.root_box]}

    def __repr__(self):
        if self.gaussian is not None:
            return f"AlgebraicScalar({format_gaussian(self.gaussian)!r})"
        return f"AlgebraicScalar(minpoly={self._minpoly}, root_box={self.root_box})"


def _check_irreducible(p: IntPolynomial) -> None:
    import sympy

    if p.degree < 1:
        raise ReducibleMinpoly("minimal polynomial must have degree >= 1")
    x = sympy.Symbol("x")
    if not sympy.Poly(list(reversed(p.coefficients)), x).is_irreducible:
        raise ReducibleMinpoly(f"{p} is reducible over Q")


def as_scalar(z) -> AlgebraicScalar:
    if isinstance(z, AlgebraicScalar):
        return z
    if isinstance(z, (dict, str)):
        return parse_scalar(z)
    return AlgebraicScalar.from_gaussian(z)


def parse_scalar(lit) -> AlgebraicScalar:
    """Parse ``"p/q"``, ``"p/q+r/s*i"`` or ``{"minpoly": [...], "root_box": [...]}``."""
    if isinstance(lit, dict):
        try:
            return AlgebraicScalar.from_minpoly(lit["minpoly"], [Fraction(str(b)) for b in lit["root_box"]])
        except KeyError as exc:
            raise ScalarSyntaxError(f"abstract scalar missing {exc}") from exc
    if isinstance(lit, (int, Fraction)):
        return AlgebraicScalar.from_gaussian(lit)
    return AlgebraicScalar.from_gaussian(parse_gaussian(lit))


# ---------------------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------------------


def minimal_polynomial(z: GaussianRational) -> IntPolynomial:
    z = GaussianRational.coerce(z)
    if z.im == 0:
        return IntPolynomial.from_rational([-z.re, 1])
    # (x - z)(x - conj z) = x^2 - 2 re(z) x + |z|^2; irreducible since z is not real
    return IntPolynomial.from_rational([z.norm(), -2 * z.re, 1])


def is_algebraic_integer(z) -> bool:
    return as_scalar(z).minpoly().is_monic()


def unit_modulus(z) -> bool:
    z = as_scalar(z)
    if z.gaussian is not None:
        return z.gaussian.norm() == 1
    p = z.minpoly()
    if not p.is_self_reciprocal():
        return False
    if p.degree == 1:
        return abs(p.coefficients[0]) == abs(p.coefficients[1])
    dps = 30
    while dps <= _MAX_DPS:
        disc, discs = z._locate(dps)
        c, rho = disc.center, disc.radius
        cn = c.norm()
        denom = cn - rho * rho
        if denom > 0:
            # image of the disc under w -> 1/conj(w)
            image = _Disc(GaussianRational(c.re / denom, c.im / denom), rho / denom)
            if image.disjoint(disc):
                return False
            if all(image.disjoint(o) for o in discs if o is not disc):
                return True
        dps *= 2
    raise RootIsolationError("could not certify unit modulus")


def _require_unit(z: AlgebraicScalar) -> None:
    if not unit_modulus(z):
        raise NotUnitModulus(f"{z!r} does not lie on the unit circle")


def _order_bound(degree: int) -> int:
    # phi(k) >= sqrt(k/2), so phi(k) <= d forces k <= 2 d^2
    return max(2, 2 * degree * degree)


def is_root_of_unity(z) -> bool:
    z = as_scalar(z)
    _require_unit(z)
    if z.gaussian is not None:
        return z.gaussian in (ONE, -ONE, I, -I)
    p = z.minpoly()
    if not p.is_monic():
        return False
    for k in range(1, _order_bound(p.degree) + 1):
        _, r = poly_divmod([-1] + [0] * (k - 1) + [1], p.coefficients)
        if not r:
            return True
    return False


def root_of_unity_order(z) -> int | None:
    """Smallest k with z^k = 1, or None."""
    z = as_scalar(z)
    if not is_root_of_unity(z):
        return None
    for k in range(1, _order_bound(z.degree) + 1):
        coords = z.power_coordinates(k)
        if coords[0] == 1 and not any(coords[1:]):
            return k
    return None




def det_gaussian(matrix: Sequence[Sequence]) -> GaussianRational:
    """Exact determinant over Q(i) by Gaussian elimination."""
    M = [[GaussianRational.coerce(x) for x in row] for row in matrix]
    n = len(M)
    det = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return ZERO
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        p = M[col][col]
        det = det * p
        inv = p.inverse()
        for r in range(col + 1, n):
            if M[r][col]:
                f = M[r][col] * inv
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return det


def primitive_pythagorean_triples(count: int) -> list[tuple[int, int, int]]:
    """The first *count* primitive triples (a, b, c), a < b, ordered by (c, a)."""
    found = []
    c = 4
    while len(found) < count:
        c += 1
        for a in range(1, c):
            b2 = c * c - a * a
            b = math.isqrt(b2)
            if b * b == b2 and a < b and math.gcd(a, b) == 1:
                found.append((a, b, c))
    return found[:count]


def pythagorean_scalar(a: int, b: int, c: int) -> GaussianRational:
    if a * a + b * b != c * c:
        raise ValueError(f"({a},{b},{c}) is not a Pythagorean triple")
    return GaussianRational(Fraction(a, c), Fraction(b, c))
