"""Binary forms with exact rational coefficients and the unimodular action on them.

A form of degree n is F(X, Z) = sum_i c_i X^(n-i) Z^i with c_0 != 0; coefficients
are stored as exact rationals in descending powers of X.  A matrix M = (a b; c d)
with det 1 acts by substitution, F^M(X, Z) = F(aX + bZ, cX + dZ), which is a right
action: (F^M)^N = F^(MN).
"""

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import FormParseError, RealRootDetected


def _exact(value, what="coefficient"):
    """Coerce to Fraction, rejecting floats (coefficients are exact by contract)."""
    if isinstance(value, float):
        raise TypeError(f"{what} must be exact (int, Fraction or 'p/q' string), got float")
    try:
        return Fraction(value)
    except (ValueError, TypeError) as exc:
        raise FormParseError(f"cannot read {what} from {value!r}") from exc


@dataclass(frozen=True)
class UnimodularMatrix:
    """Integer 2x2 matrix (a b; c d) with determinant 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for entry in (self.a, self.b, self.c, self.d):
            if not isinstance(entry, int):
                raise TypeError("matrix entries must be integers")
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("matrix must have determinant 1")

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, n):
        """Matrix whose point action sends z to z - n."""
        return cls(1, int(n), 0, 1)

    @classmethod
    def inversion(cls):
        """Matrix whose point action sends z to -1/z."""
        return cls(0, -1, 1, 0)

    def __matmul__(self, other):
        return UnimodularMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self):
        return UnimodularMatrix(self.d, -self.b, -self.c, self.a)

    @property
    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


@dataclass(frozen=True)
class RealQuadraticFactor:
    """Monic real quadratic X^2 + a*XZ + b*Z^2 with no real roots (a^2 < 4b).

    Coefficients are either both exact (int/Fraction) or floats; exact factors
    feed the exact evaluation path of the centroid formulas.
    """

    a: Fraction | float
    b: Fraction | float

    def __post_init__(self):
        a, b = self.a, self.b
        if isinstance(a, float) or isinstance(b, float):
            object.__setattr__(self, "a", float(a))
            object.__setattr__(self, "b", float(b))
        else:
            object.__setattr__(self, "a", Fraction(a))
            object.__setattr__(self, "b", Fraction(b))
        if 4 * self.b - self.a * self.a <= 0:
            raise RealRootDetected(f"factor X^2 + {a}XZ + {b}Z^2 has real roots")

    @property
    def is_exact(self):
        return isinstance(self.a, Fraction)

    @property
    def d_squared(self):
        """Discriminant-complement 4b - a^2 (> 0)."""
        return 4 * self.b - self.a * self.a

    @property
    def x(self):
        """Real part of the upper root; exact when the factor is exact."""
        return -self.a / 2

    @property
    def y(self):
        """Imaginary part of the upper root, as a float."""
        return math.sqrt(float(self.d_squared)) / 2


@dataclass(frozen=True)
class BinaryForm:
    """Degree-n binary form, coefficients c_0..c_n in descending powers of X."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(_exact(c) for c in self.coeffs)
        if len(coeffs) < 3:
            raise FormParseError("a binary form must have degree at least 2")
        if coeffs[0] == 0:
            raise FormParseError("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[0]

    def __str__(self):
        return serialize(self)


def evaluate(F, x, z):
    """Evaluate F at exact arguments (x, z); returns a Fraction."""
    x = _exact(x, "argument")
    z = _exact(z, "argument")
    n = F.degree
    total = Fraction(0)
    for i, c in enumerate(F.coeffs):
        if c:
            total += c * x ** (n - i) * z**i
    return total


def _binomial_power(p, q, m):
    """Coefficients of (p*X + q*Z)^m in descending powers of X."""
    return [math.comb(m, k) * p ** (m - k) * q**k for k in range(m + 1)]


def _poly_mul(u, v):
    out = [0] * (len(u) + len(v) - 1)
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                out[i + j] += ui * vj
    return out


def transform(F, M):
    """Apply the variable change F^M(X, Z) = F(aX + bZ, cX + dZ); exact."""
    n = F.degree
    out = [Fraction(0)] * (n + 1)
    for i, c in enumerate(F.coeffs):
        if not c:
            continue
        term = _poly_mul(_binomial_power(M.a, M.b, n - i), _binomial_power(M.c, M.d, i))
        for k, t in enumerate(term):
            out[k] += c * t
    return BinaryForm(tuple(out))


def height(F):
    """Naive height: max |c_i| over the stored coefficients."""
    return max(abs(c) for c in F.coeffs)


def primitive_integral_coeffs(F):
    """Clear denominators and divide by the common content; keeps sign of c_0... as is."""
    lcm = 1
    for c in F.coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in F.coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return [v // g for v in ints]


def normalized_height(F):
    """Height of the primitive integral multiple of F; used in reports."""
    return Fraction(max(abs(v) for v in primitive_integral_coeffs(F)))


def expand_quadratic_factors(factors, leading=1):
    """Raw coefficient list of leading * prod(X^2 + a_j XZ + b_j Z^2).

    Exact when every factor is exact; float otherwise.
    """
    if not factors:
        raise ValueError("need at least one quadratic factor")
    prod = [leading]
    for f in factors:
        prod = _poly_mul(prod, [1, f.a, f.b])
    return prod


def from_quadratic_factors(factors, leading=1):
    """BinaryForm from exact quadratic factors (degree 2r)."""
    for f in factors:
        if not f.is_exact:
            raise TypeError("from_quadratic_factors needs exact factors; "
                            "use expand_quadratic_factors for float ones")
    return BinaryForm(tuple(expand_quadratic_factors(factors, leading=_exact(leading, "leading"))))


_TERM_BODY = re.compile(
    r"^(?:(?P<coef>\d+(?:/\d+)?)\*?)?"
    r"(?:[xX](?:\^(?P<xp>\d+))?)?\*?"
    r"(?:[zZ](?:\^(?P<zp>\d+))?)?$"
)


def _parse_polynomial(text):
    s = text.replace(" ", "").replace("−", "-")
    if not s:
        raise FormParseError("empty form")
    if s[0] not in "+-":
        s = "+" + s
    tokens = re.findall(r"[+-][^+-]+", s)
    if "".join(tokens) != s:
        raise FormParseError(f"cannot parse {text!r}")
    terms = []
    for tok in tokens:
        sign, body = tok[0], tok[1:]
        m = _TERM_BODY.match(body)
        if not m or not body:
            raise FormParseError(f"cannot parse term {tok!r}")
        has_x = "x" in body or "X" in body
        has_z = "z" in body or "Z" in body
        coef = m.group("coef")
        if coef is None and not has_x and not has_z:
            raise FormParseError(f"cannot parse term {tok!r}")
        c = Fraction(coef) if coef is not None else Fraction(1)
        if sign == "-":
            c = -c
        xp = int(m.group("xp")) if m.group("xp") else (1 if has_x else 0)
        zp = int(m.group("zp")) if m.group("zp") else (1 if has_z else 0)
        terms.append((c, xp, zp, has_z))
    any_z = any(t[3] for t in terms)
    if any_z:
        n = max(xp + zp for _, xp, zp, _ in terms)
        for _, xp, zp, _ in terms:
            if xp + zp != n:
                raise FormParseError("homogeneous input has terms of unequal degree")
    else:
        n = max(xp for _, xp, _, _ in terms)
    coeffs = [Fraction(0)] * (n + 1)
    for c, xp, zp, _ in terms:
        coeffs[n - xp] += c
    return BinaryForm(tuple(coeffs))


def parse(text):
    """Read a form from a comma-separated coefficient list or polynomial syntax.

    Coefficient lists are descending powers of X ("1,-24,306,...", rationals as
    "p/q").  Polynomial syntax accepts x-only input ("x^6-24*x^5+...") which is
    homogenized, or explicit homogeneous x/z terms ("x^2+z^2").
    """
    if not isinstance(text, str):
        raise FormParseError("parse expects a string")
    if "," in text:
        toks = [t.strip() for t in text.split(",")]
        if any(not t for t in toks):
            raise FormParseError("empty coefficient in list")
        return BinaryForm(tuple(_exact(t) for t in toks))
    return _parse_polynomial(text.strip())


def serialize(F):
    """Canonical single-variable string, descending powers of x; parse() inverts it."""
    n = F.degree
    parts = []
    for i, c in enumerate(F.coeffs):
        if not c:
            continue
        p = n - i
        mag = abs(c)
        if p == 0:
            body = str(mag)
        else:
            xpow = "x" if p == 1 else f"x^{p}"
            body = xpow if mag == 1 else f"{mag}*{xpow}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)
