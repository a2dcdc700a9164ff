"""Exact arithmetic in Q(sqrt 5) and small exact 3-D linear algebra.

Every geometric predicate in the package (equality, coplanarity, alignment)
goes through :class:`FieldScalar`, so no floating point is ever involved in
a decision.  Vectors and matrices are plain tuples of scalars.
"""

from __future__ import annotations

import ast
import decimal
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Tuple, Union

__all__ = [
    "FieldScalar",
    "Vec3",
    "Mat3",
    "ZERO",
    "ONE",
    "RT5",
    "TAU",
    "parse_scalar",
    "to_float",
    "vec",
    "add",
    "sub",
    "scale",
    "dot",
    "cross",
    "norm2",
    "mat_vec",
    "mat_mul",
    "transpose",
    "det3",
    "identity3",
    "is_orthogonal",
    "rank",
    "coplanar",
    "parallel_same_direction",
    "centroid",
]

Number = Union["FieldScalar", int, Fraction]


class FieldScalar:
    """An element ``a + b*sqrt(5)`` with rational ``a`` and ``b``.

    Instances are immutable and hashable; equality is structural because the
    representation is canonical (``Fraction`` keeps components reduced).
    """

    __slots__ = ("a", "b")

    def __init__(self, a: Union[int, Fraction] = 0, b: Union[int, Fraction] = 0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("FieldScalar is immutable")

    @staticmethod
    def _coerce(other) -> "FieldScalar":
        if isinstance(other, FieldScalar):
            return other
        if isinstance(other, (int, Rational)):
            return FieldScalar(Fraction(other))
        return NotImplemented

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldScalar(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return FieldScalar(-self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldScalar(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.a, self.b, other.a, other.b
        if not (a or b) or not (c or d):
            return ZERO
        if not b and not d:
            return FieldScalar(a * c)
        return FieldScalar(a * c + 5 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> "FieldScalar":
        """Galois conjugate ``a - b*sqrt(5)``."""
        return FieldScalar(self.a, -self.b)

    def norm(self) -> Fraction:
        """Field norm ``a**2 - 5*b**2``."""
        return self.a * self.a - 5 * self.b * self.b

    def inverse(self) -> "FieldScalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt 5)")
        return FieldScalar(self.a / n, -self.b / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # ordering -------------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of the real number ``a + b*sqrt(5)``."""
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # mixed signs: the larger of a**2 and 5*b**2 wins
        d = a * a - 5 * b * b
        if d == 0:  # impossible for b != 0, sqrt 5 is irrational
            return 0
        return sa if d > 0 else sb

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b))

    def __lt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).sign() < 0

    def __le__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).sign() <= 0

    def __gt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).sign() > 0

    def __ge__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).sign() >= 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def key(self) -> Tuple[Fraction, Fraction]:
        """Structural sort key (not the real ordering); cheap and total."""
        return (self.a, self.b)

    # conversion -----------------------------------------------------------

    def __float__(self):
        return float(self.a) + float(self.b) * 5 ** 0.5

    def __str__(self):
        a, b = self.a, self.b
        return f"{a.numerator}/{a.denominator} + {b.numerator}/{b.denominator}*rt5"

    def __repr__(self):
        return f"FieldScalar({self})"

    @classmethod
    def parse(cls, text: str) -> "FieldScalar":
        return parse_scalar(text)


ZERO = FieldScalar(0)
ONE = FieldScalar(1)
RT5 = FieldScalar(0, 1)
TAU = FieldScalar(Fraction(1, 2), Fraction(1, 2))

_BINOPS = {
    ast.Add: lambda x, y: x + y,
    ast.Sub: lambda x, y: x - y,
    ast.Mult: lambda x, y: x * y,
    ast.Div: lambda x, y: x / y,
}


def parse_scalar(text: str) -> FieldScalar:
    """Parse an exact expression such as ``"(1+rt5)/2"`` or ``"1/2 + 1/2*rt5"``.

    Accepted atoms are integer literals, ``rt5`` and ``tau``; operators are
    ``+ - * /``, unary minus, integer powers and parentheses.  Decimal
    literals are rejected so that no inexact value slips in.
    """

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return FieldScalar(node.value)
        if isinstance(node, ast.Name) and node.id in ("rt5", "sqrt5"):
            return RT5
        if isinstance(node, ast.Name) and node.id == "tau":
            return TAU
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if (
            isinstance(node, ast.BinOp)
            and isinstance(node.op, ast.Pow)
            and isinstance(node.right, ast.Constant)
            and type(node.right.value) is int
        ):
            return ev(node.left) ** node.right.value
        raise ValueError(f"cannot parse exact scalar from {text!r}")

    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse exact scalar from {text!r}") from exc
    return ev(tree)


def _rt5_decimal(prec: int) -> decimal.Decimal:
    with decimal.localcontext() as ctx:
        ctx.prec = prec
        return decimal.Decimal(5).sqrt()


def to_float(x: Number, digits: int = 17) -> str:
    """Correctly rounded decimal string of ``x`` with ``digits`` significant digits.

    Trailing zeros are dropped; the output is always positional.  Rounding is
    decided exactly (ties go to even, which can only happen for rationals).
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    x = FieldScalar._coerce(x)
    if not x:
        return "0"
    neg = x.sign() < 0
    x = abs(x)
    # estimate the decimal exponent, then fix it exactly
    prec = digits + 40
    with decimal.localcontext() as ctx:
        ctx.prec = prec
        est = (
            decimal.Decimal(x.a.numerator) / decimal.Decimal(x.a.denominator)
            + decimal.Decimal(x.b.numerator) / decimal.Decimal(x.b.denominator) * _rt5_decimal(prec)
        )
        e = est.adjusted()
    # ensure 10**e <= x < 10**(e+1)
    while x < Fraction(10) ** e:
        e -= 1
    while x >= Fraction(10) ** (e + 1):
        e += 1
    k = digits - 1 - e
    y = x * (Fraction(10) ** k)  # 10**(digits-1) <= y < 10**digits
    with decimal.localcontext() as ctx:
        ctx.prec = prec
        n = int(
            (decimal.Decimal(y.a.numerator) / decimal.Decimal(y.a.denominator)
             + decimal.Decimal(y.b.numerator) / decimal.Decimal(y.b.denominator) * _rt5_decimal(prec)
             ).to_integral_value(rounding=decimal.ROUND_FLOOR)
        )
    # exact floor correction
    while y < n:
        n -= 1
    while y >= n + 1:
        n += 1
    frac = y - n
    half = Fraction(1, 2)
    if frac > half or (frac == half and n % 2 == 1):
        n += 1
    if n == 10 ** digits:  # rounding carried into a new digit
        n //= 10
        k -= 1
    s = str(n)
    if k > 0:
        s = s.rjust(k + 1, "0")
        s = s[:-k] + "." + s[-k:]
        s = s.rstrip("0").rstrip(".")
    elif k < 0:
        s = s + "0" * (-k)
    return ("-" if neg else "") + s


# ---------------------------------------------------------------------------
# Vectors and matrices
# ---------------------------------------------------------------------------

Vec3 = Tuple[FieldScalar, FieldScalar, FieldScalar]
Mat3 = Tuple[Vec3, Vec3, Vec3]


def vec(x: Number, y: Number, z: Number) -> Vec3:
    c = FieldScalar._coerce
    return (c(x), c(y), c(z))


def add(u: Vec3, v: Vec3) -> Vec3:
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2])


def sub(u: Vec3, v: Vec3) -> Vec3:
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def scale(s: Number, v: Vec3) -> Vec3:
    return (v[0] * s, v[1] * s, v[2] * s)


def dot(u: Vec3, v: Vec3) -> FieldScalar:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross(u: Vec3, v: Vec3) -> Vec3:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def norm2(v: Vec3) -> FieldScalar:
    return dot(v, v)


def mat_vec(m: Mat3, v: Vec3) -> Vec3:
    return (dot(m[0], v), dot(m[1], v), dot(m[2], v))


def transpose(m: Mat3) -> Mat3:
    return tuple(tuple(m[i][j] for i in range(3)) for j in range(3))  # type: ignore[return-value]


def mat_mul(m: Mat3, n: Mat3) -> Mat3:
    nt = transpose(n)
    return tuple(tuple(dot(row, col) for col in nt) for row in m)  # type: ignore[return-value]


def det3(m: Sequence[Sequence[FieldScalar]]) -> FieldScalar:
    return dot(m[0], cross(m[1], m[2]))


def identity3() -> Mat3:
    return (vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1))


def is_orthogonal(m: Mat3) -> bool:
    return mat_mul(m, transpose(m)) == identity3()


def rank(rows: Iterable[Sequence[FieldScalar]]) -> int:
    """Exact rank by Gaussian elimination."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def coplanar(points: Sequence[Vec3]) -> bool:
    """True iff all points lie in a common affine plane."""
    if not points:
        raise ValueError("coplanar needs at least one point")
    base = points[0]
    return rank(sub(p, base) for p in points[1:]) <= 2


def parallel_same_direction(u: Vec3, v: Vec3) -> bool:
    """True iff ``u`` is a positive scalar multiple of ``v`` (both nonzero)."""
    if not any(u) or not any(v):
        return False
    return not any(cross(u, v)) and dot(u, v).sign() > 0


def centroid(points: Sequence[Vec3]) -> Vec3:
    n = len(points)
    sx, sy, sz = ZERO, ZERO, ZERO
    for p in points:
        sx, sy, sz = sx + p[0], sy + p[1], sz + p[2]
    return (sx / n, sy / n, sz / n)
