"""Scalars in two interchangeable modes.

Float mode uses Python's built-in :class:`complex`.  Exact mode uses
:class:`QuadScalar`, an element ``(p + q*sqrt(d)) / n`` of the quadratic field
Q(sqrt d) stored over a common positive denominator in lowest terms, so the
canonical form (and hence ``==`` and ``hash``) is unique.

Python ``int`` and :class:`fractions.Fraction` values coerce into whichever
mode they meet.  Combining a ``complex`` with a ``QuadScalar`` raises
:class:`MixedMode`; combining two fields raises :class:`MixedField`.
"""

from __future__ import annotations

import cmath
import math
import numbers
from fractions import Fraction

from .errors import DivisionByZero, ExactModeUnsupported, MixedField, MixedMode, NonFinite

EPS = 1e-9

_RATIONAL = (int, Fraction)


def _squarefree(d: int) -> bool:
    if d in (0, 1):
        return False
    m = abs(d)
    k = 2
    while k * k <= m:
        if m % (k * k) == 0:
            return False
        k += 1
    return True


def _sign_sqrt_combo(p: int, q: int, d: int) -> int:
    """Exact sign of the real number p + q*sqrt(d), d > 0."""
    if p >= 0 and q >= 0:
        return 1 if (p or q) else 0
    if p <= 0 and q <= 0:
        return -1
    # opposite signs: compare p^2 with d*q^2
    diff = p * p - d * q * q
    s = (diff > 0) - (diff < 0)
    return s if p > 0 else -s


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def _sqrt_fraction(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    a = _isqrt_exact(x.numerator)
    b = _isqrt_exact(x.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


class QuadScalar:
    """An element (p + q*sqrt(d))/n of Q(sqrt d), immutable and canonical."""

    __slots__ = ("p", "q", "n", "d")

    def __init__(self, a=0, b=0, d: int = -1):
        a = Fraction(a)
        b = Fraction(b)
        n = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        p = a.numerator * (n // a.denominator)
        q = b.numerator * (n // b.denominator)
        g = math.gcd(p, q, n)
        self.p, self.q, self.n, self.d = p // g, q // g, n // g, d

    @classmethod
    def _make(cls, p: int, q: int, n: int, d: int) -> QuadScalar:
        if n < 0:
            p, q, n = -p, -q, -n
        g = math.gcd(p, q, n)
        if g != 1:
            p //= g
            q //= g
            n //= g
        obj = object.__new__(cls)
        obj.p, obj.q, obj.n, obj.d = p, q, n, d
        return obj

    # -- views -------------------------------------------------------------
    @property
    def a(self) -> Fraction:
        return Fraction(self.p, self.n)

    @property
    def b(self) -> Fraction:
        return Fraction(self.q, self.n)

    @property
    def field(self) -> QuadraticField:
        return QuadraticField(self.d)

    def key(self) -> tuple:
        return (self.p, self.q, self.n)

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def real_sign(self) -> int:
        if self.d < 0:
            return (self.p > 0) - (self.p < 0)
        return _sign_sqrt_combo(self.p, self.q, self.d)

    def imag_sign(self) -> int:
        if self.d > 0:
            return 0
        return (self.q > 0) - (self.q < 0)

    def is_real(self) -> bool:
        return self.d > 0 or self.q == 0

    def __complex__(self) -> complex:
        a = float(self.a)
        b = float(self.b)
        if self.d < 0:
            return complex(a, b * math.sqrt(-self.d))
        return complex(a + b * math.sqrt(self.d), 0.0)

    def __repr__(self) -> str:
        return f"QuadScalar({self.a!s}, {self.b!s}, d={self.d})"

    def __str__(self) -> str:
        a, b = self.a, self.b
        root = "i" if self.d == -1 else f"√{self.d}"
        if b == 0:
            return str(a)
        if b == 1:
            bs = root
        elif b == -1:
            bs = "-" + root
        else:
            bs = f"{b}{root}" if b.denominator == 1 else f"({b}){root}"
        if a == 0:
            return bs
        return f"{a}{'' if bs.startswith('-') else '+'}{bs}"

    # -- coercion ----------------------------------------------------------
    def _coerce(self, other) -> QuadScalar:
        if isinstance(other, QuadScalar):
            if other.d != self.d:
                raise MixedField(f"cannot combine Q(√{self.d}) with Q(√{other.d})")
            return other
        if isinstance(other, _RATIONAL) and not isinstance(other, bool):
            f = Fraction(other)
            return QuadScalar._make(f.numerator, 0, f.denominator, self.d)
        if isinstance(other, numbers.Number):
            raise MixedMode("cannot combine an exact scalar with a float scalar")
        return NotImplemented

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.n == o.n:
            return QuadScalar._make(self.p + o.p, self.q + o.q, self.n, self.d)
        return QuadScalar._make(
            self.p * o.n + o.p * self.n, self.q * o.n + o.q * self.n, self.n * o.n, self.d
        )

    __radd__ = __add__

    def __neg__(self) -> QuadScalar:
        obj = object.__new__(QuadScalar)
        obj.p, obj.q, obj.n, obj.d = -self.p, -self.q, self.n, self.d
        return obj

    def __pos__(self) -> QuadScalar:
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar._make(
            self.p * o.p + self.d * self.q * o.q,
            self.p * o.q + self.q * o.p,
            self.n * o.n,
            self.d,
        )

    __rmul__ = __mul__

    def dot2(self, x: QuadScalar, y: QuadScalar, z: QuadScalar) -> QuadScalar:
        """self*x + y*z with a single normalisation (all four in one field)."""
        d = self.d
        if x.d != d or y.d != d or z.d != d:
            raise MixedField("dot2 needs a common field")
        n1, n2 = self.n * x.n, y.n * z.n
        p1, q1 = self.p * x.p + d * self.q * x.q, self.p * x.q + self.q * x.p
        p2, q2 = y.p * z.p + d * y.q * z.q, y.p * z.q + y.q * z.p
        return QuadScalar._make(p1 * n2 + p2 * n1, q1 * n2 + q2 * n1, n1 * n2, d)

    def inv(self) -> QuadScalar:
        norm = self.p * self.p - self.d * self.q * self.q
        if norm == 0:
            raise DivisionByZero("inverse of zero")
        return QuadScalar._make(self.n * self.p, -self.n * self.q, norm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, k: int) -> QuadScalar:
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inv()
        out = QuadScalar._make(1, 0, 1, self.d)
        for _ in range(abs(k)):
            out = out * base
        return out

    def conjugate(self) -> QuadScalar:
        """Complex conjugate (identity when sqrt(d) is real)."""
        if self.d > 0:
            return self
        return QuadScalar._make(self.p, -self.q, self.n, self.d)

    def abs2(self) -> QuadScalar:
        """|x|^2 as a real element of the same field."""
        return self * self.conjugate()

    # -- comparison --------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, QuadScalar):
            return self.d == other.d and self.p == other.p and self.q == other.q and self.n == other.n
        if isinstance(other, _RATIONAL):
            f = Fraction(other)
            return self.q == 0 and self.p == f.numerator and self.n == f.denominator
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.p, self.q, self.n, self.d))

    def __bool__(self) -> bool:
        return not self.is_zero()


class QuadraticField:
    """Q(sqrt d) for a square-free integer d != 1; instances are cached."""

    _cache: dict[int, QuadraticField] = {}
    exact = True

    def __new__(cls, d: int):
        d = int(d)
        inst = cls._cache.get(d)
        if inst is None:
            if not _squarefree(d):
                raise ValueError(f"d must be square-free and not 0 or 1, got {d}")
            inst = super().__new__(cls)
            inst.d = d
            cls._cache[d] = inst
        return inst

    def __call__(self, a=0, b=0) -> QuadScalar:
        if isinstance(a, QuadScalar):
            if a.d != self.d:
                raise MixedField(f"value lives in Q(√{a.d}), not Q(√{self.d})")
            return a
        if isinstance(a, str):
            a = Fraction(a)
        if isinstance(b, str):
            b = Fraction(b)
        if isinstance(a, (float, complex)) or isinstance(b, (float, complex)):
            raise MixedMode("float values cannot enter an exact field")
        return QuadScalar(a, b, self.d)

    @property
    def zero(self) -> QuadScalar:
        return QuadScalar(0, 0, self.d)

    @property
    def one(self) -> QuadScalar:
        return QuadScalar(1, 0, self.d)

    @property
    def gen(self) -> QuadScalar:
        """sqrt(d)."""
        return QuadScalar(0, 1, self.d)

    def __repr__(self) -> str:
        return f"QuadraticField({self.d})"

    def __reduce__(self):
        return (QuadraticField, (self.d,))


class ComplexField:
    """Float mode: binary64 complex numbers."""

    exact = False
    d = None

    def __call__(self, a=0, b=0) -> complex:
        if isinstance(a, QuadScalar):
            return complex(a)
        z = complex(a) + 1j * complex(b) if b else complex(a)
        if not cmath.isfinite(z):
            raise NonFinite(f"non-finite scalar {z!r}")
        return z

    zero = 0j
    one = 1 + 0j

    def __repr__(self) -> str:
        return "ComplexField()"


CC = ComplexField()

Scalar = complex | QuadScalar


def field_of(*xs):
    """The common field of the given scalars; plain numbers default to CC."""
    found = None
    float_seen = False
    for x in xs:
        if isinstance(x, QuadScalar):
            if found is not None and found.d != x.d:
                raise MixedField(f"cannot combine Q(√{found.d}) with Q(√{x.d})")
            found = x.field
        elif isinstance(x, (float, complex)):
            float_seen = True
    if found is not None and float_seen:
        raise MixedMode("mixed exact and float scalars")
    return found if found is not None else CC


def is_exact(x) -> bool:
    return isinstance(x, QuadScalar)


def _check_pair(x, y):
    ex, ey = isinstance(x, QuadScalar), isinstance(y, QuadScalar)
    if ex and ey:
        if x.d != y.d:
            raise MixedField(f"cannot combine Q(√{x.d}) with Q(√{y.d})")
    elif ex and isinstance(y, (float, complex)) or ey and isinstance(x, (float, complex)):
        raise MixedMode("mixed exact and float scalars")


# -- function-style API ------------------------------------------------------

def add(x, y):
    _check_pair(x, y)
    return x + y


def sub(x, y):
    _check_pair(x, y)
    return x - y


def mul(x, y):
    _check_pair(x, y)
    return x * y


def neg(x):
    return -x


def inv(x):
    if isinstance(x, QuadScalar):
        return x.inv()
    if x == 0:
        raise DivisionByZero("inverse of zero")
    return 1 / complex(x)


def div(x, y):
    _check_pair(x, y)
    return mul(x, inv(y))


def conjugate(x):
    return x.conjugate()


def is_zero(x, eps: float = EPS) -> bool:
    if isinstance(x, QuadScalar):
        return x.is_zero()
    return abs(x) <= eps


def scalar_eq(x, y, eps: float = EPS) -> bool:
    """Structural equality in exact mode, |x - y| <= eps in float mode."""
    _check_pair(x, y)
    if isinstance(x, QuadScalar) or isinstance(y, QuadScalar):
        return (x - y).is_zero()
    return abs(x - y) <= eps


def real_sign(x, eps: float = 0.0) -> int:
    if isinstance(x, QuadScalar):
        return x.real_sign()
    r = complex(x).real
    return 0 if abs(r) <= eps else (1 if r > 0 else -1)


def imag_sign(x, eps: float = 0.0) -> int:
    if isinstance(x, QuadScalar):
        return x.imag_sign()
    i = complex(x).imag
    return 0 if abs(i) <= eps else (1 if i > 0 else -1)


def is_real(x, eps: float = EPS) -> bool:
    if isinstance(x, QuadScalar):
        return x.is_real()
    return abs(complex(x).imag) <= eps


def principal_sign(x, eps: float = 0.0) -> int:
    """+1 if x lies in the principal half-plane (Re > 0, or Re = 0 and Im > 0),
    -1 for the opposite half-plane, 0 for zero."""
    s = real_sign(x, eps)
    return s if s else imag_sign(x, eps)


def sqrt_principal(x):
    """Principal square root of a float scalar."""
    if isinstance(x, QuadScalar):
        raise ExactModeUnsupported("sqrt_principal is float-only; use exact_sqrt")
    r = cmath.sqrt(complex(x))
    if r.real == 0 and r.imag < 0:
        r = complex(0.0, -r.imag)
    return complex(r.real + 0.0, r.imag + 0.0)


def exact_sqrt(x: QuadScalar) -> QuadScalar:
    """Principal square root inside Q(sqrt d), or ExactModeUnsupported."""
    d = x.d
    a, b = x.a, x.b
    cands = []
    if b == 0:
        r = _sqrt_fraction(a)
        if r is not None:
            cands.append(QuadScalar(r, 0, d))
        r = _sqrt_fraction(a / d)
        if r is not None:
            cands.append(QuadScalar(0, r, d))
    else:
        # (u + v sqrt d)^2 = a + b sqrt d  =>  u^2 = (a +- sqrt(a^2 - d b^2)) / 2
        s = _sqrt_fraction(a * a - d * b * b)
        if s is not None:
            for u2 in ((a + s) / 2, (a - s) / 2):
                u = _sqrt_fraction(u2)
                if u:
                    cands.append(QuadScalar(u, b / (2 * u), d))
    for c in cands:
        if c * c == x:
            return c if principal_sign(c) >= 0 else -c
    raise ExactModeUnsupported(f"square root of {x} leaves Q(√{d})")


def sqrt(x):
    """Principal square root in whichever mode x lives."""
    if isinstance(x, QuadScalar):
        return exact_sqrt(x)
    return sqrt_principal(x)


def to_complex(x) -> complex:
    return complex(x)


def format_scalar(x) -> str:
    if isinstance(x, QuadScalar):
        return str(x)
    z = complex(x)
    re = 0.0 if z.real == 0 else z.real
    im = 0.0 if z.imag == 0 else z.imag
    if im == 0:
        return f"{re:.12g}"
    if re == 0:
        return f"{im:.12g}i"
    return f"{re:.12g}{im:+.12g}i"
