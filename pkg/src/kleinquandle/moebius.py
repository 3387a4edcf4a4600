"""SL(2,C) and PSL(2,C) elements, conjugation and the trace classification.

Matrices are immutable and carry scalars of a single mode (see
:mod:`kleinquandle.numerics`).  A :class:`PSL2Element` stores the sign-canonical
representative of {A, -A}: the first non-zero entry in the order a, b, c, d
lies in the principal half-plane.  That makes ``key()`` a normal form.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction

from . import numerics as nm
from .errors import IdentityHasAllPoints, NotUnimodular, ZeroParameter
from .numerics import EPS, QuadScalar


class SL2Matrix:
    """A 2x2 matrix [[a, b], [c, d]] with ad - bc = 1."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d, *, check: bool = True, eps: float = EPS):
        F = nm.field_of(a, b, c, d)
        self.a, self.b, self.c, self.d = F(a), F(b), F(c), F(d)
        if check and not nm.scalar_eq(self.det(), F.one, eps):
            raise NotUnimodular(f"determinant {nm.format_scalar(self.det())} != 1")

    @classmethod
    def _raw(cls, a, b, c, d) -> SL2Matrix:
        m = object.__new__(cls)
        m.a, m.b, m.c, m.d = a, b, c, d
        return m

    @classmethod
    def from_rows(cls, rows, field=None, **kw) -> SL2Matrix:
        (a, b), (c, d) = rows
        if field is not None:
            a, b, c, d = field(a), field(b), field(c), field(d)
        return cls(a, b, c, d, **kw)

    @classmethod
    def identity(cls, field=nm.CC) -> SL2Matrix:
        return cls._raw(field.one, field.zero, field.zero, field.one)

    @property
    def field(self):
        return nm.field_of(self.a)

    @property
    def exact(self) -> bool:
        return isinstance(self.a, QuadScalar)

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def rows(self) -> list:
        return [[self.a, self.b], [self.c, self.d]]

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def __mul__(self, o: SL2Matrix) -> SL2Matrix:
        if not isinstance(o, SL2Matrix):
            return NotImplemented
        a, b, c, d = self.a, self.b, self.c, self.d
        if type(a) is QuadScalar:
            try:
                return SL2Matrix._raw(
                    a.dot2(o.a, b, o.c), a.dot2(o.b, b, o.d), c.dot2(o.a, d, o.c), c.dot2(o.b, d, o.d)
                )
            except AttributeError:  # a plain int entry from an internal constructor
                pass
        return SL2Matrix._raw(
            a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d
        )

    def inv(self) -> SL2Matrix:
        return SL2Matrix._raw(self.d, -self.b, -self.c, self.a)

    def __neg__(self) -> SL2Matrix:
        return SL2Matrix._raw(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, k: int) -> SL2Matrix:
        base = self if k >= 0 else self.inv()
        out = SL2Matrix.identity(self.field)
        for _ in range(abs(k)):
            out = out * base
        return out

    def conj_right(self, g: SL2Matrix) -> SL2Matrix:
        """g^-1 A g."""
        return g.inv() * self * g

    def equals(self, o: SL2Matrix, eps: float = EPS) -> bool:
        return all(nm.scalar_eq(x, y, eps) for x, y in zip(self.entries(), o.entries()))

    def is_identity(self, eps: float = EPS) -> bool:
        return self.equals(SL2Matrix.identity(self.field), eps)

    def is_central(self, eps: float = EPS) -> bool:
        """True for +-I."""
        one = self.field.one
        return (
            nm.is_zero(self.b, eps)
            and nm.is_zero(self.c, eps)
            and nm.scalar_eq(self.a, self.d, eps)
            and (nm.scalar_eq(self.a, one, eps) or nm.scalar_eq(self.a, -one, eps))
        )

    def key(self, digits: int | None = None) -> tuple:
        """Hashable normal form; float entries are rounded to ``digits``."""
        if self.exact:
            return tuple(x.key() for x in self.entries())
        if digits is None:
            digits = digits_for(EPS)
        out = []
        for x in self.entries():
            z = complex(x)
            out.append(round(z.real, digits) + 0.0)
            out.append(round(z.imag, digits) + 0.0)
        return tuple(out)

    def __eq__(self, o) -> bool:
        if not isinstance(o, SL2Matrix):
            return NotImplemented
        return self.entries() == o.entries()

    def __hash__(self) -> int:
        return hash(self.entries())

    def __repr__(self) -> str:
        f = nm.format_scalar
        return f"SL2Matrix([[{f(self.a)}, {f(self.b)}], [{f(self.c)}, {f(self.d)}]])"


def digits_for(eps: float) -> int:
    """Rounding digits for float keys: two orders of magnitude coarser than eps."""
    return max(1, int(math.floor(-math.log10(eps))) - 2)


def _canonical(A: SL2Matrix, eps: float) -> SL2Matrix:
    for x in A.entries():
        if not nm.is_zero(x, eps):
            return A if nm.principal_sign(x, eps if not A.exact else 0.0) > 0 else -A
    return A


class PSL2Element:
    """The class {A, -A} in PSL(2,C), stored by its canonical representative."""

    __slots__ = ("rep",)

    def __init__(self, A: SL2Matrix, eps: float = EPS):
        self.rep = _canonical(A, eps)

    @classmethod
    def from_rows(cls, rows, field=None, **kw) -> PSL2Element:
        return cls(SL2Matrix.from_rows(rows, field, **kw))

    @classmethod
    def identity(cls, field=nm.CC) -> PSL2Element:
        return cls(SL2Matrix.identity(field))

    @property
    def field(self):
        return self.rep.field

    @property
    def exact(self) -> bool:
        return self.rep.exact

    def __mul__(self, o: PSL2Element) -> PSL2Element:
        if not isinstance(o, PSL2Element):
            return NotImplemented
        return PSL2Element(self.rep * o.rep)

    def inv(self) -> PSL2Element:
        return PSL2Element(self.rep.inv())

    def __pow__(self, k: int) -> PSL2Element:
        return PSL2Element(self.rep ** k)

    def trace(self):
        """Trace of the canonical representative (defined up to sign)."""
        return self.rep.trace()

    def conj_right(self, g: PSL2Element) -> PSL2Element:
        return PSL2Element(self.rep.conj_right(g.rep))

    def equals(self, o: PSL2Element, eps: float = EPS) -> bool:
        return psl_eq(self, o, eps)

    def is_identity(self, eps: float = EPS) -> bool:
        return self.rep.is_central(eps)

    def key(self, digits: int | None = None) -> tuple:
        return self.rep.key(digits)

    def __eq__(self, o) -> bool:
        if not isinstance(o, PSL2Element):
            return NotImplemented
        return self.rep == o.rep

    def __hash__(self) -> int:
        return hash(self.rep)

    def __repr__(self) -> str:
        return "PSL2Element" + repr(self.rep)[len("SL2Matrix"):]


class IsometryClass(enum.Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    LOXODROMIC = "loxodromic"


class _Infinity:
    """The point at infinity of the Riemann sphere."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "∞"

    __str__ = __repr__


INFINITY = _Infinity()


# -- function API -----------------------------------------------------------

def mat_mul(A: SL2Matrix, B: SL2Matrix) -> SL2Matrix:
    nm.field_of(A.a, B.a)
    return A * B


def mat_inv(A: SL2Matrix) -> SL2Matrix:
    return A.inv()


def trace(A):
    return A.trace()


def conj_right(A, g):
    """A . g = g^-1 A g (right action by conjugation)."""
    return A.conj_right(g)


def quandle_op(x, y):
    """x <| y = y^-1 x y in Conj(SL2) or Conj(PSL2)."""
    return x.conj_right(y)


def quandle_op_inv(x, y):
    """Inverse point symmetry: s_y^-1(x) = y x y^-1."""
    if isinstance(x, PSL2Element):
        return PSL2Element(y.rep * x.rep * y.rep.inv())
    return y * x * y.inv()


def _rep(f):
    return f.rep if isinstance(f, PSL2Element) else f


def psl_eq(f, g, eps: float = EPS) -> bool:
    A, B = _rep(f), _rep(g)
    return A.equals(B, eps) or A.equals(-B, eps)


def classify(f, eps: float = EPS) -> IsometryClass:
    A = _rep(f)
    if A.is_central(eps):
        return IsometryClass.IDENTITY
    t = A.trace()
    if nm.scalar_eq(t, 2, eps) or nm.scalar_eq(t, -2, eps):
        return IsometryClass.PARABOLIC
    if nm.is_real(t, eps) and nm.real_sign(t - 2) < 0 and nm.real_sign(t + 2) > 0:
        return IsometryClass.ELLIPTIC
    return IsometryClass.LOXODROMIC


def mobius_apply(f, z):
    """Linear fractional action on the Riemann sphere; z may be INFINITY."""
    A = _rep(f)
    if z is INFINITY:
        if A.c == 0 or (not A.exact and abs(complex(A.c)) == 0):
            return INFINITY
        return A.a / A.c
    den = A.c * z + A.d
    if (den.is_zero() if isinstance(den, QuadScalar) else den == 0):
        return INFINITY
    return (A.a * z + A.b) / den


def points_close(z, w, eps: float = EPS) -> bool:
    if z is INFINITY or w is INFINITY:
        return z is w
    return nm.scalar_eq(z, w, eps)


def fixed_points(f, eps: float = EPS) -> list:
    """Fixed points on CP^1 as scalars or INFINITY (one or two of them)."""
    A = _rep(f)
    if A.is_central(eps):
        raise IdentityHasAllPoints("the identity fixes every point")
    a, b, c, d = A.entries()
    if nm.is_zero(c, eps):
        pts = [INFINITY]
        if not nm.is_zero(d - a, eps):
            pts.append(b / (d - a))
        return pts
    disc = A.trace() * A.trace() - 4
    if nm.is_zero(disc, eps):
        return [(a - d) / (2 * c)]
    s = nm.sqrt(disc)
    return [(a - d + s) / (2 * c), (a - d - s) / (2 * c)]


def standard(kind: str, param) -> PSL2Element:
    """S_lambda (z -> lambda z), S'_lambda (z -> -lambda/z) or T_v (z -> z + v)."""
    F = nm.field_of(param)
    param = F(param)
    if kind == "T":
        return PSL2Element(SL2Matrix._raw(F.one, param, F.zero, F.one))
    if nm.is_zero(param, 0.0):
        raise ZeroParameter(f"{kind} requires a non-zero parameter")
    mu = nm.sqrt(param)
    if kind == "S":
        return PSL2Element(SL2Matrix._raw(mu, F.zero, F.zero, nm.inv(mu)))
    if kind in ("S'", "S′", "Sp"):
        return PSL2Element(SL2Matrix._raw(F.zero, -mu, nm.inv(mu), F.zero))
    raise ValueError(f"unknown standard transformation {kind!r}")


def _random_scalar(rng, F, scale):
    if F.exact:
        den = rng.choice((1, 2, 3))
        return F(Fraction(rng.randint(-scale, scale), den), Fraction(rng.randint(-scale, scale), den))
    return complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))


def random_sl2(rng, field=nm.CC, scale: int = 3) -> SL2Matrix:
    """A random element of SL(2): a, b, c drawn freely, d = (1 + bc)/a.

    |a| is kept above scale/4 so float samples stay well conditioned.
    """
    while True:
        a = _random_scalar(rng, field, scale)
        if abs(complex(a)) >= scale / 4:
            break
    b, c = _random_scalar(rng, field, scale), _random_scalar(rng, field, scale)
    return SL2Matrix._raw(a, b, c, (1 + b * c) / a)
