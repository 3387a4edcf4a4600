"""Constructive generation of SL(2,C) by a single trace component.

Every matrix is a product of at most four transvections U_z = [[1, z], [0, 1]]
and L_z = [[1, 0], [z, 1]], and every non-trivial transvection is a product of
two elements of trace t (one element when t = 2).  Composing the two gives a
certificate that X_t generates SL(2,C).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import numerics as nm
from .components import lambda_of_trace
from .errors import NotUnimodular, ZeroTransvection
from .moebius import SL2Matrix
from .numerics import EPS


@dataclass(frozen=True)
class Transvection:
    kind: str  # "U" or "L"
    z: object

    def matrix(self) -> SL2Matrix:
        F = nm.field_of(self.z)
        z = F(self.z)
        if self.kind == "U":
            return SL2Matrix._raw(F.one, z, F.zero, F.one)
        return SL2Matrix._raw(F.one, F.zero, z, F.one)

    def __str__(self) -> str:
        return f"{self.kind}_{nm.format_scalar(self.z)}"


@dataclass
class FactorWord:
    """An ordered factorisation: the left-to-right product of ``factors`` is ``target``."""

    factors: list
    target: SL2Matrix

    def product(self) -> SL2Matrix:
        out = SL2Matrix.identity(self.target.field)
        for f in self.factors:
            out = out * (f.matrix() if isinstance(f, Transvection) else f)
        return out

    def verify(self, eps: float = EPS) -> bool:
        tol = 10 * eps * max(1, len(self.factors))
        return self.product().equals(self.target, tol)

    def __len__(self) -> int:
        return len(self.factors)


def decompose_UL(A: SL2Matrix, eps: float = EPS) -> FactorWord:
    """Write A as L U L (b != 0), U L U (b = 0, c != 0) or U L U L (b = c = 0)."""
    a, b, c, d = A.entries()
    if not nm.scalar_eq(A.det(), 1, eps):
        raise NotUnimodular("decompose_UL needs det A = 1")
    U = lambda z: Transvection("U", z)  # noqa: E731
    L = lambda z: Transvection("L", z)  # noqa: E731
    if not nm.is_zero(b, eps):
        word = [L((d - 1) / b), U(b), L((a - 1) / b)]
    elif not nm.is_zero(c, eps):
        word = [U((a - 1) / c), L(c), U((1 - a) / (a * c))]
    else:
        word = [U(-a * (a - 1)), L(-nm.inv(a)), U(a - 1), L(A.field.one)]
    return FactorWord(word, A)


def _split(z, F, eps):
    """z = p + q with p, q both non-zero."""
    if nm.scalar_eq(z, 1, eps):
        return z + 1, -F.one
    return z - 1, F.one


def transvection_in_Xt(T: Transvection, t, eps: float = EPS, allow_empty: bool = True) -> FactorWord:
    """Factor a transvection into elements of trace t.

    Two factors for t != 2 and one for t = 2.  U_0 = L_0 = I lies in no trace
    component and yields the empty word (or ZeroTransvection when
    ``allow_empty`` is False).
    """
    F = nm.field_of(T.z, t)
    z, t = F(T.z), F(t)
    target = T.matrix()
    if nm.is_zero(z, eps):
        if not allow_empty:
            raise ZeroTransvection("U_0 = L_0 = I is central")
        return FactorWord([], target)
    one, zero = F.one, F.zero
    if nm.scalar_eq(t, 2, eps):
        return FactorWord([target], target)
    if nm.scalar_eq(t, -2, eps):
        # -U_p * -U_q = U_{p+q}; the naive split (z-1, 1) degenerates at z = 1
        p, q = _split(z, F, eps)
        if T.kind == "U":
            fs = [SL2Matrix._raw(-one, -p, zero, -one), SL2Matrix._raw(-one, -q, zero, -one)]
        else:
            fs = [SL2Matrix._raw(-one, zero, -q, -one), SL2Matrix._raw(-one, zero, -p, -one)]
        return FactorWord(fs, target)
    lam = lambda_of_trace(t, eps)
    lami = nm.inv(lam)
    if T.kind == "U":
        fs = [SL2Matrix._raw(lam, lami * z, zero, lami), SL2Matrix._raw(lami, zero, zero, lam)]
    else:
        fs = [SL2Matrix._raw(lami, zero, zero, lam), SL2Matrix._raw(lam, zero, lami * z, lami)]
    return FactorWord(fs, target)


def decompose_in_Xt(A: SL2Matrix, t, eps: float = EPS) -> FactorWord:
    """At most eight factors, each of trace t, whose product is A."""
    F = nm.field_of(A.a, t)
    factors = []
    for T in decompose_UL(A, eps).factors:
        factors.extend(transvection_in_Xt(T, F(t), eps).factors)
    return FactorWord(factors, A)
