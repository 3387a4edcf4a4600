"""Connected components of Conj(SL(2,C)) and Conj(PSL(2,C)).

Away from the centre, the component of A in SL(2,C) is the trace level set
X_t = {A != +-I : tr A = t}.  Each X_t carries a base point A_t, a stabiliser
H_t, and an explicit chart: (alpha, beta) up to sign for t = 2, and points of
the quadric alpha(1 - alpha) + beta*gamma = 0 otherwise.  In PSL(2,C) the
components are indexed by trace classes {t, -t}.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import numerics as nm
from .errors import CentralElement, NotInComponent, ParabolicTrace
from .moebius import PSL2Element, SL2Matrix, _rep
from .numerics import EPS


@dataclass(frozen=True)
class TraceClass:
    """tau = {t, -t}, stored by the representative in the principal half-plane."""

    rep: object

    @classmethod
    def of(cls, t, eps: float = EPS) -> TraceClass:
        s = nm.principal_sign(t, 0.0 if nm.is_exact(t) else eps)
        return cls(t if s >= 0 else -t)

    def equals(self, other: TraceClass, eps: float = EPS) -> bool:
        return nm.scalar_eq(self.rep, other.rep, eps) or nm.scalar_eq(self.rep, -other.rep, eps)

    def __str__(self) -> str:
        return f"[{nm.format_scalar(self.rep)}]"


IDENTITY = "id"


@dataclass(frozen=True)
class ComponentIdSL:
    """CenterPlus, CenterMinus, or Trace(t)."""

    tag: str
    trace: object = None

    def __str__(self) -> str:
        if self.tag == "trace":
            return f"X~[{nm.format_scalar(self.trace)}]"
        return {"center+": "{I}", "center-": "{-I}"}[self.tag]


CENTER_PLUS = ComponentIdSL("center+")
CENTER_MINUS = ComponentIdSL("center-")


@dataclass(frozen=True)
class ParabolicCoord:
    """The class [(alpha, beta)] = [(-alpha, -beta)], stored sign-canonically."""

    alpha: object
    beta: object

    def __post_init__(self):
        F = nm.field_of(self.alpha, self.beta)
        a, b = F(self.alpha), F(self.beta)
        eps = 0.0 if F.exact else EPS
        lead = a if not nm.is_zero(a, eps) else b
        if nm.is_zero(lead, eps):
            raise ValueError("(alpha, beta) must not be (0, 0)")
        if nm.principal_sign(lead, eps) < 0:
            a, b = -a, -b
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    def equals(self, o: ParabolicCoord, eps: float = EPS) -> bool:
        same = nm.scalar_eq(self.alpha, o.alpha, eps) and nm.scalar_eq(self.beta, o.beta, eps)
        flip = nm.scalar_eq(self.alpha, -o.alpha, eps) and nm.scalar_eq(self.beta, -o.beta, eps)
        return same or flip


@dataclass(frozen=True)
class GeneralCoord:
    """A point (alpha, beta, gamma) of the quadric alpha(1-alpha) + beta*gamma = 0."""

    alpha: object
    beta: object
    gamma: object

    def defect(self):
        return self.alpha * (1 - self.alpha) + self.beta * self.gamma

    def on_variety(self, eps: float = EPS) -> bool:
        return nm.is_zero(self.defect(), eps)

    def equals(self, o: GeneralCoord, eps: float = EPS) -> bool:
        return all(
            nm.scalar_eq(x, y, eps)
            for x, y in ((self.alpha, o.alpha), (self.beta, o.beta), (self.gamma, o.gamma))
        )


def _is_pm2(t, eps):
    if nm.scalar_eq(t, 2, eps):
        return 1
    if nm.scalar_eq(t, -2, eps):
        return -1
    return 0


def lambda_of_trace(t, eps: float = EPS):
    """lambda_t with lambda_t + 1/lambda_t = t.

    +-1 for t = +-2; e^{i theta} with theta in (0, pi) for real t in (-2, 2);
    otherwise the root of modulus > 1.
    """
    F = nm.field_of(t)
    t = F(t)
    e = _is_pm2(t, eps)
    if e:
        return F(e)
    elliptic = nm.is_real(t, eps) and nm.real_sign(t - 2) < 0 and nm.real_sign(t + 2) > 0
    if not F.exact:
        if elliptic:
            return cmath.exp(1j * math.acos(t.real / 2))
        s = nm.sqrt_principal(t * t - 4)
        lam = (t + s) / 2
        return lam if abs(lam) > 1 else (t - s) / 2
    s = nm.exact_sqrt(t * t - 4)
    lam = (t + s) / 2
    if elliptic:
        return lam if lam.imag_sign() > 0 else (t - s) / 2
    return lam if (lam.abs2() - 1).real_sign() > 0 else (t - s) / 2


def base_point_sl(t, eps: float = EPS) -> SL2Matrix:
    F = nm.field_of(t)
    lam = lambda_of_trace(t, eps)
    one = F.one if _is_pm2(F(t), eps) else F.zero
    return SL2Matrix._raw(lam, one, F.zero, nm.inv(lam))


def base_point_psl(tau: TraceClass, eps: float = EPS) -> PSL2Element:
    """f_tau: T_1 for tau = [2], the class of diag(lambda_t, 1/lambda_t) otherwise."""
    return PSL2Element(base_point_sl(tau.rep, eps), eps)


def in_stabilizer_sl(g, t, eps: float = EPS) -> bool:
    """Membership in the stabiliser of A_t: +-unipotent upper triangular if t = +-2,
    diagonal otherwise."""
    g = _rep(g)
    if _is_pm2(t, eps):
        one = g.field.one
        return (
            nm.is_zero(g.c, eps)
            and nm.scalar_eq(g.a, g.d, eps)
            and (nm.scalar_eq(g.a, one, eps) or nm.scalar_eq(g.a, -one, eps))
        )
    return nm.is_zero(g.b, eps) and nm.is_zero(g.c, eps)


def in_stabilizer_psl(g: PSL2Element, tau: TraceClass, eps: float = EPS) -> bool:
    """Membership in H_tau: translations for [2], diagonal classes in general, and
    additionally antidiagonal classes for [0]."""
    A = _rep(g)
    if _is_pm2(tau.rep, eps):
        return in_stabilizer_sl(A, tau.rep, eps)
    diagonal = nm.is_zero(A.b, eps) and nm.is_zero(A.c, eps)
    if diagonal:
        return True
    if nm.is_zero(tau.rep, eps):
        return nm.is_zero(A.a, eps) and nm.is_zero(A.d, eps)
    return False


def component_of_sl(A: SL2Matrix, eps: float = EPS) -> ComponentIdSL:
    if A.is_central(eps):
        return CENTER_PLUS if nm.real_sign(A.a, eps) > 0 else CENTER_MINUS
    return ComponentIdSL("trace", A.trace())


def component_of_psl(f, eps: float = EPS):
    """IDENTITY for id, else the TraceClass of the trace."""
    A = _rep(f)
    if A.is_central(eps):
        return IDENTITY
    return TraceClass.of(A.trace(), eps)


def same_component(x, y, eps: float = EPS) -> bool:
    if isinstance(x, TraceClass) and isinstance(y, TraceClass):
        return x.equals(y, eps)
    if isinstance(x, ComponentIdSL) and isinstance(y, ComponentIdSL):
        if x.tag != y.tag:
            return False
        return x.tag != "trace" or nm.scalar_eq(x.trace, y.trace, eps)
    return x == y


# -- charts ------------------------------------------------------------------

def chart_parabolic(p: ParabolicCoord) -> SL2Matrix:
    """A_(alpha, beta) = [[1 + alpha beta, alpha^2], [-beta^2, 1 - alpha beta]]."""
    a, b = p.alpha, p.beta
    ab = a * b
    return SL2Matrix._raw(1 + ab, a * a, -(b * b), 1 - ab)


def _parabolic_pair(B: SL2Matrix, sign: int, eps: float):
    """(alpha, beta) with alpha^2 = b, beta^2 = -c, alpha*beta = a - sign."""
    exact = B.exact
    F = B.field
    if exact:
        use_b = not B.b.is_zero()
    else:
        use_b = abs(B.b) >= abs(B.c)
    if use_b:
        alpha = nm.sqrt(B.b)
        return alpha, (B.a - sign) / alpha
    beta = nm.sqrt(-B.c)
    if exact:
        return F.zero, beta
    return (B.a - sign) / beta, beta


def chart_parabolic_inv(B: SL2Matrix, eps: float = EPS) -> ParabolicCoord:
    if not nm.scalar_eq(B.trace(), 2, eps) or B.is_central(eps):
        raise NotInComponent("chart_parabolic_inv needs trace 2 and B != I")
    return ParabolicCoord(*_parabolic_pair(B, 1, eps))


def _lam_gap(t, eps):
    e = _is_pm2(nm.field_of(t)(t), eps)
    if e:
        raise ParabolicTrace("t = +-2 belongs to the parabolic chart")
    lam = lambda_of_trace(t, eps)
    return lam, nm.inv(lam)


def chart_general(q: GeneralCoord, t, eps: float = EPS) -> SL2Matrix:
    """A^lambda_(alpha, beta, gamma) for a point of the quadric and t != +-2."""
    F = nm.field_of(q.alpha, q.beta, q.gamma, t)
    if not q.on_variety(eps):
        raise NotInComponent("coordinates are off the quadric alpha(1-alpha)+beta*gamma=0")
    lam, lami = _lam_gap(F(t), eps)
    gap = lam - lami
    al = F(q.alpha)
    return SL2Matrix._raw(
        al * lam + (1 - al) * lami,
        gap * q.beta,
        -(gap * q.gamma),
        (1 - al) * lam + al * lami,
    )


def chart_general_inv(B: SL2Matrix, t=None, eps: float = EPS) -> GeneralCoord:
    tr = B.trace()
    if t is not None and not nm.scalar_eq(tr, t, eps):
        raise NotInComponent("trace of B differs from t")
    if B.is_central(eps):
        raise NotInComponent("+-I lies in no trace component")
    lam, lami = _lam_gap(tr if t is None else B.field(t), eps)
    gap = lam - lami
    return GeneralCoord((B.a - lami) / gap, B.b / gap, -B.c / gap)


def conjugator_to_base(B: SL2Matrix, eps: float = EPS):
    """(t, g) with g^-1 A_t g = B, built from the chart coordinates of B."""
    if B.is_central(eps):
        raise CentralElement("+-I is central; no conjugator to a base point")
    F = B.field
    t = B.trace()
    sign = _is_pm2(t, eps)
    if sign:
        t = F(2 * sign)
        alpha, beta = _parabolic_pair(B, sign, eps)
        if B.exact:
            case1 = not alpha.is_zero()
        else:
            case1 = abs(alpha) >= abs(beta)
        if case1:
            g = SL2Matrix._raw(nm.inv(alpha), F.zero, beta, alpha)
        else:
            g = SL2Matrix._raw(F.zero, -nm.inv(beta), beta, alpha)
        return t, g
    q = chart_general_inv(B, eps=eps)
    al, be, ga = q.alpha, q.beta, q.gamma
    if B.exact:
        if not al.is_zero():
            g = SL2Matrix._raw(al, be, ga / al, F.one)
        elif be.is_zero() and not ga.is_zero():
            g = SL2Matrix._raw(F.one, -nm.inv(ga), ga, F.zero)
        elif ga.is_zero() and not be.is_zero():
            g = SL2Matrix._raw(F.zero, be, -nm.inv(be), F.one)
        else:
            # (0, 0, 0): B = diag(1/lambda, lambda), swapped by the Weyl element
            g = SL2Matrix._raw(F.zero, F.one, -F.one, F.zero)
        return t, g
    if abs(al) >= abs(1 - al):
        g = SL2Matrix._raw(al, be, ga / al, F.one)
    else:
        g = SL2Matrix._raw(ga / (al - 1), F.one, al - 1, be)
    return t, g


def conjugator_to_base_psl(f: PSL2Element, eps: float = EPS):
    """(tau, g) with f_tau . g = f in PSL(2,C)."""
    A = _rep(f)
    tau = TraceClass.of(A.trace(), eps)
    if not nm.scalar_eq(A.trace(), tau.rep, eps):
        A = -A
    _, g = conjugator_to_base(A, eps)
    return tau, PSL2Element(g, eps)


class BasePointSymmetry:
    """sigma = iota_{s^-1}: g -> s^-1 g s for the anchor s (a base point)."""

    def __init__(self, anchor):
        self.anchor = anchor
        self._anchor_inv = anchor.inv()

    def __call__(self, g):
        return self._anchor_inv * g * self.anchor


def point_symmetry_at_base(t, eps: float = EPS) -> BasePointSymmetry:
    if isinstance(t, TraceClass):
        return BasePointSymmetry(base_point_psl(t, eps))
    return BasePointSymmetry(base_point_sl(t, eps))

