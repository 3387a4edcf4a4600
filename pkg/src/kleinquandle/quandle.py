"""Quandle axioms, coset quandles of quandle triplets, induced homomorphisms
and inner orbits.

Carrier elements (``SL2Matrix`` / ``PSL2Element``) only need ``*``, ``inv()``,
``equals(other, eps)`` and ``key()``; any group type with that surface works.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Callable

from .errors import BudgetExceeded, ImageEscapesH, IntertwiningFailure
from .moebius import quandle_op, quandle_op_inv
from .numerics import EPS

DEFAULT_CAP = 10**6


# -- axiom checking ------------------------------------------------------------

@dataclass
class AxiomResult:
    passed: bool = True
    checked: int = 0
    witness: tuple | None = None

    def fail(self, *witness):
        if self.passed:
            self.passed = False
            self.witness = witness


@dataclass
class AxiomReport:
    idempotence: AxiomResult = field(default_factory=AxiomResult)
    bijectivity: AxiomResult = field(default_factory=AxiomResult)
    distributivity: AxiomResult = field(default_factory=AxiomResult)
    escapes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.idempotence.passed and self.bijectivity.passed and self.distributivity.passed

    def as_dict(self, fmt: Callable = repr) -> dict:
        def one(r: AxiomResult):
            out = {"passed": r.passed, "checked": r.checked}
            if r.witness is not None:
                out["witness"] = [fmt(w) for w in r.witness]
            return out

        return {
            "idempotence": one(self.idempotence),
            "bijectivity": one(self.bijectivity),
            "distributivity": one(self.distributivity),
            "escapes": len(self.escapes),
            "passed": self.passed,
        }


@dataclass
class FiniteQuandleSample:
    """A finite sample of a quandle.

    ``closed=True`` means ``op`` is a table on ``elements`` and results outside the
    sample are reported as escapes.  ``closed=False`` means elements live in an
    ambient quandle (e.g. Conj(G)) and products are evaluated directly.
    ``inverse_op(x, y)`` is the explicit inverse point symmetry, when known.
    """

    elements: list
    op: Callable[[Any, Any], Any]
    eq: Callable[[Any, Any], bool] = lambda x, y: x == y
    key: Callable[[Any], Any] | None = None
    inverse_op: Callable[[Any, Any], Any] | None = None
    closed: bool = True


def conjugation_sample(elements, eps: float = EPS) -> FiniteQuandleSample:
    """Sample of Conj(SL2) or Conj(PSL2): x <| y = y^-1 x y, s_y^-1(x) = y x y^-1."""
    return FiniteQuandleSample(
        elements=list(elements),
        op=quandle_op,
        eq=lambda x, y: x.equals(y, eps),
        inverse_op=quandle_op_inv,
        closed=False,
    )


def check_axioms(
    Q: FiniteQuandleSample,
    triples: int | None = None,
    rng: random.Random | None = None,
) -> AxiomReport:
    """Check idempotence, bijectivity of point symmetries and self-distributivity.

    All ordered triples are checked when ``triples`` is None; otherwise that many
    random triples are drawn from the sample.
    """
    if not Q.elements:
        raise ValueError("empty sample")
    rng = rng or random.Random(0)
    rep = AxiomReport()
    els = Q.elements
    eq = Q.eq
    index = None
    if Q.closed:
        index = {Q.key(x) if Q.key else x: i for i, x in enumerate(els)}

    def inside(z):
        return (Q.key(z) if Q.key else z) in index

    table = {}

    def op(i, j):
        if (i, j) not in table:
            z = Q.op(els[i], els[j])
            if Q.closed and not inside(z):
                rep.escapes.append((els[i], els[j]))
                z = None
            table[(i, j)] = z
        return table[(i, j)]

    n = len(els)
    for i, x in enumerate(els):
        rep.idempotence.checked += 1
        z = op(i, i)
        if z is not None and not eq(z, x):
            rep.idempotence.fail(x)

    if triples is None:
        pairs = list(itertools.product(range(n), repeat=2))
    else:
        pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(triples)]

    if Q.inverse_op is not None:
        for i, j in pairs:
            x, y = els[i], els[j]
            rep.bijectivity.checked += 1
            z = op(i, j)
            ok = z is None or eq(Q.inverse_op(z, y), x)
            ok = ok and eq(Q.op(Q.inverse_op(x, y), y), x)
            if not ok:
                rep.bijectivity.fail(x, y)
    else:
        for j in range(n):
            images = [op(i, j) for i in range(n)]
            rep.bijectivity.checked += 1
            seen = []
            for i, z in enumerate(images):
                if z is None:
                    continue
                clash = next((k for k, w in seen if eq(w, z)), None)
                if clash is not None:
                    rep.bijectivity.fail(els[clash], els[i], els[j])
                    break
                seen.append((i, z))

    if triples is None:
        trips = itertools.product(range(n), repeat=3)
    else:
        trips = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(triples))
    for i, j, k in trips:
        rep.distributivity.checked += 1
        if Q.closed:
            xy, xz, yz = op(i, j), op(i, k), op(j, k)
            if None in (xy, xz, yz):
                continue
            lhs = Q.op(xy, els[k])
            rhs = Q.op(xz, yz)
        else:
            x, y, z = els[i], els[j], els[k]
            lhs = Q.op(Q.op(x, y), z)
            rhs = Q.op(Q.op(x, z), Q.op(y, z))
        if not eq(lhs, rhs):
            rep.distributivity.fail(els[i], els[j], els[k])
    return rep


# -- quandle triplets ------------------------------------------------------------

@dataclass
class QuandleTriplet:
    """(G, H, sigma) with sigma(g) = s^-1 g s for the anchor s and H given by a
    membership predicate.  The coset quandle is H\\G with
    Hx <| Hy = H sigma(x y^-1) y."""

    anchor: Any
    h_member: Callable[[Any], bool]
    eps: float = EPS

    def sigma(self, g):
        return self.anchor.inv() * g * self.anchor

    def coset_eq(self, x, y) -> bool:
        return self.h_member(x * y.inv())

    def coset_op(self, x, y) -> Coset:
        x, y = _rep_of(x), _rep_of(y)
        return Coset(self.sigma(x * y.inv()) * y)

    def check_anchor(self, hs) -> list:
        """Members of ``hs`` that fail to commute with the anchor (should be none)."""
        s = self.anchor
        return [h for h in hs if self.h_member(h) and not (h * s).equals(s * h, self.eps)]


@dataclass(frozen=True)
class Coset:
    """Right coset Hx, held by a representative."""

    rep: Any


def _rep_of(x):
    return x.rep if isinstance(x, Coset) else x


def coset_eq(T: QuandleTriplet, x, y) -> bool:
    return T.coset_eq(_rep_of(x), _rep_of(y))


def coset_op(T: QuandleTriplet, x, y) -> Coset:
    return T.coset_op(x, y)


@dataclass
class InducedHomReport:
    intertwining: int = 0
    h_image: int = 0
    hom_pairs: int = 0
    hom_failures: list = field(default_factory=list)
    injectivity_hypothesis: bool = True
    injectivity_checked: int = 0

    @property
    def valid(self) -> bool:
        return not self.hom_failures


class InducedHom:
    """rho_bar: H'g -> H rho(g) for a group homomorphism rho: G' -> G."""

    def __init__(self, rho, source: QuandleTriplet, target: QuandleTriplet, report):
        self.rho = rho
        self.source = source
        self.target = target
        self.report = report

    def __call__(self, c) -> Coset:
        return Coset(self.rho(_rep_of(c)))


def induced_hom(
    rho: Callable,
    source: QuandleTriplet,
    target: QuandleTriplet,
    samples: list,
    h_samples: list = (),
    eps: float = EPS,
) -> InducedHom:
    """Build rho_bar(H'g) = H rho(g) after checking, on the supplied samples, that
    sigma . rho = rho . sigma' and rho(H') lies in H.  Also checks the
    homomorphism identity and records whether H' = rho^-1(H) holds on the
    samples, which is what makes rho_bar injective."""
    rep = InducedHomReport()
    for g in samples:
        rep.intertwining += 1
        lhs = target.sigma(rho(g))
        rhs = rho(source.sigma(g))
        if not lhs.equals(rhs, eps):
            raise IntertwiningFailure("sigma o rho != rho o sigma'", witness=g)
    for h in h_samples:
        if not source.h_member(h):
            continue
        rep.h_image += 1
        if not target.h_member(rho(h)):
            raise ImageEscapesH("rho(H') is not contained in H", witness=h)
    for g in samples:
        rep.injectivity_checked += 1
        if source.h_member(g) != target.h_member(rho(g)):
            rep.injectivity_hypothesis = False
    hom = InducedHom(rho, source, target, rep)
    for x, y in itertools.product(samples, repeat=2):
        rep.hom_pairs += 1
        lhs = hom(source.coset_op(x, y))
        rhs = target.coset_op(hom(Coset(x)), hom(Coset(y)))
        if not target.coset_eq(lhs.rep, rhs.rep):
            rep.hom_failures.append((x, y))
    return hom


# -- inner orbits ------------------------------------------------------------

def inner_orbit(
    seeds: list,
    symmetries: list,
    radius: int,
    cap: int = DEFAULT_CAP,
    key: Callable | None = None,
) -> list:
    """Closure of ``seeds`` under x -> g^-1 x g and x -> g x g^-1 for g in
    ``symmetries``, to word radius ``radius``, deduplicated by ``key``.
    Output order is breadth-first and deterministic."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    key = key or (lambda x: x.key())
    moves = []
    for g in symmetries:
        gi = g.inv()
        moves.append((gi, g))
        moves.append((g, gi))
    seen = set()
    out = []
    frontier = []
    for s in seeds:
        k = key(s)
        if k not in seen:
            seen.add(k)
            out.append(s)
            frontier.append(s)
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for left, right in moves:
                y = left * x * right
                k = key(y)
                if k in seen:
                    continue
                seen.add(k)
                out.append(y)
                nxt.append(y)
                if len(out) > cap:
                    raise BudgetExceeded(f"inner orbit exceeds cap {cap}")
        frontier = nxt
    return out
