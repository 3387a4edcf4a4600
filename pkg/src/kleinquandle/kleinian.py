"""Finitely generated subgroups of PSL(2,C) and their quandles Q(Gamma, gamma).

A coset C(gamma)x of the centraliser is stored by its conjugate "avatar"
x^-1 gamma x: two cosets agree exactly when their avatars do, so the canonical
map Q(Gamma, gamma) -> Conj(PSL(2,C)) is the identity on stored data.  The
group itself is sampled by shortlex enumeration of a Cayley ball.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import numerics as nm
from .components import component_of_psl
from .errors import (
    BudgetExceeded,
    EmptyWindow,
    HomomorphismFailure,
    MalformedJSON,
    NumericalCollision,
    TrivialGamma,
)
from .moebius import (
    IsometryClass,
    PSL2Element,
    SL2Matrix,
    classify,
    digits_for,
    fixed_points,
    mobius_apply,
    points_close,
    psl_eq,
)
from .numerics import EPS, QuadraticField
from .quandle import DEFAULT_CAP, QuandleTriplet

STABLE = "SeparatedStable"
SHRINKING = "ShrinkingEvidence"


class ElementaryType(enum.Enum):
    ELLIPTIC = "EllipticType"
    PARABOLIC = "ParabolicType"
    HYPERBOLIC = "HyperbolicType"
    NOT_ELEMENTARY = "NotElementaryEvidence"


def to_float(f: PSL2Element) -> PSL2Element:
    A = f.rep
    return PSL2Element(SL2Matrix._raw(*(complex(x) for x in A.entries())))


@dataclass
class GroupSpec:
    """Generators (and optional relators, used only for validation) of Gamma.

    Words are tuples of signed 1-based generator indices: 2 is the second
    generator, -2 its inverse.  As strings, generator names are upper case and
    lower case denotes the inverse.
    """

    name: str
    generators: list
    relators: list = field(default_factory=list)
    names: list | None = None
    hypotheses: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.names is None:
            self.names = [chr(ord("A") + i) for i in range(len(self.generators))]
        if len(self.names) != len(self.generators):
            raise ValueError("one name per generator")
        nm.field_of(*(g.rep.a for g in self.generators))

    @property
    def field(self):
        return self.generators[0].field if self.generators else nm.CC

    @property
    def exact(self) -> bool:
        return bool(self.generators) and self.generators[0].exact

    def letters(self) -> list:
        out = []
        for i in range(1, len(self.generators) + 1):
            out += [i, -i]
        return out

    def letter_value(self, letter: int) -> PSL2Element:
        g = self.generators[abs(letter) - 1]
        return g if letter > 0 else g.inv()

    def evaluate(self, word) -> PSL2Element:
        out = PSL2Element.identity(self.field)
        for letter in word:
            out = out * self.letter_value(letter)
        return out

    def parse_word(self, text) -> tuple:
        """'AbA' style (upper = generator, lower = inverse) or '1,-2,1'."""
        if isinstance(text, (list, tuple)):
            word = tuple(int(x) for x in text)
        else:
            text = str(text).strip()
            if text in ("", "1", "e", "id"):
                return ()
            if any(ch.isdigit() for ch in text):
                try:
                    word = tuple(int(x) for x in text.replace(" ", "").split(","))
                except ValueError:
                    raise MalformedJSON(f"bad word {text!r}") from None
            else:
                word = []
                upper = [n.upper() for n in self.names]
                for ch in text:
                    if ch.upper() not in upper:
                        raise MalformedJSON(f"unknown generator letter {ch!r}")
                    i = upper.index(ch.upper()) + 1
                    word.append(i if ch.isupper() else -i)
                word = tuple(word)
        for x in word:
            if x == 0 or abs(x) > len(self.generators):
                raise MalformedJSON(f"generator index {x} out of range")
        return word

    def format_word(self, word) -> str:
        if not word:
            return "1"
        return "".join(
            self.names[abs(x) - 1].upper() if x > 0 else self.names[abs(x) - 1].lower() for x in word
        )

    def check_relators(self, eps: float = EPS) -> list:
        return [self.evaluate(r).is_identity(eps) for r in self.relators]

    def conjugate(self, f: PSL2Element, name: str | None = None) -> GroupSpec:
        """The group iota_f(Gamma) = f Gamma f^-1."""
        gens = self.generators
        if not f.exact and self.exact:
            gens = [to_float(g) for g in gens]
        fi = f.inv()
        return GroupSpec(
            name or f"{self.name}^f",
            [f * g * fi for g in gens],
            list(self.relators),
            list(self.names),
            dict(self.hypotheses),
        )

    def to_float(self) -> GroupSpec:
        return GroupSpec(
            self.name,
            [to_float(g) for g in self.generators],
            list(self.relators),
            list(self.names),
            dict(self.hypotheses),
        )


@dataclass(frozen=True)
class MarkedElement:
    word: tuple
    value: PSL2Element


class _Index:
    """Dedup index keyed by PSL normal form; float keys are confirmed by psl_eq."""

    def __init__(self, exact: bool, eps: float, label=str):
        self.exact = exact
        self.eps = eps
        self.digits = digits_for(eps)
        self.table: dict = {}
        self.label = label

    def find(self, value: PSL2Element, payload=None):
        k = value.key(self.digits)
        hit = self.table.get(k)
        if hit is None:
            return None
        if not self.exact and not psl_eq(hit[0], value, self.eps):
            raise NumericalCollision(
                "rounded keys agree but elements differ at eps",
                words=(self.label(hit[1]), self.label(payload)),
            )
        return hit[1]

    def add(self, value: PSL2Element, payload):
        self.table[value.key(self.digits)] = (value, payload)


def cayley_ball(G: GroupSpec, radius: int, cap: int = DEFAULT_CAP, eps: float = EPS) -> list:
    """All elements of word length <= radius, in shortlex order of their first witness."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    idx = _Index(G.exact, eps, label=G.format_word)
    e = PSL2Element.identity(G.field)
    out = [MarkedElement((), e)]
    idx.add(e, ())
    gens = [(x, G.letter_value(x)) for x in G.letters()]
    frontier = [out[0]]
    for _ in range(radius):
        nxt = []
        for m in frontier:
            last = m.word[-1] if m.word else 0
            for letter, gv in gens:
                if letter == -last:
                    continue
                v = m.value * gv
                word = m.word + (letter,)
                if idx.find(v, word) is not None:
                    continue
                idx.add(v, word)
                me = MarkedElement(word, v)
                out.append(me)
                nxt.append(me)
                if len(out) > cap:
                    raise BudgetExceeded(f"Cayley ball exceeds cap {cap}")
        frontier = nxt
    return out


def centralizer_test(gamma: PSL2Element, g: PSL2Element, eps: float = EPS) -> bool:
    """g gamma = gamma g in PSL(2,C)."""
    A, C = g.rep, gamma.rep
    return psl_eq(A * C, C * A, eps)


@dataclass
class KleinQuandle:
    """A ball-radius sample of Q(Gamma, gamma), cosets held as avatars."""

    group: GroupSpec
    gamma_word: tuple
    gamma: PSL2Element
    radius: int
    ball: list
    avatars: list
    witnesses: list
    avatar_index: list
    counts: list
    eps: float = EPS

    def avatar(self, g: PSL2Element) -> PSL2Element:
        return g.inv() * self.gamma * g

    def triplet(self, anchor: PSL2Element | None = None) -> QuandleTriplet:
        """(Gamma, C(gamma), sigma_gamma) with sigma_gamma(g) = gamma^-1 g gamma."""
        gamma, eps = self.gamma, self.eps
        return QuandleTriplet(
            anchor=self.gamma if anchor is None else anchor,
            h_member=lambda h: centralizer_test(gamma, h, eps),
            eps=eps,
        )

    def component(self):
        return component_of_psl(self.gamma, self.eps)

    def __len__(self) -> int:
        return len(self.avatars)


def build_quandle(
    G: GroupSpec,
    gamma_word,
    radius: int,
    cap: int = DEFAULT_CAP,
    eps: float = EPS,
    ball: list | None = None,
) -> KleinQuandle:
    word = G.parse_word(gamma_word)
    gamma = G.evaluate(word)
    if gamma.is_identity(eps):
        raise TrivialGamma("gamma must be a non-trivial element")
    if ball is None:
        ball = cayley_ball(G, radius, cap, eps)
    idx = _Index(G.exact, eps, label=lambda p: G.format_word(p[1]))
    avatars, witnesses, where = [], [], []
    counts = [0] * (radius + 1)
    C = gamma.rep
    for m in ball:
        av = PSL2Element(m.value.rep.inv() * C * m.value.rep, eps)
        hit = idx.find(av, (None, m.word))
        if hit is None:
            hit = (len(avatars), m.word)
            idx.add(av, hit)
            avatars.append(av)
            witnesses.append(m.word)
        where.append(hit[0])
        counts[len(m.word)] = len(avatars)
    for r in range(1, radius + 1):
        counts[r] = max(counts[r], counts[r - 1])
    return KleinQuandle(G, word, gamma, radius, ball, avatars, witnesses, where, counts, eps)


def canonical_map(Q: KleinQuandle) -> list:
    """Images in Conj(PSL(2,C)) with their component annotation."""
    return [(a, component_of_psl(a, Q.eps)) for a in Q.avatars]


def avatar_correspondence(Q: KleinQuandle, pairs=None) -> dict:
    """Coset equality (x y^-1 in C(gamma)) against avatar equality, over ``pairs``
    of ball indices (all unordered pairs by default)."""
    n = len(Q.ball)
    reps = [m.value.rep for m in Q.ball]
    invs = [A.inv() for A in reps]
    C = Q.gamma.rep
    checked = mismatches = 0
    witness = None
    it = pairs if pairs is not None else ((i, j) for i in range(n) for j in range(i, n))
    for i, j in it:
        h = reps[i] * invs[j]
        coset_same = psl_eq(h * C, C * h, Q.eps)
        avatar_same = Q.avatar_index[i] == Q.avatar_index[j]
        checked += 1
        if coset_same != avatar_same:
            mismatches += 1
            if witness is None:
                witness = (Q.group.format_word(Q.ball[i].word), Q.group.format_word(Q.ball[j].word))
    return {"checked": checked, "mismatches": mismatches, "witness": witness}


def quandle_hom_check(
    Q: KleinQuandle,
    samples: int = 500,
    rng: random.Random | None = None,
    anchor: PSL2Element | None = None,
) -> dict:
    """Compare the triplet operation on cosets with conjugation of avatars on random
    pairs; raise HomomorphismFailure on the first disagreement."""
    rng = rng or random.Random(0)
    T = Q.triplet(anchor)
    n = len(Q.ball)
    for _ in range(samples):
        i, j = rng.randrange(n), rng.randrange(n)
        x, y = Q.ball[i].value, Q.ball[j].value
        lhs = Q.avatar(T.coset_op(x, y).rep)
        ax, ay = Q.avatars[Q.avatar_index[i]], Q.avatars[Q.avatar_index[j]]
        rhs = ay.inv() * ax * ay
        if not psl_eq(lhs, rhs, Q.eps):
            words = (Q.group.format_word(Q.ball[i].word), Q.group.format_word(Q.ball[j].word))
            raise HomomorphismFailure("coset operation disagrees with conjugation", witness=words)
    return {"samples": samples, "passed": True}


def _frobenius(A: SL2Matrix) -> float:
    return math.sqrt(sum(abs(complex(x)) ** 2 for x in A.entries()))


def min_separation(points: list) -> tuple:
    """Smallest distance min(|A - B|, |A + B|) (Frobenius) over distinct pairs."""
    if len(points) < 2:
        return math.inf, None
    arr = np.array([[complex(x) for x in p.rep.entries()] for p in points])
    best, pair = math.inf, None
    for i in range(len(arr) - 1):
        rest = arr[i + 1:]
        d = np.minimum(
            np.linalg.norm(rest - arr[i], axis=1), np.linalg.norm(rest + arr[i], axis=1)
        )
        j = int(np.argmin(d))
        if d[j] < best:
            best, pair = float(d[j]), (i, i + 1 + j)
    return best, pair


@dataclass
class DiscretenessReport:
    radii: list
    counts: list
    window_counts: list
    min_separation: list
    witnesses: list
    verdict: str
    scope: str
    note: str = "evidence from finite data, not a proof of discreteness"

    def as_dict(self) -> dict:
        return {
            "radii": self.radii,
            "counts": self.counts,
            "window_counts": self.window_counts,
            "min_separation": [None if math.isinf(s) else s for s in self.min_separation],
            "witnesses": self.witnesses,
            "verdict": self.verdict,
            "scope": self.scope,
            "note": self.note,
        }


def theorem_scope(G: GroupSpec, gamma: PSL2Element, ctype: ElementaryType | None, eps=EPS) -> str:
    if classify(gamma, eps) is IsometryClass.PARABOLIC:
        return "case1" if G.hypotheses.get("finite_volume") else "case1-hypothesis-unverified"
    if ctype is ElementaryType.HYPERBOLIC:
        return "case2"
    return "outside-theorem-scope"


BURN_IN_RADIUS = 4


def report_radii(radius: int) -> list:
    """The last three radii, but never below the burn-in radius when the ball
    reaches past it: short balls have not yet met their closest pairs."""
    lo = max(0, radius - 2)
    if radius > BURN_IN_RADIUS:
        lo = max(lo, BURN_IN_RADIUS)
    return list(range(lo, radius + 1))


def discreteness_report(
    Q: KleinQuandle,
    window: float = 20.0,
    radii: list | None = None,
    scope: str = "",
) -> DiscretenessReport:
    """Windowed minimum separation of the canonical image at three radii.

    SeparatedStable when the minimum never drops more than 10% below its value at
    the first radius; ShrinkingEvidence otherwise.
    """
    if radii is None:
        radii = report_radii(Q.radius)
    if max(radii) > Q.radius:
        raise ValueError("radii exceed the built quandle radius")
    norms = [_frobenius(a.rep) for a in Q.avatars]
    seps, wcounts, wits = [], [], []
    for r in radii:
        pts = [i for i in range(Q.counts[r]) if norms[i] <= window]
        wcounts.append(len(pts))
        s, pair = min_separation([Q.avatars[i] for i in pts])
        seps.append(s)
        wits.append(
            None if pair is None
            else [Q.group.format_word(Q.witnesses[pts[pair[0]]]), Q.group.format_word(Q.witnesses[pts[pair[1]]])]
        )
    if all(c == 0 for c in wcounts):
        raise EmptyWindow(f"no canonical images with norm <= {window}")
    base = seps[0]
    verdict = STABLE if math.isinf(base) or min(seps) >= 0.9 * base else SHRINKING
    return DiscretenessReport(
        list(radii), [Q.counts[r] for r in radii], wcounts, seps, wits, verdict, scope
    )


def _preserves_fixed_set(gamma: PSL2Element, elems: list, eps: float) -> bool:
    try:
        fix = fixed_points(gamma, eps)
    except nm.ExactModeUnsupported:
        gamma = to_float(gamma)
        elems = [to_float(g) for g in elems]
        fix = fixed_points(gamma, eps)
    tol = max(eps, 1e-7) if not gamma.exact else eps
    for g in elems:
        for x in fix:
            y = mobius_apply(g, x)
            if not any(points_close(y, w, tol) for w in fix):
                return False
    return True


def centralizer_type(
    G: GroupSpec,
    gamma_word,
    radius: int,
    eps: float = EPS,
    cap: int = DEFAULT_CAP,
    ball: list | None = None,
) -> tuple:
    """Elementary type of C(gamma), from its intersection with Cayley balls.

    Returns (ElementaryType, per-radius centraliser counts).  Parabolic gamma
    gives ParabolicType; otherwise a centraliser that stops growing between the
    last two radii is EllipticType evidence and a growing one HyperbolicType
    evidence.  If a sampled centraliser element moves the fixed set of gamma the
    result is NotElementaryEvidence.
    """
    if radius < 1:
        raise ValueError("centralizer_type needs radius >= 1")
    word = G.parse_word(gamma_word)
    gamma = G.evaluate(word)
    if gamma.is_identity(eps):
        raise TrivialGamma("gamma must be a non-trivial element")
    if ball is None:
        ball = cayley_ball(G, radius, cap, eps)
    counts = [0] * (radius + 1)
    members = []
    for m in ball:
        if len(m.word) > radius:
            break
        if centralizer_test(gamma, m.value, eps):
            members.append(m.value)
            counts[len(m.word)] += 1
    for r in range(1, radius + 1):
        counts[r] += counts[r - 1]
    if not _preserves_fixed_set(gamma, members, eps):
        return ElementaryType.NOT_ELEMENTARY, counts
    if classify(gamma, eps) is IsometryClass.PARABOLIC:
        return ElementaryType.PARABOLIC, counts
    if counts[radius] == counts[radius - 1]:
        return ElementaryType.ELLIPTIC, counts
    return ElementaryType.HYPERBOLIC, counts


def change_basepoint(Q: KleinQuandle, f: PSL2Element, radius: int | None = None) -> KleinQuandle:
    """Q(iota_f(Gamma), iota_f(gamma)), rebuilt at the same radius."""
    G2 = Q.group.conjugate(f)
    return build_quandle(G2, Q.gamma_word, Q.radius if radius is None else radius, eps=Q.eps)


# -- presets --------------------------------------------------------------------

def _psl(rows, F) -> PSL2Element:
    return PSL2Element(SL2Matrix.from_rows(rows, F))


def figure_eight() -> GroupSpec:
    """Riley's holonomy of the figure-eight knot group, in Q(sqrt -3)."""
    F = QuadraticField(-3)
    omega = F(Fraction(-1, 2), Fraction(1, 2))
    A = _psl([[1, 1], [0, 1]], F)
    B = _psl([[1, 0], [-omega, 1]], F)
    w = [-1, 2, 1, -2]
    w_inv = [2, -1, -2, 1]
    relator = w + [1] + w_inv + [-2]
    return GroupSpec(
        "figure8",
        [A, B],
        [relator],
        ["A", "B"],
        {"finite_volume": True, "discrete": True, "meridian": "A"},
    )


def picard() -> GroupSpec:
    """<T_1, T_i, S'_1>, a finite-index subgroup of PSL(2, Z[i])."""
    F = QuadraticField(-1)
    i = F.gen
    T1 = _psl([[1, 1], [0, 1]], F)
    Ti = _psl([[1, i], [0, 1]], F)
    S = _psl([[0, -1], [1, 0]], F)
    return GroupSpec(
        "picard",
        [T1, Ti, S],
        [[3, 3], [1, 2, -1, -2], [3, 1, 3, 1, 3, 1]],
        ["T", "U", "S"],
        {"finite_volume": True, "discrete": True},
    )


def loxodromic_cyclic() -> GroupSpec:
    F = QuadraticField(-1)
    return GroupSpec(
        "loxodromic",
        [_psl([[2, 0], [0, Fraction(1, 2)]], F)],
        [],
        ["A"],
        {"finite_volume": False, "discrete": True},
    )


def elliptic_cyclic() -> GroupSpec:
    F = QuadraticField(-1)
    i = F.gen
    return GroupSpec(
        "elliptic",
        [_psl([[i, 0], [0, -i]], F)],
        [[1, 1]],
        ["A"],
        {"finite_volume": False, "discrete": True},
    )


def nondiscrete_control() -> GroupSpec:
    """<T_1, [[1, 0], [1/10, 1]]>: a parabolic with a partner whose |c| < 1."""
    F = QuadraticField(-1)
    return GroupSpec(
        "control",
        [_psl([[1, 1], [0, 1]], F), _psl([[1, 0], [Fraction(1, 10), 1]], F)],
        [],
        ["A", "B"],
        {"finite_volume": False, "discrete": False},
    )


PRESETS = {
    "figure8": figure_eight,
    "picard": picard,
    "loxodromic": loxodromic_cyclic,
    "elliptic": elliptic_cyclic,
    "control": nondiscrete_control,
}


def presets() -> list:
    return [make() for make in PRESETS.values()]


def preset(name: str) -> GroupSpec:
    try:
        return PRESETS[name]()
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None

