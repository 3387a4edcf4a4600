"""A fast end-to-end invariant suite, run by ``kleinquandle selftest``.

Each check returns a boolean and a short detail string; the suite never raises
for a failing invariant, it reports it.
"""

from __future__ import annotations

import random
import time

from . import numerics as nm
from .components import (
    GeneralCoord,
    ParabolicCoord,
    TraceClass,
    base_point_sl,
    chart_general,
    chart_general_inv,
    chart_parabolic,
    chart_parabolic_inv,
    component_of_psl,
    component_of_sl,
    conjugator_to_base,
    in_stabilizer_sl,
    same_component,
)
from .decompose import decompose_in_Xt
from .kleinian import (
    ElementaryType,
    STABLE,
    avatar_correspondence,
    build_quandle,
    centralizer_type,
    discreteness_report,
    preset,
)
from .moebius import PSL2Element, random_sl2
from .numerics import QuadraticField
from .quandle import QuandleTriplet, check_axioms, conjugation_sample


def _axioms(rng, eps):
    ok = True
    for F in (nm.CC, QuadraticField(-1)):
        els = [random_sl2(rng, F) for _ in range(20)]
        for sample in (els, [PSL2Element(A, eps) for A in els]):
            ok &= check_axioms(conjugation_sample(sample, 10 * eps), 300, rng).passed
    return ok, "300 random triples per group and mode"


def _components(rng, eps):
    F = QuadraticField(-3)
    for _ in range(100):
        A, g = random_sl2(rng, F), random_sl2(rng, F)
        if not same_component(component_of_sl(A), component_of_sl(A.conj_right(g))):
            return False, "component_of_sl moved under conjugation"
        if not component_of_psl(PSL2Element(A)).equals(TraceClass.of(A.trace())):
            return False, "projected trace class differs"
    return True, "100 conjugation pairs"


def _charts(rng, eps):
    F = QuadraticField(5)  # lambda_3 = (3 + sqrt 5)/2
    for _ in range(100):
        a, b = (random_sl2(rng, F).a for _ in range(2))
        p = ParabolicCoord(a, b)
        if a.is_zero() and b.is_zero():
            continue
        if not chart_parabolic_inv(chart_parabolic(p)).equals(p, 0.0):
            return False, "F_2 round trip"
        A = random_sl2(rng, F)
        B = base_point_sl(F(3)).conj_right(A)
        q = chart_general_inv(B)
        expect = GeneralCoord(A.a * A.d, A.b * A.d, A.a * A.c)
        if not q.equals(expect, 0.0) or not chart_general(q, F(3)) == B:
            return False, "F_t round trip"
    return True, "100 points per chart"


def _decompose(rng, eps):
    for t in (-2, 3, 1 + 1j):
        for _ in range(100):
            A = random_sl2(rng)
            w = decompose_in_Xt(A, complex(t), eps)
            if len(w) > 8 or not w.verify(eps):
                return False, f"reconstruction failed at t={t}"
            if not all(nm.scalar_eq(f.trace(), complex(t), 100 * eps) for f in w.factors):
                return False, f"factor outside X_{t}"
    return True, "100 matrices for t in {-2, 3, 1+i}"


def _homogeneous(rng, eps):
    F = QuadraticField(5)
    for t in (2, 3):
        At = base_point_sl(F(t))
        T = QuandleTriplet(At, lambda h, t=t: in_stabilizer_sl(h, F(t)))
        for _ in range(100):
            x, y = random_sl2(rng, F), random_sl2(rng, F)
            lhs = At.conj_right(T.coset_op(x, y).rep)
            rhs = At.conj_right(x).conj_right(At.conj_right(y))
            if lhs != rhs:
                return False, f"phi fails to intertwine at t={t}"
    return True, "100 pairs for t in {2, 3}"


def _conjugator(rng, eps):
    F = QuadraticField(5)
    for k in range(100):
        g0 = random_sl2(rng, F)
        B = base_point_sl(F(3 if k % 2 else 2)).conj_right(g0)
        t, g = conjugator_to_base(B)
        if base_point_sl(t).conj_right(g) != B:
            return False, "g^-1 A_t g != B"
    return True, "100 exact conjugates of A_2 and A_3"


def _injectivity(rng, eps):
    Q = build_quandle(preset("figure8"), "A", 3, eps=eps)
    r = avatar_correspondence(Q)
    comps = {str(component_of_psl(a)) for a in Q.avatars}
    return r["mismatches"] == 0 and comps == {"[2]"}, f"{r['checked']} pairs at radius 3"


def _discreteness(rng, eps):
    Q = build_quandle(preset("figure8"), "A", 5, eps=eps)
    rep = discreteness_report(Q, 20.0, radii=[4, 5])
    return rep.verdict == STABLE, f"figure8 radii 4-5: {rep.verdict}"


def _centralizers(rng, eps):
    got = (
        centralizer_type(preset("figure8"), "A", 3, eps)[0],
        centralizer_type(preset("loxodromic"), "A", 3, eps)[0],
        centralizer_type(preset("elliptic"), "A", 3, eps)[0],
    )
    want = (ElementaryType.PARABOLIC, ElementaryType.HYPERBOLIC, ElementaryType.ELLIPTIC)
    return got == want, ", ".join(t.value for t in got)


def _presets(rng, eps):
    ok = all(all(preset(n).check_relators(0.0)) for n in ("figure8", "picard", "elliptic"))
    return ok, "figure8, picard, elliptic relators"


CHECKS = [
    ("quandle axioms", _axioms),
    ("component invariance", _components),
    ("chart round trips", _charts),
    ("conjugator to base point", _conjugator),
    ("generation by X_t", _decompose),
    ("homogeneous presentation", _homogeneous),
    ("canonical map injectivity", _injectivity),
    ("discreteness evidence", _discreteness),
    ("centraliser types", _centralizers),
    ("preset relators", _presets),
]


def run(seed: int = 0, eps: float = nm.EPS) -> list:
    """Run every check; returns dicts with name, passed, detail and seconds."""
    out = []
    for name, fn in CHECKS:
        rng = random.Random(seed)
        t0 = time.perf_counter()
        try:
            passed, detail = fn(rng, eps)
        except Exception as e:  # a crash is a failed invariant, reported by name
            passed, detail = False, f"{type(e).__name__}: {e}"
        out.append({"name": name, "passed": bool(passed), "detail": detail,
                    "seconds": round(time.perf_counter() - t0, 3)})
    return out
