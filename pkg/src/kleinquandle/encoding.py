"""JSON encodings for scalars, matrices, words and group specifications.

Float scalars are ``{"re": x, "im": y}``; exact scalars of Q(sqrt d) are
``{"a": "p/q", "b": "p/q", "d": d}`` meaning a + b*sqrt(d).  A matrix is an
object with keys a, b, c, d holding scalars, or a list of two rows.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import numerics as nm
from .errors import MalformedJSON, MixedField
from .moebius import PSL2Element, SL2Matrix
from .numerics import QuadraticField, QuadScalar


def _rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def encode_scalar(x) -> dict:
    if isinstance(x, QuadScalar):
        return {"a": _rat(x.a), "b": _rat(x.b), "d": x.d}
    z = complex(x)
    return {"re": z.real + 0.0, "im": z.imag + 0.0}


def _fraction(v) -> Fraction:
    if isinstance(v, bool):
        raise MalformedJSON("booleans are not scalars")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise MalformedJSON(f"not a rational: {v!r}") from None
    raise MalformedJSON(f"exact components must be integers or 'p/q' strings, got {v!r}")


def _complex_text(s: str) -> complex:
    try:
        return complex(s.strip().replace(" ", "").replace("i", "j"))
    except ValueError:
        raise MalformedJSON(f"not a complex number: {s!r}") from None


def decode_scalar(obj, field=None):
    """Parse a scalar; ``field`` forces a mode (a QuadraticField or nm.CC).

    Without ``field`` the mode follows the encoding: plain numbers and
    ``{"re", "im"}`` are float, ``{"a", "b", "d"}`` is exact.
    """
    exact_field = field if field is not None and field.exact else None
    if isinstance(obj, dict):
        if "d" in obj:
            if not isinstance(obj["d"], int) or isinstance(obj["d"], bool):
                raise MalformedJSON("'d' must be an integer")
            try:
                F = QuadraticField(obj["d"])
            except ValueError as e:
                raise MalformedJSON(str(e)) from None
            if exact_field is not None and exact_field is not F:
                raise MixedField(f"scalar in Q(√{F.d}) but mode is Q(√{exact_field.d})")
            if field is not None and not field.exact:
                return complex(F(_fraction(obj.get("a", 0)), _fraction(obj.get("b", 0))))
            return F(_fraction(obj.get("a", 0)), _fraction(obj.get("b", 0)))
        if "re" in obj or "im" in obj:
            if exact_field is not None:
                raise MalformedJSON("float scalar given in exact mode")
            re, im = obj.get("re", 0), obj.get("im", 0)
            if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (re, im)):
                raise MalformedJSON("'re' and 'im' must be numbers")
            return nm.CC(complex(re, im))
        raise MalformedJSON(f"unrecognised scalar object {obj!r}")
    if isinstance(obj, bool) or obj is None:
        raise MalformedJSON(f"not a scalar: {obj!r}")
    if exact_field is not None:
        if isinstance(obj, float):
            raise MalformedJSON("float literal given in exact mode")
        return exact_field(_fraction(obj))
    if isinstance(obj, (int, float)):
        return nm.CC(obj)
    if isinstance(obj, str):
        return nm.CC(_complex_text(obj))
    raise MalformedJSON(f"not a scalar: {obj!r}")


def infer_field(entries, field=None):
    """The field of a list of encoded scalars: ``field`` if given, else the
    common exact field if any entry is exact, else float."""
    if field is not None:
        return field
    ds = {e["d"] for e in entries if isinstance(e, dict) and "d" in e}
    if len(ds) > 1:
        raise MixedField(f"entries from several fields: {sorted(ds)}")
    if ds:
        d = ds.pop()
        if any(isinstance(e, dict) and ("re" in e or "im" in e) for e in entries):
            raise MalformedJSON("exact and float scalars mixed in one matrix")
        try:
            return QuadraticField(d)
        except (ValueError, TypeError) as e:
            raise MalformedJSON(str(e)) from None
    return nm.CC


def encode_matrix(A) -> dict:
    if isinstance(A, PSL2Element):
        A = A.rep
    return {k: encode_scalar(v) for k, v in zip("abcd", A.entries())}


def matrix_entries(obj) -> list:
    if isinstance(obj, dict):
        if set(obj) != set("abcd"):
            raise MalformedJSON("matrix objects need exactly the keys a, b, c, d")
        return [obj[k] for k in "abcd"]
    if isinstance(obj, list) and len(obj) == 2 and all(
        isinstance(r, list) and len(r) == 2 for r in obj
    ):
        return [obj[0][0], obj[0][1], obj[1][0], obj[1][1]]
    raise MalformedJSON("a matrix is {a,b,c,d} or [[a,b],[c,d]]")


def decode_matrix(obj, field=None, eps: float = nm.EPS) -> SL2Matrix:
    entries = matrix_entries(obj)
    F = infer_field(entries, field)
    vals = [decode_scalar(e, F) for e in entries]
    return SL2Matrix(*vals, eps=eps)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedJSON(f"invalid JSON: {e.msg} at position {e.pos}") from None


def parse_scalar_text(text: str, field=None):
    """Command-line scalar: JSON if it parses, otherwise a bare literal such as
    '1+i' (float) or '3/2' (exact)."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        obj = text
    return decode_scalar(obj, field)


def decode_group(obj, eps: float = nm.EPS):
    """A GroupSpec from ``{"name", "generators", "names"?, "relators"?,
    "hypotheses"?, "d"?}``.  Relators may be words in letter or index form."""
    from .kleinian import GroupSpec

    if not isinstance(obj, dict) or "generators" not in obj:
        raise MalformedJSON("group JSON needs a 'generators' list")
    gens = obj["generators"]
    if not isinstance(gens, list) or not gens:
        raise MalformedJSON("'generators' must be a non-empty list")
    field = None
    if "d" in obj:
        try:
            field = QuadraticField(obj["d"])
        except (ValueError, TypeError) as e:
            raise MalformedJSON(str(e)) from None
    else:
        flat = [e for g in gens for e in matrix_entries(g)]
        field = infer_field(flat)
    mats = [PSL2Element(decode_matrix(g, field, eps), eps) for g in gens]
    try:
        G = GroupSpec(
            str(obj.get("name", "custom")),
            mats,
            [],
            obj.get("names"),
            dict(obj.get("hypotheses", {})),
        )
    except ValueError as e:
        raise MalformedJSON(str(e)) from None
    G.relators = [G.parse_word(r) for r in obj.get("relators", [])]
    return G


def encode_group(G) -> dict:
    out = {
        "name": G.name,
        "generators": [encode_matrix(g) for g in G.generators],
        "names": list(G.names),
        "relators": [G.format_word(r) for r in G.relators],
        "hypotheses": dict(G.hypotheses),
    }
    if G.exact:
        out["d"] = G.field.d
    return out
