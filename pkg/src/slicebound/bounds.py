"""Upper bound U, error width Delta, tightness detection, and genus bounds.

For a diagram D with Seifert graph T:

    U(D)     = #nodes(T) - 2 #components(T-) + writhe + 1
    Delta(D) = #nodes(T) - #components(T-) - #components(T+) + 1

U bounds the Rasmussen invariant s from above and U - 2 Delta from below for
connected knot diagrams; Delta vanishes exactly when the bound is tight, which
is guaranteed for positive, negative, and alternating diagrams and for
closures of braid words whose generators each keep a single sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .diagram import ConsistencyError, Diagram, is_alternating, is_negative, is_positive
from .diagram import braid_sign_condition, validate
from .notation import BraidWord
from .seifert import DisconnectedDiagramError, component_count, oriented_resolution, seifert_graph


def bound_U(d: Diagram) -> int:
    """Diagram-dependent upper bound for s; even for connected knot diagrams."""
    g = seifert_graph(d)
    return g.node_count - 2 * component_count(g, -1) + d.writhe + 1


def bound_Delta(d: Diagram) -> int:
    """Error width of the bound; >= 0 for connected diagrams."""
    g = seifert_graph(d)
    return g.node_count - component_count(g, -1) - component_count(g, +1) + 1


def _tightness_flags(d: Diagram, braid: Optional[BraidWord]) -> dict[str, Optional[bool]]:
    return {
        "positive": is_positive(d),
        "negative": is_negative(d),
        "alternating": is_alternating(d),
        "braid_sign_condition": braid_sign_condition(braid) if braid is not None else None,
    }


def _check_tightness(d: Diagram, delta: int, braid: Optional[BraidWord]) -> bool:
    """True when a tightness class applies.  Connected diagrams in such a
    class must have Delta = 0; a violation is a proved-theorem failure."""
    flags = _tightness_flags(d, braid)
    fired = any(v for v in flags.values() if v)
    if fired and d.is_connected and delta != 0:
        which = [k for k, v in flags.items() if v]
        raise ConsistencyError(
            f"diagram is {'/'.join(which)} but Delta = {delta} != 0"
        )
    return fired


def s_window(d: Diagram, braid: Optional[BraidWord] = None) -> tuple[int, int, Optional[int]]:
    """(U - 2 Delta, U, exact) for a connected knot diagram.

    ``exact`` is U when Delta = 0; tightness classes imply Delta = 0 and are
    verified rather than trusted.  Rejects links and split diagrams.
    """
    if not d.is_connected:
        raise DisconnectedDiagramError("s window needs a connected diagram")
    if not d.is_knot:
        raise ValueError(f"s window is for knots; diagram has {d.components} components")
    u = bound_U(d)
    delta = bound_Delta(d)
    _check_tightness(d, delta, braid)
    exact = u if delta == 0 else None
    return u - 2 * delta, u, exact


def genus_bound_knot(d: Diagram) -> Fraction:
    """Slice-genus lower bound (writhe - #circles + 2 #components(T+) - 1)/2."""
    if not d.is_connected:
        raise DisconnectedDiagramError("genus bound needs a connected diagram")
    if not d.is_knot:
        raise ValueError(f"knot genus bound is for knots; diagram has {d.components} components")
    g = seifert_graph(d)
    return Fraction(d.writhe - g.node_count + 2 * component_count(g, +1) - 1, 2)


def genus_bound_link(d: Diagram) -> Fraction:
    """Slice-genus lower bound for an r-component link diagram.

    Uses g*(L) = G(L) + 1/2 - r/2 with G the genus of a connected
    minimal-genus surface; reduces to the knot bound at r = 1.
    """
    if not d.is_connected:
        raise DisconnectedDiagramError("genus bound needs a connected diagram")
    g = seifert_graph(d)
    r = d.components
    return Fraction(d.writhe - g.node_count + 2 * component_count(g, +1) - 2 * r + 1, 2)


def classic_bennequin(d: Diagram) -> Fraction:
    """Slice-Bennequin baseline (writhe - #circles + 1)/2 for comparison."""
    if not d.is_connected:
        raise DisconnectedDiagramError("genus bound needs a connected diagram")
    if not d.is_knot:
        raise ValueError(f"classic bound is for knots; diagram has {d.components} components")
    return Fraction(d.writhe - oriented_resolution(d).count + 1, 2)


@dataclass(frozen=True)
class BoundsReport:
    """All computed bounds and flags for one diagram.

    For split diagrams the s fields and genus bounds are None (U - 2 Delta
    has no s meaning there and Delta may be negative); U and Delta are always
    the literal formula values.  s_exact is only ever claimed for knots.
    """

    U: int
    Delta: int
    s_lower: Optional[int]
    s_upper: Optional[int]
    s_exact: Optional[int]
    genus_bound_new: Optional[Fraction]
    genus_bound_classic: Optional[Fraction]
    positive: bool
    negative: bool
    alternating: bool
    braid_sign_condition: Optional[bool]
    connected: bool
    is_knot: bool


def bounds_report(d: Diagram, braid: Optional[BraidWord] = None) -> BoundsReport:
    """Evaluate every bound with per-field gating; raises only on invalid input."""
    validate(d)
    u = bound_U(d)
    delta = bound_Delta(d)
    flags = _tightness_flags(d, braid)
    connected = d.is_connected
    knot = d.is_knot

    s_lower = s_upper = s_exact = None
    genus_new = genus_classic = None
    if connected:
        _check_tightness(d, delta, braid)
        s_lower, s_upper = u - 2 * delta, u
        genus_new = genus_bound_link(d)
        if knot:
            genus_classic = classic_bennequin(d)
            if delta == 0:
                s_exact = u

    return BoundsReport(
        U=u,
        Delta=delta,
        s_lower=s_lower,
        s_upper=s_upper,
        s_exact=s_exact,
        genus_bound_new=genus_new,
        genus_bound_classic=genus_classic,
        positive=bool(flags["positive"]),
        negative=bool(flags["negative"]),
        alternating=bool(flags["alternating"]),
        braid_sign_condition=flags["braid_sign_condition"],
        connected=connected,
        is_knot=knot,
    )


def _fraction_str(x: Optional[Fraction]) -> Optional[str]:
    if x is None:
        return None
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def report_json_dict(report: BoundsReport) -> dict:
    """Stable JSON object; field order fixed, rationals as exact strings."""
    return {
        "U": report.U,
        "Delta": report.Delta,
        "s_lower": report.s_lower,
        "s_upper": report.s_upper,
        "s_exact": report.s_exact,
        "genus_bound_new": _fraction_str(report.genus_bound_new),
        "genus_bound_classic": _fraction_str(report.genus_bound_classic),
        "flags": {
            "positive": report.positive,
            "negative": report.negative,
            "alternating": report.alternating,
            "braid_sign_condition": report.braid_sign_condition,
            "connected": report.connected,
            "is_knot": report.is_knot,
        },
    }
