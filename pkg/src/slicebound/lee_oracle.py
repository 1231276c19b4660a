"""Exact Rasmussen-invariant oracle via the filtered Lee complex.

Only the homological slice -1, 0, 1 of the cube of resolutions is built: the
degree-0 homology of the Lee complex of a knot diagram is 2-dimensional, and
the invariant is read off the quantum filtration level of the canonical
degree-0 cycles inside C^0 / im(d_-1).

Conventions (calibrated so the 0-crossing unknot has gradings {-1, +1} and
s(unknot) = 0):

* cube vertex v is a bitmask over crossings; bit i = 1 takes the smoothing
  pairing {a,d},{b,c} at crossing i, bit 0 takes {a,b},{c,d};
* homological degree of v is |v| - n_minus; the oriented resolution sits at
  the mask with bits set exactly at negative crossings;
* a generator labels each circle of its resolution with v_plus or v_minus;
  q = (#v_plus - #v_minus) + |v| + n_plus - 2 n_minus;
* the differential merges with v_minus * v_minus = v_plus (so a merge XORs
  label bits) and splits with Delta(v_plus) = v_plus v_minus + v_minus v_plus,
  Delta(v_minus) = v_minus v_minus + v_plus v_plus, all unit coefficients
  times the cube edge sign (-1)^(set bits below the flipped one).

Coefficients are exact: matrices live over the integers and columns are kept
primitive (gcd-stripped) through elimination, which is equivalent to working
over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Optional

from .diagram import ConsistencyError, Diagram, validate
from .seifert import UnionFind, oriented_resolution, seifert_graph, two_coloring


class CrossingLimitError(ValueError):
    """Refusal to build a complex beyond the configured crossing limit."""


DEFAULT_MAX_CROSSINGS = 12


@dataclass(frozen=True)
class _Circles:
    """Circles of one cube resolution, ids ordered by minimum edge id."""

    circle_of_edge: dict[int, int]
    count: int
    reps: tuple[int, ...]  # minimum edge id of each circle


def _vertex_circles(d: Diagram, mask: int) -> _Circles:
    ids = d.edge_ids
    index = {e: i for i, e in enumerate(ids)}
    uf = UnionFind(len(ids))
    for i, c in enumerate(d.crossings):
        a, b, cc, dd = c.edges
        if mask >> i & 1:
            uf.union(index[a], index[dd])
            uf.union(index[b], index[cc])
        else:
            uf.union(index[a], index[b])
            uf.union(index[cc], index[dd])
    min_edge: dict[int, int] = {}
    for e in ids:
        root = uf.find(index[e])
        if root not in min_edge or e < min_edge[root]:
            min_edge[root] = e
    reps = sorted(min_edge.values())
    circle_id = {e: i for i, e in enumerate(reps)}
    circle_of_edge = {e: circle_id[min_edge[uf.find(index[e])]] for e in ids}
    return _Circles(circle_of_edge, len(reps), tuple(reps))


@dataclass
class LeeComplexSlice:
    """Filtered chain groups in homological degrees -1, 0, 1.

    Generators of degree i are (vertex mask, label mask) pairs with
    |mask| = n_minus + i; label bit j = 1 labels circle j with v_minus.
    ``d_in`` maps C^-1 -> C^0 and ``d_out`` maps C^0 -> C^1, stored one
    sparse integer column per source generator keyed by target index.
    """

    diagram: Diagram
    n_plus: int
    n_minus: int
    oriented_mask: int
    vertices: dict[int, tuple[int, ...]]  # degree -> sorted vertex masks
    offsets: dict[int, dict[int, int]]  # degree -> {mask: first generator index}
    circles: dict[int, _Circles]  # vertex mask -> circle data
    gradings: dict[int, tuple[int, ...]]  # degree -> q per generator
    d_in: tuple[dict[int, int], ...]
    d_out: tuple[dict[int, int], ...]

    def dim(self, degree: int) -> int:
        return len(self.gradings[degree])

    def gen_index(self, degree: int, mask: int, label_mask: int) -> int:
        return self.offsets[degree][mask] + label_mask


def _grade(labels: int, k: int, mask: int, n_plus: int, n_minus: int) -> int:
    return (k - 2 * labels.bit_count()) + mask.bit_count() + n_plus - 2 * n_minus


def _build_matrix(
    d: Diagram,
    sources: tuple[int, ...],
    src_offsets: dict[int, int],
    tgt_offsets: dict[int, int],
    circles: dict[int, _Circles],
) -> list[dict[int, int]]:
    n = len(d.crossings)
    total = sum(1 << circles[m].count for m in sources)
    cols: list[dict[int, int]] = [dict() for _ in range(total)]
    for m in sources:
        ca = circles[m]
        base = src_offsets[m]
        for i in range(n):
            if m >> i & 1:
                continue
            m2 = m | 1 << i
            if m2 not in tgt_offsets:
                continue
            sign = -1 if (m & ((1 << i) - 1)).bit_count() % 2 else 1
            cb = circles[m2]
            tbase = tgt_offsets[m2]
            a, b, _, _ = d.crossings[i].edges
            src_a = ca.circle_of_edge[a]
            if cb.count == ca.count - 1:
                # merge: the two circles at crossing i join; label bits XOR
                src_c = ca.circle_of_edge[d.crossings[i].edges[2]]
                tgt_of = [cb.circle_of_edge[rep] for rep in ca.reps]
                merged = tgt_of[src_a]
                for label in range(1 << ca.count):
                    out = 0
                    merged_bit = 0
                    for j in range(ca.count):
                        bit = label >> j & 1
                        if j == src_a or j == src_c:
                            merged_bit ^= bit
                        elif bit:
                            out |= 1 << tgt_of[j]
                    out |= merged_bit << merged
                    col = cols[base + label]
                    tgt = tbase + out
                    col[tgt] = col.get(tgt, 0) + sign
            elif cb.count == ca.count + 1:
                # split: circle through crossing i divides into two children
                t1 = cb.circle_of_edge[a]
                t2 = cb.circle_of_edge[b]
                tgt_of = [
                    cb.circle_of_edge[rep] if j != src_a else -1
                    for j, rep in enumerate(ca.reps)
                ]
                for label in range(1 << ca.count):
                    out = 0
                    for j in range(ca.count):
                        if j != src_a and label >> j & 1:
                            out |= 1 << tgt_of[j]
                    col = cols[base + label]
                    if label >> src_a & 1:
                        # Delta(v_minus) = v_minus v_minus + v_plus v_plus
                        terms = (out | 1 << t1 | 1 << t2, out)
                    else:
                        # Delta(v_plus) = v_plus v_minus + v_minus v_plus
                        terms = (out | 1 << t2, out | 1 << t1)
                    for out_label in terms:
                        tgt = tbase + out_label
                        col[tgt] = col.get(tgt, 0) + sign
            else:
                raise ConsistencyError(
                    f"resolution change at crossing {i} is not a merge or split; "
                    "diagram data is not planar"
                )
    return cols


def build_slice(d: Diagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> LeeComplexSlice:
    """Construct bases and both differentials for a connected knot diagram.

    Refuses diagrams beyond ``max_crossings`` (the degree-0 vertex count is
    C(n, n_minus) and every vertex carries 2^circles generators).
    """
    validate(d)
    if not d.is_connected or not d.is_knot:
        raise ValueError("Lee complex slice needs a connected knot diagram")
    n = len(d.crossings)
    if n > max_crossings:
        raise CrossingLimitError(
            f"{n} crossings exceeds the configured limit {max_crossings}"
        )
    n_minus = d.n_minus
    oriented_mask = 0
    for i, c in enumerate(d.crossings):
        if c.sign < 0:
            oriented_mask |= 1 << i

    vertices: dict[int, tuple[int, ...]] = {}
    for degree in (-1, 0, 1):
        weight = n_minus + degree
        if 0 <= weight <= n:
            masks = sorted(
                sum(1 << i for i in combo) for combo in combinations(range(n), weight)
            )
        else:
            masks = []
        vertices[degree] = tuple(masks)

    circles: dict[int, _Circles] = {}
    offsets: dict[int, dict[int, int]] = {}
    gradings: dict[int, tuple[int, ...]] = {}
    for degree in (-1, 0, 1):
        off: dict[int, int] = {}
        grades: list[int] = []
        pos = 0
        for m in vertices[degree]:
            data = circles.setdefault(m, _vertex_circles(d, m))
            off[m] = pos
            pos += 1 << data.count
            for label in range(1 << data.count):
                grades.append(_grade(label, data.count, m, d.n_plus, n_minus))
        offsets[degree] = off
        gradings[degree] = tuple(grades)

    d_in = _build_matrix(d, vertices[-1], offsets[-1], offsets[0], circles)
    d_out = _build_matrix(d, vertices[0], offsets[0], offsets[1], circles)

    slice_ = LeeComplexSlice(
        diagram=d,
        n_plus=d.n_plus,
        n_minus=n_minus,
        oriented_mask=oriented_mask,
        vertices=vertices,
        offsets=offsets,
        circles=circles,
        gradings=gradings,
        d_in=tuple(d_in),
        d_out=tuple(d_out),
    )
    _check_slice(slice_)
    return slice_


def _check_slice(s: LeeComplexSlice) -> None:
    """Always-on structural checks: filtered columns and d_out . d_in = 0."""
    for src_deg, cols in ((-1, s.d_in), (0, s.d_out)):
        src_q = s.gradings[src_deg]
        tgt_q = s.gradings[src_deg + 1]
        for j, col in enumerate(cols):
            for t in col:
                if tgt_q[t] - src_q[j] not in (0, 4):
                    raise ConsistencyError(
                        f"differential is not filtered: {src_q[j]} -> {tgt_q[t]}"
                    )
    for j, col in enumerate(s.d_in):
        acc: dict[int, int] = {}
        for t, coeff in col.items():
            for t2, c2 in s.d_out[t].items():
                v = acc.get(t2, 0) + coeff * c2
                if v:
                    acc[t2] = v
                else:
                    acc.pop(t2, None)
        if acc:
            raise ConsistencyError("d_out . d_in != 0")


@dataclass(frozen=True)
class CanonicalCycle:
    """A canonical degree-0 cycle: each circle labeled v_minus +- v_plus.

    ``classes[j]`` is 0 for the (v_minus + v_plus) label on circle j and 1
    for (v_minus - v_plus); ``coefficients`` is its expansion over the
    degree-0 generator basis.  min_q = -#circles + writhe on every diagram.
    """

    coefficients: dict[int, int]
    classes: tuple[int, ...]
    min_q: int


def _expand_cycle(s: LeeComplexSlice, classes: tuple[int, ...]) -> CanonicalCycle:
    data = s.circles[s.oriented_mask]
    base = s.offsets[0][s.oriented_mask]
    k = data.count
    coeffs: dict[int, int] = {}
    for label in range(1 << k):
        sign = 1
        for j in range(k):
            if classes[j] == 1 and not label >> j & 1:
                sign = -sign
        coeffs[base + label] = sign
    min_q = min(s.gradings[0][i] for i in coeffs)
    return CanonicalCycle(coeffs, classes, min_q)


def _boundary(cols: tuple[dict[int, int], ...], vec: dict[int, int]) -> dict[int, int]:
    acc: dict[int, int] = {}
    for j, coeff in vec.items():
        for t, c in cols[j].items():
            v = acc.get(t, 0) + coeff * c
            if v:
                acc[t] = v
            else:
                acc.pop(t, None)
    return acc


def canonical_cycles(
    d: Diagram,
    slice_: Optional[LeeComplexSlice] = None,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
) -> tuple[CanonicalCycle, CanonicalCycle]:
    """The two canonical cycles, labels assigned by the Seifert-graph
    2-coloring (adjacent circles take opposite classes).

    Closedness under d_out is verified exactly at construction; which of the
    two is taken as "the" orientation cycle is immaterial for the invariant.
    """
    s = slice_ if slice_ is not None else build_slice(d, max_crossings)
    graph = seifert_graph(d)
    coloring = two_coloring(graph)
    data = s.circles[s.oriented_mask]
    resolution = oriented_resolution(d)
    if resolution.circle_of_edge != data.circle_of_edge:
        raise ConsistencyError("oriented-resolution circles disagree with the cube vertex")

    s_o = _expand_cycle(s, tuple(coloring))
    s_obar = _expand_cycle(s, tuple(1 - c for c in coloring))
    expected_min = -data.count + d.writhe
    for cycle in (s_o, s_obar):
        if _boundary(s.d_out, cycle.coefficients):
            raise ConsistencyError("canonical cycle is not closed; labeling is wrong")
        if cycle.min_q != expected_min:
            raise ConsistencyError(
                f"canonical cycle minimum grading {cycle.min_q} != {expected_min}"
            )
    return s_o, s_obar


# --- exact sparse column elimination -------------------------------------
#
# Columns are dicts keyed by row position under a fixed row order sorted by
# ascending quantum grading; entries are integers and columns stay primitive.
# The pivot of a column is its minimum position, so one echelon pass answers
# every "is v in F^j + span" query: reachable lowest positions are exactly
# the pivot lows.


def _strip(col: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in col.values():
        g = gcd(g, v)
    if g > 1:
        return {p: v // g for p, v in col.items()}
    return col


def _eliminate(col: dict[int, int], piv: dict[int, int], low: int) -> dict[int, int]:
    a, b = col[low], piv[low]
    g = gcd(a, b)
    ca, cb = b // g, a // g
    out = {p: v * ca for p, v in col.items()}
    for p, v in piv.items():
        w = out.get(p, 0) - v * cb
        if w:
            out[p] = w
        else:
            out.pop(p, None)
    return _strip(out)


def _reduce_against(col: dict[int, int], pivots: dict[int, dict[int, int]]) -> dict[int, int]:
    while col:
        low = min(col)
        piv = pivots.get(low)
        if piv is None:
            break
        col = _eliminate(col, piv, low)
    return col


def _column_echelon(columns) -> dict[int, dict[int, int]]:
    pivots: dict[int, dict[int, int]] = {}
    for col in columns:
        red = _reduce_against(dict(col), pivots)
        if red:
            pivots[min(red)] = _strip(red)
    return pivots


def _row_positions(gradings: tuple[int, ...]) -> list[int]:
    """pos[i] = rank of generator i under ascending (grading, index) order."""
    order = sorted(range(len(gradings)), key=lambda i: (gradings[i], i))
    pos = [0] * len(gradings)
    for p, i in enumerate(order):
        pos[i] = p
    return pos


def _to_positions(col: dict[int, int], pos: list[int]) -> dict[int, int]:
    return {pos[i]: v for i, v in col.items()}


def s_invariant(d: Diagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> int:
    """Rasmussen invariant of the knot presented by ``d``: s_min + 1.

    s_min is the largest j with s_o in F^j C^0 + im(d_-1), found by reducing
    the canonical cycle against the grading-ordered column echelon of the
    incoming differential and reading the grading of the surviving lowest
    term.  The result is always even.
    """
    s = build_slice(d, max_crossings)
    s_o, _ = canonical_cycles(d, s)
    q0 = s.gradings[0]
    pos = _row_positions(q0)
    order = sorted(range(len(q0)), key=lambda i: (q0[i], i))

    pivots = _column_echelon(_to_positions(col, pos) for col in s.d_in)
    reduced = _reduce_against(_to_positions(s_o.coefficients, pos), pivots)
    if not reduced:
        raise ConsistencyError("canonical class vanishes in homology")
    s_min = q0[order[min(reduced)]]
    result = s_min + 1
    if result % 2:
        raise ConsistencyError(f"s = {result} is odd; grading bookkeeping is wrong")
    return result


def filtration_profile(
    d: Diagram, max_crossings: int = DEFAULT_MAX_CROSSINGS
) -> dict[int, int]:
    """dim F^j H^0 for each quantum grading j present in C^0, descending.

    dim F^j H^0 = dim(F^j  ker d_0) - dim(F^j  im d_-1); the first term is
    #generators of grading >= j minus the rank of the columns of d_0 of
    grading >= j, the second counts echelon pivots of d_-1 whose low sits in
    grading >= j.  For a knot the profile steps 0 -> 1 -> 2 as j decreases.
    """
    s = build_slice(d, max_crossings)
    q0 = s.gradings[0]
    pos = _row_positions(q0)
    order = sorted(range(len(q0)), key=lambda i: (q0[i], i))

    in_pivots = _column_echelon(_to_positions(col, pos) for col in s.d_in)
    low_grades = sorted(q0[order[low]] for low in in_pivots)

    levels = sorted(set(q0), reverse=True)
    cols_desc = sorted(range(len(q0)), key=lambda j: (-q0[j], j))
    # rank of the restricted map only; row order in C^1 is immaterial here
    pivots: dict[int, dict[int, int]] = {}
    rank_ge: dict[int, int] = {}
    cols_ge: dict[int, int] = {}
    idx = 0
    seen_cols = 0
    for level in levels:
        while idx < len(cols_desc) and q0[cols_desc[idx]] >= level:
            j = cols_desc[idx]
            red = _reduce_against(dict(s.d_out[j]), pivots)
            if red:
                pivots[min(red)] = _strip(red)
            seen_cols += 1
            idx += 1
        rank_ge[level] = len(pivots)
        cols_ge[level] = seen_cols

    profile: dict[int, int] = {}
    prev = 0
    for level in levels:
        ker = cols_ge[level] - rank_ge[level]
        im = sum(1 for g in low_grades if g >= level)
        dim = ker - im
        if dim < prev or dim > 2:
            raise ConsistencyError(f"filtration profile is not a 0/1/2 staircase: {dim} at {level}")
        profile[level] = dim
        prev = dim
    if prev != 2:
        raise ConsistencyError(f"dim H^0 = {prev}, expected 2 for a knot")
    return profile


def profile_jumps(profile: dict[int, int]) -> tuple[int, int]:
    """(j2, j1): largest gradings with dim >= 2 and dim >= 1; j1 - j2 = 2.

    These bracket the invariant: s = j2 + 1 = j1 - 1.
    """
    j1 = max(j for j, dim in profile.items() if dim >= 1)
    j2 = max(j for j, dim in profile.items() if dim >= 2)
    if j1 - j2 != 2:
        raise ConsistencyError(f"filtration jump gap is {j1 - j2}, expected 2")
    return j2, j1
