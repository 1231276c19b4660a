"""Oriented link diagram model and elementary combinatorial queries.

A diagram is a set of signed crossings over abstract edge ids plus optional
crossingless components (free loops).  Each crossing stores its four edge ids
counterclockwise starting at the incoming under-strand edge, so orientation
data is carried by the tuples themselves:

    (a, b, c, d)   under-strand runs a -> c
                   over-strand runs d -> b at a positive crossing,
                                    b -> d at a negative crossing
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Iterator

if TYPE_CHECKING:
    from .notation import BraidWord


class ValidationError(ValueError):
    """A diagram (or parsed value) violates a structural invariant."""


class ConsistencyError(RuntimeError):
    """An internal cross-check that is a proved theorem failed; indicates a bug."""


@dataclass(frozen=True)
class Crossing:
    """One crossing: edge ids counterclockwise from the incoming under-strand."""

    edges: tuple[int, int, int, int]
    sign: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValidationError(f"crossing sign must be +1 or -1, got {self.sign}")
        if len(self.edges) != 4 or any(e < 1 for e in self.edges):
            raise ValidationError(f"crossing needs 4 positive edge ids, got {self.edges}")

    @property
    def under_in(self) -> int:
        return self.edges[0]

    @property
    def under_out(self) -> int:
        return self.edges[2]

    @property
    def over_in(self) -> int:
        return self.edges[3] if self.sign > 0 else self.edges[1]

    @property
    def over_out(self) -> int:
        return self.edges[1] if self.sign > 0 else self.edges[3]


@dataclass(frozen=True)
class Diagram:
    """Oriented diagram of a knot or link.

    ``free_loops`` lists one edge id per crossingless component, so closures
    of trivial braid words round-trip.  Derived quantities are cached; the
    value itself is immutable and safe to share between tasks.
    """

    crossings: tuple[Crossing, ...]
    free_loops: tuple[int, ...] = ()

    @cached_property
    def n_plus(self) -> int:
        return sum(1 for c in self.crossings if c.sign > 0)

    @cached_property
    def n_minus(self) -> int:
        return len(self.crossings) - self.n_plus

    @property
    def writhe(self) -> int:
        return self.n_plus - self.n_minus

    @cached_property
    def edge_ids(self) -> tuple[int, ...]:
        seen: set[int] = set(self.free_loops)
        for c in self.crossings:
            seen.update(c.edges)
        return tuple(sorted(seen))

    @cached_property
    def successor(self) -> dict[int, int]:
        """Next edge along each oriented strand (free loops map to themselves)."""
        succ: dict[int, int] = {e: e for e in self.free_loops}
        for c in self.crossings:
            succ[c.under_in] = c.under_out
            succ[c.over_in] = c.over_out
        return succ

    @cached_property
    def components(self) -> int:
        """Number of link components (cycles of the strand successor map)."""
        succ = self.successor
        seen: set[int] = set()
        count = 0
        for start in self.edge_ids:
            if start in seen:
                continue
            count += 1
            e = start
            while e not in seen:
                seen.add(e)
                e = succ[e]
        return count

    @cached_property
    def is_connected(self) -> bool:
        """True when the underlying 4-valent picture is a single piece."""
        ids = self.edge_ids
        index = {e: i for i, e in enumerate(ids)}
        parent = list(range(len(ids)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c in self.crossings:
            r = find(index[c.edges[0]])
            for e in c.edges[1:]:
                r2 = find(index[e])
                parent[r2] = r
                r = find(r)
        return len({find(i) for i in range(len(ids))}) == 1

    @property
    def is_knot(self) -> bool:
        return self.components == 1

    def __iter__(self) -> Iterator[Crossing]:
        return iter(self.crossings)


def validate(d: Diagram) -> None:
    """Check all structural invariants, reporting the first offender.

    Idempotent; raises ValidationError naming the offending edge or crossing.
    """
    if not d.crossings and not d.free_loops:
        raise ValidationError("empty diagram: no crossings and no free loops")
    if len(set(d.free_loops)) != len(d.free_loops):
        raise ValidationError("duplicate free-loop edge id")

    incidences: dict[int, int] = {}
    for c in d.crossings:
        for e in c.edges:
            incidences[e] = incidences.get(e, 0) + 1
    for e in d.free_loops:
        if e in incidences:
            raise ValidationError(f"edge {e} is both a free loop and a crossing edge")
    for e, n in incidences.items():
        if n != 2:
            raise ValidationError(f"edge {e} has {n} crossing incidences, expected 2")

    # Strand continuity: every crossing edge heads exactly one passage and
    # tails exactly one, so the successor map is a permutation.
    heads: dict[int, int] = {}
    tails: dict[int, int] = {}
    for i, c in enumerate(d.crossings):
        for e_in, e_out in ((c.under_in, c.under_out), (c.over_in, c.over_out)):
            heads[e_out] = heads.get(e_out, 0) + 1
            tails[e_in] = tails.get(e_in, 0) + 1
    for e in incidences:
        if heads.get(e, 0) != 1:
            raise ValidationError(f"edge {e} is entered by {heads.get(e, 0)} strand passages, expected 1")
        if tails.get(e, 0) != 1:
            raise ValidationError(f"edge {e} starts {tails.get(e, 0)} strand passages, expected 1")

    sign_count = d.n_plus + d.n_minus
    if sign_count != len(d.crossings):  # pragma: no cover - arithmetic identity
        raise ValidationError("sign bookkeeping mismatch")


def mirror(d: Diagram) -> Diagram:
    """Mirror image: every crossing switched, writhe negated, circles kept.

    With the shadow fixed and over/under exchanged, the tuple rotates so the
    old over-in edge becomes the incoming under-strand.
    """
    flipped = []
    for c in d.crossings:
        a, b, cc, dd = c.edges
        if c.sign > 0:
            flipped.append(Crossing((dd, a, b, cc), -1))
        else:
            flipped.append(Crossing((b, cc, dd, a), +1))
    return Diagram(tuple(flipped), d.free_loops)


def is_positive(d: Diagram) -> bool:
    """True iff the diagram has no negative crossings (0 crossings counts)."""
    return d.n_minus == 0


def is_negative(d: Diagram) -> bool:
    """True iff the diagram has no positive crossings (0 crossings counts)."""
    return d.n_plus == 0


def is_alternating(d: Diagram) -> bool:
    """True iff crossings alternate over/under along every strand.

    Equivalent edge-local criterion: each crossing edge occupies exactly one
    under-strand slot (positions 0 and 2 of a tuple) among its two incidences.
    Crossingless components are vacuously alternating.  No reducedness check
    is made; nugatory crossings are evaluated literally.
    """
    under_slots: dict[int, int] = {}
    for c in d.crossings:
        for pos, e in enumerate(c.edges):
            if pos in (0, 2):
                under_slots[e] = under_slots.get(e, 0) + 1
            else:
                under_slots.setdefault(e, 0)
    return all(n == 1 for n in under_slots.values())


def braid_sign_condition(w: "BraidWord") -> bool:
    """True iff every braid generator occurs with a single sign throughout.

    Closures of such words (when knots) realize the tight case of the upper
    bound.  Vacuously true for the empty word; invariant under flipping all
    letter signs.
    """
    sign_of: dict[int, int] = {}
    for letter in w.letters:
        idx = abs(letter)
        s = 1 if letter > 0 else -1
        if sign_of.setdefault(idx, s) != s:
            return False
    return True
