"""Parsing and generation of diagram descriptions.

Two text grammars are accepted:

* planar diagram codes, ``X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]`` or the bracketed
  ``PD[X[...], X[...]]`` form (whitespace-insensitive, commas and brackets
  interchangeable with the space-separated form);
* braid words, ``"3: [1,-2,1,-2]"`` - strand count, then letters where k
  stands for the generator sigma_|k| with the sign of k.

A PD tuple (a,b,c,d) is read counterclockwise starting at the incoming
under-strand edge a.  Edge labels along each component are consecutive
integers wrapping at the component's maximum label; crossing signs are derived
from that convention, never stored in the text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .diagram import Crossing, Diagram, ValidationError


class ParseError(ValueError):
    """Malformed input text (syntax level)."""


@dataclass(frozen=True)
class BraidWord:
    """A word in the braid group on ``strands`` strands.

    Letter k with 0 < |k| < strands means sigma_|k| to the power sign(k).
    The empty word is allowed; its closure is the unlink on ``strands``
    components.
    """

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise ValidationError(f"strand count must be >= 1, got {self.strands}")
        for letter in self.letters:
            if letter == 0:
                raise ValidationError("braid letter 0 is invalid")
            if abs(letter) >= self.strands:
                raise ValidationError(
                    f"letter {letter} needs at least {abs(letter) + 1} strands, word has {self.strands}"
                )


@dataclass(frozen=True)
class PdCode:
    """A planar diagram code: one 4-tuple of edge labels per crossing."""

    crossings: tuple[tuple[int, int, int, int], ...]


def parse_braid(text: str) -> BraidWord:
    """Parse ``"strands: [k1,k2,...]"`` into a validated BraidWord."""
    if not text or not text.strip():
        raise ParseError("empty braid text")
    m = re.fullmatch(r"\s*(\d+)\s*:\s*\[([-+,\d\s]*)\]\s*", text)
    if not m:
        raise ParseError(f"braid text not of the form 'n: [i,j,...]': {text!r}")
    strands = int(m.group(1))
    body = m.group(2).strip()
    letters: tuple[int, ...] = ()
    if body:
        try:
            letters = tuple(int(tok) for tok in body.split(","))
        except ValueError as exc:
            raise ParseError(f"bad braid letter in {text!r}") from exc
    return BraidWord(strands, letters)


def braid_text(w: BraidWord) -> str:
    """Inverse of parse_braid."""
    return f"{w.strands}: [{','.join(str(k) for k in w.letters)}]"


_PD_TUPLE = re.compile(r"X\s*\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]")


def parse_pd(text: str) -> PdCode:
    """Parse PD text into a validated PdCode.

    Raises ParseError for malformed text and ValidationError for codes that
    are grammatical but not a coherent diagram (label used != 2 times,
    incoherent strand cycles).
    """
    if not text or not text.strip():
        raise ParseError("empty PD text")
    body = text.strip()
    if body.startswith("PD[") and body.endswith("]"):
        body = body[3:-1]
    tuples = []
    matched_spans = []
    for m in _PD_TUPLE.finditer(body):
        tuples.append(tuple(int(g) for g in m.groups()))
        matched_spans.append(m.span())
    leftover = body
    for start, end in reversed(matched_spans):
        leftover = leftover[:start] + leftover[end:]
    if re.sub(r"[\s,]", "", leftover):
        raise ParseError(f"unparsable PD fragment: {leftover.strip()!r}")
    if not tuples:
        raise ParseError("PD text contains no crossings")
    code = PdCode(tuple(tuples))
    diagram_from_pd(code)  # semantic validation
    return code


def pd_text(code: PdCode) -> str:
    """Inverse of parse_pd (canonical space-separated form)."""
    return " ".join("X[%d,%d,%d,%d]" % t for t in code.crossings)


def diagram_from_pd(code: PdCode) -> Diagram:
    """Compile a PD code into an oriented Diagram, deriving crossing signs.

    The under-strand of (a,b,c,d) runs a -> c.  The over-strand direction
    between b and d follows the consecutive-label convention: the smaller
    label precedes when they differ by one, otherwise the passage wraps from
    the component maximum to its minimum.  On 2-edge components both readings
    are grammatical, so locally ambiguous passages are flipped until every
    edge is entered exactly once; the resulting cycles are then checked to be
    consecutive runs.  For knot codes the reading is unique; for links where
    one 2-edge component passes over another component twice, the text cannot
    distinguish which crossing is which and the flip order (crossing index
    ascending) decides deterministically.
    """
    counts: dict[int, int] = {}
    for t in code.crossings:
        for e in t:
            counts[e] = counts.get(e, 0) + 1
    for e, n in sorted(counts.items()):
        if n != 2:
            raise ValidationError(f"edge label {e} occurs {n} times, expected 2")

    unders = [(t[0], t[2]) for t in code.crossings]
    overs = []
    flippable = []
    for i, t in enumerate(code.crossings):
        b, d = t[1], t[3]
        if abs(b - d) == 1:
            overs.append((min(b, d), max(b, d)))
            flippable.append(i)
        else:
            overs.append((max(b, d), min(b, d)))  # wraparound: component max -> min

    for _ in range(len(code.crossings) + 1):
        entered: dict[int, int] = {}
        for _, h in unders + overs:
            entered[h] = entered.get(h, 0) + 1
        changed = False
        for i in flippable:
            tail, head = overs[i]
            if entered.get(head, 0) > 1 and entered.get(tail, 0) == 0:
                overs[i] = (head, tail)
                entered[head] -= 1
                entered[tail] = entered.get(tail, 0) + 1
                changed = True
        if not changed:
            break

    succ: dict[int, int] = {}
    entered = {}
    for tail, head in unders + overs:
        if tail in succ:
            raise ValidationError(f"edge {tail} starts two strand passages; incoherent cycles")
        succ[tail] = head
        entered[head] = entered.get(head, 0) + 1
    for e in counts:
        if entered.get(e, 0) != 1:
            raise ValidationError(f"edge {e} is entered {entered.get(e, 0)} times; incoherent cycles")

    # Each component must be a consecutive run lo, lo+1, ..., hi, wrapping to lo.
    seen: set[int] = set()
    for start in sorted(counts):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        e = succ[start]
        while e != start:
            cycle.append(e)
            seen.add(e)
            e = succ[e]
        lo = min(cycle)
        if cycle[cycle.index(lo):] + cycle[: cycle.index(lo)] != list(range(lo, lo + len(cycle))):
            raise ValidationError(
                f"component containing edge {lo} is not a consecutive label run; incoherent cycles"
            )

    crossings = []
    for i, t in enumerate(code.crossings):
        b, d = t[1], t[3]
        sign = 1 if overs[i] == (d, b) else -1
        crossings.append(Crossing(t, sign))
    return Diagram(tuple(crossings))


def pd_code(d: Diagram) -> PdCode:
    """Export a diagram as a PD code, relabeling edges consecutively.

    Components are numbered in order of their smallest original edge id.
    Diagrams with free loops have no PD representation and are rejected.
    """
    if d.free_loops:
        raise ValidationError("crossingless components cannot be expressed as PD text")
    succ = d.successor
    label: dict[int, int] = {}
    next_label = 1
    for start in d.edge_ids:
        if start in label:
            continue
        e = start
        while e not in label:
            label[e] = next_label
            next_label += 1
            e = succ[e]
    return PdCode(tuple(tuple(label[e] for e in c.edges) for c in d.crossings))


def braid_closure(w: BraidWord) -> Diagram:
    """Close a braid word into an oriented diagram.

    One crossing per letter, sign equal to the letter sign; strands of a
    trivial word close into free loops.  The closure of the empty word on n
    strands is the n-component unlink.
    """
    n = w.strands
    cur = {p: p for p in range(1, n + 1)}
    touched = {p: False for p in range(1, n + 1)}
    next_id = n + 1
    crossings: list[Crossing] = []
    for letter in w.letters:
        k = abs(letter)
        in_left, in_right = cur[k], cur[k + 1]
        out_left, out_right = next_id, next_id + 1
        next_id += 2
        if letter > 0:
            # under-strand enters bottom-right; counterclockwise from it:
            crossings.append(Crossing((in_right, out_right, out_left, in_left), +1))
        else:
            crossings.append(Crossing((in_left, in_right, out_right, out_left), -1))
        cur[k], cur[k + 1] = out_left, out_right
        touched[k] = touched[k + 1] = True

    rename = {cur[p]: p for p in range(1, n + 1) if touched[p]}
    renamed = tuple(
        Crossing(tuple(rename.get(e, e) for e in c.edges), c.sign) for c in crossings
    )
    loops = tuple(p for p in range(1, n + 1) if not touched[p])
    return Diagram(renamed, loops)


def _splitmix64(state: int):
    """SplitMix64 stream (Steele-Lea-Flood finalizer); fixed so corpora are
    reproducible bit-for-bit across implementations."""
    mask = (1 << 64) - 1
    while True:
        state = (state + 0x9E3779B97F4A7C15) & mask
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
        yield z ^ (z >> 31)


def _uniform(stream, m: int) -> int:
    """Unbiased draw from range(m) by rejection on the top partial block."""
    limit = (1 << 64) - ((1 << 64) % m)
    while True:
        v = next(stream)
        if v < limit:
            return v % m


def random_braid(strands: int, length: int, seed: int) -> BraidWord:
    """Deterministic braid word with letters uniform over +-{1..strands-1}.

    Pure function of (strands, length, seed); the PRNG is SplitMix64 seeded
    with ``seed`` so any implementation of the stream reproduces the corpus.
    """
    if strands < 2:
        raise ValidationError(f"random_braid needs >= 2 strands, got {strands}")
    if length < 0:
        raise ValidationError(f"length must be >= 0, got {length}")
    stream = _splitmix64(seed & ((1 << 64) - 1))
    m = 2 * (strands - 1)
    letters = []
    for _ in range(length):
        k = _uniform(stream, m)
        gen = k // 2 + 1
        letters.append(gen if k % 2 == 0 else -gen)
    return BraidWord(strands, tuple(letters))
