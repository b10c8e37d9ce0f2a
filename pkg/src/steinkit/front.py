"""Fronts of Legendrian links in standard position, combinatorially.

A front is a word of events read left to right across a rectangular box:
L(p) opens a left cusp whose branches appear at heights p, p+1, R(p)
closes a right cusp on the strands at heights p, p+1, and X(p) crosses
the strands at heights p, p+1 (the strand from the upper left has the
more negative slope, so crossings carry no extra decoration).  Strands
may leave the box on the right edge and re-enter at the same height on
the left edge; consecutive edge heights are grouped into the attaching
balls of 1-handles.

Everything here is exact integer combinatorics: cycle tracing, writhe,
Thurston-Bennequin and rotation numbers, handle run counts, the local
moves 1-6, stabilisation, and conversion to a surgery presentation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .numerics import ExtRational, parse_rational, rat
from .presentation import SurgeryPresentation

STEIN = "stein"  # symbolic coefficient: resolve to tb - 1 at surgery time


class FrontError(ValueError):
    pass


@dataclass(frozen=True)
class Event:
    kind: str  # "L", "R" or "X"
    pos: int  # height of the upper strand involved, 1 = topmost

    def __post_init__(self):
        if self.kind not in ("L", "R", "X"):
            raise FrontError(f"unknown event kind {self.kind!r}")
        if self.pos < 1:
            raise FrontError(f"event position {self.pos} must be at least 1")

    def __str__(self) -> str:
        return f"{self.kind}{self.pos}"


_EVENT_RE = re.compile(r"^([LRX])([0-9]+)$")


def parse_event_word(text: str) -> tuple[Event, ...]:
    """Parse a whitespace separated event word like 'L1 L3 X2 R2 R1'."""
    events = []
    for token in text.split():
        m = _EVENT_RE.match(token)
        if not m:
            raise FrontError(f"bad event token {token!r}")
        events.append(Event(m.group(1), int(m.group(2))))
    return tuple(events)


@dataclass
class FrontDiagram:
    """A front in a box with 1-handle attaching balls on the side edges.

    slots[h] is the number of strands running through handle h+1; edge
    heights are grouped into balls top to bottom.  orientations maps a
    component id to +1 or -1 (+1 keeps the traced direction, which runs
    rightward at the component's first segment).  coefficients maps a
    component id to a surgery coefficient or the marker STEIN.
    """

    slots: tuple[int, ...]
    events: tuple[Event, ...]
    orientations: dict[int, int] = field(default_factory=dict)
    coefficients: dict[int, object] = field(default_factory=dict)

    def __post_init__(self):
        self.slots = tuple(self.slots)
        self.events = tuple(self.events)
        validate(self)

    @property
    def n_handles(self) -> int:
        return len(self.slots)

    @property
    def n_strands(self) -> int:
        return sum(self.slots)

    def orientation(self, component: int) -> int:
        return self.orientations.get(component, 1)


def boundary_counts(d: FrontDiagram) -> list[int]:
    """Strand count at every column boundary, failing on invalid words."""
    n = d.n_strands
    counts = [n]
    c = n
    for j, e in enumerate(d.events, start=1):
        if e.kind == "L":
            if not 1 <= e.pos <= c + 1:
                raise FrontError(f"column {j}: L{e.pos} needs position in 1..{c + 1}")
            c += 2
        elif e.kind == "R":
            if not 1 <= e.pos <= c - 1:
                raise FrontError(f"column {j}: R{e.pos} needs two strands at {e.pos}, {e.pos + 1}")
            c -= 2
        else:
            if not 1 <= e.pos <= c - 1:
                raise FrontError(f"column {j}: X{e.pos} needs two strands at {e.pos}, {e.pos + 1}")
        counts.append(c)
    return counts


def validate(d: FrontDiagram):
    for h, s in enumerate(d.slots, start=1):
        if not isinstance(s, int) or s < 0:
            raise FrontError(f"handle {h} has invalid slot count {s!r}")
    counts = boundary_counts(d)
    if counts[-1] != d.n_strands:
        raise FrontError(
            f"word ends with {counts[-1]} strands but the edge carries {d.n_strands}"
        )
    tr = _trace(d)
    for cid, o in d.orientations.items():
        if cid not in tr.ids:
            raise FrontError(f"orientation given for unknown component {cid}")
        if o not in (1, -1):
            raise FrontError(f"orientation of component {cid} must be +1 or -1, got {o!r}")
    for cid, c in d.coefficients.items():
        if cid not in tr.ids:
            raise FrontError(f"coefficient given for unknown component {cid}")
        if c != STEIN and not isinstance(c, ExtRational):
            raise FrontError(f"coefficient of component {cid} must be a rational or 'stein'")


# ---------------------------------------------------------------------------
# cycle tracing

# Nodes are (boundary, height) pairs; boundary 0 is the left edge and
# boundary E the right edge.  Each node lies on exactly two edges: flow
# and crossing edges preserve the traversal direction, a cusp edge joins
# the two branches of a cusp and reverses it, and the closure edge
# through a handle identifies (E, k) with (0, k) preserving direction.


class _Trace:
    def __init__(self, counts, comp_of, dirs, ids, nodes_by_comp):
        self.counts = counts
        self.comp_of = comp_of
        self.dirs = dirs
        self.ids = ids  # sorted component ids, 1..n
        self.nodes_by_comp = nodes_by_comp

    @property
    def n_components(self) -> int:
        return len(self.ids)


def _edges(d: FrontDiagram, counts):
    out = []
    for j, e in enumerate(d.events, start=1):
        cin = counts[j - 1]
        p = e.pos
        if e.kind == "L":
            for h in range(1, cin + 1):
                out.append(((j - 1, h), (j, h if h < p else h + 2), False))
            out.append(((j, p), (j, p + 1), True))
        elif e.kind == "R":
            out.append(((j - 1, p), (j - 1, p + 1), True))
            for h in range(1, cin + 1):
                if h not in (p, p + 1):
                    out.append(((j - 1, h), (j, h if h < p else h - 2), False))
        else:
            out.append(((j - 1, p), (j, p + 1), False))
            out.append(((j - 1, p + 1), (j, p), False))
            for h in range(1, cin + 1):
                if h not in (p, p + 1):
                    out.append(((j - 1, h), (j, h), False))
    e_idx = len(d.events)
    for k in range(1, d.n_strands + 1):
        out.append(((e_idx, k), (0, k), False))
    return out


def _trace(d: FrontDiagram) -> _Trace:
    counts = boundary_counts(d)
    adj: dict[tuple[int, int], list] = {}
    for a, b, flip in _edges(d, counts):
        adj.setdefault(a, []).append((b, flip))
        adj.setdefault(b, []).append((a, flip))
    for node, nbrs in adj.items():
        if len(nbrs) != 2:
            raise FrontError(f"internal: node {node} has degree {len(nbrs)}")

    comp_of: dict[tuple[int, int], int] = {}
    dirs: dict[tuple[int, int], int] = {}
    nodes_by_comp: dict[int, list] = {}
    next_id = 1
    for start in sorted(adj):
        if start in comp_of:
            continue
        cid = next_id
        next_id += 1
        comp_of[start] = cid
        dirs[start] = 1
        stack = [start]
        members = [start]
        while stack:
            node = stack.pop()
            for other, flip in adj[node]:
                dir_other = -dirs[node] if flip else dirs[node]
                if other in comp_of:
                    if dirs[other] != dir_other:
                        raise FrontError(f"internal: direction clash at {other}")
                    continue
                comp_of[other] = cid
                dirs[other] = dir_other
                stack.append(other)
                members.append(other)
        nodes_by_comp[cid] = sorted(members)
    ids = sorted(nodes_by_comp)
    return _Trace(counts, comp_of, dirs, ids, nodes_by_comp)


def _handle_of_position(d: FrontDiagram):
    owner = {}
    pos = 0
    for h, s in enumerate(d.slots, start=1):
        for _ in range(s):
            pos += 1
            owner[pos] = h
    return owner


def _handle_offset(d: FrontDiagram, h: int) -> int:
    if not 1 <= h <= d.n_handles:
        raise FrontError(f"handle index {h} out of range 1..{d.n_handles}")
    return sum(d.slots[: h - 1])


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class ComponentStats:
    component: int
    orientation: int
    left_cusps: int
    right_cusps: int
    up_cusps: int
    down_cusps: int
    writhe: int
    tb: int
    rot: int
    runs: tuple[int, ...]  # algebraic passage count per handle
    passes: tuple[int, ...]  # unsigned passage count per handle
    coefficient: object | None


def _crossing_data(d: FrontDiagram, tr: _Trace):
    """Per-component writhe and the symmetric table of signed crossing sums."""
    writhe = {cid: 0 for cid in tr.ids}
    cross = {}
    for j, e in enumerate(d.events, start=1):
        if e.kind != "X":
            continue
        a = (j - 1, e.pos)
        b = (j - 1, e.pos + 1)
        ca, cb = tr.comp_of[a], tr.comp_of[b]
        da = tr.dirs[a] * d.orientation(ca)
        db = tr.dirs[b] * d.orientation(cb)
        # crossings between anti-parallel strands are the positive ones
        sign = 1 if da != db else -1
        if ca == cb:
            writhe[ca] += sign
        else:
            key = (min(ca, cb), max(ca, cb))
            cross[key] = cross.get(key, 0) + sign
    return writhe, cross


def component_stats(d: FrontDiagram) -> list[ComponentStats]:
    tr = _trace(d)
    writhe, _ = _crossing_data(d, tr)
    left = {cid: 0 for cid in tr.ids}
    right = {cid: 0 for cid in tr.ids}
    up = {cid: 0 for cid in tr.ids}
    down = {cid: 0 for cid in tr.ids}
    for j, e in enumerate(d.events, start=1):
        if e.kind == "L":
            upper = (j, e.pos)
            cid = tr.comp_of[upper]
            left[cid] += 1
            if tr.dirs[upper] * d.orientation(cid) == 1:
                up[cid] += 1  # traversal turns upward through a left cusp
            else:
                down[cid] += 1
        elif e.kind == "R":
            upper = (j - 1, e.pos)
            cid = tr.comp_of[upper]
            right[cid] += 1
            if tr.dirs[upper] * d.orientation(cid) == -1:
                up[cid] += 1
            else:
                down[cid] += 1
    nh = d.n_handles
    runs = {cid: [0] * nh for cid in tr.ids}
    passes = {cid: [0] * nh for cid in tr.ids}
    owner = _handle_of_position(d)
    for k in range(1, d.n_strands + 1):
        node = (0, k)
        cid = tr.comp_of[node]
        h = owner[k]
        runs[cid][h - 1] += tr.dirs[node] * d.orientation(cid)
        passes[cid][h - 1] += 1

    out = []
    for cid in tr.ids:
        if left[cid] != right[cid]:
            raise FrontError(f"internal: component {cid} has unbalanced cusps")
        tb = writhe[cid] - left[cid]
        rot2 = down[cid] - up[cid]
        if rot2 % 2:
            raise FrontError(f"internal: component {cid} has odd cusp imbalance")
        out.append(
            ComponentStats(
                component=cid,
                orientation=d.orientation(cid),
                left_cusps=left[cid],
                right_cusps=right[cid],
                up_cusps=up[cid],
                down_cusps=down[cid],
                writhe=writhe[cid],
                tb=tb,
                rot=rot2 // 2,
                runs=tuple(runs[cid]),
                passes=tuple(passes[cid]),
                coefficient=d.coefficients.get(cid),
            )
        )
    return out


def n_components(d: FrontDiagram) -> int:
    return _trace(d).n_components


def linking_number(d: FrontDiagram, i: int, j: int) -> int:
    """Linking number of two distinct components in the surgered picture's
    ambient manifold (signed crossings halved; handle passes contribute
    nothing beyond the crossings they force)."""
    tr = _trace(d)
    if i not in tr.ids or j not in tr.ids or i == j:
        raise FrontError(f"need two distinct components, got {i} and {j}")
    _, cross = _crossing_data(d, tr)
    total = cross.get((min(i, j), max(i, j)), 0)
    if total % 2:
        raise FrontError(f"internal: odd crossing sum between components {i} and {j}")
    return total // 2


@dataclass(frozen=True)
class ParityReport:
    component: int
    tb: int
    rot: int
    total_passes: int
    ok: bool


def parity_lint(d: FrontDiagram) -> list[ParityReport]:
    """Check tb + rot + 1 = total unsigned handle passes mod 2, per component.

    Any front drawn in the box satisfies this; a violation means the
    diagram data was assembled inconsistently.
    """
    out = []
    for s in component_stats(d):
        total = sum(s.passes)
        out.append(
            ParityReport(
                component=s.component,
                tb=s.tb,
                rot=s.rot,
                total_passes=total,
                ok=(s.tb + s.rot + 1 - total) % 2 == 0,
            )
        )
    return out


# ---------------------------------------------------------------------------
# rebuilding moves: shared transfer of component data


def _transfer(old: FrontDiagram, old_tr: _Trace, slots, events, node_map) -> FrontDiagram:
    """Build the rewritten diagram, carrying orientations and coefficients
    across by following a surviving witness node of every component."""
    new_d = FrontDiagram(tuple(slots), tuple(events))
    new_tr = _trace(new_d)
    if new_tr.n_components != old_tr.n_components:
        raise FrontError("internal: rewrite changed the component count")
    orientations: dict[int, int] = {}
    coefficients: dict[int, object] = {}
    seen = set()
    for cid in old_tr.ids:
        witness = None
        image = None
        for node in old_tr.nodes_by_comp[cid]:
            cand = node_map(node)
            if cand is not None and cand in new_tr.comp_of:
                witness, image = node, cand
                break
        if witness is None:
            raise FrontError(f"internal: lost track of component {cid}")
        new_cid = new_tr.comp_of[image]
        if new_cid in seen:
            raise FrontError("internal: two components merged under a rewrite")
        seen.add(new_cid)
        physical = old.orientation(cid) * old_tr.dirs[witness]
        orientations[new_cid] = physical * new_tr.dirs[image]
        if cid in old.coefficients:
            coefficients[new_cid] = old.coefficients[cid]
    return FrontDiagram(tuple(slots), tuple(events), orientations, coefficients)


# ---------------------------------------------------------------------------
# stabilisation


def stabilize(
    d: FrontDiagram, component: int, direction: str, at_column: int | None = None
) -> FrontDiagram:
    """Insert a zig-zag on a component: tb drops by 1, rot moves by -1
    for an up stabilisation and +1 for a down one.

    The zig-zag lands on the topmost strand of the component at the given
    column boundary (default: the first boundary the component meets).
    """
    if direction not in ("up", "down"):
        raise FrontError(f"stabilisation direction must be 'up' or 'down', got {direction!r}")
    tr = _trace(d)
    if component not in tr.ids:
        raise FrontError(f"no component {component}")
    boundaries = sorted({t for t, _ in tr.nodes_by_comp[component]})
    if at_column is None:
        t = boundaries[0]
    else:
        t = at_column
        if t not in boundaries:
            raise FrontError(f"component {component} has no strand at column boundary {t}")
    height = min(i for tt, i in tr.nodes_by_comp[component] if tt == t)
    eps = tr.dirs[(t, height)] * d.orientation(component)
    # two cusp patterns; which one yields up-cusps depends on the strand
    # direction at the insertion point
    zig = (Event("L", height + 1), Event("R", height))
    zag = (Event("L", height), Event("R", height + 1))
    if direction == "up":
        pattern = zag if eps == 1 else zig
    else:
        pattern = zig if eps == 1 else zag
    events = d.events[:t] + pattern + d.events[t:]

    def node_map(node):
        tt, i = node
        return (tt, i) if tt <= t else (tt + 2, i)

    return _transfer(d, tr, d.slots, events, node_map)


# ---------------------------------------------------------------------------
# the six local moves


def _wiring(events, n_in, tags):
    """Identity-tracked wiring of a short event word, or None if invalid.

    Strands are labelled by input height or by (birth tag, branch); the
    result captures the output position of every surviving strand, which
    pairs die together, and the multiset of crossing pairs.
    """
    current = [("i", h) for h in range(1, n_in + 1)]
    deaths = set()
    crossings = []
    for e, tag in zip(events, tags):
        c = len(current)
        p = e.pos
        if e.kind == "L":
            if not 1 <= p <= c + 1:
                return None
            current[p - 1 : p - 1] = [("b", tag, 0), ("b", tag, 1)]
        elif e.kind == "R":
            if not 1 <= p <= c - 1:
                return None
            deaths.add(frozenset((current[p - 1], current[p])))
            del current[p - 1 : p + 1]
        else:
            if not 1 <= p <= c - 1:
                return None
            crossings.append(frozenset((current[p - 1], current[p])))
            current[p - 1], current[p] = current[p], current[p - 1]
    out = tuple(sorted((sid, pos + 1) for pos, sid in enumerate(current)))
    cross_multiset = tuple(sorted(tuple(sorted(fs)) for fs in crossings))
    return out, frozenset(deaths), cross_multiset


def _move1(d: FrontDiagram, at: int) -> tuple[tuple[int, ...], tuple[Event, ...]]:
    if not 1 <= at <= len(d.events) - 1:
        raise FrontError(f"move 1 needs two columns starting at 1..{len(d.events) - 1}")
    counts = boundary_counts(d)
    a, b = d.events[at - 1], d.events[at]
    n_in = counts[at - 1]
    target = _wiring([a, b], n_in, (0, 1))
    found = []
    for q in (b.pos - 2, b.pos, b.pos + 2):
        if q < 1:
            continue
        for p in (a.pos - 2, a.pos, a.pos + 2):
            if p < 1:
                continue
            candidate = [Event(b.kind, q), Event(a.kind, p)]
            if _wiring(candidate, n_in, (1, 0)) == target:
                found.append(candidate)
    if not found:
        raise FrontError(f"move 1 not applicable at column {at}: the columns interact")
    if len(found) > 1:
        raise FrontError(f"move 1 ambiguous at column {at}")
    events = d.events[: at - 1] + tuple(found[0]) + d.events[at + 1 :]
    return d.slots, events


def _move2(d: FrontDiagram, at: int, variant: str):
    counts = boundary_counts(d)
    e_count = len(d.events)
    if variant in ("birth-above", "birth-below"):
        if not 1 <= at <= e_count:
            raise FrontError(f"no column {at}")
        e = d.events[at - 1]
        c_in = counts[at - 1]
        p = e.pos
        if e.kind == "L":
            if variant == "birth-above":
                if p < 2:
                    raise FrontError("no strand above the cusp to push across")
                pattern = (Event("L", p - 1), Event("X", p), Event("X", p - 1))
            else:
                if p > c_in:
                    raise FrontError("no strand below the cusp to push across")
                pattern = (Event("L", p + 1), Event("X", p), Event("X", p + 1))
        elif e.kind == "R":
            if variant == "birth-above":
                if p < 2:
                    raise FrontError("no strand above the cusp to push across")
                pattern = (Event("X", p - 1), Event("X", p), Event("R", p - 1))
            else:
                if p + 2 > c_in:
                    raise FrontError("no strand below the cusp to push across")
                pattern = (Event("X", p + 1), Event("X", p), Event("R", p + 1))
        else:
            raise FrontError(f"column {at} is a crossing, move 2 needs a cusp")
        events = d.events[: at - 1] + pattern + d.events[at:]

        def node_map(node):
            t, i = node
            return (t, i) if t < at else (t + 2, i)

        return d.slots, events, node_map

    if variant in ("death-above", "death-below"):
        if not 1 <= at <= e_count - 2:
            raise FrontError(f"move 2 needs three columns starting at {at}")
        w = d.events[at - 1 : at + 2]
        shift = 1 if variant == "death-above" else -1
        first = w[0]
        if first.kind == "L":
            b = first.pos
            expect = (Event("L", b), Event("X", b + shift), Event("X", b))
            replacement = Event("L", b + shift)
        elif first.kind == "X":
            b = first.pos
            expect = (Event("X", b), Event("X", b + shift), Event("R", b))
            replacement = Event("R", b + shift)
        else:
            raise FrontError(f"columns {at}..{at + 2} do not match a move 2 pattern")
        if tuple(w) != expect:
            raise FrontError(f"columns {at}..{at + 2} do not match a move 2 pattern")
        events = d.events[: at - 1] + (replacement,) + d.events[at + 2 :]

        def node_map(node):
            t, i = node
            if t < at:
                return (t, i)
            if t >= at + 2:
                return (t - 2, i)
            return None

        return d.slots, events, node_map

    raise FrontError(
        "move 2 variant must be birth-above, birth-below, death-above or death-below"
    )


def _move3(d: FrontDiagram, at: int):
    if not 1 <= at <= len(d.events) - 2:
        raise FrontError(f"move 3 needs three columns starting at {at}")
    w = d.events[at - 1 : at + 2]
    if not all(e.kind == "X" for e in w):
        raise FrontError("move 3 needs three crossings")
    a, b = w[0].pos, w[1].pos
    if w[2].pos != a or abs(a - b) != 1:
        raise FrontError("move 3 needs the pattern X(a) X(b) X(a) with |a - b| = 1")
    events = d.events[: at - 1] + (Event("X", b), Event("X", a), Event("X", b)) + d.events[at + 2 :]

    def node_map(node):
        t, i = node
        return None if t in (at, at + 1) else (t, i)

    return d.slots, events, node_map


def _ball_of_pair(d: FrontDiagram, p: int) -> int:
    owner = _handle_of_position(d)
    if p not in owner or p + 1 not in owner or owner[p] != owner[p + 1]:
        raise FrontError(f"edge heights {p}, {p + 1} do not lie in a single attaching ball")
    return owner[p]


def _move4(d: FrontDiagram, at: int, variant: str, handle: int | None):
    e_count = len(d.events)
    if e_count == 0:
        raise FrontError("move 4 needs at least one column")
    last = e_count
    if variant == "in":
        if at == last and d.events[-1].kind == "L":
            p = d.events[-1].pos
            h = _ball_of_pair(d, p)
            if handle is not None and handle != h:
                raise FrontError(f"cusp pair sits in ball {h}, not {handle}")
            slots = list(d.slots)
            slots[h - 1] -= 2
            events = (d.events[-1],) + d.events[:-1]

            def node_map(node):
                t, i = node
                return (t + 1, i) if t <= last - 1 else None

            return tuple(slots), events, node_map
        if at == 1 and d.events[0].kind == "R":
            p = d.events[0].pos
            h = _ball_of_pair(d, p)
            if handle is not None and handle != h:
                raise FrontError(f"cusp pair sits in ball {h}, not {handle}")
            slots = list(d.slots)
            slots[h - 1] -= 2
            events = d.events[1:] + (d.events[0],)

            def node_map(node):
                t, i = node
                return (t - 1, i) if t >= 1 else None

            return tuple(slots), events, node_map
        raise FrontError("move 4 'in' needs a left cusp in the last column or a right cusp in the first")
    if variant == "out":
        if handle is None:
            raise FrontError("move 4 'out' needs an explicit handle")
        o = _handle_offset(d, handle)
        s = d.slots[handle - 1]
        if at == 1 and d.events[0].kind == "L":
            p = d.events[0].pos
            if not o + 1 <= p <= o + s + 1:
                raise FrontError(f"cusp at height {p} cannot exit through ball {handle}")
            slots = list(d.slots)
            slots[handle - 1] += 2
            events = d.events[1:] + (d.events[0],)

            def node_map(node):
                t, i = node
                return (t - 1, i) if t >= 1 else None

            return tuple(slots), events, node_map
        if at == last and d.events[-1].kind == "R":
            p = d.events[-1].pos
            if not o + 1 <= p <= o + s + 1:
                raise FrontError(f"cusp at height {p} cannot exit through ball {handle}")
            slots = list(d.slots)
            slots[handle - 1] += 2
            events = (d.events[-1],) + d.events[:-1]

            def node_map(node):
                t, i = node
                return (t + 1, i) if t <= last - 1 else None

            return tuple(slots), events, node_map
        raise FrontError("move 4 'out' needs a left cusp in the first column or a right cusp in the last")
    raise FrontError("move 4 variant must be 'in' or 'out'")


def _move5(d: FrontDiagram, at: int):
    e_count = len(d.events)
    if e_count == 0:
        raise FrontError("move 5 needs at least one column")
    if at == e_count and d.events[-1].kind == "X":
        p = d.events[-1].pos
        _ball_of_pair(d, p)
        events = (d.events[-1],) + d.events[:-1]

        def node_map(node):
            t, i = node
            return (t + 1, i) if t <= e_count - 1 else None

        return d.slots, events, node_map
    if at == 1 and d.events[0].kind == "X":
        p = d.events[0].pos
        _ball_of_pair(d, p)
        events = d.events[1:] + (d.events[0],)

        def node_map(node):
            t, i = node
            return (t - 1, i) if t >= 1 else None

        return d.slots, events, node_map
    raise FrontError("move 5 slides the first or last column, which must be a crossing")


def _move6(d: FrontDiagram, variant: str, handle: int | None):
    """Swing an edge strand around its attaching ball.

    The detour block (travel across the ball, a small loop, travel back)
    is inserted at the left edge; it crosses every other strand of the
    ball twice and costs one zig-zag, so with e the swung strand's
    direction and run(K) the algebraic passage count through the ball,
    tb changes by -2 e run(K) and lk(K, K') by -e run(K').
    """
    if handle is None:
        raise FrontError("move 6 needs an explicit handle")
    if variant not in ("top", "bottom"):
        raise FrontError("move 6 variant must be 'top' or 'bottom'")
    o = _handle_offset(d, handle)
    s = d.slots[handle - 1]
    if s < 1:
        raise FrontError(f"ball {handle} has no strand to swing")
    across = [Event("X", o + k) for k in range(1, s)]
    if variant == "top":
        # slot o+1 dives below the ball, loops, climbs back
        loop = (Event("L", o + s + 1), Event("X", o + s), Event("R", o + s + 1))
        detour = tuple(across) + loop + tuple(reversed(across))
    else:
        # slot o+s climbs above the ball, loops, dives back
        loop = (Event("L", o + 2), Event("X", o + 1), Event("R", o + 2))
        detour = tuple(reversed(across)) + loop + tuple(across)
    shift = len(detour)
    events = detour + d.events

    def node_map(node):
        t, i = node
        return (t + shift, i)

    return d.slots, events, node_map


def apply_move(
    d: FrontDiagram,
    move: int,
    at: int | None = None,
    variant: str | None = None,
    handle: int | None = None,
) -> FrontDiagram:
    """Apply one of the six local moves, preserving component data.

    Moves 1-3 are interior isotopies (at = leftmost column of the
    pattern; move 2 needs a birth/death variant).  Moves 4 and 5 slide a
    cusp or crossing through a handle via the box edges.  Move 6 swings
    the top or bottom strand of a ball around it; 'at' is ignored.
    """
    tr = _trace(d)
    if move == 1:
        if at is None:
            raise FrontError("move 1 needs a column")
        slots, events = _move1(d, at)

        def node_map(node):
            t, i = node
            return None if t == at else (t, i)

        return _transfer(d, tr, slots, events, node_map)
    if move == 2:
        if at is None or variant is None:
            raise FrontError("move 2 needs a column and a variant")
        slots, events, node_map = _move2(d, at, variant)
        return _transfer(d, tr, slots, events, node_map)
    if move == 3:
        if at is None:
            raise FrontError("move 3 needs a column")
        slots, events, node_map = _move3(d, at)
        return _transfer(d, tr, slots, events, node_map)
    if move == 4:
        if at is None or variant is None:
            raise FrontError("move 4 needs a column and a variant ('in' or 'out')")
        slots, events, node_map = _move4(d, at, variant, handle)
        return _transfer(d, tr, slots, events, node_map)
    if move == 5:
        if at is None:
            raise FrontError("move 5 needs a column")
        slots, events, node_map = _move5(d, at)
        return _transfer(d, tr, slots, events, node_map)
    if move == 6:
        slots, events, node_map = _move6(d, variant if variant else "top", handle)
        return _transfer(d, tr, slots, events, node_map)
    raise FrontError(f"there is no move {move}; the catalogue has moves 1..6")


# ---------------------------------------------------------------------------
# Stein form and surgery export


@dataclass(frozen=True)
class SteinFormReport:
    ok: bool
    problems: tuple[str, ...]


def resolve_coefficients(d: FrontDiagram) -> dict[int, ExtRational]:
    """Surgery coefficient per component, with STEIN resolved to tb - 1."""
    out = {}
    for s in component_stats(d):
        c = s.coefficient
        if c is None:
            raise FrontError(f"component {s.component} has no surgery coefficient")
        out[s.component] = rat(s.tb - 1) if c == STEIN else c
    return out


def check_stein_form(d: FrontDiagram) -> SteinFormReport:
    """Verify that every coefficient is the Stein framing tb - 1."""
    problems = []
    for s in component_stats(d):
        c = s.coefficient
        want = s.tb - 1
        if c is None:
            problems.append(f"component {s.component} has no coefficient")
        elif c == STEIN:
            continue
        elif c.is_infinite or c != rat(want):
            problems.append(
                f"component {s.component} has coefficient {c}, standard form needs tb - 1 = {want}"
            )
    for rep in parity_lint(d):
        if not rep.ok:
            problems.append(
                f"component {rep.component} violates the passage parity "
                f"tb + rot + 1 = passes mod 2"
            )
    return SteinFormReport(ok=not problems, problems=tuple(problems))


def surger_handles(d: FrontDiagram) -> SurgeryPresentation:
    """Trade every 1-handle for a 0-framed unknot.

    The result presents the same boundary 3-manifold: link components
    keep their coefficients (STEIN resolving to tb - 1) and each handle
    contributes an unknot in the distinguished 0-framed sublink, linking
    a component once per algebraic run through the handle.
    """
    stats = component_stats(d)
    coeffs = resolve_coefficients(d)
    tr = _trace(d)
    _, cross = _crossing_data(d, tr)
    n = len(stats)
    nh = d.n_handles
    m = n + nh
    lk = [[0] * m for _ in range(m)]
    for (i, j), total in cross.items():
        lk[i - 1][j - 1] = lk[j - 1][i - 1] = total // 2
    for idx, s in enumerate(stats):
        for h in range(nh):
            lk[idx][n + h] = lk[n + h][idx] = s.runs[h]
    return SurgeryPresentation(
        coeffs=[coeffs[s.component] for s in stats] + [rat(0)] * nh,
        lk=lk,
        unknot=[False] * n + [True] * nh,
        l0=[False] * n + [True] * nh,
        rot=[s.rot for s in stats] + [0] * nh,
        tb=[s.tb for s in stats] + [None] * nh,
    )


# ---------------------------------------------------------------------------
# the FRONT file format


def parse_front(text: str) -> FrontDiagram:
    """Parse the FRONT interchange format.

    Headers: 'front 1' then 'handles <n>' with one 'handle <h> slots <k>'
    line per handle.  Body: one optional 'events ...' line, 'orient <id>
    +|-' and 'coeff <id> <rational>|stein' lines.  Unknown keys are
    errors.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))
    if not lines or lines[0][1] != "front 1":
        raise FrontError("missing 'front 1' header")
    if len(lines) < 2 or not lines[1][1].startswith("handles "):
        raise FrontError("missing 'handles <n>' line")
    try:
        n_handles = int(lines[1][1].split()[1])
    except (IndexError, ValueError) as exc:
        raise FrontError(f"line {lines[1][0]}: bad handle count") from exc
    if n_handles < 0:
        raise FrontError("negative handle count")

    slots: dict[int, int] = {}
    events: tuple[Event, ...] | None = None
    orient_lines: list[tuple[int, int, int]] = []
    coeff_lines: list[tuple[int, int, object]] = []
    for lineno, body in lines[2:]:
        fields = body.split()
        key = fields[0]
        if key == "handle" and len(fields) == 4 and fields[2] == "slots":
            try:
                h, k = int(fields[1]), int(fields[3])
            except ValueError as exc:
                raise FrontError(f"line {lineno}: bad handle line") from exc
            if not 1 <= h <= n_handles:
                raise FrontError(f"line {lineno}: handle {h} out of range 1..{n_handles}")
            if h in slots:
                raise FrontError(f"line {lineno}: duplicate handle {h}")
            if k < 0:
                raise FrontError(f"line {lineno}: negative slot count")
            slots[h] = k
        elif key == "events":
            if events is not None:
                raise FrontError(f"line {lineno}: duplicate events line")
            try:
                events = parse_event_word(" ".join(fields[1:]))
            except FrontError as exc:
                raise FrontError(f"line {lineno}: {exc}") from exc
        elif key == "orient" and len(fields) == 3:
            try:
                cid = int(fields[1])
            except ValueError as exc:
                raise FrontError(f"line {lineno}: bad component index") from exc
            if fields[2] not in ("+", "-"):
                raise FrontError(f"line {lineno}: orientation must be + or -")
            orient_lines.append((lineno, cid, 1 if fields[2] == "+" else -1))
        elif key == "coeff" and len(fields) == 3:
            try:
                cid = int(fields[1])
            except ValueError as exc:
                raise FrontError(f"line {lineno}: bad component index") from exc
            if fields[2] == STEIN:
                coeff_lines.append((lineno, cid, STEIN))
            else:
                try:
                    coeff_lines.append((lineno, cid, parse_rational(fields[2])))
                except ValueError as exc:
                    raise FrontError(f"line {lineno}: {exc}") from exc
        else:
            raise FrontError(f"line {lineno}: unknown or malformed key {key!r}")

    missing = [h for h in range(1, n_handles + 1) if h not in slots]
    if missing:
        raise FrontError(f"handles {missing} have no slot count")
    slot_tuple = tuple(slots[h] for h in range(1, n_handles + 1))
    d = FrontDiagram(slot_tuple, events if events is not None else ())
    n = n_components(d)
    orientations = {}
    coefficients = {}
    for lineno, cid, val in orient_lines:
        if not 1 <= cid <= n:
            raise FrontError(f"line {lineno}: component {cid} out of range 1..{n}")
        orientations[cid] = val
    for lineno, cid, val in coeff_lines:
        if not 1 <= cid <= n:
            raise FrontError(f"line {lineno}: component {cid} out of range 1..{n}")
        coefficients[cid] = val
    return FrontDiagram(slot_tuple, d.events, orientations, coefficients)


def serialize_front(d: FrontDiagram) -> str:
    """Canonical text form; orientations are written out for every component."""
    out = ["front 1", f"handles {d.n_handles}"]
    for h, s in enumerate(d.slots, start=1):
        out.append(f"handle {h} slots {s}")
    out.append("events" + "".join(f" {e}" for e in d.events))
    n = n_components(d)
    for cid in range(1, n + 1):
        out.append(f"orient {cid} {'+' if d.orientation(cid) == 1 else '-'}")
    for cid in sorted(d.coefficients):
        c = d.coefficients[cid]
        out.append(f"coeff {cid} {c}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# random fronts for property testing


def random_front(rng, max_handles: int = 2, max_slot: int = 2, max_extra: int = 8) -> FrontDiagram:
    """A small valid random front with random orientations."""
    n_handles = rng.randint(0, max_handles)
    slots = tuple(rng.randint(1, max_slot) for _ in range(n_handles))
    n = sum(slots)
    events = []
    c = n
    for _ in range(rng.randint(0, max_extra)):
        kinds = ["L"] if c < 2 else ["L", "R", "X", "X"]
        kind = rng.choice(kinds)
        if kind == "L":
            events.append(Event("L", rng.randint(1, c + 1)))
            c += 2
        elif kind == "R":
            events.append(Event("R", rng.randint(1, c - 1)))
            c -= 2
        else:
            events.append(Event("X", rng.randint(1, c - 1)))
    while c > n:
        events.append(Event("R", rng.randint(1, c - 1)))
        c -= 2
    while c < n:
        events.append(Event("L", rng.randint(1, c + 1)))
        c += 2
    d = FrontDiagram(slots, tuple(events))
    orientations = {cid: rng.choice([1, -1]) for cid in _trace(d).ids}
    return FrontDiagram(slots, tuple(events), orientations)
