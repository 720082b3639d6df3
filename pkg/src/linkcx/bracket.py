"""Bracket polynomial state sums, span bounds, and a classical oracle.

A state picks a subset C of the crossings.  Crossings in C are smoothed so
that the two dotted sectors merge; the others so that the undotted sectors
merge.  With |L,C| resulting curves the state contributes

    (-A^2 - A^-2)^(|L,C| - 1) * A^(2|C| - cro)

and the bracket is the sum over all states.  The normalized bracket
multiplies by (-A^3)^(-wri); a direct kink computation fixes the sign: a
positive kink multiplies the bracket by -A^3, so this normalization is
invariant under every move.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .diagram import CrossVisit, Diagram, PlanarCode, Slot, arcs_of
from .errors import CrossingCapError, DiagramError
from .invariants import Wri, wri
from .laurent import Laurent
from .twocomplex import Incidence

__all__ = [
    "SimpleSystem",
    "smooth",
    "state_term",
    "bracket",
    "normalized_bracket",
    "normalized_bracket_oriented",
    "span",
    "check_span_theorem",
    "check_state_inequality",
    "classical_oracle",
    "classical_lk",
    "default_crossing_cap",
]

TransitStep = Tuple[str, Incidence, Incidence]   # edge, entering side, exiting side


def default_crossing_cap() -> int:
    return int(os.environ.get("LINKCX_MAX_CROSSINGS", "22"))


@dataclass(frozen=True)
class SimpleSystem:
    """Disjoint simple closed curves; each curve is its transit step trace."""

    curves: Tuple[Tuple[TransitStep, ...], ...]

    def count(self) -> int:
        return len(self.curves)


def _smoothing_pairs(dot: int, in_state: bool) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    """Port pairs joined by the smoothing.

    The state smoothing merges the dotted sectors, so it joins the two
    port pairs that cut those sectors off from the other two.
    """
    d = dot
    if in_state:
        return ((d + 1) % 4, (d + 2) % 4), ((d + 3) % 4, d % 4)
    return (d % 4, (d + 1) % 4), ((d + 2) % 4, (d + 3) % 4)


# -- precontracted port matching (fast curve counts) ---------------------

class _Contraction:
    """Arcs and transits contracted away: ports matched pairwise."""

    __slots__ = ("order", "index", "match", "base_circles")

    def __init__(self, d: Diagram):
        self.order = sorted(d.crossings)
        self.index = {c: i for i, c in enumerate(self.order)}
        arc_at: Dict[Slot, Slot] = {}
        for arc in arcs_of(d):
            if arc.src is None:
                continue
            arc_at[arc.src] = arc.dst
            arc_at[arc.dst] = arc.src
        match: Dict[int, int] = {}
        base = sum(1 for comp in d.components if not comp.events)
        base += sum(1 for comp in d.components
                    if comp.events
                    and not any(isinstance(ev, CrossVisit) for ev in comp.events))
        self.base_circles = base
        for c in self.order:
            for p in range(4):
                start = ("x", c, p)
                if 4 * self.index[c] + p in match:
                    continue
                slot = arc_at[start]
                while slot[0] == "t":
                    slot = arc_at[(slot[0], slot[1], 1 - slot[2])]
                a = 4 * self.index[c] + p
                b = 4 * self.index[slot[1]] + slot[2]
                match[a] = b
                match[b] = a
        self.match = match


def _state_curve_count(con: _Contraction, d: Diagram, state: FrozenSet[str]) -> int:
    n = len(con.order)
    parent = list(range(4 * n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for a, b in con.match.items():
        if a < b:
            union(a, b)
    for c in con.order:
        i = con.index[c]
        for a, b in _smoothing_pairs(d.crossings[c].dot, c in state):
            union(4 * i + a, 4 * i + b)
    roots = {find(x) for x in range(4 * n)}
    return len(roots) + con.base_circles


# -- full curve traces ----------------------------------------------------

def state_curves(d: Diagram, state: FrozenSet[str]) -> SimpleSystem:
    """Curves of a smoothed state, each with its transit step sequence."""
    arc_at: Dict[Slot, Slot] = {}
    for arc in arcs_of(d):
        if arc.src is None:
            continue
        arc_at[arc.src] = arc.dst
        arc_at[arc.dst] = arc.src
    join: Dict[Slot, Slot] = {}
    for c, cr in d.crossings.items():
        for a, b in _smoothing_pairs(cr.dot, c in state):
            join[("x", c, a)] = ("x", c, b)
            join[("x", c, b)] = ("x", c, a)
    curves: List[Tuple[TransitStep, ...]] = []
    seen: Set[Slot] = set()
    for start in sorted(arc_at):
        if start in seen:
            continue
        steps: List[TransitStep] = []
        slot = start
        while True:
            seen.add(slot)
            slot = arc_at[slot]           # travel the arc
            seen.add(slot)
            if slot[0] == "t":            # hop through the edge
                tr = d.transits[slot[1]]
                steps.append((tr.edge, tr.sides[slot[2]], tr.sides[1 - slot[2]]))
                slot = ("t", slot[1], 1 - slot[2])
            else:
                slot = join[slot]
            if slot == start:
                break
        curves.append(tuple(steps))
    for comp in d.components:
        if not comp.events:
            curves.append(())
    return SimpleSystem(tuple(curves))


def smooth(d: Diagram, state: Iterable[str]) -> SimpleSystem:
    state = frozenset(state)
    unknown = state - set(d.crossings)
    if unknown:
        raise DiagramError(f"state references unknown crossings {sorted(unknown)}")
    return state_curves(d, state)


# -- the bracket ----------------------------------------------------------

def state_term(d: Diagram, state: Iterable[str]) -> Laurent:
    state = frozenset(state)
    count = smooth(d, state).count()
    if count < 1:
        raise DiagramError("state sum needs a nonempty diagram")
    loop = Laurent.loop_factor()
    return (loop ** (count - 1)) * Laurent.A(2 * len(state) - len(d.crossings))


def bracket(d: Diagram, max_crossings: Optional[int] = None) -> Laurent:
    """Sum of state terms over all subsets of the crossing set."""
    if not d.components:
        raise DiagramError("bracket of an empty diagram is undefined")
    cap = default_crossing_cap() if max_crossings is None else max_crossings
    n = len(d.crossings)
    if n > cap:
        raise CrossingCapError(f"{n} crossings exceed the state-sum cap {cap}")
    con = _Contraction(d)
    loop = Laurent.loop_factor()
    powers = [loop ** k for k in range(n + 4 + con.base_circles)]
    total = Laurent.zero()
    order = con.order
    for mask in range(1 << n):
        state = frozenset(order[i] for i in range(n) if mask >> i & 1)
        count = _state_curve_count(con, d, state)
        total = total + powers[count - 1] * Laurent.A(2 * len(state) - n)
    return total


def normalized_bracket(d: Diagram, max_crossings: Optional[int] = None) -> Laurent:
    """(-A^3)^(-wri) times the bracket; invariant under every move."""
    return Laurent.minus_A3_power(-wri(d)) * bracket(d, max_crossings)


def normalized_bracket_oriented(d: Diagram, max_crossings: Optional[int] = None) -> Laurent:
    """The oriented normalization, using the full writhe."""
    return Laurent.minus_A3_power(-Wri(d)) * bracket(d, max_crossings)


def span(f: Laurent) -> int:
    return f.span()


def all_state_counts(d: Diagram) -> Tuple[int, int]:
    """(|L, #L|, |L, empty|): curve counts of the two extreme states."""
    con = _Contraction(d)
    return (_state_curve_count(con, d, frozenset(d.crossings)),
            _state_curve_count(con, d, frozenset()))


def check_span_theorem(d: Diagram, max_crossings: Optional[int] = None) -> bool:
    """cro >= 1 - sc + span/4, checked exactly."""
    from .diagram import sc
    f = bracket(d, max_crossings)
    return 4 * len(d.crossings) >= 4 * (1 - sc(d)) + span(f)


def check_state_inequality(d: Diagram) -> bool:
    """|L,#L| + |L,empty| <= cro + 2 sc, checked exactly."""
    from .diagram import sc
    full, empty = all_state_counts(d)
    return full + empty <= len(d.crossings) + 2 * sc(d)


# -- classical oracle ------------------------------------------------------

def classical_oracle(code: PlanarCode) -> Laurent:
    """Kauffman bracket of a planar dotted code.

    Independent of the diagram machinery: states are resolved by merging
    arc labels directly.
    """
    ids = [cid for cid, _p, _d in code.crossings]
    n = len(ids)
    loop = Laurent.loop_factor()
    total = Laurent.zero()
    for mask in range(1 << n):
        groups: Dict[str, str] = {}

        def find(x: str) -> str:
            while groups.get(x, x) != x:
                groups[x] = groups.get(groups[x], groups[x])
                x = groups[x]
            return x

        labels = set()
        for i, (cid, ports, dot) in enumerate(code.crossings):
            labels.update(ports)
            if mask >> i & 1:
                joins = ((dot + 1) % 4, (dot + 2) % 4), ((dot + 3) % 4, dot % 4)
            else:
                joins = (dot % 4, (dot + 1) % 4), ((dot + 2) % 4, (dot + 3) % 4)
            for a, b in joins:
                ra, rb = find(ports[a]), find(ports[b])
                if ra != rb:
                    groups[ra] = rb
        circles = len({find(x) for x in labels}) + code.circles
        k = bin(mask).count("1")
        total = total + (loop ** (circles - 1)) * Laurent.A(2 * k - n)
    return total


def _trace_code_components(code: PlanarCode) -> List[List[Tuple[str, int]]]:
    """Components as lists of (crossing id, entering port), traced deterministically."""
    ends: Dict[str, List[Tuple[str, int]]] = {}
    for cid, ports, _dot in code.crossings:
        for p, label in enumerate(ports):
            ends.setdefault(label, []).append((cid, p))
    other: Dict[Tuple[str, int], Tuple[str, int]] = {}
    for label, occ in ends.items():
        if len(occ) != 2:
            raise DiagramError(f"arc label {label!r} occurs {len(occ)} times")
        other[occ[0]] = occ[1]
        other[occ[1]] = occ[0]
    comps, visited = [], set()
    for cid, _ports, _dot in code.crossings:
        for p in range(4):
            start = (cid, p)
            if start in visited:
                continue
            walk = []
            cur = start
            while True:
                visited.add(cur)
                walk.append(cur)
                out = (cur[0], (cur[1] + 2) % 4)
                visited.add(out)
                cur = other[out]
                if cur == start:
                    break
            comps.append(walk)
    return comps


def classical_lk(code: PlanarCode) -> int:
    """Linking number of a 2-component code, halved crossing-sign sum.

    Components are directed by the deterministic trace order, the same
    convention used when the code is drawn into a face.
    """
    comps = _trace_code_components(code)
    if len(comps) + code.circles != 2:
        raise DiagramError("classical linking number needs exactly two components")
    if code.circles:
        return 0
    comp_of: Dict[Tuple[str, int], int] = {}
    enters: Dict[str, List[int]] = {}
    for i, walk in enumerate(comps):
        for cid, p in walk:
            comp_of[(cid, p)] = i
            enters.setdefault(cid, []).append(p)
    total = 0
    for cid, ports, dot in code.crossings:
        e1, e2 = enters[cid]
        if comp_of[(cid, e1)] == comp_of[(cid, e2)]:
            continue
        over_enter = e1 if e1 % 2 == dot % 2 else e2
        under_enter = e2 if over_enter == e1 else e1
        sign = 1 if ((under_enter + 2) - (over_enter + 2)) % 4 == 1 else -1
        total += sign
    if total % 2:
        raise DiagramError("inter-component signs must sum to an even number")
    return total // 2
