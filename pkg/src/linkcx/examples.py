"""Built-in example complexes, diagrams, and connections.

Every named example returns a validated complex and diagram, plus a
connection presenting the holonomy of the complex where one is defined.
Local examples are drawn from classical dotted codes into a disc.

Sign conventions are pinned here: the two-strand weave used by the
annulus link, L(n), and K(n) makes every crossing positive for rightward
strands, and the hand-built Hopf code gives linking number +2 when both
circles run counterclockwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from .diagram import (Component, Crossing, CrossVisit, Diagram, PlanarCode,
                      Transit, TransitVisit, braid_code, draw_local,
                      orient_all, validate_diagram)
from .errors import DiagramError
from .groups import GroupSpec
from .homotopy import Connection
from .twocomplex import (TwoComplex, build_disc, build_graph_cylinder,
                         build_square_identification)

__all__ = ["ExampleBundle", "EXAMPLE_IDS", "example", "theta3_cylinder",
           "hopf_code", "trefoil_code", "unknot_code"]


@dataclass(frozen=True)
class ExampleBundle:
    complex: TwoComplex
    diagram: Diagram
    connection: Optional[Connection]


EXAMPLE_IDS = (
    "trefoil_left", "trefoil_right", "torus_link", "moebius_link",
    "annulus_link", "Ln", "Kn", "hopf_local", "unknot_local",
)


def theta3_cylinder() -> TwoComplex:
    """Cylinder over the theta graph with two vertices and edges e0, e1, e2."""
    return build_graph_cylinder(["a", "b"],
                                {"e0": ("a", "b"), "e1": ("a", "b"), "e2": ("a", "b")})


# -- classical codes ------------------------------------------------------

def unknot_code() -> PlanarCode:
    return PlanarCode((), circles=1)


def trefoil_code(handed: str) -> PlanarCode:
    """Standard three-crossing trefoil diagrams as braid closures."""
    if handed == "left":
        return braid_code([1, 1, 1], 2)
    if handed == "right":
        return braid_code([-1, -1, -1], 2)
    raise DiagramError(f"unknown handedness {handed!r}")


def hopf_code() -> PlanarCode:
    """Two round circles crossing twice, both counterclockwise.

    The first circle passes over at the top crossing and under at the
    bottom one; the traced orientations give linking number +1 in the
    classical convention, hence +2 for the dotted diagram.
    """
    return PlanarCode((
        ("T", ("a1", "b2", "a2", "b1"), 0),
        ("B", ("a1", "b1", "a2", "b2"), 1),
    ))


# -- the two-strand weave -------------------------------------------------

def _weave(face: str, n: int, start: int = 1):
    """n positive crossings between two rightward strands in one face.

    Returns (events of the strand starting lower, events of the strand
    starting upper, crossing dict).  The descending strand is dotted as
    the over strand at every crossing, which makes every sign +1.
    """
    lower: List[CrossVisit] = []
    upper: List[CrossVisit] = []
    crossings: Dict[str, Crossing] = {}
    lists = [lower, upper]          # lists[0] is the strand currently lower
    for k in range(n):
        name = f"c{start + k}"
        crossings[name] = Crossing(face, 1)
        lists[0].append(CrossVisit(name, 2))    # ascending strand
        lists[1].append(CrossVisit(name, 1))    # descending strand
        lists.reverse()
    return lower, upper, crossings


# -- example constructors --------------------------------------------------

def _torus_link() -> ExampleBundle:
    cx = build_square_identification("torus")
    t1 = Transit("v", Fraction(1, 2), (("F", 1), ("F", 3)))
    t2 = Transit("h", Fraction(1, 2), (("F", 2), ("F", 0)))
    d = Diagram(
        cx,
        {"c1": Crossing("F", 0)},
        {"t1": t1, "t2": t2},
        (
            Component((CrossVisit("c1", 2), TransitVisit("t1", 0)), ("F", "F"), True),
            Component((CrossVisit("c1", 3), TransitVisit("t2", 0)), ("F", "F"), True),
        ),
    )
    conn = Connection.trivial(cx, GroupSpec.abelian(2)).with_labels({
        ("v", ("F", 1)): "g1",
        ("h", ("F", 2)): "g2",
    })
    return ExampleBundle(cx, validate_diagram(d), conn)


def _moebius_link() -> ExampleBundle:
    cx = build_square_identification("moebius")
    t1 = Transit("V", Fraction(1, 3), (("F", 1), ("F", 3)))
    t2 = Transit("V", Fraction(2, 3), (("F", 1), ("F", 3)))
    d = Diagram(
        cx,
        {"c1": Crossing("F", 1)},
        {"t1": t1, "t2": t2},
        (
            Component((CrossVisit("c1", 2), TransitVisit("t1", 0)), ("F", "F"), True),
            Component((CrossVisit("c1", 1), TransitVisit("t2", 0)), ("F", "F"), True),
        ),
    )
    conn = Connection.trivial(cx, GroupSpec.free("g")).with_labels({
        ("V", ("F", 1)): "g",
    })
    return ExampleBundle(cx, validate_diagram(d), conn)


def _annulus_link() -> ExampleBundle:
    cx = build_square_identification("annulus")
    lower, upper, crossings = _weave("F", 2)
    t1 = Transit("V", Fraction(1, 3), (("F", 1), ("F", 3)))
    t2 = Transit("V", Fraction(2, 3), (("F", 1), ("F", 3)))
    d = Diagram(
        cx,
        crossings,
        {"t1": t1, "t2": t2},
        (
            Component(tuple(lower) + (TransitVisit("t1", 0),), ("F",) * 3, True),
            Component(tuple(upper) + (TransitVisit("t2", 0),), ("F",) * 3, True),
        ),
    )
    conn = Connection.trivial(cx, GroupSpec.free("g")).with_labels({
        ("V", ("F", 1)): "g",
    })
    return ExampleBundle(cx, validate_diagram(d), conn)


def _theta3_connection(cx: TwoComplex) -> Connection:
    return Connection.trivial(cx, GroupSpec.free("u", "v")).with_labels({
        ("v.b", ("F.e0", 1)): "u",
        ("v.b", ("F.e2", 1)): "v^-1 u",
    })


def _Ln(n: int) -> ExampleBundle:
    if n < 0:
        raise DiagramError("L(n) needs n >= 0")
    cx = theta3_cylinder()
    lower, upper, crossings = _weave("F.e0", 2 * n)
    tb1 = Transit("v.b", Fraction(1, 3), (("F.e0", 1), ("F.e1", 1)))
    ta1 = Transit("v.a", Fraction(1, 3), (("F.e1", 3), ("F.e0", 3)))
    tb2 = Transit("v.b", Fraction(2, 3), (("F.e0", 1), ("F.e2", 1)))
    ta2 = Transit("v.a", Fraction(2, 3), (("F.e2", 3), ("F.e0", 3)))
    comp1 = Component(tuple(lower) + (TransitVisit("tb1", 0), TransitVisit("ta1", 0)),
                      ("F.e0",) * (len(lower)) + ("F.e1", "F.e0"), True)
    comp2 = Component(tuple(upper) + (TransitVisit("tb2", 0), TransitVisit("ta2", 0)),
                      ("F.e0",) * (len(upper)) + ("F.e2", "F.e0"), True)
    d = Diagram(cx, crossings,
                {"tb1": tb1, "ta1": ta1, "tb2": tb2, "ta2": ta2},
                (comp1, comp2))
    return ExampleBundle(cx, validate_diagram(d), _theta3_connection(cx))


def _Kn(n: int) -> ExampleBundle:
    if n < 0:
        raise DiagramError("K(n) needs n >= 0")
    cx = theta3_cylinder()
    lower, upper, crossings = _weave("F.e0", 2 * n + 1)
    tb_hi = Transit("v.b", Fraction(2, 3), (("F.e0", 1), ("F.e1", 1)))
    ta_hi = Transit("v.a", Fraction(2, 3), (("F.e1", 3), ("F.e0", 3)))
    tb_lo = Transit("v.b", Fraction(1, 3), (("F.e0", 1), ("F.e2", 1)))
    ta_lo = Transit("v.a", Fraction(1, 3), (("F.e2", 3), ("F.e0", 3)))
    events = (tuple(lower) + (TransitVisit("tb_hi", 0), TransitVisit("ta_hi", 0))
              + tuple(upper) + (TransitVisit("tb_lo", 0), TransitVisit("ta_lo", 0)))
    faces = (("F.e0",) * len(lower) + ("F.e1", "F.e0")
             + ("F.e0",) * len(upper) + ("F.e2", "F.e0"))
    comp = Component(events, faces, True)
    d = Diagram(cx, crossings,
                {"tb_hi": tb_hi, "ta_hi": ta_hi, "tb_lo": tb_lo, "ta_lo": ta_lo},
                (comp,))
    return ExampleBundle(cx, validate_diagram(d), _theta3_connection(cx))


def _local(code: PlanarCode) -> ExampleBundle:
    cx = build_disc()
    d = orient_all(draw_local(cx, "F", code))
    conn = Connection.trivial(cx, GroupSpec.free())
    return ExampleBundle(cx, d, conn)


def example(name: str, n: Optional[int] = None) -> ExampleBundle:
    """Construct a named example; Ln and Kn take the parameter n."""
    if name in ("Ln", "Kn"):
        if n is None:
            raise DiagramError(f"example {name} needs the parameter n")
        return _Ln(n) if name == "Ln" else _Kn(n)
    if n is not None:
        raise DiagramError(f"example {name} takes no parameter")
    if name == "torus_link":
        return _torus_link()
    if name == "moebius_link":
        return _moebius_link()
    if name == "annulus_link":
        return _annulus_link()
    if name == "trefoil_left":
        return _local(trefoil_code("left"))
    if name == "trefoil_right":
        return _local(trefoil_code("right"))
    if name == "hopf_local":
        return _local(hopf_code())
    if name == "unknot_local":
        return _local(unknot_code())
    raise DiagramError(f"unknown example {name!r}")
