"""Links in compact 2-complexes: dotted diagrams, local moves, invariants."""

from .laurent import Laurent
from .twocomplex import (TwoComplex, EdgeClass, PointClass, validate_complex,
                         edge_class, vertex_link, classify_vertex,
                         build_graph_cylinder, build_square_identification,
                         build_disc)
from .diagram import (Diagram, Crossing, Transit, Component, CrossVisit,
                      TransitVisit, PlanarCode, validate_diagram, mirror,
                      reorient_face, reverse_component, trace_loop,
                      split_components, sc, draw_local, braid_code, orient_all,
                      same_diagram)
from .invariants import crossing_sign, lk, pairwise_lk, wri, Wri, parity_check, \
    local_obstruction
from .bracket import (SimpleSystem, smooth, state_term, bracket,
                      normalized_bracket, normalized_bracket_oriented, span,
                      check_span_theorem, check_state_inequality,
                      classical_oracle, classical_lk)
from .groups import GroupSpec, ConjClass
from .homotopy import (Connection, PiElement, TensorElement, SystemElement,
                       loop_class, component_class, LK, co, homotopy_bracket,
                       normalized_homotopy_bracket)
from .examples import ExampleBundle, EXAMPLE_IDS, example

__version__ = "0.1.0"
