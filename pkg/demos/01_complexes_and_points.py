"""Build 2-complexes and classify their points.

A complex is a set of polygonal faces glued along directed edges.  Every
point falls into one of four classes read off the link of the point:
generic (surface) points, boundary points, ridge points where three or
more sheets meet, and singular points.
"""

from linkcx import (build_disc, build_graph_cylinder,
                    build_square_identification, classify_vertex, edge_class)

# The torus: one square, opposite sides glued.  A closed surface, so
# every point is generic.
torus = build_square_identification("torus")
print("torus edges:", {e: edge_class(torus, e).kind.value for e in torus.edges})
print("torus vertex:", classify_vertex(torus, "P").value)

# The Moebius band needs a flip in the gluing; its boundary is one circle.
moebius = build_square_identification("moebius")
print("moebius edges:", {e: edge_class(moebius, e).kind.value
                         for e in moebius.edges})

# The cylinder over the theta graph (two vertices joined by three edges)
# is the simplest complex with ridges: the two vertical edges carry three
# sheets each, and the four corners are singular points.
theta = build_graph_cylinder(["a", "b"],
                             {"e0": ("a", "b"), "e1": ("a", "b"),
                              "e2": ("a", "b")})
print("theta cylinder ridge edges:",
      [e for e in theta.edges if edge_class(theta, e).kind.value == "ridge"])
print("singular vertices:",
      [v for v in theta.vertices if classify_vertex(theta, v).value == "singular"])

# Any graph works; the count of singular points is twice the number of
# graph vertices of degree three or more.
star = build_graph_cylinder(["c", "x", "y", "z"],
                            {"a": ("c", "x"), "b": ("c", "y"), "d": ("c", "z")})
print("star cylinder singular count:",
      sum(1 for v in star.vertices
          if classify_vertex(star, v).value == "singular"))

# A lone disc for drawing classical diagrams locally.
disc = build_disc()
print("disc:", dict(disc.faces))
