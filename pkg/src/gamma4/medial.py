"""Diagram construction from signed planar graphs (inverse of goeritz).

A checkerboard-colored knot diagram is the medial of its white Tait graph:
vertices are white regions, edges are crossings (signed by eta), and the
planar embedding is a rotation system.  This module rebuilds the diagram
from that data, which is how the bundled PD codes were produced: a
published Goeritz matrix determines the signed white graph, the graph is
embedded, and the resulting PD code is verified by running goeritz() on it
and comparing matrices.

Corners between consecutive edges around a vertex are the diagram's arcs;
each graph edge becomes one crossing whose two strands run between the two
endpoint regions, and eta decides which strand dives under.
"""

from dataclasses import dataclass, field
from itertools import permutations

from .errors import DiagramError
from .knotio import PDCode
from .planar import faces

BEFORE = 0  # corner (prev edge, e) at an endpoint
AFTER = 1   # corner (e, next edge)


@dataclass
class PlanarGraph:
    """Connected multigraph with a rotation system; loops are rejected
    (a loop edge is a nugatory crossing).

    ``edges[k] = (u, v, eta)``; ``rotations[w]`` lists the incident edge
    ids counterclockwise around w (parallel edges appear once per copy).
    """

    vertex_count: int
    edges: list
    rotations: dict = field(default_factory=dict)

    def validate(self):
        seen = {w: list(self.rotations.get(w, ())) for w in range(self.vertex_count)}
        for k, (u, v, eta) in enumerate(self.edges):
            if u == v:
                raise DiagramError(f"edge {k} is a loop; loops are nugatory")
            if eta not in (1, -1):
                raise DiagramError(f"edge {k} has sign {eta}, expected +-1")
            for w in (u, v):
                if k not in seen[w]:
                    raise DiagramError(f"edge {k} missing from rotation of vertex {w}")
        for w, rot in seen.items():
            incident = [k for k, (u, v, _s) in enumerate(self.edges) if w in (u, v)]
            if sorted(rot) != sorted(incident):
                raise DiagramError(f"rotation at vertex {w} does not list its "
                                   f"incident edges exactly once")

    def goeritz_full(self):
        """G' predicted directly from the graph (vertex-indexed)."""
        m = self.vertex_count
        gfull = [[0] * m for _ in range(m)]
        for (u, v, eta) in self.edges:
            gfull[u][v] -= eta
            gfull[v][u] -= eta
        for i in range(m):
            gfull[i][i] = -sum(gfull[i][k] for k in range(m) if k != i)
        return gfull


def medial_pd(graph: PlanarGraph):
    """Build the PD code of the medial diagram of a signed planar graph.

    Returns ``(pd, region_quadrants)`` where ``region_quadrants[w]`` is a
    (crossing, quadrant-slot) pair lying inside the white region of vertex
    w, usable to root a checkerboard coloring at a chosen region.

    Raises DiagramError if the medial closes into more than one component.
    """
    graph.validate()
    n = len(graph.edges)
    if n == 0:
        raise DiagramError("empty graph has no medial diagram")

    # corner (w, i) sits between rotations[w][i] and rotations[w][i+1];
    # it joins crossing rotations[w][i] (AFTER end) to rotations[w][i+1]
    # (BEFORE end).  Crossing ends are keyed (edge, vertex, BEFORE|AFTER).
    corner_of_end = {}
    ends_of_corner = {}
    for w in range(graph.vertex_count):
        rot = graph.rotations[w]
        deg = len(rot)
        for i in range(deg):
            e_after = rot[i]
            e_before = rot[(i + 1) % deg]
            corner = (w, i)
            ends_of_corner[corner] = ((e_after, w, AFTER), (e_before, w, BEFORE))
            corner_of_end[(e_after, w, AFTER)] = corner
            corner_of_end[(e_before, w, BEFORE)] = corner

    def strand_partner(end):
        # both strands of crossing e run between the two endpoint regions:
        # u-AFTER <-> v-AFTER and u-BEFORE <-> v-BEFORE
        e, w, side = end
        u, v, _eta = graph.edges[e]
        return (e, v if w == u else u, side)

    def corner_partner(end):
        corner = corner_of_end[end]
        first, second = ends_of_corner[corner]
        return second if first == end else first

    # Walk the knot: alternate crossing hops and corner (arc) hops.
    start = (0, graph.edges[0][0], AFTER)
    walk_ends = []
    end = start
    while True:
        walk_ends.append(end)             # entering the crossing here
        exit_end = strand_partner(end)
        walk_ends.append(exit_end)        # leaving the crossing here
        end = corner_partner(exit_end)
        if end == start:
            break
        if len(walk_ends) > 4 * n:
            raise DiagramError("medial walk failed to close")
    if len(walk_ends) != 4 * n:
        raise DiagramError("medial diagram has more than one component")

    # Arc labels: arc k runs from walk_ends[2k+1] (exit) to walk_ends[2k+2]
    # (next entry); the arc entering the very first crossing is the last.
    arc_count = 2 * n
    label_at_end = {}
    for k in range(arc_count):
        label = k + 1
        exit_end = walk_ends[2 * k + 1]
        entry_end = walk_ends[(2 * k + 2) % (4 * n)]
        label_at_end[exit_end] = label
        label_at_end[entry_end] = label
    incoming = {walk_ends[2 * k]: True for k in range(arc_count)}

    # Quadrant geometry per crossing, with the under-strand chosen by eta:
    # counterclockwise end order is (v,BEFORE), (u,AFTER), (u,BEFORE),
    # (v,AFTER); eta = +1 puts the BEFORE-BEFORE strand underneath.
    crossings = []
    region_quadrants = {}
    for e, (u, v, eta) in enumerate(graph.edges):
        ccw = [(e, v, BEFORE), (e, u, AFTER), (e, u, BEFORE), (e, v, AFTER)]
        under_side = BEFORE if eta == 1 else AFTER
        under_ends = [x for x in ccw if x[2] == under_side]
        a_end = next(x for x in under_ends if incoming.get(x))
        a_pos = ccw.index(a_end)
        quad = [ccw[(a_pos + off) % 4] for off in range(4)]
        crossings.append(tuple(label_at_end[x] for x in quad))
        # the quadrant between the two w-side ends lies inside region w;
        # they are cyclically adjacent, so locate the slot pair (s, s+1)
        for w in (u, v):
            slots = sorted((quad.index((e, w, BEFORE)), quad.index((e, w, AFTER))))
            s = slots[0] if slots == [slots[0], slots[0] + 1] else 3
            region_quadrants.setdefault(w, (e, s))

    pd = PDCode(tuple(crossings))
    return pd, region_quadrants


def outer_face_for_region(pd, region_quadrant):
    """Face index of the region marked by a (crossing, quadrant) pair."""
    fs = faces(pd)
    return fs.quadrant_face()[region_quadrant]


def fan_graph(apex_counts, path_counts, eta=1):
    """Twist-chain graph: a path of regions R1..Rk under an apex R0.

    ``apex_counts[i]`` parallel edges join R0 to R_{i+1} and
    ``path_counts[i]`` parallel edges join R_{i+1} to R_{i+2}; every edge
    carries the same sign, so the medial diagram is alternating.  These
    fans are the white graphs of twist-region chains (rational tangle
    closures), which is enough to realize any cyclic linking form met in
    practice.
    """
    if len(path_counts) != len(apex_counts) - 1:
        raise ValueError("need one path gap fewer than apex vertices")
    if any(c < 0 for c in apex_counts) or any(c < 1 for c in path_counts):
        raise ValueError("apex counts must be >= 0 and path counts >= 1")
    if sum(apex_counts) == 0:
        raise ValueError("apex must meet the path somewhere")
    k = len(apex_counts)
    edges = []
    apex_ids, path_ids = [], []
    for i, c in enumerate(apex_counts):
        ids = [len(edges) + j for j in range(c)]
        edges += [(0, i + 1, eta)] * c
        apex_ids.append(ids)
    for i, c in enumerate(path_counts):
        ids = [len(edges) + j for j in range(c)]
        edges += [(i + 1, i + 2, eta)] * c
        path_ids.append(ids)
    # apex sees the path vertices left to right; a path vertex sees its
    # west neighbors, east neighbors, then the apex copies, with parallel
    # groups reversed at their far ends so each pair bounds a bigon
    rotations = {0: [e for ids in apex_ids for e in ids]}
    for i in range(1, k + 1):
        rot = []
        if i >= 2:
            rot += list(reversed(path_ids[i - 2]))
        if i <= k - 1:
            rot += path_ids[i - 1]
        rot += list(reversed(apex_ids[i - 1]))
        rotations[i] = rot
    return PlanarGraph(vertex_count=k + 1, edges=edges, rotations=rotations)


def conjugate_by_permutation_sign(a, b, fix_first=False):
    """Search for a simultaneous row/column permutation and global sign
    taking matrix a to matrix b; returns (perm, sign) or None.

    With ``fix_first`` the permutation must fix index 0 (used when both
    matrices are rooted at the same distinguished region R0).
    """
    m = len(a)
    if len(b) != m:
        return None
    if fix_first and m > 0:
        candidates = ([0] + list(rest) for rest in permutations(range(1, m)))
    else:
        candidates = permutations(range(m))
    for perm in candidates:
        for sign in (1, -1):
            if all(sign * a[perm[i]][perm[j]] == b[i][j]
                   for i in range(m) for j in range(m)):
                return list(perm), sign
    return None
