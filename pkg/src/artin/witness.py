"""Case analysis, the polygon P, its geodesics, and the malnormality certificate.

Translates ``g·Tile`` are labelled by positive words in the generators of Γ.
Two copies of a simplex ``x`` are identified exactly when ``g^-1·g'`` freely
reduces to a word in the generators of the local group of ``x``; no group
relations are used, so every identification made is genuine.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Optional

from .deligne import (
    AUGMENTED_COEFFICIENT,
    INF,
    TWO_PI,
    DefiningGraph,
    LinkGraph,
    is_connected,
    is_reducible,
    is_right_angled,
    is_two_dimensional,
    systole,
)

TOLERANCE = 1e-6
STRIP_CAP = 10**5


class PreconditionError(ValueError):
    """The defining graph is outside the scope of the case analysis."""

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


class GeometryError(RuntimeError):
    pass


class InconclusiveError(RuntimeError):
    pass


# --- case analysis -----------------------------------------------------------


@dataclass(frozen=True)
class CaseResult:
    situation: str
    generators: tuple
    coefficients: dict
    augmented: Optional[tuple] = None  # the pair given a coefficient-6 edge, if any

    @property
    def m_ab(self) -> int:
        return self.coefficients["ab"]


def check_preconditions(graph: DefiningGraph) -> None:
    if len(graph.vertices) < 3:
        raise PreconditionError("rank", "rank is below 3")
    if not is_connected(graph):
        raise PreconditionError(
            "disconnected", "Γ is disconnected: A_Γ splits as a free product of the component groups"
        )
    report = is_two_dimensional(graph)
    if not report.ok:
        raise PreconditionError("dimension", f"A_Γ is not 2-dimensional: {report.reason}")
    if is_right_angled(graph):
        raise PreconditionError(
            "right-angled", "A_Γ is right angled; acylindrical hyperbolicity is known from the RAAG case"
        )
    if is_reducible(graph):
        raise PreconditionError("reducible", "Γ is a join along coefficient-2 edges (A_Γ is a direct product)")


def _coeffs(graph: DefiningGraph, names: str, gens: tuple) -> dict:
    index = dict(zip(names, gens))
    out = {}
    for pair in ("ab", "ac", "bc", "cd", "ad", "bd"):
        if pair[0] in index and pair[1] in index:
            out[pair] = graph.m(index[pair[0]], index[pair[1]])
    return out


def _two_dim_with(graph: DefiningGraph, s, t) -> bool:
    return is_two_dimensional(graph.with_edge(s, t, AUGMENTED_COEFFICIENT)).ok


def classify_cases(graph: DefiningGraph) -> CaseResult:
    """The first situation S1-S4 found, scanning generator tuples in name order.

    S1: m_ab, m_ac >= 3 and m_bc in [3, ∞).  S2: m_ac = 2, m_ab >= 3,
    m_bc in [5, ∞).  S3: m_ac = 2, m_ab = m_bc = 4.  After those, a triple
    with m_ab >= 3, m_ac finite and m_bc = ∞ whose augmented graph stays
    2-dimensional is reported as S2 on the augmented graph.  S4: a full
    cycle b-c-d-a with coefficients (2, 2, 2, n), n >= 3.
    """
    check_preconditions(graph)
    order = graph.order()
    triples = list(permutations(order, 3))

    def m(x, y):
        return graph.m(x, y)

    for a, b, c in triples:
        if 3 <= m(a, b) < INF and 3 <= m(a, c) < INF and 3 <= m(b, c) < INF:
            return CaseResult("S1", (a, b, c), _coeffs(graph, "abc", (a, b, c)))
    for a, b, c in triples:
        if m(a, c) == 2 and 3 <= m(a, b) < INF and 5 <= m(b, c) < INF:
            return CaseResult("S2", (a, b, c), _coeffs(graph, "abc", (a, b, c)))
    for a, b, c in triples:
        if m(a, c) == 2 and m(a, b) == 4 and m(b, c) == 4:
            return CaseResult("S3", (a, b, c), _coeffs(graph, "abc", (a, b, c)))
    for a, b, c in triples:
        if 3 <= m(a, b) < INF and m(a, c) < INF and m(b, c) == INF and _two_dim_with(graph, b, c):
            return CaseResult("S2", (a, b, c), _coeffs(graph, "abc", (a, b, c)), (b, c))
    for a, b, c, d in permutations(order, 4):
        if (
            3 <= m(a, b) < INF
            and m(b, c) == 2
            and m(c, d) == 2
            and m(a, d) == 2
            and m(a, c) == INF
            and m(b, d) == INF
        ):
            return CaseResult("S4", (a, b, c, d), _coeffs(graph, "abcd", (a, b, c, d)))
    raise GeometryError("no situation applies; the case analysis guarantees one, so this is a bug")


def verify_case(case: CaseResult) -> bool:
    """Re-check the defining inequalities of the reported situation."""
    c = case.coefficients
    if case.situation == "S1":
        return c["ab"] >= 3 and c["ac"] >= 3 and c["bc"] >= 3
    if case.situation == "S2":
        if case.augmented:
            return 3 <= c["ab"] < INF and c["ac"] < INF and c["bc"] == INF
        return c["ac"] == 2 and c["ab"] >= 3 and c["bc"] >= 5
    if case.situation == "S3":
        return c["ac"] == 2 and c["ab"] == 4 and c["bc"] == 4
    if case.situation == "S4":
        return (
            3 <= c["ab"] < INF
            and c["bc"] == c["cd"] == c["ad"] == 2
            and c["ac"] == INF
            and c["bd"] == INF
        )
    return False


_WITNESS = {"S1": "c", "S2": "cbc", "S3": "cbcabc", "S4": "cd"}
_TRANSLATES = {
    "S1": ["", "c"],
    "S2": ["", "c", "cb", "cbc"],
    "S3": ["", "c", "cb", "cbc", "cba", "cbca", "cbcab", "cbcabc"],
    "S4": ["", "c", "d", "cd"],
}
_FAN = {
    "S1": ["ab", "ba", "bc", "cb", "ca", "ac"],
    "S4": ["ab", "ba", "bc", "cb", "cd", "dc", "da", "ad"],
}


def _spell(case: CaseResult, pattern: str) -> tuple:
    index = dict(zip("abcd", case.generators))
    return tuple(index[ch] for ch in pattern)


def witness_element(case: CaseResult) -> tuple:
    """The element ``g`` as a tuple of generator names."""
    return _spell(case, _WITNESS[case.situation])


def format_label(word: tuple) -> str:
    if not word:
        return "1"
    sep = "" if all(len(x) == 1 for x in word) else " "
    return sep.join(word)


# --- free words over the ambient generators -----------------------------------


def _free_quotient(g: tuple, h: tuple) -> list:
    """Free reduction of ``g^-1·h`` for positive words, as ``(letter, ±1)`` pairs."""
    letters = [(x, -1) for x in reversed(g)] + [(x, 1) for x in h]
    out: list = []
    for x in letters:
        if out and out[-1][0] == x[0] and out[-1][1] == -x[1]:
            out.pop()
        else:
            out.append(x)
    return out


def in_local_group(g: tuple, h: tuple, letters) -> bool:
    return all(x in letters for x, _ in _free_quotient(g, h))


# --- the polygon -------------------------------------------------------------


@dataclass(frozen=True)
class PTriangle:
    tile: int
    s: str
    t: str
    m: int
    corners: tuple  # P-vertex ids of (v_∅, v_s, v_st)

    def name(self) -> str:
        return f"T_{self.s}{self.t}"

    def angles(self) -> tuple:
        return (Fraction(1, 2) - Fraction(1, 2 * self.m), Fraction(1, 2), Fraction(1, 2 * self.m))

    def sides(self) -> dict:
        """Euclidean lengths keyed by the corner-index pair."""
        theta = math.pi / (2 * self.m)
        return {(0, 1): 1.0, (0, 2): 1.0 / math.sin(theta), (1, 2): 1.0 / math.tan(theta)}

    def side(self, i: int, j: int) -> float:
        return self.sides()[(min(i, j), max(i, j))]


@dataclass
class PolygonComplex:
    case: CaseResult
    translates: list  # tuple words
    vertex_names: list  # P-vertex id -> (tile, domain vertex) representative
    triangles: list
    edge_triangles: dict  # edge id -> triangle indices
    triangle_edges: list  # triangle index -> {(i, j): edge id}
    source: int
    target: int
    link_systoles: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def vertex_label(self, v: int) -> str:
        tile, x = self.vertex_names[v]
        prefix = format_label(self.translates[tile])
        return f"{'' if prefix == '1' else prefix + '·'}{x}"

    def link(self, v: int) -> LinkGraph:
        lk = LinkGraph(name=self.vertex_label(v))
        for ti, tri in enumerate(self.triangles):
            if v not in tri.corners:
                continue
            i = tri.corners.index(v)
            others = [j for j in range(3) if j != i]
            e1 = self.triangle_edges[ti][(min(i, others[0]), max(i, others[0]))]
            e2 = self.triangle_edges[ti][(min(i, others[1]), max(i, others[1]))]
            lk.add_vertex(("e", e1))
            lk.add_vertex(("e", e2))
            lk.edges.append((("e", e1), ("e", e2), tri.angles()[i]))
        return lk


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def _fan(case: CaseResult) -> list:
    pattern = _FAN["S4" if case.situation == "S4" else "S1"]
    return [_spell(case, p) for p in pattern]


def _vertex_letters(x: tuple) -> set:
    return set(x[1:])


def build_polygon(graph: DefiningGraph, case: CaseResult) -> PolygonComplex:
    """Glue the translates of the tile by the syntactic local-group rule and check links exactly."""
    if case.augmented:
        graph = graph.with_edge(*case.augmented, AUGMENTED_COEFFICIENT, free=True)
    translates = [_spell(case, w) for w in _TRANSLATES[case.situation]]
    fan = _fan(case)

    def dom(s=None, t=None):
        if s is None:
            return "v_∅"
        if t is None:
            return f"v_{s}"
        return "v_" + "".join(sorted((s, t)))

    # domain vertices with their local-group letters
    local = {"v_∅": set()}
    for s, t in fan:
        local[dom(s)] = {s}
        local[dom(s, t)] = {s, t}

    uf = _UnionFind()
    for i, g in enumerate(translates):
        for j, h in enumerate(translates):
            if j <= i:
                continue
            for x, letters in local.items():
                if in_local_group(g, h, letters):
                    uf.union((i, x), (j, x))

    edge_uf = _UnionFind()
    edge_local = {}
    for s, t in fan:
        edge_local[(dom(), dom(s))] = set()
        edge_local[(dom(), dom(s, t))] = set()
        edge_local[(dom(s), dom(s, t))] = {s}
    for i, g in enumerate(translates):
        for j, h in enumerate(translates):
            if j <= i:
                continue
            for e, letters in edge_local.items():
                if letters and in_local_group(g, h, letters):
                    edge_uf.union((i, e), (j, e))

    ids: dict = {}
    names: list = []

    def vid(tile, x):
        root = uf.find((tile, x))
        if root not in ids:
            ids[root] = len(names)
            names.append(root)
        return ids[root]

    eids: dict = {}

    def eid(tile, x, y):
        root = edge_uf.find((tile, (x, y)))
        return eids.setdefault(root, len(eids))

    triangles, triangle_edges = [], []
    edge_triangles: dict = {}
    for tile in range(len(translates)):
        for s, t in fan:
            corners = (vid(tile, dom()), vid(tile, dom(s)), vid(tile, dom(s, t)))
            tri = PTriangle(tile, s, t, graph.m(s, t), corners)
            edges = {
                (0, 1): eid(tile, dom(), dom(s)),
                (0, 2): eid(tile, dom(), dom(s, t)),
                (1, 2): eid(tile, dom(s), dom(s, t)),
            }
            for e in edges.values():
                edge_triangles.setdefault(e, []).append(len(triangles))
            triangles.append(tri)
            triangle_edges.append(edges)

    a, b = case.generators[0], case.generators[1]
    witness = witness_element(case)
    source = vid(0, dom(a, b))
    target = vid(translates.index(witness), dom(a, b))
    poly = PolygonComplex(case, translates, names, triangles, edge_triangles, triangle_edges, source, target)

    for v in range(len(names)):
        poly.link_systoles[v] = systole(poly.link(v))
    bad = [poly.vertex_label(v) for v, sys in poly.link_systoles.items() if sys < TWO_PI]
    if bad:
        raise GeometryError(f"link systole below 2π at {', '.join(bad)}")

    for e, tris in edge_triangles.items():
        if len(tris) > 2:
            poly.notes.append(f"edge {e} is shared by {len(tris)} triangles")
    if case.situation == "S4":
        c, d = case.generators[2], case.generators[3]
        poly.notes.append(
            f"tiles {d}·Tile and {c}{d}·Tile are not glued along their {c}-edges: "
            f"{d}^-1·{c}{d} is not syntactically a power of {c}"
        )
    return poly


# --- planar unfolding and geodesics ------------------------------------------


def _place(p: tuple, q: tuple, dp: float, dq: float, side: float) -> tuple:
    """Point at distances ``dp`` from p and ``dq`` from q, on the ``side`` (+1 left, -1 right) of p->q."""
    dx, dy = q[0] - p[0], q[1] - p[1]
    base = math.hypot(dx, dy)
    x = (dp * dp - dq * dq + base * base) / (2 * base)
    h = math.sqrt(max(dp * dp - x * x, 0.0))
    ux, uy = dx / base, dy / base
    return (p[0] + x * ux - side * h * uy, p[1] + x * uy + side * h * ux)


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass
class Segment:
    start: int
    end: int
    length: float
    strip: list  # [(triangle index, {corner index: planar point})] with start at the origin


@dataclass
class Crossing:
    tile: str
    triangle: str
    triangle_index: int
    barycentric: tuple
    clearance: float
    chord: tuple  # barycentric coordinates of the chord endpoints in the triangle
    cell: str = "triangle"  # or the name of an open edge with trivial stabiliser


@dataclass
class Geodesic:
    vertices: list
    segments: list
    length: float
    skeleton_length: float
    crossings: list

    @property
    def best(self) -> Optional[Crossing]:
        """The widest open-triangle crossing, falling back to open edges."""
        faces = [c for c in self.crossings if c.cell == "triangle" and c.clearance >= TOLERANCE]
        pool = faces or self.crossings
        return max(pool, key=lambda c: (c.clearance >= TOLERANCE, c.clearance), default=None)

    @property
    def crosses_open_triangle(self) -> bool:
        return any(c.cell == "triangle" and c.clearance >= TOLERANCE for c in self.crossings)


def _visible(poly: PolygonComplex, source: int, budget: list) -> dict:
    """Straight segments from ``source`` through simple triangle strips, keyed by endpoint."""
    best: dict = {}
    eps = 1e-12

    def angle_of(pt):
        return math.atan2(pt[1], pt[0])

    def record(w, pt, strip):
        d = math.hypot(*pt)
        if d > eps and (w not in best or d < best[w].length - 1e-12):
            best[w] = Segment(source, w, d, list(strip))

    def explore(ti, coords, lo, hi, entry, strip, used):
        budget[0] += 1
        if budget[0] > STRIP_CAP:
            raise GeometryError(f"more than {STRIP_CAP} triangle strips")
        tri = poly.triangles[ti]
        strip = strip + [(ti, coords)]
        for k in range(3):
            if tri.corners[k] == source:
                continue
            theta = angle_of(coords[k])
            if lo - 1e-9 <= theta <= hi + 1e-9:
                record(tri.corners[k], coords[k], strip)
        for (i, j), e in poly.triangle_edges[ti].items():
            if e == entry or source in (tri.corners[i], tri.corners[j]):
                continue
            ai, aj = angle_of(coords[i]), angle_of(coords[j])
            nlo, nhi = max(lo, min(ai, aj)), min(hi, max(ai, aj))
            if nhi - nlo <= 1e-12:
                continue
            k = 3 - i - j
            for nti in poly.edge_triangles[e]:
                if nti == ti or nti in used:
                    continue
                nxt = poly.triangles[nti]
                pi, pj = nxt.corners.index(tri.corners[i]), nxt.corners.index(tri.corners[j])
                pk = 3 - pi - pj
                side = -1.0 if _cross(coords[i], coords[j], coords[k]) > 0 else 1.0
                r = _place(coords[i], coords[j], nxt.side(pi, pk), nxt.side(pj, pk), side)
                ncoords = {pi: coords[i], pj: coords[j], pk: r}
                explore(nti, ncoords, nlo, nhi, e, strip, used | {nti})

    for ti, tri in enumerate(poly.triangles):
        if source not in tri.corners:
            continue
        i = tri.corners.index(source)
        j, k = [x for x in range(3) if x != i]
        pj = (tri.side(i, j), 0.0)
        pk = _place((0.0, 0.0), pj, tri.side(i, k), tri.side(j, k), 1.0)
        # rotate so the wedge straddles angle 0 and never meets the branch cut
        half = math.atan2(pk[1], pk[0]) / 2
        c, s = math.cos(-half), math.sin(-half)
        rot = lambda p: (c * p[0] - s * p[1], s * p[0] + c * p[1])  # noqa: E731
        coords = {i: (0.0, 0.0), j: rot(pj), k: rot(pk)}
        lo, hi = sorted((math.atan2(coords[j][1], coords[j][0]), math.atan2(coords[k][1], coords[k][0])))
        explore(ti, coords, lo, hi, None, [], frozenset({ti}))
    return best


def _barycentric(pt, a, b, c) -> tuple:
    det = _cross(a, b, c)
    l1 = _cross(pt, b, c) / det
    l2 = _cross(a, pt, c) / det
    return (l1, l2, 1.0 - l1 - l2)


def _dist_to_segment(p, a, b) -> float:
    dx, dy = b[0] - a[0], b[1] - a[1]
    t = max(0.0, min(1.0, ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / (dx * dx + dy * dy)))
    return math.hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy)


def _clip(end: tuple, a, b, c) -> Optional[tuple]:
    """Parameter interval of the segment 0->end inside triangle abc."""
    t0, t1 = 0.0, 1.0
    orient = 1.0 if _cross(a, b, c) > 0 else -1.0
    for p, q in ((a, b), (b, c), (c, a)):
        # inside: orient * cross(p, q, x) >= 0, with x = t*end, affine in t
        f0 = orient * _cross(p, q, (0.0, 0.0))
        f1 = orient * _cross(p, q, end) - f0
        if abs(f1) < 1e-15:
            if f0 < -1e-12:
                return None
            continue
        t = -f0 / f1
        if f1 > 0:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
    return (t0, t1) if t1 - t0 > 1e-12 else None


def _segment_crossings(poly: PolygonComplex, seg: Segment) -> list:
    end = None
    last_ti, last_coords = seg.strip[-1]
    tri = poly.triangles[last_ti]
    end = last_coords[tri.corners.index(seg.end)]
    out = []
    for ti, coords in seg.strip:
        tri = poly.triangles[ti]
        a, b, c = coords[0], coords[1], coords[2]
        span = _clip(end, a, b, c)
        if span is None:
            continue
        t0, t1 = span
        mid = ((t0 + t1) / 2 * end[0], (t0 + t1) / 2 * end[1])
        clearance = min(_dist_to_segment(mid, a, b), _dist_to_segment(mid, b, c), _dist_to_segment(mid, c, a))
        p0 = (t0 * end[0], t0 * end[1])
        p1 = (t1 * end[0], t1 * end[1])
        chord = (_barycentric(p0, a, b, c), _barycentric(p1, a, b, c))
        cell = "triangle"
        if clearance < TOLERANCE:
            # a chord along a side of the triangle lies in that open edge
            side = [k for k in range(3) if abs(chord[0][k]) < 1e-9 and abs(chord[1][k]) < 1e-9]
            if not side:
                continue
            i, j = [x for x in range(3) if x != side[0]]
            if (i, j) == (1, 2):
                continue  # e_{s,st} is fixed by <s>
            cell = f"e_{tri.s}" if (i, j) == (0, 1) else "e_" + "".join(sorted((tri.s, tri.t)))
            clearance = min(math.dist(mid, coords[i]), math.dist(mid, coords[j]))
        out.append(
            Crossing(
                tile=format_label(poly.translates[tri.tile]),
                triangle=tri.name(),
                triangle_index=ti,
                barycentric=_barycentric(mid, a, b, c),
                clearance=clearance,
                chord=chord,
                cell=cell,
            )
        )
    return out


def _dijkstra(n: int, adj: dict, source: int, target: int):
    dist = {source: 0.0}
    prev: dict = {}
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if u == target:
            break
        if d > dist[u]:
            continue
        for v, w, payload in adj.get(u, ()):
            nd = d + w
            if nd < dist.get(v, INF) - 1e-12:
                dist[v] = nd
                prev[v] = (u, payload)
                heapq.heappush(heap, (nd, v))
    if target not in dist:
        return None, []
    path = []
    v = target
    while v != source:
        u, payload = prev[v]
        path.append(payload)
        v = u
    return dist[target], list(reversed(path))


def polygon_geodesic(poly: PolygonComplex, start: Optional[int] = None, end: Optional[int] = None) -> Geodesic:
    """Shortest path in P: straight in every unfolded strip, bending only at vertices."""
    start = poly.source if start is None else start
    end = poly.target if end is None else end
    n = len(poly.vertex_names)
    if not (0 <= start < n and 0 <= end < n):
        raise GeometryError("endpoint is not a vertex of P")
    if start == end:
        return Geodesic([start], [], 0.0, 0.0, [])
    budget = [0]
    adj: dict = {}
    for v in range(n):
        for w, seg in _visible(poly, v, budget).items():
            adj.setdefault(v, []).append((w, seg.length, seg))
    length, segments = _dijkstra(n, adj, start, end)
    if length is None:
        raise GeometryError("endpoints lie in different components of P")

    skel: dict = {}
    for ti, tri in enumerate(poly.triangles):
        for i, j in ((0, 1), (0, 2), (1, 2)):
            u, v, w = tri.corners[i], tri.corners[j], tri.side(i, j)
            skel.setdefault(u, []).append((v, w, None))
            skel.setdefault(v, []).append((u, w, None))
    skeleton_length, _ = _dijkstra(n, skel, start, end)

    crossings = []
    for seg in segments:
        crossings.extend(_segment_crossings(poly, seg))
    vertices = [start] + [seg.end for seg in segments]
    return Geodesic(vertices, segments, length, skeleton_length, crossings)


# --- certificate -------------------------------------------------------------


@dataclass
class Certificate:
    case: CaseResult
    witness: tuple
    polygon: PolygonComplex
    geodesic: Geodesic

    @property
    def crossing(self) -> Crossing:
        return self.geodesic.best

    @property
    def conclusive(self) -> bool:
        best = self.crossing
        return best is not None and best.clearance >= TOLERANCE

    def to_dict(self) -> dict:
        case = self.case
        m = case.m_ab
        best = self.crossing
        a, b = case.generators[:2]
        return {
            "situation": case.situation,
            "generators": list(case.generators),
            "vertex": f"v_{a}{b}",
            "m_ab": m,
            "augmented_pair": list(case.augmented) if case.augmented else None,
            "witness_word": format_label(self.witness),
            "crossing": None
            if best is None
            else {
                "tile": best.tile,
                "triangle": best.triangle,
                "cell": best.cell,
                "barycentric": [round(x, 12) for x in best.barycentric],
                "clearance": best.clearance,
            },
            "conclusive": self.conclusive,
            "crosses_open_triangle": self.geodesic.crosses_open_triangle,
            "geodesic": {
                "vertices": [self.polygon.vertex_label(v) for v in self.geodesic.vertices],
                "length": self.geodesic.length,
                "skeleton_length": self.geodesic.skeleton_length,
            },
            "link_systoles": {
                self.polygon.vertex_label(v): ("inf" if s == INF else f"{s}π")
                for v, s in self.polygon.link_systoles.items()
            },
            "link_orbit_evidence": {
                "m_ab": m,
                "lower_bound_formula": f"d(v_∅, Δ^n·v_∅) = (π/{m})·ℓ_S(Δ^n) ≥ (π/{m})·({m}-2)·|n|",
                "unbounded": m >= 3,
            },
            "notes": list(self.polygon.notes),
        }


def emit_certificate(graph: DefiningGraph) -> Certificate:
    case = classify_cases(graph)
    poly = build_polygon(graph, case)
    geo = polygon_geodesic(poly)
    cert = Certificate(case, witness_element(case), poly, geo)
    if not cert.conclusive:
        raise InconclusiveError(
            "geodesic stays within 1e-6 of every cell with nontrivial stabiliser; nothing can be certified"
        )
    return cert


# --- drawing -----------------------------------------------------------------


def layout(poly: PolygonComplex) -> dict:
    """Planar coordinates per triangle by unfolding along a spanning tree (overlaps possible)."""
    placed: dict = {}
    order = []
    for root in range(len(poly.triangles)):
        if root in placed:
            continue
        tri = poly.triangles[root]
        p0 = (0.0, 0.0) if not placed else (max(x for c in placed.values() for x, _ in c.values()) + 3.0, 0.0)
        p1 = (p0[0] + tri.side(0, 1), p0[1])
        p2 = _place(p0, p1, tri.side(0, 2), tri.side(1, 2), 1.0)
        placed[root] = {0: p0, 1: p1, 2: p2}
        queue = [root]
        while queue:
            ti = queue.pop(0)
            order.append(ti)
            tri = poly.triangles[ti]
            coords = placed[ti]
            for (i, j), e in poly.triangle_edges[ti].items():
                k = 3 - i - j
                for nti in poly.edge_triangles[e]:
                    if nti in placed:
                        continue
                    nxt = poly.triangles[nti]
                    pi, pj = nxt.corners.index(tri.corners[i]), nxt.corners.index(tri.corners[j])
                    pk = 3 - pi - pj
                    side = -1.0 if _cross(coords[i], coords[j], coords[k]) > 0 else 1.0
                    r = _place(coords[i], coords[j], nxt.side(pi, pk), nxt.side(pj, pk), side)
                    placed[nti] = {pi: coords[i], pj: coords[j], pk: r}
                    queue.append(nti)
    return placed


def to_svg(cert: Certificate, size: int = 640) -> str:
    poly = cert.polygon
    placed = layout(poly)
    xs = [p[0] for c in placed.values() for p in c.values()]
    ys = [p[1] for c in placed.values() for p in c.values()]
    pad = 0.5
    x0, x1, y0, y1 = min(xs) - pad, max(xs) + pad, min(ys) - pad, max(ys) + pad
    scale = size / max(x1 - x0, y1 - y0)

    def tr(p):
        return ((p[0] - x0) * scale, (y1 - p[1]) * scale)

    def at(ti, bary):
        c = placed[ti]
        return tuple(bary[0] * c[0][k] + bary[1] * c[1][k] + bary[2] * c[2][k] for k in range(2))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{(x1 - x0) * scale:.0f}" '
        f'height="{(y1 - y0) * scale:.0f}">'
    ]
    for ti, coords in placed.items():
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in (tr(coords[k]) for k in range(3)))
        tri = poly.triangles[ti]
        out.append(
            f'<polygon points="{pts}" fill="#eef" stroke="#668" stroke-width="1">'
            f"<title>{format_label(poly.translates[tri.tile])}·{tri.name()}</title></polygon>"
        )
    for cr in cert.geodesic.crossings:
        p, q = tr(at(cr.triangle_index, cr.chord[0])), tr(at(cr.triangle_index, cr.chord[1]))
        out.append(
            f'<line x1="{p[0]:.2f}" y1="{p[1]:.2f}" x2="{q[0]:.2f}" y2="{q[1]:.2f}" '
            'stroke="#c00" stroke-width="2"/>'
        )
    best = cert.crossing
    if best is not None:
        x, y = tr(at(best.triangle_index, best.barycentric))
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="#c00"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
