"""Defining graphs, the fundamental domain K_Γ, and metric links of the modified Deligne complex.

Angles and link edge lengths are stored as :class:`fractions.Fraction`
multiples of π, so every comparison against 2π is exact.  Floating point
only appears in :meth:`DomainComplex.side_lengths`.
"""

from __future__ import annotations

import heapq
import json
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Union

from .garside import FormBuilder

INF = math.inf
TWO_PI = Fraction(2)
AUGMENTED_COEFFICIENT = 6

Coefficient = Union[int, float]


class GraphError(ValueError):
    pass


class DimensionError(ValueError):
    pass


# --- defining graphs ---------------------------------------------------------


@dataclass(frozen=True)
class DefiningGraph:
    vertices: tuple
    labels: dict = field(default_factory=dict)  # frozenset({s, t}) -> finite coefficient
    free_pairs: frozenset = frozenset()  # pairs whose local group is free (augmented edges)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex name")
        for pair, m in self.labels.items():
            if len(pair) != 2:
                raise GraphError("self-loop")
            if not pair <= set(self.vertices):
                raise GraphError(f"unknown vertex in edge {sorted(pair)}")
            if m < 2:
                raise GraphError(f"coefficient {m} < 2")

    def m(self, s, t) -> Coefficient:
        if s == t:
            raise ValueError("coefficient of a vertex with itself is undefined")
        return self.labels.get(frozenset((s, t)), INF)

    def order(self):
        return sorted(self.vertices)

    def edges(self) -> list:
        """Finite edges ``(s, t, m)`` with ``s < t``."""
        out = []
        for pair, m in self.labels.items():
            s, t = sorted(pair)
            out.append((s, t, m))
        return sorted(out)

    def neighbours(self, s) -> list:
        return sorted(t for t in self.vertices if t != s and self.m(s, t) < INF)

    def triangles(self) -> list:
        return [
            tri
            for tri in combinations(self.order(), 3)
            if all(self.m(x, y) < INF for x, y in combinations(tri, 2))
        ]

    def with_edge(self, s, t, m: int, free: bool = False) -> "DefiningGraph":
        labels = dict(self.labels)
        labels[frozenset((s, t))] = m
        pairs = self.free_pairs | {frozenset((s, t))} if free else self.free_pairs
        return DefiningGraph(self.vertices, labels, frozenset(pairs))

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"u": s, "v": t, "m": m} for s, t, m in self.edges()],
        }


def graph_from_dict(data: dict) -> DefiningGraph:
    try:
        vertices = tuple(str(v) for v in data["vertices"])
        raw_edges = data.get("edges", [])
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph description: {exc}") from None
    if len(set(vertices)) != len(vertices):
        raise GraphError("duplicate vertex name")
    labels: dict = {}
    seen = set()
    for edge in raw_edges:
        try:
            s, t, m = str(edge["u"]), str(edge["v"]), edge["m"]
        except (KeyError, TypeError):
            raise GraphError(f"malformed edge {edge!r}") from None
        if s == t:
            raise GraphError(f"self-loop at {s}")
        if s not in vertices or t not in vertices:
            raise GraphError(f"unknown vertex in edge {s}-{t}")
        pair = frozenset((s, t))
        if pair in seen:
            raise GraphError(f"duplicate edge {s}-{t}")
        seen.add(pair)
        if m in ("inf", "∞"):
            continue
        if isinstance(m, bool) or not isinstance(m, int):
            raise GraphError(f"coefficient {m!r} is neither an integer nor 'inf'")
        if m < 2:
            raise GraphError(f"coefficient {m} < 2 on edge {s}-{t}")
        labels[pair] = m
    return DefiningGraph(vertices, labels)


def load_graph(path) -> DefiningGraph:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid JSON: {exc}") from None
    return graph_from_dict(data)


def inverse(m: Coefficient) -> Fraction:
    return Fraction(0) if m == INF else Fraction(1, m)


@dataclass(frozen=True)
class DimensionReport:
    ok: bool
    triangle: Optional[tuple] = None
    total: Optional[Fraction] = None
    reason: str = ""


def is_two_dimensional(graph: DefiningGraph) -> DimensionReport:
    """Every triangle has ``Σ 1/m ≤ 1`` and Γ has at least one finite edge."""
    for tri in graph.triangles():
        a, b, c = tri
        total = inverse(graph.m(a, b)) + inverse(graph.m(a, c)) + inverse(graph.m(b, c))
        if total > 1:
            return DimensionReport(False, tri, total, f"triangle {a}{b}{c} has Σ1/m = {total} > 1")
    if not graph.labels:
        return DimensionReport(False, reason="discrete graph (no finite edge)")
    return DimensionReport(True)


def _components(vertices, adjacent) -> list:
    seen: set = set()
    comps = []
    for v in vertices:
        if v in seen:
            continue
        comp = []
        queue = deque([v])
        seen.add(v)
        while queue:
            u = queue.popleft()
            comp.append(u)
            for w in vertices:
                if w not in seen and adjacent(u, w):
                    seen.add(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def is_connected(graph: DefiningGraph) -> bool:
    return len(_components(graph.order(), lambda u, w: graph.m(u, w) < INF)) <= 1


def join_decomposition(graph: DefiningGraph) -> Optional[tuple]:
    """A split ``V = A ⊔ B`` with every cross pair labelled 2, if one exists."""
    comps = _components(graph.order(), lambda u, w: graph.m(u, w) != 2)
    if len(comps) < 2:
        return None
    first = tuple(sorted(comps[0]))
    rest = tuple(sorted(v for c in comps[1:] for v in c))
    return first, rest


def is_reducible(graph: DefiningGraph) -> bool:
    return join_decomposition(graph) is not None


def is_right_angled(graph: DefiningGraph) -> bool:
    return all(m == 2 for m in graph.labels.values())


# --- the fundamental domain --------------------------------------------------

V_EMPTY = ("v",)


def v_gen(s) -> tuple:
    return ("v", s)


def v_pair(s, t) -> tuple:
    return ("v",) + tuple(sorted((s, t)))


def vertex_label(v: tuple) -> str:
    return "v_∅" if len(v) == 1 else "v_" + "".join(v[1:])


@dataclass(frozen=True)
class Triangle:
    """``T_st``: the triangle ``(v_∅, v_s, v_st)``; angles in units of π."""

    s: str
    t: str
    m: int

    @property
    def vertices(self) -> tuple:
        return (V_EMPTY, v_gen(self.s), v_pair(self.s, self.t))

    @property
    def angles(self) -> tuple:
        return (Fraction(1, 2) - Fraction(1, 2 * self.m), Fraction(1, 2), Fraction(1, 2 * self.m))

    @property
    def name(self) -> str:
        return f"T_{self.s}{self.t}"


@dataclass
class DomainComplex:
    graph: DefiningGraph
    vertices: list
    edges: list
    triangles: list
    free_vertices: set = field(default_factory=set)

    def triangle(self, s, t) -> Triangle:
        for tri in self.triangles:
            if (tri.s, tri.t) == (s, t):
                return tri
        raise KeyError(f"no triangle T_{s}{t}")

    @staticmethod
    def side_lengths(m: int) -> dict:
        """Euclidean side lengths of ``T_st`` with ``e_s`` of length 1 (law of sines)."""
        theta = math.pi / (2 * m)
        return {"e_s": 1.0, "e_st": 1.0 / math.sin(theta), "e_s,st": 1.0 / math.tan(theta)}


def build_domain(graph: DefiningGraph, check: bool = True) -> DomainComplex:
    if check:
        report = is_two_dimensional(graph)
        if not report.ok:
            raise DimensionError(report.reason)
        if len(graph.vertices) < 3:
            raise DimensionError("rank must be at least 3")
    vertices = [V_EMPTY] + [v_gen(s) for s in graph.order()]
    edges = [(V_EMPTY, v_gen(s)) for s in graph.order()]
    triangles = []
    for s, t, m in graph.edges():
        vertices.append(v_pair(s, t))
        edges.append((V_EMPTY, v_pair(s, t)))
        edges.append((v_gen(s), v_pair(s, t)))
        edges.append((v_gen(t), v_pair(s, t)))
        triangles.append(Triangle(s, t, m))
        triangles.append(Triangle(t, s, m))
    free = {v_pair(*sorted(p)) for p in graph.free_pairs}
    return DomainComplex(graph, vertices, edges, triangles, free)


@dataclass
class Augmented:
    graph: DefiningGraph
    domain: DomainComplex
    changed: bool


def augment(graph: DefiningGraph, s, t) -> Augmented:
    """Add the coefficient-6 edge with free local group at an ∞-labelled pair."""
    if s == t:
        raise ValueError("augmentation needs two distinct generators")
    if graph.m(s, t) < INF:
        return Augmented(graph, build_domain(graph), False)
    bigger = graph.with_edge(s, t, AUGMENTED_COEFFICIENT, free=True)
    return Augmented(bigger, build_domain(bigger), True)


# --- metric link graphs ------------------------------------------------------


@dataclass
class LinkGraph:
    vertices: list = field(default_factory=list)
    edges: list = field(default_factory=list)  # (u, v, Fraction)
    exact: bool = True  # False when only a finite ball of an infinite link is present
    name: str = ""

    def __post_init__(self):
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self._pairs = {frozenset((u, v)) for u, v, _ in self.edges}

    def add_vertex(self, v) -> None:
        if v not in self._index:
            self._index[v] = len(self.vertices)
            self.vertices.append(v)

    def add_edge(self, u, v, length: Fraction) -> None:
        if length <= 0:
            raise ValueError("edge lengths must be positive")
        pair = frozenset((u, v))
        if pair in self._pairs:
            return
        self._pairs.add(pair)
        self.add_vertex(u)
        self.add_vertex(v)
        self.edges.append((u, v, Fraction(length)))

    def __contains__(self, v) -> bool:
        return v in self._index

    def adjacency(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for i, (u, v, length) in enumerate(self.edges):
            adj[u].append((v, length, i))
            adj[v].append((u, length, i))
        return adj

    def components(self) -> int:
        adj = self.adjacency()
        seen: set = set()
        count = 0
        for v in self.vertices:
            if v in seen:
                continue
            count += 1
            stack = [v]
            seen.add(v)
            while stack:
                u = stack.pop()
                for w, _, _ in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        return count

    def is_forest(self) -> bool:
        return len(self.edges) == len(self.vertices) - self.components()

    def to_dot(self) -> str:
        lines = [f'graph "{self.name or "link"}" {{']
        names = {v: f"n{i}" for i, v in enumerate(self.vertices)}
        for v in self.vertices:
            lines.append(f'  {names[v]} [label="{_plain(v)}"];')
        for u, v, length in self.edges:
            lines.append(f'  {names[u]} -- {names[v]} [label="{length}π"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _plain(v) -> str:
    if isinstance(v, tuple) and v and v[0] == "v":
        return vertex_label(v)
    return str(v).replace('"', "'")


def systole(link: LinkGraph) -> Union[Fraction, float]:
    """Length of the shortest cycle (units of π), or ``inf`` for a forest."""
    if link.is_forest():
        return INF
    lengths = {length for _, _, length in link.edges}
    if len(lengths) == 1:
        return girth(link) * lengths.pop()
    adj = link.adjacency()
    best: Union[Fraction, float] = INF
    for i, (u, v, length) in enumerate(link.edges):
        if length >= best:
            continue
        d = _dijkstra(adj, u, v, skip=i, cutoff=best - length)
        if d is not None and d + length < best:
            best = d + length
    return best


def _dijkstra(adj: dict, source, target, skip: int, cutoff) -> Optional[Fraction]:
    dist = {source: Fraction(0)}
    heap = [(Fraction(0), 0, source)]
    tie = 1
    while heap:
        d, _, u = heapq.heappop(heap)
        if d >= cutoff:
            return None
        if u == target:
            return d
        if d > dist[u]:
            continue
        for w, length, i in adj[u]:
            if i == skip:
                continue
            nd = d + length
            if nd < dist.get(w, INF):
                dist[w] = nd
                heapq.heappush(heap, (nd, tie, w))
                tie += 1
    return None


def girth(link: LinkGraph) -> Union[int, float]:
    """Fewest edges on a cycle, by BFS from every vertex."""
    adj = link.adjacency()
    best: Union[int, float] = INF
    for root in link.vertices:
        dist = {root: 0}
        via = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w, _, i in adj[u]:
                if i == via[u]:
                    continue
                if w not in dist:
                    dist[w] = dist[u] + 1
                    via[w] = i
                    queue.append(w)
                else:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


# --- the three vertex types --------------------------------------------------


def link_empty(graph: DefiningGraph) -> LinkGraph:
    """Barycentric subdivision of Γ; the edge ``v_s - v_st`` has length ``1/2 − 1/(2m)``."""
    link = LinkGraph(name="Lk(v_∅)")
    for s in graph.order():
        link.add_vertex(v_gen(s))
    for s, t, m in graph.edges():
        length = Fraction(1, 2) - Fraction(1, 2 * m)
        link.add_edge(v_gen(s), v_pair(s, t), length)
        link.add_edge(v_gen(t), v_pair(s, t), length)
    return link


def link_generator(graph: DefiningGraph, s, radius: int = 2) -> LinkGraph:
    """Development of the pod at ``v_s`` along ``⟨s⟩``, for ``|exponent| ≤ radius``.

    The centres ``s^k·v_∅`` stay distinct while every ``v_st`` is fixed by
    ``⟨s⟩``, so each pair of legs closes up into cycles of length 2π.
    """
    link = LinkGraph(exact=False, name=f"Lk(v_{s})")
    for k in range(-radius, radius + 1):
        centre = (f"{s}^{k}", "v_∅")
        link.add_vertex(centre)
        for t in graph.neighbours(s):
            link.add_edge(centre, v_pair(s, t), Fraction(1, 2))
    return link


class _DihedralElements:
    """Normal-form keys and coset keys for ``A_st``; ``m = 2`` is handled as Z²."""

    def __init__(self, m: int):
        self.m = m

    def identity(self):
        return FormBuilder(self.m) if self.m >= 3 else (0, 0)

    def mul(self, g, letter: int, k: int):
        if self.m == 2:
            x, y = g
            return (x + k, y) if letter == 0 else (x, y + k)
        h = g.copy()
        h.mul_syllable(letter, k)
        return h

    def key(self, g):
        return g if self.m == 2 else g.key()

    def coset_key(self, g, letter: int):
        """Canonical key for ``g⟨letter⟩``: the member nearest the identity."""
        if self.m == 2:
            x, y = g
            return (letter, y) if letter == 0 else (letter, x)
        best = (len(g.p), g.p[:], g.n)
        bound = 2 * len(g.p) + 2
        for sign in (1, -1):
            h = g.copy()
            for _ in range(bound):
                h.mul_letter(letter, sign)
                if len(h.p) <= best[0]:
                    order = (len(h.p), h.p[:], h.n)
                    if order < best:
                        best = order
        return (letter, tuple(best[1]), best[2])


def _develop(link: LinkGraph, root, neighbours, radius: int, length: Fraction) -> LinkGraph:
    """Breadth-first ball of radius ``radius`` around ``root`` in a bipartite development."""
    link.add_vertex(root)
    dist = {root: 0}
    queue = deque([root])
    while queue:
        node = queue.popleft()
        if dist[node] == radius:
            continue
        for nb in neighbours(node):
            if nb not in dist:
                dist[nb] = dist[node] + 1
                queue.append(nb)
            link.add_edge(node, nb, length)
    return link


def link_dihedral(m: int, radius: int, cap: int = 2, names=("a", "b")) -> LinkGraph:
    """Ball of the developed type-2 link: elements of ``A_st`` and their cosets of ``⟨s⟩``, ``⟨t⟩``.

    ``radius`` counts edges from the identity; moves through a coset use
    exponents up to ``cap``.  Every edge has length ``1/(2m)``.
    """
    if m < 2:
        raise ValueError("coefficient must be at least 2")
    group = _DihedralElements(m)
    elements = {}

    def element(g):
        node = ("g", group.key(g))
        elements.setdefault(node, g)
        return node

    def neighbours(node):
        if node[0] == "g":
            g = elements[node]
            out = []
            for letter in (0, 1):
                coset = ("c", group.coset_key(g, letter))
                elements.setdefault(coset, (g, letter))
                out.append(coset)
            return out
        g, letter = elements[node]
        return [element(group.mul(g, letter, k) if k else g) for k in range(-cap, cap + 1)]

    link = LinkGraph(exact=False, name=f"Lk(v_{names[0]}{names[1]})")
    return _develop(link, element(group.identity()), neighbours, radius, Fraction(1, 2 * m))


def link_free(radius: int, cap: int = 2, names=("s", "t")) -> LinkGraph:
    """Ball of the link at an augmented vertex: the Bass–Serre tree of ``⟨s⟩ * ⟨t⟩``."""
    from .freeword import Word

    def coset_key(w: Word, letter: str):
        sylls = w.syllables
        if sylls and sylls[-1][0] == letter:
            sylls = sylls[:-1]
        return ("c", letter, sylls)

    def neighbours(node):
        if node[0] == "g":
            w = Word(node[1])
            return [coset_key(w, x) for x in ("a", "b")]
        _, letter, base = node
        w = Word(base)
        out = [("g", base)]
        for k in range(1, cap + 1):
            out.append(("g", (w * Word(((letter, k),))).syllables))
            out.append(("g", (w * Word(((letter, -k),))).syllables))
        return out

    link = LinkGraph(exact=False, name=f"Lk(v_{names[0]}{names[1]})")
    return _develop(link, ("g", ()), neighbours, radius, Fraction(1, 12))


def default_radius(m) -> int:
    """Enough edges to contain a relation cycle through the base element."""
    return 2 * m if m < INF else 6


def link(graph: DefiningGraph, vertex: tuple, radius: Optional[int] = None, cap: int = 2) -> LinkGraph:
    """The link of a vertex of the fundamental domain, as a finite metric graph."""
    if vertex == V_EMPTY:
        return link_empty(graph)
    if len(vertex) == 2 and vertex[1] in graph.vertices:
        return link_generator(graph, vertex[1], radius or 2)
    if len(vertex) == 3 and set(vertex[1:]) <= set(graph.vertices):
        s, t = vertex[1], vertex[2]
        m = graph.m(s, t)
        if m == INF:
            raise KeyError(f"{vertex_label(vertex)} is not a vertex: m_{s}{t} = ∞")
        if frozenset((s, t)) in graph.free_pairs:
            return link_free(radius or 6, cap, (s, t))
        return link_dihedral(m, radius or default_radius(m), cap, (s, t))
    raise KeyError(f"unknown vertex {vertex!r}")


def parse_vertex(text: str, graph: DefiningGraph) -> tuple:
    """``v_∅`` (or ``v_0``, ``v_empty``), ``v_a`` or ``v_ab`` with generator names."""
    body = text[2:] if text.startswith("v_") else text
    if body in ("∅", "0", "empty", ""):
        return V_EMPTY
    if body in graph.vertices:
        return v_gen(body)
    for s in graph.vertices:
        if body.startswith(s) and body[len(s):] in graph.vertices and body[len(s):] != s:
            return v_pair(s, body[len(s):])
    raise KeyError(f"unknown vertex {text!r}")


@dataclass(frozen=True)
class LinkCheck:
    vertex: tuple
    systole: Union[Fraction, float]
    exact: bool  # False on a finite ball, which certifies only the cycles inside it

    @property
    def ok(self) -> bool:
        return self.systole >= TWO_PI

    def describe(self) -> str:
        value = "∞" if self.systole == INF else f"{self.systole}π"
        kind = "exact" if self.exact else "ball"
        return f"{vertex_label(self.vertex)}: systole {value} ({kind}) {'≥' if self.ok else '<'} 2π"


@dataclass
class LinkReport:
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def check_link_condition(graph: DefiningGraph, radius: Optional[int] = None) -> LinkReport:
    """Systole of every vertex link of K_Γ (or of a finite ball of it) against 2π."""
    report = is_two_dimensional(graph)
    if not report.ok:
        raise DimensionError(report.reason)
    vertices = [V_EMPTY] + [v_gen(s) for s in graph.order()]
    vertices += [v_pair(s, t) for s, t, _ in graph.edges()]
    checks = []
    for v in vertices:
        lk = link(graph, v, radius)
        checks.append(LinkCheck(v, systole(lk), lk.exact))
    return LinkReport(checks)
