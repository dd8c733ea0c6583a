"""The coset tree T of a dihedral Artin group and its cone-off along generator axes.

Vertices of T come in two kinds.  A coset vertex ``g⟨Δ⟩`` is stored as the
atom tuple of its Δ-free representative.  A simplex vertex is stored as
``(Q, x)``: the member ``Q`` with fewest atoms together with the first letter
``x`` of the atom that extends ``Q`` to the other members.  Node ids are
tuples ``("V", atoms)`` and ``("S", atoms, letter)``.

T is never materialized globally; geodesics are read off the atom prefixes.
:func:`build_ball` enumerates a finite ball when an explicit graph is needed.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .freeword import Word, as_word, other
from .garside import Atom, FormBuilder, builder_from_form, GarsideForm

_LETTER = {"a": 0, "b": 1}

BASE = ("V", ())

DEFAULT_BUDGET = 10**6


class BallTooSmallError(ValueError):
    pass


class BudgetExceededError(RuntimeError):
    pass


class EllipticError(ValueError):
    pass


def vertex_budget(default: int = DEFAULT_BUDGET) -> int:
    env = os.environ.get("ARTIN_BUDGET")
    return int(env) if env else default


def coset(atoms: Iterable[Atom]) -> tuple:
    return ("V", tuple(atoms))


def atoms_word(atoms: Iterable[Atom]) -> Word:
    return Word.reduce((x, 1) for atom in atoms for x in atom.letters())


def _builder(m: int, atoms) -> FormBuilder:
    return builder_from_form(GarsideForm(m, tuple(atoms), 0))


def coset_of(m: int, g) -> tuple:
    """The coset vertex ``g·1_•``."""
    return coset(FormBuilder(m).mul_word(as_word(g)).atoms())


def act(m: int, g, node: tuple) -> tuple:
    """Left action of ``g`` on a node of T."""
    g = as_word(g)
    if node[0] == "V":
        return coset(FormBuilder(m).mul_word(g * atoms_word(node[1])).atoms())
    _, q, x = node
    first = act(m, g, ("V", q))
    second = act(m, g, ("V", q + (Atom(x, 1),)))
    return simplex_of(first, second)


def simplex_of(c1: tuple, c2: tuple) -> tuple:
    """The simplex vertex containing two distinct cosets of a common simplex."""
    a1, a2 = c1[1], c2[1]
    if len(a1) > len(a2):
        a1, a2 = a2, a1
    if len(a2) == len(a1) + 1 and a2[:-1] == a1:
        return ("S", a1, a2[-1].start)
    if len(a1) == len(a2) and a1 and a1[:-1] == a2[:-1] and a1[-1].start == a2[-1].start and a1 != a2:
        return ("S", a1[:-1], a1[-1].start)
    raise ValueError(f"{node_label(c1)} and {node_label(c2)} share no simplex")


def node_label(node: tuple) -> str:
    if node[0] == "V":
        return "·".join(str(a) for a in node[1]) or "1"
    q = "·".join(str(a) for a in node[1]) or "1"
    return f"S[{q};{node[2]}]"


def ancestors(node: tuple) -> list:
    """Path from ``node`` up to the base vertex ``1_•``."""
    out = []
    if node[0] == "S":
        out.append(node)
        atoms = node[1]
    else:
        atoms = node[1]
    while True:
        out.append(("V", atoms))
        if not atoms:
            return out
        out.append(("S", atoms[:-1], atoms[-1].start))
        atoms = atoms[:-1]


def depth(node: tuple) -> int:
    return 2 * len(node[1]) + (1 if node[0] == "S" else 0)


def tree_path(x: tuple, y: tuple) -> list:
    """The unique simple path from ``x`` to ``y`` in T."""
    ax, ay = ancestors(x), ancestors(y)
    index_y = {node: i for i, node in enumerate(ay)}
    for i, node in enumerate(ax):
        j = index_y.get(node)
        if j is not None:
            return ax[: i + 1] + list(reversed(ay[:j]))
    raise AssertionError("ancestor chains always meet at the base vertex")


def neighbors(m: int, node: tuple) -> list:
    if node[0] == "V":
        atoms = node[1]
        if not atoms:
            return [("S", (), "a"), ("S", (), "b")]
        return [("S", atoms[:-1], atoms[-1].start), ("S", atoms, atoms[-1].last)]
    _, q, x = node
    out = [("V", q)]
    for j in range(1, m):
        out.append(("V", q + (Atom(x, j),)))
    return out


@dataclass
class TreeBall:
    m: int
    radius: int
    dist: dict = field(default_factory=dict)
    edges: list = field(default_factory=list)
    base: tuple = BASE

    def __contains__(self, node) -> bool:
        return node in self.dist

    @property
    def vertices(self) -> list:
        return list(self.dist)

    def cosets(self) -> list:
        return [v for v in self.dist if v[0] == "V"]

    def simplices(self) -> list:
        return [v for v in self.dist if v[0] == "S"]

    def adjacency(self) -> dict:
        adj = {v: [] for v in self.dist}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def is_acyclic(self) -> bool:
        # connected by construction; a tree iff |E| = |V| - 1
        return len(self.edges) == len(self.dist) - 1

    def interior_valences(self) -> set:
        adj = self.adjacency()
        return {len(adj[v]) for v, d in self.dist.items() if d < self.radius}

    def require(self, *nodes) -> None:
        for node in nodes:
            if node not in self.dist:
                raise BallTooSmallError(f"{node_label(node)} lies outside the radius-{self.radius} ball")


def build_ball(m: int, radius: int, budget: Optional[int] = None) -> TreeBall:
    """All nodes of T within distance ``radius`` of ``1_•``."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    budget = vertex_budget() if budget is None else budget
    ball = TreeBall(m, radius)
    ball.dist[BASE] = 0
    queue = deque([BASE])
    while queue:
        node = queue.popleft()
        d = ball.dist[node]
        if d == radius:
            continue
        for nb in neighbors(m, node):
            if nb not in ball.dist:
                ball.dist[nb] = d + 1
                ball.edges.append((node, nb))
                if len(ball.dist) > budget:
                    raise BudgetExceededError(f"ball exceeds the vertex budget {budget}")
                queue.append(nb)
    return ball


def tree_distance(x: tuple, y: tuple, ball: Optional[TreeBall] = None) -> int:
    if ball is not None:
        ball.require(x, y)
    return len(tree_path(x, y)) - 1


def tree_geodesic(x: tuple, y: tuple, ball: Optional[TreeBall] = None) -> list:
    if ball is not None:
        ball.require(x, y)
    return tree_path(x, y)


def translation_length(m: int, g) -> int:
    """||g|| on T, via ``max(0, d(x, g²x) − d(x, gx))`` at ``x = 1_•``."""
    g = as_word(g)
    d1 = tree_distance(BASE, coset_of(m, g))
    d2 = tree_distance(BASE, coset_of(m, g * g))
    return max(0, d2 - d1)


def axis_of(m: int, g) -> list:
    """One period of the axis of a loxodromic ``g``, starting at a coset vertex."""
    g = as_word(g)
    length = translation_length(m, g)
    if length == 0:
        raise EllipticError(f"{g} acts elliptically on T")
    path = tree_path(BASE, coset_of(m, g))
    p = path[(len(path) - 1 - length) // 2]
    period = tree_path(p, act(m, g, p))
    if p[0] == "S":
        p = period[1]
        period = tree_path(p, act(m, g, p))
    return period


# --- generator axes --------------------------------------------------------------


@dataclass(frozen=True)
class Axis:
    """The line ``anchor · γ_direction``, anchored at its coset closest to ``1_•``."""

    anchor: tuple
    direction: str

    def __str__(self) -> str:
        return f"{node_label(('V', self.anchor))}·γ_{self.direction}"


def _line_cosets(m: int, atoms, s: str, kmin: int, kmax: int) -> list:
    """``[(k, atoms of rep·s^k, Δ exponent)]`` for k in ``[kmin, kmax]``."""
    x = _LETTER[s]
    out = {}
    fwd = _builder(m, atoms)
    out[0] = (fwd.atoms(), fwd.n)
    for k in range(1, kmax + 1):
        fwd.mul_letter(x, 1)
        out[k] = (fwd.atoms(), fwd.n)
    back = _builder(m, atoms)
    for k in range(-1, kmin - 1, -1):
        back.mul_letter(x, -1)
        out[k] = (back.atoms(), back.n)
    return [(k, *out[k]) for k in range(kmin, kmax + 1)]


def _atoms_order(atoms) -> tuple:
    return (len(atoms), tuple((a.start, a.length) for a in atoms))


def axis_key(m: int, atoms, s: str) -> Axis:
    """Canonical :class:`Axis` for the line through coset ``atoms`` in direction ``s``."""
    atoms = tuple(atoms)
    bound = 2 * len(atoms) + 2
    best = None
    for k, line_atoms, n in _line_cosets(m, atoms, s, -bound, bound):
        order = _atoms_order(line_atoms)
        if best is None or order < best[0]:
            best = (order, line_atoms, n)
    _, anchor, n = best
    direction = s if (m % 2 == 0 or n % 2 == 0) else other(s)
    return Axis(anchor, direction)


def axes_through(m: int, node: tuple) -> set:
    if node[0] != "V":
        raise ValueError("axes are indexed by coset vertices")
    return {axis_key(m, node[1], "a"), axis_key(m, node[1], "b")}


def on_axis(m: int, axis: Axis, node: tuple) -> bool:
    if node[0] != "V":
        raise ValueError("membership is tested on coset vertices")
    bound = len(axis.anchor) + len(node[1]) + 1
    return any(a == node[1] for _, a, _ in _line_cosets(m, axis.anchor, axis.direction, -bound, bound))


def line_nodes(m: int, atoms, s: str, kmin: int, kmax: int) -> list:
    """Nodes of the line ``rep·γ_s`` between the cosets ``rep·s^kmin`` and ``rep·s^kmax``."""
    cosets = [("V", a) for _, a, _ in _line_cosets(m, atoms, s, kmin, kmax)]
    out = [cosets[0]]
    for prev, cur in zip(cosets, cosets[1:]):
        out.append(simplex_of(prev, cur))
        out.append(cur)
    return out


# --- cone-off distance -----------------------------------------------------------


@dataclass
class DhatResult:
    lower: int
    upper: int
    exact: Optional[bool]
    tree_distance: int
    intervals: list
    bfs_distance: Optional[int] = None
    flagged: bool = False


def _walk(m: int, path: list, index: dict, i: int, s: str, sign: int, done: set) -> int:
    """Follow the line through ``path[i]`` in direction ``s^sign`` while it stays on ``path``."""
    x = _LETTER[s]
    builder = _builder(m, path[i][1])
    far = i
    while True:
        builder.mul_letter(x, sign)
        nxt = index.get(("V", builder.atoms()))
        if nxt is None:
            return far
        flip = m % 2 == 1 and builder.n % 2 != 0
        done.add((nxt, other(s) if flip else s))
        far = nxt


def axis_intervals(m: int, path: list) -> list:
    """Maximal index intervals of ``path`` lying on a common generator axis.

    The intersection of an axis with a tree geodesic is convex, so each line
    is followed outward from one of its cosets until it leaves the path.
    Both simplices at a coset lie on both of its lines, hence the one-step
    widening at the ends.
    """
    index = {node: i for i, node in enumerate(path)}
    done = set()
    out = set()
    for i, node in enumerate(path):
        if node[0] != "V":
            continue
        for s in ("a", "b"):
            if (i, s) in done:
                continue
            done.add((i, s))
            ends = [_walk(m, path, index, i, s, sign, done) for sign in (1, -1)]
            lo = max(min(ends) - 1, 0)
            hi = min(max(ends) + 1, len(path) - 1)
            if hi > lo:
                out.add((lo, hi))
    return sorted(out)


def _cover_count(length: int, intervals: list) -> int:
    """Fewest intervals covering every edge ``(k, k+1)`` for ``k < length``."""
    count, reach = 0, 0
    while reach < length:
        best = max((hi for lo, hi in intervals if lo <= reach), default=reach)
        if best <= reach:
            raise AssertionError(f"edge {reach} not covered by any axis")
        reach = best
        count += 1
    return count


def _cover_dp(length: int, intervals: list) -> int:
    """Cheapest walk along the path: a T-edge costs 1, an apex hop costs 2."""
    reach = [None] * (length + 1)  # smallest interval start covering each index
    for lo, hi in intervals:
        for j in range(lo, hi + 1):
            if reach[j] is None or lo < reach[j]:
                reach[j] = lo
    dp = [0] * (length + 1)
    for j in range(1, length + 1):
        best = dp[j - 1] + 1
        lo = reach[j]
        if lo is not None and lo <= j - 2:
            best = min(best, min(dp[lo:j - 1]) + 2)
        dp[j] = best
    return dp[length]


def dhat_distance(m: int, x: tuple, y: tuple, cone: Optional["ConeOff"] = None) -> DhatResult:
    """Bounds on the cone-off distance between coset vertices ``x`` and ``y``.

    ``upper`` is the cheapest walk along the tree geodesic that may hop
    through the apex of any axis meeting it (cost 2 per hop).  ``lower`` is
    the least number of axes covering the geodesic.  When a truncated
    cone-off graph is supplied, ``exact`` records agreement with its BFS.
    """
    path = tree_path(x, y)
    length = len(path) - 1
    intervals = axis_intervals(m, path)
    lower = _cover_count(length, intervals) if length else 0
    upper = _cover_dp(length, intervals)
    result = DhatResult(lower, upper, None, length, intervals)
    if cone is not None:
        bfs = cone.distance(x, y)
        result.bfs_distance = bfs
        result.exact = bfs == upper
        result.flagged = not (x in cone.ball and y in cone.ball)
    return result


def check_syllable_upper(m: int, g) -> bool:
    """``d_T̂(1_•, g·1_•) ≤ 2·ℓ_S`` for the given representative of ``g``."""
    g = as_word(g)
    res = dhat_distance(m, BASE, coset_of(m, g))
    return res.upper <= 2 * g.syllable_length


class ConeOff:
    """Truncated cone-off graph over a finite ball, used as a BFS oracle."""

    def __init__(self, ball: TreeBall):
        self.ball = ball
        m = ball.m
        self.adj = ball.adjacency()
        self.apexes: dict = {}
        for c in ball.cosets():
            for s in ("a", "b"):
                key = axis_key(m, c[1], s)
                apex = ("A", key)
                if apex not in self.adj:
                    self.adj[apex] = []
                    self.apexes[key] = apex
                for node in line_nodes(m, c[1], s, -1, 1):
                    if node in ball.dist and node not in self.adj[apex]:
                        self.adj[apex].append(node)
                        self.adj[node].append(apex)

    def distances_from(self, source: tuple) -> dict:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return dist

    def distance(self, x: tuple, y: tuple) -> int:
        self.ball.require(x, y)
        return self.distances_from(x)[y]
