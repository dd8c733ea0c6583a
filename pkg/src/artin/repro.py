"""Acceptance checks, grouped into suites for ``artin repro`` and the test suite."""

from __future__ import annotations

import random
import statistics
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from . import coset_tree as ct
from .deligne import (
    TWO_PI,
    DefiningGraph,
    girth,
    graph_from_dict,
    inverse,
    link_dihedral,
    link_empty,
    link_free,
    systole,
)
from .dihedral import DihedralArtinGroup, SearchCaps, growth_table, search_representative, syllabic_bounds
from .freeword import Word, parse
from .garside import garside_trace, normal_form
from .oracles import all_words, free_reduce, has_letter_delta, nf_key, reduced_words, rewriting_classes
from .witness import PreconditionError, build_polygon, classify_cases, polygon_geodesic, verify_case, witness_element

DEFAULT_SEED = 20240601
EXAMPLE = "a b a^2 b^-1 a^-1 b a b a^2 b^4 a b"


@dataclass
class Outcome:
    number: int
    title: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} [{self.number}] {self.title}: {self.detail} ({self.seconds:.2f}s)"


def _timed(fn: Callable) -> Callable:
    def run(*args, **kwargs) -> Outcome:
        start = time.perf_counter()
        out = fn(*args, **kwargs)
        out.seconds = time.perf_counter() - start
        return out

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def _graph(vertices: str, edges) -> DefiningGraph:
    return graph_from_dict({"vertices": list(vertices), "edges": [{"u": s, "v": t, "m": m} for s, t, m in edges]})


TRIANGLE_333 = _graph("abc", [("a", "b", 3), ("b", "c", 3), ("a", "c", 3)])
PATH_33 = _graph("abc", [("a", "b", 3), ("a", "c", 3)])
SQUARE_3222 = _graph("abcd", [("a", "b", 3), ("b", "c", 2), ("c", "d", 2), ("a", "d", 2)])


def random_word(rng: random.Random, max_syllables: int = 6, max_exp: int = 4) -> Word:
    sylls = []
    letter = rng.choice("ab")
    for _ in range(rng.randint(1, max_syllables)):
        sylls.append((letter, rng.choice([e for e in range(-max_exp, max_exp + 1) if e])))
        letter = "b" if letter == "a" else "a"
    return Word.reduce(sylls)


def random_graph(rng: random.Random, nmin: int = 3, nmax: int = 6) -> DefiningGraph:
    names = "abcdefgh"[: rng.randint(nmin, nmax)]
    edges = []
    for s, t in combinations(names, 2):
        m = rng.choice([2, 3, 4, 5, 6, "inf", "inf"])
        if m != "inf":
            edges.append((s, t, m))
    return _graph(names, edges)


# --- garside -----------------------------------------------------------------


@_timed
def criterion_1() -> Outcome:
    u = parse(EXAMPLE)
    form = normal_form(3, u)
    atoms = [str(a) for a in form.atoms]
    trace = garside_trace(3, u)
    step1, step2 = trace.render(1), trace.render(2)
    want1 = "b a^-1 b^-1 a^2 b^3 Δ_a Δ_b Δ_a"
    want2 = "b^4 a^3 Δ_b Δ_a"
    best = min(_time_once(lambda: normal_form(3, u)) for _ in range(20))
    ok = atoms == ["b", "b", "b", "ba", "a", "a"] and form.delta_exp == 2 and step1 == want1 and step2 == want2
    ok = ok and best < 1e-3
    return Outcome(1, "worked example", ok, f"atoms {atoms}, N={form.delta_exp}; {step1} | {step2}; {best * 1e3:.3f} ms")


def _time_once(fn) -> float:
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def census(m: int, n: int = 6) -> tuple:
    """Partitions of all words of length ``<= n`` by normal form and by the rewriting oracle."""
    classes = rewriting_classes(m, n, slack=m)
    by_oracle: dict = {}
    by_form: dict = {}
    for k in range(n + 1):
        for w in all_words(k):
            by_oracle.setdefault(classes[free_reduce(w)], []).append(w)
            by_form.setdefault(nf_key(m, w), []).append(w)
    return sorted(map(tuple, by_oracle.values())), sorted(map(tuple, by_form.values()))


@_timed
def criterion_2() -> Outcome:
    parts = []
    ok = True
    for m in (3, 4):
        oracle, forms = census(m)
        ok = ok and oracle == forms
        parts.append(f"m={m}: {len(forms)} classes, oracle {'agrees' if oracle == forms else 'DISAGREES'}")
    return Outcome(2, "oracle equivalence census", ok, "; ".join(parts))


def delta_word_exceptions(m: int = 3, n: int = 10) -> tuple:
    """Reduced words of length ``<= n`` equal to Δ^{±1}, Δ^{±2} and lacking a letter-level Δ_x^{±1}."""
    targets = {((), k) for k in (-2, -1, 1, 2)}
    hits, bad = 0, []
    for k in range(1, n + 1):
        for w in reduced_words(k):
            if nf_key(m, w) in targets:
                hits += 1
                if not has_letter_delta(w, m):
                    bad.append(w)
    return hits, bad


@_timed
def criterion_3() -> Outcome:
    hits, bad = delta_word_exceptions()
    return Outcome(3, "Δ-power words contain Δ_x^±1", not bad, f"{hits} words equal to Δ^±1, Δ^±2; {len(bad)} exceptions")


# --- syllabic ----------------------------------------------------------------


@_timed
def criterion_4() -> Outcome:
    caps = SearchCaps(6, 8)
    ok = True
    rows = []
    for m in (3, 4, 5):
        G = DihedralArtinGroup(m)
        for n in range(-3, 4):
            if n == 0:
                continue
            delta = _delta_power(m, n)
            floor = (m - 2) * abs(n)
            found = search_representative(G, delta, floor, caps)
            bounds = syllabic_bounds(G, delta, caps)
            good = found is None and bounds.lower >= floor
            ok = ok and good
            if not good:
                rows.append(f"m={m} n={n} found={found} lower={bounds.lower}")
    return Outcome(4, "Δ^n lower bound", ok, "; ".join(rows) or "no short representative for m in 3..5, |n| <= 3")


def _delta_power(m: int, n: int) -> Word:
    run = Word.reduce(("ab"[i % 2], 1) for i in range(m))
    return run ** n


@_timed
def criterion_7() -> Outcome:
    G = DihedralArtinGroup(3)
    caps = SearchCaps()
    bounded = growth_table(G, "a b a^-1", 15, caps)
    ok = all(upper <= 3 for _, _, upper in bounded)
    parts = [f"aba^-1 max upper {max(u for _, _, u in bounded)}"]
    samples = [("ab", parse("a b")), ("aba^-1Δ²", parse("a b a^-1") * _delta_power(3, 2)), ("ab^-1", parse("a b^-1"))]
    for name, word in samples:
        rows = growth_table(G, word, 15, caps)
        slope = statistics.linear_regression([n for n, _, _ in rows], [lo for _, lo, _ in rows]).slope
        ok = ok and slope > 0.1
        parts.append(f"{name}: slope {slope:.3f}")
    return Outcome(7, "growth dichotomy", ok, "; ".join(parts))


# --- tree --------------------------------------------------------------------


def _edge_fixed(m: int, w: str) -> bool:
    edge = (ct.BASE, ("S", (), "a"))
    g = Word.reduce((x.lower(), 1 if x.islower() else -1) for x in w)
    return all(ct.act(m, g, node) == node for node in edge)


def _is_central(m: int, w: str) -> bool:
    p, n = nf_key(m, w)
    return not p and (m % 2 == 0 or n % 2 == 0)


@_timed
def criterion_5(seed: int = DEFAULT_SEED) -> Outcome:
    ball = ct.build_ball(3, 8)
    ok = ball.is_acyclic() and ball.interior_valences() == {2, 3}
    rng = random.Random(seed)
    dist_bad = 0
    for _ in range(100):
        g = random_word(rng)
        form = normal_form(3, g)
        if ct.tree_distance(ct.BASE, ct.coset_of(3, g)) != 2 * len(form.atoms):
            dist_bad += 1
    stab_bad = [
        w for k in range(5) for w in reduced_words(k) if _edge_fixed(3, w) != _is_central(3, w)
    ]
    ok = ok and not dist_bad and not stab_bad
    detail = (
        f"{len(ball.dist)} nodes, acyclic={ball.is_acyclic()}, valences {sorted(ball.interior_valences())}; "
        f"distance mismatches {dist_bad}/100; stabiliser exceptions {len(stab_bad)} (seed {seed})"
    )
    return Outcome(5, "tree structure", ok, detail)


@_timed
def criterion_6(seed: int = DEFAULT_SEED) -> Outcome:
    rng = random.Random(seed)
    ball = ct.build_ball(3, 10)
    cone = ct.ConeOff(ball)
    cosets = sorted(ball.cosets())
    mismatch = 0
    for _ in range(50):
        x, y = rng.choice(cosets), rng.choice(cosets)
        if ct.dhat_distance(3, x, y, cone).exact is False:
            mismatch += 1
    over = sum(not ct.check_syllable_upper(3, random_word(rng)) for _ in range(100))
    ok = mismatch == 0 and over == 0
    return Outcome(6, "cone-off distance", ok, f"DP/BFS mismatches {mismatch}/50; bound violations {over}/100 (seed {seed})")


# --- links -------------------------------------------------------------------


def triangle_condition(graph: DefiningGraph) -> bool:
    return all(
        inverse(graph.m(a, b)) + inverse(graph.m(a, c)) + inverse(graph.m(b, c)) <= 1
        for a, b, c in graph.triangles()
    )


@_timed
def criterion_8(seed: int = DEFAULT_SEED) -> Outcome:
    parts = []
    ok = True
    for m in (3, 4, 5):
        lk = link_dihedral(m, 2 * m)
        sys = systole(lk)
        ok = ok and sys == TWO_PI
        parts.append(f"m={m}: girth {girth(lk)}, systole {sys}π")
    rng = random.Random(seed)
    disagree = 0
    for _ in range(200):
        graph = random_graph(rng)
        if (systole(link_empty(graph)) >= TWO_PI) != triangle_condition(graph):
            disagree += 1
    free = link_free(6)
    ok = ok and disagree == 0 and free.is_forest()
    parts.append(f"v_∅ equivalence failures {disagree}/200 (seed {seed})")
    parts.append(f"augmented radius-6 link acyclic: {free.is_forest()}")
    return Outcome(8, "link metrics", ok, "; ".join(parts))


# --- witness -----------------------------------------------------------------


def admissible_graphs(rng: random.Random, count: int) -> list:
    out = []
    while len(out) < count:
        graph = random_graph(rng)
        try:
            classify_cases(graph)
        except PreconditionError:
            continue
        out.append(graph)
    return out


@_timed
def criterion_9(seed: int = DEFAULT_SEED) -> Outcome:
    expected = [(TRIANGLE_333, "S1"), (PATH_33, "S2"), (SQUARE_3222, "S4")]
    got = [classify_cases(g).situation for g, _ in expected]
    ok = got == [s for _, s in expected]
    rng = random.Random(seed)
    failures = 0
    for graph in admissible_graphs(rng, 100):
        if not verify_case(classify_cases(graph)):
            failures += 1
    ok = ok and failures == 0
    return Outcome(9, "case classifier", ok, f"fixed graphs {got}; post-hoc failures {failures}/100 (seed {seed})")


def certificate_summary(graph: DefiningGraph) -> dict:
    start = time.perf_counter()
    case = classify_cases(graph)
    poly = build_polygon(graph, case)
    geo = polygon_geodesic(poly)
    return {
        "witness": "".join(witness_element(case)),
        "systoles_ok": all(s >= TWO_PI for s in poly.link_systoles.values()),
        "open_triangle": geo.crosses_open_triangle,
        "best": geo.best,
        "seconds": time.perf_counter() - start,
    }


@_timed
def criterion_10() -> Outcome:
    tri = certificate_summary(TRIANGLE_333)
    sq = certificate_summary(SQUARE_3222)
    ok = (
        tri["witness"] == "c"
        and tri["open_triangle"]
        and sq["witness"] == "cd"
        and tri["systoles_ok"]
        and sq["systoles_ok"]
        and max(tri["seconds"], sq["seconds"]) < 10
    )
    best = tri["best"]
    where = "none" if best is None else f"{best.cell} of {best.tile}·{best.triangle}, clearance {best.clearance:.3g}"
    detail = (
        f"(3,3,3): g={tri['witness']}, open triangle crossed: {tri['open_triangle']}, best cell {where}; "
        f"square: g={sq['witness']}; systoles ok: {tri['systoles_ok'] and sq['systoles_ok']}"
    )
    return Outcome(10, "end-to-end certificate", ok, detail)


SUITES = {
    "garside": (criterion_1, criterion_2, criterion_3),
    "syllabic": (criterion_4, criterion_7),
    "tree": (criterion_5, criterion_6),
    "links": (criterion_8,),
    "witness": (criterion_9, criterion_10),
}

_SEEDED = {criterion_5, criterion_6, criterion_8, criterion_9}


def run_suite(name: str, seed: int = DEFAULT_SEED) -> list:
    if name not in SUITES:
        raise KeyError(name)
    return [fn(seed=seed) if fn in _SEEDED else fn() for fn in SUITES[name]]
