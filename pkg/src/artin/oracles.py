"""Brute-force references used to cross-check the fast algorithms.

Words here are plain strings over ``a b A B`` (capitals are inverses), which
keeps the enumeration cheap.
"""

from __future__ import annotations

from itertools import product

from .garside import FormBuilder

_INV = {"a": "A", "b": "B", "A": "a", "B": "b"}
_CODE = {"a": (0, 1), "b": (1, 1), "A": (0, -1), "B": (1, -1)}


def invert(w: str) -> str:
    return "".join(_INV[x] for x in reversed(w))


def free_reduce(w: str) -> str:
    out: list = []
    for x in w:
        if out and out[-1] == _INV[x]:
            out.pop()
        else:
            out.append(x)
    return "".join(out)


def all_words(n: int):
    """Every string of length exactly ``n``, reduced or not."""
    for letters in product("abAB", repeat=n):
        yield "".join(letters)


def reduced_words(n: int):
    """Freely reduced strings of length exactly ``n``, by extension."""
    layer = [""]
    for _ in range(n):
        layer = [w + x for w in layer for x in "abAB" if not w or w[-1] != _INV[x]]
    return layer


def nf_key(m: int, w: str) -> tuple:
    b = FormBuilder(m)
    for x in w:
        b.mul_letter(*_CODE[x])
    return b.key()


def _relator(m: int) -> str:
    """``(ab…)(ba…)^-1`` with both halves of length ``m``."""
    left = "".join("ab"[i % 2] for i in range(m))
    right = "".join("ba"[i % 2] for i in range(m))
    return left + invert(right)


def relator_moves(m: int) -> dict:
    """Subword -> replacements: ``u -> v`` whenever ``u·v^-1`` is a cyclic conjugate of ``r^±1``."""
    r = _relator(m)
    moves: dict = {}
    for base in (r, invert(r)):
        for i in range(len(base)):
            rot = base[i:] + base[:i]
            for k in range(1, len(rot)):
                u, rest = rot[:k], rot[k:]
                moves.setdefault(u, set()).add(invert(rest))
    return moves


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        parent = self.parent
        parent.setdefault(x, x)
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x, y) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry


def rewriting_classes(m: int, n: int, slack: int) -> dict:
    """Equality classes of reduced words of length ``<= n`` under relator moves.

    The closure runs over every reduced word of length ``<= n + slack``; a
    move is kept when the freely reduced result also fits in that bound.
    Returns ``word -> class representative`` for the words of length ``<= n``.
    This can only under-identify, so agreement with the normal form on the
    census is a genuine check of both.
    """
    bound = n + slack
    moves = relator_moves(m)
    longest = max(len(u) for u in moves)
    uf = _UnionFind()
    for length in range(bound + 1):
        for w in reduced_words(length):
            uf.find(w)
            for i in range(len(w)):
                for k in range(1, min(longest, len(w) - i) + 1):
                    for v in moves.get(w[i:i + k], ()):
                        nw = free_reduce(w[:i] + v + w[i + k:])
                        if len(nw) <= bound:
                            uf.union(w, nw)
    return {w: uf.find(w) for length in range(n + 1) for w in reduced_words(length)}


def has_letter_delta(w: str, m: int) -> bool:
    """Whether ``w`` contains an alternating same-sign run of ``m`` letters."""
    run = 0
    for i, x in enumerate(w):
        if i and x.islower() == w[i - 1].islower() and x.lower() != w[i - 1].lower():
            run += 1
        else:
            run = 1
        if run >= m:
            return True
    return False
