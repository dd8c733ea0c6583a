"""Dihedral Artin groups: equality, the centre, syllabic length bounds, element types."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from . import coset_tree
from .freeword import IDENTITY, Word, as_word, invert, tilde
from .garside import FormBuilder, GarsideForm, builder_from_form, garside_trace, normal_form

_LETTER = {"a": 0, "b": 1}
_NAME = ("a", "b")


@dataclass(frozen=True)
class SearchCaps:
    exponent: int = 6
    depth: int = 8

    def __post_init__(self):
        if self.exponent < 1 or self.depth < 1:
            raise ValueError("search caps must be positive")


@dataclass(frozen=True)
class SyllabicBounds:
    lower: int
    upper: int
    witness: Word

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


@dataclass(frozen=True)
class CentralPower:
    """``g^power = Δ^delta_exp``, central, with ``power`` minimal."""

    power: int
    delta_exp: int


@dataclass(frozen=True)
class ConjGenPower:
    """``g = h · s^M · h^-1 · Δ^delta_exp`` with the Δ factor central."""

    h: Word
    s: str
    M: int
    delta_exp: int


@dataclass(frozen=True)
class Loxodromic:
    translation_length: int


ElementClass = Union[CentralPower, ConjGenPower, Loxodromic]


class DihedralArtinGroup:
    def __init__(self, m: int):
        if isinstance(m, bool) or not isinstance(m, int) or m < 3:
            raise ValueError(f"coefficient must be a finite integer >= 3, got {m!r}")
        self.m = m

    def __repr__(self) -> str:
        return f"DihedralArtinGroup(m={self.m})"

    def normal_form(self, u) -> GarsideForm:
        return normal_form(self.m, as_word(u))

    def trace(self, u):
        return garside_trace(self.m, as_word(u))

    def equal(self, u, v) -> bool:
        return self.normal_form(u) == self.normal_form(v)

    def conj_by_delta(self, u) -> Word:
        return tilde(as_word(u), self.m)

    def _central_form(self, form: GarsideForm) -> bool:
        return not form.atoms and (self.m % 2 == 0 or form.delta_exp % 2 == 0)

    def is_central(self, u) -> bool:
        return self._central_form(self.normal_form(u))

    def delta_power(self, u) -> Optional[int]:
        form = self.normal_form(u)
        return None if form.atoms else form.delta_exp

    def syllabic_length_of_form(self, u) -> int:
        """Syllable count of the word printed from the normal form (an upper bound)."""
        return self.normal_form(u).word().syllable_length


# --- syllabic length ---------------------------------------------------------


@lru_cache(maxsize=8)
def _forward_table(m: int, cap: int, depth: int) -> dict:
    """Form key -> (syllables, word) over words of <= ``depth`` syllables, |exponents| <= ``cap``.

    Built layer by layer so the first hit on a key has the fewest syllables.
    """
    start = FormBuilder(m)
    table = {start.key(): (0, ())}
    layer = [(start, (), None)]
    for level in range(1, depth + 1):
        nxt = []
        for builder, sylls, last in layer:
            for letter in (0, 1):
                if letter == last:
                    continue
                for sign in (1, -1):
                    child = builder.copy()
                    for e in range(1, cap + 1):
                        child.mul_letter(letter, sign)
                        key = child.key()
                        word = sylls + ((_NAME[letter], sign * e),)
                        if key not in table:
                            table[key] = (level, word)
                        if level < depth:
                            nxt.append((child.copy(), word, letter))
        layer = nxt
    return table


def _search_upper(m: int, form: GarsideForm, caps: SearchCaps, best: int, floor: int):
    """Capped meet-in-the-middle search for a shorter representative.

    Returns ``(count, word)`` for the best representative found with fewer
    than ``best`` syllables, or ``None``.
    """
    half = (caps.depth + 1) // 2
    rest = caps.depth - half
    table = _forward_table(m, caps.exponent, half)
    found = None
    start = builder_from_form(form)

    def visit(builder: FormBuilder, w: tuple, last: Optional[int]):
        nonlocal best, found
        hit = table.get(builder.key())
        if hit is not None and hit[0] + len(w) < best:
            word = Word.reduce(hit[1]) * invert(Word.reduce(w))
            best = word.syllable_length
            found = (best, word)
        if len(w) == rest or len(w) + 1 >= best or best <= floor:
            return
        for letter in (0, 1):
            if letter == last:
                continue
            for sign in (1, -1):
                child = builder.copy()
                for e in range(1, caps.exponent + 1):
                    child.mul_letter(letter, sign)
                    visit(child, w + ((_NAME[letter], sign * e),), letter)

    visit(start, (), None)
    return found


def search_representative(G: DihedralArtinGroup, u, below: int, caps: SearchCaps = SearchCaps()) -> Optional[Word]:
    """A representative with fewer than ``below`` syllables inside the caps, if one exists."""
    form = G.normal_form(u)
    if not form.atoms and form.delta_exp == 0:
        return IDENTITY if below > 0 else None
    found = _search_upper(G.m, form, caps, below, 0)
    return None if found is None else found[1]


def cover_lower_bound(m: int, form: GarsideForm) -> int:
    """Least number of generator axes covering the T-geodesic from ``1_•`` to ``g·1_•``.

    Each syllable of a representative moves along one such axis, so this
    never exceeds the syllabic length.
    """
    target = coset_tree.coset(form.atoms)
    return coset_tree.dhat_distance(m, coset_tree.BASE, target).lower


def syllabic_bounds(G: DihedralArtinGroup, u, caps: SearchCaps = SearchCaps()) -> SyllabicBounds:
    """Bounds ``lower <= ℓ_S(g) <= upper`` for the element ``g`` represented by ``u``.

    Lower: the axis cover number, the Δ-power estimate
    ``(m-2)|N| - ℓ_S(P)`` for ``g = P·Δ^N``, and 1 for nontrivial ``g``.
    Upper: the input itself or a shorter word found by the capped search.
    """
    u = as_word(u)
    m = G.m
    form = G.normal_form(u)
    if not form.atoms and form.delta_exp == 0:
        return SyllabicBounds(0, 0, IDENTITY)
    positive = form.atom_word().syllable_length
    lower = max(1, cover_lower_bound(m, form), (m - 2) * abs(form.delta_exp) - positive)
    upper, witness = u.syllable_length, u
    printed = form.word()
    if printed.syllable_length < upper:
        upper, witness = printed.syllable_length, printed
    if lower < upper:
        found = _search_upper(m, form, caps, upper, lower)
        if found is not None:
            upper, witness = found
    return SyllabicBounds(lower, upper, witness)


def growth_table(G: DihedralArtinGroup, u, nmax: int, caps: SearchCaps = SearchCaps()) -> list:
    """Rows ``(n, lower, upper)`` bracketing ``ℓ_S(g^n)`` for ``1 <= n <= nmax``."""
    if nmax < 1:
        raise ValueError("nmax must be at least 1")
    u = as_word(u)
    rows = []
    for n in range(1, nmax + 1):
        b = syllabic_bounds(G, u ** n, caps)
        rows.append((n, b.lower, b.upper))
    return rows


# --- classification ----------------------------------------------------------


def central_power_bound(m: int) -> int:
    return 2 * math.factorial(m)


def classify_element(G: DihedralArtinGroup, u, power_bound: Optional[int] = None) -> ElementClass:
    """Sort ``g`` into the three behaviours on the cone-off tree.

    A central power is detected by multiplying out ``g^K`` for
    ``K <= 2·m!``.  Otherwise ``g`` is hyperbolic on the tree, and it is a
    conjugate of a generator power (up to the centre) exactly when the
    conjugate by a coset representative on its axis is ``s^M`` times a
    central element, where ``2|M|`` is the translation length.
    """
    m = G.m
    u = as_word(u)
    length = coset_tree.translation_length(m, u)
    if length == 0:
        bound = power_bound or central_power_bound(m)
        builder = FormBuilder(m)
        for k in range(1, bound + 1):
            builder.mul_word(u)
            if not builder.p and (m % 2 == 0 or builder.n % 2 == 0):
                return CentralPower(k, builder.n)
        raise RuntimeError(f"elliptic element with no central power below {bound}")
    period = coset_tree.axis_of(m, u)
    for node in period:
        if node[0] != "V":
            continue
        h = coset_tree.atoms_word(node[1])
        conj = invert(h) * u * h
        for s in ("a", "b"):
            for M in (length // 2, -length // 2):
                rest = G.normal_form(conj * Word(((s, -M),)))
                if G._central_form(rest):
                    return ConjGenPower(h, s, M, rest.delta_exp)
        break
    return Loxodromic(length)
