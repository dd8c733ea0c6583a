"""Freely reduced words over the two-letter alphabet {a, b}.

A word is stored as a tuple of syllables ``(letter, exponent)`` with adjacent
letters distinct and exponents nonzero.  Large exponents are never expanded
into letter arrays by the operations in this module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

LETTERS = ("a", "b")

_TOKEN = re.compile(r"([A-Za-z])(?:\^([+-]?\d+))?")


class WordParseError(ValueError):
    pass


def other(letter: str) -> str:
    return "b" if letter == "a" else "a"


@dataclass(frozen=True)
class Word:
    syllables: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        prev = None
        for letter, exp in self.syllables:
            if letter not in LETTERS:
                raise ValueError(f"unknown letter {letter!r}")
            if exp == 0:
                raise ValueError("zero exponent in syllable")
            if letter == prev:
                raise ValueError("adjacent syllables share a letter; use Word.reduce")
            prev = letter

    @classmethod
    def reduce(cls, syllables: Iterable[tuple[str, int]]) -> "Word":
        """Build a word from arbitrary syllables, merging and cancelling freely."""
        stack: list[list] = []
        for letter, exp in syllables:
            if exp == 0:
                continue
            if stack and stack[-1][0] == letter:
                stack[-1][1] += exp
                if stack[-1][1] == 0:
                    stack.pop()
            else:
                stack.append([letter, exp])
        return cls(tuple((l, e) for l, e in stack))

    @classmethod
    def from_letters(cls, letters: Iterable[tuple[str, int]]) -> "Word":
        """Build from a letter sequence of ``(letter, ±1)`` pairs."""
        return cls.reduce(letters)

    def __len__(self) -> int:
        return len(self.syllables)

    def __iter__(self) -> Iterator[tuple[str, int]]:
        return iter(self.syllables)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __pow__(self, n: int) -> "Word":
        return power(self, n)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    @property
    def syllable_length(self) -> int:
        return len(self.syllables)

    @property
    def letter_length(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def letters(self) -> Iterator[tuple[str, int]]:
        """Iterate letter by letter as ``(letter, ±1)``; materializes exponents lazily."""
        for letter, exp in self.syllables:
            sign = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                yield letter, sign

    def exponent_sum(self) -> int:
        return sum(e for _, e in self.syllables)


IDENTITY = Word()


def parse(text: str) -> Word:
    """Parse ``a b^2 a^-1`` style text into a freely reduced word.

    Juxtaposed tokens (``aba``, ``ab^-1``) are accepted too.  ``1`` and the
    empty string both denote the identity.
    """
    syllables = []
    for chunk in text.split():
        if chunk == "1":
            continue
        pos = 0
        while pos < len(chunk):
            match = _TOKEN.match(chunk, pos)
            if match is None:
                raise WordParseError(f"malformed token {chunk!r}")
            letter, exp = match.group(1), match.group(2)
            if letter not in LETTERS:
                raise WordParseError(f"unknown letter {letter!r}")
            exp = 1 if exp is None else int(exp)
            if exp == 0:
                raise WordParseError(f"zero exponent in {chunk!r}")
            syllables.append((letter, exp))
            pos = match.end()
    return Word.reduce(syllables)


def format_word(word: Word) -> str:
    if not word.syllables:
        return "1"
    return " ".join(l if e == 1 else f"{l}^{e}" for l, e in word.syllables)


def as_word(value) -> Word:
    if isinstance(value, Word):
        return value
    if isinstance(value, str):
        return parse(value)
    return Word.reduce(value)


def concat(u: Word, v: Word) -> Word:
    left = list(u.syllables)
    right = list(v.syllables)
    while left and right and left[-1][0] == right[0][0]:
        letter = left[-1][0]
        exp = left[-1][1] + right[0][1]
        left.pop()
        right.pop(0)
        if exp != 0:
            left.append((letter, exp))
            break
    return Word(tuple(left + right))


def invert(u: Word) -> Word:
    return Word(tuple((l, -e) for l, e in reversed(u.syllables)))


def power(u: Word, n: int) -> Word:
    if n < 0:
        u, n = invert(u), -n
    result = IDENTITY
    for _ in range(n):
        result = concat(result, u)
    return result


def bar(u: Word) -> Word:
    """Swap the letters a and b, keeping exponents."""
    return Word(tuple((other(l), e) for l, e in u.syllables))


def tilde(u: Word, m: int) -> Word:
    """Conjugate by the Garside element: ``u`` for even m, ``bar(u)`` for odd m."""
    if not isinstance(m, int) or m < 3:
        raise ValueError(f"coefficient must be a finite integer >= 3, got {m!r}")
    return u if m % 2 == 0 else bar(u)


def alternating(start: str, k: int, m: Optional[int] = None) -> Word:
    """The alternating word ``(start, other; k)`` with unit exponents."""
    if k < 0:
        raise ValueError("length must be non-negative")
    letters = []
    x = start
    for _ in range(k):
        letters.append((x, 1))
        x = other(x)
    return Word(tuple(letters))


def delta_word(start: str, m: int, sign: int = 1) -> Word:
    w = alternating(start, m)
    return w if sign > 0 else invert(w)


class DeltaOccurrence(NamedTuple):
    position: int  # 0-based letter index of the first letter
    sign: int
    letter: str  # the occurrence spells Delta_letter ** sign
    syllable: int  # index of the syllable holding the first letter


def _occurrence_letter(first: str, sign: int, m: int) -> str:
    if sign > 0:
        return first
    # Delta_x^{-1} begins with the inverse of the last letter of Delta_x.
    return first if m % 2 == 1 else other(first)


def find_delta_subword(u: Word, m: int) -> Optional[DeltaOccurrence]:
    """Left-most letter-level occurrence of a Garside word or its inverse.

    An occurrence spans ``m`` consecutive syllables of a common sign whose
    interior syllables have unit exponent; the outer two may be longer.
    """
    if m < 3:
        raise ValueError("coefficient must be >= 3")
    sylls = u.syllables
    n = len(sylls)
    offset = 0
    for i in range(n):
        letter, exp = sylls[i]
        if i + m <= n:
            sign = 1 if exp > 0 else -1
            ok = True
            for j in range(i + 1, i + m):
                e = sylls[j][1]
                if (e > 0) != (sign > 0):
                    ok = False
                    break
                if j < i + m - 1 and abs(e) != 1:
                    ok = False
                    break
            if ok:
                return DeltaOccurrence(
                    offset + abs(exp) - 1, sign, _occurrence_letter(letter, sign, m), i
                )
        offset += abs(exp)
    return None


def words_of_length(n: int) -> Iterator[Word]:
    """All freely reduced words of exactly ``n`` letters (exponents ±1 per letter)."""
    gens = [("a", 1), ("a", -1), ("b", 1), ("b", -1)]

    def rec(prefix: list, k: int):
        if k == 0:
            yield Word.reduce(prefix)
            return
        for g in gens:
            if prefix and prefix[-1][0] == g[0] and prefix[-1][1] == -g[1]:
                continue
            prefix.append(g)
            yield from rec(prefix, k - 1)
            prefix.pop()

    yield from rec([], n)


def words_up_to(n: int) -> Iterator[Word]:
    for k in range(n + 1):
        yield from words_of_length(k)


def letters_to_word(letters: Sequence[tuple[str, int]]) -> Word:
    return Word.reduce(letters)
