"""Garside normal forms in the dihedral Artin group with coefficient m.

Every element is written uniquely as ``P · Δ^N`` where ``P`` is a positive
word containing no alternating subword of length ``m``.  ``P`` splits into
maximal alternating runs, the atoms.

Two routes compute the form:

* :class:`FormBuilder` multiplies on the right one letter at a time.  It is
  the fast path used everywhere.
* :func:`garside_trace` follows the two-step rewriting procedure literally
  (left-most Δ occurrence, then left-most inverse atom) and keeps the
  intermediate words.  It exists for inspection and cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

from .freeword import Word, other

_LETTER = {"a": 0, "b": 1}
_NAME = ("a", "b")

INT64_MAX = 2**63 - 1


class DeltaOverflowError(OverflowError):
    pass


class Atom(NamedTuple):
    start: str
    length: int

    def letters(self) -> list[str]:
        out = []
        x = self.start
        for _ in range(self.length):
            out.append(x)
            x = other(x)
        return out

    @property
    def last(self) -> str:
        return self.start if self.length % 2 == 1 else other(self.start)

    def __str__(self) -> str:
        return "".join(self.letters())


@dataclass(frozen=True)
class GarsideForm:
    m: int
    atoms: tuple[Atom, ...]
    delta_exp: int

    def __post_init__(self):
        for i, atom in enumerate(self.atoms):
            if not 1 <= atom.length <= self.m - 1:
                raise ValueError(f"atom length {atom.length} outside [1, {self.m - 1}]")
            if i and self.atoms[i - 1].last != atom.start:
                raise ValueError("consecutive atoms must share the boundary letter")

    @property
    def positive_letters(self) -> list[str]:
        out: list[str] = []
        for atom in self.atoms:
            out.extend(atom.letters())
        return out

    def delta_factors(self) -> list[tuple[str, int]]:
        """The Δ^N tail written as alternating Garside words ending in Δ_a."""
        n = abs(self.delta_exp)
        sign = 1 if self.delta_exp > 0 else -1
        starts = []
        x = "a"
        for _ in range(n):
            starts.append(x)
            x = other(x)
        return [(s, sign) for s in reversed(starts)]

    def word(self) -> Word:
        """A word representative: atoms followed by the Δ factors."""
        letters = [(x, 1) for x in self.positive_letters]
        for start, sign in self.delta_factors():
            run = Atom(start, self.m).letters()
            if sign > 0:
                letters.extend((x, 1) for x in run)
            else:
                letters.extend((x, -1) for x in reversed(run))
        return Word.reduce(letters)

    def atom_word(self) -> Word:
        return Word.reduce((x, 1) for x in self.positive_letters)

    @property
    def key(self) -> tuple:
        return (self.atoms, self.delta_exp)

    def __str__(self) -> str:
        atoms = "·".join(str(a) for a in self.atoms) or "1"
        return f"{atoms} · Δ^{self.delta_exp}"


class FormBuilder:
    """Mutable ``P · Δ^N`` accumulator supporting right multiplication by letters.

    ``P`` is kept as a list of 0/1 letters together with the length of the
    alternating run ending at each position, so detecting a freshly created
    Δ subword costs O(1).
    """

    __slots__ = ("m", "p", "alt", "n")

    def __init__(self, m: int, p=None, alt=None, n: int = 0):
        self.m = m
        self.p: list[int] = p if p is not None else []
        self.alt: list[int] = alt if alt is not None else []
        self.n = n

    def copy(self) -> "FormBuilder":
        return FormBuilder(self.m, self.p[:], self.alt[:], self.n)

    def _push(self, x: int) -> bool:
        p, alt = self.p, self.alt
        run = alt[-1] + 1 if p and p[-1] != x else 1
        if run == self.m:
            del p[len(p) - self.m + 1:]
            del alt[len(alt) - self.m + 1:]
            return True
        p.append(x)
        alt.append(run)
        return False

    def _push_positive(self, seq: Iterable[int]) -> int:
        carry = 0
        odd = self.m % 2 == 1
        for x in seq:
            if odd and carry % 2 == 1:
                x = 1 - x
            if self._push(x):
                carry += 1
        return carry

    def mul_letter(self, x: int, sign: int) -> None:
        if self.m % 2 == 1 and self.n % 2 != 0:
            x = 1 - x
        if sign > 0:
            self.n += self._push_positive((x,))
        elif self.p and self.p[-1] == x:
            self.p.pop()
            self.alt.pop()
        else:
            # x^-1 = (y, x; m-1) · Δ^-1 with y the other letter
            seq = [(1 - x) if i % 2 == 0 else x for i in range(self.m - 1)]
            self.n += self._push_positive(seq) - 1
        if abs(self.n) > INT64_MAX:
            raise DeltaOverflowError("Δ exponent exceeds 64-bit range")

    def mul_syllable(self, letter: int, exp: int) -> None:
        sign = 1 if exp > 0 else -1
        for _ in range(abs(exp)):
            self.mul_letter(letter, sign)

    def mul_word(self, word: Word) -> "FormBuilder":
        for letter, exp in word.syllables:
            self.mul_syllable(_LETTER[letter], exp)
        return self

    def mul_delta(self, k: int) -> None:
        self.n += k

    def key(self) -> tuple:
        return (tuple(self.p), self.n)

    def atoms(self) -> tuple[Atom, ...]:
        out = []
        p, alt = self.p, self.alt
        i = 0
        while i < len(p):
            j = i + 1
            while j < len(p) and alt[j] != 1:
                j += 1
            out.append(Atom(_NAME[p[i]], j - i))
            i = j
        return tuple(out)

    def form(self) -> GarsideForm:
        return GarsideForm(self.m, self.atoms(), self.n)


def builder_from_form(form: GarsideForm) -> FormBuilder:
    b = FormBuilder(form.m)
    for atom in form.atoms:
        for x in atom.letters():
            b.p.append(_LETTER[x])
            b.alt.append(b.alt[-1] + 1 if len(b.p) > 1 and b.p[-2] != b.p[-1] else 1)
    b.n = form.delta_exp
    return b


def normal_form(m: int, word: Word) -> GarsideForm:
    return FormBuilder(m).mul_word(word).form()


def form_key(m: int, word: Word) -> tuple:
    return FormBuilder(m).mul_word(word).key()


# --- literal two-step procedure -------------------------------------------------

Letters = list  # list of (letter, ±1)


def _free_reduce(letters: Sequence[tuple[str, int]]) -> Letters:
    out: Letters = []
    for x in letters:
        if out and out[-1][0] == x[0] and out[-1][1] == -x[1]:
            out.pop()
        else:
            out.append(x)
    return out


def _tilde_letters(letters: Sequence[tuple[str, int]], m: int) -> Letters:
    if m % 2 == 0:
        return list(letters)
    return [(other(x), s) for x, s in letters]


def _leftmost_delta(letters: Sequence[tuple[str, int]], m: int) -> Optional[tuple[int, int]]:
    run = 0
    for i, (x, s) in enumerate(letters):
        if i and letters[i - 1][1] == s and letters[i - 1][0] != x:
            run += 1
        else:
            run = 1
        if run >= m:
            return i - m + 1, s
    return None


def _runs(letters: Sequence[tuple[str, int]]) -> list[tuple[int, int]]:
    """Split into maximal alternating same-sign runs, as (start, end) slices."""
    out = []
    i = 0
    while i < len(letters):
        j = i + 1
        while j < len(letters) and letters[j][1] == letters[i][1] and letters[j][0] != letters[j - 1][0]:
            j += 1
        out.append((i, j))
        i = j
    return out


@dataclass
class GarsideTrace:
    m: int
    after_step1: Letters = field(default_factory=list)
    delta_after_step1: int = 0
    after_step2: Letters = field(default_factory=list)
    delta_after_step2: int = 0
    rewrites: int = 0

    def form(self) -> GarsideForm:
        b = FormBuilder(self.m)
        b._push_positive(_LETTER[x] for x, _ in self.after_step2)
        return GarsideForm(self.m, b.atoms(), self.delta_after_step2)

    def render(self, stage: int) -> str:
        letters = self.after_step1 if stage == 1 else self.after_step2
        n = self.delta_after_step1 if stage == 1 else self.delta_after_step2
        text = str(Word.reduce(letters)) if letters else ""
        tail = GarsideForm(self.m, (), n).delta_factors()
        factors = [f"Δ_{s}" if sign > 0 else f"Δ_{s}^-1" for s, sign in tail]
        parts = ([text] if text else []) + factors
        return " ".join(parts) if parts else "1"


def _step1(core: Letters, m: int) -> tuple[Letters, int, int]:
    n = 0
    steps = 0
    while True:
        hit = _leftmost_delta(core, m)
        if hit is None:
            return core, n, steps
        i, sign = hit
        core = _free_reduce(core[:i] + _tilde_letters(core[i + m:], m))
        n += sign
        steps += 1


def garside_trace(m: int, word: Word) -> GarsideTrace:
    """Run the two-step rewriting literally, recording both stages.

    The Δ tail is tracked as an integer.  If replacing an inverse atom in
    the second step creates a new Δ subword, the first step is re-applied
    before continuing.
    """
    trace = GarsideTrace(m)
    core, n, steps = _step1(_free_reduce(list(word.letters())), m)
    trace.after_step1 = list(core)
    trace.delta_after_step1 = n
    trace.rewrites = steps
    while True:
        target = None
        for i, j in _runs(core):
            if core[i][1] < 0:
                target = (i, j)
                break
        if target is None:
            break
        i, j = target
        k = j - i
        first = core[i][0]
        # (x^-1, y^-1; k) = (y, x; m-k) · Δ^-1
        y = other(first)
        repl = [(y if t % 2 == 0 else first, 1) for t in range(m - k)]
        core = _free_reduce(core[:i] + repl + _tilde_letters(core[j:], m))
        n -= 1
        trace.rewrites += 1
        core, extra, more = _step1(core, m)
        n += extra
        trace.rewrites += more
    trace.after_step2 = core
    trace.delta_after_step2 = n
    return trace
