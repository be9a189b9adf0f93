"""Alphabets, monoid words, and freely reduced group words.

Letters are (index, sign) pairs into an ordered alphabet, so multi-character
symbol names and alphabets of any size work uniformly.  Group-mode words are
kept freely reduced at all times: the `Word` constructor rejects a sequence
containing an adjacent cancelling pair, and `free_reduce` is the constructor
for raw letter sequences.  Equality is therefore plain sequence equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

MONOID = "monoid"
GROUP = "group"

_SYMBOL_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*$")


class Letter(NamedTuple):
    index: int
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.index, -self.sign)

    def sort_key(self) -> tuple[int, int]:
        # positive before negative, then alphabet order
        return (self.index, 0 if self.sign > 0 else 1)


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of generator symbols with a monoid/group mode flag."""

    symbols: tuple[str, ...]
    mode: str = MONOID
    _pos: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if self.mode not in (MONOID, GROUP):
            raise ValueError(f"unknown mode {self.mode!r}")
        for s in self.symbols:
            if not isinstance(s, str) or not s:
                raise ValueError(f"alphabet symbols must be nonempty strings, got {s!r}")
        pos = {s: i for i, s in enumerate(self.symbols)}
        if len(pos) != len(self.symbols):
            raise ValueError("alphabet symbols must be pairwise distinct")
        object.__setattr__(self, "_pos", pos)

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._pos

    def index(self, symbol: str) -> int:
        try:
            return self._pos[symbol]
        except KeyError:
            raise ValueError(f"symbol {symbol!r} not in alphabet {self.symbols}") from None

    def letter(self, symbol: str, sign: int = 1) -> Letter:
        if sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {sign}")
        if sign < 0 and self.mode == MONOID:
            raise ValueError("monoid-mode letters must have sign +1")
        return Letter(self.index(symbol), sign)

    def positive_letters(self) -> list[Letter]:
        return [Letter(i, 1) for i in range(len(self.symbols))]

    def signed_letters(self) -> list[Letter]:
        """All generator letters, including inverses in group mode."""
        out = [Letter(i, 1) for i in range(len(self.symbols))]
        if self.mode == GROUP:
            out += [Letter(i, -1) for i in range(len(self.symbols))]
        return out


@dataclass(frozen=True)
class Word:
    """A word over one alphabet; freely reduced by construction in group mode."""

    alphabet: Alphabet
    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        letters = tuple(Letter(i, s) for (i, s) in self.letters)
        object.__setattr__(self, "letters", letters)
        n = len(self.alphabet)
        for pos, l in enumerate(letters):
            if not 0 <= l.index < n:
                raise ValueError(f"letter index {l.index} out of range at position {pos}")
            if l.sign not in (1, -1):
                raise ValueError(f"bad letter sign {l.sign} at position {pos}")
            if l.sign < 0 and self.alphabet.mode == MONOID:
                raise ValueError(f"monoid word contains inverse letter at position {pos}")
        if self.alphabet.mode == GROUP:
            for pos in range(len(letters) - 1):
                if letters[pos] == letters[pos + 1].inverse():
                    raise ValueError(
                        f"group word not freely reduced at position {pos}"
                        " (use free_reduce for raw sequences)"
                    )

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    @property
    def first(self) -> Letter:
        return self.letters[0]

    @property
    def last(self) -> Letter:
        return self.letters[-1]

    def prefix(self, length: int) -> "Word":
        return Word(self.alphabet, self.letters[:length])

    def sort_key(self) -> tuple:
        """Shortlex key: length first, then letter order."""
        return (len(self.letters), tuple(l.sort_key() for l in self.letters))


def empty_word(alphabet: Alphabet) -> Word:
    return Word(alphabet, ())


def _reduce_letters(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for l in letters:
        if out and out[-1] == Letter(l.index, -l.sign):
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def free_reduce(alphabet: Alphabet, letters: Iterable[Letter]) -> Word:
    """Freely reduce a raw letter sequence over a group-mode alphabet.

    Idempotent; rejects monoid-mode alphabets, where reduction is undefined.
    """
    if alphabet.mode != GROUP:
        raise ValueError("free reduction is only defined in group mode")
    return Word(alphabet, _reduce_letters(Letter(i, s) for (i, s) in letters))


def concat(u: Word, v: Word) -> Word:
    """Concatenate two words; in group mode the junction is freely reduced."""
    if u.alphabet != v.alphabet:
        raise ValueError("cannot concatenate words over different alphabets")
    if u.alphabet.mode == MONOID:
        return Word(u.alphabet, u.letters + v.letters)
    # both already reduced, so cancellation only happens at the junction
    left = list(u.letters)
    i = 0
    while left and i < len(v.letters) and left[-1] == v.letters[i].inverse():
        left.pop()
        i += 1
    return Word(u.alphabet, tuple(left) + v.letters[i:])


def invert(w: Word) -> Word:
    """Group inverse; an involution with concat(w, invert(w)) empty."""
    if w.alphabet.mode != GROUP:
        raise ValueError("inversion is only defined in group mode")
    return Word(w.alphabet, tuple(l.inverse() for l in reversed(w.letters)))


def proper_prefixes(w: Word) -> set[Word]:
    """All nonempty strict prefixes of w (the empty word is excluded)."""
    return {w.prefix(i) for i in range(1, len(w.letters))}


def longest_common_prefix(u: Word, v: Word) -> Word:
    if u.alphabet != v.alphabet:
        raise ValueError("words lie over different alphabets")
    n = 0
    for a, b in zip(u.letters, v.letters):
        if a != b:
            break
        n += 1
    return u.prefix(n)


def is_prefix(p: Word, w: Word) -> bool:
    return w.letters[: len(p.letters)] == p.letters


def ball(alphabet: Alphabet, radius: int) -> Iterator[Word]:
    """Yield every word of length <= radius in shortlex order.

    In group mode only freely reduced words are produced.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    letters = sorted(alphabet.signed_letters(), key=Letter.sort_key)
    level: list[tuple[Letter, ...]] = [()]
    yield Word(alphabet, ())
    for _ in range(radius):
        nxt = []
        for stem in level:
            for l in letters:
                if alphabet.mode == GROUP and stem and stem[-1] == l.inverse():
                    continue
                seq = stem + (l,)
                nxt.append(seq)
                yield Word(alphabet, seq)
        level = nxt


def parse_word(alphabet: Alphabet, text: str) -> Word:
    """Parse the textual word syntax: whitespace-separated letters, inverses
    written with the suffix ^-1, the empty word spelled `eps`."""
    tokens = text.split()
    if tokens == ["eps"]:
        return empty_word(alphabet)
    letters = []
    for tok in tokens:
        sign = 1
        sym = tok
        if tok.endswith("^-1"):
            sign = -1
            sym = tok[:-3]
        if not _SYMBOL_RE.match(sym):
            raise ValueError(f"malformed letter token {tok!r}")
        letters.append(alphabet.letter(sym, sign))
    return Word(alphabet, tuple(letters))


def format_letter(alphabet: Alphabet, l: Letter) -> str:
    sym = alphabet.symbols[l.index]
    return sym if l.sign > 0 else sym + "^-1"


def format_word(w: Word) -> str:
    if not w.letters:
        return "eps"
    return " ".join(format_letter(w.alphabet, l) for l in w.letters)
