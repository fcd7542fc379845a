"""Alphabets with formal inverses, words over them, free reduction and shortlex order.

A letter is a pair ``(generator index, sign)`` with sign +1 for the generator
itself and -1 for its formal inverse.  The total letter order is fixed by the
alphabet: ``g0 < g0^-1 < g1 < g1^-1 < ...`` in declaration order.  Words are
stored exactly as given; nothing reduces them implicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from ._kernel import ops

Letter = tuple[int, int]


@dataclass(frozen=True)
class Alphabet:
    """An ordered finite set of generator names, each paired with a formal inverse."""

    generators: tuple[str, ...]

    def __init__(self, generators: Iterable[str]):
        gens = tuple(generators)
        if len(gens) != len(set(gens)):
            raise ValueError(f"generator names must be unique: {gens}")
        if any(not g for g in gens):
            raise ValueError("generator names must be nonempty")
        object.__setattr__(self, "generators", gens)

    def __len__(self) -> int:
        return len(self.generators)

    def letter_key(self, letter: Letter) -> int:
        """Rank of a letter in the fixed total order g0 < g0^-1 < g1 < ..."""
        idx, sign = letter
        return 2 * idx + (0 if sign > 0 else 1)

    def letter_name(self, letter: Letter) -> str:
        idx, sign = letter
        name = self.generators[idx]
        return name if sign > 0 else name + "^-1"

    def parse_word(self, text: str) -> "Word":
        """Parse the serialization format: whitespace-separated letters,
        ``^-1`` marking inverses, ``1`` for the empty word."""
        text = text.strip()
        if text in ("", "1"):
            return Word(())
        index = {g: i for i, g in enumerate(self.generators)}
        letters = []
        for tok in text.split():
            sign = 1
            if tok.endswith("^-1"):
                sign = -1
                tok = tok[:-3]
            if tok not in index:
                raise ValueError(f"unknown generator {tok!r}")
            letters.append((index[tok], sign))
        return Word(tuple(letters))

    def format_word(self, w: "Word") -> str:
        if not w.letters:
            return "1"
        return " ".join(self.letter_name(l) for l in w.letters)

    def validate(self, w: "Word") -> None:
        for idx, sign in w.letters:
            if not (0 <= idx < len(self.generators)) or sign not in (1, -1):
                raise ValueError(f"letter {(idx, sign)} invalid over {self.generators}")


@dataclass(frozen=True)
class Word:
    """A finite sequence of letters; the empty sequence is the identity word."""

    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((i, -s) for i, s in reversed(self.letters)))

    def is_reduced(self) -> bool:
        return all(
            a[0] != b[0] or a[1] == b[1]
            for a, b in zip(self.letters, self.letters[1:])
        )


def word_from_codes(codes: Iterable[int]) -> Word:
    return Word(tuple((c >> 1, 1 if c % 2 == 0 else -1) for c in codes))


def word_to_codes(w: Word) -> list[int]:
    return [2 * i + (0 if s > 0 else 1) for i, s in w.letters]


def reduce(w: Word) -> Word:
    """Free reduction: cancel adjacent x x^-1 pairs until none remain.

    The result is the unique freely reduced representative; evaluation in any
    group is unchanged.
    """
    if w.is_reduced():
        return w
    return word_from_codes(ops.free_reduce(word_to_codes(w)))


def word_length(w: Word) -> int:
    """Number of letters of ``w`` (the word is not reduced first)."""
    return len(w.letters)


def shortlex_compare(w1: Word, w2: Word, alphabet: Alphabet) -> int:
    """Total order: shorter word first, ties broken letter-by-letter
    by the alphabet's fixed order.  Returns -1, 0 or 1."""
    if len(w1) != len(w2):
        return -1 if len(w1) < len(w2) else 1
    k1 = tuple(alphabet.letter_key(l) for l in w1.letters)
    k2 = tuple(alphabet.letter_key(l) for l in w2.letters)
    if k1 == k2:
        return 0
    return -1 if k1 < k2 else 1


@dataclass(frozen=True)
class Presentation:
    """A finite presentation: an alphabet plus freely reduced, nonempty relators."""

    alphabet: Alphabet
    relators: tuple[Word, ...] = field(default=())

    def __post_init__(self):
        for r in self.relators:
            self.alphabet.validate(r)
            if not r.letters:
                raise ValueError("relators must be nonempty")
            if not r.is_reduced():
                raise ValueError(
                    f"relator {self.alphabet.format_word(r)!r} is not freely reduced"
                )

    @classmethod
    def parse(cls, generators: Iterable[str], relators: Iterable[str]) -> "Presentation":
        alphabet = Alphabet(generators)
        return cls(alphabet, tuple(alphabet.parse_word(r) for r in relators))
