"""Shared solver data types: instances, reduction steps, and results."""

from __future__ import annotations

from dataclasses import dataclass

from .morphisms import Morphism, compose
from .words import Alphabet, Letter, Word

CASE_EMPTY = "empty-alphabet"
CASE_SINGLE = "alphabet-size-1"
CASE_LENGTH_ONE = "all-length-1"
CASE_CYCLE = "cycle"

TERMINATION_CASES = (CASE_EMPTY, CASE_SINGLE, CASE_LENGTH_ONE, CASE_CYCLE)


@dataclass(frozen=True)
class Instance:
    """A pair of morphisms with shared domain and codomain."""

    g: Morphism
    h: Morphism
    names: tuple[str, str] = ("g", "h")

    def __post_init__(self) -> None:
        if self.g.domain != self.h.domain:
            raise ValueError("instance morphisms must share a domain")
        if self.g.codomain != self.h.codomain:
            raise ValueError("instance morphisms must share a codomain")

    @property
    def sigma(self) -> Alphabet:
        return self.g.domain

    @property
    def delta(self) -> Alphabet:
        return self.g.codomain

    @property
    def mode(self) -> str:
        return self.g.mode


@dataclass(frozen=True)
class SetInstance:
    """A finite family of morphisms with shared domain and codomain."""

    morphisms: tuple[Morphism, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "morphisms", tuple(self.morphisms))
        if not self.morphisms:
            raise ValueError("a set instance needs at least one morphism")
        names = self.names or tuple(f"f{i}" for i in range(len(self.morphisms)))
        object.__setattr__(self, "names", tuple(names))
        if len(self.names) != len(self.morphisms):
            raise ValueError("one name per morphism")
        first = self.morphisms[0]
        for f in self.morphisms[1:]:
            if f.domain != first.domain or f.codomain != first.codomain:
                raise ValueError("set instance morphisms must share alphabets")

    @property
    def sigma(self) -> Alphabet:
        return self.morphisms[0].domain

    @property
    def delta(self) -> Alphabet:
        return self.morphisms[0].codomain

    @property
    def mode(self) -> str:
        return self.morphisms[0].mode


@dataclass(frozen=True)
class Block:
    """A minimal agreeing pair: apply(g, u) = apply(h, v), starting with `letter`."""

    letter: Letter
    u: Word
    v: Word


@dataclass(frozen=True)
class ReductionStep:
    """One instance reduction; g_prime and h_prime carry the new generators
    to words over the previous domain, and g o g_prime = h o h_prime."""

    before: Instance
    after: Instance
    g_prime: Morphism
    h_prime: Morphism
    blocks: tuple[Block, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(self.blocks))
        k1 = compose(self.before.g, self.g_prime)
        k2 = compose(self.before.h, self.h_prime)
        if k1 != k2:
            raise AssertionError("reduction step is inconsistent: g g' != h h'")


@dataclass(frozen=True)
class EqualiserResult:
    """Output of a solve: a marked morphism / immersion whose image is the
    equaliser, its generator images as the basis, and the trail that built it."""

    embedding: Morphism
    basis: tuple[Word, ...]
    trail: tuple[ReductionStep, ...]
    case: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "trail", tuple(self.trail))
        if self.case not in TERMINATION_CASES:
            raise ValueError(f"unknown termination case {self.case!r}")
        if self.basis != self.embedding.images:
            raise ValueError("basis must list the embedding's generator images")


def canonical_form(instance: Instance) -> tuple:
    """Structural key for cycle detection: generator names erased on both
    sides, letters encoded by alphabet position.  Two instances get the same
    key exactly when they agree up to renaming of generators."""

    def encode(f: Morphism) -> tuple:
        return tuple(tuple(img.letters) for img in f.images)

    return (
        instance.mode,
        len(instance.sigma),
        len(instance.delta),
        encode(instance.g),
        encode(instance.h),
    )
