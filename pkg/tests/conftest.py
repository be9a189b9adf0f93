from __future__ import annotations

import pathlib

import pytest

from markedpcp.instances import Instance
from markedpcp.morphisms import Morphism
from markedpcp.words import GROUP, MONOID, Alphabet, parse_word

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def _morphism(sigma, delta, *texts):
    return Morphism(sigma, delta, tuple(parse_word(delta, t) for t in texts))


@pytest.fixture
def marked_pair() -> Instance:
    """Monoid pair whose equaliser is generated by the single word ab."""
    sigma = Alphabet(("a", "b"), MONOID)
    delta = Alphabet(("x", "y"), MONOID)
    g = _morphism(sigma, delta, "x y", "y")
    h = _morphism(sigma, delta, "x", "y y")
    return Instance(g, h)


@pytest.fixture
def immersed_pair() -> Instance:
    """Rank-three immersed pair whose core has petals xyx^2y and zxz."""
    sigma = Alphabet(("a", "b", "c"), GROUP)
    delta = Alphabet(("x", "y", "z"), GROUP)
    g = _morphism(sigma, delta, "x y x x", "y^-1", "z x z")
    h = _morphism(sigma, delta, "x", "y x x y", "z")
    return Instance(g, h)


@pytest.fixture
def unfoldable_map() -> Morphism:
    """Group morphism that fails every immersion characterisation: its
    bouquet has two x-labeled edges entering the base vertex."""
    sigma = Alphabet(("a", "b"), GROUP)
    delta = Alphabet(("x", "y"), GROUP)
    return _morphism(sigma, delta, "x^-1 x^-1 y", "y y x")
