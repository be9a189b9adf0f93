"""Generator-to-word tables: application, composition, and the marked and
immersion predicates that make the solvers work."""

from __future__ import annotations

from dataclasses import dataclass

from .words import GROUP, Alphabet, Letter, Word, ball, format_letter, invert


class NotMarkedError(ValueError):
    """A morphism fails the marked/immersion precondition of a solver.

    Carries the offending generator so callers can report it.
    """

    def __init__(self, message: str, morphism_name: str = "morphism", generator: str = "") -> None:
        super().__init__(message)
        self.morphism_name = morphism_name
        self.generator = generator


@dataclass(frozen=True)
class Morphism:
    """A morphism of free monoids or free groups, stored as the list of
    generator images."""

    domain: Alphabet
    codomain: Alphabet
    images: tuple[Word, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(self.images))
        if self.domain.mode != self.codomain.mode:
            raise ValueError("domain and codomain must share a mode")
        if len(self.images) != len(self.domain):
            raise ValueError(
                f"expected {len(self.domain)} images, got {len(self.images)}"
            )
        for sym, img in zip(self.domain.symbols, self.images):
            if img.alphabet != self.codomain:
                raise ValueError(f"image of {sym} does not lie over the codomain")

    @property
    def mode(self) -> str:
        return self.domain.mode

    def image(self, l: Letter) -> Word:
        """Image of a single (possibly inverse) generator letter."""
        img = self.images[l.index]
        return img if l.sign > 0 else invert(img)

    def image_of(self, symbol: str, sign: int = 1) -> Word:
        return self.image(self.domain.letter(symbol, sign))


def identity(alphabet: Alphabet) -> Morphism:
    return Morphism(
        alphabet, alphabet, tuple(Word(alphabet, (l,)) for l in alphabet.positive_letters())
    )


def apply(f: Morphism, w: Word) -> Word:
    """Homomorphic image of w; group mode maps x^-1 to f(x)^-1 and reduces."""
    if w.alphabet != f.domain:
        raise ValueError("word does not lie over the morphism's domain")
    out: list[Letter] = []
    group = f.mode == GROUP
    for l in w.letters:
        img = f.images[l.index].letters
        seq = img if l.sign > 0 else tuple(x.inverse() for x in reversed(img))
        for x in seq:
            if group and out and out[-1] == x.inverse():
                out.pop()
            else:
                out.append(x)
    return Word(f.codomain, tuple(out))


def compose(f: Morphism, g: Morphism) -> Morphism:
    """The composite f after g, defined by a -> f(g(a))."""
    if g.codomain != f.domain:
        raise ValueError("codomain of the inner morphism must equal the outer domain")
    return Morphism(g.domain, f.codomain, tuple(apply(f, img) for img in g.images))


def _first_letter_clash(f: Morphism) -> tuple[str, str] | None:
    """Return the offending generator description if f is not marked.

    Monoid mode looks at the generator images; group mode at the images of
    all generators and their inverses.  The arity bound (at most one image
    per codomain letter) is a consequence of the distinctness check, so no
    separate size test is needed.
    """
    seen: dict[Letter, str] = {}
    for l in f.domain.signed_letters():
        name = format_letter(f.domain, l)
        img = f.image(l)
        if not img:
            return (name, "")
        if img.first in seen:
            return (seen[img.first], name)
        seen[img.first] = name
    return None


def is_marked(f: Morphism) -> bool:
    """True iff the generator images (and their inverses, in group mode) are
    nonempty and start with pairwise distinct letters."""
    return _first_letter_clash(f) is None


def require_marked(f: Morphism, name: str = "morphism") -> None:
    clash = _first_letter_clash(f)
    if clash is None:
        return
    a, b = clash
    if not b:
        raise NotMarkedError(
            f"{name} is not marked: image of {a} is empty", name, a
        )
    raise NotMarkedError(
        f"{name} is not marked: images of {a} and {b} share a first letter", name, b
    )


def _immersion_by_lengths(f: Morphism) -> bool:
    # Empty images satisfy the length identity vacuously but are never
    # immersions (an immersion is injective), so guard them out; this keeps
    # the three characterisations in agreement.
    if any(not img for img in f.images):
        return False
    letters = f.domain.signed_letters()
    for x in letters:
        for y in letters:
            if y == x.inverse():
                continue
            xy = Word(f.domain, (x, y))
            if len(apply(f, xy)) != len(f.image(x)) + len(f.image(y)):
                return False
    return True


def _immersion_by_folding(f: Morphism) -> bool:
    if any(not img for img in f.images):
        return False
    from . import stallings  # deferred: stallings imports this module

    return stallings.is_folded_both_ways(stallings.bouquet(f))


def is_immersion(f: Morphism, method: str = "all") -> bool:
    """Decide whether a free group morphism is an immersion.

    Three equivalent characterisations are available:
      `marked`  - the images of all generators and inverses form a marked set;
      `folded`  - the bouquet graph is deterministic and co-deterministic;
      `lengths` - no cancellation, |f(xy)| = |f(x)| + |f(y)| whenever xy != 1.
    `all` computes the three and insists that they agree.
    """
    if f.mode != GROUP:
        raise ValueError("immersions are a free-group notion; morphism is monoid-mode")
    if method == "marked":
        return is_marked(f)
    if method == "folded":
        return _immersion_by_folding(f)
    if method == "lengths":
        return _immersion_by_lengths(f)
    if method == "all":
        answers = {
            is_marked(f),
            _immersion_by_folding(f),
            _immersion_by_lengths(f),
        }
        if len(answers) != 1:
            raise AssertionError("immersion characterisations disagree")
        return answers.pop()
    raise ValueError(f"unknown method {method!r}")


def require_immersion(f: Morphism, name: str = "morphism") -> None:
    if f.mode != GROUP:
        raise ValueError("immersions are a free-group notion; morphism is monoid-mode")
    clash = _first_letter_clash(f)
    if clash is None:
        return
    a, b = clash
    if not b:
        raise NotMarkedError(
            f"{name} is not an immersion: image of {a} is empty", name, a
        )
    raise NotMarkedError(
        f"{name} is not an immersion: images of {a} and {b} share a first letter",
        name,
        b,
    )


def is_injective_witness(f: Morphism, radius: int) -> tuple[Word, Word] | None:
    """Search all words of length <= radius for a collision f(u) = f(v), u != v.

    Returns the first collision in shortlex enumeration order, or None.  For
    marked morphisms and immersions no witness exists.
    """
    seen: dict[Word, Word] = {}
    for w in ball(f.domain, radius):
        img = apply(f, w)
        if img in seen:
            return (seen[img], w)
        seen[img] = w
    return None


def greedy_decode(f: Morphism, w: Word) -> Word | None:
    """Preimage of w under a marked morphism / immersion, or None.

    The first letter of the remaining suffix determines the only generator
    whose image can be a prefix; strip it and repeat.  Sound and complete
    because marked images are prefix-discriminated and immersed images
    concatenate without cancellation.
    """
    if w.alphabet != f.codomain:
        raise ValueError("word does not lie over the morphism's codomain")
    require_marked(f)
    table: dict[Letter, tuple[Letter, tuple[Letter, ...]]] = {}
    for l in f.domain.signed_letters():
        img = f.image(l)
        table[img.first] = (l, img.letters)
    rest = w.letters
    out: list[Letter] = []
    while rest:
        hit = table.get(rest[0])
        if hit is None:
            return None
        gen, img = hit
        if rest[: len(img)] != img:
            return None
        out.append(gen)
        rest = rest[len(img) :]
    return Word(f.domain, tuple(out))
