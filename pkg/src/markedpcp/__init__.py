"""Equalisers of marked free-monoid morphisms and free-group immersions.

The solvers compute, for a pair or finite family of marked morphisms
(immersions, in the group case), a marked morphism whose image is exactly
the set of inputs on which the family agrees; its generator images form a
basis of that equaliser.  A brute-force oracle cross-checks every result on
bounded balls.
"""

from .instances import (
    Block,
    EqualiserResult,
    Instance,
    ReductionStep,
    SetInstance,
    canonical_form,
)
from .morphisms import (
    Morphism,
    NotMarkedError,
    apply,
    compose,
    greedy_decode,
    identity,
    is_immersion,
    is_injective_witness,
    is_marked,
)
from .words import (
    GROUP,
    MONOID,
    Alphabet,
    Letter,
    Word,
    concat,
    free_reduce,
    invert,
    longest_common_prefix,
    parse_word,
    format_word,
    proper_prefixes,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "Block",
    "EqualiserResult",
    "GROUP",
    "Instance",
    "Letter",
    "MONOID",
    "Morphism",
    "NotMarkedError",
    "ReductionStep",
    "SetInstance",
    "Word",
    "apply",
    "canonical_form",
    "compose",
    "concat",
    "format_word",
    "free_reduce",
    "greedy_decode",
    "identity",
    "invert",
    "is_immersion",
    "is_injective_witness",
    "is_marked",
    "longest_common_prefix",
    "parse_word",
    "proper_prefixes",
    "__version__",
]
