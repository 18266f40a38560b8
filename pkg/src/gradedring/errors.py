"""Exception hierarchy.

Every error carries a ``witness`` tuple naming the objects that caused it
(morphism ids, basis indices, object ids), so callers and the CLI can report
the failure without re-deriving it.
"""

from __future__ import annotations


class GradedRingError(Exception):
    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = tuple(witness)


# categories and groupoids


class CategoryError(GradedRingError, ValueError):
    """Malformed category description (bad ids, duplicates)."""


class MissingComposite(CategoryError):
    pass


class SpuriousComposite(CategoryError):
    """A composite was given for a pair that is not composable."""


class BrokenIdentity(CategoryError):
    pass


class BrokenAssociativity(CategoryError):
    pass


class NotAGroupoid(CategoryError):
    pass


class UnknownObject(CategoryError, KeyError):
    pass


class UnknownMorphism(CategoryError, KeyError):
    pass


class TooLarge(CategoryError):
    pass


# linear algebra


class DimensionMismatch(GradedRingError, ValueError):
    pass


class Unsolvable(GradedRingError):
    pass


# graded algebras


class NotADirectSum(GradedRingError, ValueError):
    pass


class NotAssociative(GradedRingError, ValueError):
    pass


class NotLocallyUnital(GradedRingError):
    pass


class NotUnital(GradedRingError):
    pass


class NotStrong(GradedRingError):
    pass


# constructions


class InvalidSelection(GradedRingError, ValueError):
    pass


class IdentityMorphism(GradedRingError, ValueError):
    pass


# action machinery


class NotInvertible(GradedRingError):
    pass


class NoDualBasis(GradedRingError):
    pass


class CertificateFailure(GradedRingError):
    pass


class NotBimoduleMap(GradedRingError):
    pass


class SourceMismatch(GradedRingError, ValueError):
    pass
