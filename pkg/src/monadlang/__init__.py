"""Recognisable languages over monads, through finite reduct algebras."""

from . import catalog, chains, core, infty, io, mso, omegaterms, pointed, trees, words
from .core import (Algebra, AlgebraError, Language, Letter, Morphism, Node, Signature,
                   boolean, equivalent, evaluate, find_witness, image, inverse_image, is_empty,
                   moore_syntactic, powerset, product, quotient, relabel_image,
                   subalgebra_closure, validate)

__all__ = [
    "Algebra", "AlgebraError", "Language", "Letter", "Morphism", "Node", "Signature",
    "boolean", "equivalent", "evaluate", "find_witness", "image", "inverse_image", "is_empty",
    "moore_syntactic", "powerset", "product", "quotient", "relabel_image",
    "subalgebra_closure", "validate",
    "catalog", "chains", "core", "infty", "io", "mso", "omegaterms", "pointed", "trees", "words",
]
__version__ = "0.1.0"
