"""Exact affine Lagrangian relations and their graphical calculus."""

from .fields import Q, QS, Fp, RatFun, field_from_tag, prime_field
from .affrel import AffineRelation, compose, tensor, converse, equal
from .symplectic import Kind, classify, dagger, is_lagrangian, is_coisotropic

__version__ = "0.1.0"

__all__ = [
    "Q",
    "QS",
    "Fp",
    "RatFun",
    "field_from_tag",
    "prime_field",
    "AffineRelation",
    "compose",
    "tensor",
    "converse",
    "equal",
    "Kind",
    "classify",
    "dagger",
    "is_lagrangian",
    "is_coisotropic",
]
