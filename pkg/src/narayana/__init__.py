"""Exact computation and verification of self-convolution identities for k-step Narayana numbers."""

from .identities import (
    ConvolutionValue,
    IdentityForm,
    NonDivisibleError,
    RhsTerm,
    catalog,
    closed_form_convolution,
    evaluate_rhs,
    general_form,
    self_convolution,
    theorem1_form,
)
from .polynomial import IntPolynomial, discriminant, resultant
from .sequences import (
    SequenceSpec,
    TermVector,
    fibonacci_spec,
    lucas_spec,
    narayana_spec,
    rabinowitz_spec,
    term_at,
    terms,
)
from .series import LaurentSeries

__version__ = "0.1.0"
