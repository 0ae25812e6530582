"""Exact symbolic verification of quantized differential calculi.

The package builds the matrix quantum group GL_q(n)/SL_q(n), its
covariant differential calculus and the spectral/star extensions as
noncommutative rewriting presentations over an exact coefficient field,
and certifies the defining identities with zero residual at desk scale
(n = 2, 3).
"""

from .scalars import SFIELD, SPECTRAL_FIELD, Field, Frac, qint, qpow
from .tensor import TensorOp, skew_inverse
from .rmatrix import dj_rmatrix, verify_rmatrix_class, verify_rmatrix_numeric

__version__ = "0.1.0"
