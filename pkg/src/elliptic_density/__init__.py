"""Decision procedures for almost-elliptic semidirect products and for
finite generation of derived subgroups of dense subgroups of Lie groups."""

__version__ = "0.1.0"

from .exact import GaussianRational, AlgebraicScalar, parse_scalar  # noqa: E402,F401
from .lattice import hnf, derived_module_chain, fg_derived_criterion  # noqa: E402,F401
from .lie import LieAlgebraSC, classify_derived_generation, splice_check  # noqa: E402,F401
from .compact import CompactGroupSpec, almost_elliptic, equivalence_audit  # noqa: E402,F401
