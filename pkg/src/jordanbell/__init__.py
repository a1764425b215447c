"""Maximum quantum violations of an n-party CH-type Bell inequality family.

The largest violation for given per-party Jordan overlap cosines is the top
eigenvalue of a 2**n qubit Bell operator. The same number comes out of an
(n+2)-dimensional reduced block, and out of a cubic when all cosines are
equal. This package builds these objects and maximizes over the cosines. It
also checks the classical bound and the named optimal states, and it scores
the three-party nonlocal game.
"""

from .bell_core import (
    BellOperator,
    JordanParams,
    bell_operator,
    char_poly_n2,
    char_poly_n3,
    cubic_equal_angle,
    lambda_max,
    projector_tilted,
    projector_z,
    reduced_matrix,
    reduced_matrix_n2,
    reduced_matrix_n3,
    symmetric_invariants,
)
from .lhv import (
    DeterministicStrategy,
    bell_functional,
    classical_value,
    game_classical_value,
    game_quantum_value,
    proof_check,
    simulate_game,
)
from .linalg import RealPolynomial, hermitian_eigen, kron, max_real_root, poly_roots
from .optimize import (
    ViolationResult,
    maximize_equal_angle,
    maximize_full,
    stationarity_report,
    violation_curve,
)
from .states import (
    MeasurementSet,
    PureState,
    b3_prime_spectrum,
    exact_violation,
    ghz_check,
    psi2,
    psi3,
    psi3_prime,
    violation_of,
    zx_projectors_exact,
)

__version__ = "0.1.0"
