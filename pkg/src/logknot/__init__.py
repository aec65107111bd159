"""Logarithmic knot invariants from the restricted quantum group of sl2 at q = exp(pi i / p)."""

from .alexander import (
    alexander_derivative,
    colored_alexander,
    glued_offdiagonal,
    verify_symmetry,
    verify_theorem4,
)
from .braiding import check_yang_baxter, crossing, pivot, r_inverse, r_matrix, ribbon
from .center import CentralDecomposition, colored_jones, decompose, verify_connected_sum
from .repn import (
    WeightModule,
    build_irreducible,
    build_projective,
    build_x_lambda,
    build_y_glued,
    check_module_relations,
)
from .scalar import (
    CyclotomicNumber,
    format_cyclotomic,
    invert,
    parse_cyclotomic,
    quantum_factorial,
    quantum_integer,
    root_power,
    to_complex,
)
from .tangle import (
    FramedBraidWord,
    TangleOperator,
    braid_operator,
    closure_components,
    connected_sum,
    markov_conjugate,
    markov_stabilize,
    parse_braid_word,
    preset,
    tangle_operator,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
