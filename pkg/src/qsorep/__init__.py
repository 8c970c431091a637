"""Matrix representations of the nonstandard q-deformed algebra U'_q(so_n).

Classical-type and nonclassical-type representations in Gel'fand-Tsetlin
bases, together with numerical checks of the defining relations,
irreducibility and the splitting of the auxiliary prime representation.
"""

from .patterns import (
    Basis,
    Flavor,
    GTPattern,
    HighestWeight,
    InvalidWeightError,
    LCoords,
    PatternNotFoundError,
    enumerate_patterns,
    index_of,
    lcoords,
    shift,
    validate_weight,
)
from .qnum import QParam, denom_even, qnumber, qnumber_plus
from .repmatrix import (
    Kind,
    RepMatrices,
    RepSpec,
    SignVector,
    build,
    build_classical,
    build_nonclassical,
    build_onedim,
    build_prime,
    coeff_A,
    coeff_B,
    coeff_C,
    coeff_Chat,
    coeff_D,
)
from .verify import (
    DecompositionReport,
    Fingerprint,
    RelationReport,
    check_relations,
    commutant_dimension,
    decompose_prime,
    direct_sum,
    identify_blocks,
    match_block_to_nonclassical,
    spectral_fingerprint,
)

__version__ = "0.1.0"
