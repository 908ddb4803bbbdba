"""Exact-arithmetic toolkit for quartic non-square forms, primitive
Pythagorean triples, and infinite-descent verification."""

from .arith import (
    coprime_power_split,
    gcd,
    is_fourth_power,
    is_square,
    isqrt,
    normalize,
)
from .engine import (
    CubeCandidate,
    DescentOutcome,
    check_t3_t4_identities,
    descend_t1,
    descend_t2,
    descend_t8,
    reduce_cube_form,
)
from .forms import CATALOG, FormInstance, derive_families, evaluate, manifest
from .scan import (
    ScanReport,
    scan_cube_plus_one,
    scan_pell_corollaries,
    scan_triangular,
    verify_form,
)
from .triples import (
    GeneratorPair,
    PrimitiveTriple,
    compose_triple,
    decompose_diff,
    decompose_sum,
    divisibility_report,
)

__version__ = "0.1.0"
