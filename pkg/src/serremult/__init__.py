"""Serre intersection multiplicities over graded polynomial rings and their quotients."""

from .errors import (
    ArityMismatch, DivisionByZero, Inconclusive, InfiniteLength, NonInvertibleDenominator,
    NotAResolution, NotPrimary, ParseError, ResourceLimitExceeded, RingMismatch,
    SerreConditionViolated, SerreMultError, UnsupportedRing,
)
from .exactnum import GF, QQ, FieldElement, FieldSpec
from .fpmodule import (
    FPModule, FreeModule, HilbertData, ModuleMap, cokernel, direct_sum, hilbert_data,
    hilbert_function, kernel, krull_dim, length, tensor,
)
from .groebner import GroebnerBasis, ModuleVector, buchberger, normal_form, syzygies
from .homology import FPComplex, TorProfile, ext, homology_at, tensor_with_module, tor
from .multiplicity import (
    MultiplicityReport, SamuelData, chi, chi_higher, diagonal_reduction_check, hilbert_samuel,
    koszul_euler, theta, verify_serre_pair, xi,
)
from .polyring import MonomialOrder, Polynomial, QuotientRing, RingSpec, polynomial_ring, quotient_ring
from .resolution import (
    INFINITE, BettiTable, FreeComplex, PeriodicityCertificate, detect_periodicity,
    free_resolution, koszul_complex, minimalize, projective_dimension,
)

__version__ = "0.1.0"
