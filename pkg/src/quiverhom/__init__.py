"""Exact homological invariants of monomial bound quiver algebras and
machine checks of the recollement dimension bounds."""

from .algebra import (
    MonomialAlgebra, Quiver, a2_algebra, algebra_from_json, base_field_algebra,
    build_algebra, dual_numbers, load_algebra, nakayama, semisimple_algebra, t_n,
)
from .bimodules import (
    Bimodule, StalkBimodule, bimodule_from_json, bimodule_to_json,
    regular_bimodule, swap_sides, tensor_over, zero_bimodule,
)
from .complexes import (
    BoundedComplex, ChainMap, ComplexInvariants, complex_from_json,
    complex_invariants, complex_to_json, derived_hom, derived_tensor,
    dual_complex, dual_perfect, inj_truncate, is_perfect, minimize,
    proj_truncate, resolve_complex, resolve_module_stalk, verify_quasi_iso,
)
from .decompose import (
    Decomposition, EndoAlgebra, decompose, enumerate_indecomposables,
    is_isomorphic, radical_of_endo,
)
from .errors import (
    BadKupisch, DepthLimitExceeded, FieldUnsupported, NonAdmissible,
    NotMonomialRealizable, NotNakayama, NotPerfect, ParseError, PhiUndecided,
    QuiverhomError, ZeroComplex, ZeroModule,
)
from .glue import IdempotentSplit, TriangularGluing, glue_triangular, triangular
from .homint import HomInt
from .igusa_todorov import (
    DivisionCertificate, IsoClassRegistry, KClassVector, division_certificates,
    k_class, max_certified_division, phi, phi_dim, phi_dim_auto, phi_with_trace,
    subgroup_rank,
)
from .invariants import (
    FinDimResult, GorensteinProfile, finitistic_dimension, global_dimension,
    gorenstein_profile, is_selfinjective,
)
from .linalg import RATIONALS, FieldSpec, Matrix, kernel_basis, rank
from .modules import (
    Module, ModuleMap, ProjectiveSum, direct_sum, dual, ext_dim, hom_space,
    injective_dimension, is_projective, load_module, module_from_json, pd,
    projective_cover, projective_module, regular_module, simple_module, syzygy,
    zero_module,
)
from .recollement import (
    BoundCheck, BoundReport, RecollementDatum, check_corollary_2,
    check_corollary_3, check_gldim_findim, check_kato_trivial, check_theorem_I,
    check_theorem_II, datum_quantities, full_report, triangular_recollement,
)

__version__ = "0.1.0"
