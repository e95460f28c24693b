"""Exact Weyl-algebra arithmetic, filtration dimensions and the d(M) >= n check."""

__version__ = "0.1.0"

from .errors import (
    CorpusFormatError,
    DimensionMismatchError,
    ExponentError,
    InconclusiveError,
    InsufficientDataError,
    ModuleMismatchError,
    OpSyntaxError,
    UnboundedBasisError,
    VariableIndexError,
    WeylError,
    ZeroModuleError,
    ZeroOperandError,
)
from .weyl import (
    NEG_INF,
    DiffOp,
    Polynomial,
    SymbolPoly,
    add,
    apply,
    bernstein_degree,
    commutator,
    mul,
    mul_single_step,
    order_degree,
    poly_mul,
    poly_pow,
    principal_symbol,
)
from .opparser import parse, parse_poly, print_op, print_poly
from .filtration import (
    FiltrationSnapshot,
    GoodFiltrationSpec,
    LeftIdealPresentation,
    TruncationParams,
    filtration_step_dims,
    gamma_dim,
    gamma_dim_value,
    ideal_dims_at_slacks,
    interleave_width,
    is_zero_module,
    monomial_basis,
    reduce_element,
    reduce_element_certified,
    truncated_ideal_subspace,
)
from .hilbert import (
    DimensionConfig,
    HilbertFit,
    HilbertSample,
    finite_difference_fit,
    fit_report,
    hilbert_function,
    module_dimension,
    multiplicity,
)
from .prooflab import (
    CorpusReport,
    CorpusRow,
    IdentityReport,
    SubmoduleReport,
    bernstein_corpus,
    binomial_count,
    check_factorial_identity,
    check_product_rule,
    check_recursion_step,
    check_vanishing,
    eq1_suite,
    independence_rank,
    random_polynomial,
    submodule_monotonicity,
)
from .corpus import CorpusEntry, load_corpus_dir, load_corpus_file, parse_corpus_text

__all__ = [name for name in dir() if not name.startswith("_")]
