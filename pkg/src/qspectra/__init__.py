"""Spectral invariants of two- and three-valued functions on Z_q^n."""
from .domain import CycloNum, DiscreteFunction, DomainError, DomainSpec, sym_rep
from .transform import Spectrum, forward, inverse, naive_forward, parseval_exact, parseval_sum
from .degrees import (
    DegreeProfile,
    UndefinedDegreeError,
    algebraic_degree,
    char_degree,
    check_prop2,
    check_prop3,
    degree_profile,
    lagrange_interpolate,
    moebius,
    nnf,
    numerical_degree,
)
from .graphs import GraphKind, apply_adjacency, eigenvalue_table, quadratic_form
from .sensitivity import (
    check_support_bounds,
    mixed_edges,
    num_relevant,
    relevant_variables,
    retract,
    retract_pair_count,
    spectral_I_three_valued,
    spectral_I_three_valued_hamming,
    spectral_I_two_valued,
)
from .bounds import BoundReport, bounds_three_valued, bounds_two_valued, tightness
from .explorer import Corpus, gen_fm, gen_fm_pm1, gen_named, search_extremal, sweep
from .io import parse_truth_table, format_truth_table, read_truth_table, write_truth_table

__version__ = "0.1.0"
