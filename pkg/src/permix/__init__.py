"""Mixing rates of piecewise-linear interval maps composed with interval exchanges.

The library builds the slope-(+-m) map family and its compositions with
interval-exchange permutations, derives their exact Markov transition
matrices, computes subleading spectral moduli and mixing rates, maximises
those rates over the symmetric group, evaluates the closed-form worst-rate
expressions, and computes exact step-observable correlation functions.
"""

from .correlations import (
    DecayFit,
    McEstimate,
    StepObservable,
    correlation,
    decay_rate,
    eigenvector_observable,
    monte_carlo_correlation,
    transfer_matrix,
)
from .errors import CapacityError, DomainError, StructuralError
from .formulas import (
    EigenvalueRegion,
    RegionCheck,
    asymptotic_constant,
    circulant_tau_formula,
    degeneracy_predicate,
    sf_worst_rate,
    tent_cycle_matrix,
    tent_region_contains,
    zigzag_worst_rate,
)
from .maps import (
    CanonicalSignatures,
    ComposedMap,
    IntervalPermutation,
    SlopeSignature,
    all_signatures,
    canonical_signatures,
    composed_map,
    eval_map,
    orbit_representatives,
    symmetry_orbit,
)
from .matrices import (
    IntMatrix,
    backwards_identity,
    block_permutation_matrix,
    collapse,
    doubled_matrix,
    fine_markov,
    folded_circulant,
    lift,
    matrix_to_csv,
    permutation_matrix,
    reduced_markov,
    structured_matrix,
    symmetric_circulant,
)
from .search import (
    SearchResult,
    Strategy,
    default_strategy,
    gram_bound,
    mixing_compositions,
    tperm_search,
    worst_mixing_rate,
)
from .spectra import (
    BoundCheck,
    BoundReport,
    EigenvalueBounds,
    Spectrum,
    StructureReport,
    bound_report,
    connectivity,
    exact_charpoly,
    irreducibility_index,
    longest_circuit,
    mixing_rate,
    row_relation_classes,
    spectrum,
    spectrum_to_csv,
    tau,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalSignatures",
    "CapacityError",
    "ComposedMap",
    "DecayFit",
    "DomainError",
    "EigenvalueBounds",
    "EigenvalueRegion",
    "IntMatrix",
    "IntervalPermutation",
    "McEstimate",
    "BoundCheck",
    "BoundReport",
    "RegionCheck",
    "SearchResult",
    "SlopeSignature",
    "Spectrum",
    "StepObservable",
    "Strategy",
    "StructuralError",
    "StructureReport",
    "all_signatures",
    "asymptotic_constant",
    "backwards_identity",
    "block_permutation_matrix",
    "bound_report",
    "canonical_signatures",
    "circulant_tau_formula",
    "collapse",
    "composed_map",
    "connectivity",
    "correlation",
    "decay_rate",
    "default_strategy",
    "degeneracy_predicate",
    "doubled_matrix",
    "eigenvector_observable",
    "eval_map",
    "exact_charpoly",
    "fine_markov",
    "folded_circulant",
    "gram_bound",
    "irreducibility_index",
    "lift",
    "longest_circuit",
    "matrix_to_csv",
    "mixing_compositions",
    "mixing_rate",
    "monte_carlo_correlation",
    "orbit_representatives",
    "permutation_matrix",
    "reduced_markov",
    "row_relation_classes",
    "sf_worst_rate",
    "spectrum",
    "spectrum_to_csv",
    "structured_matrix",
    "symmetric_circulant",
    "symmetry_orbit",
    "tau",
    "tent_cycle_matrix",
    "tent_region_contains",
    "tperm_search",
    "transfer_matrix",
    "worst_mixing_rate",
    "zigzag_worst_rate",
]
