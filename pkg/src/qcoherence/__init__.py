"""Frobenius-norm quantum coherence: states, measures, channels and
rotational asymmetry."""
from .asymmetry import (
    asymmetry_analytic_qubit,
    asymmetry_collective_2q_closed,
    asymmetry_estimate,
    asymmetry_independent_closed,
    closed_form,
    entropic_asymmetry,
    f_functional,
    symmetry,
    twirl,
)
from .channels import (
    KrausChannel,
    amplitude_damping,
    apply,
    cohering_power,
    cohering_power_commutator,
    depolarizing,
    entropy_production_check,
    hadamard_basis,
    is_unital,
    overlap_matrix,
    phase_damping,
    pinsker_check,
    projective_measurement,
    random_channel,
    random_unital_channel,
    spectral_gap_projection,
    superoperator_spectral_gap,
    unitary_channel,
)
from .config import get_tolerances, override_tolerances, set_tolerances
from .errors import QCoherenceError
from .measures import (
    alpha_divergence,
    bz_information,
    bz_information_mco,
    c_l1,
    c_relent_qubit,
    c_trace_qubit,
    check_info_bound,
    coherence_eigform,
    coherence_frobenius,
    degree_polarization_2d,
    degree_polarization_3d,
    maximally_coherent_state,
    mub_set,
    trace_bound_chain,
)
from .states import (
    DensityMatrix,
    bloch_vector,
    correlation_tensor,
    from_bloch,
    from_tensor,
    maximally_mixed,
    pure_state,
    purity,
    random_density,
    random_pure,
    random_unitary,
    relative_entropy,
    von_neumann_entropy,
)
from .su2 import GroupSpec, MonteCarlo, Quadrature, SU2Element

__version__ = "0.1.0"
