"""Exact simulator for two-photon polarization-correlation experiments."""

from .detection import (
    AllDark,
    BeamProfile,
    IntensityMap,
    ScanGrid,
    coincidence_rate,
    conditional_state,
    default_beams,
    intensity_at,
    intensity_map,
    same_channel_double_rate,
    singles_rate,
    visibility,
)
from .experiments import (
    CANONICAL_CHSH_ANGLES,
    CascadeGeometry,
    DarkDenominator,
    ScenarioResult,
    angle_scan,
    cascade_coincidence,
    chsh_S,
    correlation_E,
    fig1_coincidence,
    fig1_conditional_check,
    fig2_split_coincidence,
    fig3_visibility,
    pdc_coincidence,
    same_channel_probability,
    same_channel_table,
    scenario_point,
    split_probability,
)
from .fock import (
    FockKet,
    LinearForm,
    ZeroState,
    add,
    annihilate,
    apply_form,
    apply_form_dagger,
    basis_ket,
    combination_forms,
    create,
    form_commutator,
    inner,
    named_state,
    norm2,
    normal_ordered_expectation,
    normalize,
    occupation,
    pair_factor_forms,
    psi_u_composite,
    unit_form,
    vacuum,
    zero_form,
)
from .modes import ModeId, composite_mode, freq_mode, pol_mode
from .optics import (
    ChannelField,
    apply_jones,
    beamsplitter_5050,
    empty_field,
    frequency_component,
    hwp,
    mirror,
    phase_shift,
    polarizer,
    with_channel,
)
from .scenario import ParseError, ScenarioSpec, ValidationError, format_scenario, parse_scenario

__version__ = "0.1.0"
