"""Built-in verification table.

Recomputes every analytic guarantee the package makes (coincidence laws,
discriminators, visibility dichotomy, state decomposition, correlation
sums, channel statistics) and reports each as one row with its expected
value and tolerance.  The CLI renders these rows and turns any violation
into a nonzero exit code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import experiments as ex
from .fock import (
    add,
    apply_form_dagger,
    form_commutator,
    inner,
    max_amplitude_diff,
    named_state,
    norm2,
    pair_factor_forms,
    vacuum,
)

_SQRT1_2 = math.sqrt(0.5)
_GRID_73 = np.linspace(0.0, math.pi, 73)


@dataclass(frozen=True)
class CheckRow:
    name: str
    value: float
    expected: float
    tolerance: float

    def abs_error(self) -> float:
        return abs(self.value - self.expected)

    def passed(self, tolerance: float | None = None) -> bool:
        return self.abs_error() <= (self.tolerance if tolerance is None else tolerance)


def _sine_law_rows() -> list[CheckRow]:
    worst = max(ex.fig1_coincidence(0.0, d).abs_error() for d in _GRID_73)
    rng = np.random.default_rng(16)
    conditional = max(abs(ex.fig1_conditional_check(t) - 0.5) for t in rng.uniform(-math.pi, math.pi, 16))
    return [
        CheckRow("fig1_sin2_max_abs_err", worst, 0.0, 1e-12),
        CheckRow("fig1_conditional_max_dev", conditional, 0.0, 1e-12),
    ]


def _pdc_rows() -> list[CheckRow]:
    curve_e = np.array([ex.pdc_coincidence("psi_e", 0.0, d).value for d in _GRID_73])
    curve_u = np.array([ex.pdc_coincidence("psi_u", 0.0, d).value for d in _GRID_73])
    shape_dev = float(np.max(np.abs(curve_e / curve_e.max() - curve_u / curve_u.max())))
    return [
        CheckRow("pdc_shape_max_dev", shape_dev, 0.0, 1e-9),
        CheckRow("pdc_peak_psi_e", ex.pdc_coincidence("psi_e", 0.0, math.pi / 2).value, 0.5, 1e-12),
        CheckRow("pdc_peak_psi_u", ex.pdc_coincidence("psi_u", 0.0, math.pi / 2).value, 0.25, 1e-12),
    ]


def _cascade_row() -> CheckRow:
    worst = max(ex.cascade_coincidence(ex.CascadeGeometry(), 0.0, d).abs_error() for d in _GRID_73)
    return CheckRow("cascade_cos2_max_abs_err", worst, 0.0, 1e-12)


def _fig2_rows() -> list[CheckRow]:
    worst_u = max(ex.fig2_split_coincidence("psi_u", d, 0.0).abs_error() for d in _GRID_73)
    worst_e = max(ex.fig2_split_coincidence("psi_e", d, 0.0).value for d in _GRID_73)
    return [
        CheckRow("fig2_psi_u_max_abs_err", worst_u, 0.0, 1e-12),
        CheckRow("fig2_psi_e_max_rate", worst_e, 0.0, 1e-12),
    ]


def _fig3_rows() -> list[CheckRow]:
    return [
        CheckRow("fig3_visibility_psi_u", ex.fig3_visibility("psi_u").value, 1.0, 1e-3),
        CheckRow("fig3_visibility_psi_e", ex.fig3_visibility("psi_e").value, 0.0, 1e-3),
    ]


def _decomposition_rows() -> list[CheckRow]:
    psi_e = named_state("psi_e")
    psi_u = named_state("psi_u")
    overlap = inner(psi_e, psi_u)
    remainder = add(psi_u, psi_e, 1.0, -_SQRT1_2)
    return [
        CheckRow("overlap_entangled_component", overlap.real, _SQRT1_2, 1e-12),
        CheckRow("overlap_imaginary_part", overlap.imag, 0.0, 1e-12),
        CheckRow("remainder_norm2", norm2(remainder), 0.5, 1e-12),
    ]


def _factorization_rows() -> list[CheckRow]:
    factor_a, factor_b = pair_factor_forms()
    rebuilt = apply_form_dagger(apply_form_dagger(vacuum(), factor_b), factor_a)
    amp_diff = max_amplitude_diff(rebuilt, named_state("psi_u"))
    commutator = abs(form_commutator(factor_a.conjugated(), factor_b.conjugated()))
    return [
        CheckRow("factorization_max_amp_diff", amp_diff, 0.0, 1e-12),
        CheckRow("factor_commutator_abs", commutator, 0.0, 1e-14),
    ]


def _chsh_rows() -> list[CheckRow]:
    angles = ex.CANONICAL_CHSH_ANGLES
    values = {kind: abs(ex.chsh_S(kind, **angles)) for kind in ("circular_pair", "psi_e", "psi_u")}
    bound = 2.0 * math.sqrt(2.0)
    rows = [CheckRow(f"chsh_abs_{kind}", value, bound, 1e-9) for kind, value in values.items()]
    rows.append(CheckRow("chsh_psi_e_minus_psi_u", values["psi_e"] - values["psi_u"], 0.0, 1e-9))
    return rows


def _channel_rows() -> list[CheckRow]:
    total = (
        ex.same_channel_probability("circular_pair", 1)
        + ex.same_channel_probability("circular_pair", 2)
        + ex.split_probability("circular_pair")
    )
    return [
        CheckRow("same_channel_psi_u_ch1", ex.same_channel_probability("psi_u", 1), 0.25, 1e-12),
        CheckRow("same_channel_psi_u_ch2", ex.same_channel_probability("psi_u", 2), 0.25, 1e-12),
        CheckRow("same_channel_psi_e_ch1", ex.same_channel_probability("psi_e", 1), 0.0, 1e-12),
        CheckRow("same_channel_psi_e_ch2", ex.same_channel_probability("psi_e", 2), 0.0, 1e-12),
        CheckRow("circular_outcome_total", total, 1.0, 1e-12),
    ]


def selfcheck_rows() -> list[CheckRow]:
    """All verification rows, in a fixed order."""
    rows: list[CheckRow] = []
    rows.extend(_sine_law_rows())
    rows.extend(_pdc_rows())
    rows.append(_cascade_row())
    rows.extend(_fig2_rows())
    rows.extend(_fig3_rows())
    rows.extend(_decomposition_rows())
    rows.extend(_factorization_rows())
    rows.extend(_chsh_rows())
    rows.extend(_channel_rows())
    return rows
