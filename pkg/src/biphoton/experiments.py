"""Named end-to-end measurement scenarios.

Each scenario builds a source state and the detector operators seen through
its optical chain, evaluates the requested observable exactly, and reports
it next to the analytic closed form when one is available.  All angles are
radians; every rate is dimensionless with the overall source constant fixed
to 1.

Scenario catalog:

  fig1          two analyzers on the split single-beam circular pair;
                coincidence law sin^2(theta1 - theta2) / 4.
  pdc           two-channel pair source, entangled (psi_e) or un-entangled
                (psi_u); same normalized sin^2 law, constants 1/2 and 1/4.
  fig2          channel 2 split once more; coincidences between the two
                half-channels separate psi_u (cos^2 law / 16) from psi_e
                (identically zero).
  fig3          the two channels overlapped on one screen; fringe visibility
                separates psi_u (1) from psi_e (0).
  cascade       two-color cascade pair with frequency-selective detectors;
                cos^2 law with geometry coefficients.
  chsh          four-setting correlation sum built from any of the above
                coincidence laws.
  same-channel  probabilities of both photons leaving through one channel.
"""

from __future__ import annotations

import cmath
import math
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass
from typing import Union

from . import detection as det
from . import optics as op
from .fock import EPS_ZERO, FockKet, LinearForm, combination_forms, named_state, unit_form
from .modes import BEAM_H, BEAM_V, H1, H2, V1, V2, W1H, W1V, W2H, W2V

_SQRT1_2 = math.sqrt(0.5)

EXPERIMENTS = ("fig1", "pdc", "fig2", "fig3", "cascade", "chsh", "same-channel")

RATE_UNITS = "dimensionless rate (B = 1)"

#: Analyzer settings that maximize the four-setting correlation sum.
CANONICAL_CHSH_ANGLES = {"a": 0.0, "ap": math.pi / 4, "b": math.pi / 8, "bp": 3 * math.pi / 8}

#: Kinds whose coincidence law falls as sin^2 of the angle difference; the
#: cascade kind follows the complementary cos^2 law.
_SINE_LAW_KINDS = ("circular_pair", "psi_e", "psi_u")


class DarkDenominator(ValueError):
    """Raised when a correlation coefficient is requested from four rates
    that are all (near) zero."""


@dataclass(frozen=True)
class ScenarioResult:
    """One evaluated observable with its analytic reference, when known."""

    observable: str
    params: dict[str, float]
    value: float
    closed_form: float | None = None
    units: str = RATE_UNITS

    def abs_error(self) -> float | None:
        if self.closed_form is None:
            return None
        return abs(self.value - self.closed_form)


@dataclass(frozen=True)
class CascadeGeometry:
    """Complex routing coefficients of the two-color source into the two
    channels; g[i][j] weights frequency j in channel i."""

    g11: complex = 1.0 + 0j
    g12: complex = 1.0 + 0j
    g21: complex = 1.0 + 0j
    g22: complex = 1.0 + 0j

    def __post_init__(self) -> None:
        for name in ("g11", "g12", "g21", "g22"):
            if not cmath.isfinite(getattr(self, name)):
                raise ValueError(f"geometry coefficient {name} must be finite")


# --- field chains ------------------------------------------------------------


def fig1_channel_fields() -> tuple[op.ChannelField, op.ChannelField]:
    """Split the single beam on a balanced mirror, then apply the component
    phase-flip plate in channel 1 and the component-swap plate in channel 2."""
    source = op.ChannelField(unit_form(BEAM_V), unit_form(BEAM_H), channel=2)
    ch1, ch2 = op.beamsplitter_5050(source, op.empty_field(1))
    return op.apply_jones(ch1, op.hwp(0.0)), op.apply_jones(ch2, op.hwp(math.pi / 4))


def pdc_channel_fields(kind: str) -> tuple[op.ChannelField, op.ChannelField]:
    """Detector-plane fields of the two-channel pair source.

    For psi_e each channel carries its own polarization modes at unit
    amplitude.  For psi_u the channels carry the two combination modes with
    splitter weight 1/sqrt2 and crossed roles.
    """
    if kind == "psi_e":
        return (
            op.ChannelField(unit_form(V1), unit_form(H1), channel=1),
            op.ChannelField(unit_form(V2), unit_form(H2), channel=2),
        )
    if kind == "psi_u":
        first, second = combination_forms()
        return (
            op.ChannelField(first.scale(_SQRT1_2), second.scale(-_SQRT1_2), channel=1),
            op.ChannelField(second.scale(_SQRT1_2), first.scale(_SQRT1_2), channel=2),
        )
    raise ValueError(f"no two-channel pair fields for state {kind!r}")


def cascade_channel_fields(geom: CascadeGeometry) -> tuple[op.ChannelField, op.ChannelField]:
    """Both frequencies reach both channels, weighted by the geometry."""
    w1_v, w1_h = unit_form(W1V), unit_form(W1H)
    w2_v, w2_h = unit_form(W2V), unit_form(W2H)
    ch1 = op.ChannelField(
        w1_v.scale(geom.g11).plus(w2_v.scale(geom.g12)),
        w1_h.scale(geom.g11).plus(w2_h.scale(geom.g12)),
        channel=1,
    )
    ch2 = op.ChannelField(
        w1_v.scale(geom.g21).plus(w2_v.scale(geom.g22)),
        w1_h.scale(geom.g21).plus(w2_h.scale(geom.g22)),
        channel=2,
    )
    return ch1, ch2


def _source_and_fields(kind: str) -> tuple[FockKet, op.ChannelField, op.ChannelField]:
    if kind == "circular_pair":
        ch1, ch2 = fig1_channel_fields()
        return named_state("circular_pair"), ch1, ch2
    if kind in ("psi_e", "psi_u"):
        ch1, ch2 = pdc_channel_fields(kind)
        return named_state(kind), ch1, ch2
    raise ValueError(f"no channel decomposition for state {kind!r}")


# --- single-point scenarios -----------------------------------------------------


def fig1_coincidence(theta1: float, theta2: float) -> ScenarioResult:
    """Coincidence rate of the two analyzers on the split circular pair."""
    ket = named_state("circular_pair")
    ch1, ch2 = fig1_channel_fields()
    value = det.coincidence_rate(ket, op.polarizer(ch1, theta1), op.polarizer(ch2, theta2))
    return ScenarioResult(
        observable="coincidence_rate",
        params={"theta1": theta1, "theta2": theta2},
        value=value,
        closed_form=0.25 * math.sin(theta1 - theta2) ** 2,
    )


def fig1_conditional_check(theta1: float, normalized: bool = False) -> float:
    """Detection rate of the photon left behind by the first analyzer.

    The leftover state is kept unnormalized (detection probability folded
    in), so the bare analyzer operator sees it with rate one half for every
    angle; with normalization the rate is one.
    """
    ket = named_state("circular_pair")
    ch1, _ = fig1_channel_fields()
    leftover = det.conditional_state(ket, op.polarizer(ch1, theta1), normalized=normalized)
    bare_analyzer = LinearForm({BEAM_V: math.cos(theta1), BEAM_H: -math.sin(theta1)})
    return det.singles_rate(leftover, bare_analyzer)


def pdc_coincidence(kind: str, theta1: float, theta2: float) -> ScenarioResult:
    """Two-channel coincidence for the entangled or un-entangled pair."""
    ket, ch1, ch2 = _source_and_fields(kind)
    value = det.coincidence_rate(ket, op.polarizer(ch1, theta1), op.polarizer(ch2, theta2))
    peak = 0.5 if kind == "psi_e" else 0.25
    return ScenarioResult(
        observable="coincidence_rate",
        params={"theta1": theta1, "theta2": theta2},
        value=value,
        closed_form=peak * math.sin(theta1 - theta2) ** 2,
    )


def fig2_split_coincidence(kind: str, theta3: float, theta4: float) -> ScenarioResult:
    """Coincidence between the two halves of channel 2 after one more
    balanced split; identically zero for the entangled pair."""
    ket, _, ch2 = _source_and_fields(kind)
    ch3, leftover = op.beamsplitter_5050(ch2, op.empty_field(3))
    ch4 = op.with_channel(leftover, 4)
    value = det.coincidence_rate(ket, op.polarizer(ch3, theta3), op.polarizer(ch4, theta4))
    closed = 0.0 if kind == "psi_e" else math.cos(theta3 - theta4) ** 2 / 16.0
    return ScenarioResult(
        observable="coincidence_rate",
        params={"theta3": theta3, "theta4": theta4},
        value=value,
        closed_form=closed,
    )


def _fig3_closed_form(kind: str, beams: Sequence[det.BeamProfile], default_grid: bool) -> float | None:
    if any(beam.kind != "plane_wave" for beam in beams):
        return None
    if kind == "psi_e":
        return 0.0  # constant envelopes add incoherently: flat map
    # Fringe extrema land on the default grid only for the default tilt pair.
    canonical = (
        default_grid
        and beams[0].tilt == det.DEFAULT_TILT
        and beams[1].tilt == -det.DEFAULT_TILT
        and beams[0].phase_offset == beams[1].phase_offset
    )
    if not canonical:
        return None
    a1, a2 = beams[0].amplitude, beams[1].amplitude
    if a1 + a2 <= 0.0:
        return None
    return 2.0 * a1 * a2 / (a1 * a1 + a2 * a2)


def fig3_visibility(
    kind: str,
    beams: Sequence[det.BeamProfile] | None = None,
    grid: det.ScanGrid | None = None,
) -> ScenarioResult:
    """Fringe visibility of the two overlapped channels on one screen.

    Channel 1 is analyzed horizontally and rotated to vertical, channel 2 is
    analyzed vertically, so both beams hit the screen in the same
    polarization and only the state decides whether they interfere.
    """
    default_grid = grid is None
    beams = tuple(beams) if beams is not None else det.default_beams()
    if kind == "psi_e":
        screen_forms = [unit_form(H1), unit_form(V2)]
    elif kind == "psi_u":
        _, second = combination_forms()
        screen_forms = [second, second]
    else:
        raise ValueError(f"no overlap scenario for state {kind!r}")
    fringe_map = det.intensity_map(named_state(kind), screen_forms, beams, grid)
    return ScenarioResult(
        observable="visibility",
        params={},
        value=det.visibility(fringe_map),
        closed_form=_fig3_closed_form(kind, beams, default_grid),
    )


def cascade_coincidence(geom: CascadeGeometry, theta1: float, theta2: float) -> ScenarioResult:
    """Frequency-selective coincidence on the two-color cascade pair: the
    channel-1 detector accepts only the first color, the channel-2 detector
    only the second."""
    ket = named_state("psi_u_prime")
    ch1, ch2 = cascade_channel_fields(geom)
    first = op.polarizer(op.frequency_component(ch1, "w1"), theta1)
    second = op.polarizer(op.frequency_component(ch2, "w2"), theta2)
    value = det.coincidence_rate(ket, first, second)
    prefactor = 0.5 * abs(geom.g11 * geom.g22) ** 2
    return ScenarioResult(
        observable="coincidence_rate",
        params={"theta1": theta1, "theta2": theta2},
        value=value,
        closed_form=prefactor * math.cos(theta1 - theta2) ** 2,
    )


# --- channel statistics -----------------------------------------------------------


def same_channel_probability(kind: str, channel: int) -> float:
    """Probability that both photons of the pair leave through one channel."""
    if channel not in (1, 2):
        raise ValueError("channel must be 1 or 2")
    ket, ch1, ch2 = _source_and_fields(kind)
    chosen = ch1 if channel == 1 else ch2
    return det.same_channel_double_rate(ket, chosen) / 2.0


def split_probability(kind: str) -> float:
    """Probability of one photon in each channel, summed over polarizations."""
    ket, ch1, ch2 = _source_and_fields(kind)
    total = 0.0
    for first in (ch1.v.scale(ch1.phase), ch1.h.scale(ch1.phase)):
        for second in (ch2.v.scale(ch2.phase), ch2.h.scale(ch2.phase)):
            total += det.coincidence_rate(ket, first, second)
    return total


def same_channel_table(kind: str) -> list[ScenarioResult]:
    """Outcome probabilities {both in 1, both in 2, one in each}."""
    closed = {
        "circular_pair": (0.25, 0.25, 0.5),
        "psi_u": (0.25, 0.25, 0.5),
        "psi_e": (0.0, 0.0, 1.0),
    }.get(kind)
    values = (
        same_channel_probability(kind, 1),
        same_channel_probability(kind, 2),
        split_probability(kind),
    )
    names = ("both_ch1", "both_ch2", "split")
    return [
        ScenarioResult(
            observable=name,
            params={},
            value=value,
            closed_form=None if closed is None else closed[i],
            units="event probability",
        )
        for i, (name, value) in enumerate(zip(names, values))
    ]


# --- correlation coefficients -------------------------------------------------------


#: A coincidence law: either a named state kind or a callable (t1, t2) -> rate.
CoincidenceLaw = Union[str, Callable[[float, float], float]]


def _coincidence_value(law: CoincidenceLaw, theta1: float, theta2: float) -> float:
    if callable(law):
        return law(theta1, theta2)
    if law == "circular_pair":
        return fig1_coincidence(theta1, theta2).value
    if law in ("psi_e", "psi_u"):
        return pdc_coincidence(law, theta1, theta2).value
    if law == "psi_u_prime":
        return cascade_coincidence(CascadeGeometry(), theta1, theta2).value
    raise ValueError(f"no coincidence scenario for state {law!r}")


def correlation_E(law: CoincidenceLaw, theta1: float, theta2: float) -> float:
    """Two-channel correlation coefficient estimated from four analyzer
    settings (each angle also rotated by pi/2)."""
    t1p = theta1 + math.pi / 2
    t2p = theta2 + math.pi / 2
    same = _coincidence_value(law, theta1, theta2) + _coincidence_value(law, t1p, t2p)
    cross = _coincidence_value(law, theta1, t2p) + _coincidence_value(law, t1p, theta2)
    total = same + cross
    if total <= EPS_ZERO:
        raise DarkDenominator(f"all four coincidence rates vanish for {law!r}")
    return (same - cross) / total


def chsh_S(law: CoincidenceLaw, a: float, ap: float, b: float, bp: float) -> float:
    """Four-setting correlation sum E(a,b) - E(a,b') + E(a',b) + E(a',b')."""
    return (
        correlation_E(law, a, b)
        - correlation_E(law, a, bp)
        + correlation_E(law, ap, b)
        + correlation_E(law, ap, bp)
    )


def analytic_correlation_E(kind: str, theta1: float, theta2: float) -> float:
    """Closed form of correlation_E: -cos 2(t1-t2) for the sin^2-law states,
    +cos 2(t1-t2) for the cascade."""
    sign = -1.0 if kind in _SINE_LAW_KINDS else 1.0
    return sign * math.cos(2.0 * (theta1 - theta2))


def analytic_chsh_S(kind: str, a: float, ap: float, b: float, bp: float) -> float:
    return (
        analytic_correlation_E(kind, a, b)
        - analytic_correlation_E(kind, a, bp)
        + analytic_correlation_E(kind, ap, b)
        + analytic_correlation_E(kind, ap, bp)
    )


# --- generic dispatch and scans ------------------------------------------------------


def scenario_point(
    experiment: str,
    state: str,
    angles: Mapping[str, float],
    geometry: CascadeGeometry | None = None,
    beams: Sequence[det.BeamProfile] | None = None,
    grid: det.ScanGrid | None = None,
) -> ScenarioResult:
    """Evaluate one experiment at fixed angles (radians)."""
    theta = dict(angles)
    if experiment == "fig1":
        return fig1_coincidence(theta.get("theta1", 0.0), theta.get("theta2", 0.0))
    if experiment == "pdc":
        return pdc_coincidence(state, theta.get("theta1", 0.0), theta.get("theta2", 0.0))
    if experiment == "fig2":
        return fig2_split_coincidence(state, theta.get("theta3", 0.0), theta.get("theta4", 0.0))
    if experiment == "fig3":
        return fig3_visibility(state, beams=beams, grid=grid)
    if experiment == "cascade":
        return cascade_coincidence(geometry or CascadeGeometry(), theta.get("theta1", 0.0), theta.get("theta2", 0.0))
    if experiment == "chsh":
        settings = {name: theta.get(name, default) for name, default in CANONICAL_CHSH_ANGLES.items()}
        value = chsh_S(state, settings["a"], settings["ap"], settings["b"], settings["bp"])
        closed = analytic_chsh_S(state, settings["a"], settings["ap"], settings["b"], settings["bp"])
        return ScenarioResult(
            observable="abs_S",
            params=settings,
            value=abs(value),
            closed_form=abs(closed),
            units="dimensionless",
        )
    raise ValueError(f"unknown experiment {experiment!r}")


def scan_values(start: float, stop: float, step: float) -> list[float]:
    """Inclusive arithmetic grid start, start + step, ..., stop."""
    if not all(math.isfinite(v) for v in (start, stop, step)):
        raise ValueError("scan bounds and step must be finite")
    if step <= 0.0:
        raise ValueError("scan step must be > 0")
    if stop < start:
        raise ValueError("scan range is empty (stop < start)")
    values = []
    k = 0
    slack = 1e-9 * step
    while start + k * step <= stop + slack:
        values.append(start + k * step)
        k += 1
    return values


def angle_scan(
    experiment: str,
    state: str,
    scan_name: str,
    values: Sequence[float],
    fixed: Mapping[str, float] | None = None,
    geometry: CascadeGeometry | None = None,
) -> list[ScenarioResult]:
    """Evaluate an experiment over a sequence of values of one angle.

    Rows are ordered by grid index regardless of how they are computed.
    """
    if not values:
        raise ValueError("scan grid is empty")
    base = dict(fixed or {})
    rows = []
    for value in values:
        angles = dict(base)
        angles[scan_name] = value
        rows.append(scenario_point(experiment, state, angles, geometry=geometry))
    return rows
