"""Propagation of per-channel polarization fields through linear elements.

A ChannelField is the positive-frequency field of one beam line, written in
the Heisenberg picture as a pair of annihilator combinations (vertical and
horizontal component) times a unit propagation phase.  Wave plates mix the
two components with a 2x2 Jones matrix, a balanced splitter mixes two fields,
and an analyzer projects a field onto one transmission axis, yielding the
detector operator for that arm.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .fock import LinearForm, zero_form

_SQRT1_2 = math.sqrt(0.5)

#: 2x2 complex matrix acting on the (v, h) component pair.
JonesMatrix = np.ndarray


@dataclass(frozen=True, eq=False)
class ChannelField:
    """Positive-frequency field of one channel: phase * (v e_v + h e_h)."""

    v: LinearForm
    h: LinearForm
    channel: int
    phase: complex = 1.0 + 0j

    def __post_init__(self) -> None:
        if abs(abs(self.phase) - 1.0) > 1e-12:
            raise ValueError(f"propagation phase must be unimodular, got |{self.phase}|")


def empty_field(channel: int) -> ChannelField:
    """Vacuum-port field: both components identically zero."""
    return ChannelField(zero_form(), zero_form(), channel)


def with_channel(field: ChannelField, channel: int) -> ChannelField:
    """Same field relabeled to another beam line."""
    return ChannelField(field.v, field.h, channel, field.phase)


def hwp(axis_angle: float) -> JonesMatrix:
    """Half-wave plate with its fast axis at the given angle.

    hwp(0) flips the sign of the horizontal component (a pi phase difference
    between the components); hwp(pi/4) swaps the two components.
    """
    c, s = math.cos(2.0 * axis_angle), math.sin(2.0 * axis_angle)
    return np.array([[c, s], [s, -c]], dtype=complex)


def apply_jones(field: ChannelField, matrix: JonesMatrix) -> ChannelField:
    """Mix the (v, h) components linearly; channel tag and phase unchanged."""
    v = field.v.scale(matrix[0, 0]).plus(field.h.scale(matrix[0, 1]))
    h = field.v.scale(matrix[1, 0]).plus(field.h.scale(matrix[1, 1]))
    return ChannelField(v, h, field.channel, field.phase)


def beamsplitter_5050(a: ChannelField, b: ChannelField) -> tuple[ChannelField, ChannelField]:
    """Balanced splitter: component-wise ((a+b)/sqrt2, (a-b)/sqrt2).

    The sum port leaves along the second input's beam line, the difference
    port along the first input's.  Propagation phases are folded into the
    output coefficients, so both outputs carry phase 1.
    """
    if a.channel == b.channel:
        raise ValueError("beamsplitter inputs must carry distinct channel tags")

    def mix(x: LinearForm, y: LinearForm, sign: float) -> LinearForm:
        return x.scale(a.phase * _SQRT1_2).plus(y.scale(sign * b.phase * _SQRT1_2))

    out_sum = ChannelField(mix(a.v, b.v, 1.0), mix(a.h, b.h, 1.0), b.channel)
    out_diff = ChannelField(mix(a.v, b.v, -1.0), mix(a.h, b.h, -1.0), a.channel)
    return out_sum, out_diff


def polarizer(field: ChannelField, theta: float) -> LinearForm:
    """Absorbing analyzer at angle theta: the transmitted detector operator
    cos(theta) * v + sin(theta) * h, including the propagation phase.  The
    orthogonal component is discarded."""
    projected = field.v.scale(math.cos(theta)).plus(field.h.scale(math.sin(theta)))
    return projected.scale(field.phase)


def phase_shift(field: ChannelField, phi: float) -> ChannelField:
    return ChannelField(field.v, field.h, field.channel, field.phase * cmath.exp(1j * phi))


def mirror(field: ChannelField) -> ChannelField:
    return ChannelField(field.v, field.h, field.channel, -field.phase)


def frequency_component(field: ChannelField, freq: str) -> ChannelField:
    """Restriction of the field to modes carrying one frequency tag (a color
    filter in front of the analyzer)."""

    def pick(form: LinearForm) -> LinearForm:
        return LinearForm({m: c for m, c in form.items() if m.freq == freq})

    return ChannelField(pick(field.v), pick(field.h), field.channel, field.phase)
