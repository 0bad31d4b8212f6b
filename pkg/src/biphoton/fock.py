"""Sparse Fock-space algebra for few-photon states.

States are finite complex combinations of occupation-number basis kets,
stored as a mapping from canonical occupation vectors to amplitudes.  The
amplitudes are number-basis amplitudes, i.e. ladder factors are already
included: applying a creation operator multiplies by sqrt(n+1), an
annihilation operator by sqrt(n).

Detector and field operators are linear forms sum_m c_m b_m over mode
annihilators.  By convention the coefficients carry the full field
amplitude, including any 1/sqrt(2) splitter factors, so that every
counting rate comes out in the same dimensionless units (overall field
constant fixed to 1).

Amplitudes with magnitude <= EPS_PRUNE are dropped after each operation;
normalizing a ket whose squared norm is <= EPS_ZERO raises ZeroState.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from typing import Union

from .modes import BEAM_H, BEAM_V, H1, H2, V1, V2, W1H, W1V, W2H, W2V, ModeId, composite_mode

EPS_PRUNE = 1e-14
EPS_ZERO = 1e-12

_SQRT1_2 = math.sqrt(0.5)

#: Canonical occupation vector: mode/count pairs, sorted, counts > 0.
Occupation = tuple[tuple[ModeId, int], ...]

OccupationLike = Union[Occupation, Mapping[ModeId, int], Iterable[tuple[ModeId, int]]]

NAMED_STATE_KINDS = ("circular_pair", "psi_e", "psi_u", "psi_u_prime")


class ZeroState(ValueError):
    """Raised when a (near-)zero ket is asked to behave like a state."""


def occupation(counts: OccupationLike) -> Occupation:
    """Canonicalize an occupation vector: drop zeros, sort, reject negatives."""
    pairs = counts.items() if isinstance(counts, Mapping) else counts
    merged: dict[ModeId, int] = {}
    for mode, n in pairs:
        if n < 0:
            raise ValueError(f"negative occupation {n} for mode {mode}")
        merged[mode] = merged.get(mode, 0) + n
    return tuple(sorted(((m, n) for m, n in merged.items() if n > 0), key=lambda p: p[0].sort_key()))


def total_photons(occ: Occupation) -> int:
    return sum(n for _, n in occ)


def occ_count(occ: Occupation, mode: ModeId) -> int:
    for m, n in occ:
        if m == mode:
            return n
    return 0


def _occ_with(occ: Occupation, mode: ModeId, n: int) -> Occupation:
    """Copy of occ with the count of one mode replaced (removed if zero)."""
    pairs = [(m, c) for m, c in occ if m != mode]
    if n > 0:
        pairs.append((mode, n))
        pairs.sort(key=lambda p: p[0].sort_key())
    return tuple(pairs)


class FockKet:
    """Finite sparse mapping occupation vector -> complex amplitude."""

    __slots__ = ("_amp",)

    def __init__(self, amplitudes: Mapping[OccupationLike, complex] | None = None):
        amp: dict[Occupation, complex] = {}
        for occ, a in (amplitudes or {}).items():
            key = occupation(occ)
            amp[key] = amp.get(key, 0j) + complex(a)
        self._amp = {occ: a for occ, a in amp.items() if abs(a) > EPS_PRUNE}

    def items(self):
        return self._amp.items()

    def support(self) -> tuple[Occupation, ...]:
        return tuple(sorted(self._amp, key=lambda occ: tuple(p[0].sort_key() for p in occ)))

    def amplitude(self, occ: OccupationLike) -> complex:
        return self._amp.get(occupation(occ), 0j)

    def __len__(self) -> int:
        return len(self._amp)

    def __bool__(self) -> bool:
        return bool(self._amp)

    def __repr__(self) -> str:
        terms = ", ".join(
            f"{a:.4g} * |{' '.join(f'{m}:{n}' for m, n in occ) or 'vac'}>"
            for occ, a in sorted(self._amp.items(), key=lambda kv: tuple(p[0].sort_key() for p in kv[0]))
        )
        return f"FockKet({terms or '0'})"


class LinearForm:
    """Complex combination sum_m c_m b_m of mode annihilators."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[ModeId, complex] | None = None):
        self._coeffs = {m: complex(c) for m, c in (coeffs or {}).items() if abs(c) > EPS_PRUNE}

    def items(self):
        return self._coeffs.items()

    def modes(self) -> tuple[ModeId, ...]:
        return tuple(sorted(self._coeffs, key=ModeId.sort_key))

    def coeff(self, mode: ModeId) -> complex:
        return self._coeffs.get(mode, 0j)

    def scale(self, factor: complex) -> "LinearForm":
        return LinearForm({m: c * factor for m, c in self._coeffs.items()})

    def plus(self, other: "LinearForm") -> "LinearForm":
        coeffs = dict(self._coeffs)
        for m, c in other.items():
            coeffs[m] = coeffs.get(m, 0j) + c
        return LinearForm(coeffs)

    def conjugated(self) -> "LinearForm":
        return LinearForm({m: c.conjugate() for m, c in self._coeffs.items()})

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __repr__(self) -> str:
        terms = " + ".join(f"({c:.4g})*b[{m}]" for m, c in sorted(self._coeffs.items(), key=lambda kv: kv[0].sort_key()))
        return f"LinearForm({terms or '0'})"


def unit_form(mode: ModeId) -> LinearForm:
    return LinearForm({mode: 1.0})


def zero_form() -> LinearForm:
    return LinearForm()


def vacuum() -> FockKet:
    return FockKet({(): 1.0})


def basis_ket(counts: OccupationLike, amplitude: complex = 1.0) -> FockKet:
    """Single occupation-number basis ket with the given amplitude."""
    return FockKet({occupation(counts): amplitude})


def create(ket: FockKet, mode: ModeId) -> FockKet:
    """Apply the creation operator of one mode (ladder factor sqrt(n+1))."""
    out: dict[Occupation, complex] = {}
    for occ, a in ket.items():
        n = occ_count(occ, mode)
        key = _occ_with(occ, mode, n + 1)
        out[key] = out.get(key, 0j) + a * math.sqrt(n + 1)
    return FockKet(out)


def annihilate(ket: FockKet, mode: ModeId) -> FockKet:
    """Apply the annihilation operator of one mode (ladder factor sqrt(n))."""
    out: dict[Occupation, complex] = {}
    for occ, a in ket.items():
        n = occ_count(occ, mode)
        if n:
            key = _occ_with(occ, mode, n - 1)
            out[key] = out.get(key, 0j) + a * math.sqrt(n)
    return FockKet(out)


def apply_form(ket: FockKet, form: LinearForm) -> FockKet:
    """Apply sum_m c_m b_m; linear in both the ket and the form."""
    out: dict[Occupation, complex] = {}
    for occ, a in ket.items():
        for mode, c in form.items():
            n = occ_count(occ, mode)
            if n:
                key = _occ_with(occ, mode, n - 1)
                out[key] = out.get(key, 0j) + a * c * math.sqrt(n)
    return FockKet(out)


def apply_form_dagger(ket: FockKet, form: LinearForm) -> FockKet:
    """Apply sum_m c_m b_m^dag, with the coefficients used as given.

    Callers that need the adjoint of an annihilator form must pass the
    conjugated coefficients themselves.
    """
    out: dict[Occupation, complex] = {}
    for occ, a in ket.items():
        for mode, c in form.items():
            n = occ_count(occ, mode)
            key = _occ_with(occ, mode, n + 1)
            out[key] = out.get(key, 0j) + a * c * math.sqrt(n + 1)
    return FockKet(out)


def inner(a: FockKet, b: FockKet) -> complex:
    """Inner product <a|b>, conjugate-linear in the first argument."""
    if len(b) < len(a):
        return inner(b, a).conjugate()
    return sum((a.amplitude(occ).conjugate() * amp for occ, amp in b.items()), 0j)


def norm2(ket: FockKet) -> float:
    return sum(abs(a) ** 2 for _, a in ket.items())


def normalize(ket: FockKet) -> FockKet:
    n2 = norm2(ket)
    if n2 <= EPS_ZERO:
        raise ZeroState(f"cannot normalize ket with squared norm {n2:.3e}")
    return scale(ket, 1.0 / math.sqrt(n2))


def scale(ket: FockKet, factor: complex) -> FockKet:
    return FockKet({occ: a * factor for occ, a in ket.items()})


def add(a: FockKet, b: FockKet, alpha: complex = 1.0, beta: complex = 1.0) -> FockKet:
    """Linear combination alpha*a + beta*b."""
    out: dict[Occupation, complex] = {occ: alpha * amp for occ, amp in a.items()}
    for occ, amp in b.items():
        out[occ] = out.get(occ, 0j) + beta * amp
    return FockKet(out)


def normal_ordered_expectation(ket: FockKet, forms: Iterable[LinearForm]) -> float:
    """<L1^dag ... Lk^dag Lk ... L1> on ket: squared norm after applying
    every form.  Annihilators commute, so the order of forms is irrelevant."""
    cur = ket
    for form in forms:
        cur = apply_form(cur, form)
    return norm2(cur)


def form_commutator(f: LinearForm, g: LinearForm) -> complex:
    """Commutator [sum f_m b_m, sum conj(g_m) b_m^dag] = sum_m f_m conj(g_m)."""
    return sum((c * g.coeff(m).conjugate() for m, c in f.items()), 0j)


def max_amplitude_diff(a: FockKet, b: FockKet) -> float:
    """Largest amplitude difference between two kets over their joint support."""
    occs = set(dict(a.items())) | set(dict(b.items()))
    return max((abs(a.amplitude(occ) - b.amplitude(occ)) for occ in occs), default=0.0)


def combination_forms() -> tuple[LinearForm, LinearForm]:
    """Annihilators of the two orthonormal combination modes underlying the
    un-entangled pair state, written over the four channel/polarization modes."""
    first = LinearForm({V1: _SQRT1_2, H2: _SQRT1_2})
    second = LinearForm({V2: _SQRT1_2, H1: -_SQRT1_2})
    return first, second


def pair_factor_forms() -> tuple[LinearForm, LinearForm]:
    """Creation coefficients of the two commuting single-photon factors whose
    product over vacuum reconstructs the un-entangled pair state.

    Intended for apply_form_dagger; the matching annihilator forms are the
    conjugates.
    """
    first, second = combination_forms()
    factor_a = first.scale(_SQRT1_2).plus(second.scale(1j * _SQRT1_2))
    factor_b = first.scale(_SQRT1_2).plus(second.scale(-1j * _SQRT1_2))
    return factor_a, factor_b


def named_state(kind: str) -> FockKet:
    """Unit-norm two-photon source states used throughout the scenarios.

    circular_pair: one left- and one right-circular photon in a single beam,
        equal superposition of double-V and double-H occupation.
    psi_e: polarization-entangled pair across channels 1 and 2 (singlet-like).
    psi_u: un-entangled pair of the two combination modes, expanded over the
        four channel/polarization modes.
    psi_u_prime: two-color cascade pair with matched polarizations.
    """
    if kind == "circular_pair":
        return FockKet({
            occupation({BEAM_V: 2}): _SQRT1_2,
            occupation({BEAM_H: 2}): _SQRT1_2,
        })
    if kind == "psi_e":
        return FockKet({
            occupation({V1: 1, H2: 1}): _SQRT1_2,
            occupation({V2: 1, H1: 1}): -_SQRT1_2,
        })
    if kind == "psi_u":
        quarter = 0.25 * math.sqrt(2.0)
        return FockKet({
            occupation({V1: 1, H2: 1}): 0.5,
            occupation({V2: 1, H1: 1}): -0.5,
            occupation({V1: 2}): quarter,
            occupation({H2: 2}): quarter,
            occupation({V2: 2}): quarter,
            occupation({H1: 2}): quarter,
        })
    if kind == "psi_u_prime":
        return FockKet({
            occupation({W1H: 1, W2H: 1}): _SQRT1_2,
            occupation({W1V: 1, W2V: 1}): _SQRT1_2,
        })
    raise ValueError(f"unknown named state {kind!r}; expected one of {NAMED_STATE_KINDS}")


def psi_u_composite() -> FockKet:
    """The un-entangled pair state written over the two abstract combination
    modes themselves (double occupation of either), rather than expanded over
    channel/polarization modes as named_state("psi_u") returns it."""
    first, second = composite_mode(1), composite_mode(2)
    return FockKet({
        occupation({first: 2}): _SQRT1_2,
        occupation({second: 2}): _SQRT1_2,
    })
