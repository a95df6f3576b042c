"""Exact vacuum + single-photon simulation of the three-beam-splitter circuit.

The circuit mixes the two system slots by the polarization angle, then
couples each system slot to its own vacuum environment slot by the loss
angle.  Because the weak-coherent input carries at most one photon, the
restriction to the vacuum + single-photon sector is exact, not a cutoff.

Slots are S1, S2 (system) and E1, E2 (environment); each slot holds an H or
V polarized photon.  Reduced system states are 5x5 matrices in the basis

    (|00>, |0 1V>, |1H 0>, |0 1H>, |1V 0>)

i.e. vacuum, then the photon configurations reachable from the input, then
the cross-polarized configurations produced by mixing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .noise_model import ChannelParams, ParameterError, gauss_hermite_grid, sample

__all__ = [
    "SLOTS",
    "POLS",
    "BASIS_LABELS",
    "SinglePhotonState",
    "input_state_weak_coherent",
    "beam_splitter",
    "trace_out_environment",
    "apply_channel_once",
    "channel_output",
]

SLOTS = ("S1", "S2", "E1", "E2")
POLS = ("H", "V")
BASIS_LABELS = ("|00>", "|0 1V>", "|1H 0>", "|0 1H>", "|1V 0>")

_SLOT_INDEX = {name: i for i, name in enumerate(SLOTS)}
_POL_INDEX = {name: i for i, name in enumerate(POLS)}

DEFAULT_MAX_ALPHA = 0.5

_MIN_MC_SAMPLES = 1000


@dataclass(frozen=True, eq=False)
class SinglePhotonState:
    """Amplitudes over the vacuum and the 8 one-photon modes (4 slots x 2 pols)."""

    amp_vacuum: complex
    amps: np.ndarray  # shape (4, 2), rows follow SLOTS, columns follow POLS

    def __post_init__(self) -> None:
        arr = np.array(self.amps, dtype=complex)
        if arr.shape != (4, 2):
            raise ParameterError(f"amplitude array must have shape (4, 2), got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "amps", arr)
        object.__setattr__(self, "amp_vacuum", complex(self.amp_vacuum))

    def norm(self) -> float:
        return math.sqrt(abs(self.amp_vacuum) ** 2 + float(np.sum(np.abs(self.amps) ** 2)))

    def amplitude(self, slot: str, pol: str) -> complex:
        return complex(self.amps[_SLOT_INDEX[slot], _POL_INDEX[pol]])


def input_state_weak_coherent(alpha: complex, max_alpha: float = DEFAULT_MAX_ALPHA) -> SinglePhotonState:
    """Normalized input N (|00> + alpha |0 1V> + alpha |1H 0>), environments empty.

    ``max_alpha`` guards the weak-amplitude regime; raise it explicitly to
    evaluate the state family outside that regime.
    """
    alpha = complex(alpha)
    if abs(alpha) > max_alpha:
        raise ParameterError(f"|alpha| = {abs(alpha):.4f} exceeds the weakness guard {max_alpha}")
    norm = 1.0 / math.sqrt(1.0 + 2.0 * abs(alpha) ** 2)
    amps = np.zeros((4, 2), dtype=complex)
    amps[_SLOT_INDEX["S1"], _POL_INDEX["H"]] = alpha * norm
    amps[_SLOT_INDEX["S2"], _POL_INDEX["V"]] = alpha * norm
    return SinglePhotonState(amp_vacuum=norm, amps=amps)


def beam_splitter(state: SinglePhotonState, slot_a: str, slot_b: str, angle: float) -> SinglePhotonState:
    """Mix two slots: per polarization, (A, B) -> (A cos - B sin, A sin + B cos).

    This is the amplitude action of sending a photon in ``slot_a`` to
    cos(angle) slot_a + sin(angle) slot_b.  The vacuum amplitude and the
    norm are unchanged.
    """
    if slot_a == slot_b:
        raise ParameterError(f"beam splitter needs two distinct slots, got {slot_a!r} twice")
    ia, ib = _SLOT_INDEX[slot_a], _SLOT_INDEX[slot_b]
    cos, sin = math.cos(angle), math.sin(angle)
    amps = np.array(state.amps, dtype=complex)
    row_a = amps[ia].copy()
    row_b = amps[ib].copy()
    amps[ia] = cos * row_a - sin * row_b
    amps[ib] = sin * row_a + cos * row_b
    return SinglePhotonState(amp_vacuum=state.amp_vacuum, amps=amps)


def trace_out_environment(state: SinglePhotonState) -> np.ndarray:
    """Reduced 5x5 system matrix after discarding the environment slots.

    In the one-photon sector the reduction is exact: system-photon
    components pair only with the environment vacuum, so the environment
    amplitudes contribute solely to the system-vacuum population.
    """
    sys_amps = np.array(
        [
            state.amplitude("S2", "V"),
            state.amplitude("S1", "H"),
            state.amplitude("S2", "H"),
            state.amplitude("S1", "V"),
        ],
        dtype=complex,
    )
    env = state.amps[2:, :]
    rho = np.zeros((5, 5), dtype=complex)
    rho[0, 0] = abs(state.amp_vacuum) ** 2 + float(np.sum(np.abs(env) ** 2))
    rho[0, 1:] = state.amp_vacuum * sys_amps.conj()
    rho[1:, 0] = rho[0, 1:].conj()
    rho[1:, 1:] = np.outer(sys_amps, sys_amps.conj())
    return rho


def apply_channel_once(
    alpha: complex, theta: float, phi: float, max_alpha: float = DEFAULT_MAX_ALPHA
) -> np.ndarray:
    """Run the circuit at fixed angles and return the reduced 5x5 output."""
    state = input_state_weak_coherent(alpha, max_alpha=max_alpha)
    state = beam_splitter(state, "S1", "S2", theta)
    state = beam_splitter(state, "S1", "E1", phi)
    state = beam_splitter(state, "S2", "E2", phi)
    return trace_out_environment(state)


def _kahan_matrix_mean(terms) -> np.ndarray:
    """Compensated sum of weighted matrices; robust to reduction round-off."""
    acc = np.zeros((5, 5), dtype=complex)
    comp = np.zeros((5, 5), dtype=complex)
    for term in terms:
        y = term - comp
        t = acc + y
        comp = (t - acc) - y
        acc = t
    return acc


def channel_output(
    params: ChannelParams,
    alpha: complex,
    method: str = "quadrature",
    effort: int = 40,
    seed: int | None = None,
    max_alpha: float = DEFAULT_MAX_ALPHA,
) -> np.ndarray:
    """Average the fixed-angle output over the angle distribution.

    ``method`` is "quadrature" (Gauss-Hermite tensor grid in whitened
    coordinates, ``effort`` nodes per axis) or "monte_carlo" (``effort``
    seeded samples, requires x < 1).
    """
    if method == "quadrature":
        theta, phi, w = gauss_hermite_grid(params, effort)
        return _kahan_matrix_mean(
            w[i] * apply_channel_once(alpha, theta[i], phi[i], max_alpha=max_alpha)
            for i in range(len(w))
        )
    if method == "monte_carlo":
        if effort < _MIN_MC_SAMPLES:
            raise ParameterError(f"monte carlo needs >= {_MIN_MC_SAMPLES} samples, got {effort}")
        draws = sample(params, 0 if seed is None else seed, effort)
        out = _kahan_matrix_mean(
            apply_channel_once(alpha, t, f, max_alpha=max_alpha) for t, f in draws
        )
        return out / effort
    raise ParameterError(f"unknown method {method!r}")
