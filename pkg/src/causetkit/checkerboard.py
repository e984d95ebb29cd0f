"""Amplitude calculus for influence sequences on the 1+1D checkerboard.

Sequences are quantified by pairs of real numbers (complex amplitudes):
parallel combination adds them, series combination multiplies them, and
probability follows the Born rule.  Requiring each one-step transition to
occur with total probability one constrains the per-move propagator matrices;
in the canonical gauge every reversal of direction carries a factor of i.
The kernel from an initial helicity state can be computed two independent
ways: brute-force summation over all move strings, or repeated transfer-matrix
steps of a spinor field on an integer lattice.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

import numpy as np

from .errors import BoundaryError, CapExceededError
from .kinematics import (
    DEFAULT_ENUMERATION_CAP,
    InfluenceSequence,
    P_MOVE,
    Q_MOVE,
    UnorderedInfluenceCount,
    count_orderings,
    enumerate_orderings,
)

Amplitude = complex

_TOL = 1e-12


def amp_add(a: Amplitude, b: Amplitude) -> Amplitude:
    """Component-wise sum (the parallel rule)."""
    return a + b


def amp_mul(a: Amplitude, b: Amplitude) -> Amplitude:
    """Complex product (the series rule)."""
    return a * b


def born(a: Amplitude) -> float:
    """Probability of a sequence with amplitude a: re^2 + im^2."""
    a = complex(a)
    return a.real * a.real + a.imag * a.imag


# -- measurement-sequence algebra ------------------------------------------
#
# A measurement sequence is a tuple of outcomes; an outcome is an atom or a
# tuple of atoms for a coarse-grained slot that does not distinguish them.


def series_join(a: tuple, b: tuple) -> tuple:
    """Concatenate sequences that share one common endpoint."""
    a, b = tuple(a), tuple(b)
    if not a or not b:
        raise ValueError("series join requires nonempty sequences")
    if a[-1] != b[0]:
        raise ValueError(
            f"series join endpoint mismatch: {a[-1]!r} != {b[0]!r}"
        )
    return a + b[1:]


def _atoms(outcome) -> tuple:
    return outcome if isinstance(outcome, tuple) else (outcome,)


def parallel_join(a: tuple, b: tuple) -> tuple:
    """Merge two sequences identical except in one slot into a coarse-grained one."""
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        raise ValueError("parallel join requires sequences of equal length")
    differing = [i for i, (x, y) in enumerate(zip(a, b)) if x != y]
    if len(differing) != 1:
        raise ValueError(
            "parallel join requires sequences differing in exactly one outcome"
        )
    i = differing[0]
    merged = tuple(sorted(set(_atoms(a[i])) | set(_atoms(b[i])), key=repr))
    return a[:i] + (merged,) + a[i + 1 :]


def expand_sequence(seq: tuple) -> list[tuple]:
    """All fully ordered sequences a coarse-grained sequence contains."""
    return list(itertools.product(*(_atoms(o) for o in seq)))


def measurement_amplitude(seq: tuple, pair_amplitude: Mapping) -> Amplitude:
    """Amplitude of a (possibly coarse-grained) sequence from its adjacent-pair amplitudes.

    Expansions add, adjacent pairs multiply; this realizes the series/parallel
    calculus on concrete data.
    """
    total = 0j
    for expansion in expand_sequence(seq):
        weight = 1 + 0j
        for x, y in zip(expansion, expansion[1:]):
            weight *= pair_amplitude[(x, y)]
        total += weight
    return total


# -- propagator pair ---------------------------------------------------------


def _unit_phase(angle: float) -> complex:
    # Canonical gauge angles stay exactly on the complex axes so that axis
    # components that must vanish are exactly zero.
    if angle == 0.0:
        return 1 + 0j
    if angle == math.pi / 2:
        return 1j
    if angle == -math.pi / 2:
        return -1j
    if angle == math.pi:
        return -1 + 0j
    return complex(math.cos(angle), math.sin(angle))


@dataclass(frozen=True)
class PropagatorPair:
    """Per-move 2x2 amplitude matrices acting on helicity spinors.

    P = [[a*e^(i*alpha), b*e^(i*beta)], [0, 0]] and
    Q = [[0, 0], [b*e^(i*beta), a*e^(i*alpha)]] with a^2 + b^2 = 1.
    The canonical gauge is alpha = 0, beta = pi/2 (reversals carry a factor
    of i); other phases are accepted but flagged as non-canonical.
    """

    a: float
    b: float
    phase_alpha: float = 0.0
    phase_beta: float = math.pi / 2

    @property
    def diagonal_entry(self) -> complex:
        """Amplitude of a direction-preserving step: a*e^(i*alpha)."""
        return self.a * _unit_phase(self.phase_alpha)

    @property
    def reversal_entry(self) -> complex:
        """Amplitude of a direction reversal: b*e^(i*beta)."""
        return self.b * _unit_phase(self.phase_beta)

    @cached_property
    def P(self) -> np.ndarray:
        return np.array(
            [[self.diagonal_entry, self.reversal_entry], [0, 0]], dtype=complex
        )

    @cached_property
    def Q(self) -> np.ndarray:
        return np.array(
            [[0, 0], [self.reversal_entry, self.diagonal_entry]], dtype=complex
        )

    @property
    def is_canonical_gauge(self) -> bool:
        return self.phase_alpha == 0.0 and self.phase_beta == math.pi / 2

    def matrix_for(self, move: str) -> np.ndarray:
        return self.P if move == P_MOVE else self.Q

    def transition_entry(self, previous: str, move: str) -> complex:
        """Matrix entry for arriving with helicity `move` after helicity `previous`."""
        return self.diagonal_entry if previous == move else self.reversal_entry


def make_propagators(
    a: float, b: float, phase_alpha: float = 0.0, phase_beta: float = math.pi / 2
) -> PropagatorPair:
    """Build the per-move matrices, enforcing a, b >= 0 and a^2 + b^2 = 1."""
    # grid endpoints like cos(pi/2) land a rounding error below zero
    if a < -_TOL or b < -_TOL:
        raise ValueError("propagator magnitudes must be nonnegative")
    if abs(a * a + b * b - 1.0) > _TOL:
        raise ValueError(
            f"propagator magnitudes must satisfy a^2 + b^2 = 1, got {a * a + b * b}"
        )
    return PropagatorPair(a, b, phase_alpha, phase_beta)


def propagators_from_theta(theta: float) -> PropagatorPair:
    """Propagators with (a, b) = (cos(theta), sin(theta)) for theta in [0, pi/2]."""
    return make_propagators(math.cos(theta), math.sin(theta))


def propagators_from_mass(mass: float, epsilon: float) -> PropagatorPair:
    """Mass-to-amplitude bridge: b = sin(mass*epsilon), a = cos(mass*epsilon).

    This is normalized exactly and reproduces the reversal weight
    i*mass*epsilon to first order in the step size.
    """
    return make_propagators(math.cos(mass * epsilon), math.sin(mass * epsilon))


def zero_momentum_propagators() -> PropagatorPair:
    """The symmetric case a = b = 1/sqrt(2): each reversal carries a bare factor of i."""
    r = math.sqrt(0.5)
    return make_propagators(r, r)


@dataclass(frozen=True)
class ConstraintReport:
    """Residuals of the probability-conservation constraints on a propagator pair."""

    residuals: dict
    tolerance: float = _TOL
    canonical_gauge: bool = True

    @property
    def ok(self) -> bool:
        return all(r <= self.tolerance for r in self.residuals.values())


def verify_propagator_constraints(
    pp: PropagatorPair, tolerance: float = _TOL
) -> ConstraintReport:
    """Check Q†Q + P†P = I, the entry-level constraints, and unitarity of P + Q."""
    P, Q = pp.P, pp.Q
    x, y = P[0, 0], P[0, 1]
    w, z = Q[1, 0], Q[1, 1]
    identity = np.eye(2)
    completeness = Q.conj().T @ Q + P.conj().T @ P
    one_step = P + Q
    residuals = {
        "completeness": float(np.max(np.abs(completeness - identity))),
        "norm-preserving-row-p": abs(w.conjugate() * w + x.conjugate() * x - 1),
        "norm-preserving-row-q": abs(z.conjugate() * z + y.conjugate() * y - 1),
        "off-diagonal-wz": abs(w.conjugate() * z + x.conjugate() * y),
        "off-diagonal-zw": abs(z.conjugate() * w + y.conjugate() * x),
        "unitarity": float(
            np.max(np.abs(one_step.conj().T @ one_step - identity))
        ),
    }
    return ConstraintReport(residuals, tolerance, pp.is_canonical_gauge)


def transition_magnitude_solutions(a: float, b: float) -> list[tuple[float, float]]:
    """Solve the magnitude system a^2+b^2 = 1, c^2+d^2 = 1, a*c = b*d for (c, d).

    Exactly two families exist: (c, d) = (b, a) and (c, d) = (-b, -a).
    """
    if abs(a * a + b * b - 1.0) > _TOL:
        raise ValueError("magnitudes must satisfy a^2 + b^2 = 1")
    return [(b, a), (-b, -a)]


# -- path weights -------------------------------------------------------------


def reversal_count(seq: InfluenceSequence) -> int:
    """Changes of direction along the sequence, counting one against the initial helicity."""
    if seq.initial_helicity is None:
        raise ValueError("reversal counting requires an initial helicity")
    reversals = 0
    previous = seq.initial_helicity
    for move in seq.moves:
        if move != previous:
            reversals += 1
        previous = move
    return reversals


@dataclass(frozen=True)
class PathWeight:
    reversals: int
    weight: Amplitude


@dataclass(frozen=True)
class FeynmanWeighting:
    """Corner-counting weight (i*mass*epsilon)^R."""

    mass: float
    epsilon: float


@dataclass(frozen=True)
class DerivedWeighting:
    """Per-step matrix-entry product under a propagator pair."""

    propagators: PropagatorPair


def path_weight(seq: InfluenceSequence, weighting) -> PathWeight:
    """Amplitude of one zig-zag path.

    Feynman weighting multiplies one factor i*mass*epsilon per reversal;
    derived weighting multiplies the propagator matrix entry for every step,
    which equals a^(L-R) * (b*i)^R in the canonical gauge.
    """
    reversals = reversal_count(seq)
    if isinstance(weighting, FeynmanWeighting):
        factor = 1j * weighting.mass * weighting.epsilon
        weight = 1 + 0j
        for _ in range(reversals):
            weight *= factor
        return PathWeight(reversals, weight)
    if isinstance(weighting, DerivedWeighting):
        pp = weighting.propagators
        weight = 1 + 0j
        previous = seq.initial_helicity
        for move in seq.moves:
            weight *= pp.transition_entry(previous, move)
            previous = move
        return PathWeight(reversals, weight)
    raise TypeError(f"unsupported weighting: {weighting!r}")


# -- spinors -------------------------------------------------------------------


@dataclass(frozen=True)
class Spinor:
    """Two amplitude components indexed by helicity of the most recent move."""

    phi_p: Amplitude
    phi_q: Amplitude

    def norm(self) -> float:
        return born(self.phi_p) + born(self.phi_q)

    def normalized(self) -> "Spinor":
        n = math.sqrt(self.norm())
        if n == 0:
            raise ValueError("cannot normalize the zero spinor")
        return Spinor(self.phi_p / n, self.phi_q / n)

    def as_array(self) -> np.ndarray:
        return np.array([self.phi_p, self.phi_q], dtype=complex)

    @classmethod
    def from_array(cls, vec) -> "Spinor":
        return cls(complex(vec[0]), complex(vec[1]))


def sequence_amplitude(
    seq: InfluenceSequence, pp: PropagatorPair, initial: Spinor
) -> Spinor:
    """Propagate a spinor through an ordered sequence.

    Matrices apply right-to-left (the sequence written in reverse order), so
    the first move's matrix hits the initial spinor first.
    """
    vec = initial.as_array()
    for move in seq.moves:
        vec = pp.matrix_for(move) @ vec
    return Spinor.from_array(vec)


def unordered_amplitude(
    counts: UnorderedInfluenceCount,
    pp: PropagatorPair,
    initial: Spinor,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> Spinor:
    """Sum of sequence amplitudes over every ordering of the given counts."""
    if count_orderings(counts) > cap:
        raise CapExceededError(
            f"{count_orderings(counts)} orderings exceed the cap of {cap}"
        )
    total = np.zeros(2, dtype=complex)
    for seq in enumerate_orderings(counts, cap=cap):
        total += sequence_amplitude(seq, pp, initial).as_array()
    return Spinor.from_array(total)


# -- lattice field -------------------------------------------------------------
#
# One site step per time step (P -> +1, Q -> -1); the half-unit spacetime grid
# is recovered by halving both coordinates: (t, x) = (step/2, site/2).


class CheckerboardField:
    """Helicity spinor field on integer lattice sites -radius..+radius.

    The lattice must be allocated large enough that the light cone never
    reaches the edge; stepping a field whose wavefront touches the boundary
    is a hard error, never wraparound.
    """

    __slots__ = ("psi_p", "psi_q", "radius", "epsilon", "step_count")

    def __init__(self, psi_p, psi_q, radius: int, epsilon: float = 1.0, step_count: int = 0):
        self.psi_p = np.asarray(psi_p, dtype=complex)
        self.psi_q = np.asarray(psi_q, dtype=complex)
        self.radius = radius
        self.epsilon = epsilon
        self.step_count = step_count
        if self.psi_p.shape != (2 * radius + 1,) or self.psi_q.shape != (2 * radius + 1,):
            raise ValueError("field arrays must cover sites -radius..+radius")

    @classmethod
    def point_source(
        cls, helicity: str, steps: int, epsilon: float = 1.0
    ) -> "CheckerboardField":
        """Unit amplitude at the origin in one helicity, sized for `steps` steps."""
        radius = steps + 1
        psi_p = np.zeros(2 * radius + 1, dtype=complex)
        psi_q = np.zeros(2 * radius + 1, dtype=complex)
        if helicity == P_MOVE:
            psi_p[radius] = 1
        elif helicity == Q_MOVE:
            psi_q[radius] = 1
        else:
            raise ValueError(f"helicity must be 'P' or 'Q', got {helicity!r}")
        return cls(psi_p, psi_q, radius, epsilon)

    @classmethod
    def from_sites(
        cls, sites: Mapping[int, Spinor], radius: int, epsilon: float = 1.0
    ) -> "CheckerboardField":
        psi_p = np.zeros(2 * radius + 1, dtype=complex)
        psi_q = np.zeros(2 * radius + 1, dtype=complex)
        for pos, spinor in sites.items():
            if abs(pos) > radius:
                raise ValueError(f"site {pos} outside allocated radius {radius}")
            psi_p[pos + radius] = spinor.phi_p
            psi_q[pos + radius] = spinor.phi_q
        return cls(psi_p, psi_q, radius, epsilon)

    @property
    def sites(self) -> dict[int, Spinor]:
        """Nonzero sites as a mapping position -> Spinor."""
        out = {}
        for i in range(2 * self.radius + 1):
            p, q = self.psi_p[i], self.psi_q[i]
            if p != 0 or q != 0:
                out[i - self.radius] = Spinor(complex(p), complex(q))
        return out

    def spinor_at(self, position: int) -> Spinor:
        i = position + self.radius
        if not 0 <= i <= 2 * self.radius:
            raise ValueError(f"site {position} outside allocated radius {self.radius}")
        return Spinor(complex(self.psi_p[i]), complex(self.psi_q[i]))

    def total_probability(self) -> float:
        return float(
            np.sum(self.psi_p.real**2 + self.psi_p.imag**2)
            + np.sum(self.psi_q.real**2 + self.psi_q.imag**2)
        )


def step_field(field: CheckerboardField, pp: PropagatorPair) -> CheckerboardField:
    """One transfer-matrix step, preserving total Born probability.

    psi_p'(x) = a*e^(i*alpha)*psi_p(x-1) + b*e^(i*beta)*psi_q(x-1)
    psi_q'(x) = b*e^(i*beta)*psi_p(x+1) + a*e^(i*alpha)*psi_q(x+1)
    """
    if (
        field.psi_p[0] != 0
        or field.psi_q[0] != 0
        or field.psi_p[-1] != 0
        or field.psi_q[-1] != 0
    ):
        raise BoundaryError(
            f"wavefront reached the allocated boundary at radius {field.radius}"
        )
    diag = pp.diagonal_entry
    off = pp.reversal_entry
    new_p = np.zeros_like(field.psi_p)
    new_q = np.zeros_like(field.psi_q)
    new_p[1:] = diag * field.psi_p[:-1] + off * field.psi_q[:-1]
    new_q[:-1] = off * field.psi_p[1:] + diag * field.psi_q[1:]
    return CheckerboardField(
        new_p, new_q, field.radius, field.epsilon, field.step_count + 1
    )


# -- kernels --------------------------------------------------------------------

DEFAULT_PATHSUM_CAP = DEFAULT_ENUMERATION_CAP

Kernel = dict[tuple[int, str], Amplitude]


def kernel_pathsum(
    steps: int,
    pp: PropagatorPair,
    initial_helicity: str,
    cap: int = DEFAULT_PATHSUM_CAP,
) -> Kernel:
    """Sum path weights over all 2^steps move strings, grouped by endpoint.

    Enumeration (and therefore summation) is in lexicographic order, making
    the result bit-reproducible.
    """
    if initial_helicity not in (P_MOVE, Q_MOVE):
        raise ValueError(f"helicity must be 'P' or 'Q', got {initial_helicity!r}")
    total = 2**steps
    if total > cap:
        raise CapExceededError(
            f"path sum over {total} sequences exceeds the cap of {cap}; "
            "use the matrix method for deep kernels"
        )
    entry = {
        (P_MOVE, P_MOVE): pp.diagonal_entry,
        (Q_MOVE, Q_MOVE): pp.diagonal_entry,
        (P_MOVE, Q_MOVE): pp.reversal_entry,
        (Q_MOVE, P_MOVE): pp.reversal_entry,
    }
    out: Kernel = {}
    for moves in itertools.product((P_MOVE, Q_MOVE), repeat=steps):
        weight = 1 + 0j
        position = 0
        previous = initial_helicity
        for move in moves:
            weight *= entry[(previous, move)]
            position += 1 if move == P_MOVE else -1
            previous = move
        key = (position, previous)
        out[key] = out.get(key, 0j) + weight
    return out


def field_kernel(field: CheckerboardField) -> Kernel:
    """Nonzero field amplitudes as a mapping (position, helicity) -> amplitude."""
    out: Kernel = {}
    for position, spinor in field.sites.items():
        if spinor.phi_p != 0:
            out[(position, P_MOVE)] = spinor.phi_p
        if spinor.phi_q != 0:
            out[(position, Q_MOVE)] = spinor.phi_q
    return out


def kernel_matrix(steps: int, pp: PropagatorPair, initial_helicity: str) -> Kernel:
    """Kernel by `steps` transfer-matrix applications to a point source."""
    field = CheckerboardField.point_source(initial_helicity, steps)
    for _ in range(steps):
        field = step_field(field, pp)
    return field_kernel(field)


def kernel(
    steps: int,
    pp: PropagatorPair,
    initial_helicity: str,
    method: str = "matrix",
    cap: int = DEFAULT_PATHSUM_CAP,
) -> Kernel:
    """Endpoint amplitudes after `steps` steps from a definite initial helicity."""
    if method == "matrix":
        return kernel_matrix(steps, pp, initial_helicity)
    if method == "pathsum":
        return kernel_pathsum(steps, pp, initial_helicity, cap=cap)
    raise ValueError(f"unknown kernel method: {method!r}")


def kernel_discrepancy(first: Kernel, second: Kernel) -> float:
    """Largest componentwise amplitude difference between two kernels."""
    keys = set(first) | set(second)
    if not keys:
        return 0.0
    return max(abs(first.get(k, 0j) - second.get(k, 0j)) for k in keys)


def kernel_probabilities(k: Kernel) -> dict[tuple[int, str], float]:
    return {key: born(amp) for key, amp in k.items()}
