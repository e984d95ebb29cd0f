"""Chain-based quantification of a causal poset.

An observer chain assigns valuations k*mu along itself; other events are
located by their forward and backward projections onto the chain.  Interval
pairs, the invariant interval scalar dp*dq, and the symmetric/antisymmetric
decomposition give emergent (t, x) coordinates on which boosts act as the
k-calculus rescaling (sqrt(m/n), sqrt(n/m)), equivalent to a Lorentz
transformation.  All operations are pure functions of immutable inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Mapping

from .errors import (
    CoordinationUndecidableError,
    UnknownEventError,
    UnquantifiableIntervalError,
)
from .exact import Surd, collapse, sqrt_exact
from .poset import CausalPoset, EventId

MODE_SINGLE_CHAIN = "single-chain"
MODE_COORDINATED = "coordinated"

CHAIN_LIKE = "chain-like"
ANTICHAIN_LIKE = "antichain-like"
PROJECTION_LIKE = "projection-like"


def _exactable(value) -> bool:
    return isinstance(value, (Rational, Surd))


@dataclass(frozen=True)
class ChainValuation:
    """Counting valuation along one chain: event at position k gets k*mu."""

    chain_id: str
    mu: Fraction
    index: Mapping[EventId, int]

    @classmethod
    def from_poset(cls, poset: CausalPoset, chain_id: str, mu=1) -> "ChainValuation":
        if chain_id not in poset.chains:
            raise UnknownEventError(f"unknown chain id: {chain_id!r}")
        order = poset.chains[chain_id]
        return cls(chain_id, Fraction(mu), {e: k for k, e in enumerate(order)})

    def value(self, event: EventId):
        try:
            return self.index[event] * self.mu
        except KeyError:
            raise UnknownEventError(
                f"event {event!r} is not on chain {self.chain_id!r}"
            ) from None


def chain_length(valuation: ChainValuation, a: EventId, b: EventId):
    """Length of the closed interval [a, b] along the chain: (k_b - k_a)*mu.

    Additive over joined intervals sharing an endpoint.
    """
    ka, kb = valuation.index.get(a), valuation.index.get(b)
    if ka is None or kb is None:
        missing = a if ka is None else b
        raise UnknownEventError(
            f"event {missing!r} is not on chain {valuation.chain_id!r}"
        )
    if ka > kb:
        raise ValueError(f"{a!r} follows {b!r} in chain order")
    return (kb - ka) * valuation.mu


@dataclass(frozen=True)
class Projection:
    """Result of projecting an event onto a chain; absent when no element qualifies."""

    event: EventId | None

    @property
    def present(self) -> bool:
        return self.event is not None


ABSENT = Projection(None)


def forward_project(poset: CausalPoset, chain_id: str, x: EventId) -> Projection:
    """Minimum chain element causally at-or-above x; a chain element projects onto itself."""
    if chain_id not in poset.chains:
        raise UnknownEventError(f"unknown chain id: {chain_id!r}")
    poset._idx(x)
    for c in poset.chains[chain_id]:
        if poset.leq(x, c):
            return Projection(c)
    return ABSENT


def backward_project(poset: CausalPoset, chain_id: str, x: EventId) -> Projection:
    """Maximum chain element causally at-or-below x (dual of forward_project)."""
    if chain_id not in poset.chains:
        raise UnknownEventError(f"unknown chain id: {chain_id!r}")
    poset._idx(x)
    for c in reversed(poset.chains[chain_id]):
        if poset.leq(c, x):
            return Projection(c)
    return ABSENT


@dataclass(frozen=True)
class IntervalPair:
    """Signed projected lengths quantifying an interval.

    In single-chain mode the components are the forward and backward
    projections onto one chain; in coordinated mode they are forward
    projections onto each of two coordinated chains.
    """

    dp: object
    dq: object
    mode: str = MODE_COORDINATED

    def __post_init__(self):
        # integer components promote to fractions so halving stays exact
        if isinstance(self.dp, int):
            object.__setattr__(self, "dp", Fraction(self.dp))
        if isinstance(self.dq, int):
            object.__setattr__(self, "dq", Fraction(self.dq))


def interval_pair(
    poset: CausalPoset,
    a: EventId,
    b: EventId,
    valuation_p: ChainValuation,
    valuation_q: ChainValuation | None = None,
) -> IntervalPair:
    """Quantify the interval [a, b] against one chain or two coordinated chains.

    Raises UnquantifiableIntervalError when any required projection is absent.
    """

    def _forward(valuation: ChainValuation, event: EventId):
        proj = forward_project(poset, valuation.chain_id, event)
        if not proj.present:
            raise UnquantifiableIntervalError(
                f"unquantifiable interval: {event!r} has no forward projection "
                f"onto chain {valuation.chain_id!r}"
            )
        return valuation.value(proj.event)

    def _backward(valuation: ChainValuation, event: EventId):
        proj = backward_project(poset, valuation.chain_id, event)
        if not proj.present:
            raise UnquantifiableIntervalError(
                f"unquantifiable interval: {event!r} has no backward projection "
                f"onto chain {valuation.chain_id!r}"
            )
        return valuation.value(proj.event)

    if valuation_q is None:
        dp = _forward(valuation_p, b) - _forward(valuation_p, a)
        dq = _backward(valuation_p, b) - _backward(valuation_p, a)
        return IntervalPair(dp, dq, MODE_SINGLE_CHAIN)
    dp = _forward(valuation_p, b) - _forward(valuation_p, a)
    dq = _forward(valuation_q, b) - _forward(valuation_q, a)
    return IntervalPair(dp, dq, MODE_COORDINATED)


@dataclass(frozen=True)
class IntervalScalar:
    """The invariant dp*dq with its sign class."""

    value: object
    kind: str


def interval_scalar(pair: IntervalPair) -> IntervalScalar:
    """dp*dq; positive is chain-like, negative antichain-like, zero projection-like."""
    value = pair.dp * pair.dq
    if value > 0:
        kind = CHAIN_LIKE
    elif value < 0:
        kind = ANTICHAIN_LIKE
    else:
        kind = PROJECTION_LIKE
    return IntervalScalar(value, kind)


@dataclass(frozen=True)
class LinearRelation:
    """Constant projection between two chains: forward constant m, backward n.

    beta = (m - n)/(m + n) and gamma = (1 - beta^2)^(-1/2); an extreme beta of
    +/-1 occurs exactly when n or m vanishes.
    """

    m: object
    n: object

    def __post_init__(self):
        if isinstance(self.m, int):
            object.__setattr__(self, "m", Fraction(self.m))
        if isinstance(self.n, int):
            object.__setattr__(self, "n", Fraction(self.n))
        if self.m < 0 or self.n < 0 or (self.m == 0 and self.n == 0):
            raise ValueError("projection constants require m, n >= 0 and m + n > 0")

    @property
    def beta(self):
        return (self.m - self.n) / (self.m + self.n)

    @property
    def gamma(self) -> float:
        beta = self.beta
        if abs(beta) >= 1:
            raise ValueError("gamma undefined at |beta| = 1 (m or n is zero)")
        # equal to (sqrt(m/n) + sqrt(n/m))/2, which is better conditioned
        r = math.sqrt(self.m / self.n)
        return (r + 1 / r) / 2

    @property
    def beta_gamma(self) -> float:
        if self.m <= 0 or self.n <= 0:
            raise ValueError("beta*gamma undefined at |beta| = 1")
        r = math.sqrt(self.m / self.n)
        return (r - 1 / r) / 2

    @property
    def k(self):
        """Geometric mean sqrt(m*n): the self-quantified interval length."""
        if _exactable(self.m) and _exactable(self.n):
            return collapse(sqrt_exact(Fraction(self.m) * Fraction(self.n)))
        return math.sqrt(self.m * self.n)

    def boost(self) -> Surd:
        """Exact sqrt(m/n) rescaling factor (floats convert exactly to rationals)."""
        if self.m <= 0 or self.n <= 0:
            raise ValueError("boost requires m > 0 and n > 0")
        return sqrt_exact(Fraction(self.m) / Fraction(self.n))


def pair_transform(pair: IntervalPair, relation: LinearRelation) -> IntervalPair:
    """Rescale a pair by (sqrt(m/n), sqrt(n/m)); the product dp*dq is invariant.

    Components stay exact for rational inputs: a perfect-square ratio m/n
    collapses back to rationals, otherwise the component is an exact surd.
    """
    boost = relation.boost()
    return IntervalPair(
        collapse(pair.dp * boost), collapse(pair.dq / boost), pair.mode
    )


def check_coordination(
    poset: CausalPoset,
    valuation_p: ChainValuation,
    valuation_q: ChainValuation,
    range_p: tuple[EventId, EventId],
    range_q: tuple[EventId, EventId],
) -> bool:
    """Decide coordination over finite ranges of two chains.

    True iff every closed interval of either chain inside its range forward
    projects to an equal-length closed interval on the other chain.  Raises
    CoordinationUndecidableError when a needed projection is absent.
    """
    if valuation_p.chain_id == valuation_q.chain_id:
        return True

    def _window(valuation: ChainValuation, lo: EventId, hi: EventId):
        order = poset.chains[valuation.chain_id]
        i, j = valuation.index.get(lo), valuation.index.get(hi)
        if i is None or j is None:
            raise UnknownEventError(
                f"range endpoints must lie on chain {valuation.chain_id!r}"
            )
        if i > j:
            i, j = j, i
        return order[i : j + 1]

    def _intervals_project_equal(src_val, dst_val, window) -> bool:
        values = []
        for event in window:
            proj = forward_project(poset, dst_val.chain_id, event)
            if not proj.present:
                raise CoordinationUndecidableError(
                    f"coordination undecidable: {event!r} has no forward "
                    f"projection onto chain {dst_val.chain_id!r}"
                )
            values.append(dst_val.value(proj.event))
        for i, a in enumerate(window):
            for j in range(i + 1, len(window)):
                here = chain_length(src_val, a, window[j])
                there = values[j] - values[i]
                if here != there:
                    return False
        return True

    window_p = _window(valuation_p, *range_p)
    window_q = _window(valuation_q, *range_q)
    return _intervals_project_equal(
        valuation_p, valuation_q, window_p
    ) and _intervals_project_equal(valuation_q, valuation_p, window_q)


def _require_coordinated(pair: IntervalPair, op: str):
    if pair.mode != MODE_COORDINATED:
        raise ValueError(f"{op} requires a coordinated interval pair")


def length(pair: IntervalPair):
    """(dp + dq)/2: the time-like component shared by coordinated observers."""
    _require_coordinated(pair, "length")
    return (pair.dp + pair.dq) / 2


def distance(pair: IntervalPair):
    """(dp - dq)/2: separation of coordinated chains, independent of the endpoints chosen."""
    _require_coordinated(pair, "distance")
    return (pair.dp - pair.dq) / 2


def decompose(pair: IntervalPair) -> tuple[IntervalPair, IntervalPair]:
    """Split into symmetric (dt, dt) and antisymmetric (dx, -dx) pairs.

    The metric identity dp*dq = dt^2 - dx^2 holds exactly.
    """
    dt = (pair.dp + pair.dq) / 2
    dx = (pair.dp - pair.dq) / 2
    return (
        IntervalPair(dt, dt, pair.mode),
        IntervalPair(dx, -dx, pair.mode),
    )


@dataclass(frozen=True)
class SpacetimeInterval:
    """Emergent coordinates: dt = (dp + dq)/2, dx = (dp - dq)/2."""

    dt: object
    dx: object


def to_spacetime(pair: IntervalPair) -> SpacetimeInterval:
    return SpacetimeInterval((pair.dp + pair.dq) / 2, (pair.dp - pair.dq) / 2)


def from_spacetime(st: SpacetimeInterval, mode: str = MODE_COORDINATED) -> IntervalPair:
    """Inverse change of variables: dp = dt + dx, dq = dt - dx."""
    return IntervalPair(st.dt + st.dx, st.dt - st.dx, mode)


def metric_scalar(st: SpacetimeInterval):
    """dt^2 - dx^2, equal to the interval scalar dp*dq."""
    return st.dt * st.dt - st.dx * st.dx


def lorentz_transform(st: SpacetimeInterval, beta: float) -> SpacetimeInterval:
    """Passive boost by the new frame's speed beta (|beta| < 1).

    dt' = gamma*(dt - beta*dx), dx' = gamma*(dx - beta*dt); the metric
    scalar dt^2 - dx^2 is invariant.
    """
    if abs(beta) >= 1:
        raise ValueError(f"|beta| must be < 1, got {beta}")
    gamma = 1 / math.sqrt(1 - beta * beta)
    dt, dx = st.dt, st.dx
    return SpacetimeInterval(gamma * (dt - beta * dx), gamma * (dx - beta * dt))


def quantification_rows(
    poset: CausalPoset,
    valuation_p: ChainValuation,
    valuation_q: ChainValuation | None = None,
) -> list[dict]:
    """Per-event coordinate table; absent projections yield None fields.

    Coordinated mode adds (t, x) from the two forward projections:
    t = (p + q)/2, x = (p - q)/2.
    """
    rows = []
    for event in poset.events:
        fwd_p = forward_project(poset, valuation_p.chain_id, event)
        bwd_p = backward_project(poset, valuation_p.chain_id, event)
        row = {
            "event_id": event,
            "p_fwd": valuation_p.value(fwd_p.event) if fwd_p.present else None,
            "p_bwd": valuation_p.value(bwd_p.event) if bwd_p.present else None,
            "q_fwd": None,
            "q_bwd": None,
            "t": None,
            "x": None,
        }
        if valuation_q is not None:
            fwd_q = forward_project(poset, valuation_q.chain_id, event)
            bwd_q = backward_project(poset, valuation_q.chain_id, event)
            row["q_fwd"] = valuation_q.value(fwd_q.event) if fwd_q.present else None
            row["q_bwd"] = valuation_q.value(bwd_q.event) if bwd_q.present else None
            if fwd_p.present and fwd_q.present:
                p, q = row["p_fwd"], row["q_fwd"]
                row["t"] = (p + q) / 2
                row["x"] = (p - q) / 2
        rows.append(row)
    return rows
