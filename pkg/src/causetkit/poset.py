"""Causal event posets built from particle chains and pairwise influence edges.

Each particle is a totally ordered chain of events.  An influence edge orders
an event on one chain before an event on another.  The union of chain-successor
edges and influence edges, closed transitively, is the causal order.  Posets
are immutable after construction; any number of readers may query concurrently.
"""

from __future__ import annotations

import json
import warnings
from collections import deque
from dataclasses import dataclass
from typing import IO, Iterable, Mapping

from .errors import CycleError, PosetStructureError, SchemaError, UnknownEventError

EventId = str

SCHEMA_VERSION = 1

# Above this size the transitive closure is not precomputed and reachability
# queries fall back to breadth-first search.
_CLOSURE_MAX_EVENTS = 10_000


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str
    events: tuple[EventId, ...]


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


class CausalPoset:
    """Events partitioned into chains plus cross-chain influence edges.

    Construction happens through :func:`build_poset`; instances are treated
    as immutable values afterwards.
    """

    __slots__ = (
        "events",
        "chain_of",
        "chains",
        "influence_edges",
        "_index",
        "_succ",
        "_topo",
        "_closure",
    )

    def __init__(self, events, chain_of, chains, influence_edges):
        self.events: tuple[EventId, ...] = events
        self.chain_of: dict[EventId, str] = chain_of
        self.chains: dict[str, tuple[EventId, ...]] = chains
        self.influence_edges: tuple[tuple[EventId, EventId], ...] = influence_edges
        self._index = {e: i for i, e in enumerate(events)}
        self._succ = self._build_adjacency()
        self._topo = self._topological_order()
        self._closure = None
        if self._topo is not None and len(events) <= _CLOSURE_MAX_EVENTS:
            self._closure = self._build_closure()

    # -- derived structure -------------------------------------------------

    def _build_adjacency(self) -> list[list[int]]:
        succ: list[list[int]] = [[] for _ in self.events]
        for order in self.chains.values():
            for a, b in zip(order, order[1:]):
                succ[self._index[a]].append(self._index[b])
        for a, b in self.influence_edges:
            succ[self._index[a]].append(self._index[b])
        return succ

    def _topological_order(self) -> tuple[int, ...] | None:
        """Kahn's algorithm; None when the combined relation is cyclic."""
        indegree = [0] * len(self.events)
        for targets in self._succ:
            for t in targets:
                indegree[t] += 1
        ready = deque(i for i, d in enumerate(indegree) if d == 0)
        order = []
        while ready:
            v = ready.popleft()
            order.append(v)
            for t in self._succ[v]:
                indegree[t] -= 1
                if indegree[t] == 0:
                    ready.append(t)
        if len(order) != len(self.events):
            return None
        return tuple(order)

    def _build_closure(self) -> list[int]:
        """Reachability bitsets, filled in reverse topological order."""
        masks = [0] * len(self.events)
        for v in reversed(self._topo):
            mask = 1 << v
            for t in self._succ[v]:
                mask |= masks[t]
            masks[v] = mask
        return masks

    # -- queries -------------------------------------------------------------

    @property
    def n_events(self) -> int:
        return len(self.events)

    @property
    def n_chain_edges(self) -> int:
        return sum(max(len(order) - 1, 0) for order in self.chains.values())

    @property
    def n_influence_edges(self) -> int:
        return len(self.influence_edges)

    @property
    def is_acyclic(self) -> bool:
        return self._topo is not None

    def _idx(self, event: EventId) -> int:
        try:
            return self._index[event]
        except KeyError:
            raise UnknownEventError(f"unknown event id: {event!r}") from None

    def leq(self, x: EventId, y: EventId) -> bool:
        """True iff y is reachable from x (reflexively) in the causal order."""
        i, j = self._idx(x), self._idx(y)
        if self._closure is not None:
            return bool(self._closure[i] >> j & 1)
        if i == j:
            return True
        seen = {i}
        frontier = deque([i])
        while frontier:
            v = frontier.popleft()
            for t in self._succ[v]:
                if t == j:
                    return True
                if t not in seen:
                    seen.add(t)
                    frontier.append(t)
        return False

    def cycle_events(self) -> tuple[EventId, ...]:
        """Events that participate in (or depend on) a cycle; empty if acyclic."""
        if self._topo is not None:
            return ()
        ordered = set(self._topo_prefix())
        return tuple(e for i, e in enumerate(self.events) if i not in ordered)

    def _topo_prefix(self) -> list[int]:
        indegree = [0] * len(self.events)
        for targets in self._succ:
            for t in targets:
                indegree[t] += 1
        ready = deque(i for i, d in enumerate(indegree) if d == 0)
        order = []
        while ready:
            v = ready.popleft()
            order.append(v)
            for t in self._succ[v]:
                indegree[t] -= 1
                if indegree[t] == 0:
                    ready.append(t)
        return order

    def __eq__(self, other):
        if not isinstance(other, CausalPoset):
            return NotImplemented
        return (
            self.events == other.events
            and self.chain_of == other.chain_of
            and self.chains == other.chains
            and self.influence_edges == other.influence_edges
        )

    def __repr__(self) -> str:
        return (
            f"CausalPoset({self.n_events} events, {len(self.chains)} chains, "
            f"{self.n_influence_edges} influence edges)"
        )


def build_poset(
    events: Iterable[tuple[EventId, str]],
    chains: Mapping[str, Iterable[EventId]],
    influence_edges: Iterable[tuple[EventId, EventId]],
) -> CausalPoset:
    """Construct a poset with its reachability index.

    Only structural well-formedness is enforced here (ids resolve, no event
    sits on two chains).  Physics rules such as acyclicity and cross-chain
    influence are checked by :func:`validate`, which reports violations as
    data rather than raising.
    """
    event_list: list[EventId] = []
    chain_of: dict[EventId, str] = {}
    for event, chain in events:
        if event in chain_of:
            raise PosetStructureError(f"duplicate EventId: {event!r}")
        chain_of[event] = chain
        event_list.append(event)

    chain_orders: dict[str, tuple[EventId, ...]] = {}
    placed: dict[EventId, str] = {}
    for chain, order in chains.items():
        order = tuple(order)
        for event in order:
            if event not in chain_of:
                raise PosetStructureError(
                    f"unresolved EventId in chain {chain!r}: {event!r}"
                )
            if event in placed or chain_of[event] != chain:
                other = placed.get(event, chain_of[event])
                raise PosetStructureError(
                    f"event {event!r} assigned to two chains: {other!r} and {chain!r}"
                )
            placed[event] = chain
        chain_orders[chain] = order

    for event, chain in chain_of.items():
        if chain not in chain_orders:
            raise PosetStructureError(
                f"event {event!r} declared on unknown chain {chain!r}"
            )

    edges: list[tuple[EventId, EventId]] = []
    for src, dst in influence_edges:
        for end in (src, dst):
            if end not in chain_of:
                raise PosetStructureError(
                    f"unresolved EventId in influence edge: {end!r}"
                )
        edges.append((src, dst))

    return CausalPoset(tuple(event_list), chain_of, chain_orders, tuple(edges))


def validate(poset: CausalPoset) -> ValidationReport:
    """Check the physics rules; every violation is reported, none raised.

    Rules: influence edges must connect distinct chains, the combined
    relation must be acyclic, and every event must appear in its declared
    chain's total order.
    """
    violations: list[Violation] = []
    for src, dst in poset.influence_edges:
        if poset.chain_of[src] == poset.chain_of[dst]:
            violations.append(
                Violation(
                    "intra-chain-influence",
                    f"intra-chain influence: edge {src!r} -> {dst!r} stays on "
                    f"chain {poset.chain_of[src]!r}",
                    (src, dst),
                )
            )
    if not poset.is_acyclic:
        cyclic = poset.cycle_events()
        violations.append(
            Violation(
                "cycle",
                "cycle detected among events: " + ", ".join(map(repr, cyclic)),
                cyclic,
            )
        )
    listed = {e for order in poset.chains.values() for e in order}
    for event in poset.events:
        if event not in listed:
            violations.append(
                Violation(
                    "chain-not-total",
                    f"chain not total: event {event!r} is declared on chain "
                    f"{poset.chain_of[event]!r} but missing from its order",
                    (event,),
                )
            )
    return ValidationReport(tuple(violations))


def causal_leq(poset: CausalPoset, x: EventId, y: EventId) -> bool:
    """Reflexive causal comparison: x precedes-or-equals y."""
    return poset.leq(x, y)


def topological_order(poset: CausalPoset) -> list[EventId]:
    """A linear extension of the causal order; raises CycleError if cyclic."""
    if poset._topo is None:
        raise CycleError(
            "no topological order: cycle among " + ", ".join(map(repr, poset.cycle_events()))
        )
    return [poset.events[i] for i in poset._topo]


def dual(poset: CausalPoset) -> CausalPoset:
    """Reverse every edge: chain orders flip and influence edges swap ends."""
    return build_poset(
        [(e, poset.chain_of[e]) for e in poset.events],
        {chain: tuple(reversed(order)) for chain, order in poset.chains.items()},
        [(dst, src) for src, dst in poset.influence_edges],
    )


# -- document round trip -------------------------------------------------

_REQUIRED_KEYS = ("version", "events", "chains", "influence")


def poset_document(poset: CausalPoset) -> dict:
    return {
        "version": SCHEMA_VERSION,
        "events": [{"id": str(e), "chain": str(poset.chain_of[e])} for e in poset.events],
        "chains": {str(c): [str(e) for e in order] for c, order in poset.chains.items()},
        "influence": [[str(a), str(b)] for a, b in poset.influence_edges],
    }


def save_poset(poset: CausalPoset, destination: str | IO[str]) -> None:
    """Write the poset document (ids are serialized as strings)."""
    text = json.dumps(poset_document(poset), indent=2) + "\n"
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w", encoding="utf-8") as fh:
            fh.write(text)


def poset_from_document(doc) -> CausalPoset:
    if not isinstance(doc, dict):
        raise SchemaError("poset document must be an object")
    missing = [k for k in _REQUIRED_KEYS if k not in doc]
    if missing:
        raise SchemaError(f"poset document missing keys: {', '.join(missing)}")
    if doc["version"] != SCHEMA_VERSION:
        raise SchemaError(
            f"schema-version mismatch: got {doc['version']!r}, expected {SCHEMA_VERSION}"
        )
    unknown = sorted(set(doc) - set(_REQUIRED_KEYS))
    if unknown:
        warnings.warn(f"ignoring unknown poset document keys: {', '.join(unknown)}")
    try:
        events = [(entry["id"], entry["chain"]) for entry in doc["events"]]
        chains = {chain: list(order) for chain, order in doc["chains"].items()}
        influence = [(src, dst) for src, dst in doc["influence"]]
    except (TypeError, KeyError, ValueError) as exc:
        raise SchemaError(f"malformed poset document: {exc}") from exc
    return build_poset(events, chains, influence)


def load_poset(source: str | IO[str]) -> CausalPoset:
    """Read a poset document from a path or file-like object."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed poset document: {exc}") from exc
    return poset_from_document(doc)
