"""Shared poset builders for the test suite."""

from __future__ import annotations

import random

import pytest

from causetkit import build_poset


def two_chain_poset():
    """Two 3-event chains with one influence edge pi2 -> p1."""
    return build_poset(
        [("pi1", "PI"), ("pi2", "PI"), ("pi3", "PI"), ("p1", "P"), ("p2", "P"), ("p3", "P")],
        {"PI": ["pi1", "pi2", "pi3"], "P": ["p1", "p2", "p3"]},
        [("pi2", "p1")],
    )


def mutual_influence_poset():
    """Two chains influencing one another, wired acyclically."""
    events = [(f"a{i}", "A") for i in range(4)] + [(f"b{i}", "B") for i in range(4)]
    chains = {"A": [f"a{i}" for i in range(4)], "B": [f"b{i}" for i in range(4)]}
    influence = [("a0", "b1"), ("b0", "a1"), ("a2", "b3"), ("b2", "a3")]
    return build_poset(events, chains, influence)


def ladder_poset(n: int = 8, offset: int = 2):
    """Two coordinated chains: p_i -> q_(i+offset) and q_i -> p_(i+offset).

    Forward projection of q_j onto P is p_(j+offset) and vice versa, so every
    interval projects to an equal-length interval: the chains are coordinated
    and sit at constant separation offset.
    """
    events = [(f"p{i}", "P") for i in range(n)] + [(f"q{i}", "Q") for i in range(n)]
    chains = {"P": [f"p{i}" for i in range(n)], "Q": [f"q{i}" for i in range(n)]}
    influence = []
    for i in range(n - offset):
        influence.append((f"p{i}", f"q{i + offset}"))
        influence.append((f"q{i}", f"p{i + offset}"))
    return build_poset(events, chains, influence)


def stretched_poset():
    """Constant projection with ratio 2: unit intervals on S span two steps on P."""
    n_s, n_p = 5, 10
    events = [(f"s{i}", "S") for i in range(n_s)] + [(f"p{i}", "P") for i in range(n_p)]
    chains = {"S": [f"s{i}" for i in range(n_s)], "P": [f"p{i}" for i in range(n_p)]}
    influence = []
    for i in range(n_s):
        if 2 * i < n_p:
            influence.append((f"s{i}", f"p{2 * i}"))
    for j in range(n_p):
        target = j // 2 + 1
        if target < n_s:
            influence.append((f"p{j}", f"s{target}"))
    return build_poset(events, chains, influence)


def random_valid_poset(rng: random.Random, max_events: int = 12):
    """Random chains plus forward-only cross-chain edges; acyclic by construction."""
    n = rng.randint(2, max_events)
    n_chains = rng.randint(1, min(3, n))
    ranks = list(range(n))
    rng.shuffle(ranks)
    assignment = [rng.randrange(n_chains) for _ in range(n)]
    # make sure no chain is empty
    for c in range(n_chains):
        if c not in assignment:
            assignment[rng.randrange(n)] = c
    events = [(f"e{i}", f"c{assignment[i]}") for i in range(n)]
    chains = {}
    for c in range(n_chains):
        members = [i for i in range(n) if assignment[i] == c]
        members.sort(key=lambda i: ranks[i])
        chains[f"c{c}"] = [f"e{i}" for i in members]
    influence = []
    for _ in range(rng.randint(0, 2 * n)):
        i, j = rng.randrange(n), rng.randrange(n)
        if assignment[i] != assignment[j] and ranks[i] < ranks[j]:
            influence.append((f"e{i}", f"e{j}"))
    return build_poset(events, chains, influence)


@pytest.fixture
def ladder():
    return ladder_poset()
