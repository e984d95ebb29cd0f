#!/usr/bin/env python3
"""Free-particle influence sequences: path counting, zig-zag trajectories at
the maximum speed, and rates that behave like mass, energy and momentum."""

from fractions import Fraction

from causetkit import (
    InfluenceSequence,
    LinearRelation,
    UnorderedInfluenceCount,
    count_orderings,
    enumerate_orderings,
    kinematic_state,
    rates,
    sequence_to_path,
    transform_energy_momentum,
    transform_rates,
)

# The observers only learn the unordered counts; every ordering is a possible
# spacetime path with the same endpoints.
counts = UnorderedInfluenceCount(3, 2)
print(f"P={counts.P}, Q={counts.Q}: {count_orderings(counts)} possible sequences")

small = UnorderedInfluenceCount(2, 1)
for seq in enumerate_orderings(small):
    path = sequence_to_path(seq)
    pts = " -> ".join(f"({t},{x})" for t, x in path.points)
    print(f"  {seq}: {pts}   segment betas {path.betas}")

endpoints = {sequence_to_path(s).net_displacement for s in enumerate_orderings(counts)}
print("shared endpoint of all 10 paths:", endpoints)

# Each segment moves at |beta| = 1: the zig-zag is the discrete zitterbewegung.
zigzag = sequence_to_path(InfluenceSequence.from_string("PQPQQP"))
print("all segments extremal:", all(abs(b) == 1 for b in zigzag.betas))

# Rates over a projected interval: N events spread over lengths (dp, dq).
r_p, r_q = rates(10, Fraction(5), Fraction(2))
state = kinematic_state(r_p, r_q)
print(f"\nrates ({r_p}, {r_q}):")
print(f"  mass^2   = {state.mass_squared}   (geometric mean squared)")
print(f"  energy   = {state.energy}   (arithmetic mean)")
print(f"  momentum = {state.momentum}   (half difference)")
print(f"  beta     = {state.beta} = p/E")
print("  E^2 - p^2 == M^2 exactly:", state.energy**2 - state.momentum**2 == state.mass_squared)

# Boosting to a linearly-related chain pair rescales the rates inversely,
# keeping the product (the squared mass) fixed.
relation = LinearRelation(4, 1)
b_p, b_q = transform_rates(r_p, r_q, relation)
print(f"\nboost m=4, n=1: rates ({b_p}, {b_q}), product {b_p * b_q}")

# Transforming the rates and then reading off (E, p) agrees with boosting
# (E, p) directly.
direct = kinematic_state(b_p, b_q)
via_ep = transform_energy_momentum(float(state.energy), float(state.momentum), relation)
print(f"E', p' via rates:  ({float(direct.energy):.12f}, {float(direct.momentum):.12f})")
print(f"E', p' via boost:  ({via_ep[0]:.12f}, {via_ep[1]:.12f})")

# A particle at rest (equal rates) has E = M, and boosts to (gamma M, beta gamma M).
rest = kinematic_state(Fraction(3), Fraction(3))
boosted = transform_energy_momentum(3.0, 0.0, relation)
print(f"\nrest particle M = E = {rest.mass}; boosted (E', p') = "
      f"({boosted[0]:.4f}, {boosted[1]:.4f}) = (gamma M, beta gamma M)")
