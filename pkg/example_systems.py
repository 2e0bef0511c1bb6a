#!/usr/bin/env python3
"""Verdicts of the shadowing checks on every example system"""

import warnings

import shadowlab
from shadowlab import Dyadic, VariantParams
from shadowlab.builders import (
    circle_stack,
    interval_square,
    periodic_cofinal,
    square,
    square_sequence,
    torus,
)

warnings.filterwarnings("ignore", message="Skipped")


def report(title, verdict):
    status = "holds" if verdict.holds else "fails"
    print(f"  {title}: {status}")
    if verdict.witness is not None:
        w = verdict.witness
        names = ", ".join(label or f"{len(ids)} points" for label, ids in zip(w.labels, w.sets))
        if names:
            print(f"    witness: {names}")
        for key, value in w.distances:
            print(f"    {key} = {shadowlab.format_scalar(value)}")


print("=== SHADOWLAB EXAMPLE SYSTEMS ===\n")

# 1. SQUARE SYSTEM
print("1. SQUARE SYSTEM")
print("-" * 40)
sys = square(5)
delta = Dyadic(1, 4)
Q = sys.labels["Q"]
print(f"  {len(sys)} points, Q has {len(Q)}")
print(f"  Q is ICT at delta={delta}: {shadowlab.is_ict(sys, Q, delta)}")
print(f"  full trajectory near Q: {shadowlab.full_trajectory_with(sys, Q, Q, Dyadic(1, 2))}")
report("P_e", shadowlab.check_property(sys, "P_e", VariantParams(delta, extra_sets=sys.labels)))

# 2. x -> x^2 ON [0, 1]
print("\n\n2. x -> x^2 ON [0, 1]")
print("-" * 40)
sys = interval_square(6)
report("P_e", shadowlab.check_property(sys, "P_e", VariantParams(Dyadic(1, 6))))
params = VariantParams(Dyadic(1, 6), candidate_family=[[0], [64]])
report("two-sided orbital limit shadowing", shadowlab.check_limit_variant(sys, "tols", params))

# 3. CIRCLE STACK
print("\n\n3. CIRCLE STACK")
print("-" * 40)
sys = circle_stack(4, 8, 3)
report("P_e at delta=1/2^4", shadowlab.check_property(sys, "P_e", VariantParams(Dyadic(1, 4))))
report(
    "delta-restricted orbital limit shadowing at delta=1/3",
    shadowlab.check_limit_variant(sys, "delta_restricted_tols", VariantParams("1/3")),
)

# 4. TORUS ROTATION
print("\n\n4. TORUS ROTATION")
print("-" * 40)
sys = torus(13, 8)
params = VariantParams(Dyadic(1, 3), epsilon=Dyadic(1, 2))
report("two-sided cofinal orbital shadowing", shadowlab.check_cofinal_variant(sys, "two_sided_cofinal", params))
fibers = VariantParams(Dyadic(1, 3), epsilon=Dyadic(1, 2), candidate_family=(), extra_sets=sys.labels)
report("P_a over the fibers", shadowlab.check_property(sys, "P_a", fibers))

# 5. PERIODIC RINGS AROUND Q
print("\n\n5. PERIODIC RINGS AROUND Q")
print("-" * 40)
sys = periodic_cofinal(6)
report("P_e", shadowlab.check_property(sys, "P_e", VariantParams(Dyadic(1, 5), extra_sets=sys.labels)))
report(
    "P_a with epsilon=1/2^3",
    shadowlab.check_property(
        sys, "P_a", VariantParams(Dyadic(1, 5), epsilon=Dyadic(1, 3), extra_sets=sys.labels)
    ),
)

# 6. SEQUENCE OF SQUARES
print("\n\n6. SEQUENCE OF SQUARES")
print("-" * 40)
table = shadowlab.convergence_table(
    "square_sequence",
    [shadowlab.TruncationParams(level=4, depth=m, rings=m) for m in (2, 3, 4)],
    family_labels=["Q", "2Q"],
)
print(table[["depth", "rings", "points", "cycles", "gap"]].to_string(index=False))
sys = square_sequence(4, depth=4, rings=4)
squares = {name: ids for name, ids in sys.labels.items() if name.startswith("square_")}
report(
    "P_a with epsilon=1/2^3",
    shadowlab.check_property(
        sys,
        "P_a",
        VariantParams(Dyadic(1, 3), epsilon=Dyadic(1, 3), candidate_family=(), extra_sets=squares),
    ),
)

# 7. PARAMETER SWEEP
print("\n\n7. PARAMETER SWEEP")
print("-" * 40)
sweep = shadowlab.sweep_verdicts(
    circle_stack(4, 8, 3),
    ["P_e", "tols", "delta_restricted_tols"],
    deltas=[Dyadic(1, 4), Dyadic(1, 3), "1/3"],
)
print(sweep[["check", "delta", "holds"]].to_string(index=False))
