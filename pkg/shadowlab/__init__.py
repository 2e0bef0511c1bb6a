"""
shadowlab - limit sets and shadowing of finite-resolution dynamical systems

This package builds exact, finite truncations of compact dynamical systems
and decides shadowing-type properties on them, including:
- Exact dyadic arithmetic and Hausdorff distances
- δ-chain graphs, chain components and internally chain transitive sets
- Coded orbits, limit sets and pseudo-orbit construction
- Limit, cofinal and classical shadowing checks with witnesses
"""

# Version handling - supports both setuptools_scm and static versioning
try:
    from ._version import version as __version__
except ImportError:
    __version__ = "0.1.0"

from .dyadic import Dyadic, as_exact, format_scalar, parse_scalar
from .metric import SpaceDescriptor, Point, distance, hausdorff, family_gap
from .systems import FiniteSystem, image, preimages, load_system, save_system, load_sets
from .builders import TruncationParams, build_system
from .chain_graph import (
    ChainGraph,
    build_chain_graph,
    chain_components,
    cycles_of_map,
    enumerate_ict,
    is_ict,
    morse_order,
)
from .trajectories import (
    CodedOrbit,
    alpha_family,
    bridge_pseudo_orbit,
    forward_orbit,
    full_trajectory_with,
    gamma_limit,
    omega_limit,
    weave_pseudo_orbit,
)
from .shadow_check import (
    Verdict,
    VariantParams,
    Witness,
    check_cofinal_variant,
    check_limit_variant,
    check_property,
    check_shadowing,
    cross_check,
    exhaustive_shadowing_oracle,
    run_check,
)
from .batch import convergence_table, cross_check_table, sweep_verdicts
from .render import render

__all__ = [
    # Exact arithmetic and metrics
    "Dyadic",
    "as_exact",
    "format_scalar",
    "parse_scalar",
    "SpaceDescriptor",
    "Point",
    "distance",
    "hausdorff",
    "family_gap",
    # Systems
    "FiniteSystem",
    "image",
    "preimages",
    "load_system",
    "save_system",
    "load_sets",
    "TruncationParams",
    "build_system",
    # Chain graphs
    "ChainGraph",
    "build_chain_graph",
    "chain_components",
    "cycles_of_map",
    "enumerate_ict",
    "is_ict",
    "morse_order",
    # Trajectories
    "CodedOrbit",
    "alpha_family",
    "bridge_pseudo_orbit",
    "forward_orbit",
    "full_trajectory_with",
    "gamma_limit",
    "omega_limit",
    "weave_pseudo_orbit",
    # Shadowing checks
    "Verdict",
    "VariantParams",
    "Witness",
    "check_cofinal_variant",
    "check_limit_variant",
    "check_property",
    "check_shadowing",
    "cross_check",
    "exhaustive_shadowing_oracle",
    "run_check",
    # Batch operations
    "convergence_table",
    "cross_check_table",
    "sweep_verdicts",
    # Drawing
    "render",
]
