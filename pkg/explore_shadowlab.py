#!/usr/bin/env python3
"""Explore shadowlab package structure and available functions"""

import inspect

import shadowlab

print("=== Exploring shadowlab package ===")
print(f"Package version: {shadowlab.__version__}")
print(f"Package location: {shadowlab.__file__}")
print()

print("Public API:")
for name in shadowlab.__all__:
    obj = getattr(shadowlab, name)
    if callable(obj):
        try:
            print(f"  {name}{inspect.signature(obj)}")
        except (TypeError, ValueError):
            print(f"  {name}()")
    else:
        print(f"  {name}: {type(obj).__name__}")
print()

print("Example systems:")
from shadowlab.builders import BUILDERS

for kind in sorted(BUILDERS):
    sys = shadowlab.build_system(kind)
    print(f"  {kind}: {len(sys)} points, {len(sys.cycle_orders)} cycles, labels {len(sys.labels)}")
