"""State spaces of sutured surfaces and their graded superdimensions.

Builds a few standard surfaces, prints their combinatorial counts, the rank
of H_1(F, S+), degree shifts under the two distinguished presets, and the
graded superdimension as an integer Laurent polynomial.
"""

from opencob import (PRESET_HALF, PRESET_TENSOR, build, counts,
                     graded_superdim, open_pants, rank_h,
                     reference_dimension_fgp, surface_fgp)
from opencob.grading import half_parity_defined


def show(name, surf):
    print(f"== {name}")
    print(f"   counts (k1..k9): {counts(surf).as_tuple()}")
    print(f"   h = rank H_1(F, S+) = {rank_h(surf)}")
    space = build(surf, PRESET_TENSOR)
    print(f"   tensor preset: delta = {space.delta}, "
          f"superdim = {graded_superdim(space)}")
    if half_parity_defined(surf):
        space = build(surf, PRESET_HALF)
        print(f"   half preset:   delta = {space.delta}, "
              f"superdim = {graded_superdim(space)}")
    else:
        print("   half preset:   parity undefined on this surface")
    print()


for p in range(4):
    show(f"open {p}-tuple of pants", open_pants(p))

for g in range(3):
    show(f"F_(g={g}, p=2)", surface_fgp(g, 2))

print("comparison with the closed-form dimension polynomial:")
for g in range(4):
    for p in range(1, 5):
        space = build(surface_fgp(g, p), PRESET_HALF)
        got = graded_superdim(space)
        want = reference_dimension_fgp(g, p)
        status = "ok" if got == want else "MISMATCH"
        print(f"  (g={g}, p={p}): {got}  [{status}]")
