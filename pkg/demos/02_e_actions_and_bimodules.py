"""The odd degree -1 actions attached to S+ intervals.

Shows the action matrices on a small state space, checks the sign relations
(squares vanish, same-side generators anticommute, opposite sides commute),
and prints the bimodule a cobordism defines.
"""

from opencob import PRESET_TENSOR, bimodule_of, build, open_pants
from opencob.statespace import action_matrix

surf = open_pants(2)
space = build(surf, PRESET_TENSOR)
print("surface: open 2-tuple of pants")
print("basis:", ", ".join(space.basis.labels()))
print("monomial degrees:", [str(d) for d in space.degrees])
print()

for sid in ("out", "in1", "in2"):
    side = "left (outgoing)" if sid in surf.outgoing else "right (incoming)"
    mat = action_matrix(space, sid)
    print(f"E_{sid} acts from the {side}:")
    for j in sorted(mat.cols):
        src = space.monomial_label(space.monomials[j])
        for i, v in sorted(mat.col(j).items()):
            dst = space.monomial_label(space.monomials[i])
            print(f"   {src} -> {v:+d} * {dst}")
    print()

e_out = action_matrix(space, "out")
e_in1 = action_matrix(space, "in1")
e_in2 = action_matrix(space, "in2")
print("E_out^2 = 0:", (e_out @ e_out).is_zero())
print("E_in1 E_in2 + E_in2 E_in1 = 0:",
      (e_in1 @ e_in2 + e_in2 @ e_in1).is_zero())
print("E_out E_in1 = E_in1 E_out:", e_out @ e_in1 == e_in1 @ e_out)
print()

bim = bimodule_of(space)   # validates every relation on construction
print("bimodule:", bim)
print("graded ranks:", {f"deg {k[0]}, par {k[1]}": v
                        for k, v in sorted(bim.block_dims().items())})
