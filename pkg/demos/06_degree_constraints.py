"""The linear constraint system behind the degree-shift family.

A shift expressed as C1 k1 + ... + C9 k9 over the nine surface counts is
compatible with interval gluing iff ten per-case equations hold.  The exact
solver reproduces the one-parameter-plus-free-coefficients family, and every
member expands back to the four-parameter shift formula.
"""

from fractions import Fraction

from opencob.grading import (REQUIREMENTS, ConstraintCoeffs, ShiftParams,
                             constraint_residuals, delta_coeffs,
                             solve_constraints)

print("the ten gluing-compatibility equations (LHS coefficients on C1..C9):")
for lhs, rhs, label in REQUIREMENTS:
    terms = " ".join(f"{c:+d}*C{i+1}" for i, c in enumerate(lhs) if c)
    print(f"   {terms} = {rhs}   [{label}]")
print()

sol = solve_constraints()
names = {0: "C1", 1: "C2", 3: "C4", 5: "C6", 7: "C8"}
print("solved family (free: C3, C5, C7, C9):")
for idx, name in names.items():
    const, lin = sol.exprs[idx]
    rhs = " + ".join([str(const)] if const or not lin else []
                     + [f"{c}*C{j+1}" for j, c in lin.items()])
    print(f"   {name} = {rhs}")
print()

print("the tensor-preset shift (A1,A2,A3,A4) = (1,0,0,0) in C-coordinates:")
coeffs = delta_coeffs(ShiftParams(1, 0, 0, 0))
print("   C =", tuple(str(c) for c in coeffs.c))
print("   residuals:", [str(r) for r in constraint_residuals(coeffs)])
print()

perturbed = list(coeffs.c)
perturbed[5] += Fraction(1)
print("perturbing C6 by 1 leaves the family:")
print("   residuals:", [str(r) for r in
                        constraint_residuals(ConstraintCoeffs(tuple(perturbed)))])
