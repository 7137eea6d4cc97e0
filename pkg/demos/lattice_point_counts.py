"""Count lattice points of multi-polytopes two independent ways.

The support numbers d_i place one wall per ray; the winding-number
density then counts each lattice point with multiplicity.  The
character-sum formula and the shifted brute-force enumeration must give
the same integer, also for faces of the polytope.
"""

from fractions import Fraction

from multifan import MultiPolytope, count_bruteforce, count_face, count_formula, dh_evaluate, volume
from multifan.catalog import cross_fan, projective_plane_fan, weighted_p112_fan

square = MultiPolytope(cross_fan(), [-1, 2, 3, 2])
print("skew rectangle, walls x <= -1, y <= 2, x >= -3, y >= -2")
print("  vertices:", sorted(square.vertices.values()))
print("  count (formula)    :", count_formula(square))
print("  count (brute force):", count_bruteforce(square))
print("  volume             :", volume(square))

for u in [(-2, 0), (Fraction(-3, 2), Fraction(1, 2)), (0, 0), (5, 5)]:
    print(f"  winding density at {u}: {dh_evaluate(square, u)}")

plane = MultiPolytope(projective_plane_fan(), [1, 1, 1])
print("\ntriangle from the projective plane fan, d = (1, 1, 1)")
print("  count:", count_formula(plane), "=", count_bruteforce(plane))
print("  volume:", volume(plane))
print("  edge counts:", [count_face(plane, (i,)) for i in range(3)])
print("  vertex counts:", [count_face(plane, J) for J in plane.fan.faces_of_card(2)])

# Pick's identity for the square with unit walls: area + boundary/2 + 1
unit = MultiPolytope(cross_fan(), [1, 1, 1, 1])
area = volume(unit)
boundary = sum(count_face(unit, (i,)) - 1 for i in range(4))
print("\nPick check on the unit square:", count_formula(unit), "=", area + Fraction(boundary, 2) + 1)

wp = MultiPolytope(weighted_p112_fan(), [1, 0, 0])
print("\nnon-Cartier corner slice of the weighted plane, d = (1, 0, 0)")
print("  integral support on every cone:", wp.support.is_T_Cartier(wp.fan))
print("  vertices:", sorted(wp.vertices.values()))
print("  count:", count_formula(wp), "=", count_bruteforce(wp))
