"""Dilation counting polynomials, exactly.

For integral multi-polytopes the lattice count of the nu-fold dilation
is a polynomial in nu; its coefficients come out of the equivariant
Todd series with no rounding.  Non-integral vertices break polynomiality
and the count is only dilation-periodic.
"""

from multifan import MultiPolytope, NotTCartier, count_bruteforce, ehrhart_coefficients
from multifan.catalog import cross_fan, projective_plane_fan, weighted_p112_fan

for name, fan in [
    ("square", cross_fan()),
    ("triangle", projective_plane_fan()),
    ("weighted triangle", weighted_p112_fan()),
]:
    xi = [1] * fan.n_rays
    a = ehrhart_coefficients(fan, xi)
    print(f"{name}: a = {a}")
    n = fan.rank
    for nu in range(1, 6):
        predicted = sum(a[k] * nu ** (n - k) for k in range(n + 1))
        counted = count_bruteforce(MultiPolytope(fan, [nu] * fan.n_rays))
        marker = "ok" if predicted == counted else "MISMATCH"
        print(f"  nu={nu}: polynomial {predicted}, counted {counted} [{marker}]")

print("\ncorner slice of the weighted plane, d = (1, 0, 0)")
try:
    ehrhart_coefficients(weighted_p112_fan(), [1, 0, 0])
except NotTCartier as exc:
    print(f"  no polynomial: {exc}")
counts = [
    count_bruteforce(MultiPolytope(weighted_p112_fan(), [nu, 0, 0]))
    for nu in range(1, 7)
]
print("  per-dilation counts:", counts)
print("  second differences:", [counts[i + 2] - 2 * counts[i + 1] + counts[i] for i in range(4)])
