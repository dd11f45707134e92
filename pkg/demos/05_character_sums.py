"""The character-sum toolbox: closed forms, bounds, and the constants.

Every closed form ships next to a brute-force oracle; the demo spot-checks
a few pairs and reproduces the subset-sum bound constants that power the
large-q uniformity arguments.

Run:  python3 demos/05_character_sums.py
"""

from nhsbox import build_field
from nhsbox.characters import (
    boomerang_constants,
    conic_count_brute,
    conic_count_closed,
    cubic_reciprocal_check,
    jacobsthal_sum,
    theorem2_constants,
    theorem6_constants,
    weil_bound_check,
    weil_sum_brute,
    weil_sum_quadratic_closed,
)

f = build_field(31)

# Quadratic Weil sums have an exact closed form.
for coeffs in ((3, 0, 1), (7, 5, 2), (0, 0, 4)):
    a0, a1, a2 = coeffs
    closed = weil_sum_quadratic_closed(f, a2, a1, a0)
    brute = weil_sum_brute(f, [a0, a1, a2])
    print(f"sum eta({a2}x^2+{a1}x+{a0}) = {brute} (closed form {closed})")

# Conics a1 x1^2 + a2 x2^2 = b: q + nu(b) eta(-a1 a2) points.
print("\nconic x^2 + 3y^2 = b point counts, closed vs direct:")
direct = conic_count_brute(f, 1, 3)
for b in (0, 1, 2):
    print(f"  b = {b}: {conic_count_closed(f, 1, 3, b)} / {int(direct[b])}")

# Jacobsthal sums with even index vanish when q = 3 (mod 4).
print("\nH_2(a) over F_31:", [jacobsthal_sum(f, 2, a) for a in range(1, 6)])

# The reciprocal-coefficient cubic identity.
lhs, rhs = cubic_reciprocal_check(f, 2, 9, 4, 11)
print("cubic reciprocal identity:", lhs, "==", rhs)

# Squarefree polynomials obey |sum eta(f(x))| <= (deg f - 1) sqrt(q).
res = weil_bound_check(f, [1, 0, 3, 0, 1])
print(f"\nquartic sum {res.sum}, bound {res.bound:.2f}, within: {res.ok}")

# The subset-sum lower-bound engines behind the large-q arguments.
print("\ndelta=5 witness-bound constants:", theorem2_constants())
print("delta=4 (u=1/3) analog:        ", theorem6_constants())
print("boomerang analog:              ", boomerang_constants())
