"""The permutohedron signature sequence equals the tanh Taylor coefficients.

sigma(permutohedron on n letters) = n! [x^n] tanh(x): zero in odd dimensions
(even n), and 0, -2, 0, 16, ... otherwise.  Both sides are computed
independently here: the left from the face lattice, the right from exact
series division sinh/cosh.
"""

from torsig.generators import permutohedron
from torsig.invariants import sigma, tanh_sigma

print(" n | d = n-1 | sigma from faces | n! [x^n] tanh")
print("---+---------+------------------+--------------")
for n in range(2, 7):
    p = permutohedron(n)
    lattice = sigma(p.f_vector())
    series = tanh_sigma(n)
    marker = "" if lattice == series else "  <- MISMATCH"
    print(f"{n:2d} | {n - 1:7d} | {lattice:16d} | {series:12d}{marker}")
print("(n = 7 works too, ~40s: sigma = -272)")
