"""Sharp constants for the plain (unweighted) inequality.

For rho = 1 the sharp eigenvalue has the closed form (2k)!(2k+1)!/(k!)^2 and
the extremizer is a rescaled bridge polynomial x^k (1-x)^k.  The pipeline
reproduces both exactly, in rational arithmetic, for every order.
"""

from math import sqrt

from sobolev1d import ProblemSpec, parse_weight, solve

rho = parse_weight("poly:1")

print(f"{'k':>2} {'mu (exact)':>16} {'Lambda':>14}  extremizer")
for k in range(1, 7):
    s = solve(ProblemSpec(k, rho))
    # the minimizer is a single polynomial piece; show its leading factor
    lead = s.u.pieces[0].coeffs[k]
    print(f"{k:>2} {str(s.mu):>16} {s.lam:>14.10f}  {lead} * x^{k} (1-x)^{k} + ...")

# sanity: mu is exactly the closed form and Lambda = mu^(-1/2)
s = solve(ProblemSpec(3, rho))
assert s.mu == 100800
assert abs(s.lam - 1 / sqrt(100800)) < 1e-15

# the same solve in float mode agrees to machine precision
from sobolev1d import FLOAT  # noqa: E402

sf = solve(ProblemSpec(3, rho, FLOAT))
print(f"\nfloat-mode cross-check, k=3: {sf.mu:.6f} vs exact {float(s.mu):.6f}")
