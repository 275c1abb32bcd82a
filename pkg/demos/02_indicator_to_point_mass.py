"""A family of plateau weights shrinking onto a point.

The normalized indicator chi_[a-eps, a+eps]/(2 eps) keeps unit mass while
concentrating at a.  Its sharp eigenvalue, exact at every step, approaches
the point-mass value 1/(a(1-a)) at first order in eps -- here a = 1/2 and
the limit is 4.
"""

from fractions import Fraction as F

from sobolev1d import DiracWeight, IndicatorWeight, ProblemSpec, solve

a = F(1, 2)
target = solve(ProblemSpec(1, DiracWeight(a))).mu
print(f"point-mass value at a = {a}: mu = {target}\n")

print(f"{'eps':>10} {'mu (exact)':>14} {'mu - 4':>12} {'ratio':>8}")
prev = None
for j in range(2, 11):
    eps = F(1, 2**j)
    mu = solve(ProblemSpec(1, IndicatorWeight(a - eps, a + eps))).mu
    err = float(mu - target)
    ratio = f"{prev / err:8.3f}" if prev else "      --"
    print(f"{str(eps):>10} {str(mu):>14} {err:12.3e} {ratio}")
    prev = err

print("\nthe error halves with eps: first-order convergence, ratio -> 2")
