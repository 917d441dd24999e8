"""Solving I_nu(k)/I_{nu-1}(k) = rbar for the concentration k.

Run with ``python3 demos/02_kappa_solver.py``.
"""

from vmfkappa.kappa_solver import (
    EstimationProblem, SolverOptions, cross_validate, solve_bracket, solve_fixed_point,
)

# %% The classic three-dimensional case: rbar = 0.5 on the sphere S^2.
prob = EstimationProblem(0.5, p=3)
res = solve_fixed_point(prob)
print(f"fixed point: kappa={res.kappa_hat!r} after {res.iterations} steps, residual {res.residual:.1e}")
print("first iterates:", [round(v, 6) for v in res.trace[:6]])

# %% A bracketing solver reaches the same root with far fewer evaluations.
alt = solve_bracket(prob)
print(f"bracket:     kappa={alt.kappa_hat!r} after {alt.iterations} steps")
print(f"relative gap between the two: {cross_validate(prob):.1e}")

# %% Near rbar = 1 the contraction constant approaches 1 and the iteration slows.
for rbar in (0.5, 0.9, 0.99, 0.999):
    r = solve_fixed_point(EstimationProblem(rbar, nu=1.0), SolverOptions(max_iter=50_000))
    print(f"rbar={rbar:<6} kappa={r.kappa_hat:12.6f}  iterations={r.iterations}")

# %% Orders below 1/2 are outside the contraction result.  The bracketing
# solver still finds the unique root there.
r = solve_bracket(EstimationProblem(0.9, nu=0.3))
print(f"nu=0.3, rbar=0.9 -> kappa={r.kappa_hat!r}")
try:
    solve_fixed_point(EstimationProblem(0.9, nu=0.3))
except ValueError as exc:
    print("fixed point refused:", exc)
