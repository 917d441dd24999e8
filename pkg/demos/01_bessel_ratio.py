"""Evaluating rho_nu(x) = I_nu(x) / I_{nu-1}(x) without Bessel functions.

Run with ``python3 demos/01_bessel_ratio.py``.
"""

import math

from vmfkappa import bessel_ratio as br

# %% Half-integer orders have elementary closed forms.  For nu = 1/2 the ratio
# is tanh(x); for nu = 3/2 it is the Langevin function coth(x) - 1/x.
for x in (0.1, 1.0, 10.0):
    print(f"x={x:5}: rho_1/2={br.ratio(0.5, x):.16f}  tanh={math.tanh(x):.16f}")
    print(f"         rho_3/2={br.ratio(1.5, x):.16f}  L(x)={1 / math.tanh(x) - 1 / x:.16f}")

# %% How many continued-fraction terms does the evaluation need?  The count
# grows roughly like sqrt(x) once x exceeds the order.
for x in (1e-2, 1.0, 1e2, 1e4):
    print(f"x={x:8.0e}  terms={br.cf_depth(2.0, x)}")

# %% Ties to the Bessel recurrence: 1/rho_nu - rho_{nu+1} equals 2 nu / x.
for nu, x in ((0.3, 2.0), (5.0, 40.0)):
    print(f"nu={nu}, x={x}: residual {br.recurrence_residual(nu, x):+.2e} vs 2nu/x = {2 * nu / x}")

# %% The normalized Turan-type expression T_nu(x) = 1 - rho_{nu+1}/rho_nu lies
# in (0, 1) and controls the derivative of the fixed-point map.
for nu in (0.5, 1.0, 5.0):
    t = [br.turanian_normalized(nu, x) for x in (0.1, 1.0, 10.0, 100.0)]
    print(f"nu={nu}: T at x=0.1,1,10,100 -> " + ", ".join(f"{v:.6f}" for v in t))

# %% Phi(x) = rbar * x / rho_nu(x) and its derivative stay below 1 for nu >= 1/2.
rbar = 0.9
for x in (0.5, 5.0, 50.0):
    ev = br.evaluate_phi(1.5, x, rbar)
    print(f"Phi({x}) = {ev.value:.6f}, Phi'({x}) = {ev.derivative:.6f}")
