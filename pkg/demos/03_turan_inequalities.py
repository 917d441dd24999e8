"""Sweeping Turan-type bounds on the normalized expression T_nu(x).

Run with ``python3 demos/03_turan_inequalities.py``.
"""

from vmfkappa import inequality_lab as il

grid = il.SweepGrid.default()
print(f"default grid: {len(grid.nu_values)} orders x {len(grid.x_values)} arguments")

# %% Lower bound and positivity hold everywhere on the grid.
for iid in ("turan_left_positive", "segura_lower"):
    print(il.sweep(iid, grid).summary())

# %% The bound 1/(nu + x) is false: T_nu(x) x tends to 1, while x/(nu + x) < 1.
rep = il.sweep("eq2_right", grid)
first = min(r.x for r in rep.counterexamples if r.nu == 1.0)
print(f"1/(nu + x) fails at {len(rep.counterexamples)} grid points; for nu=1 first at x={first:.4f}")

# %% The 1/x bound holds for nu >= 1/2.  At nu = 1/2 the true margin decays like
# exp(-2x), so past x ~ 20 double precision cannot separate the two sides.
upper = grid.restrict(nu_min=0.5)
for iid in ("eq4", "baricz_upper"):
    rep = il.sweep(iid, upper, workers=4)
    orders = sorted({r.nu for r in rep.counterexamples})
    print(f"{iid}: {len(rep.counterexamples)} ties at orders {orders}; min margin {rep.summary()['min_margin']:.1e}")

# %% x T_nu(x) approaches 1 from below, so no contraction constant below 1 works uniformly.
for x in (1e3, 1e4, 1e5):
    print(f"nu=1, x={x:.0e}: x*T = {il.asymptote_check(1.0, x)!r}")

# %% rho_nu(x) rises to 1 for nu >= 1/2, but overshoots and comes back for nu < 1/2.
for nu in (0.1, 0.3, 1.5, 5.0):
    prof = il.monotonicity_profile(nu)
    print(f"nu={nu}: {prof.shape}, peak {prof.max_value:.6f}"
          + (f" at x={prof.argmax:.4f}" if prof.argmax else "") + f", tail {prof.tail_side} 1")
