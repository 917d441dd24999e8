"""Independent reference values.

Nothing here touches the continued-fraction kernel: half-integer ratios come
from their elementary closed forms evaluated in 50-digit mpmath arithmetic,
and roots come from plain bisection on those closed forms.
"""

import mpmath as mp

mp.mp.dps = 50


def half_integer_ratio(nu, x):
    """I_nu(x) / I_{nu-1}(x) for nu in {1/2, 3/2, 5/2, ...}.

    rho_{1/2} = tanh x, then the recurrence rho_{nu+1} = 1/rho_nu - 2 nu / x
    climbs the ladder (exact in 50-digit arithmetic for the orders used).
    """
    x = mp.mpf(x)
    r = mp.tanh(x)
    order = mp.mpf(1) / 2
    while order < nu:
        r = 1 / r - 2 * order / x
        order += 1
    return r


def bisect(f, lo, hi, tol=mp.mpf("1e-40")):
    lo, hi = mp.mpf(lo), mp.mpf(hi)
    flo = f(lo)
    assert flo * f(hi) < 0
    while hi - lo > tol * hi:
        mid = (lo + hi) / 2
        fm = f(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def langevin_root(rbar):
    """kappa with coth(kappa) - 1/kappa = rbar (the p = 3 equation)."""
    return bisect(lambda k: mp.coth(k) - 1 / k - mp.mpf(rbar), "1e-6", "1e6")


def bessel_ratio_mp(nu, x):
    """General-order reference via mpmath's own Bessel routine."""
    return mp.besseli(nu, x) / mp.besseli(mp.mpf(nu) - 1, x)


def turanian_mp(nu, x):
    nu, x = mp.mpf(nu), mp.mpf(x)
    return 1 - mp.besseli(nu - 1, x) * mp.besseli(nu + 1, x) / mp.besseli(nu, x) ** 2
