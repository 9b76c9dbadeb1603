"""Independent reference values for the unit tests.

Uses sympy for exact metric algebra, mpmath for roots and quadrature, and scipy's DOP853
for the radial ODE (integrated in r, not r*). Run: python3 kerr_oracle.py > values.json
"""
import json

import mpmath as mp
import numpy as np
import sympy as sp
from scipy.integrate import solve_ivp

mp.mp.dps = 30
M = 1


def horizons(a):
    s = mp.sqrt(M * M - a * a)
    rp = M + s
    return rp, M - s, a / (2 * M * rp)


def ef_metric(a, r, th):
    q2 = r**2 + a**2 * sp.cos(th) ** 2
    s2 = sp.sin(th) ** 2
    D = r**2 - 2 * M * r + a**2
    g = sp.zeros(4, 4)
    g[0, 0] = -(1 - 2 * M * r / q2)
    g[0, 1] = g[1, 0] = 1
    g[0, 3] = g[3, 0] = -2 * a * M * r * s2 / q2
    g[1, 3] = g[3, 1] = -a * s2
    g[2, 2] = q2
    g[3, 3] = ((r**2 + a**2) ** 2 - a**2 * s2 * D) * s2 / q2
    return g


def bl_metric(a, r, th):
    q2 = r**2 + a**2 * sp.cos(th) ** 2
    s2 = sp.sin(th) ** 2
    D = r**2 - 2 * M * r + a**2
    g = sp.zeros(4, 4)
    g[0, 0] = -(1 - 2 * M * r / q2)
    g[0, 3] = g[3, 0] = -2 * a * M * r * s2 / q2
    g[1, 1] = q2 / D
    g[2, 2] = q2
    g[3, 3] = ((r**2 + a**2) ** 2 - a**2 * s2 * D) * s2 / q2
    return g


def normalized_inverse(a, r, th, tp, pp):
    J = sp.eye(4)
    J[0, 1] = tp
    J[3, 1] = pp
    g = J.T * ef_metric(a, r, th) * J
    return g.inv()


def potential(a, r, xt, xp, lam):
    D = r * r - 2 * M * r + a * a
    return (D * lam**2 - 4 * a * M * r * xt * xp - a * a * xp * xp) / (r * r + a * a) ** 2


def r_max(a, xi):
    xt, xp, lam = xi
    dV = lambda r: mp.diff(lambda s: potential(a, s, xt, xp, lam), r)
    rp = horizons(a)[0]
    grid = [rp + 0.01 + 0.05 * k for k in range(400)]
    for lo, hi in zip(grid, grid[1:]):
        if dV(lo) > 0 and dV(hi) < 0:
            r = mp.findroot(dV, (lo, hi), solver="anderson")
            return r, potential(a, r, xt, xp, lam)
    return None


def tortoise(a, r):
    rp, rm, _ = horizons(a)
    # r* normalized at 3m; integrate (r²+a²)/Δ
    f = lambda s: (s * s + a * a) / (s * s - 2 * M * s + a * a)
    return mp.quad(f, [3 * M, r])


def scattering(a, m_az, lam2, omega):
    rp, rm, wH = horizons(float(a))
    rp, rm, wH = float(rp), float(rm), float(wH)
    k = omega + m_az * wH

    def Vc(r):
        L = r * r + a * a
        return ((r * r - 2 * r + a * a) * lam2 - a * a * m_az * m_az) / L**2

    def W(r):
        L = r * r + a * a
        return 4 * a * r * m_az / L**2

    # independent variable s = ln(r - r₊): dr/dr* = μ and μ/x is regular at the horizon
    def rhs(s, y):
        x = np.exp(s)
        r = rp + x
        v = y[0] + 1j * y[1]
        w = y[2] + 1j * y[3]
        x_over_mu = (r * r + a * a) / (x + rp - rm)
        dv = w * x_over_mu
        dw = -(omega**2 - Vc(r) + omega * W(r)) * v * x_over_mu
        return [dv.real, dv.imag, dw.real, dw.imag]

    x0 = 1e-9
    v0 = 1.0 + 0j  # phase is irrelevant for |R|, |T|
    w0 = -1j * k * v0
    r_end = 3000.0
    sol = solve_ivp(rhs, [np.log(x0), np.log(r_end - rp)], [v0.real, v0.imag, w0.real, w0.imag],
                    method="DOP853", rtol=1e-12, atol=1e-14)
    v = sol.y[0, -1] + 1j * sol.y[1, -1]
    w = sol.y[2, -1] + 1j * sol.y[3, -1]
    q = np.sqrt(omega**2 - Vc(r_end) + omega * W(r_end))
    # v = A_out e^{iqr*} + A_in e^{-iqr*} locally
    a_out = 0.5 * (v + w / (1j * q))
    a_in = 0.5 * (v - w / (1j * q))
    inc, ref = (a_in, a_out) if omega > 0 else (a_out, a_in)
    # |a|²q is the conserved WKB flux; carry the incident amplitude out to q = |ω|
    inc, ref = (z * np.sqrt(q / abs(omega)) for z in (inc, ref))
    R2 = abs(ref) ** 2 / abs(inc) ** 2
    # unit amplitude at the horizon, so |T|² = 1/|incident|²
    T2 = 1.0 / abs(inc) ** 2
    return R2, T2, omega * (1 - R2) - k * T2


def main():
    out = {}
    rp, rm, wH = horizons(mp.mpf("0.9"))
    out["horizons_a09"] = [float(rp), float(rm), float(wH)]

    a, r, th = sp.Rational(9, 10), sp.Rational(37, 10), sp.Rational(11, 10)
    gi = bl_metric(a, r, th).inv()
    out["bl_inverse_a09_r37_th11"] = [float(gi[0, 0]), float(gi[0, 3]), float(gi[3, 3]), float(gi[1, 1])]

    a, r, th = sp.Rational(9, 10), sp.Rational(5, 2), sp.Rational(7, 10)
    gi = normalized_inverse(a, r, th, sp.Rational(13, 10), sp.Rational(2, 5))
    out["normalized_inverse_a09_r25_th07_tp13_pp04"] = [
        [float(gi[i, j]) for j in range(4)] for i in range(4)]

    xi = (mp.mpf("0.3"), mp.mpf("-0.5"), mp.mpf("1.2"))
    a = mp.mpf("0.9")
    out["V_a09_r42"] = float(potential(a, mp.mpf("4.2"), *xi))
    out["dV_a09_r42"] = float(mp.diff(lambda s: potential(a, s, *xi), mp.mpf("4.2")))

    rmax = {}
    for spin in ["0.5", "0.9"]:
        for xi in [("0", "0", "1"), ("0.3", "0.5", "1"), ("-0.2", "0.7", "1"), ("0.6", "-0.4", "0.8")]:
            res = r_max(mp.mpf(spin), tuple(mp.mpf(x) for x in xi))
            rmax[f"a={spin} xi={','.join(xi)}"] = None if res is None else [float(res[0]), float(res[1])]
    out["r_max"] = rmax

    out["tortoise_a09"] = {str(r): float(tortoise(mp.mpf("0.9"), mp.mpf(r))) for r in ["1.5", "2", "5", "12"]}
    out["tortoise_a0_r4_minus_r3"] = float(tortoise(mp.mpf(0), mp.mpf(4)))

    out["scatter_a0_L2_w05"] = scattering(0.0, 0, 2.0, 0.5)
    out["scatter_a09_m1_L2_w-015"] = scattering(0.9, 1, 2.0, -0.15)
    out["scatter_a09_m1_L2_w04"] = scattering(0.9, 1, 2.0, 0.4)
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
