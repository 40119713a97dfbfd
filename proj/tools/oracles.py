"""Independent reference values for the test suite.

Nothing here shares code or discretization with the C++ library:

* spectra use the Colbert-Miller sinc DVR (exponentially convergent for
  smooth potentials) with dense diagonalization;
* second derivatives use the sum-over-states formula on the DVR basis;
* Theta_0 uses parabolic cylinder functions in mpmath;
* the k = 2 trial energy is a direct quadrature of the Rayleigh quotient.

Run: python3 tools/oracles.py
"""

import mpmath as mp
import numpy as np
from scipy import integrate, linalg, optimize


def sinc_dvr(potential, L, n):
    t = np.linspace(-L, L, n)
    h = t[1] - t[0]
    i = np.arange(n)
    d = i[:, None] - i[None, :]
    with np.errstate(divide="ignore"):
        kin = np.where(d == 0, np.pi**2 / 3.0, 2.0 * (-1.0) ** d / np.where(d == 0, 1, d) ** 2)
    H = kin / h**2 + np.diag(potential(t))
    w, v = linalg.eigh(H)
    return t, w, v


def montgomery(k, alpha):
    return lambda t: (t ** (k + 1) / (k + 1) - alpha) ** 2


def box(k, alpha):
    # Where V reaches 1e6. Dense eigh loses about eps * max V absolutely, so a
    # larger box (V ~ 1e13 at k = 20 with one extra unit) ruins the low end.
    return ((k + 1) * (abs(alpha) + 1000.0)) ** (1.0 / (k + 1))


def spectrum(k, alpha, n=1201):
    _, w, _ = sinc_dvr(montgomery(k, alpha), box(k, alpha), n)
    return w[:3]


def second_derivative(k, alpha, n=1201):
    t, w, v = sinc_dvr(montgomery(k, alpha), box(k, alpha), n)
    W = t ** (k + 1) / (k + 1) - alpha
    c = v.T @ (W * v[:, 0])
    return 2.0 - 8.0 * np.sum(c[1:] ** 2 / (w[1:] - w[0]))


def fh_derivative(k, alpha, n=1201):
    t, _, v = sinc_dvr(montgomery(k, alpha), box(k, alpha), n)
    W = t ** (k + 1) / (k + 1) - alpha
    return -2.0 * np.sum(W * v[:, 0] ** 2)


def trial_k2():
    def energy(rho):
        u = lambda t: np.cos(np.pi * t / (2 * rho)) ** 2
        du = lambda t: -np.pi / rho * np.cos(np.pi * t / (2 * rho)) * np.sin(np.pi * t / (2 * rho))
        num = integrate.quad(lambda t: du(t) ** 2 + (t**3 / 3) ** 2 * u(t) ** 2, -rho, rho, epsabs=0, epsrel=1e-13)[0]
        den = integrate.quad(lambda t: u(t) ** 2, -rho, rho, epsabs=0, epsrel=1e-13)[0]
        return num / den

    res = optimize.minimize_scalar(energy, bracket=(2.0, 2.5, 3.0), tol=1e-12)
    return res.x, res.fun


def theta0():
    mp.mp.dps = 30

    def lam(xi):
        # D_nu(sqrt2 (t - xi)) decays; Neumann at 0 is D_nu'(-sqrt2 xi) = 0.
        f = lambda nu: mp.diff(lambda z: mp.pcfd(nu, z), -mp.sqrt(2) * xi)
        nu = mp.findroot(f, 0.0)
        return 2 * nu + 1

    xi = mp.findroot(lambda x: mp.diff(lam, x), 0.77)
    return lam(xi), xi


def dirichlet_well(T, k):
    wall = T**k
    f = lambda s: np.sqrt(wall - s * s) * np.sin(s * T) + s * np.cos(s * T)
    s = optimize.brentq(f, np.pi / (2 * T), np.pi / T, xtol=1e-15, rtol=1e-15)
    return s * s


def h_numeric(a):
    mp.mp.dps = 40
    a = mp.mpf(a)
    g = lambda s: (1 - s * s) ** (a / (a + 2)) * s ** (2 / (a + 2)) * (a / 2) ** (4 / (a + 2))
    s = mp.findroot(lambda s: mp.diff(g, s), 1 / mp.sqrt(a + 1))
    return g(s), s


if __name__ == "__main__":
    print("harmonic", sinc_dvr(lambda t: t * t, 10.0, 401)[1][:3])
    for k, a in [(2, 0.0), (2, 0.5), (2, 1.0), (2, -1.0), (4, 0.0), (4, 1.0), (6, 0.0), (10, 0.0), (20, 0.0),
                 (3, 0.0), (3, 0.5)]:
        print(f"spectrum k={k} alpha={a}:", " ".join(f"{x:.12f}" for x in spectrum(k, a)))
    for k in [2, 4, 6]:
        print(f"d2 k={k}: {second_derivative(k, 0.0):.10f}  fh(0)={fh_derivative(k, 0.0):.2e}")
    print(f"d2 k=2 alpha=0.5: {second_derivative(2, 0.5):.10f} fh={fh_derivative(2, 0.5):.10f}")
    print(f"half model k=4:", " ".join(f"{x:.12f}" for x in sinc_dvr(lambda t: t**4 / 4, 6.0, 1201)[1][:2]))
    rho, e = trial_k2()
    print(f"trial k=2: rho={rho:.10f} energy={e:.12f}")
    th, xi = theta0()
    print(f"theta0={mp.nstr(th, 15)} xi={mp.nstr(xi, 15)}")
    print(f"dirichlet well T=1.1 k=70: {dirichlet_well(1.1, 70):.12f}")
    for a in [2, 4, 10, 70, 200]:
        v, s = h_numeric(a)
        print(f"h({a}) = {mp.nstr(v, 17)} sigma = {mp.nstr(s, 17)}")
