"""Regenerate tests/oracle_values.py with mpmath at 40 significant digits.

Everything here is computed from the defining products and sums over fixed
boxes, independently of the qpsi code paths. Run from the repo root:

    python tools/derive_oracles.py > tests/oracle_values.py
"""

import mpmath as mp

mp.mp.dps = 40
TINY = mp.mpf(10) ** -(mp.mp.dps + 5)


def poch(u, q):
    u, q = mp.mpc(u), mp.mpf(q)
    prod, t = mp.mpc(1), u
    while abs(t) > TINY or abs(t) > 1:
        prod *= 1 - t
        t *= q
    return prod


def poch_fin(u, q, nu):
    u, q = mp.mpc(u), mp.mpf(q)
    if nu >= 0:
        return mp.fprod(1 - u * q ** k for k in range(nu))
    return 1 / mp.fprod(1 - u * q ** -k for k in range(1, -nu + 1))


def theta(z, q):
    return poch(z, q) * poch(mp.mpf(q) / z, q) * poch(q, q)


def power(xi, nu, e, q):
    """Principal branch of ``(xi q^nu)^e``."""
    return mp.exp(e * (mp.log(mp.mpc(xi)) + nu * mp.log(q)))


def rpsir_box(a, b, x, q, lo=-200, hi=200):
    total = mp.mpc(0)
    for nu in range(lo, hi + 1):
        t = mp.mpc(x) ** nu
        for ai, bi in zip(a, b):
            t *= poch_fin(ai, q, nu) / poch_fin(bi, q, nu)
        total += t
    return total


def vwp6_box(a, b, c, d, e, q, lo=-200, hi=200):
    q = mp.mpf(q)
    total = mp.mpc(0)
    z = q * mp.mpf(a) ** 2 / (b * c * d * e)
    for nu in range(lo, hi + 1):
        t = (1 - a * q ** (2 * nu)) / (1 - a) * z ** nu
        for v in (b, c, d, e):
            t *= poch_fin(v, q, nu) / poch_fin(a * q / v, q, nu)
        total += t
    return total


def askey_box(alpha, beta, xi, q, lo=-400, hi=400):
    q = mp.mpf(q)
    qb = q ** beta
    total = mp.mpc(0)
    for nu in range(lo, hi + 1):
        z = xi * q ** nu
        total += power(xi, nu, alpha, q) * poch(q * z, q) / poch(qb * z, q)
    return (1 - q) * total


def bc1_box(a, xi, q, lo=-300, hi=300):
    q = mp.mpf(q)
    expo = 2 - sum(mp.log(ai) / mp.log(q) for ai in a)
    total = mp.mpc(0)
    for nu in range(lo, hi + 1):
        z = xi * q ** nu
        t = power(xi, nu, expo, q) * (1 / z - z)
        for ai in a:
            t *= poch(q * z / ai, q) / poch(ai * z, q)
        total += t
    return (1 - q) * total


def h_pair(w, tau, q):
    q = mp.mpf(q)
    return (1 - w) * poch(q ** (1 - tau) * w, q) / poch(q ** tau * w, q)


def atype_axis(xi, nu, expo, a, b, q):
    q = mp.mpf(q)
    z = xi * q ** nu
    t = power(xi, nu, expo, q)
    for aj in a:
        t *= poch(q * z / aj, q)
    for bj in b:
        t /= poch(bj * z, q)
    return t


def atype_summand_direct(n, alpha, tau, a, b, z, q):
    """Factor-by-factor weight at a single point ``z`` (principal powers of ``z``)."""
    q = mp.mpf(q)
    t = mp.mpc(1)
    for k in range(n):
        t *= mp.mpc(z[k]) ** (alpha + 2 * tau * (n - 1 - k))
        for aj in a:
            t *= poch(q * z[k] / aj, q)
        for bj in b:
            t /= poch(bj * z[k], q)
    for k in range(n):
        for l in range(k + 1, n):
            t *= h_pair(mp.mpc(z[l]) / z[k], tau, q)
    return t


def atype_box2(alpha, tau, a, b, xi, q, R=80):
    """n = 2 box sum over ``[-R, R]^2`` from per-axis and per-difference tables."""
    q = mp.mpf(q)
    rng = range(-R, R + 1)
    ax = [{nu: atype_axis(xi[k], nu, alpha + 2 * tau * (1 - k), a, b, q) for nu in rng} for k in range(2)]
    w0 = mp.mpc(xi[1]) / xi[0]
    pair = {d: h_pair(w0 * q ** d, tau, q) for d in range(-2 * R, 2 * R + 1)}
    total = mp.mpc(0)
    for n0 in rng:
        for n1 in rng:
            total += ax[0][n0] * ax[1][n1] * pair[n1 - n0]
    return (1 - q) ** 2 * total


def bctype_box2(s, a, tau, xi, q, R=80):
    q = mp.mpf(q)
    alphas = [mp.log(ai) / mp.log(q) for ai in a]
    rng = range(-R, R + 1)
    ax = []
    for j in range(2):
        expo = s - sum(alphas) - 2 * tau * (2 - (j + 1))
        tab = {}
        for nu in rng:
            z = xi[j] * q ** nu
            t = power(xi[j], nu, expo, q) * (1 - z * z)
            for am in a:
                t *= poch(q * z / am, q) / poch(am * z, q)
            tab[nu] = t
        ax.append(tab)
    diff = {d: h_pair(mp.mpc(xi[0]) / xi[1] * q ** d, tau, q) for d in range(-2 * R, 2 * R + 1)}
    summ = {d: h_pair(mp.mpc(xi[0]) * xi[1] * q ** d, tau, q) for d in range(-2 * R, 2 * R + 1)}
    total = mp.mpc(0)
    for n0 in rng:
        for n1 in rng:
            total += ax[0][n0] * ax[1][n1] * diff[n0 - n1] * summ[n0 + n1]
    return (1 - q) ** 2 * total


def emit(name, value):
    value = mp.mpc(value)
    print(f'    "{name}": ({mp.nstr(value.real, 25)!r}, {mp.nstr(value.imag, 25)!r}),')


def main():
    q = mp.mpf("0.5")
    print('"""Frozen 40-digit mpmath oracle values; regenerate with tools/derive_oracles.py."""')
    print()
    print("# name -> (real part, imaginary part) as decimal strings")
    print("ORACLES = {")
    emit("qpoch_inf(0.5,0.5)", poch(mp.mpf("0.5"), q))
    emit("theta(0.3,0.4)", theta(mp.mpf("0.3"), mp.mpf("0.4")))
    emit("rpsir1(0.4,0.1,0.5,0.5)", rpsir_box([mp.mpf("0.4")], [mp.mpf("0.1")], mp.mpf("0.5"), q))
    emit("rpsir2(0.4,0.3;0.05,0.1;0.5,0.5)",
         rpsir_box([mp.mpf("0.4"), mp.mpf("0.3")], [mp.mpf("0.05"), mp.mpf("0.1")], mp.mpf("0.5"), q))
    emit("vwp6(0.09,0.7,0.6,0.45,0.8,0.5)",
         vwp6_box(mp.mpf("0.09"), mp.mpf("0.7"), mp.mpf("0.6"), mp.mpf("0.45"), mp.mpf("0.8"), q))
    emit("askey(0.3,0.4,0.9,0.5)", askey_box(mp.mpf("0.3"), mp.mpf("0.4"), mp.mpf("0.9"), q))
    emit("askey(0.3,0.4,0.8+0.3j,0.5)", askey_box(mp.mpf("0.3"), mp.mpf("0.4"), mp.mpc("0.8", "0.3"), q))
    a4 = [mp.mpf(v) for v in ("1.2", "1.1", "0.9", "1.3")]
    emit("bc1(1.2,1.1,0.9,1.3;0.7,0.5)", bc1_box(a4, mp.mpf("0.7"), q))
    emit("bc1(1.2,1.1,0.9,1.3;a1,0.5)", bc1_box(a4, a4[0], q, lo=0, hi=400))
    tau = mp.mpf("0.37")
    emit("atype_summand(n2)", atype_summand_direct(2, mp.mpf("0.8"), tau, [1], [mp.mpf("3.6")],
                                                   [mp.mpf(1), q ** tau], q))
    emit("atype(n2,m1)", atype_box2(mp.mpf("0.8"), tau, [1], [mp.mpf("3.6")],
                                    [mp.mpf("0.9"), mp.mpf("1.1")], q))
    emit("atype(n2,m2,mg)", atype_box2(mp.mpf("0.8"), mp.mpf("0.5"), [mp.mpf("0.9"), mp.mpf("1.1")],
                                       [mp.mpf("1.4"), mp.mpf("1.6")], [mp.mpf("0.95"), mp.mpf("1.05")], q))
    emit("bctype(n2,s1)", bctype_box2(1, a4, tau, [mp.mpf("0.7"), mp.mpf("0.8")], q))
    print("}")


if __name__ == "__main__":
    main()
