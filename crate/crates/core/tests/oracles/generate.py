"""Offline arbitrary-precision oracle for frozen test values.

Everything here is a straight-line transcription evaluated with mpmath at
60 significant digits. It shares no code with the Rust implementation.
Run: python3 generate.py (rewrites theta_points.csv, prints the rest)
"""
import os
import random
from mpmath import mp, mpf, mpc, exp, pi, nsum

mp.dps = 60
I = mpc(0, 1)


def theta(x, p, terms=80):
    # bilateral series with (-1)^(n-1/2) := exp(i*pi*(n-1/2))
    p = mpf(p)
    s = mpc(0)
    for n in range(-terms, terms):
        s += exp(I * pi * (n - mpf(1) / 2)) * p ** ((n + mpf(1) / 2) ** 2) * exp(-(2 * n + 1) * x)
    return s / 2


SETS = {
    1: dict(x=["0.4327", "1.0715", "1.7481", "2.2738", "2.1415"],
            mu=["0.6745", "0.4129", "3.3385", "3.1245", "1.9715"],
            g="0.6512", t="0.1743", p="0.3116"),
    2: dict(x=["0.8919", "0.7233", "0.1519", "0.4388", "2.6662"],
            mu=["2.5449", "1.8734", "1.2745", "2.0178", "3.0089"],
            g="0.1219", t="0.2759", p="0.4421"),
}


def load(s, L):
    S = SETS[s]
    return ([mpf(v) for v in S["x"][:L]], [mpf(v) for v in S["mu"][:L]],
            mpf(S["g"]), mpf(S["t"]), S["p"])


def prod(it):
    r = mpc(1)
    for v in it:
        r *= v
    return r


def fmt(z):
    return "(%s, %s)" % (mp.nstr(z.real, 20, min_fixed=-30, max_fixed=30),
                         mp.nstr(z.imag, 20, min_fixed=-30, max_fixed=30))


def theta_points():
    rng = random.Random(20161)
    out = []
    for k in range(20):
        p = "0.3116" if k < 10 else "0.4421"
        re = round(rng.uniform(-2.0, 2.0), 4)
        im = round(rng.uniform(-3.0, 3.0), 4)
        out.append((p, re, im, theta(mpc(mpf(str(re)), mpf(str(im))), p)))
    return out


def f11_L3_set1():
    x, mu, g, t, p = load(1, 3)
    th = lambda z: theta(z, p)
    L = 3
    return th(2 * g) * prod(th(mu[0] - mu[k] - g) for k in range(1, L)) * \
        prod(th(x[k] - mu[0]) / th(x[k] - mu[0] + g) for k in range(1, L))


def prefactor_L2_set1():
    x, mu, g, t, p = load(1, 2)
    th = lambda z: theta(z, p)
    L = 2
    dL = L * (L + 3) // 2
    dL1 = (L - 1) * (L + 2) // 2
    v = (-1) ** L * (th((L + 1) * g) / th(t + (L + 2) * g)) ** dL1 \
        * (th(t + (L + 1) * g) / th(L * g)) ** dL
    v *= prod(th(x[i] - mu[j]) for i in range(L) for j in range(L))
    v *= prod(th(k * g) / th(t + k * g) for k in range(1, L + 1))
    S = sum(x[l] - mu[l] for l in range(L))
    v *= th(S + (L + 1) * g) / th(S + t + (L + 2) * g)
    return v


def coeffs_L2_set1():
    x, mu, g, t, p = load(1, 2)
    th = lambda z: theta(z, p)
    L = 2
    R = range(L)
    x0 = mpf("0.9")
    xb = mpf("1.3")
    out = {}
    out["A.m0"] = th(t + g) / th(t + (L + 1) * g) * prod(th(x0 - mu[j]) for j in R)
    out["A.n0"] = -th(t + 2 * g) / th(t + (L + 2) * g) * prod(th(x0 - mu[j] + g) for j in R) \
        * prod(th(x[j] - x0 + g) / th(x[j] - x0) for j in R)
    for i in R:
        out["A.n%d" % (i + 1)] = th(g) * th(t + 2 * g + x0 - x[i]) / (th(t + (L + 2) * g) * th(x[i] - x0)) \
            * prod(th(x[i] - mu[j] + g) for j in R) \
            * prod(th(x[j] - x[i] + g) / th(x[j] - x[i]) for j in R if j != i)
    out["D.m0"] = prod(th(xb - mu[j] + g) for j in R)
    out["D.n0"] = -prod(th(xb - mu[j]) for j in R) * prod(th(xb - x[j] + g) / th(xb - x[j]) for j in R)
    for i in R:
        out["D.n%d" % (i + 1)] = th(g) * th(t + (L + 1) * g + xb - x[i]) / (th(xb - x[i]) * th(t + (L + 1) * g)) \
            * prod(th(x[i] - mu[j]) for j in R) \
            * prod(th(x[i] - x[j] + g) / th(x[i] - x[j]) for j in R if j != i)
    out["AD.m0"] = prod(th(x0 - x[j] + g) * th(x0 - mu[j]) * th(xb - mu[j] + g) / (th(x0 - x[j]) * th(x0 - mu[j] + g)) for j in R) \
        - prod(th(xb - x[j] + g) * th(xb - mu[j]) / th(xb - x[j]) for j in R)
    T1 = th(t + (L + 1) * g)
    for i in R:
        out["AD.n%d" % (i + 1)] = -th(g) * th(x0 - x[i] + t + (L + 1) * g) / (T1 * th(x0 - x[i])) \
            * prod(th(x[i] - mu[j]) * th(xb - mu[j] + g) / th(x0 - mu[j] + g) for j in R) \
            * prod(th(x[i] - x[j] + g) / th(x[i] - x[j]) for j in R if j != i)
        out["AD.nbar%d" % (i + 1)] = th(g) * th(xb - x[i] + t + (L + 1) * g) / (T1 * th(xb - x[i])) \
            * prod(th(x[i] - mu[j]) for j in R) \
            * prod(th(x[i] - x[j] + g) / th(x[i] - x[j]) for j in R if j != i)
    return out


if __name__ == "__main__":
    print("// theta(0.6512), p = 0.3116:", fmt(theta(mpf("0.6512"), "0.3116")))
    with open(os.path.join(os.path.dirname(os.path.abspath(__file__)), "theta_points.csv"), "w") as f:
        f.write("p,re,im,value_re,value_im\n")
        for p, re, im, v in theta_points():
            f.write("%s,%s,%s,%s,%s\n" % (p, re, im, mp.nstr(v.real, 20, min_fixed=-30, max_fixed=30),
                                           mp.nstr(v.imag, 20, min_fixed=-30, max_fixed=30)))
    print("// F_11, L = 3, set 1:", fmt(f11_L3_set1()))
    print("// prefactor, L = 2, set 1:", fmt(prefactor_L2_set1()))
    for k, v in coeffs_L2_set1().items():
        print("// %s: %s" % (k, fmt(v)))
