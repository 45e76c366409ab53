#!/usr/bin/env python3
"""Independent high-precision oracle values frozen into the C++ tests.

Everything here is computed with mpmath at 40 significant digits by direct
quadrature of the defining integrals (tanh-sinh), not by the C++ code paths.
Run: python3 tests/oracles/compute_oracles.py
"""
import mpmath as mp

mp.mp.dps = 40


def upper_gamma_quad(s, x):
    return mp.quad(lambda u: u ** (s - 1) * mp.exp(-u), [x, 1 + x, mp.inf])


def beta_clock_quad(beta, alpha, s):
    c = alpha - beta
    return mp.quad(lambda u: (1 - u) ** (c - 1) * u ** (-alpha - 1), [s, 1]) / mp.gamma(c)


def show(name, v):
    print(f"{name:48s} {mp.nstr(v, 20)}")


show("gamma(0.5)", mp.quad(lambda t: t ** -0.5 * mp.exp(-t), [0, 1, mp.inf]))
show("upper_inc_gamma(-0.5, 1)", upper_gamma_quad(mp.mpf(-0.5), 1))
show("clock_alpha(0.5, 0.3)", upper_gamma_quad(mp.mpf(-0.5), mp.mpf("0.3")))
show("beta(0.5,0.5)", mp.quad(lambda u: (1 - u) ** -0.5 * u ** -0.5, [0, 0.5, 1]))
show("clock_beta_alpha(0.2,0.7,0.4)", beta_clock_quad(mp.mpf("0.2"), mp.mpf("0.7"), mp.mpf("0.4")))
show("rho1(beta=0.5) on (1,3]", mp.quad(lambda u: u ** -1.5 * mp.exp(-u), [1, 3]))
show("upper_inc_gamma(0.5, 0.5)", upper_gamma_quad(mp.mpf(0.5), mp.mpf(0.5)))

# push-forward tail by an explicit 2-D integral of 1{st>u} rho1(dt) rho2(ds)
def tail2d(beta, alpha, u):
    c = alpha - beta
    def inner(t):
        lo = u / t
        if lo >= 1:
            return mp.mpf(0)
        f = lambda s: (1 - s) ** (c - 1) * s ** (-alpha - 1) if s < 1 else mp.mpf(0)
        return mp.quad(f, [lo, 1]) / mp.gamma(c)
    return mp.quad(lambda t: t ** (-beta - 1) * mp.exp(-t) * inner(t), [u, u + 1, mp.inf])

mp.mp.dps = 20
show("tail2d(-1,-0.5,0.5)", tail2d(mp.mpf(-1), mp.mpf(-0.5), mp.mpf(0.5)))
show("tail2d(-3,-2,1)", tail2d(mp.mpf(-3), mp.mpf(-2), mp.mpf(1)))
mp.mp.dps = 40
show("gamma_upper(2,1) (rhs for alpha=-2,u=1)", upper_gamma_quad(mp.mpf(2), 1))

show("-log(1-i) re", mp.re(-mp.log(1 - 1j)))
show("-log(1-i) im", mp.im(-mp.log(1 - 1j)))

# second moment of I^{t,r_-1} on (0.1, 2]
show("int_{0.1}^2 t^2 e^-t", mp.quad(lambda t: t ** 2 * mp.exp(-t), [0.1, 2]))
show("int_{0.1}^2 t e^-t", mp.quad(lambda t: t * mp.exp(-t), [0.1, 2]))
# compound Poisson +-1 rate 1 under I^{t,r_-1} on (0.1,2]: exponent at y
for y in (0.25, 0.5, 1, 4):
    show(f"cp_mapped(y={y})", mp.quad(lambda t: (mp.cos(t * y) - 1) * mp.exp(-t), [0.1, 2]))

# closed forms for stable multipliers with fractional arguments
show("Gamma(0.7)  (p=1.2, alpha=0.5)", mp.gamma(0.7))
show("Gamma(1.5-0.7)/Gamma(1.5+0.4) prop2 mixed", mp.gamma(0.8) / mp.gamma(1.9))
show("Gamma(1.4-0.9)/Gamma(1.4+0.5) cor2 mixed", mp.gamma(0.5) / mp.gamma(1.9))

# mapping: I^{t,r_alpha} on (0,inf) for compound Poisson +-1 rate 1, alpha=-2, y=1
show("int_0^inf (cos t -1) t e^-t", mp.quad(lambda t: (mp.cos(t) - 1) * t * mp.exp(-t), [0, mp.inf]))
# I^{s,r_{-2,-1}} for gamma subordinator a=1,b=1 at y=1: int_0^1 -log(1 - i s) ds
v = mp.quad(lambda s: -mp.log(1 - 1j * s), [0, 1])
show("gamma-sub mapped re", mp.re(v)); show("gamma-sub mapped im", mp.im(v))
