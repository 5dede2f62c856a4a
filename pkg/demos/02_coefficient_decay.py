#!/usr/bin/env python3
"""Exponential decay of Hermite coefficients in a Gaussian-envelope class.

A function with |f| and |fhat| both under C e^{-a x^2/2} has
|<f, phi_k>| <= C sqrt(2 pi k!/(1+a)) (e/k)^{k/2} mu^{k/4}, mu = (1-a)/(1+a),
i.e. geometric decay at rate mu^{1/4} per index.  The boundary chirp
exp((-a + i sqrt(1-a^2)) x^2/2) realizes the endpoint rate exactly (up to
k^{-1/4}), which is what the least-squares rate fit recovers.
"""

import math

import numpy as np

from gaussherm import (
    boundary_chirp,
    decay_fit,
    envelope_membership,
    hardy_coeff_bound,
    hermite_coeffs,
    rate_regime,
)

alpha = 0.27465  # tanh(2 alpha) = 0.5, so mu = 1/3 and the rate is e^-alpha
a = math.tanh(2 * alpha)
chirp = boundary_chirp(alpha)
mem = envelope_membership(chirp, a)
print(f"boundary chirp at alpha = {alpha}: a = tanh(2 alpha) = {a:.6f}")
print(f"membership constant C = {mem.constant:.6f} (both sides sit exactly on the envelope)")

e = hermite_coeffs(chirp, 60)
print("\n  k    |<f,phi_k>|      bound(k, a, C)    bound/|coeff|")
for k in (2, 6, 12, 24, 40, 60):
    ck = abs(e.coeffs[k])
    bk = hardy_coeff_bound(k, a, mem.constant)
    print(f"{k:4d}   {ck:12.6e}   {bk:14.6e}   {bk/ck:10.2f}")

# the compensated sequence |c_2m| (2m)^{1/4} e^{2 alpha m} stays in a fixed
# band: the endpoint rate is attained, not just bounded
m = np.arange(1, 51)
comp = np.abs(hermite_coeffs(chirp, 100).coeffs[2 * m]) * (2 * m) ** 0.25 * np.exp(2 * alpha * m)
print(f"\ncompensated endpoint sequence over m <= 50: "
      f"[{comp.min():.5f}, {comp.max():.5f}] (ratio {comp.max()/comp.min():.3f})")

fit = decay_fit(hermite_coeffs(chirp, 100), (4, 100))
print(f"fitted rate alpha_hat = {fit.alpha_hat:.6f} (planted {alpha})")
print(f"fitted power p_hat    = {fit.power_hat:.4f}   (expected 1/4)")

print("\nrate regimes for claimed decay e^{-alpha' k} against a = 0.5:")
for alpha_claim in (0.2, 0.5 * math.atanh(0.5), 0.5):
    print(f"  alpha' = {alpha_claim:.5f}: {rate_regime(0.5, alpha_claim)}")
