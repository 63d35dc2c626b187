#!/usr/bin/env python3
"""Independent straight-line oracle for the two-party +y/-y statistics.

Builds the 4-dim joint states explicitly with numpy/scipy (no code shared
with the C++ library) and prints the Bob-side gap for the identity scheme
(closed-form channel U0(t)) and for the metric sandwich.
"""
import numpy as np
from scipy.linalg import expm, sqrtm

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
PLUS_Y = np.array([1, 1j]) / np.sqrt(2)
MINUS_Y = np.array([1, -1j]) / np.sqrt(2)


def bell_plus_x():
    px = np.array([1, 1]) / np.sqrt(2)
    mx = np.array([1, -1]) / np.sqrt(2)
    return (np.kron(px, px) + np.kron(mx, mx)) / np.sqrt(2)


def gap(alpha, s, t, scheme):
    c, sn = np.cos(alpha), np.sin(alpha)
    h0 = s * np.array([[1j * sn, 1], [1, -1j * sn]])
    u0 = expm(-1j * t * h0)
    if scheme == "identity":
        chan = u0
    else:
        eta = 2 / c**2 * np.array([[1, -1j * sn], [1j * sn, 1]])
        r = sqrtm(eta)
        chan = r @ u0 @ np.linalg.inv(r)
    psi = bell_plus_x()
    marg = []
    for ua in (I2, SX):
        phi = np.kron(chan @ ua, np.exp(-1j * t) * I2) @ psi
        phi = phi / np.linalg.norm(phi)
        p = sum(abs(np.vdot(np.kron(a, PLUS_Y), phi)) ** 2 for a in (PLUS_Y, MINUS_Y))
        marg.append(p)
    return abs(marg[0] - marg[1]), marg


if __name__ == "__main__":
    for alpha in (np.pi / 6, np.pi / 4, 1.0, 0.785):
        for t in (0.5, 1.0, 2.0):
            g, m = gap(alpha, 1.0, t, "identity")
            gm, _ = gap(alpha, 1.0, t, "metric")
            print(f"alpha={alpha!r} t={t!r} identity_gap={g!r} marg={m!r} metric_gap={gm!r}")
