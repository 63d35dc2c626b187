#!/usr/bin/env python3
"""Brute-force grid oracle for the 3x3 scalar-sum obstruction.

eta = Q^{-H} diag(a) Q^{-1}; best t = tr(eta + eta^{-1}) / 3.
Prints the minimum Frobenius residual over a 21^3 grid on [0.1, 10]^3
(log-spaced and linearly spaced) plus the (1,3) obstruction entry.
"""
import itertools
import numpy as np

Q = np.array([[1, 1, 1], [0, 1, 1], [0, 0, 1]], dtype=complex)
QI = np.linalg.inv(Q)


def residual(a):
    eta = QI.conj().T @ np.diag(a) @ QI
    s = eta + np.linalg.inv(eta)
    t = np.trace(s).real / 3
    return np.linalg.norm(s - t * np.eye(3))


def grid_min(axis):
    return min(residual(np.array(p)) for p in itertools.product(axis, repeat=3))


if __name__ == "__main__":
    log_axis = np.logspace(-1, 1, 21)
    lin_axis = np.linspace(0.1, 10, 21)
    print("log-grid min residual", repr(grid_min(log_axis)))
    print("lin-grid min residual", repr(grid_min(lin_axis)))
    print("A=I residual", repr(residual(np.ones(3))))
    a = np.diag([0.7, 1.3, 2.9])
    m = a @ QI @ QI.conj().T @ a + Q.conj().T @ Q
    print("entry13", m[0, 2])
