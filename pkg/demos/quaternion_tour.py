"""Unit-quaternion warmup: exp, log, adjoint, and the group axioms."""
import numpy as np

from su2strata import su2

rng = np.random.default_rng(1)

q = su2.random_element(rng)
r = su2.random_element(rng)
print("q =", np.round(q, 4))
print("|q| =", np.linalg.norm(q))
print("trace q =", su2.trace(q))

# multiplication is associative and inverse() really inverts
s = su2.multiply(su2.multiply(q, r), su2.inverse(r))
print("q r r^-1 == q:", np.allclose(s, q))

# exp and log are mutually inverse on the principal branch
x = 0.9 * np.array([0.3, -0.5, 0.8]) / np.linalg.norm([0.3, -0.5, 0.8])
print("log(exp(x)) - x =", np.abs(su2.log(su2.exp(x)) - x).max())

# the adjoint of exp(theta e1) rotates the su(2) plane (e2, e3) by
# 2 theta, the classic double cover angle
theta = 0.4
A = su2.ad(su2.exp(theta * np.array([1.0, 0, 0])))
print("Ad row for e2:", np.round(A @ np.array([0, 1.0, 0]), 6))
print("expected     :", np.round([0, np.cos(2 * theta), np.sin(2 * theta)], 6))

# the one point with no principal logarithm
try:
    su2.log(np.array([-1.0, 0.0, 0.0, 0.0]))
except Exception as e:
    print("log(-1):", type(e).__name__, "-", e)

# Haar samples fill out the trace interval [-2, 2]
traces = [su2.trace(su2.random_element(rng)) for _ in range(2000)]
print("trace range over 2000 Haar draws:",
      round(min(traces), 3), "..", round(max(traces), 3))
