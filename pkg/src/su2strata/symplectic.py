"""Goldman pairing on twisted cocycles of a surface group.

The pairing of two cocycles u, v is the cup product

    (u ~ v)(a, b) = <u(a), Ad(x(a)) v(b)>

evaluated on the bar-complex 2-chain carried by the surface relator:
for relator s_1 ... s_L with prefixes p_i = s_1 ... s_{i-1}, a positive
letter contributes +[p_i | s_i] and an inverse letter -[p_i s_i | s_i],
which is exactly the chain whose boundary matches the Fox derivative
1-chain.  On relator-satisfying representations the chain is a cycle,
so the value is antisymmetric, kills coboundaries, and depends only on
cohomology classes; none of that is assumed anywhere, the test suite
measures it.  The overall scale is fixed by the orthonormal (i, j, k)
metric.

Cocycles are (n, 3) arrays, one algebra vector per generator.
"""

from __future__ import annotations

import numpy as np

from . import su2
from .cohomology import (DEFAULT_TOL, cocycle_value, cohomology, full_system)
from .errors import DomainError
from .presentations import Representation, Word


def goldman_form(rep: Representation, u: np.ndarray, v: np.ndarray) -> float:
    """Value of the pairing on two cocycles at a surface representation."""
    pres = rep.presentation
    if pres.kind != "surface":
        raise DomainError("the pairing needs a surface presentation")
    sys = full_system(rep)
    u = np.asarray(u, dtype=float).reshape(sys.n, 3)
    v = np.asarray(v, dtype=float).reshape(sys.n, 3)
    relator = pres.relators[0]

    total = 0.0
    prefix_q = su2.identity()      # holonomy of p_i
    prefix_u = np.zeros(3)         # u(p_i)
    for s in relator:
        j = abs(s) - 1
        img = rep.images[j]
        if s > 0:
            q, uq = prefix_q, prefix_u
            sign = 1.0
            prefix_u = prefix_u + su2.ad(prefix_q) @ u[j]
            prefix_q = su2.multiply(prefix_q, img)
        else:
            prefix_q = su2.multiply(prefix_q, su2.inverse(img))
            prefix_u = prefix_u - su2.ad(prefix_q) @ u[j]
            q, uq = prefix_q, prefix_u
            sign = -1.0
        total += sign * float(uq @ (su2.ad(q) @ v[j]))
    return total


def gram_matrix(rep: Representation, cocycles) -> np.ndarray:
    """Pairing values between all pairs from a list of cocycles."""
    m = len(cocycles)
    G = np.zeros((m, m))
    for a in range(m):
        for b in range(m):
            G[a, b] = goldman_form(rep, cocycles[a], cocycles[b])
    return G


def trace_derivative(rep: Representation, word: Word, u: np.ndarray) -> float:
    """Derivative of trace(holonomy(word)) along the cocycle flow
    images -> exp(t u) images: the real trace of u(word) against the
    holonomy."""
    sys = full_system(rep)
    val = cocycle_value(sys, u, word)
    hol = rep.evaluate(word)
    return su2.trace_pairing(val, hol)


def fibre_tangent_basis(rep: Representation, curves,
                        tol: float = DEFAULT_TOL):
    """Orthonormal cocycle basis of the polarization fibre directions.

    Returns harmonic-gauge h1 classes whose trace derivatives vanish
    along every supplied curve word.
    """
    summary = cohomology(rep, tol)
    B = summary.basis_h1
    n = rep.presentation.num_generators
    if B.shape[1] == 0:
        return []
    rows = []
    for w in curves:
        rows.append([trace_derivative(rep, w, B[:, c].reshape(n, 3))
                     for c in range(B.shape[1])])
    T = np.array(rows, dtype=float)
    if T.size == 0:
        null = np.eye(B.shape[1])
    else:
        _, sv, vt = np.linalg.svd(T)
        rank = int(np.sum(sv > tol * max(1.0, float(sv[0]) if sv.size else 1.0)))
        null = vt[rank:].T
    out = B @ null
    return [out[:, c].reshape(n, 3) for c in range(out.shape[1])]
