"""Independent reference implementations used to freeze test values.

Everything here is definition-driven and avoids the code paths under
test: quaternion products go through 2x2 complex matrices, determinants
through permutation expansion, torsion through Gram-Schmidt bases and
hand determinants rather than SVDs.
"""

import itertools
import math

import numpy as np


def su2_matrix(q):
    """2x2 complex matrix of w + xi + yj + zk; a group isomorphism."""
    w, x, y, z = q
    return np.array([[w + 1j * x, y + 1j * z],
                     [-y + 1j * z, w - 1j * x]])


def quat_from_matrix(m):
    return np.array([m[0, 0].real, m[0, 0].imag, m[0, 1].real, m[0, 1].imag])


def quat_mul(a, b):
    return quat_from_matrix(su2_matrix(a) @ su2_matrix(b))


def quat_exp(v):
    """Matrix exponential through the eigenstructure of the 2x2 form."""
    theta = np.linalg.norm(v)
    if theta == 0:
        return np.array([1.0, 0.0, 0.0, 0.0])
    unit = np.array([0.0, *(v / theta)])
    return np.array([math.cos(theta), 0.0, 0.0, 0.0]) + \
        math.sin(theta) * unit


def adjoint_matrix(q):
    """Columns are q e_i q^-1 computed with the matrix product oracle."""
    qinv = np.array([q[0], -q[1], -q[2], -q[3]])
    cols = []
    for i in range(3):
        e = np.zeros(4)
        e[1 + i] = 1.0
        cols.append(quat_mul(quat_mul(q, e), qinv)[1:])
    return np.array(cols).T


def central_difference(f, h):
    return (f(h) - f(-h)) / (2.0 * h)


def leibniz_det(m):
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    if n == 0:
        return 1.0
    total = 0.0
    for perm in itertools.permutations(range(n)):
        sign = 1.0
        seen = list(perm)
        # count inversions for the permutation sign
        inv = sum(1 for i in range(n) for j in range(i + 1, n)
                  if seen[i] > seen[j])
        sign = -1.0 if inv % 2 else 1.0
        prod = 1.0
        for i in range(n):
            prod *= m[i, perm[i]]
        total += sign * prod
    return total


def gram_schmidt(columns, tol=1e-10):
    """Orthonormal basis of the span, as a list of vectors."""
    basis = []
    for c in columns:
        v = np.array(c, dtype=float)
        for b in basis:
            v = v - (b @ v) * b
        nrm = np.linalg.norm(v)
        if nrm > tol:
            basis.append(v / nrm)
    return basis


def complement_basis(basis, dim, tol=1e-10):
    """Extend an orthonormal set to all of R^dim; new vectors first."""
    out = []
    current = list(basis)
    for i in range(dim):
        e = np.zeros(dim)
        e[i] = 1.0
        v = e
        for b in current:
            v = v - (b @ v) * b
        nrm = np.linalg.norm(v)
        if nrm > tol:
            v = v / nrm
            out.append(v)
            current.append(v)
    return out


def top_form_torsion(dims, maps, tol=1e-10):
    """Alternating product of restricted-map determinants.

    For each map f_j (1-indexed position j), the complement of the
    previous image maps isomorphically onto the image of f_j; the
    absolute determinant of that square matrix goes to the numerator at
    odd positions and the denominator at even ones.
    """
    log_t = 0.0
    prev_image = []
    for pos, f in enumerate(maps, start=1):
        f = np.asarray(f, dtype=float)
        dom = dims[pos - 1]
        comp = complement_basis(prev_image, dom, tol)
        image = gram_schmidt(list(f.T), tol)
        if len(image) != len(comp):
            raise ValueError("sequence is not exact at this position")
        if comp:
            C = np.array(comp).T
            B = np.array(image).T
            d = abs(leibniz_det(B.T @ f @ C))
        else:
            d = 1.0
        log_t += math.log(d) if pos % 2 == 1 else -math.log(d)
        prev_image = image
    return math.exp(log_t), log_t


def random_orthogonal(rng, n):
    if n == 0:
        return np.zeros((0, 0))
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    return q * np.sign(np.diag(r))


def random_exact_sequence(rng, n_spaces=4, max_rank=2, max_dim=5):
    """Exact sequence with known torsion: dims d_j = r_{j-1} + r_j and
    maps carrying prescribed singular values between rotated frames."""
    while True:
        ranks = [0] + [int(rng.integers(0, max_rank + 1))
                       for _ in range(n_spaces - 1)] + [0]
        dims = [ranks[j] + ranks[j + 1] for j in range(n_spaces)]
        if all(d <= max_dim for d in dims) and sum(dims) > 0:
            break
    frames = [random_orthogonal(rng, d) for d in dims]
    maps = []
    log_t = 0.0
    for j in range(n_spaces - 1):
        r = ranks[j + 1]
        s = np.exp(rng.uniform(math.log(0.3), math.log(3.0), size=r))
        f = frames[j + 1][:, :r] @ np.diag(s) @ frames[j][:, ranks[j]:].T
        maps.append(f)
        contrib = float(np.sum(np.log(s)))
        log_t += contrib if (j + 1) % 2 == 1 else -contrib
    return dims, maps, math.exp(log_t), log_t
