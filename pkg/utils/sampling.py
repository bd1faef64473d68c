"""
Haar sampling on the maximal compact subgroup K (and on L) in realified coordinates
"""
from dataclasses import dataclass
from typing import Dict, List

import numpy as np
import scipy.linalg

from utils.errors import UnsupportedFamily
from utils.families import CompactFactor, compact_structure

# right multiplication by i, j, k on quaternion coordinates (1, i, j, k)
R_I = np.array([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]], dtype=float)
R_J = np.array([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]], dtype=float)
R_K = np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, -1, 0, 0], [1, 0, 0, 0]], dtype=float)


@dataclass(frozen=True)
class KStructure:
    size: int
    factors: List[CompactFactor]


def haar_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar SO(n): QR of a Gaussian matrix with the sign of diag(R) absorbed, then det fixed to +1"""
    z = rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar U(n): complex QR with the phases of diag(R) absorbed"""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = scipy.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def realify(z: np.ndarray) -> np.ndarray:
    return np.kron(z.real, np.eye(2)) + np.kron(z.imag, np.array([[0.0, -1.0], [1.0, 0.0]]))


def haar_quaternionic(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar Sp(n) realified: Gram-Schmidt over quaternion columns, each spanning a 4-column block"""
    right = [np.kron(np.eye(n), r) for r in (R_I, R_J, R_K)]
    out = np.zeros((4 * n, 4 * n))
    for b in range(n):
        v = rng.standard_normal(4 * n)
        previous = out[:, : 4 * b]
        v = v - previous @ (previous.T @ v)
        v = v / np.linalg.norm(v)
        out[:, 4 * b] = v
        for t, r in enumerate(right, start=1):
            out[:, 4 * b + t] = r @ v
    return out


def haar_compact_symplectic(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar Sp(n) inside Sp(2n,C) preserving [[0,I],[-I,0]]; columns n+a are partners (x;y) -> (-conj y; conj x)"""
    g = np.zeros((2 * n, 2 * n), dtype=complex)
    for a in range(n):
        v = (rng.standard_normal(2 * n) + 1j * rng.standard_normal(2 * n)) / np.sqrt(2.0)
        for col in list(range(a)) + list(range(n, n + a)):
            v = v - g[:, col] * np.vdot(g[:, col], v)
        v = v / np.linalg.norm(v)
        g[:, a] = v
        g[:, n + a] = np.concatenate([-np.conj(v[n:]), np.conj(v[:n])])
    return realify(g)


def haar_unitary_as_real(n: int, rng: np.random.Generator) -> np.ndarray:
    """U(n) as the real orthogonal [[A,-B],[B,A]] commuting with [[0,I],[-I,0]], then complexified"""
    u = haar_unitary(n, rng)
    real = np.block([[u.real, -u.imag], [u.imag, u.real]])
    return np.kron(real, np.eye(2))


def fix_determinants(unitaries: List[np.ndarray]) -> List[np.ndarray]:
    """Rotate the last unitary by a scalar phase so the determinants multiply to 1.

    Haar on U(p_1) x ... x U(p_r) pushed through this map is Haar on S(U(p_1) x ... x U(p_r)).
    """
    total = np.prod([np.linalg.det(u) for u in unitaries])
    last = unitaries[-1]
    phase = np.exp(-1j * np.angle(total) / last.shape[0])
    return unitaries[:-1] + [last * phase]


def sample_factor(factor: CompactFactor, rng: np.random.Generator) -> np.ndarray:
    m = len(factor.units)
    if factor.kind == "SO":
        q = haar_orthogonal(m, rng)
        return q if factor.width == 1 else np.kron(q, np.eye(factor.width))
    if factor.kind == "U":
        u = haar_unitary(m, rng)
        if factor.det_group is not None:
            u = fix_determinants([u])[0]
        return realify(u)
    if factor.kind == "SP":
        return haar_quaternionic(m, rng)
    if factor.kind == "SPC":
        return haar_compact_symplectic(m // 2, rng)
    if factor.kind == "USTAR":
        return haar_unitary_as_real(m // 2, rng)
    raise UnsupportedFamily(f"cannot sample compact factor {factor.kind}")


def sample_compact(k_structure: KStructure, rng: np.random.Generator) -> np.ndarray:
    """One Haar sample of K as a real orthogonal matrix; coordinates outside every factor stay fixed"""
    out = np.eye(k_structure.size)
    groups: Dict[str, List[CompactFactor]] = {}
    for factor in k_structure.factors:
        if factor.kind == "U" and factor.det_group is not None:
            groups.setdefault(factor.det_group, []).append(factor)
            continue
        coords = factor.coords
        out[np.ix_(coords, coords)] = sample_factor(factor, rng)
    for members in groups.values():
        unitaries = fix_determinants([haar_unitary(len(f.units), rng) for f in members])
        for factor, u in zip(members, unitaries):
            coords = factor.coords
            out[np.ix_(coords, coords)] = realify(u)
    return out


def sample_batch(k_structure: KStructure, rng: np.random.Generator, size: int) -> np.ndarray:
    return np.stack([sample_compact(k_structure, rng) for _ in range(size)])


def k_structure(rp) -> KStructure:
    return KStructure(rp.g.matrix_size, rp.g.compact_factors())


def sample_subgroup_l(rp, rng: np.random.Generator) -> np.ndarray:
    """Haar sample of L = H ∩ K inside K"""
    if rp.spec.embedding == "DiagonalGroupSpace":
        half = rp.g.matrix_size // 2
        u = sample_compact(KStructure(half, compact_structure(rp.spec.h_spec)), rng)
        return scipy.linalg.block_diag(u, u)
    return sample_compact(KStructure(rp.g.matrix_size, rp.l_structure), rng)
