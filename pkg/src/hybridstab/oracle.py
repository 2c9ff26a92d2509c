"""Dense-matrix ground truth for small codes.

Everything here works with explicit D x D complex matrices, D = d^n, and is
meant to cross-check the group-theoretic answers at desk scale.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import subspace_angles

from .codes import HybridCode, build_gkp18
from .groups import PauliSubgroup
from .pauli import PauliOperator, inverse, multiply

DEFAULT_CAP = 4096
UNITARY_TOL = 1e-10
COMMUTATOR_TOL = 1e-8


class DenseCapExceeded(ValueError):
    """Hilbert space dimension is above the configured cap."""


class OracleRefusal(RuntimeError):
    """The oracle cannot vouch for its verdict on this code."""


def dense_cap() -> int:
    raw = os.environ.get("HYBRIDSTAB_DENSE_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"HYBRIDSTAB_DENSE_CAP must be an integer, got {raw!r}") from None


def hilbert_dim(qudit_dim: int, num_sites: int) -> int:
    return qudit_dim**num_sites


def _check_cap(d: int, n: int) -> int:
    dim = hilbert_dim(d, n)
    cap = dense_cap()
    if dim > cap:
        raise DenseCapExceeded(f"dimension {d}^{n} = {dim} exceeds the dense cap {cap}")
    return dim


def _digits(d: int, n: int) -> np.ndarray:
    """Row k holds the base-d digits of basis index k, site 0 most significant."""
    idx = np.arange(d**n)
    return np.stack([(idx // d ** (n - 1 - j)) % d for j in range(n)], axis=1)


def render(g: PauliOperator) -> np.ndarray:
    """Dense matrix of g with X|k> = |k+1>, Z|k> = w^k |k>, times exp(i pi c / d).

    Pauli operators are monomial matrices, so the entries are written
    directly instead of through Kronecker products.
    """
    d, n = g.qudit_dim, g.num_sites
    dim = _check_cap(d, n)
    digits = _digits(d, n)
    a = np.array(g.x_exp)
    b = np.array(g.z_exp)
    # X^a Z^b |k> = w^(b.k) |k + a>
    target = ((digits + a) % d) @ (d ** np.arange(n - 1, -1, -1))
    exponent = 2 * ((digits @ b) % d) + g.phase_exp
    out = np.zeros((dim, dim), dtype=complex)
    out[target, np.arange(dim)] = np.exp(1j * np.pi * exponent / d)
    return out


def stabilizer_projector(group: PauliSubgroup) -> np.ndarray:
    """Average of all group elements, the projector onto the joint +1 eigenspace."""
    _check_cap(group.qudit_dim, group.num_sites)
    elements = group.elements()
    total = sum(render(s) for s in elements)
    return total / len(elements)


def range_basis(proj: np.ndarray) -> np.ndarray:
    """Orthonormal columns spanning the range of a Hermitian projector."""
    vals, vecs = np.linalg.eigh((proj + proj.conj().T) / 2)
    return vecs[:, vals > 0.5]


def _max_entry(m: np.ndarray) -> float:
    return float(np.abs(m).max()) if m.size else 0.0


def sector_projectors(code: HybridCode) -> list[np.ndarray]:
    """P_i = g_i P g_i^-1 for each transversal element."""
    p = stabilizer_projector(code.stabilizer)
    out = []
    for g in code.transversal:
        u = render(g)
        out.append(u @ p @ u.conj().T)
    return out


def check_coset_orthogonality(code: HybridCode) -> float:
    """Largest entry of P g_i^-1 g_j P over i != j (0 for a single sector)."""
    p = stabilizer_projector(code.stabilizer)
    worst = 0.0
    for i, gi in enumerate(code.transversal):
        for j, gj in enumerate(code.transversal):
            if i != j:
                worst = max(worst, _max_entry(p @ render(multiply(inverse(gi), gj)) @ p))
    return worst


@dataclass(frozen=True)
class SubsystemReport:
    code_dim: int
    expected_dim: int
    invariance_residual: float
    commutation_residual: float
    commutant_dim: int

    @property
    def ok(self) -> bool:
        return (
            self.code_dim == self.expected_dim
            and self.invariance_residual < UNITARY_TOL
            and self.commutation_residual < UNITARY_TOL
            and self.commutant_dim == 1
        )


def commutant_dimension(mats: Sequence[np.ndarray], tol: float = 1e-8) -> int:
    """Dimension of {X : X M = M X for all M}, by the null space of the stacked equations."""
    if not mats:
        raise ValueError("need at least one matrix")
    m = mats[0].shape[0]
    eye = np.eye(m)
    # row-major vec: vec(X M) = (I kron M^T) vec X, vec(M X) = (M kron I) vec X
    system = np.vstack([np.kron(eye, a.T) - np.kron(a, eye) for a in mats])
    sv = np.linalg.svd(system, compute_uv=False)
    rank = int(np.sum(sv > tol))
    return m * m - rank


def subsystem_report(code: HybridCode) -> SubsystemReport:
    p = stabilizer_projector(code.stabilizer)
    v = range_basis(p)
    dim = v.shape[1]
    expected = hilbert_dim(code.qudit_dim, code.num_sites) // code.stabilizer.order_mod_phase

    def restrict(ops):
        out, resid = [], 0.0
        for op in ops:
            u = render(op) @ v
            m = v.conj().T @ u
            resid = max(resid, _max_entry(u - v @ m))
            out.append(m)
        return out, resid

    gauge, r1 = restrict(code.gauge_ops)
    logical, r2 = restrict(code.logical_ops)
    comm = 0.0
    for a in gauge:
        for b in logical:
            comm = max(comm, _max_entry(a @ b - b @ a))
    mats = gauge + logical
    cdim = commutant_dimension(mats) if mats else dim * dim
    return SubsystemReport(dim, expected, max(r1, r2), comm, cdim)


def check_subsystem_structure(code: HybridCode) -> bool:
    """Gauge and logical operators preserve C, commute there, and act irreducibly.

    Also checks dim C = d^n / |S|.  With no gauge or logical operators the
    code space must be one-dimensional.
    """
    return subsystem_report(code).ok


def check_oaqec_conditions(code: HybridCode, errors: Sequence[PauliOperator]) -> bool:
    """Commutant form of the operator-algebra correction conditions.

    The algebra is generated by the sector projectors P_i and the compressed
    logical operators P_i g_i L g_i^-1 P_i (and their adjoints).  The errors
    are correctable iff every Q E_k^dag E_l Q commutes with all generators.
    Raises :class:`OracleRefusal` if the subsystem structure check fails,
    since the generating set is then not known to be complete.
    """
    if not errors:
        raise ValueError("error set must be non-empty")
    if not check_subsystem_structure(code):
        raise OracleRefusal("subsystem structure check failed; OAQEC generating set is not trustworthy")
    projs = sector_projectors(code)
    q = sum(projs)
    gens = list(projs)
    for g, pi in zip(code.transversal, projs):
        for l in code.logical_ops:
            conj = multiply(multiply(g, l), inverse(g))
            for op in (conj, inverse(conj)):
                gens.append(pi @ render(op) @ pi)

    dense_errors = [render(e) for e in errors]
    for ek in dense_errors:
        for el in dense_errors:
            m = q @ ek.conj().T @ el @ q
            for x in gens:
                if _max_entry(m @ x - x @ m) >= COMMUTATOR_TOL:
                    return False
    return True


# -- the d = 18 degeneracy example ---------------------------------------------


def subspace_residual(a: np.ndarray, b: np.ndarray) -> float:
    """Largest principal angle between two column spaces (inf if dimensions differ)."""
    if a.shape[1] != b.shape[1]:
        return float("inf")
    return float(np.max(subspace_angles(a, b)))


def degeneracy_residuals() -> dict[str, float]:
    """Numerical residuals for the Z-power degeneracy of the d = 18 code with T0 = {I, X, X^-1}."""
    code = build_gkp18()
    d = code.qudit_dim
    hybrid = range_basis(sum(sector_projectors(code)))

    def z(b: int) -> np.ndarray:
        return render(PauliOperator(d, 0, (0,), (b,)))

    img = {b: z(b) @ hybrid for b in (1, 2, 3, 5, 7, 13)}
    orth = max(
        _max_entry(img[a].conj().T @ img[b]) for a, b in ((1, 3), (1, 5), (3, 5))
    )
    p = stabilizer_projector(code.stabilizer)
    xc = render(PauliOperator(d, 0, (1,), (0,))) @ range_basis(p)
    omega6 = np.exp(2j * np.pi * 6 / d)
    return {
        "z1_vs_z7": subspace_residual(img[1], img[7]),
        "z1_vs_z13": subspace_residual(img[1], img[13]),
        "z1_vs_z2": subspace_residual(img[1], img[2]),
        "odd_orthogonality": orth,
        "z6_on_xc": _max_entry(z(6) @ xc - omega6 * xc),
        "hybrid_dim": float(hybrid.shape[1]),
    }


def check_degeneracy_example(tol: float = UNITARY_TOL) -> bool:
    r = degeneracy_residuals()
    return (
        r["hybrid_dim"] == 6
        and r["z1_vs_z7"] < tol
        and r["z1_vs_z13"] < tol
        and r["odd_orthogonality"] < tol
        and r["z6_on_xc"] < tol
        and r["z1_vs_z2"] > 0.1
    )
