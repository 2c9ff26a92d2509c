"""Hybrid code distance by weight-limited search, and the closed-form bounds."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .codes import HybridCode, css_split
from .correctability import forbidden_set_membership
from .pauli import PauliOperator, symplectic_form, weight

# candidates evaluated per vectorized block (supports x local choices)
_BLOCK = 1 << 18


@dataclass(frozen=True)
class DistanceResult:
    exact_distance: int | None
    lower_bound: int
    upper_bound: int | None
    witness: PauliOperator | None
    search_cutoff: int


def _local_paulis(d: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(d) for b in range(d) if a or b]


class _Search:
    """Lookup tables shared read-only by all workers."""

    def __init__(self, code: HybridCode):
        self.code = code
        d, n = code.qudit_dim, code.num_sites
        self.d, self.n = d, n
        self.local = _local_paulis(d)
        stabs = code.stabilizer_generators
        logs = code.logical_ops
        self.s = len(stabs)
        # table[j, m] = (syndrome | logical commutation) of local Pauli m on site j
        table = np.zeros((n, len(self.local), self.s + len(logs)), dtype=np.int64)
        for j in range(n):
            for m, (a, b) in enumerate(self.local):
                p = PauliOperator.single(n, j, a, b, d)
                table[j, m, : self.s] = code.syndrome(p)
                table[j, m, self.s :] = [symplectic_form(l, p) for l in logs]
        self.table = table
        self.exact_gauge = not code.gauge_is_logical_complement

        rng = np.random.default_rng(0x5EED)
        self.hash_coeffs = rng.integers(1, 1 << 62, size=self.s, dtype=np.int64)
        syns = np.array(code.transversal_syndromes, dtype=np.int64).reshape(len(code.transversal), self.s)
        diffs = (syns[:, None, :] - syns[None, :, :]) % d
        mask = ~np.eye(len(syns), dtype=bool)
        self.cross_hashes = np.unique(self._hash(diffs[mask]))

    def _hash(self, syn: np.ndarray) -> np.ndarray:
        # int64 overflow wraps; collisions are weeded out by the exact check
        with np.errstate(over="ignore"):
            return syn @ self.hash_coeffs if self.s else np.zeros(syn.shape[:-1], dtype=np.int64)

    def operator(self, support, choice) -> PauliOperator:
        xs = [0] * self.n
        zs = [0] * self.n
        for j, m in zip(support, choice):
            xs[j], zs[j] = self.local[m]
        return PauliOperator(self.d, 0, tuple(xs), tuple(zs))

    def scan(self, supports: np.ndarray, choices: np.ndarray) -> PauliOperator | None:
        """First forbidden operator in (support, choice) lexicographic order."""
        w = supports.shape[1]
        total = np.zeros((len(supports), len(choices), self.table.shape[2]), dtype=np.int64)
        for p in range(w):
            total += self.table[supports[:, p][:, None], choices[:, p][None, :]]
        total %= self.d
        syn, log = total[..., : self.s], total[..., self.s :]
        zero = ~syn.any(axis=-1)
        flagged = zero if self.exact_gauge else zero & log.any(axis=-1)
        if len(self.cross_hashes):
            flagged |= np.isin(self._hash(syn), self.cross_hashes)
        for si, ci in zip(*np.nonzero(flagged)):
            op = self.operator(supports[si], choices[ci])
            if forbidden_set_membership(self.code, op):
                return op
        return None


def _support_chunks(n: int, w: int, size: int):
    it = itertools.combinations(range(n), w)
    while True:
        chunk = list(itertools.islice(it, size))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.int64)


def _known_upper_bound(code: HybridCode) -> int | None:
    # logical operators lie in N(S) \ G, and g_i g_j^-1 lies in g_i N(S) g_j^-1
    cands = [weight(l) for l in code.logical_ops]
    if len(code.transversal) > 1:
        n, d = code.num_sites, code.qudit_dim
        vecs = np.array([g.vector for g in code.transversal], dtype=np.int64)
        for row in vecs:
            diff = (vecs - row) % d
            w = np.count_nonzero(diff[:, :n] | diff[:, n:], axis=1)
            cands.append(int(w[w > 0].min()))
    return min(cands) if cands else None


def exact_distance(code: HybridCode, max_weight: int | None = None, threads: int = 1) -> DistanceResult:
    """Minimum weight of the forbidden set, searched up to ``max_weight``.

    Candidates are visited by weight, then support in lexicographic order,
    then local (a, b) choices in lexicographic order; the first forbidden one
    is the witness.  Chunks of supports are scanned concurrently but reduced
    in order, so the witness does not depend on ``threads``.
    """
    n = code.num_sites
    if max_weight is None:
        max_weight = n
    if max_weight < 1:
        raise ValueError(f"max_weight must be >= 1, got {max_weight}")
    if max_weight > n:
        raise ValueError(f"max_weight {max_weight} exceeds the number of sites {n}")
    code.require_valid()
    search = _Search(code)
    upper = _known_upper_bound(code)
    threads = max(1, threads)

    with ThreadPoolExecutor(max_workers=threads) as pool:
        for w in range(1, max_weight + 1):
            choices = np.array(list(itertools.product(range(len(search.local)), repeat=w)), dtype=np.int64)
            size = max(1, _BLOCK // len(choices))
            chunks = _support_chunks(n, w, size)
            while True:
                batch = list(itertools.islice(chunks, threads))
                if not batch:
                    break
                found = list(pool.map(lambda sup: search.scan(sup, choices), batch))
                hit = next((op for op in found if op is not None), None)
                if hit is not None:
                    return DistanceResult(w, w, w, hit, max_weight)
    return DistanceResult(None, max_weight + 1, upper, None, max_weight)


def anticommute_degree(generators) -> int:
    """Largest number of generators failing to commute with one single-site Pauli.

    Accepts a code or a sequence of stabilizer generators.
    """
    gens = list(getattr(generators, "stabilizer_generators", generators))
    if not gens:
        return 0
    d, n = gens[0].qudit_dim, gens[0].num_sites
    best = 0
    for j in range(n):
        for a, b in _local_paulis(d):
            p = PauliOperator.single(n, j, a, b, d)
            best = max(best, sum(1 for g in gens if symplectic_form(g, p)))
    return best


def css_anticommute_degree(code: HybridCode) -> tuple[int, int]:
    """``(m_X, m_Z)``: the degree against the X-type and the Z-type generators."""
    xs, zs = css_split(code)
    gens = code.stabilizer_generators
    return anticommute_degree([gens[i] for i in xs]), anticommute_degree([gens[i] for i in zs])


def hybrid_bound(base_distance: int, classical_distance: int, degree: int) -> int:
    """``min(d, ceil(d_c / m))``."""
    if min(base_distance, classical_distance, degree) < 1:
        raise ValueError("bound inputs must be positive")
    return min(base_distance, math.ceil(classical_distance / degree))


def css_hybrid_bound(base_distance: int, d_x: int, m_x: int, d_z: int, m_z: int) -> int:
    """``min(d, min(ceil(d_X / m_X), ceil(d_Z / m_Z)))``."""
    if min(base_distance, d_x, m_x, d_z, m_z) < 1:
        raise ValueError("bound inputs must be positive")
    return min(base_distance, math.ceil(d_x / m_x), math.ceil(d_z / m_z))
