"""Linear algebra over the ring Z_d.

Row modules over Z_d are kept in Howell normal form.  For prime d this is the
reduced row echelon form with unit pivots; for composite d the extra
annihilator rows make the form canonical and give correct membership,
kernel and solve results despite zero divisors.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = gcd(a, b) = s*a + t*b``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def unit_normalizer(a: int, d: int) -> int:
    """Return a unit ``u`` of Z_d such that ``u * a = gcd(a, d) (mod d)``."""
    a %= d
    if a == 0:
        return 1
    g = gcd(a, d)
    m = d // g
    u = pow(a // g, -1, m) if m > 1 else 1
    # lift u to a unit modulo d; some lift u + k*m always works
    for k in range(g):
        cand = (u + k * m) % d
        if gcd(cand, d) == 1:
            return cand
    raise ArithmeticError(f"no unit lift for {a} mod {d}")  # pragma: no cover


def is_prime(d: int) -> bool:
    return d >= 2 and all(d % p for p in range(2, int(d**0.5) + 1))


def _rref_prime(a: np.ndarray, p: int) -> np.ndarray:
    a = a.copy()
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if not len(nz):
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if len(hit):
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        r += 1
    return a[:r]


def howell_form(matrix, d: int) -> np.ndarray:
    """Howell normal form of ``matrix`` over Z_d, zero rows removed.

    The returned rows span the same Z_d row module as the input.  Pivots are
    divisors of d, entries above each pivot are reduced into ``[0, pivot)``, and
    for every column j the rows whose first j entries vanish span every module
    element whose first j entries vanish.
    """
    a = np.array(matrix, dtype=np.int64) % d
    if a.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    if is_prime(d):
        return _rref_prime(a, d)
    ncols = a.shape[1]
    rows = [row.copy() for row in a if row.any()]

    r = 0
    for c in range(ncols):
        if r >= len(rows):
            break
        for i in range(r + 1, len(rows)):
            b = int(rows[i][c])
            if b == 0:
                continue
            a_rc = int(rows[r][c])
            g, s, t = xgcd(a_rc, b)
            u, v = a_rc // g, b // g
            top = (s * rows[r] + t * rows[i]) % d
            bottom = (-v * rows[r] + u * rows[i]) % d
            rows[r], rows[i] = top, bottom
        pivot = int(rows[r][c])
        if pivot == 0:
            continue
        rows[r] = (unit_normalizer(pivot, d) * rows[r]) % d
        pivot = int(rows[r][c])
        for i in range(r):
            q = int(rows[i][c]) // pivot
            if q:
                rows[i] = (rows[i] - q * rows[r]) % d
        if pivot != 1:
            # annihilator row keeps the Howell property for later columns
            rows.append((d // pivot * rows[r]) % d)
        r += 1

    out = [row for row in rows[:r] if row.any()]
    if not out:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.array(out, dtype=np.int64)


def pivot_columns(form: np.ndarray) -> list[int]:
    return [int(np.flatnonzero(row)[0]) for row in form]


def module_size(form: np.ndarray, d: int) -> int:
    """Number of elements of the row module of a Howell form."""
    size = 1
    for row, c in zip(form, pivot_columns(form)):
        size *= d // int(row[c])
    return size


def reduce_vector(form: np.ndarray, vec, d: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduce ``vec`` against a Howell form.

    Returns ``(remainder, coeffs)`` with ``vec = coeffs @ form + remainder``;
    the remainder is zero iff ``vec`` lies in the row module.
    """
    v = np.array(vec, dtype=np.int64) % d
    coeffs = np.zeros(len(form), dtype=np.int64)
    for idx, (row, c) in enumerate(zip(form, pivot_columns(form))):
        entry = int(v[c])
        if entry == 0:
            continue
        pivot = int(row[c])
        if entry % pivot:
            break
        q = entry // pivot
        coeffs[idx] = q
        v = (v - q * row) % d
    return v, coeffs


def in_row_module(form: np.ndarray, vec, d: int) -> bool:
    rem, _ = reduce_vector(form, vec, d)
    return not rem.any()


@dataclass(frozen=True)
class RowSolver:
    """Solves ``x @ A = v`` over Z_d for a fixed matrix ``A``.

    Built from the Howell form of ``[A | I]``: the left block spans the row
    module of A, the right block records how each row was combined, and the
    rows with zero left block span the left kernel of A.
    """

    d: int
    nrows: int
    form: np.ndarray
    transform: np.ndarray
    kernel: np.ndarray

    @classmethod
    def build(cls, matrix, d: int) -> "RowSolver":
        a = np.array(matrix, dtype=np.int64) % d
        if a.ndim != 2:
            raise ValueError("matrix must be two-dimensional")
        m, ncols = a.shape
        aug = np.concatenate([a, np.eye(m, dtype=np.int64)], axis=1)
        h = howell_form(aug, d)
        left, right = h[:, :ncols], h[:, ncols:]
        nonzero = left.any(axis=1) if len(h) else np.zeros(0, dtype=bool)
        return cls(
            d=d,
            nrows=m,
            form=left[nonzero],
            transform=right[nonzero],
            kernel=right[~nonzero],
        )

    def solve(self, vec) -> np.ndarray | None:
        """Some ``x`` with ``x @ A = vec``, or None if there is none."""
        rem, coeffs = reduce_vector(self.form, vec, self.d)
        if rem.any():
            return None
        if len(self.transform) == 0:
            return np.zeros(self.nrows, dtype=np.int64)
        return (coeffs @ self.transform) % self.d
