import itertools

import numpy as np
import pytest

from hybridstab.modular import (
    RowSolver,
    howell_form,
    in_row_module,
    module_size,
    unit_normalizer,
    xgcd,
)


def brute_span(mat: np.ndarray, d: int) -> set[tuple[int, ...]]:
    rows = [np.asarray(r) for r in mat]
    out = set()
    for coeffs in itertools.product(range(d), repeat=len(rows)):
        v = sum((c * r for c, r in zip(coeffs, rows)), np.zeros(mat.shape[1], dtype=np.int64)) % d
        out.add(tuple(int(x) for x in v))
    return out


def test_xgcd():
    for a, b in [(12, 18), (7, 5), (0, 9), (9, 0)]:
        g, s, t = xgcd(a, b)
        assert g == np.gcd(a, b)
        assert s * a + t * b == g


@pytest.mark.parametrize("d", [2, 4, 6, 12, 18])
def test_unit_normalizer(d):
    for a in range(d):
        u = unit_normalizer(a, d)
        assert np.gcd(u, d) == 1
        assert (u * a) % d == (np.gcd(a, d) if a else 0)


@pytest.mark.parametrize("d", [2, 3, 4, 6, 9, 18])
def test_howell_matches_brute_force(d, rng):
    for _ in range(25):
        rows = int(rng.integers(1, 4))
        cols = int(rng.integers(1, 4))
        mat = rng.integers(0, d, size=(rows, cols))
        span = brute_span(mat, d)
        form = howell_form(mat, d)
        assert module_size(form, d) == len(span)
        assert brute_span(form, d) == span if len(form) else span == {(0,) * cols}
        for vec in itertools.product(range(d), repeat=cols):
            assert in_row_module(form, vec, d) == (vec in span)


def test_howell_needs_annihilator_rows():
    # [2, 1] over Z_4: 2 * row = [0, 2], which a naive echelon form misses
    form = howell_form([[2, 1]], 4)
    assert in_row_module(form, [0, 2], 4)
    assert module_size(form, 4) == 4


@pytest.mark.parametrize("d", [2, 3, 6, 18])
def test_row_solver(d, rng):
    for _ in range(20):
        mat = rng.integers(0, d, size=(int(rng.integers(1, 4)), int(rng.integers(1, 4))))
        solver = RowSolver.build(mat, d)
        for k in solver.kernel:
            assert not ((k @ mat) % d).any()
        span = brute_span(mat, d)
        for vec in itertools.product(range(d), repeat=mat.shape[1]):
            x = solver.solve(vec)
            if vec in span:
                assert x is not None
                assert tuple(int(v) for v in (x @ mat) % d) == vec
            else:
                assert x is None


def test_kernel_size_matches_brute_force():
    mat = np.array([[6, 0], [0, 6], [12, 6]])
    d = 18
    solver = RowSolver.build(mat, d)
    kernel = {c for c in itertools.product(range(d), repeat=3) if not ((np.array(c) @ mat) % d).any()}
    assert len(brute_span(solver.kernel, d)) == len(kernel)
