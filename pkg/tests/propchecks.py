"""Randomized property checks; each returns the list of failing cases."""

from __future__ import annotations

import numpy as np

from hybridstab.codes import HybridCode
from hybridstab.correctability import check_errors
from hybridstab.groups import same_coset
from hybridstab.oracle import render
from hybridstab.pauli import PauliOperator, inverse, multiply, symplectic_form

from randomcodes import random_code, random_element, random_errors, random_gkp18_code, random_gkp18_errors, random_pauli


def code_pool(rng: np.random.Generator, size: int = 40) -> list[HybridCode]:
    pool = []
    for idx in range(size):
        if idx % 4 == 3:
            pool.append(random_gkp18_code(rng))
        elif idx % 4 == 2:
            pool.append(random_code(int(rng.integers(1, 3)), 3, rng))
        else:
            pool.append(random_code(int(rng.integers(1, 5)), 2, rng))
    return pool


def _errors(code: HybridCode, rng: np.random.Generator) -> list[PauliOperator]:
    if code.qudit_dim == 18:
        return random_gkp18_errors(rng)
    return random_errors(code, rng)


def _normalizer_element(code: HybridCode, rng: np.random.Generator) -> PauliOperator:
    ops = code.stabilizer_generators + code.gauge_ops + code.logical_ops
    g = random_element(ops, code.num_sites, code.qudit_dim, rng)
    return g.with_phase(int(rng.integers(0, 2 * code.qudit_dim)))


def pauli_algebra(cases: int, rng: np.random.Generator, tol: float = 1e-10) -> list:
    fails = []
    for _ in range(cases):
        d = int(rng.choice([2, 3, 4, 18]))
        n = 1 if d == 18 else int(rng.integers(1, 4))
        a, b, c = (random_pauli(n, d, rng) for _ in range(3))
        if multiply(multiply(a, b), c) != multiply(a, multiply(b, c)):
            fails.append(("associativity", a, b, c))
        if np.abs(render(multiply(a, b)) - render(a) @ render(b)).max() >= tol:
            fails.append(("homomorphism", a, b))
        if multiply(a, inverse(a)) != PauliOperator.identity(n, d):
            fails.append(("inverse", a))
        if (symplectic_form(a, b) + symplectic_form(b, a)) % d:
            fails.append(("antisymmetry", a, b))
    return fails


def same_coset_equivalence(cases: int, rng: np.random.Generator, pool) -> list:
    fails = []
    for _ in range(cases):
        code = pool[int(rng.integers(len(pool)))]
        n, d, stab = code.num_sites, code.qudit_dim, code.stabilizer
        a = random_pauli(n, d, rng)
        # bias toward shared cosets so transitivity is exercised
        b = multiply(a, _normalizer_element(code, rng)) if rng.random() < 0.5 else random_pauli(n, d, rng)
        c = multiply(b, _normalizer_element(code, rng)) if rng.random() < 0.5 else random_pauli(n, d, rng)
        if not same_coset(a, a, stab):
            fails.append(("reflexive", a))
        if same_coset(a, b, stab) != same_coset(b, a, stab):
            fails.append(("symmetric", a, b))
        if same_coset(a, b, stab) and same_coset(b, c, stab) and not same_coset(a, c, stab):
            fails.append(("transitive", a, b, c))
    return fails


def representative_invariance(cases: int, rng: np.random.Generator, pool) -> list:
    fails = []
    for _ in range(cases):
        code = pool[int(rng.integers(len(pool)))]
        errs = _errors(code, rng)
        moved = [code.transversal[0]] + [multiply(g, _normalizer_element(code, rng)) for g in code.transversal[1:]]
        before = check_errors(code, errs)
        after = check_errors(code.with_transversal(moved), errs)
        if (before.correctable, before.per_sector) != (after.correctable, after.per_sector):
            fails.append((code, errs, moved))
    return fails


def phase_invariance(cases: int, rng: np.random.Generator, pool) -> list:
    fails = []
    for _ in range(cases):
        code = pool[int(rng.integers(len(pool)))]
        errs = _errors(code, rng)
        shifted = [e.with_phase(e.phase_exp + int(rng.integers(0, 2 * code.qudit_dim))) for e in errs]
        if check_errors(code, errs).correctable != check_errors(code, shifted).correctable:
            fails.append((code, errs, shifted))
    return fails


def syndrome_additivity(cases: int, rng: np.random.Generator, pool) -> list:
    fails = []
    for _ in range(cases):
        code = pool[int(rng.integers(len(pool)))]
        n, d = code.num_sites, code.qudit_dim
        g, h = random_pauli(n, d, rng), random_pauli(n, d, rng)
        lhs = code.syndrome(multiply(g, h))
        rhs = tuple((x + y) % d for x, y in zip(code.syndrome(g), code.syndrome(h)))
        if lhs != rhs:
            fails.append((code, g, h))
    return fails
