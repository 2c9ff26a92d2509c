"""Subgroups of the qudit Pauli group given by generating sets."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .modular import RowSolver, howell_form, in_row_module, module_size
from .pauli import (
    DimensionMismatch,
    PauliOperator,
    inverse,
    multiply,
    power,
    symplectic_form,
)


class NonAbelianGroup(ValueError):
    pass


class UnsolvableSyndrome(ValueError):
    pass


def _product(gens: Sequence[PauliOperator], coeffs: Iterable[int], n: int, d: int) -> PauliOperator:
    out = PauliOperator.identity(n, d)
    for g, c in zip(gens, coeffs):
        if c:
            out = multiply(out, power(g, int(c)))
    return out


@dataclass(frozen=True)
class PauliSubgroup:
    """Subgroup generated by ``generators``, optionally with all scalar phases.

    Stabilizer groups use ``includes_all_phases=False`` and get phase-exact
    membership; gauge and logical groups adjoin ``sqrt(w) I`` and answer
    membership modulo phase.  Generators that already belong to the group
    spanned by the earlier ones are dropped with a warning.
    """

    generators: tuple[PauliOperator, ...]
    includes_all_phases: bool = False
    qudit_dim: int = 2
    num_sites: int = 1
    dropped: tuple[PauliOperator, ...] = field(default=(), compare=False)

    @classmethod
    def from_generators(
        cls,
        generators: Iterable[PauliOperator],
        includes_all_phases: bool = False,
        num_sites: int | None = None,
        qudit_dim: int | None = None,
        warn: bool = True,
    ) -> PauliSubgroup:
        gens = list(generators)
        if gens:
            d, n = gens[0].qudit_dim, gens[0].num_sites
        elif num_sites is None or qudit_dim is None:
            raise ValueError("empty generating set needs explicit num_sites and qudit_dim")
        else:
            d, n = qudit_dim, num_sites
        for g in gens:
            if g.qudit_dim != d or g.num_sites != n:
                raise DimensionMismatch("generators live in different Pauli groups")

        kept: list[PauliOperator] = []
        dropped: list[PauliOperator] = []
        form = np.zeros((0, 2 * n), dtype=np.int64)
        for g in gens:
            if in_row_module(form, g.vector, d) and (
                includes_all_phases or cls(tuple(kept), False, d, n).is_redundant(g)
            ):
                dropped.append(g)
                continue
            kept.append(g)
            form = howell_form(np.vstack([form, g.vector]), d)
        if dropped and warn:
            warnings.warn(
                f"dropped {len(dropped)} redundant generator(s): "
                + ", ".join(str(g) for g in dropped),
                stacklevel=2,
            )
        return cls(tuple(kept), includes_all_phases, d, n, tuple(dropped))

    # -- cached linear algebra ----------------------------------------------

    @cached_property
    def matrix(self) -> np.ndarray:
        if not self.generators:
            return np.zeros((0, 2 * self.num_sites), dtype=np.int64)
        return np.array([g.vector for g in self.generators], dtype=np.int64)

    @cached_property
    def solver(self) -> RowSolver:
        return RowSolver.build(self.matrix, self.qudit_dim)

    @property
    def echelon(self) -> np.ndarray:
        """Howell form of the generators' symplectic vectors."""
        return self.solver.form

    @property
    def order_mod_phase(self) -> int:
        """Number of distinct symplectic vectors in the group."""
        return module_size(self.echelon, self.qudit_dim)

    def __len__(self) -> int:
        return len(self.generators)

    # -- queries --------------------------------------------------------------

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(
            symplectic_form(gens[i], gens[j]) == 0
            for i in range(len(gens))
            for j in range(i + 1, len(gens))
        )

    @cached_property
    def _scalar_step(self) -> int:
        d = self.qudit_dim
        n = self.num_sites
        phases = [power(g, d).phase_exp for g in self.generators]
        for combo in self.solver.kernel:
            phases.append(_product(self.generators, combo, n, d).phase_exp)
        return reduce(gcd, phases, 2 * d)

    def scalar_content(self) -> frozenset[int]:
        """Phase exponents c such that ``w^(c/2) I`` lies in the group.

        Scalars arise from integer combinations of generators whose symplectic
        parts cancel mod d; those are spanned by the Z_d kernel lifts together
        with the d-th powers of the generators.  The map to phases is a
        homomorphism on an abelian group, so the image is the subgroup of
        Z_2d generated by the images of that spanning set.
        """
        if self.includes_all_phases:
            return frozenset(range(2 * self.qudit_dim))
        if not self.is_abelian():
            raise NonAbelianGroup("scalar content is defined here for abelian groups only")
        step = self._scalar_step
        return frozenset(range(0, 2 * self.qudit_dim, step))

    def contains_vector(self, vec) -> bool:
        return in_row_module(self.echelon, vec, self.qudit_dim)

    def member(self, g: PauliOperator) -> bool:
        if g.qudit_dim != self.qudit_dim or g.num_sites != self.num_sites:
            raise DimensionMismatch("operator and group live in different Pauli groups")
        coeffs = self.solver.solve(g.vector)
        if coeffs is None:
            return False
        if self.includes_all_phases:
            return True
        if not self.is_abelian():
            raise NonAbelianGroup("phase-exact membership needs an abelian group")
        implied = _product(self.generators, coeffs, self.num_sites, self.qudit_dim)
        return (g.phase_exp - implied.phase_exp) % self._scalar_step == 0

    def is_redundant(self, g: PauliOperator) -> bool:
        """True if adding g would not enlarge the group."""
        if self.solver.solve(g.vector) is None:
            return False
        if self.includes_all_phases:
            return True
        if not self.is_abelian() or not all(symplectic_form(g, h) == 0 for h in self.generators):
            return False
        return self.member(g)

    def centralizes(self, g: PauliOperator) -> bool:
        """Whether g commutes with every generator, i.e. lies in N(S) = Z(S)."""
        return all(symplectic_form(g, s) == 0 for s in self.generators)

    def coset_count(self) -> int:
        """Index of N(S) in the Pauli group.

        Equals the number of distinct syndromes, which by duality of the
        symplectic pairing on Z_d^2n is the size of the row module of S.
        """
        return self.order_mod_phase

    def elements(self, limit: int = 1 << 20) -> list[PauliOperator]:
        """All elements, by closure under the generators (phase-exact groups only)."""
        if self.includes_all_phases:
            raise ValueError("enumeration is only offered for phase-exact groups")
        ident = PauliOperator.identity(self.num_sites, self.qudit_dim)
        seen = {ident.vector.tobytes(): ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for h in frontier:
                for g in self.generators:
                    p = multiply(h, g)
                    key = p.vector.tobytes()
                    if key in seen:
                        if seen[key].phase_exp != p.phase_exp:
                            raise ValueError("group contains a nontrivial scalar")
                        continue
                    seen[key] = p
                    nxt.append(p)
                    if len(seen) > limit:
                        raise ValueError(f"group larger than enumeration limit {limit}")
            frontier = nxt
        return list(seen.values())


def is_abelian(group: PauliSubgroup) -> bool:
    return group.is_abelian()


def scalar_content(group: PauliSubgroup) -> frozenset[int]:
    return group.scalar_content()


def centralizes(g: PauliOperator, group: PauliSubgroup) -> bool:
    return group.centralizes(g)


def member(g: PauliOperator, group: PauliSubgroup) -> bool:
    return group.member(g)


def same_coset(g1: PauliOperator, g2: PauliOperator, group: PauliSubgroup) -> bool:
    """Whether g1 and g2 lie in the same coset of N(group)."""
    return group.centralizes(multiply(inverse(g1), g2))


def coset_count(group: PauliSubgroup) -> int:
    return group.coset_count()


def span_size(ops: Sequence[PauliOperator], num_sites: int, qudit_dim: int) -> int:
    """Number of distinct symplectic vectors spanned by ``ops``."""
    if not ops:
        return 1
    mat = np.array([g.vector for g in ops], dtype=np.int64)
    return module_size(howell_form(mat, qudit_dim), qudit_dim)


def syndrome_matrix(generators: Sequence[PauliOperator]) -> np.ndarray:
    """Matrix A with ``A @ (x | z) = syndrome`` mod d.

    Row j is ``(z_j | -x_j)`` so that entry j is ``symplectic_form(S_j, E)``.
    """
    rows = [np.array(s.z_exp + tuple(-a for a in s.x_exp), dtype=np.int64) for s in generators]
    n = generators[0].num_sites if generators else 0
    return np.array(rows, dtype=np.int64).reshape(len(rows), 2 * n)


def solve_syndrome(
    generators: Sequence[PauliOperator],
    target: Sequence[int],
    kind: str | None = None,
) -> PauliOperator:
    """A Pauli whose syndrome against ``generators`` equals ``target``.

    ``kind`` restricts the solution to X-type (``"x"``) or Z-type (``"z"``)
    operators.  Free variables are set to zero, so the zero target returns
    the identity.  Not weight-minimal.
    """
    if not generators:
        raise ValueError("need at least one generator")
    if len(target) != len(generators):
        raise ValueError(f"target has length {len(target)}, expected {len(generators)}")
    d = generators[0].qudit_dim
    n = generators[0].num_sites
    a_t = syndrome_matrix(generators).T  # rows indexed by (x_1..x_n, z_1..z_n)
    if kind is None:
        cols = np.arange(2 * n)
    elif kind == "x":
        cols = np.arange(n)
    elif kind == "z":
        cols = np.arange(n, 2 * n)
    else:
        raise ValueError(f"kind must be None, 'x' or 'z', got {kind!r}")
    solver = RowSolver.build(a_t[cols], d)
    sol = solver.solve(np.asarray(target, dtype=np.int64))
    if sol is None:
        raise UnsolvableSyndrome(f"no {kind or 'Pauli'} operator has syndrome {tuple(target)}")
    vec = np.zeros(2 * n, dtype=np.int64)
    vec[cols] = sol
    return PauliOperator.from_vector(vec.tolist(), d)
