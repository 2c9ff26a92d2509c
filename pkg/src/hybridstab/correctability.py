"""Group-theoretic correctability of Pauli error sets for hybrid codes.

A set {E_k} is correctable for C(S, G0, L0, {g_i}) iff no product
E_k^-1 E_l lies in the forbidden set

    (N(S) \\ G)  union  (union over i != j of g_i N(S) g_j^-1).

Membership in N(S) depends only on the syndrome, and g_i^-1 E g_j lies in
N(S) iff syndrome(E) = syndrome(g_i) - syndrome(g_j), so the cross terms
reduce to a lookup of syndrome differences.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .codes import HybridCode
from .pauli import DimensionMismatch, PauliOperator, inverse, multiply, symplectic_form


class Tag(NamedTuple):
    """Which part of the forbidden set an operator hits.

    ``kind`` is ``"normalizer_minus_gauge"`` (i, j unused) or ``"cross_coset"``
    for the set g_i N(S) g_j^-1 with 0-based sector indices.
    """

    kind: str
    i: int | None = None
    j: int | None = None

    def __str__(self) -> str:
        if self.kind == "cross_coset":
            return f"cross_coset({self.i},{self.j})"
        return self.kind


NORMALIZER_MINUS_GAUGE = Tag("normalizer_minus_gauge")


@dataclass(frozen=True)
class Witness:
    k: int
    l: int
    tag: Tag


@dataclass(frozen=True)
class CorrectabilityReport:
    correctable: bool
    witness: Witness | None
    per_sector: tuple[bool, ...]

    @property
    def verdict(self) -> str:
        return "correctable" if self.correctable else "not_correctable"


class _ForbiddenSet:
    """Precomputed lookup tables for one code."""

    def __init__(self, code: HybridCode):
        self.code = code
        syns = code.transversal_syndromes
        d = code.qudit_dim
        cross: dict[tuple[int, ...], list[tuple[int, int]]] = {}
        for i, j in itertools.permutations(range(len(syns)), 2):
            diff = tuple((a - b) % d for a, b in zip(syns[i], syns[j]))
            cross.setdefault(diff, []).append((i, j))
        self.cross = cross
        self.zero = tuple([0] * code.s)

    def in_normalizer_minus_gauge(self, e: PauliOperator, syn: tuple[int, ...]) -> bool:
        if syn != self.zero:
            return False
        code = self.code
        if code.gauge_is_logical_complement:
            return any(symplectic_form(e, l) for l in code.logical_ops)
        return not code.gauge_group.member(e)

    def tags(self, e: PauliOperator) -> list[Tag]:
        syn = self.code.syndrome(e)
        out = []
        if self.in_normalizer_minus_gauge(e, syn):
            out.append(NORMALIZER_MINUS_GAUGE)
        out.extend(Tag("cross_coset", i, j) for i, j in self.cross.get(syn, ()))
        return out


def _forbidden(code: HybridCode) -> _ForbiddenSet:
    # cached on the (immutable) code instance
    cache = code.__dict__.get("_forbidden_cache")
    if cache is None:
        cache = _ForbiddenSet(code)
        code.__dict__["_forbidden_cache"] = cache
    return cache


def forbidden_set_membership(code: HybridCode, e: PauliOperator) -> set[Tag]:
    """Every part of the forbidden set that contains ``e``."""
    return set(_forbidden(code).tags(e))


def check_errors(code: HybridCode, errors: Sequence[PauliOperator]) -> CorrectabilityReport:
    """Decide correctability of ``errors`` for ``code``.

    Unordered pairs k < l are tested: the forbidden set is closed under
    inverses up to swapping the sector pair, and E_k^-1 E_k = I is never
    forbidden for a validated code.  The witness is the first failing pair
    in (k, l) order, preferring the N(S) \\ G tag, then the lowest (i, j).
    """
    if not errors:
        raise ValueError("error set must be non-empty")
    for e in errors:
        if e.qudit_dim != code.qudit_dim or e.num_sites != code.num_sites:
            raise DimensionMismatch("error and code live in different Pauli groups")
    code.require_valid()
    fs = _forbidden(code)

    witness = None
    normalizer_hit = False
    for k, l in itertools.combinations(range(len(errors)), 2):
        e = multiply(inverse(errors[k]), errors[l])
        tags = fs.tags(e)
        if not tags:
            continue
        if NORMALIZER_MINUS_GAUGE in tags:
            normalizer_hit = True
        if witness is None:
            witness = Witness(k, l, min(tags, key=lambda t: (t.kind != NORMALIZER_MINUS_GAUGE.kind, t.i or 0, t.j or 0)))
        if normalizer_hit:
            break
    # g (N(S) \ G) g^-1 = N(S) \ G, so every sector sees the same verdict
    per_sector = tuple(not normalizer_hit for _ in code.transversal)
    return CorrectabilityReport(witness is None, witness, per_sector)
