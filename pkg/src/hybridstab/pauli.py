"""Phase-exact n-qudit Pauli group elements in symplectic coordinates.

An element is stored as ``(c, a, b)`` and denotes

    w^(c/2) * X_1^a_1 Z_1^b_1 * ... * X_n^a_n Z_n^b_n,     w = exp(2 pi i / d),

with ``c`` taken modulo 2d so that the square root of w is representable for
every local dimension.  For qubits ``w^(1/2) = i`` and ``c`` is the usual power
of i.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class DimensionMismatch(ValueError):
    """Operands live in different Pauli groups."""


@dataclass(frozen=True)
class PauliOperator:
    qudit_dim: int
    phase_exp: int
    x_exp: tuple[int, ...]
    z_exp: tuple[int, ...]

    def __post_init__(self):
        d = self.qudit_dim
        if d < 2:
            raise ValueError(f"qudit dimension must be >= 2, got {d}")
        if len(self.x_exp) != len(self.z_exp) or not self.x_exp:
            raise ValueError("x and z exponent vectors must be non-empty and of equal length")
        object.__setattr__(self, "phase_exp", int(self.phase_exp) % (2 * d))
        object.__setattr__(self, "x_exp", tuple(int(a) % d for a in self.x_exp))
        object.__setattr__(self, "z_exp", tuple(int(b) % d for b in self.z_exp))

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, num_sites: int, qudit_dim: int = 2) -> PauliOperator:
        return cls(qudit_dim, 0, (0,) * num_sites, (0,) * num_sites)

    @classmethod
    def from_vector(cls, vec: Sequence[int], qudit_dim: int = 2, phase_exp: int = 0) -> PauliOperator:
        """Build from a symplectic vector ``(a_1..a_n, b_1..b_n)``."""
        n = len(vec) // 2
        return cls(qudit_dim, phase_exp, tuple(vec[:n]), tuple(vec[n:]))

    @classmethod
    def single(cls, num_sites: int, site: int, x: int = 0, z: int = 0, qudit_dim: int = 2) -> PauliOperator:
        """``X^x Z^z`` on one site (0-based), identity elsewhere."""
        xs = [0] * num_sites
        zs = [0] * num_sites
        xs[site] = x
        zs[site] = z
        return cls(qudit_dim, 0, tuple(xs), tuple(zs))

    @classmethod
    def from_sites(
        cls,
        num_sites: int,
        x_sites: Iterable[int] = (),
        z_sites: Iterable[int] = (),
        qudit_dim: int = 2,
    ) -> PauliOperator:
        """Product of X on ``x_sites`` and Z on ``z_sites`` in canonical order, phase 0."""
        xs = [0] * num_sites
        zs = [0] * num_sites
        for j in x_sites:
            xs[j] += 1
        for j in z_sites:
            zs[j] += 1
        return cls(qudit_dim, 0, tuple(xs), tuple(zs))

    @classmethod
    def parse(cls, text: str, qudit_dim: int = 2) -> PauliOperator:
        return parse_pauli(text, qudit_dim)

    # -- basic properties ---------------------------------------------------

    @property
    def num_sites(self) -> int:
        return len(self.x_exp)

    @property
    def vector(self) -> np.ndarray:
        """Symplectic vector ``(x_exp | z_exp)`` as an int64 array."""
        return np.array(self.x_exp + self.z_exp, dtype=np.int64)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(j for j, (a, b) in enumerate(zip(self.x_exp, self.z_exp)) if a or b)

    def with_phase(self, phase_exp: int) -> PauliOperator:
        return PauliOperator(self.qudit_dim, phase_exp, self.x_exp, self.z_exp)

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        return multiply(self, other)

    def __pow__(self, k: int) -> PauliOperator:
        return power(self, k)

    def __str__(self) -> str:
        return format_pauli(self)


def _check(g: PauliOperator, h: PauliOperator) -> None:
    if g.qudit_dim != h.qudit_dim or g.num_sites != h.num_sites:
        raise DimensionMismatch(
            f"cannot combine d={g.qudit_dim}, n={g.num_sites} with d={h.qudit_dim}, n={h.num_sites}"
        )


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(p * q for p, q in zip(u, v))


def multiply(g: PauliOperator, h: PauliOperator) -> PauliOperator:
    """Group product ``g h`` normal ordered as X^a Z^b per site.

    Moving ``Z^b`` of g past ``X^a'`` of h costs ``w^(b a')``, i.e. two half
    powers per unit of the dot product.
    """
    _check(g, h)
    d = g.qudit_dim
    return PauliOperator(
        d,
        g.phase_exp + h.phase_exp + 2 * _dot(g.z_exp, h.x_exp),
        tuple(a + a2 for a, a2 in zip(g.x_exp, h.x_exp)),
        tuple(b + b2 for b, b2 in zip(g.z_exp, h.z_exp)),
    )


def inverse(g: PauliOperator) -> PauliOperator:
    return PauliOperator(
        g.qudit_dim,
        -g.phase_exp + 2 * _dot(g.x_exp, g.z_exp),
        tuple(-a for a in g.x_exp),
        tuple(-b for b in g.z_exp),
    )


def power(g: PauliOperator, k: int) -> PauliOperator:
    """``g**k`` for any integer k (negative powers via the inverse)."""
    if k < 0:
        g, k = inverse(g), -k
    result = PauliOperator.identity(g.num_sites, g.qudit_dim)
    base = g
    while k:
        if k & 1:
            result = multiply(result, base)
        base = multiply(base, base)
        k >>= 1
    return result


def symplectic_form(g: PauliOperator, h: PauliOperator) -> int:
    """The exponent e in ``g h = w^e h g``, reduced mod d."""
    _check(g, h)
    return (_dot(g.z_exp, h.x_exp) - _dot(g.x_exp, h.z_exp)) % g.qudit_dim


def commutes(g: PauliOperator, h: PauliOperator) -> bool:
    return symplectic_form(g, h) == 0


def conjugate(g: PauliOperator, h: PauliOperator) -> PauliOperator:
    """``g h g^-1``: same exponents as h, phase shifted by ``w^symplectic_form(g, h)``."""
    e = symplectic_form(g, h)
    return h.with_phase(h.phase_exp + 2 * e)


def weight(g: PauliOperator) -> int:
    return sum(1 for a, b in zip(g.x_exp, g.z_exp) if a or b)


def is_scalar(g: PauliOperator) -> bool:
    return not any(g.x_exp) and not any(g.z_exp)


def hermitian_phase(g: PauliOperator) -> PauliOperator:
    """For qubits, the phase choice making g Hermitian with a ``+1`` string token.

    Every Y site contributes one factor of i; other dimensions get phase 0.
    """
    if g.qudit_dim != 2:
        return g.with_phase(0)
    return g.with_phase(_dot(g.x_exp, g.z_exp))


# -- text serialization -------------------------------------------------------

_QUBIT_PHASES = {"+1": 0, "+i": 1, "-1": 2, "-i": 3}
_QUBIT_TOKENS = {v: k for k, v in _QUBIT_PHASES.items()}
_QUBIT_LETTERS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_PHASE_RE = re.compile(r"^w\^(-?\d+)/2$")
_SITE_RE = re.compile(r"^(?:x(\d+))?(?:z(\d+))?$")


def format_pauli(g: PauliOperator) -> str:
    """Canonical text form.

    Qubits: optional phase token (omitted for +1) then a string over IXYZ,
    where ``Y = i X Z``.  Other d: ``w^c/2`` then dot-separated ``x<a>z<b>``
    site tokens, ``i`` for identity sites.
    """
    if g.qudit_dim == 2:
        letters = []
        ys = 0
        for a, b in zip(g.x_exp, g.z_exp):
            if a and b:
                letters.append("Y")
                ys += 1
            else:
                letters.append("X" if a else "Z" if b else "I")
        token = (g.phase_exp - ys) % 4
        body = "".join(letters)
        return body if token == 0 else f"{_QUBIT_TOKENS[token]} {body}"
    sites = [
        "i" if not (a or b) else f"x{a}z{b}"
        for a, b in zip(g.x_exp, g.z_exp)
    ]
    return f"w^{g.phase_exp}/2 " + ".".join(sites)


def parse_pauli(text: str, qudit_dim: int = 2) -> PauliOperator:
    """Inverse of :func:`format_pauli`; the phase token is optional in both forms."""
    parts = text.split()
    if not parts or len(parts) > 2:
        raise ValueError(f"cannot parse Pauli operator from {text!r}")
    body = parts[-1]
    phase_tok = parts[0] if len(parts) == 2 else None
    d = qudit_dim

    if d == 2 and re.fullmatch(r"[IXYZ]+", body):
        if phase_tok is not None and phase_tok not in _QUBIT_PHASES:
            raise ValueError(f"bad qubit phase token {phase_tok!r}")
        c = _QUBIT_PHASES[phase_tok] if phase_tok else 0
        xs, zs = [], []
        for ch in body:
            a, b = _QUBIT_LETTERS[ch]
            xs.append(a)
            zs.append(b)
            c += a & b
        return PauliOperator(2, c, tuple(xs), tuple(zs))

    c = 0
    if phase_tok is not None:
        m = _PHASE_RE.match(phase_tok)
        if not m:
            raise ValueError(f"bad phase token {phase_tok!r}")
        c = int(m.group(1))
    xs, zs = [], []
    for tok in body.split("."):
        if tok == "i":
            xs.append(0)
            zs.append(0)
            continue
        m = _SITE_RE.match(tok)
        if not tok or not m:
            raise ValueError(f"bad site token {tok!r} in {text!r}")
        xs.append(int(m.group(1) or 0))
        zs.append(int(m.group(2) or 0))
    return PauliOperator(d, c, tuple(xs), tuple(zs))
