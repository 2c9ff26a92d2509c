"""Hybrid stabilizer codes C(S, G0, L0, T0) and the standard families."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .groups import PauliSubgroup, solve_syndrome, span_size, syndrome_matrix
from .modular import howell_form, in_row_module, module_size
from .pauli import (
    DimensionMismatch,
    PauliOperator,
    hermitian_phase,
    is_scalar,
    multiply,
    power,
    symplectic_form,
)

Pair = tuple[PauliOperator, PauliOperator]


class NotCSS(ValueError):
    pass


class InvalidCode(ValueError):
    """Raised when an operation needs a code that passes :func:`validate`."""


# -- classical linear codes ---------------------------------------------------


@dataclass(frozen=True)
class LinearCode:
    """Classical linear code over Z_d given by generator matrix rows."""

    generator: np.ndarray
    qudit_dim: int = 2
    name: str = ""

    @property
    def length(self) -> int:
        return self.generator.shape[1]

    @property
    def num_rows(self) -> int:
        return self.generator.shape[0]

    def codewords(self) -> np.ndarray:
        d = self.qudit_dim
        if self.num_rows > 20:
            raise ValueError("codeword enumeration limited to 20 generator rows")
        coeffs = np.array(list(itertools.product(range(d), repeat=self.num_rows)), dtype=np.int64)
        words = (coeffs.reshape(-1, self.num_rows) @ self.generator) % d
        return np.unique(words, axis=0)

    def min_distance(self) -> int | None:
        """Minimum nonzero codeword weight; None for the zero code."""
        words = self.codewords()
        weights = np.count_nonzero(words, axis=1)
        weights = weights[weights > 0]
        return int(weights.min()) if len(weights) else None

    def dimension(self) -> int:
        """log_d of the number of codewords (exact for prime d)."""
        size = module_size(howell_form(self.generator, self.qudit_dim), self.qudit_dim)
        return round(np.log(size) / np.log(self.qudit_dim))


HAMMING_743 = np.array(
    [
        [1, 1, 1, 0, 0, 0, 0],
        [1, 0, 0, 1, 1, 0, 0],
        [0, 1, 0, 1, 0, 1, 0],
        [1, 1, 0, 1, 0, 0, 1],
    ],
    dtype=np.int64,
)


def classical_code(name: str, length: int | None = None, qudit_dim: int = 2) -> LinearCode:
    """Registry lookup: ``rep<k>``, ``hamming743`` or ``none`` (zero code of given length)."""
    if name == "hamming743":
        return LinearCode(HAMMING_743.copy(), 2, name)
    if name.startswith("rep") and name[3:].isdigit():
        k = int(name[3:])
        return LinearCode(np.ones((1, k), dtype=np.int64), qudit_dim, name)
    if name in ("none", "zero"):
        if length is None:
            raise ValueError("the zero code needs an explicit length")
        return LinearCode(np.zeros((0, length), dtype=np.int64), qudit_dim, "none")
    raise ValueError(f"unknown classical code {name!r}")


def read_generator_matrix(text: str, qudit_dim: int = 2, name: str = "") -> LinearCode:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append([int(tok) for tok in line.split()])
    if not rows:
        raise ValueError("generator matrix file has no rows")
    if len({len(r) for r in rows}) != 1:
        raise ValueError("generator matrix rows have different lengths")
    return LinearCode(np.array(rows, dtype=np.int64) % qudit_dim, qudit_dim, name)


# -- hybrid codes -------------------------------------------------------------


@dataclass(frozen=True)
class ValidationFailure:
    check: str
    message: str
    operators: tuple[PauliOperator, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple[ValidationFailure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class HybridCode:
    """A code C(S, G0, L0, T0).

    ``gauge_pairs`` and ``logical_pairs`` hold the anticommuting generator
    pairs of G0 and L0; ``transversal`` lists the sector representatives
    T0, starting with the identity.
    """

    stabilizer: PauliSubgroup
    gauge_pairs: tuple[Pair, ...] = ()
    logical_pairs: tuple[Pair, ...] = ()
    transversal: tuple[PauliOperator, ...] = ()
    name: str = field(default="", compare=False)

    @classmethod
    def create(
        cls,
        stabilizers: Sequence[PauliOperator],
        gauge_pairs: Sequence[Pair] = (),
        logical_pairs: Sequence[Pair] = (),
        transversal: Sequence[PauliOperator] | None = None,
        num_sites: int | None = None,
        qudit_dim: int | None = None,
        name: str = "",
    ) -> HybridCode:
        ops = list(stabilizers) + [p for pair in (*gauge_pairs, *logical_pairs) for p in pair]
        ops += list(transversal or ())
        if ops:
            num_sites = ops[0].num_sites
            qudit_dim = ops[0].qudit_dim
        if num_sites is None or qudit_dim is None:
            raise ValueError("cannot infer code dimensions from empty input")
        for op in ops:
            if op.num_sites != num_sites or op.qudit_dim != qudit_dim:
                raise DimensionMismatch("code operators live in different Pauli groups")
        stab = PauliSubgroup.from_generators(
            stabilizers, includes_all_phases=False, num_sites=num_sites, qudit_dim=qudit_dim
        )
        if transversal is None:
            transversal = [PauliOperator.identity(num_sites, qudit_dim)]
        return cls(
            stab,
            tuple((a, b) for a, b in gauge_pairs),
            tuple((a, b) for a, b in logical_pairs),
            tuple(transversal),
            name,
        )

    def with_transversal(self, transversal: Sequence[PauliOperator]) -> HybridCode:
        return HybridCode(self.stabilizer, self.gauge_pairs, self.logical_pairs, tuple(transversal), self.name)

    # -- parameters -----------------------------------------------------------

    @property
    def qudit_dim(self) -> int:
        return self.stabilizer.qudit_dim

    @property
    def num_sites(self) -> int:
        return self.stabilizer.num_sites

    @property
    def stabilizer_generators(self) -> tuple[PauliOperator, ...]:
        return self.stabilizer.generators

    @property
    def s(self) -> int:
        return len(self.stabilizer.generators)

    @property
    def r(self) -> int:
        return len(self.gauge_pairs)

    @property
    def k(self) -> int:
        return len(self.logical_pairs)

    @property
    def sector_count(self) -> int:
        return len(self.transversal)

    @property
    def gauge_ops(self) -> tuple[PauliOperator, ...]:
        return tuple(p for pair in self.gauge_pairs for p in pair)

    @property
    def logical_ops(self) -> tuple[PauliOperator, ...]:
        return tuple(p for pair in self.logical_pairs for p in pair)

    @cached_property
    def gauge_group(self) -> PauliSubgroup:
        """G = <S, sqrt(w) I, G0>, membership modulo phase."""
        return PauliSubgroup.from_generators(
            self.stabilizer_generators + self.gauge_ops,
            includes_all_phases=True,
            num_sites=self.num_sites,
            qudit_dim=self.qudit_dim,
            warn=False,
        )

    @cached_property
    def logical_group(self) -> PauliSubgroup:
        return PauliSubgroup.from_generators(
            self.logical_ops,
            includes_all_phases=True,
            num_sites=self.num_sites,
            qudit_dim=self.qudit_dim,
            warn=False,
        )

    @cached_property
    def syndrome_matrix(self) -> np.ndarray:
        return syndrome_matrix(self.stabilizer_generators)

    def syndrome(self, e: PauliOperator) -> tuple[int, ...]:
        if e.qudit_dim != self.qudit_dim or e.num_sites != self.num_sites:
            raise DimensionMismatch("error and code live in different Pauli groups")
        if not self.s:
            return ()
        return tuple(int(v) for v in (self.syndrome_matrix @ e.vector) % self.qudit_dim)

    @cached_property
    def transversal_syndromes(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.syndrome(g) for g in self.transversal)

    @cached_property
    def gauge_is_logical_complement(self) -> bool:
        """Whether span(S, G0) is exactly the symplectic complement of span(S, L0).

        When true, an element of N(S) lies in G iff it commutes with all of L0.
        """
        d, n = self.qudit_dim, self.num_sites
        sg = span_size(self.stabilizer_generators + self.gauge_ops, n, d)
        sl = span_size(self.stabilizer_generators + self.logical_ops, n, d)
        return sg * sl == d ** (2 * n)

    @cached_property
    def validation(self) -> ValidationReport:
        return validate(self)

    def require_valid(self) -> None:
        if not self.validation.ok:
            details = "; ".join(f"{f.check}: {f.message}" for f in self.validation.failures)
            raise InvalidCode(f"code failed validation: {details}")

    def hybrid_parameters(self, distance: int | None = None) -> str:
        """``[[n, k:m, d']]`` where m = log_d(sectors) when that is integral."""
        m = np.log(self.sector_count) / np.log(self.qudit_dim)
        m_txt = str(round(m)) if abs(m - round(m)) < 1e-9 else f"log{self.qudit_dim}({self.sector_count})"
        d_txt = "?" if distance is None else str(distance)
        return f"[[{self.num_sites}, {self.k}:{m_txt}, {d_txt}]]"


def validate(code: HybridCode) -> ValidationReport:
    """Check every structural condition on C(S, G0, L0, T0).

    Covers: S abelian with trivial scalar content; G0 and L0 inside N(S) and
    mutually commuting; each pair anticommuting, distinct pairs commuting;
    minimality of G0 and L0; N(S) generated by S, phases, G0 and L0; T0
    starting at the identity with pairwise distinct cosets.
    """
    fails: list[ValidationFailure] = []
    d, n = code.qudit_dim, code.num_sites
    stab = code.stabilizer
    gens = stab.generators

    for a, b in itertools.combinations(gens, 2):
        if symplectic_form(a, b):
            fails.append(ValidationFailure("stabilizer_abelian", "stabilizer generators do not commute", (a, b)))
    if not any(f.check == "stabilizer_abelian" for f in fails):
        content = stab.scalar_content()
        if content != frozenset({0}):
            fails.append(
                ValidationFailure(
                    "stabilizer_scalars",
                    f"stabilizer group contains scalar phases {sorted(content)}",
                )
            )

    gauge, logical = code.gauge_ops, code.logical_ops
    for op in gauge + logical:
        if not stab.centralizes(op):
            fails.append(ValidationFailure("normalizer", "operator does not commute with S", (op,)))
    for g in gauge:
        for l in logical:
            if symplectic_form(g, l):
                fails.append(ValidationFailure("gauge_logical_commute", "gauge and logical operators do not commute", (g, l)))

    for label, pairs in (("gauge", code.gauge_pairs), ("logical", code.logical_pairs)):
        for a, b in pairs:
            if not symplectic_form(a, b):
                fails.append(ValidationFailure(f"{label}_pair", "pair members commute", (a, b)))
        for (a1, b1), (a2, b2) in itertools.combinations(pairs, 2):
            for p, q in itertools.product((a1, b1), (a2, b2)):
                if symplectic_form(p, q):
                    fails.append(ValidationFailure(f"{label}_pair", "distinct pairs do not commute", (p, q)))

    extras = gauge + logical
    full_size = span_size(gens + extras, n, d)
    for idx, op in enumerate(extras):
        others = gens + extras[:idx] + extras[idx + 1 :]
        if span_size(others, n, d) == full_size:
            fails.append(ValidationFailure("minimality", "generator is a product of the others", (op,)))

    if full_size * stab.order_mod_phase != d ** (2 * n):
        fails.append(
            ValidationFailure(
                "normalizer_generated",
                "S, phases, G0 and L0 do not generate the whole normalizer",
            )
        )

    if not code.transversal:
        fails.append(ValidationFailure("transversal", "transversal is empty"))
    else:
        first = code.transversal[0]
        if not is_scalar(first) or first.phase_exp:
            fails.append(ValidationFailure("transversal", "first representative must be the identity", (first,)))
        seen: dict[tuple[int, ...], int] = {}
        for idx, syn in enumerate(code.transversal_syndromes):
            if syn in seen:
                fails.append(
                    ValidationFailure(
                        "transversal",
                        f"representatives {seen[syn]} and {idx} lie in the same coset",
                        (code.transversal[seen[syn]], code.transversal[idx]),
                    )
                )
            else:
                seen[syn] = idx
    return ValidationReport(tuple(fails))


def syndrome(code: HybridCode, e: PauliOperator) -> tuple[int, ...]:
    """Entry j is ``symplectic_form(S_j, e)``, i.e. ``S_j e = w^entry e S_j``."""
    return code.syndrome(e)


def css_split(code: HybridCode) -> tuple[list[int], list[int]]:
    """Indices of the X-type and Z-type stabilizer generators."""
    xs, zs = [], []
    for idx, g in enumerate(code.stabilizer_generators):
        if not any(g.z_exp):
            xs.append(idx)
        elif not any(g.x_exp):
            zs.append(idx)
        else:
            raise NotCSS(f"stabilizer generator {g} mixes X and Z")
    return xs, zs


def symplectic_pairs(ops: Sequence[PauliOperator], modulo: Sequence[PauliOperator] = ()) -> list[Pair]:
    """Reduce ``ops`` to anticommuting pairs that commute across pairs.

    Symplectic Gram-Schmidt over a prime field, working modulo the span of
    ``modulo`` (typically the stabilizer).  Operators that end up inside that
    span are discarded; an operator without any partner is an error since it
    would enlarge the center.
    """
    if not ops:
        return []
    d, n = ops[0].qudit_dim, ops[0].num_sites
    work = list(ops)
    pairs: list[Pair] = []
    base = list(modulo)
    while work:
        span = howell_form(np.array([g.vector for g in base], dtype=np.int64).reshape(-1, 2 * n), d)
        a = work.pop(0)
        if in_row_module(span, a.vector, d):
            continue
        partner = next((i for i, b in enumerate(work) if symplectic_form(a, b)), None)
        if partner is None:
            raise ValueError(f"operator {a} commutes with every remaining operator modulo the base group")
        b = work.pop(partner)
        b = power(b, pow(symplectic_form(a, b), -1, d))  # now symplectic_form(a, b) == 1
        reduced = []
        for c in work:
            alpha = symplectic_form(b, c)
            beta = -symplectic_form(a, c)
            reduced.append(multiply(multiply(c, power(a, alpha)), power(b, beta)))
        work = reduced
        a, b = hermitian_phase(a), hermitian_phase(b)
        pairs.append((a, b))
        base += [a, b]
    return pairs


def _sorted_by_syndrome(code_stabs: Sequence[PauliOperator], reps: Iterable[PauliOperator]) -> list[PauliOperator]:
    mat = syndrome_matrix(code_stabs)
    d = code_stabs[0].qudit_dim if code_stabs else 2
    uniq: dict[tuple[int, ...], PauliOperator] = {}
    for g in reps:
        key = tuple(int(v) for v in (mat @ g.vector) % d)
        uniq.setdefault(key, g)
    return [uniq[key] for key in sorted(uniq)]


# -- families -----------------------------------------------------------------


def build_motivating(n: int, s: int, r: int, d: int = 2, sectors: int | None = None) -> HybridCode:
    """S = <Z_1..Z_s>, gauge qudits s+1..s+r, logical qudits after that.

    The transversal is {X_1^a_1 ... X_s^a_s} in lexicographic syndrome order,
    truncated to the first ``sectors`` entries when given.
    """
    if not (0 <= s <= n and 0 <= r <= n - s and n >= 1):
        raise ValueError(f"need 0 <= s <= n and 0 <= r <= n - s, got n={n}, s={s}, r={r}")
    single = PauliOperator.single
    stabs = [single(n, j, z=1, qudit_dim=d) for j in range(s)]
    gauge = [(single(n, j, x=1, qudit_dim=d), single(n, j, z=1, qudit_dim=d)) for j in range(s, s + r)]
    logical = [(single(n, j, x=1, qudit_dim=d), single(n, j, z=1, qudit_dim=d)) for j in range(s + r, n)]
    reps = [
        PauliOperator(d, 0, tuple(a) + (0,) * (n - s), (0,) * n)
        for a in itertools.product(range(d), repeat=s)
    ]
    if sectors is not None:
        reps = reps[:sectors]
    return HybridCode.create(stabs, gauge, logical, reps, n, d, name=f"motivating(n={n},s={s},r={r},d={d})")


def bacon_shor_site(ell: int, i: int, j: int) -> int:
    """0-based index of grid site (i, j), both 1-based, in row-major order."""
    return (i - 1) * ell + (j - 1)


def build_bacon_shor(ell: int) -> HybridCode:
    """Bacon-Shor subsystem code on an ell x ell grid, T0 = {I}.

    X-type stabilizers come first: columns j and j+1 all X; then Z-type:
    rows i and i+1 all Z.  Gauge pairs are extracted from the two-body XX
    (horizontal) and ZZ (vertical) operators.
    """
    if ell < 2:
        raise ValueError("Bacon-Shor needs ell >= 2")
    n = ell * ell
    site = lambda i, j: bacon_shor_site(ell, i, j)  # noqa: E731
    col = lambda j: [site(i, j) for i in range(1, ell + 1)]  # noqa: E731
    row = lambda i: [site(i, j) for j in range(1, ell + 1)]  # noqa: E731
    x_stabs = [PauliOperator.from_sites(n, x_sites=col(j) + col(j + 1)) for j in range(1, ell)]
    z_stabs = [PauliOperator.from_sites(n, z_sites=row(i) + row(i + 1)) for i in range(1, ell)]
    raw_gauge = [
        PauliOperator.from_sites(n, x_sites=[site(i, j), site(i, j + 1)])
        for i in range(1, ell + 1)
        for j in range(1, ell)
    ] + [
        PauliOperator.from_sites(n, z_sites=[site(i, j), site(i + 1, j)])
        for i in range(1, ell)
        for j in range(1, ell + 1)
    ]
    stabs = x_stabs + z_stabs
    gauge = symplectic_pairs(raw_gauge, modulo=stabs)
    logical = [(PauliOperator.from_sites(n, x_sites=col(1)), PauliOperator.from_sites(n, z_sites=row(1)))]
    return HybridCode.create(stabs, gauge, logical, None, n, 2, name=f"bacon-shor({ell})")


def hybridize_css(code: HybridCode, cx: LinearCode, cz: LinearCode) -> HybridCode:
    """Extend T0 to the group generated by representatives of the classical codewords.

    Each row v of ``cx`` gets a Z-type operator with X-syndrome v and zero
    Z-syndrome; each row w of ``cz`` an X-type operator with Z-syndrome w.
    The full group they generate becomes the transversal, sorted by syndrome.
    """
    xs, zs = css_split(code)
    if cx.length != len(xs) or cz.length != len(zs):
        raise ValueError(
            f"classical code lengths ({cx.length}, {cz.length}) must match "
            f"the X/Z generator counts ({len(xs)}, {len(zs)})"
        )
    d, n = code.qudit_dim, code.num_sites
    gens = code.stabilizer_generators
    reps = []
    for v in cx.generator:
        target = np.zeros(len(gens), dtype=np.int64)
        target[xs] = v
        reps.append(solve_syndrome(gens, target, kind="z"))
    for w in cz.generator:
        target = np.zeros(len(gens), dtype=np.int64)
        target[zs] = w
        reps.append(solve_syndrome(gens, target, kind="x"))
    elements = []
    for coeffs in itertools.product(range(d), repeat=len(reps)):
        g = PauliOperator.identity(n, d)
        for h, c in zip(reps, coeffs):
            g = multiply(g, power(h, c))
        elements.append(hermitian_phase(g))
    transversal = _sorted_by_syndrome(gens, elements)
    name = f"{code.name}+css({cx.name or 'cx'},{cz.name or 'cz'})"
    return HybridCode(code.stabilizer, code.gauge_pairs, code.logical_pairs, tuple(transversal), name)


def gkp18_transversal() -> list[PauliOperator]:
    """The nine operators X^a Z^b with |a|, |b| <= 1 at d = 18."""
    return [PauliOperator(18, 0, (a,), (b,)) for a in (0, 1, -1) for b in (0, 1, -1)]


def build_gkp18(transversal: Sequence[PauliOperator] | None = None) -> HybridCode:
    """d = 18 single-site code S = <X^6, Z^6>, logical pair (X^3, Z^3).

    Default sectors are {I, X, X^-1}.
    """
    d = 18
    x = lambda a: PauliOperator(d, 0, (a,), (0,))  # noqa: E731
    z = lambda b: PauliOperator(d, 0, (0,), (b,))  # noqa: E731
    if transversal is None:
        transversal = [x(0), x(1), x(-1)]
    return HybridCode.create([x(6), z(6)], (), [(x(3), z(3))], transversal, 1, d, name="gkp18")


SEVEN_QUBIT_TABLE = {
    "stabilizers": ["XIIZYYZ", "ZIIIIIX", "IXIXZII", "IZIZIXX", "IIXXIZI", "IIZZXIX"],
    "logical": ("IIIXZZX", "IIIZXXI"),
    "translation": "IIIIXYY",
}


def build_seven_qubit_hybrid() -> HybridCode:
    """Seven-qubit hybrid subspace code with T0 = {I, T}."""
    p = lambda s: PauliOperator.parse(s, 2)  # noqa: E731
    stabs = [p(s) for s in SEVEN_QUBIT_TABLE["stabilizers"]]
    lx, lz = (p(s) for s in SEVEN_QUBIT_TABLE["logical"])
    t = p(SEVEN_QUBIT_TABLE["translation"])
    return HybridCode.create(stabs, (), [(lx, lz)], [PauliOperator.identity(7), t], name="seven-qubit")


def toric_stabilizers(ell: int) -> list[PauliOperator]:
    """Canonical independent generators of the [[ell^2, 2, ell]] toric code.

    Qubits sit on the vertices of an ell x ell torus (ell even); every face
    carries a four-body check, X-type on even faces and Z-type on odd faces.
    One check of each type is dependent and omitted, leaving ell^2 - 2.
    """
    if ell < 2 or ell % 2:
        raise ValueError("toric layout needs an even ell >= 2")
    n = ell * ell
    xs, zs = [], []
    for i in range(ell):
        for j in range(ell):
            corners = [((i + di) % ell) * ell + (j + dj) % ell for di in (0, 1) for dj in (0, 1)]
            if (i + j) % 2 == 0:
                xs.append(PauliOperator.from_sites(n, x_sites=corners))
            else:
                zs.append(PauliOperator.from_sites(n, z_sites=corners))
    return xs[:-1] + zs[:-1]
