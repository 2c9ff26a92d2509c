"""Plain-text code definition files.

    # comments run to end of line
    name seven-qubit
    dim 2
    sites 7
    [stabilizers]
    XIIZYYZ
    [gauge]
    XXI, IZZ
    [logical]
    IIIXZZX, IIIZXXI
    [transversal]
    IIIIIII
    IIIIXYY

Operators use the text form of :func:`hybridstab.pauli.format_pauli`.
Gauge and logical lines hold one anticommuting pair separated by a comma.
The ``[transversal]`` section may be omitted, meaning T0 = {I}.
"""

from __future__ import annotations

import warnings

from .codes import HybridCode
from .pauli import PauliOperator, format_pauli, parse_pauli

SECTIONS = ("stabilizers", "gauge", "logical", "transversal")


class CodeFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<string>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_code(text: str, source: str = "<string>") -> HybridCode:
    header: dict[str, str] = {}
    body: dict[str, list[tuple[int, str]]] = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]") or line[1:-1].strip() not in SECTIONS:
                raise CodeFileError(f"unknown section {line!r}", lineno, source)
            section = line[1:-1].strip()
            if section in body:
                raise CodeFileError(f"section [{section}] appears twice", lineno, source)
            body[section] = []
            continue
        if section is None:
            key, _, value = line.partition(" ")
            if key not in ("name", "dim", "sites") or not value.strip():
                raise CodeFileError(f"expected 'name', 'dim' or 'sites' header, got {line!r}", lineno, source)
            header[key] = value.strip()
            continue
        body[section].append((lineno, line))

    for key in ("dim", "sites"):
        if key not in header:
            raise CodeFileError(f"missing '{key}' header", None, source)
    try:
        d, n = int(header["dim"]), int(header["sites"])
    except ValueError:
        raise CodeFileError("'dim' and 'sites' must be integers", None, source) from None
    if d < 2 or n < 1:
        raise CodeFileError(f"need dim >= 2 and sites >= 1, got dim={d}, sites={n}", None, source)

    def op(lineno: int, tok: str) -> PauliOperator:
        try:
            g = parse_pauli(tok.strip(), d)
        except ValueError as exc:
            raise CodeFileError(str(exc), lineno, source) from None
        if g.num_sites != n:
            raise CodeFileError(f"operator {tok.strip()!r} has {g.num_sites} sites, expected {n}", lineno, source)
        return g

    def pairs(name: str) -> list[tuple[PauliOperator, PauliOperator]]:
        out = []
        for lineno, line in body.get(name, []):
            parts = line.split(",")
            if len(parts) != 2:
                raise CodeFileError(f"[{name}] lines need two operators separated by ','", lineno, source)
            out.append((op(lineno, parts[0]), op(lineno, parts[1])))
        return out

    stabs = [op(ln, line) for ln, line in body.get("stabilizers", [])]
    transversal = [op(ln, line) for ln, line in body["transversal"]] if "transversal" in body else None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        code = HybridCode.create(stabs, pairs("gauge"), pairs("logical"), transversal, n, d, header.get("name", ""))
    if code.stabilizer.dropped:
        dropped = ", ".join(format_pauli(g) for g in code.stabilizer.dropped)
        warnings.warn(f"{source}: dropped redundant stabilizer generator(s): {dropped}", stacklevel=2)
    return code


def read_code(path: str) -> HybridCode:
    with open(path, encoding="utf-8") as fh:
        return parse_code(fh.read(), source=str(path))


def format_code(code: HybridCode) -> str:
    lines = []
    if code.name:
        lines.append(f"name {code.name}")
    lines += [f"dim {code.qudit_dim}", f"sites {code.num_sites}", "[stabilizers]"]
    lines += [format_pauli(g) for g in code.stabilizer_generators]
    lines.append("[gauge]")
    lines += [f"{format_pauli(a)}, {format_pauli(b)}" for a, b in code.gauge_pairs]
    lines.append("[logical]")
    lines += [f"{format_pauli(a)}, {format_pauli(b)}" for a, b in code.logical_pairs]
    lines.append("[transversal]")
    lines += [format_pauli(g) for g in code.transversal]
    return "\n".join(lines) + "\n"


def write_code(code: HybridCode, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_code(code))


def parse_errors(text: str, qudit_dim: int, num_sites: int, source: str = "<string>") -> list[PauliOperator]:
    """One operator per line; blank lines and comments are skipped."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        try:
            g = parse_pauli(line, qudit_dim)
        except ValueError as exc:
            raise CodeFileError(str(exc), lineno, source) from None
        if g.num_sites != num_sites:
            raise CodeFileError(f"operator has {g.num_sites} sites, expected {num_sites}", lineno, source)
        out.append(g)
    if not out:
        raise CodeFileError("error file lists no operators", None, source)
    return out


def read_errors(path: str, qudit_dim: int, num_sites: int) -> list[PauliOperator]:
    with open(path, encoding="utf-8") as fh:
        return parse_errors(fh.read(), qudit_dim, num_sites, source=str(path))
