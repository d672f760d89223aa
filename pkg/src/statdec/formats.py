"""Versioned text file formats: instances, pools, reports, curve CSVs.

All formats are line-oriented, self-describing (magic + version on the
first line), and refuse unknown versions.  Bit vectors are hex encoded
little-endian per byte: bit i of the vector is bit (i mod 8) of byte
floor(i / 8).  Byte-level examples live in docs/formats.md.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .bitmat import BitMatrix, BitVector
from .codec import CodeInstance, DecodingProblem
from .errors import FormatError, PoolMismatch
from .harvest import HarvestProvenance, ParityPool

INSTANCE_MAGIC = "statdec-instance"
POOL_MAGIC = "statdec-pool"
INSTANCE_VERSION = 1
POOL_VERSION = 1


def bitvector_to_hex(v: BitVector) -> str:
    nbytes = (v.n + 7) // 8
    return v.bits.to_bytes(nbytes, "little").hex()


def hex_to_bitvector(n: int, text: str) -> BitVector:
    nbytes = (n + 7) // 8
    try:
        raw = bytes.fromhex(text)
    except ValueError as exc:
        raise FormatError(f"bad hex field: {text!r}") from exc
    if len(raw) != nbytes:
        raise FormatError(f"hex field has {len(raw)} bytes, expected {nbytes}")
    bits = int.from_bytes(raw, "little")
    if bits >> n:
        raise FormatError("hex field has bits beyond the declared length")
    return BitVector(n, bits)


def _parse_header_line(line: str, expected_key: str) -> str:
    parts = line.split(None, 1)
    if len(parts) != 2 or parts[0] != expected_key:
        raise FormatError(f"expected '{expected_key} <value>', got {line!r}")
    return parts[1].strip()


def _check_magic(first_line: str, magic: str, supported_version: int) -> None:
    parts = first_line.split()
    if len(parts) != 2 or parts[0] != magic or not parts[1].startswith("v"):
        raise FormatError(f"not a {magic} file: {first_line!r}")
    try:
        version = int(parts[1][1:])
    except ValueError as exc:
        raise FormatError(f"bad version field {parts[1]!r}") from exc
    if version != supported_version:
        raise FormatError(f"unsupported {magic} version {version}")


def write_instance(path: str | Path, problem: DecodingProblem, include_hidden: bool = True) -> None:
    """Write a decoding instance; hidden fields go to an optional trailer so
    honest benchmark files can omit them."""
    code = problem.code
    lines = [f"{INSTANCE_MAGIC} v{INSTANCE_VERSION}",
             f"n {code.n}",
             f"k {code.k}",
             f"t {problem.t}",
             f"seed {code.seed}"]
    for i in range(code.k):
        lines.append(f"G {bitvector_to_hex(code.G.row(i))}")
    lines.append(f"y {bitvector_to_hex(problem.y)}")
    if include_hidden and problem.hidden_e is not None:
        lines.append("hidden")
        lines.append(f"e {bitvector_to_hex(problem.hidden_e)}")
        lines.append(f"x {bitvector_to_hex(problem.hidden_x)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def read_instance(path: str | Path) -> DecodingProblem:
    text = Path(path).read_text(encoding="ascii")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty instance file")
    _check_magic(lines[0], INSTANCE_MAGIC, INSTANCE_VERSION)
    try:
        n = int(_parse_header_line(lines[1], "n"))
        k = int(_parse_header_line(lines[2], "k"))
        t = int(_parse_header_line(lines[3], "t"))
        seed = int(_parse_header_line(lines[4], "seed"))
    except (IndexError, ValueError) as exc:
        raise FormatError(f"bad instance header: {exc}") from exc
    body = lines[5:]
    if len(body) < k + 1:
        raise FormatError("instance file truncated")
    rows = []
    for i in range(k):
        rows.append(hex_to_bitvector(n, _parse_header_line(body[i], "G")).bits)
    G = BitMatrix(k, n, tuple(rows))
    y = hex_to_bitvector(n, _parse_header_line(body[k], "y"))
    code = CodeInstance(n, k, G, seed)
    hidden_e = hidden_x = None
    rest = body[k + 1:]
    if rest:
        if rest[0].strip() != "hidden" or len(rest) != 3:
            raise FormatError("malformed hidden trailer")
        hidden_e = hex_to_bitvector(n, _parse_header_line(rest[1], "e"))
        hidden_x = hex_to_bitvector(k, _parse_header_line(rest[2], "x"))
    return DecodingProblem(code, t, y, hidden_e=hidden_e, hidden_x=hidden_x)


def pool_checksum(hex_lines: list[str]) -> str:
    """SHA-256 over the sorted equation lines; stable under merge order."""
    payload = "\n".join(sorted(hex_lines)) + "\n"
    return hashlib.sha256(payload.encode("ascii")).hexdigest()


def write_pool(path: str | Path, pool: ParityPool) -> None:
    code = pool.code
    w_lo, w_hi = pool.weight_window
    eq_lines = [bitvector_to_hex(h) for h in pool.equations()]
    lines = [f"{POOL_MAGIC} v{POOL_VERSION}",
             f"n {code.n}",
             f"k {code.k}",
             f"code_seed {code.seed}",
             f"algorithm {pool.provenance.algorithm}",
             f"harvest_seed {pool.provenance.seed}",
             f"iterations {pool.provenance.iterations}",
             f"w_lo {w_lo}",
             f"w_hi {w_hi}",
             f"count {len(eq_lines)}"]
    lines.extend(f"h {h}" for h in eq_lines)
    lines.append(f"checksum {pool_checksum(eq_lines)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def read_pool(path: str | Path, code: CodeInstance) -> ParityPool:
    """Load a pool and re-verify it: header/code match, checksum over the
    equation list, and dual-word soundness of every equation (enforced by
    the pool's insert path)."""
    text = Path(path).read_text(encoding="ascii")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty pool file")
    _check_magic(lines[0], POOL_MAGIC, POOL_VERSION)
    try:
        n = int(_parse_header_line(lines[1], "n"))
        k = int(_parse_header_line(lines[2], "k"))
        code_seed = int(_parse_header_line(lines[3], "code_seed"))
        algorithm = _parse_header_line(lines[4], "algorithm")
        harvest_seed = int(_parse_header_line(lines[5], "harvest_seed"))
        iterations = int(_parse_header_line(lines[6], "iterations"))
        w_lo = int(_parse_header_line(lines[7], "w_lo"))
        w_hi = int(_parse_header_line(lines[8], "w_hi"))
        count = int(_parse_header_line(lines[9], "count"))
    except (IndexError, ValueError) as exc:
        raise FormatError(f"bad pool header: {exc}") from exc
    if (n, k, code_seed) != (code.n, code.k, code.seed):
        raise PoolMismatch(
            f"pool is for [n={n}, k={k}, seed={code_seed}], "
            f"instance is [n={code.n}, k={code.k}, seed={code.seed}]")
    body = lines[10:]
    if len(body) != count + 1:
        raise FormatError(f"pool body has {len(body) - 1} equations, header says {count}")
    hex_lines = [_parse_header_line(ln, "h") for ln in body[:count]]
    declared = _parse_header_line(body[count], "checksum")
    actual = pool_checksum(hex_lines)
    if declared != actual:
        raise FormatError("pool checksum mismatch (file corrupted or tampered)")
    pool = ParityPool(code, (w_lo, w_hi),
                      HarvestProvenance(algorithm, harvest_seed, iterations, {"loaded": True}))
    for hx in hex_lines:
        pool.add(hex_to_bitvector(n, hx))
    return pool


def format_sig12(value: float) -> str:
    """Fixed 12-significant-digit decimal rendering used by all CSVs."""
    if value != value:  # NaN
        return "nan"
    return format(value, ".12g")


def write_csv(path: str | Path, columns: tuple[str, ...], rows) -> None:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(format_sig12(float(v)) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def write_report(path: str | Path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="ascii")


def read_report(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="ascii"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad report JSON: {exc}") from exc
