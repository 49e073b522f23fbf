"""
Rotation system file formats
rot/1 text files and plantri planar_code binary streams, plus conversion
between them. Both formats list neighbours in clockwise order, so a
round trip preserves the embedding exactly.
"""

import logging
import struct
from pathlib import Path
from typing import Iterable, List, Optional, Tuple, Union

from census_errors import EmbeddingError, ParseError
from plane_graph import RotationSystem

logger = logging.getLogger(__name__)

ROT = "rot"
PLANAR_CODE = "planar_code"
FORMATS = (ROT, PLANAR_CODE)

PLANAR_CODE_HEADER = b">>planar_code<<"
PLANAR_CODE_HEADERS = {
    b">>planar_code<<": "<",
    b">>planar_code le<<": "<",
    b">>planar_code be<<": ">",
}

Rotations = Union[RotationSystem, List[List[int]]]


def _as_rs(rot: Rotations) -> RotationSystem:
    return rot if isinstance(rot, RotationSystem) else RotationSystem(rot)


# rot/1 text

def write_rot(rot: Rotations) -> str:
    """One rot/1 record: n, then `v: u1 u2 ...` per vertex"""
    rs = _as_rs(rot)
    lines = [str(rs.n)]
    lines.extend(f"{v}: {' '.join(map(str, rs.rot[v]))}" for v in range(rs.n))
    return "\n".join(lines) + "\n"


def read_rot_all(text: str) -> List[RotationSystem]:
    """
    Parse every rot/1 record in `text`. Blank lines and `#` comments are
    skipped; offsets in errors are byte offsets of the offending line.
    """
    entries: List[Tuple[int, str]] = []
    offset = 0
    for raw in text.splitlines(keepends=True):
        line = raw.split("#", 1)[0].strip()
        if line:
            entries.append((offset, line))
        offset += len(raw.encode("utf-8"))

    graphs = []
    i = 0
    while i < len(entries):
        start, head = entries[i]
        try:
            n = int(head)
        except ValueError:
            raise ParseError(f"expected a vertex count, got {head!r}", start) from None
        if n < 1:
            raise ParseError(f"vertex count must be positive, got {n}", start)
        if i + n >= len(entries):
            raise ParseError(f"record announces {n} vertices but the input ends early", start)

        rot = []
        for v in range(n):
            pos, line = entries[i + 1 + v]
            label, sep, rest = line.partition(":")
            if not sep:
                raise ParseError(f"expected `v: neighbours`, got {line!r}", pos)
            try:
                if int(label) != v:
                    raise ParseError(f"expected vertex {v}, got {label.strip()}", pos)
                rot.append([int(tok) for tok in rest.split()])
            except ValueError:
                raise ParseError(f"non-integer entry in {line!r}", pos) from None
        try:
            graphs.append(RotationSystem(rot))
        except EmbeddingError as exc:
            raise ParseError(f"record is not a rotation system: {exc}", start) from exc
        i += n + 1
    return graphs


def read_rot(text: str) -> RotationSystem:
    graphs = read_rot_all(text)
    if len(graphs) != 1:
        raise ParseError(f"expected exactly one rot/1 record, found {len(graphs)}")
    return graphs[0]


# plantri planar_code

def write_planar_code(rotations: Iterable[Rotations], header: bool = True) -> bytes:
    """
    Little-endian planar_code. Graphs with n >= 256 use the zero-byte escape
    and two-byte entries.
    """
    out = bytearray(PLANAR_CODE_HEADER if header else b"")
    for rot in rotations:
        rs = _as_rs(rot)
        if rs.n < 256:
            out.append(rs.n)
            for v in range(rs.n):
                out.extend(u + 1 for u in rs.rot[v])
                out.append(0)
        else:
            if rs.n > 0xFFFF:
                raise ValueError(f"planar_code cannot store n = {rs.n}")
            out.append(0)
            out.extend(struct.pack("<H", rs.n))
            for v in range(rs.n):
                out.extend(struct.pack(f"<{len(rs.rot[v]) + 1}H", *(u + 1 for u in rs.rot[v]), 0))
    return bytes(out)


def read_planar_code(data: bytes) -> List[RotationSystem]:
    """Decode a planar_code stream; the header is optional"""
    order = "<"
    pos = 0
    for header, endian in PLANAR_CODE_HEADERS.items():
        if data.startswith(header):
            order = endian
            pos = len(header)
            break

    graphs = []
    while pos < len(data):
        start = pos
        n = data[pos]
        pos += 1
        wide = n == 0
        if wide:
            if pos + 2 > len(data):
                raise ParseError("truncated vertex count", pos)
            (n,) = struct.unpack_from(f"{order}H", data, pos)
            pos += 2
        size = 2 if wide else 1

        rot: List[List[int]] = []
        for v in range(n):
            nbrs = []
            while True:
                if pos + size > len(data):
                    raise ParseError(f"stream ends inside vertex {v + 1} of a {n}-vertex graph", pos)
                if wide:
                    (entry,) = struct.unpack_from(f"{order}H", data, pos)
                else:
                    entry = data[pos]
                pos += size
                if entry == 0:
                    break
                if entry > n:
                    raise ParseError(f"neighbour {entry} out of range for n = {n}", pos - size)
                nbrs.append(entry - 1)
            rot.append(nbrs)
        try:
            graphs.append(RotationSystem(rot))
        except EmbeddingError as exc:
            raise ParseError(f"graph is not a rotation system: {exc}", start) from exc
    logger.debug("decoded %d graphs from %d bytes of planar_code", len(graphs), len(data))
    return graphs


# Files

def detect_format(path: Union[str, Path], data: Optional[bytes] = None) -> str:
    """planar_code if the stream starts with its header or the suffix says so, else rot"""
    path = Path(path)
    if data is not None and data.startswith(b">>planar_code"):
        return PLANAR_CODE
    if path.suffix in (".pc", ".plc", ".planar_code"):
        return PLANAR_CODE
    return ROT


def decode(data: bytes, fmt: str) -> List[RotationSystem]:
    if fmt == PLANAR_CODE:
        return read_planar_code(data)
    if fmt == ROT:
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("rot/1 input is not UTF-8 text", exc.start) from exc
        return read_rot_all(text)
    raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


def encode(rotations: Iterable[Rotations], fmt: str) -> bytes:
    if fmt == PLANAR_CODE:
        return write_planar_code(rotations)
    if fmt == ROT:
        return "\n".join(write_rot(rot) for rot in rotations).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


def load(path: Union[str, Path], fmt: Optional[str] = None) -> List[RotationSystem]:
    data = Path(path).read_bytes()
    return decode(data, fmt or detect_format(path, data))


def save(rotations: Iterable[Rotations], path: Union[str, Path], fmt: Optional[str] = None):
    Path(path).write_bytes(encode(rotations, fmt or detect_format(path)))


def convert(
    src: Union[str, Path],
    dst: Union[str, Path],
    from_fmt: Optional[str] = None,
    to_fmt: Optional[str] = None,
) -> int:
    """Re-encode every graph of src into dst; returns the number of graphs"""
    graphs = load(src, from_fmt)
    save(graphs, dst, to_fmt)
    logger.info("converted %d graphs %s -> %s", len(graphs), src, dst)
    return len(graphs)
