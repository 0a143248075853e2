"""graph6 text codec for simple graphs on up to 62 vertices.

One graph per line; the encoding is bit-exact, so encode(decode(s)) == s
for well-formed canonical input and decode(encode(g)) reproduces g.
Malformed input fails loudly with the byte offset.
"""

from __future__ import annotations

from .graphs import Graph, GraphError


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)


def decode_graph6(text: str) -> Graph:
    s = text.strip()
    if not s:
        raise Graph6Error("empty graph6 string", 0)
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = s.encode("ascii", errors="strict")
    if data[0] == 126:  # '~' starts the multi-byte size tiers
        raise Graph6Error("graph6 size tier above 62 vertices not supported", 0)
    n = data[0] - 63
    if not 0 <= n <= 62:
        raise Graph6Error(f"bad vertex count byte {chr(data[0])!r}", 0)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - 1 != nbytes:
        raise Graph6Error(
            f"expected {nbytes} data bytes for n={n}, got {len(data) - 1}", len(data)
        )
    bits = []
    for k, byte in enumerate(data[1:], start=1):
        if not 63 <= byte <= 126:
            raise Graph6Error(f"byte {chr(byte)!r} out of graph6 range", k)
        val = byte - 63
        bits.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    for k in range(nbits, len(bits)):
        if bits[k]:
            raise Graph6Error("non-canonical padding bits", 1 + k // 6)
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Graph(range(n), edges)


def encode_graph6(g: Graph) -> str:
    if not g.is_simple():
        raise GraphError("graph6 encodes simple graphs only")
    n = g.n
    if n > 62:
        raise Graph6Error("graph6 size tier above 62 vertices not supported")
    index = {v: i for i, v in enumerate(g.vertices)}
    present = {(min(index[e.u], index[e.v]), max(index[e.u], index[e.v])) for e in g.edges}
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if (i, j) in present else 0)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(63 + n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        out.append(chr(63 + val))
    return "".join(out)


def iter_graph6_lines(lines):
    """Yield (line_number, graph or Graph6Error) for each non-blank line."""
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            yield lineno, decode_graph6(line)
        except (Graph6Error, UnicodeEncodeError) as exc:
            yield lineno, Graph6Error(f"line {lineno}: {exc}", getattr(exc, "offset", None))
