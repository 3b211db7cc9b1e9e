"""Reading and writing graphs as graph6, DOT or whitespace edge lists."""

from __future__ import annotations

import re

from graphres.errors import DomainError, ParseError
from graphres.graph import Graph

FORMATS = ("graph6", "dot", "edges")

_G6_HEADER = ">>graph6<<"


# --------------------------------------------------------------------------
# graph6


def _g6_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise DomainError(f"graph6 cannot encode {n} nodes")


def to_graph6(G: Graph) -> str:
    n = G.node_count
    masks = G.masks
    bits = [masks[i] >> j & 1 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = []
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        body.append(chr(v + 63))
    return _g6_size(n) + "".join(body)


def from_graph6(text: str) -> Graph:
    src = text
    s = text.strip()
    offset = text.find(s) if s else 0
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
        offset += len(_G6_HEADER)
    if not s:
        raise ParseError("empty graph6 string", offset, src)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"invalid graph6 character {ch!r}", offset + i, src)
    if s[0] == "~":
        if len(s) >= 2 and s[1] == "~":
            raise ParseError("graph6 sizes above 258047 are not supported", offset + 1, src)
        if len(s) < 4:
            raise ParseError("truncated graph6 size field", offset + len(s), src)
        n = 0
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        pos = 4
    else:
        n = ord(s[0]) - 63
        pos = 1
    if n < 1:
        raise ParseError("graph6 graph must have at least one node", offset, src)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[pos:]
    if len(body) != need:
        raise ParseError(f"graph6 body has {len(body)} characters, expected {need}",
                         offset + pos + min(len(body), need), src)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            c = ord(body[k // 6]) - 63
            if c >> (5 - k % 6) & 1:
                edges.append((i + 1, j + 1))
            k += 1
    return Graph(n, frozenset(edges))


# --------------------------------------------------------------------------
# edge list


def to_edge_list(G: Graph) -> str:
    lines = [f"# nodes: {G.node_count}"]
    lines += [f"{k} {l}" for k, l in G.sorted_edges()]
    return "\n".join(lines) + "\n"


_NODES_DIRECTIVE = re.compile(r"#\s*nodes\s*:\s*(\d+)\s*$")


def from_edge_list(text: str) -> Graph:
    """One ``k l`` pair per line, 1-based. ``#`` starts a comment.

    A ``# nodes: N`` comment fixes the node count; otherwise it is the largest
    endpoint seen.
    """
    declared = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    offset = 0
    for line in text.splitlines(keepends=True):
        start = offset
        offset += len(line)
        stripped = line.strip()
        m = _NODES_DIRECTIVE.match(stripped)
        if m:
            declared = int(m.group(1))
            continue
        content = line.split("#", 1)[0]
        if not content.strip():
            continue
        tokens = [(t.group(), start + t.start()) for t in re.finditer(r"\S+", content)]
        if len(tokens) != 2:
            pos = tokens[2][1] if len(tokens) > 2 else start + len(content.rstrip())
            raise ParseError(f"expected two node ids per line, got {len(tokens)}", pos, text)
        ends = []
        for tok, pos in tokens:
            if not tok.isdigit() or int(tok) < 1:
                raise ParseError(f"node id {tok!r} is not a positive integer", pos, text)
            ends.append(int(tok))
        k, l = ends
        if k == l:
            raise ParseError(f"self-loop at node {k}", tokens[0][1], text)
        pair = (min(k, l), max(k, l))
        if pair in seen:
            raise ParseError(f"duplicate edge {pair}", tokens[0][1], text)
        seen.add(pair)
        edges.append(pair)
    top = max((l for _, l in edges), default=0)
    if declared is None:
        if top == 0:
            raise ParseError("edge list contains no edges and no '# nodes:' line", 0, text)
        declared = top
    if declared < max(top, 1):
        raise ParseError(f"'# nodes: {declared}' is smaller than node id {top}", 0, text)
    return Graph(declared, frozenset(edges))


# --------------------------------------------------------------------------
# DOT


def to_dot(G: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(1, G.node_count + 1)]
    lines += [f"  {k} -- {l};" for k, l in G.sorted_edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>//[^\n]*|\#[^\n]*|/\*.*?\*/)
  | (?P<edgeop>--|->)
  | (?P<punct>[{}\[\];,=:])
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<id>[A-Za-z_0-9.\-]+)
    """,
    re.VERBOSE | re.DOTALL,
)


def _dot_tokens(text: str):
    pos = 0
    while pos < len(text):
        m = _DOT_TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            value = m.group()
            if kind == "string":
                value = value[1:-1]
                kind = "id"
            yield kind, value, pos
        pos = m.end()
    yield "eof", "", len(text)


def from_dot(text: str) -> Graph:
    """Parse an undirected DOT graph.

    Node ids that are all positive integers are used as 1-based labels; any
    other ids are numbered in order of first appearance. Attributes, subgraph
    names and graph-level settings are ignored.
    """
    toks = list(_dot_tokens(text))
    i = 0

    def peek():
        return toks[i]

    def take(kind=None, value=None):
        nonlocal i
        tok = toks[i]
        if (kind and tok[0] != kind) or (value and tok[1].lower() != value):
            want = value or kind
            raise ParseError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2], text)
        i += 1
        return tok

    if peek()[0] == "id" and peek()[1].lower() == "strict":
        take()
    head = peek()
    if head[0] == "id" and head[1].lower() == "digraph":
        raise ParseError("directed graphs are not supported", head[2], text)
    take("id", "graph")
    if peek()[0] == "id":
        take()
    take("punct", "{")

    order: list[str] = []
    seen_ids: set[str] = set()
    raw_edges: list[tuple[str, str, int]] = []

    def note(node: str) -> None:
        if node not in seen_ids:
            seen_ids.add(node)
            order.append(node)

    def skip_attrs() -> None:
        while peek()[1] == "[":
            depth = 0
            while True:
                kind, val, pos = take()
                if kind == "eof":
                    raise ParseError("unterminated attribute list", pos, text)
                if val == "[":
                    depth += 1
                elif val == "]":
                    depth -= 1
                    if depth == 0:
                        break

    while True:
        kind, val, pos = peek()
        if kind == "eof":
            raise ParseError("missing closing '}'", pos, text)
        if val == "}":
            take()
            break
        if val in (";", ","):
            take()
            continue
        if kind == "edgeop":
            raise ParseError("edge operator without a source node", pos, text)
        if kind != "id":
            raise ParseError(f"unexpected token {val!r}", pos, text)
        if val.lower() in ("node", "edge", "graph") and toks[i + 1][1] == "[":
            take()
            skip_attrs()
            continue
        take()
        if peek()[1] == "=":
            take()
            take("id")
            continue
        chain = [(val, pos)]
        while peek()[0] == "edgeop":
            op = take()
            if op[1] == "->":
                raise ParseError("directed edge '->' in an undirected graph", op[2], text)
            chain.append(take("id")[1:])
        for node, _ in chain:
            note(node)
        for (a, pa), (b, _) in zip(chain, chain[1:]):
            raw_edges.append((a, b, pa))
        skip_attrs()

    tail = peek()
    if tail[0] != "eof":
        raise ParseError(f"trailing content after graph: {tail[1]!r}", tail[2], text)
    if not order:
        raise ParseError("graph has no nodes", 0, text)

    if all(n.isdigit() and int(n) >= 1 for n in order):
        index = {n: int(n) for n in order}
        L = max(index.values())
    else:
        index = {n: k for k, n in enumerate(order, start=1)}
        L = len(order)
    edges: set[tuple[int, int]] = set()
    for a, b, pos in raw_edges:
        k, l = index[a], index[b]
        if k == l:
            raise ParseError(f"self-loop at node {a}", pos, text)
        pair = (min(k, l), max(k, l))
        if pair in edges:
            raise ParseError(f"duplicate edge {a} -- {b}", pos, text)
        edges.add(pair)
    return Graph(L, frozenset(edges))


# --------------------------------------------------------------------------


def serialize_graph(G: Graph, fmt: str) -> str:
    if fmt == "graph6":
        return to_graph6(G) + "\n"
    if fmt == "dot":
        return to_dot(G)
    if fmt == "edges":
        return to_edge_list(G)
    raise DomainError(f"unknown graph format {fmt!r}; expected one of {FORMATS}")


def parse_graph(text: str, fmt: str | None = None) -> Graph:
    """Parse ``text`` in the given format, or sniff it when ``fmt`` is None."""
    if fmt is None:
        fmt = sniff_format(text)
    if fmt == "graph6":
        return from_graph6(text)
    if fmt == "dot":
        return from_dot(text)
    if fmt == "edges":
        return from_edge_list(text)
    raise DomainError(f"unknown graph format {fmt!r}; expected one of {FORMATS}")


def sniff_format(text: str) -> str:
    s = text.lstrip()
    low = s[:16].lower()
    if low.startswith(("graph", "strict", "digraph")) or s.startswith("{"):
        return "dot"
    if s.startswith(_G6_HEADER):
        return "graph6"
    first = s.splitlines()[0].strip() if s else ""
    if first and " " not in first and not first.startswith("#") and not first.isdigit():
        return "graph6"
    return "edges"


def format_from_path(path: str) -> str | None:
    low = path.lower()
    if low.endswith((".g6", ".graph6")):
        return "graph6"
    if low.endswith((".dot", ".gv")):
        return "dot"
    if low.endswith((".edges", ".txt", ".el")):
        return "edges"
    return None
