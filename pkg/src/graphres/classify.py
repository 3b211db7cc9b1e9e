"""Connected graphs up to eight nodes, grouped into local-complementation classes.

Two graphs share a class when one can be reached from the other by a sequence
of local complementations and a relabeling. Graph states in one class are
related by local unitaries, so every member has the same gamma.

Classes are numbered in ascending (L, edge count, canonical label) order of
their representatives, and the representative of a class is its member with
the fewest edges (ties broken by canonical label).
"""

from __future__ import annotations

import csv
import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterator

from graphres.certify import ResourceReport, certify
from graphres.correlator import DirectionVector, maximize
from graphres.errors import AtlasError, CapabilityError, ConsistencyError, DomainError
from graphres.graph import CanonicalGraph, Graph, canonical_code, canonical_form, lc_masks
from graphres.graphio import from_graph6, to_graph6
from graphres.state import graph_state

MAX_CLASSIFY_NODES = 8
EXPECTED_TOTAL_L8 = 146
ATLAS_FORMAT = "graphres-atlas"
ATLAS_VERSION = 1
CSV_COLUMNS = ("class_id", "L", "edges", "orbit_size", "gamma", "entanglement_depth", "bell_depth", "qfi_bound")


@dataclass(frozen=True)
class LuClass:
    class_id: int
    qubit_count: int
    representative: CanonicalGraph
    orbit_size: int
    gamma: float
    E: float
    kappa_star: DirectionVector
    report: ResourceReport
    members: tuple[bytes, ...] = field(default=(), repr=False)


@dataclass(frozen=True)
class ClassDatabase:
    max_L: int
    classes: tuple[LuClass, ...]
    per_L_counts: dict[int, int]
    variant_resolutions: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.per_L_counts.values())

    def for_size(self, L: int) -> list[LuClass]:
        return [c for c in self.classes if c.qubit_count == L]


# --------------------------------------------------------------------------
# enumeration


def _relabel(masks: tuple[int, ...], order: tuple[int, ...]) -> tuple[int, ...]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    out = [0] * len(order)
    for v, m in enumerate(masks):
        acc = 0
        bits = m
        while bits:
            low = bits & -bits
            acc |= 1 << pos[low.bit_length() - 1]
            bits ^= low
        out[pos[v]] = acc
    return tuple(out)


def _edge_count(masks: tuple[int, ...]) -> int:
    return sum(m.bit_count() for m in masks) // 2


@lru_cache(maxsize=None)
def _iso_classes(L: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """(code, canonical masks) for every connected graph on L nodes, sorted."""
    if L == 1:
        return ((0, (0,)),)
    seen: dict[int, tuple[int, ...]] = {}
    new_bit = 1 << (L - 1)
    # Every connected graph has a vertex whose removal leaves it connected, so
    # attaching a new vertex to every connected (L-1)-graph reaches all classes.
    for _, base in _iso_classes(L - 1):
        for subset in range(1, 1 << (L - 1)):
            masks = [m | new_bit if subset >> i & 1 else m for i, m in enumerate(base)]
            masks.append(subset)
            code, order = canonical_code(masks)
            if code not in seen:
                seen[code] = _relabel(tuple(masks), order)
    return tuple(sorted(seen.items(), key=lambda kv: (_edge_count(kv[1]), kv[0])))


def _check_L(L: int, low: int = 2) -> None:
    if not low <= L <= MAX_CLASSIFY_NODES:
        raise CapabilityError(f"supported node counts are {low}..{MAX_CLASSIFY_NODES}, got {L}")


def _canonical(masks: tuple[int, ...]) -> CanonicalGraph:
    g = Graph.from_masks(masks)
    return CanonicalGraph(g, to_graph6(g).encode("ascii"))


def enumerate_connected(L: int) -> Iterator[CanonicalGraph]:
    """One canonical representative per isomorphism class of connected L-node graphs."""
    _check_L(L)
    for _, masks in _iso_classes(L):
        yield _canonical(masks)


def lc_orbit(G: Graph) -> frozenset[CanonicalGraph]:
    """All non-isomorphic graphs reachable from G by local complementations."""
    _check_L(G.node_count, low=1)
    start = canonical_form(G)
    seen = {start.canonical_label: start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for v in range(1, cur.node_count + 1):
            nxt = canonical_form(Graph.from_masks(lc_masks(cur.graph.masks, v - 1)))
            if nxt.canonical_label not in seen:
                seen[nxt.canonical_label] = nxt
                queue.append(nxt)
    return frozenset(seen.values())


def _lc_partition(L: int) -> list[list[int]]:
    """Group indices of ``_iso_classes(L)`` into local-complementation orbits."""
    members = _iso_classes(L)
    index = {code: i for i, (code, _) in enumerate(members)}
    parent = list(range(len(members)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, (_, masks) in enumerate(members):
        for v in range(L):
            code, _ = canonical_code(lc_masks(masks, v))
            a, b = find(i), find(index[code])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for i in range(len(members)):
        groups.setdefault(find(i), []).append(i)
    # members are pre-sorted by (edges, code), so group[0] is the representative
    return sorted(groups.values(), key=lambda g: g[0])


# --------------------------------------------------------------------------
# classification


def classify(L_max: int, *, verify_orbits: bool = False, sample: int = 5,
             resolutions: bool = True, progress: Callable[[str], None] | None = None) -> ClassDatabase:
    """Partition connected graphs with 2..L_max nodes into LC classes.

    Gamma is computed on each representative and re-checked on the first
    ``sample`` members of its orbit, or on every member with ``verify_orbits``.
    A mismatch raises ConsistencyError.
    """
    _check_L(L_max)
    pending = []
    counts: dict[int, int] = {}
    for L in range(2, L_max + 1):
        members = _iso_classes(L)
        groups = _lc_partition(L)
        counts[L] = len(groups)
        if progress:
            progress(f"L={L}: {len(members)} connected graphs, {len(groups)} classes")
        for group in groups:
            rep_masks = members[group[0]][1]
            result = maximize(graph_state(Graph.from_masks(rep_masks)))
            checks = group if verify_orbits else group[:min(len(group), sample)]
            for i in checks[1:]:
                other = maximize(graph_state(Graph.from_masks(members[i][1]))).E
                if other != result.E:
                    raise ConsistencyError(
                        f"gamma differs inside an LC orbit at L={L}: representative "
                        f"{to_graph6(Graph.from_masks(rep_masks))} has E={result.E}, member "
                        f"{to_graph6(Graph.from_masks(members[i][1]))} has E={other}")
            labels = tuple(_canonical(members[i][1]).canonical_label for i in group)
            pending.append((L, _canonical(rep_masks), len(group), result, labels))

    pending.sort(key=lambda row: row[1].sort_key())
    classes = tuple(
        LuClass(
            class_id=cid,
            qubit_count=L,
            representative=rep,
            orbit_size=size,
            gamma=result.gamma,
            E=result.E,
            kappa_star=result.kappa_star,
            report=certify(result.gamma, L),
            members=labels,
        )
        for cid, (L, rep, size, result, labels) in enumerate(pending, start=1)
    )
    res = {}
    if resolutions:
        from graphres.formulas import resolve_variants

        res = resolve_variants()
    return ClassDatabase(L_max, classes, counts, res)


# --------------------------------------------------------------------------
# persistence


def _class_to_dict(c: LuClass) -> dict:
    return {
        "class_id": c.class_id,
        "L": c.qubit_count,
        "representative": c.representative.canonical_label.decode("ascii"),
        "edges": c.representative.edge_count,
        "orbit_size": c.orbit_size,
        "gamma": c.gamma,
        "E": c.E,
        "kappa_star": str(c.kappa_star),
        "report": c.report.to_dict(),
        "members": [m.decode("ascii") for m in c.members],
    }


def atlas_to_dict(db: ClassDatabase) -> dict:
    return {
        "format": ATLAS_FORMAT,
        "version": ATLAS_VERSION,
        "max_L": db.max_L,
        "ordering": "ascending (L, edge count, canonical graph6 label of the representative)",
        "per_L_counts": {str(L): n for L, n in sorted(db.per_L_counts.items())},
        "total": db.total,
        "variant_resolutions": db.variant_resolutions,
        "classes": [_class_to_dict(c) for c in db.classes],
    }


def save_atlas(db: ClassDatabase, path: str | Path) -> None:
    Path(path).write_text(json.dumps(atlas_to_dict(db), indent=1) + "\n")


def atlas_from_dict(data: dict) -> ClassDatabase:
    if not isinstance(data, dict) or data.get("format") != ATLAS_FORMAT:
        raise AtlasError("not a graphres atlas")
    if data.get("version") != ATLAS_VERSION:
        raise AtlasError(f"atlas version {data.get('version')!r} is not supported (expected {ATLAS_VERSION})")
    try:
        classes = []
        for row in data["classes"]:
            g = from_graph6(row["representative"])
            if g.node_count != row["L"] or g.edge_count != row["edges"]:
                raise AtlasError(f"class {row['class_id']}: representative does not match L/edges")
            classes.append(LuClass(
                class_id=int(row["class_id"]),
                qubit_count=int(row["L"]),
                representative=CanonicalGraph(g, row["representative"].encode("ascii")),
                orbit_size=int(row["orbit_size"]),
                gamma=float(row["gamma"]),
                E=float(row["E"]),
                kappa_star=DirectionVector.parse(row["kappa_star"]),
                report=ResourceReport.from_dict(row["report"]),
                members=tuple(m.encode("ascii") for m in row["members"]),
            ))
        counts = {int(L): int(n) for L, n in data["per_L_counts"].items()}
        db = ClassDatabase(int(data["max_L"]), tuple(classes), counts, data["variant_resolutions"])
    except AtlasError:
        raise
    except (KeyError, TypeError, ValueError, DomainError) as exc:
        raise AtlasError(f"malformed atlas: {exc!r}") from exc
    if db.total != len(db.classes) or data.get("total") != db.total:
        raise AtlasError("class count does not match per-L totals")
    return db


def load_atlas(path: str | Path) -> ClassDatabase:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AtlasError(f"atlas is not valid JSON: {exc}") from exc
    return atlas_from_dict(data)


def export_csv(db: ClassDatabase, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for c in db.classes:
            w.writerow([c.class_id, c.qubit_count, c.representative.edge_count, c.orbit_size,
                        _plain(c.gamma), c.report.entanglement_depth, c.report.bell_depth,
                        _plain(c.report.qfi_lower_bound)])


def _plain(x: float):
    return int(x) if float(x).is_integer() else x
