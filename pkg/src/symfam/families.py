"""Entanglement families as integer partitions and their descent hierarchy.

A family is named by the multiplicity pattern of a constellation, i.e. an
integer partition of N written non-increasing.  Family D' descends from D
exactly when D' is a strict coarsening of D: the parts of D can be grouped
into disjoint blocks whose sums reproduce the parts of D'.  Covers of that
order merge exactly two parts, which drops the number of distinct points by
one per step, so the Hasse diagram layers by diversity degree.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._validation import DomainError

Partition = tuple[int, ...]


def canonical_partition(parts) -> Partition:
    """Sorted non-increasing tuple; validates positivity."""
    out = tuple(sorted((int(p) for p in parts), reverse=True))
    if not out:
        raise DomainError("partition must have at least one part")
    if out[-1] < 1:
        raise DomainError(f"partition parts must be positive, got {out}")
    return out


def parse_partition(text: str) -> Partition:
    """Parse a comma-separated part list such as "2,1,1" (any order)."""
    try:
        parts = [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise DomainError(f"cannot parse partition {text!r}") from None
    return canonical_partition(parts)


def format_partition(parts) -> str:
    return ",".join(str(p) for p in parts)


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n, canonical form, reverse-lexicographic order."""
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")

    def gen(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return list(gen(n, n))


def diversity(partition) -> int:
    """Number of parts: the count of distinct constellation points."""
    return len(canonical_partition(partition))


def descends(frm, to) -> bool:
    """True when `to` is a strict coarsening of `frm` (to lies at frm's boundary).

    Decided by exact backtracking: each part of `to` must be covered by a
    disjoint block of `frm`'s parts summing to it.
    """
    frm = canonical_partition(frm)
    to = canonical_partition(to)
    if sum(frm) != sum(to):
        raise DomainError(f"partitions of different totals: {frm} vs {to}")
    if frm == to:
        return False
    if len(to) >= len(frm):
        return False
    return _can_group(list(frm), list(to))


def _can_group(parts: list[int], targets: list[int]) -> bool:
    if not targets:
        return not parts
    target = targets[0]
    rest = targets[1:]

    def pick(start, remaining, chosen):
        if remaining == 0:
            leftover = [p for i, p in enumerate(parts) if i not in chosen]
            return _can_group(leftover, rest)
        prev = None
        for i in range(start, len(parts)):
            if i in chosen or parts[i] > remaining or parts[i] == prev:
                continue
            chosen.add(i)
            if pick(i + 1, remaining - parts[i], chosen):
                chosen.discard(i)
                return True
            chosen.discard(i)
            prev = parts[i]
        return False

    return pick(0, target, set())


def closure(partition) -> list[Partition]:
    """The family plus all its descendants, in enumeration order."""
    d = canonical_partition(partition)
    n = sum(d)
    return [p for p in enumerate_partitions(n) if p == d or descends(d, p)]


@dataclass(frozen=True)
class FamilyGraph:
    """Hasse diagram of the descent order: nodes and directed cover edges."""

    n_qubits: int
    nodes: tuple[Partition, ...]
    edges: tuple[tuple[Partition, Partition], ...]


def hasse_graph(n: int) -> FamilyGraph:
    """Cover edges: merge exactly two parts, deduplicated.

    This edge set equals the transitive reduction of `descends`: every merge
    drops the diversity degree by exactly one, so no merge edge can be a
    composite of two descents, and every cover is a single merge.
    """
    nodes = enumerate_partitions(n)
    order = {p: i for i, p in enumerate(nodes)}
    edges = []
    for src in nodes:
        seen = set()
        for i in range(len(src)):
            for j in range(i + 1, len(src)):
                merged = list(src[:i]) + list(src[i + 1 : j]) + list(src[j + 1 :])
                merged.append(src[i] + src[j])
                dst = canonical_partition(merged)
                if dst not in seen:
                    seen.add(dst)
                    edges.append((src, dst))
    edges.sort(key=lambda e: (order[e[0]], order[e[1]]))
    return FamilyGraph(n, tuple(nodes), tuple(edges))


def partition_label(partition) -> str:
    return "D_{" + ",".join(str(p) for p in partition) + "}"


def to_dot(graph: FamilyGraph) -> str:
    """Deterministic DOT digraph, one rank layer per diversity degree."""
    lines = [
        "digraph entanglement_families {",
        "  rankdir=TB;",
        "  node [shape=box];",
    ]
    layers: dict[int, list[Partition]] = {}
    for node in graph.nodes:
        layers.setdefault(len(node), []).append(node)
    for d in sorted(layers, reverse=True):
        names = " ".join(f'"{partition_label(p)}";' for p in layers[d])
        lines.append("  { rank=same; " + names + " }")
    for src, dst in graph.edges:
        lines.append(f'  "{partition_label(src)}" -> "{partition_label(dst)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def classify_pure(state, coincidence_tol: float = 1e-6) -> Partition:
    """Family of a pure state: the multiplicity pattern of its constellation."""
    from .majorana import to_constellation

    return to_constellation(state, coincidence_tol).multiplicity_pattern()
