"""Directed entity graph over triple subjects and objects.

Triples whose subject lines up with a scored keyphrase become edges
subject -> object. Node connectivity is the number of outgoing edges,
which is what the sentence scorers consume.
"""
from __future__ import annotations

from dataclasses import dataclass

from .keywords import Keyphrase
from .preprocess import norm_words
from .triples import Triple, _contains


def node_key(text: str) -> str:
    """Canonical node name: normalized words joined by single spaces."""
    return " ".join(norm_words(text))


def sequences_match(a: tuple[str, ...], b: tuple[str, ...]) -> bool:
    """Equal, or either sequence contained contiguously in the other."""
    return bool(a) and bool(b) and (a == b or _contains(a, b) or _contains(b, a))


def filter_subjects(triples: list[Triple], keyphrases: list[Keyphrase]) -> list[Triple]:
    """Keep triples whose subject matches some keyphrase.

    Matching compares the subject's normalized words against each
    keyphrase's flattened words under ``sequences_match``.
    """
    phrase_seqs = [kp.flat_words for kp in keyphrases]
    kept = []
    for t in triples:
        subject_words = norm_words(t.subject)
        if any(sequences_match(subject_words, ps) for ps in phrase_seqs):
            kept.append(t)
    return kept


@dataclass(frozen=True)
class EntityGraph:
    """Adjacency-matrix digraph; nodes sorted lexicographically.

    ``adjacency[i][j]`` counts edges from nodes[i] to nodes[j];
    ``connectivity[i]`` is the row sum; ``node_sentences[i]`` the sorted
    sentence indices the node's triples came from. Self-loop triples
    (subject == object after normalization) are dropped entirely, so the
    connectivity total equals the number of retained triples.
    """

    nodes: tuple[str, ...]
    adjacency: tuple[tuple[int, ...], ...]
    connectivity: tuple[int, ...]
    node_sentences: tuple[tuple[int, ...], ...]

    def index(self, node: str) -> int:
        return self.nodes.index(node)

    @property
    def edge_total(self) -> int:
        return sum(self.connectivity)


def build_graph(triples: list[Triple], binary_edges: bool = False) -> EntityGraph:
    """Build the entity graph from subject-filtered triples.

    With ``binary_edges`` repeated subject->object pairs collapse to a
    single edge instead of accumulating multiplicity.
    """
    pairs: list[tuple[str, str, int]] = []
    for t in triples:
        s = node_key(t.subject)
        o = node_key(t.object)
        if not s or not o or s == o:
            continue
        pairs.append((s, o, t.sentence_index))

    nodes = tuple(sorted({n for s, o, _ in pairs for n in (s, o)}))
    pos = {n: i for i, n in enumerate(nodes)}
    size = len(nodes)
    matrix = [[0] * size for _ in range(size)]
    sentences: list[set[int]] = [set() for _ in range(size)]
    for s, o, si in pairs:
        a, b = pos[s], pos[o]
        if binary_edges:
            matrix[a][b] = 1
        else:
            matrix[a][b] += 1
        sentences[a].add(si)
        sentences[b].add(si)

    return EntityGraph(
        nodes=nodes,
        adjacency=tuple(tuple(row) for row in matrix),
        connectivity=tuple(sum(row) for row in matrix),
        node_sentences=tuple(tuple(sorted(s)) for s in sentences),
    )


def top_connected_nodes(graph: EntityGraph, k: int) -> list[str]:
    """The k best-connected node names.

    Ties break toward the node appearing earliest in the document
    (smallest minimum sentence index), then lexicographically.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    order = sorted(
        range(len(graph.nodes)),
        key=lambda i: (-graph.connectivity[i], min(graph.node_sentences[i]), graph.nodes[i]),
    )
    return [graph.nodes[i] for i in order[:k]]
