"""Finite quivers, paths, quadratic presentations, preprojective builders.

Paths are written from right to left: in the word ``a1.a0`` the arrow
``a0`` is applied first, so the source of the path is the source of its
rightmost arrow.  A :class:`Path` stores its arrows in written order
(leftmost first).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import Field
from .linalg import SparseVec


class QuiverError(ValueError):
    pass


class Quiver:
    """A finite quiver with ordered vertices and named arrows."""

    def __init__(self, vertices: Sequence[str], arrows: Sequence[Tuple[str, str, str]]):
        self.vertices = list(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex labels")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.arrow_names: List[str] = []
        self.source: List[int] = []
        self.target: List[int] = []
        for name, src, tgt in arrows:
            if name in self.arrow_names:
                raise QuiverError(f"duplicate arrow name {name!r}")
            if src not in self.vertex_index or tgt not in self.vertex_index:
                raise QuiverError(f"arrow {name!r} uses undeclared vertex")
            self.arrow_names.append(name)
            self.source.append(self.vertex_index[src])
            self.target.append(self.vertex_index[tgt])
        self.arrow_index = {n: k for k, n in enumerate(self.arrow_names)}
        self.n_vertices = len(self.vertices)
        self.n_arrows = len(self.arrow_names)
        # arrows grouped by source vertex, in arrow order
        self.arrows_by_source: List[List[int]] = [[] for _ in range(self.n_vertices)]
        self.arrows_by_target: List[List[int]] = [[] for _ in range(self.n_vertices)]
        for k in range(self.n_arrows):
            self.arrows_by_source[self.source[k]].append(k)
            self.arrows_by_target[self.target[k]].append(k)

    def __repr__(self) -> str:
        return f"Quiver({self.n_vertices} vertices, {self.n_arrows} arrows)"


@dataclass(frozen=True)
class Path:
    """A composable arrow word; ``arrows`` in written (leftmost-first) order."""

    quiver: Quiver
    arrows: Tuple[int, ...]
    source: int
    target: int

    @staticmethod
    def trivial(quiver: Quiver, vertex: int) -> "Path":
        return Path(quiver, (), vertex, vertex)

    @staticmethod
    def from_arrows(quiver: Quiver, arrows: Sequence[int]) -> "Path":
        arrows = tuple(arrows)
        if not arrows:
            raise QuiverError("empty arrow sequence needs an explicit vertex")
        for left, right in zip(arrows, arrows[1:]):
            if quiver.source[left] != quiver.target[right]:
                raise QuiverError(
                    f"arrows {quiver.arrow_names[left]} and {quiver.arrow_names[right]} "
                    "do not compose")
        return Path(quiver, arrows, quiver.source[arrows[-1]], quiver.target[arrows[0]])

    @staticmethod
    def from_names(quiver: Quiver, names: Sequence[str]) -> "Path":
        return Path.from_arrows(quiver, [quiver.arrow_index[n] for n in names])

    @property
    def weight(self) -> int:
        return len(self.arrows)

    def name(self) -> str:
        if not self.arrows:
            return f"e{self.quiver.vertices[self.source]}"
        return ".".join(self.quiver.arrow_names[a] for a in self.arrows)

    def __repr__(self) -> str:
        return self.name()


def paths_of_weight(quiver: Quiver, m: int) -> List[Path]:
    """All composable length-m paths, ordered with the right factor most
    significant (lex by arrow indices)."""
    if m < 0:
        raise QuiverError("negative weight")
    if m == 0:
        return [Path.trivial(quiver, i) for i in range(quiver.n_vertices)]
    paths = paths_of_weight(quiver, m - 1)
    out: List[Path] = []
    for p in paths:
        for a in quiver.arrows_by_source[p.target]:
            # prepend on the left: a becomes the last-applied arrow
            out.append(Path(quiver, (a,) + p.arrows, p.source, quiver.target[a]))
    return out


def count_paths_of_weight(quiver: Quiver, m: int) -> int:
    counts = [1] * quiver.n_vertices  # paths of weight 0 per target
    total = quiver.n_vertices if m == 0 else 0
    for _ in range(m):
        nxt = [0] * quiver.n_vertices
        for a in range(quiver.n_arrows):
            nxt[quiver.target[a]] += counts[quiver.source[a]]
        counts = nxt
    return sum(counts) if m > 0 else total


class QuadraticPresentation:
    """A quiver with a weight-2 relation space given by vertex-homogeneous rows.

    Each relation is a list of ``(coeff, (left_arrow, right_arrow))`` pairs
    sharing one (target, source) vertex pair.
    """

    def __init__(self, quiver: Quiver, relations: Sequence[Sequence[Tuple[object, Tuple[int, int]]]],
                 field: Field):
        self.quiver = quiver
        self.field = field
        self.relations: List[List[Tuple[object, Tuple[int, int]]]] = []
        self.relation_blocks: List[Tuple[int, int]] = []
        for rel in relations:
            if not rel:
                raise QuiverError("empty relation")
            block = None
            cleaned = []
            for coeff, (left, right) in rel:
                if quiver.source[left] != quiver.target[right]:
                    raise QuiverError("relation contains a non-composable arrow pair")
                pair_block = (quiver.target[left], quiver.source[right])
                if block is None:
                    block = pair_block
                elif block != pair_block:
                    raise QuiverError("relation is not homogeneous for a vertex pair")
                if not field.is_zero(coeff):
                    cleaned.append((coeff, (left, right)))
            if not cleaned:
                raise QuiverError("zero relation")
            self.relations.append(cleaned)
            self.relation_blocks.append(block)

    @property
    def n_relations(self) -> int:
        return len(self.relations)

    def relation_paths(self) -> List[List[Tuple[object, Path]]]:
        out = []
        for rel in self.relations:
            out.append([(c, Path.from_arrows(self.quiver, pair)) for c, pair in rel])
        return out


class Graph:
    """An unlabelled undirected graph (multiple edges and loops allowed)."""

    def __init__(self, vertices: Sequence[str], edges: Sequence[Tuple[str, str]]):
        self.vertices = list(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex labels")
        index = {v: i for i, v in enumerate(self.vertices)}
        self.edges: List[Tuple[int, int]] = []
        for u, v in edges:
            if u not in index or v not in index:
                raise QuiverError(f"edge ({u},{v}) uses undeclared vertex")
            self.edges.append((index[u], index[v]))

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        adj: Dict[int, set] = {i: set() for i in range(len(self.vertices))}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)


def double_quiver(graph: Graph, arrow_names: Optional[Sequence[str]] = None) -> Tuple[Quiver, List[int], List[int]]:
    """Double quiver of a graph with one chosen orientation per edge.

    Edge k becomes ``a<k>: u -> v`` and ``a<k>*: v -> u`` (or the supplied
    names).  Returns ``(quiver, star, eps)`` where ``star[a]`` is the index
    of the opposite arrow and ``eps[a]`` is +1 on chosen arrows, -1 on their
    reverses.
    """
    arrows = []
    if arrow_names is None:
        arrow_names = [f"a{k}" for k in range(len(graph.edges))]
    for k, (u, v) in enumerate(graph.edges):
        arrows.append((arrow_names[k], graph.vertices[u], graph.vertices[v]))
    for k, (u, v) in enumerate(graph.edges):
        arrows.append((arrow_names[k] + "*", graph.vertices[v], graph.vertices[u]))
    q = Quiver(graph.vertices, arrows)
    n = len(graph.edges)
    star = [k + n for k in range(n)] + [k for k in range(n)]
    eps = [1] * n + [-1] * n
    return q, star, eps


class PreprojectiveSpec:
    """A connected graph with a chosen orientation and sign function."""

    def __init__(self, graph: Graph, arrow_names: Optional[Sequence[str]] = None):
        if not graph.is_connected():
            raise QuiverError("preprojective algebras require a connected graph")
        self.graph = graph
        self.quiver, self.star, self.eps = double_quiver(graph, arrow_names)


def preprojective_presentation(spec: PreprojectiveSpec, field: Field) -> QuadraticPresentation:
    """Relations: one per vertex i, the signed sum of a.a* over arrows into i."""
    q = spec.quiver
    relations = []
    for i in range(q.n_vertices):
        rel = []
        for a in q.arrows_by_target[i]:
            coeff = field.from_int(spec.eps[a])
            rel.append((coeff, (a, spec.star[a])))
        if rel:
            relations.append(rel)
    pres = QuadraticPresentation(q, relations, field)
    pres.preprojective = spec  # type: ignore[attr-defined]
    # vertex of each sigma relation, in relation order
    pres.sigma_vertices = [q.target[rel[0][1][0]] for rel in pres.relations]  # type: ignore[attr-defined]
    return pres


def graph_from_json(data) -> Graph:
    """Graph input: {"vertices": [...], "edges": [["u","v"], ...]}."""
    if isinstance(data, str):
        data = json.loads(data)
    vertices = [str(v) for v in data["vertices"]]
    edges = []
    for e in data["edges"]:
        if len(e) != 2:
            raise QuiverError("edges must be pairs")
        if len(e) == 2 and isinstance(e, (list, tuple)) and any(
                isinstance(x, (list, dict)) for x in e):
            raise QuiverError("labelled edges are not supported")
        edges.append((str(e[0]), str(e[1])))
    return Graph(vertices, edges)


def presentation_from_json(data, field: Field) -> QuadraticPresentation:
    """General quadratic input with explicit arrows and relations.

    {"vertices": [...], "arrows": [{"name","src","tgt"}, ...],
     "relations": [[{"coeff": "-1", "path": ["a1","a0"]}, ...], ...]}
    with each relation path a pair of arrow names in written order.
    """
    if isinstance(data, str):
        data = json.loads(data)
    quiver = Quiver([str(v) for v in data["vertices"]],
                    [(a["name"], str(a["src"]), str(a["tgt"])) for a in data["arrows"]])
    relations = []
    for rel in data["relations"]:
        terms = []
        for term in rel:
            coeff = field.parse(str(term["coeff"]))
            names = term["path"]
            if len(names) != 2:
                raise QuiverError("relations must be quadratic (paths of two arrows)")
            left, right = quiver.arrow_index[names[0]], quiver.arrow_index[names[1]]
            terms.append((coeff, (left, right)))
        relations.append(terms)
    return QuadraticPresentation(quiver, relations, field)


def relation_vector(pres: QuadraticPresentation, k: int, path_index: Dict[Tuple[int, int], int]) -> SparseVec:
    """Relation k as a sparse vector over weight-2 path indices."""
    field = pres.field
    out: SparseVec = {}
    for coeff, pair in pres.relations[k]:
        idx = path_index[pair]
        cur = out.get(idx, field.zero)
        cur = field.add(cur, coeff)
        if field.is_zero(cur):
            out.pop(idx, None)
        else:
            out[idx] = cur
    return out
