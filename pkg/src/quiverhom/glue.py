"""Triangular matrix algebras A = [B 0; M C] as glued monomial algebras.

The C-B-bimodule M is realized by one connecting arrow per bimodule-top
generator, running from the C part to the B part; crossing paths that die in
M become monomial relations.  The construction fails (NotMonomialRealizable)
exactly when the surviving crossing monomials are linearly dependent in M.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import MonomialAlgebra, Quiver, build_algebra
from .bimodules import Bimodule, bimodule_top_generators
from .errors import NotMonomialRealizable
from .linalg import Matrix


@dataclass(frozen=True)
class IdempotentSplit:
    """Vertex bipartition of a triangular algebra: arrows may run from the
    part2 (C) corner to the part1 (B) corner only."""

    algebra: MonomialAlgebra
    part1: frozenset[str]
    part2: frozenset[str]

    def __post_init__(self):
        q = self.algebra.quiver
        for a in q.arrows:
            if q.vertices[a.source] in self.part1 \
                    and q.vertices[a.target] in self.part2:
                raise ValueError("arrow runs from part1 into part2")


@dataclass
class TriangularGluing:
    algebra: MonomialAlgebra
    split: IdempotentSplit
    b: MonomialAlgebra
    c: MonomialAlgebra
    bimodule: Bimodule
    b_vertex: list[int]      # B vertex index -> A vertex index
    c_vertex: list[int]
    b_arrow: list[int]       # B arrow index -> A arrow index
    c_arrow: list[int]
    connecting: list[int]    # generator slot -> A arrow index

    def a_vertex_to_b(self) -> dict[int, int]:
        return {av: bv for bv, av in enumerate(self.b_vertex)}

    def a_vertex_to_c(self) -> dict[int, int]:
        return {av: cv for cv, av in enumerate(self.c_vertex)}


def _unique_labels(b: MonomialAlgebra, c: MonomialAlgebra):
    bl = list(b.quiver.vertices)
    cl = list(c.quiver.vertices)
    if set(bl) & set(cl):
        bl = [f"b.{v}" for v in bl]
        cl = [f"c.{v}" for v in cl]
    ba = list(a.name for a in b.quiver.arrows)
    ca = list(a.name for a in c.quiver.arrows)
    if set(ba) & set(ca):
        ba = [f"b.{n}" for n in ba]
        ca = [f"c.{n}" for n in ca]
    return bl, cl, ba, ca


def glue_triangular(b: MonomialAlgebra, c: MonomialAlgebra,
                    m: Bimodule) -> TriangularGluing:
    """Build A = [B 0; M C] with its split and embeddings."""
    if m.left is not c or m.right is not b:
        raise ValueError("bimodule must be a (C, B)-bimodule over the corners")
    if b.field != c.field:
        raise ValueError("corner algebras over different fields")
    if not (b.is_monomial_presented and c.is_monomial_presented):
        raise NotMonomialRealizable("corner algebras must be monomial presented")
    f = b.field
    bl, cl, ba, ca = _unique_labels(b, c)
    vertices = bl + cl
    arrows = []
    for i, a in enumerate(b.quiver.arrows):
        arrows.append((ba[i], bl[a.source], bl[a.target]))
    for i, a in enumerate(c.quiver.arrows):
        arrows.append((ca[i], cl[a.source], cl[a.target]))
    gens = bimodule_top_generators(m)
    names = []
    for s, ((u, v), _) in enumerate(gens):
        name = f"m{s}"
        while name in ba or name in ca:
            name = "_" + name
        names.append(name)
        arrows.append((name, cl[u], bl[v]))
    relations = [[ba[i] for i in word] for word in b.forbidden]
    relations += [[ca[i] for i in word] for word in c.forbidden]

    # crossing monomials q . g_s . p; nonzero images must be independent
    rows_by_pair: dict[tuple[int, int], list] = {}
    zero_words: list[list[str]] = []
    for s, ((u, v), gen) in enumerate(gens):
        for q in c.into_basis(u):
            lop = m.left_element_operator(q)
            qrow = Matrix(f, 1, m.dim_at(u, v), [gen]) * lop.blocks[v]
            qu = c.basis[q].source
            for p in b.proj_basis(v):
                row = qrow * m.right_word_block(b.basis[p].word, v, qu)
                pv = b.basis[p].target
                if row.is_zero():
                    word = [ca[i] for i in c.basis[q].word] + [names[s]] \
                        + [ba[i] for i in b.basis[p].word]
                    zero_words.append(word)
                else:
                    rows_by_pair.setdefault((qu, pv), []).append(list(row.entries[0]))
    survivors = 0
    for (qu, pv), rows in rows_by_pair.items():
        mat = Matrix(f, len(rows), m.dim_at(qu, pv), rows)
        if mat.rank() != len(rows):
            raise NotMonomialRealizable(
                "surviving crossing monomials are linearly dependent; the "
                "bimodule admits no monomial presentation on these generators")
        survivors += len(rows)
    if survivors != m.total_dim:
        raise NotMonomialRealizable(
            "crossing monomials do not span the bimodule")
    relations += zero_words
    algebra = build_algebra(Quiver(vertices, arrows), relations, f)
    if algebra.dim != b.dim + c.dim + m.total_dim:
        raise AssertionError("glued dimension count is off")
    split = IdempotentSplit(algebra, frozenset(bl), frozenset(cl))
    b_vertex = [algebra.quiver.vertex_index[l] for l in bl]
    c_vertex = [algebra.quiver.vertex_index[l] for l in cl]
    b_arrow = [algebra.quiver.arrow_index[n] for n in ba]
    c_arrow = [algebra.quiver.arrow_index[n] for n in ca]
    connecting = [algebra.quiver.arrow_index[n] for n in names]
    return TriangularGluing(algebra, split, b, c, m, b_vertex, c_vertex,
                            b_arrow, c_arrow, connecting)


def triangular(b: MonomialAlgebra, c: MonomialAlgebra,
               m: Bimodule) -> tuple[MonomialAlgebra, IdempotentSplit]:
    """A = [B 0; M C]: the glued algebra and its idempotent split."""
    g = glue_triangular(b, c, m)
    return g.algebra, g.split
