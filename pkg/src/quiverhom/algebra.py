"""Monomial bound quiver algebras and their relatives.

An algebra is stored through a multiplicative basis: each basis element has a
source vertex, a target vertex, a representative arrow word, and the product
of two basis elements is either zero or a single basis element.  Monomial
algebras (path bases avoiding forbidden subpaths) are the featured
constructor; lower-triangular matrix algebras ``T_n(A)`` are built through an
explicit table because they are provably not monomial once A has relations,
while all module-level algorithms only need the table and the words.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import BadKupisch, NonAdmissible, ParseError
from .linalg import FieldSpec

#: enumeration cap: more basis paths than this means the relation ideal is
#: treated as non-admissible.
BASIS_CAP = 8192


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


class Quiver:
    """Finite quiver with ordered vertex labels and named arrows."""

    def __init__(self, vertices: Sequence[str], arrows: Sequence[tuple[str, str, str]]):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        arr = []
        seen = set()
        for name, src, tgt in arrows:
            name = str(name)
            if name in seen:
                raise ValueError(f"duplicate arrow name {name!r}")
            seen.add(name)
            if src not in self.vertex_index or tgt not in self.vertex_index:
                raise ValueError(f"arrow {name!r} has unknown endpoint")
            arr.append(Arrow(name, self.vertex_index[src], self.vertex_index[tgt]))
        self.arrows = tuple(arr)
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}

    def reversed(self) -> "Quiver":
        return Quiver(self.vertices,
                      [(a.name, self.vertices[a.target], self.vertices[a.source])
                       for a in self.arrows])

    def out_arrows(self, v: int) -> list[int]:
        return [i for i, a in enumerate(self.arrows) if a.source == v]

    def in_arrows(self, v: int) -> list[int]:
        return [i for i, a in enumerate(self.arrows) if a.target == v]

    def __repr__(self):
        return f"Quiver({list(self.vertices)}, {[(a.name, a.source, a.target) for a in self.arrows]})"


@dataclass(frozen=True)
class BasisElement:
    source: int
    target: int
    word: tuple[int, ...]  # representative arrow-index word; () for e_v


class MonomialAlgebra:
    """Basic algebra with a multiplicative basis over a quiver.

    For a monomial presentation the basis is the set of paths containing no
    forbidden subpath and ``forbidden`` records the minimal relations; a
    table-presented instance (e.g. ``t_n`` output) has ``forbidden = None``.
    """

    def __init__(self, field: FieldSpec, quiver: Quiver,
                 basis: Sequence[BasisElement],
                 table: dict[tuple[int, int], Optional[int]],
                 forbidden: Optional[tuple[tuple[int, ...], ...]]):
        self.field = field
        self.quiver = quiver
        self.basis = tuple(basis)
        self.table = table
        self.forbidden = forbidden
        self.dim = len(self.basis)
        self.idempotent = {}
        for i, z in enumerate(self.basis):
            if not z.word:
                self.idempotent[z.source] = i
        if set(self.idempotent) != set(range(len(quiver.vertices))):
            raise ValueError("missing trivial paths")
        self.arrow_basis = {}
        for i, z in enumerate(self.basis):
            if len(z.word) == 1:
                self.arrow_basis[z.word[0]] = i
        self._proj_basis = {v: tuple(i for i, z in enumerate(self.basis) if z.source == v)
                            for v in range(len(quiver.vertices))}
        self._into_basis = {v: tuple(i for i, z in enumerate(self.basis) if z.target == v)
                            for v in range(len(quiver.vertices))}
        self._op: Optional["MonomialAlgebra"] = None
        self._cache: dict = {}

    # -- structure ---------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.quiver.vertices)

    def mult(self, i: int, j: int) -> Optional[int]:
        """Index of basis[i] * basis[j] or None when the product is zero."""
        if self.basis[i].target != self.basis[j].source:
            return None
        return self.table.get((i, j))

    def e(self, v: int) -> int:
        return self.idempotent[v]

    def proj_basis(self, v: int) -> tuple[int, ...]:
        """Basis indices of e_v A."""
        return self._proj_basis[v]

    def into_basis(self, v: int) -> tuple[int, ...]:
        """Basis indices of A e_v."""
        return self._into_basis[v]

    @property
    def is_monomial_presented(self) -> bool:
        return self.forbidden is not None

    def verify_associativity(self):
        """Check (zw)u = z(wu) on all basis triples; for tests."""
        n = self.dim
        for i in range(n):
            for j in range(n):
                ij = self.mult(i, j)
                for k in range(n):
                    jk = self.mult(j, k)
                    left = None if ij is None else self.mult(ij, k)
                    right = None if jk is None else self.mult(i, jk)
                    if left != right:
                        raise AssertionError(
                            f"associativity fails at ({i},{j},{k})")

    def is_nakayama(self) -> bool:
        """Every vertex has at most one outgoing and one incoming arrow."""
        outs = [0] * self.n_vertices
        ins = [0] * self.n_vertices
        for a in self.quiver.arrows:
            outs[a.source] += 1
            ins[a.target] += 1
        return all(o <= 1 for o in outs) and all(i <= 1 for i in ins)

    def opposite(self) -> "MonomialAlgebra":
        """Algebra with reversed arrows; an involution with stable indexing."""
        if self._op is None:
            rq = self.quiver.reversed()
            basis = [BasisElement(z.target, z.source, tuple(reversed(z.word)))
                     for z in self.basis]
            order = _basis_order(basis)
            table = {}
            for (i, j), k in self.table.items():
                if k is not None:
                    table[(order[j], order[i])] = order[k]
            new_basis = [None] * len(basis)
            for old, new in order.items():
                new_basis[new] = basis[old]
            forb = None
            if self.forbidden is not None:
                forb = tuple(sorted(tuple(reversed(w)) for w in self.forbidden))
            op = MonomialAlgebra(self.field, rq, new_basis, table, forb)
            op._op = self
            self._op = op
        return self._op

    def __repr__(self):
        kind = "monomial" if self.is_monomial_presented else "table"
        return (f"MonomialAlgebra(dim={self.dim}, vertices={len(self.quiver.vertices)}, "
                f"arrows={len(self.quiver.arrows)}, {kind})")

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        if not self.is_monomial_presented:
            raise ParseError("table-presented algebra has no monomial JSON form")
        return {
            "field": self.field.to_json(),
            "quiver": {
                "vertices": list(self.quiver.vertices),
                "arrows": [{"name": a.name,
                            "from": self.quiver.vertices[a.source],
                            "to": self.quiver.vertices[a.target]}
                           for a in self.quiver.arrows],
            },
            "relations": [[self.quiver.arrows[i].name for i in w]
                          for w in self.forbidden],
        }


def _basis_order(basis: Sequence[BasisElement]) -> dict[int, int]:
    """Deterministic order: length, then word (arrow indices), then source."""
    idx = sorted(range(len(basis)),
                 key=lambda i: (len(basis[i].word), basis[i].word, basis[i].source))
    return {old: new for new, old in enumerate(idx)}


def build_algebra(quiver: Quiver, forbidden: Iterable[Sequence[str]],
                  field: FieldSpec, cap: int = BASIS_CAP) -> MonomialAlgebra:
    """Enumerate the path basis of kQ / (forbidden paths).

    Raises NonAdmissible when more than `cap` basis paths appear (the algebra
    would be infinite dimensional).
    """
    forb = []
    for path in forbidden:
        word = []
        for name in path:
            if name not in quiver.arrow_index:
                raise ParseError(f"relation uses unknown arrow {name!r}")
            word.append(quiver.arrow_index[name])
        if len(word) < 2:
            raise ParseError("forbidden paths must have length >= 2")
        for i in range(len(word) - 1):
            a, b = quiver.arrows[word[i]], quiver.arrows[word[i + 1]]
            if a.target != b.source:
                raise ParseError(
                    f"relation {[quiver.arrows[w].name for w in word]} is not composable")
        forb.append(tuple(word))
    # Keep only minimal forbidden words (no other forbidden word as a factor).
    forb = sorted(set(forb), key=lambda w: (len(w), w))
    minimal = []
    for w in forb:
        if not any(_is_factor(f, w) for f in minimal):
            minimal.append(w)
    forb_set = minimal

    def clean(word: tuple[int, ...]) -> bool:
        # word extends a clean word by one arrow, so only suffixes matter
        return not any(len(f) <= len(word) and word[-len(f):] == f
                       for f in forb_set)

    elements: list[BasisElement] = [
        BasisElement(v, v, ()) for v in range(len(quiver.vertices))]
    frontier = list(elements)
    while frontier:
        new = []
        for z in frontier:
            for ai in quiver.out_arrows(z.target):
                word = z.word + (ai,)
                if clean(word):
                    new.append(BasisElement(z.source, quiver.arrows[ai].target, word))
        elements.extend(new)
        if len(elements) > cap:
            raise NonAdmissible(
                f"more than {cap} basis paths; relations are not admissible")
        frontier = new

    order = _basis_order(elements)
    basis = [None] * len(elements)
    for old, new in order.items():
        basis[new] = elements[old]
    word_index = {z.word if z.word else ("e", z.source): i
                  for i, z in enumerate(basis)}
    table = {}
    for i, zi in enumerate(basis):
        for j, zj in enumerate(basis):
            if zi.target != zj.source:
                continue
            word = zi.word + zj.word
            key = word if word else ("e", zi.source)
            k = word_index.get(key)
            if k is not None:
                table[(i, j)] = k
    return MonomialAlgebra(field, quiver, basis, table, tuple(forb_set))


def _is_factor(f: tuple, w: tuple) -> bool:
    return any(w[i:i + len(f)] == f for i in range(len(w) - len(f) + 1))


def base_field_algebra(field: FieldSpec, label: str = "1") -> MonomialAlgebra:
    """The ground field as a one-vertex quiver algebra."""
    return build_algebra(Quiver([label], []), [], field)


def semisimple_algebra(field: FieldSpec, n: int) -> MonomialAlgebra:
    return build_algebra(Quiver([str(i + 1) for i in range(n)], []), [], field)


def a2_algebra(field: FieldSpec) -> MonomialAlgebra:
    """Path algebra of 1 -> 2."""
    return build_algebra(Quiver(["1", "2"], [("a", "1", "2")]), [], field)


def dual_numbers(field: FieldSpec) -> MonomialAlgebra:
    """k[x]/(x^2) as the one-loop quiver with relation xx."""
    return build_algebra(Quiver(["1"], [("x", "1", "1")]), [["x", "x"]], field)


def nakayama(cycle: bool, n: int, kupisch: Sequence[int],
             field: FieldSpec) -> MonomialAlgebra:
    """Nakayama algebra with prescribed indecomposable projective lengths.

    Linear: quiver 1 -> 2 -> ... -> n; cyclic: the same with an arrow n -> 1.
    kupisch[i] is the composition length of P_{i+1}.
    """
    if n < 1:
        raise BadKupisch("need at least one vertex")
    c = list(kupisch)
    if len(c) != n:
        raise BadKupisch(f"expected {n} lengths, got {len(c)}")
    if any(x < 1 for x in c):
        raise BadKupisch("lengths must be >= 1")
    if cycle:
        if any(x < 2 for x in c):
            raise BadKupisch("cyclic Kupisch lengths must be >= 2")
        for i in range(n):
            if c[(i + 1) % n] < c[i] - 1:
                raise BadKupisch(f"c_{i + 2} >= c_{i + 1} - 1 fails")
    else:
        if c[n - 1] != 1:
            raise BadKupisch("last projective of a linear Nakayama algebra is simple")
        for i in range(n - 1):
            if c[i] < 2:
                raise BadKupisch("non-final lengths must be >= 2 on a linear quiver")
            if c[i + 1] < c[i] - 1:
                raise BadKupisch(f"c_{i + 2} >= c_{i + 1} - 1 fails")
            if c[i] > n - i:
                raise BadKupisch(f"c_{i + 1} exceeds the quiver tail")
    vertices = [str(i + 1) for i in range(n)]
    arrows = []
    for i in range(n - 1):
        arrows.append((f"a{i + 1}", vertices[i], vertices[i + 1]))
    if cycle:
        arrows.append((f"a{n}", vertices[n - 1], vertices[0]))
    relations = []
    for i in range(n):
        # forbid the path of length c_i starting at vertex i, when it exists
        if not cycle and i + c[i] > n - 1 + 1:
            continue
        word = []
        ok = True
        for t in range(c[i]):
            j = i + t
            if cycle:
                j %= n
            elif j >= n - 1:
                ok = False
                break
            word.append(f"a{j + 1}")
        if ok and len(word) >= 2:
            relations.append(word)
    return build_algebra(Quiver(vertices, arrows), relations, field)


def t_n(algebra: MonomialAlgebra, n: int) -> MonomialAlgebra:
    """Lower triangular n x n matrix algebra over `algebra`.

    Built directly through its multiplicative basis {z E_{ij} : j <= i}; once
    the base algebra has arrows this is not a monomial algebra (connecting
    arrows commute with the copies), so no quiver presentation is recorded.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return algebra
    A = algebra
    nv = A.n_vertices
    na = len(A.quiver.arrows)
    vertices = [f"{A.quiver.vertices[v]}@{lvl + 1}"
                for lvl in range(n) for v in range(nv)]

    def vtx(v: int, lvl: int) -> int:  # lvl is 0-based level
        return lvl * nv + v

    arrows = []
    for lvl in range(n):
        for a in A.quiver.arrows:
            arrows.append((f"{a.name}@{lvl + 1}",
                           vertices[vtx(a.source, lvl)],
                           vertices[vtx(a.target, lvl)]))
    for lvl in range(n - 1):
        # connecting arrow from level lvl+2 down to level lvl+1 at each vertex
        for v in range(nv):
            arrows.append((f"g{lvl + 1}_{A.quiver.vertices[v]}",
                           vertices[vtx(v, lvl + 1)],
                           vertices[vtx(v, lvl)]))
    quiver = Quiver(vertices, arrows)

    def copy_arrow(ai: int, lvl: int) -> int:
        return lvl * na + ai

    def gamma(v: int, lvl: int) -> int:  # (v, lvl+1) -> (v, lvl), 0-based lvl
        return n * na + lvl * nv + v

    elements = []
    keys = {}
    for bi, z in enumerate(A.basis):
        for i in range(n):          # row (0-based: level i)
            for j in range(i + 1):  # column
                word = tuple(copy_arrow(ai, i) for ai in z.word)
                word += tuple(gamma(z.target, lvl) for lvl in range(i - 1, j - 1, -1))
                keys[(bi, i, j)] = len(elements)
                elements.append(BasisElement(vtx(z.source, i), vtx(z.target, j), word))
    order = _basis_order(elements)
    basis = [None] * len(elements)
    for old, new in order.items():
        basis[new] = elements[old]
    table = {}
    for (bi, i, j), old in keys.items():
        zi = A.basis[bi]
        for (bj, i2, j2), old2 in keys.items():
            if j != i2 or zi.target != A.basis[bj].source:
                continue
            k = A.mult(bi, bj)
            if k is not None:
                table[(order[old], order[old2])] = order[keys[(k, i, j2)]]
    return MonomialAlgebra(A.field, quiver, basis, table, None)


def algebra_from_json(obj: dict) -> MonomialAlgebra:
    try:
        field = FieldSpec.from_json(obj["field"])
        q = obj["quiver"]
        quiver = Quiver([str(v) for v in q["vertices"]],
                        [(a["name"], str(a["from"]), str(a["to"]))
                         for a in q.get("arrows", [])])
        relations = obj.get("relations", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad algebra JSON: {exc}") from exc
    return build_algebra(quiver, relations, field)


def load_algebra(path: str) -> MonomialAlgebra:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read algebra file {path}: {exc}") from exc
    return algebra_from_json(obj)
