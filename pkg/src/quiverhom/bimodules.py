"""Bimodules concentrated in a single complex degree.

A (C, B)-bimodule is stored through the enveloping grading: one space per
vertex pair (u, v) with u in C and v in B, matrices for the left action of
C-arrows and the right action of B-arrows, commuting with each other.  The
left action of an arrow c: u -> u' carries the (u', v) component into (u, v);
all matrices act on row vectors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .algebra import MonomialAlgebra
from .errors import ParseError
from .linalg import Matrix
from .modules import Module, ModuleMap, quotient_with_section

PairKey = tuple[int, int]


class Bimodule:
    """Finite dimensional (left_algebra, right_algebra)-bimodule."""

    def __init__(self, left_algebra: MonomialAlgebra, right_algebra: MonomialAlgebra,
                 dims: dict[PairKey, int],
                 left_action: dict[int, dict[int, Matrix]],
                 right_action: dict[int, dict[int, Matrix]]):
        """left_action[c][v]: (target(c), v) -> (source(c), v); right_action[b][u]:
        (u, source(b)) -> (u, target(b))."""
        if left_algebra.field != right_algebra.field:
            raise ValueError("bimodule sides must share the ground field")
        self.left = left_algebra
        self.right = right_algebra
        self.field = left_algebra.field
        self.dims = {k: int(d) for k, d in dims.items() if d}
        self.left_action = left_action
        self.right_action = right_action
        self._cache: dict = {}
        f = self.field
        for ci, c in enumerate(left_algebra.quiver.arrows):
            for v in range(right_algebra.n_vertices):
                m = self.left_block(ci, v)
                if (m.rows, m.cols) != (self.dim_at(c.target, v), self.dim_at(c.source, v)):
                    raise ValueError(f"left action block shape mismatch at ({c.name}, {v})")
        for bi, b in enumerate(right_algebra.quiver.arrows):
            for u in range(left_algebra.n_vertices):
                m = self.right_block(bi, u)
                if (m.rows, m.cols) != (self.dim_at(u, b.source), self.dim_at(u, b.target)):
                    raise ValueError(f"right action block shape mismatch at ({u}, {b.name})")

    def dim_at(self, u: int, v: int) -> int:
        return self.dims.get((u, v), 0)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def left_block(self, ci: int, v: int) -> Matrix:
        c = self.left.quiver.arrows[ci]
        blk = self.left_action.get(ci, {}).get(v)
        if blk is None:
            return Matrix.zeros(self.field, self.dim_at(c.target, v),
                                self.dim_at(c.source, v))
        return blk

    def right_block(self, bi: int, u: int) -> Matrix:
        b = self.right.quiver.arrows[bi]
        blk = self.right_action.get(bi, {}).get(u)
        if blk is None:
            return Matrix.zeros(self.field, self.dim_at(u, b.source),
                                self.dim_at(u, b.target))
        return blk

    def left_word_block(self, word: tuple[int, ...], target_u: int, v: int) -> Matrix:
        """Action of a left path with the given arrow word on column v.

        For a path c1...ck: u -> u' acting on (u', v), multiply innermost
        first: row @ L_{ck} @ ... @ L_{c1}."""
        u = target_u
        m = Matrix.identity(self.field, self.dim_at(u, v))
        for ci in reversed(word):
            m = m * self.left_block(ci, v)
        return m

    def right_word_block(self, word: tuple[int, ...], source_v: int, u: int) -> Matrix:
        m = Matrix.identity(self.field, self.dim_at(u, source_v))
        for bi in word:
            m = m * self.right_block(bi, u)
        return m

    def validate(self):
        """Check both relation sets and the commutation of the actions."""
        f = self.field
        for word in (self.left.forbidden or ()):
            tgt = self.left.quiver.arrows[word[-1]].target
            for v in range(self.right.n_vertices):
                if not self.left_word_block(word, tgt, v).is_zero():
                    raise ParseError("left relations violated")
        for word in (self.right.forbidden or ()):
            src = self.right.quiver.arrows[word[0]].source
            for u in range(self.left.n_vertices):
                if not self.right_word_block(word, src, u).is_zero():
                    raise ParseError("right relations violated")
        for ci, c in enumerate(self.left.quiver.arrows):
            for bi, b in enumerate(self.right.quiver.arrows):
                # (c.m).b and c.(m.b) agree on the (c.target, b.source) block
                lhs = self.left_block(ci, b.source) * self.right_block(bi, c.source)
                rhs = self.right_block(bi, c.target) * self.left_block(ci, b.target)
                if lhs != rhs:
                    raise ParseError(
                        f"left and right actions do not commute at "
                        f"({c.name}, {b.name})")

    # -- side extraction -----------------------------------------------------

    def right_offsets(self) -> dict[int, dict[int, int]]:
        """offsets[v][u]: start of the (u, v) block inside the right module."""
        out = {}
        for v in range(self.right.n_vertices):
            pos = 0
            per = {}
            for u in range(self.left.n_vertices):
                per[u] = pos
                pos += self.dim_at(u, v)
            out[v] = per
        return out

    def right_module(self) -> Module:
        """The underlying right module over the right-side algebra."""
        if "right_module" not in self._cache:
            f = self.field
            B = self.right
            dims = [sum(self.dim_at(u, v) for u in range(self.left.n_vertices))
                    for v in range(B.n_vertices)]
            action = []
            for bi, b in enumerate(B.quiver.arrows):
                rows = []
                for u in range(self.left.n_vertices):
                    blk = self.right_block(bi, u)
                    for i in range(blk.rows):
                        row = []
                        for u2 in range(self.left.n_vertices):
                            if u2 == u:
                                row.extend(blk.entries[i])
                            else:
                                row.extend([f.zero()] * self.dim_at(u2, b.target))
                        rows.append(row)
                action.append(Matrix(f, dims[b.source], dims[b.target], rows))
            self._cache["right_module"] = Module(B, dims, action)
        return self._cache["right_module"]

    def left_module_over_op(self) -> Module:
        """The left module as a right module over the opposite of the left side."""
        if "left_module" not in self._cache:
            f = self.field
            Cop = self.left.opposite()
            dims = [sum(self.dim_at(u, v) for v in range(self.right.n_vertices))
                    for u in range(self.left.n_vertices)]
            action = []
            for ci, c in enumerate(self.left.quiver.arrows):
                # in C^op the arrow runs c.target -> c.source
                rows = []
                for v in range(self.right.n_vertices):
                    blk = self.left_block(ci, v)
                    for i in range(blk.rows):
                        row = []
                        for v2 in range(self.right.n_vertices):
                            if v2 == v:
                                row.extend(blk.entries[i])
                            else:
                                row.extend([f.zero()] * self.dim_at(c.source, v2))
                        rows.append(row)
                action.append(Matrix(f, dims[c.target], dims[c.source], rows))
            self._cache["left_module"] = Module(Cop, dims, action)
        return self._cache["left_module"]

    def row_module(self, u: int) -> Module:
        """e_u X as a right module over the right-side algebra."""
        f = self.field
        B = self.right
        dims = [self.dim_at(u, v) for v in range(B.n_vertices)]
        action = [self.right_block(bi, u) for bi in range(len(B.quiver.arrows))]
        return Module(B, dims, action)

    def left_element_operator(self, z: int) -> "LeftOperator":
        """Left multiplication by the left-algebra basis element z, as a map
        row_module(target(z)) -> row_module(source(z))."""
        el = self.left.basis[z]
        blocks = [self.left_word_block(el.word, el.target, v)
                  for v in range(self.right.n_vertices)]
        return LeftOperator(el.source, el.target, blocks)

    def __repr__(self):
        return (f"Bimodule({self.left!r} x {self.right!r}, "
                f"dims={{{', '.join(f'{k}: {v}' for k, v in sorted(self.dims.items()))}}})")


@dataclass
class LeftOperator:
    source_u: int   # left vertex of the result
    target_u: int   # left vertex of the argument
    blocks: list    # per right-side vertex


def zero_bimodule(C: MonomialAlgebra, B: MonomialAlgebra) -> Bimodule:
    return Bimodule(C, B, {}, {}, {})


def algebra_span_bimodule(A: MonomialAlgebra, left_alg: MonomialAlgebra,
                          right_alg: MonomialAlgebra, carrier: Sequence[int],
                          left_vertex: Callable[[int], int],
                          right_vertex: Callable[[int], int],
                          left_arrow_image: Callable[[int], Optional[int]],
                          right_arrow_image: Callable[[int], Optional[int]]):
    """Bimodule spanned by a set of basis elements of A.

    Products that land outside the carrier are treated as zero, which is exact
    for the sub-quotient spans used by the recollement data (corner ideals and
    their quotients).
    """
    f = A.field
    comp: dict[PairKey, list[int]] = {}
    for z in carrier:
        comp.setdefault((left_vertex(z), right_vertex(z)), []).append(z)
    for zs in comp.values():
        zs.sort()
    pos = {k: {z: i for i, z in enumerate(zs)} for k, zs in comp.items()}
    dims = {k: len(zs) for k, zs in comp.items()}

    left_action: dict[int, dict[int, Matrix]] = {}
    for ci in range(len(left_alg.quiver.arrows)):
        img = left_arrow_image(ci)
        per = {}
        c = left_alg.quiver.arrows[ci]
        for v in range(right_alg.n_vertices):
            src_dim = dims.get((c.target, v), 0)
            tgt_dim = dims.get((c.source, v), 0)
            rows = [[f.zero()] * tgt_dim for _ in range(src_dim)]
            if img is not None:
                for z in comp.get((c.target, v), ()):  # argument component
                    prod = A.mult(img, z)
                    if prod is not None and (c.source, v) in pos \
                            and prod in pos[(c.source, v)]:
                        rows[pos[(c.target, v)][z]][pos[(c.source, v)][prod]] = f.one()
            per[v] = Matrix(f, src_dim, tgt_dim, rows)
        left_action[ci] = per

    right_action: dict[int, dict[int, Matrix]] = {}
    for bi in range(len(right_alg.quiver.arrows)):
        img = right_arrow_image(bi)
        per = {}
        b = right_alg.quiver.arrows[bi]
        for u in range(left_alg.n_vertices):
            src_dim = dims.get((u, b.source), 0)
            tgt_dim = dims.get((u, b.target), 0)
            rows = [[f.zero()] * tgt_dim for _ in range(src_dim)]
            if img is not None:
                for z in comp.get((u, b.source), ()):
                    prod = A.mult(z, img)
                    if prod is not None and (u, b.target) in pos \
                            and prod in pos[(u, b.target)]:
                        rows[pos[(u, b.source)][z]][pos[(u, b.target)][prod]] = f.one()
            per[u] = Matrix(f, src_dim, tgt_dim, rows)
        right_action[bi] = per
    return Bimodule(left_alg, right_alg, dims, left_action, right_action)


def regular_bimodule(A: MonomialAlgebra) -> Bimodule:
    """A as an (A, A)-bimodule."""
    return algebra_span_bimodule(
        A, A, A, range(A.dim),
        lambda z: A.basis[z].source, lambda z: A.basis[z].target,
        lambda ci: A.arrow_basis[ci], lambda bi: A.arrow_basis[bi])


def swap_sides(X: Bimodule) -> Bimodule:
    """The (C, B)-bimodule X as a (B^op, C^op)-bimodule on the same carrier.

    Opposites keep arrow order, so the old right action becomes the new left
    action block for block (and vice versa)."""
    new_left = X.right.opposite()
    new_right = X.left.opposite()
    dims = {(v, u): d for (u, v), d in X.dims.items()}
    left_action = {bi: {u: X.right_block(bi, u)
                        for u in range(X.left.n_vertices)}
                   for bi in range(len(X.right.quiver.arrows))}
    right_action = {ci: {v: X.left_block(ci, v)
                         for v in range(X.right.n_vertices)}
                    for ci in range(len(X.left.quiver.arrows))}
    return Bimodule(new_left, new_right, dims, left_action, right_action)


@dataclass(frozen=True)
class StalkBimodule:
    """A bimodule regarded as a complex concentrated in a single degree."""

    bimodule: Bimodule
    degree: int = 0


# -- tensor product over the left algebra ---------------------------------------


def tensor_over(M: Module, X: Bimodule) -> Module:
    """M tensor_C X for a right C-module M and a (C, B)-bimodule X.

    Computed as the quotient of the vertex-pair-graded sum of M_u (x) X_(u,v)
    by the span of (m c (x) x) - (m (x) c x); the result is a right module
    over the right-side algebra of X.
    """
    return _tensor_parts(M, X)[2]


def _tensor_parts(M: Module, X: Bimodule):
    """(pre-module, tensor offsets, quotient, projection, section)."""
    key = ("tensor", id(M))
    cached = X._cache.get(key)
    if cached is not None and cached[0] is M:
        return cached[1]
    C, B = X.left, X.right
    if M.algebra is not C:
        raise ValueError("module is not over the bimodule's left algebra")
    f = X.field
    nC, nB = C.n_vertices, B.n_vertices
    # layout of the plain tensor product, per B-vertex
    offsets: dict[int, dict[int, int]] = {}
    dims = []
    for w in range(nB):
        pos = 0
        per = {}
        for u in range(nC):
            per[u] = pos
            pos += M.dims[u] * X.dim_at(u, w)
        offsets[w] = per
        dims.append(pos)
    action = []
    for bi, b in enumerate(B.quiver.arrows):
        rows = [[f.zero()] * dims[b.target] for _ in range(dims[b.source])]
        for u in range(nC):
            blk = X.right_block(bi, u)
            du, ds, dt = M.dims[u], X.dim_at(u, b.source), X.dim_at(u, b.target)
            for i in range(du):
                for j in range(ds):
                    src = offsets[b.source][u] + i * ds + j
                    for l in range(dt):
                        c = blk.entries[j][l]
                        if c != f.zero():
                            rows[src][offsets[b.target][u] + i * dt + l] = c
        action.append(Matrix(f, dims[b.source], dims[b.target], rows))
    pre = Module(B, dims, action)
    # relation rows per B-vertex
    bases = []
    for w in range(nB):
        rel = []
        for ci, carr in enumerate(C.quiver.arrows):
            u, u2 = carr.source, carr.target  # c: u -> u2
            mc = M.action[ci]                 # M_u -> M_{u2}
            cx = X.left_block(ci, w)          # (u2, w) -> (u, w)
            d_u, d_u2 = M.dims[u], M.dims[u2]
            x_u, x_u2 = X.dim_at(u, w), X.dim_at(u2, w)
            for i in range(d_u):
                for j in range(x_u2):
                    row = [f.zero()] * dims[w]
                    for k in range(d_u2):
                        c = mc.entries[i][k]
                        if c != f.zero():
                            row[offsets[w][u2] + k * x_u2 + j] = c
                    for l in range(x_u):
                        c = cx.entries[j][l]
                        if c != f.zero():
                            idx = offsets[w][u] + i * x_u + l
                            row[idx] = f.sub(row[idx], c)
                    rel.append(row)
        bases.append(Matrix(f, len(rel), dims[w], rel).row_space())
    Q, proj, section = quotient_with_section(pre, bases)
    result = (pre, offsets, Q, proj, section)
    X._cache[key] = (M, result)
    return result


def tensor_over_map(fmap: ModuleMap, X: Bimodule) -> ModuleMap:
    """f (x)_C id_X on the tensored modules (exactness not assumed; this is
    the induced map on the underived tensor)."""
    preS, offS, QS, _, secS = _tensor_parts(fmap.source, X)
    preT, offT, QT, projT, _ = _tensor_parts(fmap.target, X)
    f = X.field
    nC = X.left.n_vertices
    blocks = []
    for w in range(X.right.n_vertices):
        m = [[f.zero()] * preT.dims[w] for _ in range(preS.dims[w])]
        for u in range(nC):
            dx = X.dim_at(u, w)
            if dx == 0:
                continue
            fb = fmap.blocks[u]
            for i in range(fb.rows):
                for k in range(fb.cols):
                    c = fb.entries[i][k]
                    if c == f.zero():
                        continue
                    for j in range(dx):
                        m[offS[w][u] + i * dx + j][offT[w][u] + k * dx + j] = c
        blocks.append(Matrix(f, preS.dims[w], preT.dims[w], m))
    pre_map = ModuleMap(preS, preT, blocks)
    induced = [secS[v] * pre_map.blocks[v] * projT.blocks[v]
               for v in range(X.right.n_vertices)]
    return ModuleMap(QS, QT, induced)


# -- bimodule maps, subs, covers --------------------------------------------------


class BimoduleMap:
    def __init__(self, source: Bimodule, target: Bimodule,
                 blocks: dict[PairKey, Matrix]):
        self.source = source
        self.target = target
        self.blocks = blocks

    def block(self, key: PairKey) -> Matrix:
        blk = self.blocks.get(key)
        if blk is None:
            return Matrix.zeros(self.source.field, self.source.dim_at(*key),
                                self.target.dim_at(*key))
        return blk

    def verify(self):
        X, Y = self.source, self.target
        for ci, c in enumerate(X.left.quiver.arrows):
            for v in range(X.right.n_vertices):
                lhs = X.left_block(ci, v) * self.block((c.source, v))
                rhs = self.block((c.target, v)) * Y.left_block(ci, v)
                if lhs != rhs:
                    raise AssertionError("bimodule map breaks the left action")
        for bi, b in enumerate(X.right.quiver.arrows):
            for u in range(X.left.n_vertices):
                lhs = X.right_block(bi, u) * self.block((u, b.target))
                rhs = self.block((u, b.source)) * Y.right_block(bi, u)
                if lhs != rhs:
                    raise AssertionError("bimodule map breaks the right action")

    def as_right_module_map(self) -> ModuleMap:
        """The same map on the underlying right modules."""
        X, Y = self.source, self.target
        f = X.field
        xs, ys = X.right_module(), Y.right_module()
        xoff, yoff = X.right_offsets(), Y.right_offsets()
        blocks = []
        for v in range(X.right.n_vertices):
            m = [[f.zero()] * ys.dims[v] for _ in range(xs.dims[v])]
            for u in range(X.left.n_vertices):
                blk = self.block((u, v))
                for i in range(blk.rows):
                    for j in range(blk.cols):
                        if blk.entries[i][j] != f.zero():
                            m[xoff[v][u] + i][yoff[v][u] + j] = blk.entries[i][j]
            blocks.append(Matrix(f, xs.dims[v], ys.dims[v], m))
        return ModuleMap(xs, ys, blocks)


def sub_bimodule(X: Bimodule, bases: dict[PairKey, Matrix]) -> tuple[Bimodule, BimoduleMap]:
    """Bimodule on echelonized row bases closed under both actions."""
    f = X.field
    dims = {k: b.rows for k, b in bases.items() if b.rows}

    def basis_at(key: PairKey) -> Matrix:
        b = bases.get(key)
        if b is None:
            return Matrix.zeros(f, 0, X.dim_at(*key))
        return b

    left_action: dict[int, dict[int, Matrix]] = {}
    for ci, c in enumerate(X.left.quiver.arrows):
        per = {}
        for v in range(X.right.n_vertices):
            src = basis_at((c.target, v))
            tgt = basis_at((c.source, v))
            sol = tgt.solve_left(src * X.left_block(ci, v))
            if sol is None:
                raise ValueError("spans not closed under the left action")
            per[v] = sol
        left_action[ci] = per
    right_action: dict[int, dict[int, Matrix]] = {}
    for bi, b in enumerate(X.right.quiver.arrows):
        per = {}
        for u in range(X.left.n_vertices):
            src = basis_at((u, b.source))
            tgt = basis_at((u, b.target))
            sol = tgt.solve_left(src * X.right_block(bi, u))
            if sol is None:
                raise ValueError("spans not closed under the right action")
            per[u] = sol
        right_action[bi] = per
    S = Bimodule(X.left, X.right, dims, left_action, right_action)
    incl = BimoduleMap(S, X, {k: basis_at(k) for k in dims})
    return S, incl


def kernel_of_bimodule_map(f_map: BimoduleMap) -> tuple[Bimodule, BimoduleMap]:
    X = f_map.source
    bases = {}
    for key in X.dims:
        bases[key] = f_map.block(key).kernel_basis()
    return sub_bimodule(X, bases)


class FreeBimodule:
    """F = sum of C e_{u_s} (x) e_{v_s} B over generator slots s."""

    def __init__(self, C: MonomialAlgebra, B: MonomialAlgebra,
                 slots: Sequence[PairKey]):
        self.C, self.B = C, B
        self.slots = tuple(slots)
        self.layout: dict[PairKey, list[tuple[int, int, int]]] = {}
        for s, (u, v) in enumerate(self.slots):
            for q in C.into_basis(u):
                for p in B.proj_basis(v):
                    key = (C.basis[q].source, B.basis[p].target)
                    self.layout.setdefault(key, []).append((s, q, p))
        self.position = {k: {t: i for i, t in enumerate(ts)}
                         for k, ts in self.layout.items()}

    def bimodule(self) -> Bimodule:
        C, B = self.C, self.B
        f = C.field
        dims = {k: len(ts) for k, ts in self.layout.items()}
        left_action: dict[int, dict[int, Matrix]] = {}
        for ci in range(len(C.quiver.arrows)):
            c = C.quiver.arrows[ci]
            per = {}
            for v in range(B.n_vertices):
                src_dim = dims.get((c.target, v), 0)
                tgt_dim = dims.get((c.source, v), 0)
                rows = [[f.zero()] * tgt_dim for _ in range(src_dim)]
                for (s, q, p) in self.layout.get((c.target, v), ()):
                    cq = C.mult(C.arrow_basis[ci], q)
                    if cq is not None:
                        i = self.position[(c.target, v)][(s, q, p)]
                        j = self.position[(c.source, v)][(s, cq, p)]
                        rows[i][j] = f.one()
                per[v] = Matrix(f, src_dim, tgt_dim, rows)
            left_action[ci] = per
        right_action: dict[int, dict[int, Matrix]] = {}
        for bi in range(len(B.quiver.arrows)):
            b = B.quiver.arrows[bi]
            per = {}
            for u in range(C.n_vertices):
                src_dim = dims.get((u, b.source), 0)
                tgt_dim = dims.get((u, b.target), 0)
                rows = [[f.zero()] * tgt_dim for _ in range(src_dim)]
                for (s, q, p) in self.layout.get((u, b.source), ()):
                    pb = B.mult(p, B.arrow_basis[bi])
                    if pb is not None:
                        i = self.position[(u, b.source)][(s, q, p)]
                        j = self.position[(u, b.target)][(s, q, pb)]
                        rows[i][j] = f.one()
                per[u] = Matrix(f, src_dim, tgt_dim, rows)
            right_action[bi] = per
        return Bimodule(C, B, dims, left_action, right_action)


def bimodule_top_generators(X: Bimodule) -> list[tuple[PairKey, list]]:
    """Generator rows spanning X / (rad_C X + X rad_B), canonical complement."""
    f = X.field
    out = []
    for key in sorted(X.dims):
        u, v = key
        d = X.dim_at(u, v)
        stk = Matrix.zeros(f, 0, d)
        for ci, c in enumerate(X.left.quiver.arrows):
            if c.source == u:  # image of (target, v) -> (u, v)
                stk = stk.vstack(X.left_block(ci, v))
        for bi, b in enumerate(X.right.quiver.arrows):
            if b.target == v:
                stk = stk.vstack(X.right_block(bi, u))
        R, pivots = stk.row_space().rref()
        piv = set(pivots)
        for j in range(d):
            if j not in piv:
                row = [f.zero()] * d
                row[j] = f.one()
                out.append((key, row))
    return out


def bimodule_cover(X: Bimodule) -> tuple[FreeBimodule, BimoduleMap]:
    """Projective bimodule cover F -> X (projective over both sides)."""
    gens = bimodule_top_generators(X)
    free = FreeBimodule(X.left, X.right, [key for key, _ in gens])
    F = free.bimodule()
    f = X.field
    blocks: dict[PairKey, Matrix] = {}
    for key, triples in free.layout.items():
        rows = []
        for (s, q, p) in triples:
            (u, v), gen = gens[s]
            lop = X.left_element_operator(q)
            row = Matrix(f, 1, X.dim_at(u, v), [gen])
            row = row * lop.blocks[v]
            pword = X.right.basis[p].word
            row = row * X.right_word_block(pword, v, X.left.basis[q].source)
            rows.append(list(row.entries[0]))
        blocks[key] = Matrix(f, len(triples), X.dim_at(*key), rows)
    cover = BimoduleMap(F, X, blocks)
    return free, cover


# -- serialization -----------------------------------------------------------------


def bimodule_to_json(X: Bimodule) -> dict:
    """Schema: pairs carry component dimensions; left_arrows[c][v] is the
    block (target(c), v) -> (source(c), v), right_arrows[b][u] the block
    (u, source(b)) -> (u, target(b)); matrices are grids of scalar strings."""
    C, B = X.left, X.right
    f = X.field
    pairs = [{"left": C.quiver.vertices[u], "right": B.quiver.vertices[v],
              "dim": d} for (u, v), d in sorted(X.dims.items())]
    left = {}
    for ci, c in enumerate(C.quiver.arrows):
        per = {}
        for v in range(B.n_vertices):
            blk = X.left_block(ci, v)
            if blk.rows and blk.cols and not blk.is_zero():
                per[B.quiver.vertices[v]] = [
                    [f.format_scalar(x) for x in row] for row in blk.entries]
        if per:
            left[c.name] = per
    right = {}
    for bi, b in enumerate(B.quiver.arrows):
        per = {}
        for u in range(C.n_vertices):
            blk = X.right_block(bi, u)
            if blk.rows and blk.cols and not blk.is_zero():
                per[C.quiver.vertices[u]] = [
                    [f.format_scalar(x) for x in row] for row in blk.entries]
        if per:
            right[b.name] = per
    return {"pairs": pairs, "left_arrows": left, "right_arrows": right}


def bimodule_from_json(C: MonomialAlgebra, B: MonomialAlgebra,
                       obj: dict) -> Bimodule:
    f = C.field
    try:
        dims = {}
        for p in obj.get("pairs", []):
            u = C.quiver.vertex_index[str(p["left"])]
            v = B.quiver.vertex_index[str(p["right"])]
            dims[(u, v)] = int(p["dim"])
        left_action: dict = {}
        for name, per in obj.get("left_arrows", {}).items():
            if name not in C.quiver.arrow_index:
                raise ParseError(f"unknown left arrow {name!r}")
            ci = C.quiver.arrow_index[name]
            c = C.quiver.arrows[ci]
            blocks = {}
            for vlabel, grid in per.items():
                v = B.quiver.vertex_index[str(vlabel)]
                rows = dims.get((c.target, v), 0)
                cols = dims.get((c.source, v), 0)
                if len(grid) != rows or any(len(r) != cols for r in grid):
                    raise ParseError(
                        f"left block {name}/{vlabel} must be {rows}x{cols}")
                blocks[v] = Matrix(f, rows, cols,
                                   [[f.parse_scalar(str(x)) for x in row]
                                    for row in grid])
            left_action[ci] = blocks
        right_action: dict = {}
        for name, per in obj.get("right_arrows", {}).items():
            if name not in B.quiver.arrow_index:
                raise ParseError(f"unknown right arrow {name!r}")
            bi = B.quiver.arrow_index[name]
            b = B.quiver.arrows[bi]
            blocks = {}
            for ulabel, grid in per.items():
                u = C.quiver.vertex_index[str(ulabel)]
                rows = dims.get((u, b.source), 0)
                cols = dims.get((u, b.target), 0)
                if len(grid) != rows or any(len(r) != cols for r in grid):
                    raise ParseError(
                        f"right block {name}/{ulabel} must be {rows}x{cols}")
                blocks[u] = Matrix(f, rows, cols,
                                   [[f.parse_scalar(str(x)) for x in row]
                                    for row in grid])
            right_action[bi] = blocks
        X = Bimodule(C, B, dims, left_action, right_action)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad bimodule JSON: {exc}") from exc
    X.validate()
    return X
