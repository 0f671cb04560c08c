"""Right modules over a MonomialAlgebra as quiver representations.

A module assigns a dimension to every vertex and a matrix to every arrow,
acting on row vectors on the right; paths compose left to right, so the
matrix of a path is the product of its arrow matrices in word order.
"""

from __future__ import annotations

import json
from typing import Optional, Sequence

from .algebra import MonomialAlgebra
from .errors import DepthLimitExceeded, ParseError, ZeroModule
from .homint import HomInt
from .linalg import Matrix

#: default resolution depth for pd / injective dimension / Ext
DEFAULT_DEPTH_LIMIT = 64

#: syzygies larger than this abort with an honest "unknown" instead of
#: grinding exact arithmetic forever
SYZYGY_DIM_CAP = 1200


class Module:
    """Finite dimensional right module, immutable after construction."""

    __slots__ = ("algebra", "dims", "action", "_cache")

    def __init__(self, algebra: MonomialAlgebra, dims: Sequence[int],
                 action: Sequence[Matrix]):
        dims = tuple(int(d) for d in dims)
        if len(dims) != algebra.n_vertices:
            raise ValueError("dimension vector length mismatch")
        if any(d < 0 for d in dims):
            raise ValueError("negative dimension")
        action = tuple(action)
        if len(action) != len(algebra.quiver.arrows):
            raise ValueError("need one matrix per arrow")
        for i, a in enumerate(algebra.quiver.arrows):
            m = action[i]
            if (m.rows, m.cols) != (dims[a.source], dims[a.target]):
                raise ValueError(
                    f"arrow {a.name!r}: matrix is {m.rows}x{m.cols}, expected "
                    f"{dims[a.source]}x{dims[a.target]}")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "action", action)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, *a):
        raise AttributeError("Module is immutable")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __repr__(self):
        return f"Module(dims={self.dims})"

    def same_representation(self, other: "Module") -> bool:
        """Equality on the nose (same dims and matrices), not isomorphism."""
        return (self.algebra is other.algebra and self.dims == other.dims
                and all(a == b for a, b in zip(self.action, other.action)))

    def word_action(self, word: tuple[int, ...], source: int) -> Matrix:
        """Matrix of a path given by arrow indices, from its source vertex."""
        f = self.algebra.field
        m = Matrix.identity(f, self.dims[source])
        for ai in word:
            m = m * self.action[ai]
        return m

    def basis_action(self, z: int) -> Matrix:
        """Matrix of the algebra basis element with index z."""
        key = ("act", z)
        if key not in self._cache:
            el = self.algebra.basis[z]
            self._cache[key] = self.word_action(el.word, el.source)
        return self._cache[key]

    def to_json(self) -> dict:
        A = self.algebra
        dims = {A.quiver.vertices[v]: d for v, d in enumerate(self.dims) if d}
        arrows = {}
        for i, a in enumerate(A.quiver.arrows):
            if self.dims[a.source] and self.dims[a.target]:
                arrows[a.name] = [[A.field.format_scalar(x) for x in row]
                                  for row in self.action[i].entries]
        return {"dims": dims, "arrows": arrows}


class ModuleMap:
    """Homomorphism of modules: one block per vertex, acting on rows."""

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: Module, target: Module, blocks: Sequence[Matrix]):
        blocks = tuple(blocks)
        if len(blocks) != source.algebra.n_vertices:
            raise ValueError("need one block per vertex")
        for v, b in enumerate(blocks):
            if (b.rows, b.cols) != (source.dims[v], target.dims[v]):
                raise ValueError(
                    f"block at vertex {v}: {b.rows}x{b.cols}, expected "
                    f"{source.dims[v]}x{target.dims[v]}")
        self.source = source
        self.target = target
        self.blocks = blocks

    @staticmethod
    def zero(source: Module, target: Module) -> "ModuleMap":
        f = source.algebra.field
        return ModuleMap(source, target,
                         [Matrix.zeros(f, source.dims[v], target.dims[v])
                          for v in range(source.algebra.n_vertices)])

    @staticmethod
    def identity(m: Module) -> "ModuleMap":
        f = m.algebra.field
        return ModuleMap(m, m, [Matrix.identity(f, d) for d in m.dims])

    def verify(self):
        """Assert commutation with every arrow action."""
        A = self.source.algebra
        for i, a in enumerate(A.quiver.arrows):
            lhs = self.blocks[a.source] * self.target.action[i]
            rhs = self.source.action[i] * self.blocks[a.target]
            if lhs != rhs:
                raise AssertionError(f"map does not commute with arrow {a.name!r}")

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self followed by other."""
        if self.target is not other.source and self.target.dims != other.source.dims:
            raise ValueError("composition mismatch")
        return ModuleMap(self.source, other.target,
                         [b1 * b2 for b1, b2 in zip(self.blocks, other.blocks)])

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         [b1 + b2 for b1, b2 in zip(self.blocks, other.blocks)])

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         [b1 - b2 for b1, b2 in zip(self.blocks, other.blocks)])

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target, [b.scale(c) for b in self.blocks])

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def is_isomorphism(self) -> bool:
        return (self.source.dims == self.target.dims
                and all(b.rank() == b.rows for b in self.blocks))

    def flat(self) -> list:
        """All block entries in vertex-major row-major order."""
        out = []
        for b in self.blocks:
            for row in b.entries:
                out.extend(row)
        return out

    def __repr__(self):
        return f"ModuleMap({self.source.dims} -> {self.target.dims})"


# -- basic constructions -----------------------------------------------------


def zero_module(A: MonomialAlgebra) -> Module:
    f = A.field
    return Module(A, [0] * A.n_vertices,
                  [Matrix.zeros(f, 0, 0) for _ in A.quiver.arrows])


def simple_module(A: MonomialAlgebra, v: int) -> Module:
    f = A.field
    dims = [1 if w == v else 0 for w in range(A.n_vertices)]
    action = [Matrix.zeros(f, dims[a.source], dims[a.target])
              for a in A.quiver.arrows]
    return Module(A, dims, action)


class ProjectiveSum:
    """P = e_{v_1}A + ... + e_{v_k}A with a fixed coordinate layout.

    Coordinates at vertex w are pairs (summand, basis element) ordered by
    summand then by the algebra's basis order.
    """

    def __init__(self, algebra: MonomialAlgebra, summands: Sequence[int]):
        self.algebra = algebra
        self.summands = tuple(summands)
        self.layout = {w: [] for w in range(algebra.n_vertices)}
        for s, v in enumerate(self.summands):
            for z in algebra.proj_basis(v):
                self.layout[algebra.basis[z].target].append((s, z))
        self.position = {w: {sz: i for i, sz in enumerate(self.layout[w])}
                         for w in range(algebra.n_vertices)}
        self._module: Optional[Module] = None

    def __len__(self):
        return len(self.summands)

    def module(self) -> Module:
        if self._module is None:
            A = self.algebra
            f = A.field
            dims = [len(self.layout[w]) for w in range(A.n_vertices)]
            action = []
            for ai, a in enumerate(A.quiver.arrows):
                m = [[f.zero()] * dims[a.target] for _ in range(dims[a.source])]
                for i, (s, z) in enumerate(self.layout[a.source]):
                    zn = A.mult(z, A.arrow_basis[ai])
                    if zn is not None:
                        m[i][self.position[a.target][(s, zn)]] = f.one()
                action.append(Matrix(f, dims[a.source], dims[a.target], m))
            self._module = Module(A, dims, action)
        return self._module

    def generator_coordinate(self, s: int) -> tuple[int, int]:
        """(vertex, position) of the generator of summand s."""
        v = self.summands[s]
        return v, self.position[v][(s, self.algebra.e(v))]

    def hom_dim_to(self, N: Module) -> int:
        """dim Hom(P, N) = sum of N-dimensions at the summand vertices."""
        return sum(N.dims[v] for v in self.summands)

    def __repr__(self):
        return f"ProjectiveSum({self.summands})"


def projective_module(A: MonomialAlgebra, v: int) -> Module:
    return ProjectiveSum(A, (v,)).module()


def regular_module(A: MonomialAlgebra) -> Module:
    return ProjectiveSum(A, tuple(range(A.n_vertices))).module()


def direct_sum(mods: Sequence[Module]) -> Module:
    if not mods:
        raise ValueError("empty direct sum")
    A = mods[0].algebra
    f = A.field
    dims = [sum(m.dims[v] for m in mods) for v in range(A.n_vertices)]
    action = []
    for ai, a in enumerate(A.quiver.arrows):
        rows = []
        for mi, m in enumerate(mods):
            for i in range(m.dims[a.source]):
                row = []
                for mj, m2 in enumerate(mods):
                    if mj == mi:
                        row.extend(m.action[ai].entries[i])
                    else:
                        row.extend([f.zero()] * m2.dims[a.target])
                rows.append(row)
        action.append(Matrix(f, dims[a.source], dims[a.target], rows))
    return Module(A, dims, action)


def sum_inclusions(mods: Sequence[Module], total: Module) -> list[ModuleMap]:
    """Canonical inclusions of the factors into direct_sum(mods)."""
    f = total.algebra.field
    out = []
    offsets = [0] * total.algebra.n_vertices
    for m in mods:
        blocks = []
        for v in range(total.algebra.n_vertices):
            b = [[f.zero()] * total.dims[v] for _ in range(m.dims[v])]
            for i in range(m.dims[v]):
                b[i][offsets[v] + i] = f.one()
            blocks.append(Matrix(f, m.dims[v], total.dims[v], b))
        out.append(ModuleMap(m, total, blocks))
        for v in range(total.algebra.n_vertices):
            offsets[v] += m.dims[v]
    return out


# -- sub and quotient modules -------------------------------------------------


def close_under_action(M: Module, gens: Sequence[Matrix]) -> list[Matrix]:
    """Smallest submodule containing the given row spans, echelonized."""
    A = M.algebra
    f = A.field
    bases = [g.row_space() for g in gens]
    changed = True
    while changed:
        changed = False
        for ai, a in enumerate(A.quiver.arrows):
            if bases[a.source].rows == 0:
                continue
            img = bases[a.source] * M.action[ai]
            merged = bases[a.target].vstack(img).row_space()
            if merged.rows != bases[a.target].rows:
                bases[a.target] = merged
                changed = True
    return bases


def sub_module(M: Module, bases: Sequence[Matrix]) -> tuple[Module, ModuleMap]:
    """Module on echelonized row bases (closed under the action) + inclusion."""
    A = M.algebra
    dims = [b.rows for b in bases]
    action = []
    for ai, a in enumerate(A.quiver.arrows):
        rhs = bases[a.source] * M.action[ai]
        sol = bases[a.target].solve_left_echelon(rhs)
        if sol is None:
            raise ValueError("row spans are not closed under the action")
        action.append(sol)
    S = Module(A, dims, action)
    return S, ModuleMap(S, M, list(bases))


def quotient_with_section(M: Module, bases: Sequence[Matrix]):
    """(Q, projection, section blocks): section embeds the canonical
    complement coordinates back into M (a linear section of the projection)."""
    Q, proj = quotient_module(M, bases)
    f = M.algebra.field
    section = []
    for v in range(M.algebra.n_vertices):
        _, pivots = bases[v].rref()
        piv = set(pivots)
        nonpiv = [j for j in range(M.dims[v]) if j not in piv]
        rows = [[f.zero()] * M.dims[v] for _ in nonpiv]
        for jq, j in enumerate(nonpiv):
            rows[jq][j] = f.one()
        section.append(Matrix(f, len(nonpiv), M.dims[v], rows))
    return Q, proj, section


def quotient_module(M: Module, bases: Sequence[Matrix]) -> tuple[Module, ModuleMap]:
    """Quotient by the submodule spanned by echelonized `bases` + projection.

    Quotient coordinates are the non-pivot columns, so the construction is
    canonical."""
    A = M.algebra
    f = A.field
    projections = []
    lifts = []
    for v in range(A.n_vertices):
        R, pivots = bases[v].rref()
        piv = dict(zip(pivots, range(R.rows)))
        nonpiv = [j for j in range(M.dims[v]) if j not in piv]
        proj = [[f.zero()] * len(nonpiv) for _ in range(M.dims[v])]
        for jq, j in enumerate(nonpiv):
            proj[j][jq] = f.one()
        for p, r in piv.items():
            for jq, j in enumerate(nonpiv):
                proj[p][jq] = f.neg(R.entries[r][j])
        projections.append(Matrix(f, M.dims[v], len(nonpiv), proj))
        lift = [[f.zero()] * M.dims[v] for _ in nonpiv]
        for jq, j in enumerate(nonpiv):
            lift[jq][j] = f.one()
        lifts.append(Matrix(f, len(nonpiv), M.dims[v], lift))
    dims = [p.cols for p in projections]
    action = []
    for ai, a in enumerate(A.quiver.arrows):
        action.append(lifts[a.source] * M.action[ai] * projections[a.target])
    Q = Module(A, dims, action)
    return Q, ModuleMap(M, Q, projections)


def kernel_of_map(f: ModuleMap) -> tuple[Module, ModuleMap]:
    bases = [b.kernel_basis() for b in f.blocks]
    return sub_module(f.source, bases)


def image_of_map(f: ModuleMap) -> list[Matrix]:
    """Echelon bases of the image, one per vertex."""
    return [b.row_space() for b in f.blocks]


def radical_bases(M: Module) -> list[Matrix]:
    """Row bases of M rad(A) = sum of the arrow-action images."""
    A = M.algebra
    f = A.field
    out = []
    for v in range(A.n_vertices):
        stk = Matrix.zeros(f, 0, M.dims[v])
        for ai in A.quiver.in_arrows(v):
            stk = stk.vstack(M.action[ai])
        out.append(stk.row_space())
    return out


def top_module(M: Module) -> tuple[Module, ModuleMap]:
    return quotient_module(M, radical_bases(M))


# -- projective covers and syzygies -------------------------------------------


class Cover:
    """Projective cover P -> M."""

    __slots__ = ("proj", "map")

    def __init__(self, proj: ProjectiveSum, mp: ModuleMap):
        self.proj = proj
        self.map = mp


def projective_cover(M: Module) -> Cover:
    """Cover by one projective per top generator; kernel sits in P rad(A)."""
    if M.is_zero():
        raise ZeroModule("projective cover of the zero module")
    A = M.algebra
    f = A.field
    rad = radical_bases(M)
    summands = []
    gens = []
    for v in range(A.n_vertices):
        _, pivots = rad[v].rref()
        piv = set(pivots)
        for j in range(M.dims[v]):
            if j not in piv:
                row = [f.zero()] * M.dims[v]
                row[j] = f.one()
                summands.append(v)
                gens.append((v, row))
    P = ProjectiveSum(A, summands)
    Pm = P.module()
    blocks = []
    for w in range(A.n_vertices):
        rows = []
        for (s, z) in P.layout[w]:
            v, row = gens[s]
            rows.append(M.basis_action(z).apply_row(row))
        blocks.append(Matrix(f, Pm.dims[w], M.dims[w], rows))
    return Cover(P, ModuleMap(Pm, M, blocks))


def _syzygy_state(M: Module) -> dict:
    st = M._cache.get("syz")
    if st is None:
        st = {"chain": [], "covers": [], "incl": [], "done": M.is_zero(),
              "period": None, "capped": False}
        M._cache["syz"] = st
    return st


def _extend_syzygies(M: Module, upto: int, dim_cap: int = SYZYGY_DIM_CAP):
    """Grow the minimal syzygy chain of M to Omega^upto (cached).

    Sets `done` once a zero syzygy appears, `period` on an isomorphism
    repetition (a sound infinite-pd certificate for minimal resolutions),
    `capped` when a syzygy exceeds the dimension cap.
    """
    from .decompose import is_isomorphic  # cycle: decompose builds on modules

    st = _syzygy_state(M)
    while len(st["chain"]) < upto and not st["done"] and not st["capped"]:
        prev = st["chain"][-1] if st["chain"] else M
        cov = projective_cover(prev)
        K, incl = kernel_of_map(cov.map)
        st["covers"].append(cov)
        st["chain"].append(K)
        st["incl"].append(incl)
        if K.is_zero():
            st["done"] = True
            break
        if K.total_dim > dim_cap:
            st["capped"] = True
            break
        if st["period"] is None:
            for i, earlier in enumerate(st["chain"][:-1]):
                if earlier.dims == K.dims and is_isomorphic(earlier, K):
                    st["period"] = (i + 1, len(st["chain"]))
                    break


def syzygy(M: Module, n: int) -> Module:
    """Minimal n-th syzygy; Omega^0 M = M."""
    if n == 0:
        return M
    if M.is_zero():
        return M
    st = _syzygy_state(M)
    _extend_syzygies(M, n)
    if len(st["chain"]) >= n:
        return st["chain"][n - 1]
    if st["done"]:
        return zero_module(M.algebra)
    raise DepthLimitExceeded(
        f"syzygy chain capped before Omega^{n} (periodic or oversized)")


def syzygy_cover(M: Module, k: int) -> Cover:
    """Cover of Omega^k M (k >= 0); requires Omega^k M != 0."""
    st = _syzygy_state(M)
    _extend_syzygies(M, k + 1)
    if len(st["covers"]) <= k:
        raise DepthLimitExceeded(f"resolution capped before step {k}")
    return st["covers"][k]


def pd(M: Module, limit: int = DEFAULT_DEPTH_LIMIT) -> HomInt:
    """Projective dimension: exact value, certified infinity, or unknown."""
    if M.is_zero():
        return HomInt.none()
    st = _syzygy_state(M)
    while True:
        if st["done"]:
            k = len(st["chain"])
            while k > 0 and st["chain"][k - 1].is_zero():
                k -= 1
            return HomInt.exact(k)
        if st["period"] is not None:
            return HomInt.infinite()
        if st["capped"] or len(st["chain"]) > limit:
            return HomInt.at_least(len(st["chain"]))
        _extend_syzygies(M, len(st["chain"]) + 1)


def pd_certificate(M: Module) -> Optional[tuple[int, int]]:
    """(i, j) with Omega^i = Omega^j after pd() returned infinite."""
    return _syzygy_state(M)["period"]


def is_projective(M: Module) -> bool:
    return M.is_zero() or syzygy(M, 1).is_zero()


def dual(M: Module) -> Module:
    """Hom_k(M, k) as a right module over the opposite algebra."""
    op = M.algebra.opposite()
    return Module(op, M.dims, [m.transpose() for m in M.action])


def injective_dimension(M: Module, limit: int = DEFAULT_DEPTH_LIMIT) -> HomInt:
    """id(M) = pd of the dual over the opposite algebra."""
    return pd(dual(M), limit)


# -- Hom and Ext ----------------------------------------------------------------


def hom_space(M: Module, N: Module) -> list[ModuleMap]:
    """Canonical basis of Hom(M, N), echelonized over the flat coordinates."""
    if M.algebra is not N.algebra:
        raise ValueError("modules over different algebras")
    A = M.algebra
    f = A.field
    z = f.zero()
    offsets = []
    pos = 0
    for v in range(A.n_vertices):
        offsets.append(pos)
        pos += M.dims[v] * N.dims[v]
    total = pos
    if total == 0:
        return []
    equations = []
    for ai, a in enumerate(A.quiver.arrows):
        u, v = a.source, a.target
        Ma, Na = M.action[ai], N.action[ai]
        for i in range(M.dims[u]):
            for j in range(N.dims[v]):
                row = [z] * total
                for k in range(N.dims[u]):
                    c = Na.entries[k][j]
                    if c != z:
                        row[offsets[u] + i * N.dims[u] + k] = c
                for l in range(M.dims[v]):
                    c = Ma.entries[i][l]
                    if c != z:
                        idx = offsets[v] + l * N.dims[v] + j
                        row[idx] = f.sub(row[idx], c)
                equations.append(row)
    if equations:
        constraint = Matrix(f, len(equations), total, equations).transpose()
        sol = constraint.kernel_basis()
    else:
        sol = Matrix.identity(f, total)
    maps = []
    for r in range(sol.rows):
        vecrow = sol.entries[r]
        blocks = []
        for v in range(A.n_vertices):
            ent = [[vecrow[offsets[v] + i * N.dims[v] + j]
                    for j in range(N.dims[v])] for i in range(M.dims[v])]
            blocks.append(Matrix(f, M.dims[v], N.dims[v], ent))
        maps.append(ModuleMap(M, N, blocks))
    return maps


def hom_dim(M: Module, N: Module) -> int:
    return len(hom_space(M, N))


def ext_dim(M: Module, N: Module, i: int,
            limit: int = DEFAULT_DEPTH_LIMIT) -> int:
    """dim Ext^i(M, N) from the minimal resolution of M.

    Uses dim Ext^i = dim Hom(O^i, N) - dim Hom(P_{i-1}, N) + dim Hom(O^{i-1}, N)
    for i >= 1 (long exact sequence of 0 -> O^i -> P_{i-1} -> O^{i-1} -> 0).
    """
    if i < 0:
        raise ValueError("negative Ext degree")
    if i > limit:
        raise DepthLimitExceeded(f"Ext^{i} beyond depth limit {limit}")
    if M.is_zero() or N.is_zero():
        return 0
    if i == 0:
        return hom_dim(M, N)
    om_prev = syzygy(M, i - 1)
    if om_prev.is_zero():
        return 0
    om = syzygy(M, i)
    cov = syzygy_cover(M, i - 1)
    h1 = hom_dim(om, N) if not om.is_zero() else 0
    return h1 - cov.proj.hom_dim_to(N) + hom_dim(om_prev, N)


# -- serialization ---------------------------------------------------------------


def module_from_json(A: MonomialAlgebra, obj: dict, validate: bool = True) -> Module:
    f = A.field
    try:
        dims = [0] * A.n_vertices
        for label, d in obj.get("dims", {}).items():
            if str(label) not in A.quiver.vertex_index:
                raise ParseError(f"unknown vertex {label!r}")
            dims[A.quiver.vertex_index[str(label)]] = int(d)
        action = []
        arrows_obj = obj.get("arrows", {})
        for name in arrows_obj:
            if name not in A.quiver.arrow_index:
                raise ParseError(f"unknown arrow {name!r}")
        for ai, a in enumerate(A.quiver.arrows):
            rows, cols = dims[a.source], dims[a.target]
            if a.name in arrows_obj and rows and cols:
                grid = arrows_obj[a.name]
                if len(grid) != rows or any(len(r) != cols for r in grid):
                    raise ParseError(
                        f"arrow {a.name!r}: matrix must be {rows}x{cols}")
                action.append(Matrix(f, rows, cols,
                                     [[f.parse_scalar(str(x)) for x in row]
                                      for row in grid]))
            else:
                action.append(Matrix.zeros(f, rows, cols))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad module JSON: {exc}") from exc
    M = Module(A, dims, action)
    if validate:
        validate_module(M)
    return M


def validate_module(M: Module):
    """Check that the representation respects the algebra's relations."""
    A = M.algebra
    if A.is_monomial_presented:
        for word in A.forbidden:
            src = A.quiver.arrows[word[0]].source
            if not M.word_action(word, src).is_zero():
                names = [A.quiver.arrows[i].name for i in word]
                raise ParseError(f"forbidden path {names} does not act as zero")
        return
    # table-presented: actions of basis words must realize the table
    for i in range(A.dim):
        zi = A.basis[i]
        for j in range(A.dim):
            zj = A.basis[j]
            if zi.target != zj.source:
                continue
            prod = A.mult(i, j)
            lhs = M.basis_action(i) * M.basis_action(j)
            rhs = (M.basis_action(prod) if prod is not None
                   else Matrix.zeros(A.field, M.dims[zi.source], M.dims[zj.target]))
            if lhs != rhs:
                raise ParseError("representation does not satisfy the relations")


def load_module(A: MonomialAlgebra, path: str) -> Module:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read module file {path}: {exc}") from exc
    return module_from_json(A, obj)
