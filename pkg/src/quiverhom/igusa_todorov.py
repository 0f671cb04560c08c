"""The Igusa-Todorov function phi and its certificates.

K is the free abelian group on iso-classes of indecomposable non-projective
modules; the syzygy functor acts linearly on it.  phi(M) is the least n from
which the rank of Omega^n<M> stays constant forever.  A single consecutive
rank equality is not enough (radical-square-zero chains produce arbitrarily
long plateaus before a drop), so stabilization is certified by closing the
class universe under Omega: once the universe is a finite Omega-closed family
of size D, the rank sequence is constant from step D on (Fitting), and phi is
one past the last drop.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .algebra import MonomialAlgebra
from .decompose import decompose, enumerate_indecomposables, indec_isomorphic
from .errors import DepthLimitExceeded, NotNakayama, PhiUndecided
from .homint import HomInt
from .invariants import global_dimension
from .linalg import RATIONALS, Matrix
from .modules import (
    DEFAULT_DEPTH_LIMIT, Module, ProjectiveSum, direct_sum, ext_dim,
    is_projective, projective_cover, radical_bases, simple_module, sub_module,
    syzygy,
)

#: abort phi when the Omega-closure of the class universe exceeds this
UNIVERSE_CAP = 512


@dataclass
class KClassVector:
    """Element of K with non-negative multiplicities over registry ids."""

    counts: dict[int, int] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not self.counts

    def add(self, cid: int, mult: int = 1):
        if mult:
            self.counts[cid] = self.counts.get(cid, 0) + mult
            if self.counts[cid] == 0:
                del self.counts[cid]

    def to_json(self) -> dict:
        return {str(k): v for k, v in sorted(self.counts.items())}


class IsoClassRegistry:
    """Canonical representatives of indecomposable non-projective iso-classes.

    Ids are assigned in first-seen order; insert-or-lookup is idempotent, so
    repeated registration of isomorphic modules returns the same id."""

    def __init__(self, algebra: MonomialAlgebra):
        self.algebra = algebra
        self.reps: list[Module] = []
        self._by_dims: dict[tuple, list[int]] = {}
        self._omega: dict[int, KClassVector] = {}
        self._omega_full: dict[int, Counter] = {}
        self._ext: dict[tuple, int] = {}

    def __len__(self):
        return len(self.reps)

    def lookup_or_insert(self, M: Module) -> int:
        """Id of the class of an indecomposable non-projective module."""
        key = M.dims
        for cid in self._by_dims.get(key, ()):
            if indec_isomorphic(self.reps[cid], M):
                return cid
        cid = len(self.reps)
        self.reps.append(M)
        self._by_dims.setdefault(key, []).append(cid)
        return cid

    def omega_vector(self, cid: int) -> KClassVector:
        """Class of the minimal syzygy of class cid."""
        if cid not in self._omega:
            self._full_syzygy(cid)
        return self._omega[cid]

    def omega_full(self, cid: int) -> Counter:
        """Full decomposition of the syzygy, projective parts included, as a
        Counter over ('p', vertex) and ('c', id) labels."""
        if cid not in self._omega_full:
            self._full_syzygy(cid)
        return self._omega_full[cid]

    def _full_syzygy(self, cid: int):
        om = syzygy(self.reps[cid], 1)
        vec = KClassVector()
        full: Counter = Counter()
        if not om.is_zero():
            for s, mult in decompose(om).summands:
                if is_projective(s):
                    top_v = [v for v, d in enumerate(_top_dims(s)) if d]
                    full[("p", top_v[0])] += mult
                else:
                    sid = self.lookup_or_insert(s)
                    vec.add(sid, mult)
                    full[("c", sid)] += mult
        self._omega[cid] = vec
        self._omega_full[cid] = full

    def omega_level(self, cid: int, level: int) -> Counter:
        """Full decomposition multiset of Omega^level of class cid."""
        cur: Counter = Counter({("c", cid): 1})
        for _ in range(level):
            nxt: Counter = Counter()
            for label, mult in cur.items():
                if label[0] == "p":
                    continue  # syzygy of a projective is zero
                for lab2, m2 in self.omega_full(label[1]).items():
                    nxt[lab2] += mult * m2
            cur = nxt
        return cur

    def ext_dim_of_class(self, cid: int, test: Module, test_key: int,
                         d: int) -> int:
        key = (cid, test_key, d)
        if key not in self._ext:
            self._ext[key] = ext_dim(self.reps[cid], test, d)
        return self._ext[key]


def _top_dims(M: Module) -> list[int]:
    rad = radical_bases(M)
    return [M.dims[v] - rad[v].rows for v in range(M.algebra.n_vertices)]


def k_class(M: Module, registry: IsoClassRegistry) -> KClassVector:
    """[M] in K: decompose, drop projective summands, register the rest."""
    vec = KClassVector()
    if M.is_zero():
        return vec
    for s, mult in decompose(M).summands:
        if not is_projective(s):
            vec.add(registry.lookup_or_insert(s), mult)
    return vec


def subgroup_rank(vectors: Sequence[KClassVector]) -> int:
    """Rank of the subgroup of K generated by the vectors."""
    ids = sorted({cid for v in vectors for cid in v.counts})
    if not ids:
        return 0
    pos = {cid: i for i, cid in enumerate(ids)}
    rows = []
    for v in vectors:
        row = [0] * len(ids)
        for cid, mult in v.counts.items():
            row[pos[cid]] = mult
        rows.append(row)
    return Matrix.from_int_rows(RATIONALS, rows).rank()


@dataclass
class PhiResult:
    value: int
    ranks: list[int]          # r_0 .. r_{value + 1}
    universe: int             # size of the Omega-closed class family


def phi_with_trace(M: Module, registry: Optional[IsoClassRegistry] = None,
                   universe_cap: int = UNIVERSE_CAP) -> PhiResult:
    """phi with its rank trace; exact by the closure certificate."""
    if registry is None:
        registry = IsoClassRegistry(M.algebra)
    gen_ids = sorted(k_class(M, registry).counts)
    return phi_of_class_ids(registry, gen_ids, universe_cap)


def phi_of_class_ids(registry: IsoClassRegistry, gen_ids: Sequence[int],
                     universe_cap: int = UNIVERSE_CAP) -> PhiResult:
    """phi of a module whose non-projective summand classes are `gen_ids`.

    Avoids decomposing an explicitly assembled direct sum, which matters for
    the representation-finite phi-dimension of larger Nakayama algebras."""
    gen_ids = sorted(set(gen_ids))
    if not gen_ids:
        return PhiResult(0, [0, 0], 0)
    universe = set(gen_ids)
    frontier = list(gen_ids)
    while frontier:
        if len(universe) > universe_cap:
            raise PhiUndecided(
                f"Omega-closure exceeded {universe_cap} classes")
        cid = frontier.pop()
        for nid in registry.omega_vector(cid).counts:
            if nid not in universe:
                universe.add(nid)
                frontier.append(nid)
    ids = sorted(universe)
    pos = {cid: i for i, cid in enumerate(ids)}
    D = len(ids)
    omega_rows = []
    for cid in ids:
        row = [0] * D
        for nid, mult in registry.omega_vector(cid).counts.items():
            row[pos[nid]] = mult
        omega_rows.append(row)
    T = Matrix.from_int_rows(RATIONALS, omega_rows)
    vecs = Matrix.from_int_rows(
        RATIONALS, [[1 if i == pos[g] else 0 for i in range(D)] for g in gen_ids])
    ranks = [vecs.rank()]
    for _ in range(D + 1):
        vecs = vecs * T
        ranks.append(vecs.rank())
    # ranks are constant from step D on (Fitting on the closed universe)
    last_drop = -1
    for k in range(len(ranks) - 1):
        if ranks[k] > ranks[k + 1]:
            last_drop = k
    value = last_drop + 1
    if ranks[value] != ranks[-1]:
        raise AssertionError("rank trace is not stable after the last drop")
    return PhiResult(value, ranks[:value + 2], D)


def phi(M: Module, registry: Optional[IsoClassRegistry] = None) -> int:
    """The Igusa-Todorov function."""
    return phi_with_trace(M, registry).value


@dataclass
class PhiDimResult:
    value: int
    exact: bool
    mode: str

    def to_json(self):
        return {"value": self.value, "exact": self.exact, "mode": self.mode}


def _corpus_classes(A: MonomialAlgebra, registry: IsoClassRegistry,
                    universe_cap: int = UNIVERSE_CAP) -> list[int]:
    """Syzygy-closed generated corpus: simples, radicals of projectives,
    and everything their syzygies reach (capped)."""
    seeds: list[Module] = [simple_module(A, v) for v in range(A.n_vertices)]
    for v in range(A.n_vertices):
        P = ProjectiveSum(A, (v,)).module()
        rad, _ = sub_module(P, radical_bases(P))
        if not rad.is_zero():
            seeds.append(rad)
    ids: set[int] = set()
    for s in seeds:
        for cid in k_class(s, registry).counts:
            ids.add(cid)
    frontier = list(ids)
    while frontier and len(ids) <= universe_cap:
        cid = frontier.pop()
        for nid in registry.omega_vector(cid).counts:
            if nid not in ids:
                ids.add(nid)
                frontier.append(nid)
    return sorted(ids)


def phi_dim(A: MonomialAlgebra, mode: str,
            limit: int = DEFAULT_DEPTH_LIMIT) -> PhiDimResult:
    """phi-dimension of the algebra.

    rep-finite: phi of the sum of all indecomposables (exact; Nakayama only).
    gldim-finite: equals the finite global dimension (exact).
    corpus: max phi over a syzygy-closed corpus (certified lower bound).
    """
    if mode == "rep-finite":
        indec = enumerate_indecomposables(A)
        registry = IsoClassRegistry(A)
        ids = [registry.lookup_or_insert(m) for m in indec
               if not is_projective(m)]
        return PhiDimResult(phi_of_class_ids(registry, ids).value, True, mode)
    if mode == "gldim-finite":
        g = global_dimension(A, limit)
        if not g.is_finite_exact:
            raise DepthLimitExceeded(
                f"global dimension is {g}; gldim-finite mode needs a finite value")
        return PhiDimResult(int(g.lo), True, mode)
    if mode == "corpus":
        registry = IsoClassRegistry(A)
        try:
            ids = _corpus_classes(A, registry)
            return PhiDimResult(phi_of_class_ids(registry, ids).value,
                                False, mode)
        except (PhiUndecided, DepthLimitExceeded):
            return PhiDimResult(0, False, mode)
    raise ValueError(f"unknown phi-dim mode {mode!r}")


def phi_dim_auto(A: MonomialAlgebra,
                 limit: int = DEFAULT_DEPTH_LIMIT) -> PhiDimResult:
    """Best available mode: exact when the algebra allows it."""
    g = global_dimension(A, limit)
    if g.is_finite_exact:
        return PhiDimResult(int(g.lo), True, "gldim-finite")
    if A.is_nakayama():
        try:
            return phi_dim(A, "rep-finite", limit)
        except NotNakayama:  # pragma: no cover - guarded by is_nakayama
            pass
    return phi_dim(A, "corpus", limit)


@dataclass
class DivisionCertificate:
    """Sound witness that (X, Y) is a d-Division of M.

    Omega^{d+1} X and Omega^{d+1} Y are isomorphic as modules (minimal
    syzygies, full decomposition multisets compared), which forces the Ext
    functors to agree in all degrees >= d+1, while the test module separates
    the Ext^d dimensions."""

    d: int
    x_classes: tuple[int, ...]
    y_classes: tuple[int, ...]
    test_index: int
    ext_x: int
    ext_y: int

    def to_json(self) -> dict:
        return {"d": self.d, "x_classes": list(self.x_classes),
                "y_classes": list(self.y_classes), "test": self.test_index,
                "ext_x": self.ext_x, "ext_y": self.ext_y}


def _level_multiset(registry: IsoClassRegistry, classes: Sequence[int],
                    level: int) -> Counter:
    out: Counter = Counter()
    for cid in classes:
        out += registry.omega_level(cid, level)
    return out


def division_certificates(M: Module, window: int,
                          registry: Optional[IsoClassRegistry] = None,
                          tests: Optional[Sequence[Module]] = None
                          ) -> list[DivisionCertificate]:
    """All certified d-Divisions of M with 1 <= d <= window.

    X and Y range over sums of distinct non-projective indecomposable summand
    classes of M (projective summands never influence either condition), with
    disjoint nonempty supports."""
    if registry is None:
        registry = IsoClassRegistry(M.algebra)
    classes = sorted(k_class(M, registry).counts)
    if len(classes) < 2:
        return []
    A = M.algebra
    if tests is None:
        tests = [simple_module(A, v) for v in range(A.n_vertices)]
        tests += [registry.reps[c] for c in classes]
    out = []
    subsets = _nonempty_subsets(classes)
    for xi in range(len(subsets)):
        for yi in range(xi + 1, len(subsets)):
            X, Y = subsets[xi], subsets[yi]
            if set(X) & set(Y):
                continue
            for d in range(1, window + 1):
                if _level_multiset(registry, X, d + 1) \
                        != _level_multiset(registry, Y, d + 1):
                    continue
                witness = None
                for ti, T in enumerate(tests):
                    ex = sum(registry.ext_dim_of_class(c, T, ti, d) for c in X)
                    ey = sum(registry.ext_dim_of_class(c, T, ti, d) for c in Y)
                    if ex != ey:
                        witness = (ti, ex, ey)
                        break
                if witness is not None:
                    out.append(DivisionCertificate(
                        d, tuple(X), tuple(Y), *witness))
    return out


def max_certified_division(M: Module, window: int,
                           registry: Optional[IsoClassRegistry] = None) -> int:
    certs = division_certificates(M, window, registry)
    return max((c.d for c in certs), default=0)


def _nonempty_subsets(items: Sequence[int]) -> list[tuple[int, ...]]:
    out = []
    n = len(items)
    for mask in range(1, 1 << n):
        out.append(tuple(items[i] for i in range(n) if mask >> i & 1))
    return out
