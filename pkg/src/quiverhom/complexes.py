"""Bounded complexes, minimal projective resolutions, and derived functors
against stalk bimodules.

Cohomological indexing throughout: differentials raise degree by one, module
resolutions live in degrees <= 0, so pd of a stalk module equals its
classical projective dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import MonomialAlgebra
from .bimodules import (
    Bimodule, BimoduleMap, StalkBimodule, bimodule_cover, kernel_of_bimodule_map,
)
from .errors import DepthLimitExceeded, NotPerfect, ZeroComplex
from .homint import HomInt
from .linalg import Matrix
from .modules import (
    DEFAULT_DEPTH_LIMIT, Cover, Module, ModuleMap, ProjectiveSum, direct_sum,
    dual, hom_space, image_of_map, kernel_of_map, pd, projective_cover,
    quotient_module, sub_module, syzygy_cover, zero_module, _extend_syzygies,
    _syzygy_state,
)


class BoundedComplex:
    """Cohomologically indexed bounded complex of modules."""

    def __init__(self, algebra: MonomialAlgebra, terms: dict[int, Module],
                 diffs: dict[int, ModuleMap], check: bool = True):
        self.algebra = algebra
        self.terms = {i: m for i, m in terms.items() if not m.is_zero()}
        self.diffs = {}
        for i, d in diffs.items():
            if i in self.terms and (i + 1) in self.terms:
                self.diffs[i] = d
        if check:
            for i, d in self.diffs.items():
                if d.source.dims != self.terms[i].dims \
                        or d.target.dims != self.terms[i + 1].dims:
                    raise ValueError(f"differential at {i} has wrong endpoints")
                if (i + 1) in self.diffs:
                    if not d.compose(self.diffs[i + 1]).is_zero():
                        raise ValueError(f"d^2 != 0 at degree {i}")

    @staticmethod
    def stalk(m: Module, degree: int = 0) -> "BoundedComplex":
        return BoundedComplex(m.algebra, {degree: m}, {})

    @staticmethod
    def zero(algebra: MonomialAlgebra) -> "BoundedComplex":
        return BoundedComplex(algebra, {}, {})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree_range(self) -> Optional[tuple[int, int]]:
        if not self.terms:
            return None
        return min(self.terms), max(self.terms)

    def term(self, i: int) -> Module:
        return self.terms.get(i) or zero_module(self.algebra)

    def diff(self, i: int) -> ModuleMap:
        d = self.diffs.get(i)
        if d is not None:
            return d
        return ModuleMap.zero(self.term(i), self.term(i + 1))

    def shift(self, n: int) -> "BoundedComplex":
        """Shift degrees by +n (no sign bookkeeping is needed by callers)."""
        return BoundedComplex(self.algebra,
                              {i + n: m for i, m in self.terms.items()},
                              {i + n: d for i, d in self.diffs.items()},
                              check=False)

    def cohomology_dims(self) -> dict[int, int]:
        out = {}
        if not self.terms:
            return out
        lo, hi = self.degree_range
        for i in range(lo, hi + 1):
            t = self.term(i)
            if t.is_zero():
                continue
            rk_out = sum(b.rank() for b in self.diff(i).blocks)
            rk_in = sum(b.rank() for b in self.diff(i - 1).blocks)
            h = t.total_dim - rk_out - rk_in
            if h:
                out[i] = h
        return out

    def __repr__(self):
        body = ", ".join(f"{i}: {m.dims}" for i, m in sorted(self.terms.items()))
        return f"BoundedComplex({{{body}}})"


@dataclass
class ChainMap:
    source: BoundedComplex
    target: BoundedComplex
    maps: dict[int, ModuleMap]

    def map_at(self, i: int) -> ModuleMap:
        m = self.maps.get(i)
        if m is not None:
            return m
        return ModuleMap.zero(self.source.term(i), self.target.term(i))

    def verify_chain(self):
        degs = set(self.source.terms) | set(self.target.terms)
        for i in sorted(degs):
            lhs = self.source.diff(i).compose(self.map_at(i + 1))
            rhs = self.map_at(i).compose(self.target.diff(i))
            for b1, b2 in zip(lhs.blocks, rhs.blocks):
                if b1 != b2:
                    raise AssertionError(f"chain map fails to commute at {i}")


def _cohomology_data(X: BoundedComplex, i: int):
    """(H, cycle inclusion into term i, projection Z -> H, section H -> Z)."""
    Z, incl = kernel_of_map(X.diff(i))
    img = image_of_map(X.diff(i - 1))
    in_z = []
    for v in range(X.algebra.n_vertices):
        sol = incl.blocks[v].solve_left(img[v])
        if sol is None:
            raise AssertionError("boundaries are not cycles")
        in_z.append(sol.row_space())
    H, proj, section = _quotient_with_section(Z, in_z)
    return H, incl, proj, section


from .modules import quotient_with_section as _quotient_with_section


def verify_quasi_iso(cm: ChainMap):
    """Assert the chain map induces isomorphisms on all cohomologies."""
    cm.verify_chain()
    degs = set(cm.source.terms) | set(cm.target.terms)
    if not degs:
        return
    lo, hi = min(degs), max(degs)
    for i in range(lo, hi + 2):
        hs, incs, _, secs = _cohomology_data(cm.source, i)
        ht, inct, projt, _ = _cohomology_data(cm.target, i)
        if hs.dims != ht.dims:
            raise AssertionError(f"H^{i} dimensions differ: {hs.dims} vs {ht.dims}")
        if hs.total_dim == 0:
            continue
        ok = True
        for v in range(cm.source.algebra.n_vertices):
            # H_src -> Z_src -> term -> phi -> term -> (solve) Z_tgt -> H_tgt
            into_term = secs[v] * incs.blocks[v] * cm.map_at(i).blocks[v]
            sol = inct.blocks[v].solve_left(into_term)
            if sol is None:
                raise AssertionError(f"image of cycles is not a cycle at {i}")
            hmap = sol * projt.blocks[v]
            if hmap.rank() != hs.dims[v]:
                ok = False
        if not ok:
            raise AssertionError(f"induced map on H^{i} is not an isomorphism")


# -- algebra-valued matrices between projective sums ------------------------------

AlgElement = dict  # basis index -> scalar


def _el_add(f, a: AlgElement, b: AlgElement) -> AlgElement:
    out = dict(a)
    for k, c in b.items():
        s = f.add(out.get(k, f.zero()), c)
        if s == f.zero():
            out.pop(k, None)
        else:
            out[k] = s
    return out


def _el_scale(f, c, a: AlgElement) -> AlgElement:
    if c == f.zero():
        return {}
    return {k: f.mul(c, v) for k, v in a.items()}


def _el_mul(A: MonomialAlgebra, a: AlgElement, b: AlgElement) -> AlgElement:
    f = A.field
    out: AlgElement = {}
    for i, ci in a.items():
        for j, cj in b.items():
            k = A.mult(i, j)
            if k is None:
                continue
            s = f.add(out.get(k, f.zero()), f.mul(ci, cj))
            if s == f.zero():
                out.pop(k, None)
            else:
                out[k] = s
    return out


def _corner_inverse(A: MonomialAlgebra, u: AlgElement, w: int) -> AlgElement:
    """Inverse of a unit in the corner algebra e_w A e_w."""
    f = A.field
    corner = [z for z in range(A.dim)
              if A.basis[z].source == w and A.basis[z].target == w]
    index = {z: i for i, z in enumerate(corner)}
    rows = []
    for z in corner:
        prod = _el_mul(A, {z: f.one()}, u)
        row = [f.zero()] * len(corner)
        for k, c in prod.items():
            row[index[k]] = c
        rows.append(row)
    lmat = Matrix(f, len(corner), len(corner), rows)
    rhs = [f.zero()] * len(corner)
    rhs[index[A.e(w)]] = f.one()
    sol = lmat.solve_left(Matrix(f, 1, len(corner), [rhs]))
    if sol is None:
        raise AssertionError("corner element is not invertible")
    return {corner[i]: c for i, c in enumerate(sol.entries[0]) if c != f.zero()}


class AlgMatrix:
    """Right-module map between projective sums, written over the algebra.

    phi(gen_s) = sum_t gen_t * entries[(t, s)] with entries[(t, s)] supported
    on basis elements from target-summand vertex w_t to source-summand vertex
    v_s."""

    def __init__(self, source: ProjectiveSum, target: ProjectiveSum,
                 entries: dict[tuple[int, int], AlgElement]):
        self.source = source
        self.target = target
        self.entries = {k: v for k, v in entries.items() if v}

    @property
    def algebra(self):
        return self.source.algebra

    def entry(self, t: int, s: int) -> AlgElement:
        return self.entries.get((t, s), {})

    def compose(self, other: "AlgMatrix") -> "AlgMatrix":
        """self followed by other (other o self in function order)."""
        A = self.algebra
        f = A.field
        out: dict[tuple[int, int], AlgElement] = {}
        for (t, s), z in self.entries.items():
            for (x, t2), y in other.entries.items():
                if t2 != t:
                    continue
                prod = _el_mul(A, y, z)
                if prod:
                    key = (x, s)
                    out[key] = _el_add(f, out.get(key, {}), prod)
        return AlgMatrix(self.source, other.target, out)

    def to_module_map(self) -> ModuleMap:
        A = self.algebra
        f = A.field
        src, tgt = self.source.module(), self.target.module()
        blocks = [[[f.zero()] * tgt.dims[w] for _ in range(src.dims[w])]
                  for w in range(A.n_vertices)]
        for (t, s), el in self.entries.items():
            for y, c in el.items():
                # coordinate (s, z) at vertex target(z) maps via y*z
                for z in A.proj_basis(self.source.summands[s]):
                    prod = A.mult(y, z)
                    if prod is None:
                        continue
                    w = A.basis[z].target
                    i = self.source.position[w][(s, z)]
                    j = self.target.position[w][(t, prod)]
                    blocks[w][i][j] = f.add(blocks[w][i][j], c)
        return ModuleMap(src, tgt,
                         [Matrix(f, src.dims[w], tgt.dims[w], blocks[w])
                          for w in range(A.n_vertices)])

    @staticmethod
    def from_module_map(mp: ModuleMap, source: ProjectiveSum,
                        target: ProjectiveSum) -> "AlgMatrix":
        A = source.algebra
        f = A.field
        entries: dict[tuple[int, int], AlgElement] = {}
        for s in range(len(source.summands)):
            v, pos = source.generator_coordinate(s)
            row = mp.blocks[v].entries[pos] if mp.blocks[v].rows else ()
            for j, c in enumerate(row):
                if c == f.zero():
                    continue
                t, z = target.layout[v][j]
                key = (t, s)
                entries.setdefault(key, {})
                entries[key][z] = f.add(entries[key].get(z, f.zero()), c)
        return AlgMatrix(source, target, entries)

    def find_unit_entry(self) -> Optional[tuple[int, int]]:
        """(t, s) of an entry with nonzero idempotent part, if any."""
        A = self.algebra
        best = None
        for (t, s), el in self.entries.items():
            w = self.target.summands[t]
            if self.source.summands[s] != w:
                continue
            if el.get(A.e(w), A.field.zero()) != A.field.zero():
                key = (t, s)
                if best is None or key < best:
                    best = key
        return best

    def is_radical(self) -> bool:
        return self.find_unit_entry() is None


@dataclass
class ProjComplex:
    """Complex of projective sums with a chain map down to a target complex."""

    algebra: MonomialAlgebra
    terms: dict[int, ProjectiveSum]
    diffs: dict[int, AlgMatrix]
    eps: dict[int, ModuleMap]
    target: Optional[BoundedComplex]
    complete: bool
    bottom: int

    def support(self) -> list[int]:
        return sorted(i for i, p in self.terms.items() if len(p.summands))

    def term_module(self, i: int) -> Module:
        p = self.terms.get(i)
        return p.module() if p is not None else zero_module(self.algebra)

    def to_bounded_complex(self) -> BoundedComplex:
        terms = {i: p.module() for i, p in self.terms.items() if len(p.summands)}
        diffs = {}
        for i, d in self.diffs.items():
            if i in terms and i + 1 in terms:
                diffs[i] = d.to_module_map()
        return BoundedComplex(self.algebra, terms, diffs, check=False)

    def chain_map_to_target(self) -> ChainMap:
        if self.target is None:
            raise ValueError("resolution has no target complex")
        return ChainMap(self.to_bounded_complex(), self.target,
                        {i: m for i, m in self.eps.items()
                         if i in self.terms and len(self.terms[i].summands)})


def resolve_complex(X: BoundedComplex, down_to: int) -> ProjComplex:
    """Projective complex quasi-isomorphic to X, by descending pullback covers.

    At each degree take a projective cover of V^n = X^n x_{X^{n+1}} Z^{n+1}(P);
    the construction stops early once the cover is zero (then the resolution
    is complete) or at `down_to`.
    """
    A = X.algebra
    if X.is_zero():
        return ProjComplex(A, {}, {}, {}, X, True, 0)
    lo, hi = X.degree_range
    terms: dict[int, ProjectiveSum] = {}
    diffs: dict[int, AlgMatrix] = {}
    eps: dict[int, ModuleMap] = {}
    complete = False
    bottom = down_to
    prev_proj: Optional[ProjectiveSum] = None
    prev_kernel_incl: Optional[ModuleMap] = None  # K^{n+1} -> P^{n+1}
    for n in range(hi, down_to - 1, -1):
        Xn = X.term(n)
        if prev_proj is None:
            K = zero_module(A)
            kincl = None
        else:
            pm = prev_proj.module()
            dmap = diffs.get(n + 1)
            if dmap is None:
                K, kincl = pm, ModuleMap.identity(pm)
            else:
                K, kincl = kernel_of_map(dmap.to_module_map())
        # V = ker( X^n + K --> X^{n+1}, (x, k) |-> d(x) - eps(k) )
        W = direct_sum([Xn, K])
        f = A.field
        tgt = X.term(n + 1)
        blocks = []
        for v in range(A.n_vertices):
            top = X.diff(n).blocks[v]
            if K.is_zero() or prev_proj is None:
                bot = Matrix.zeros(f, K.dims[v], tgt.dims[v])
            else:
                bot = (kincl.blocks[v] * eps[n + 1].blocks[v]).scale(f.from_int(-1))
            blocks.append(top.vstack(bot))
        V, vincl = kernel_of_map(ModuleMap(W, tgt, blocks))
        if V.is_zero():
            if n <= lo:
                # nothing left anywhere below the window: resolution closed
                complete = True
                bottom = n
                break
            # a gap inside the window: keep an empty term and continue down
            empty = ProjectiveSum(A, ())
            terms[n] = empty
            eps[n] = ModuleMap.zero(empty.module(), Xn)
            prev_proj = empty
            bottom = n
            continue
        cov = projective_cover(V)
        terms[n] = cov.proj
        pm = cov.proj.module()
        # project V (inside X^n + K) onto the two factors
        exn_blocks = []
        pk_blocks = []
        for v in range(A.n_vertices):
            into_w = cov.map.blocks[v] * vincl.blocks[v]
            exn = Matrix(f, pm.dims[v], Xn.dims[v],
                         [row[:Xn.dims[v]] for row in into_w.entries])
            kpart = Matrix(f, pm.dims[v], K.dims[v],
                           [row[Xn.dims[v]:] for row in into_w.entries])
            exn_blocks.append(exn)
            if prev_proj is not None and kincl is not None:
                kpart = kpart * kincl.blocks[v]
            pk_blocks.append(kpart)
        eps[n] = ModuleMap(pm, Xn, exn_blocks)
        if prev_proj is not None:
            dmap = ModuleMap(pm, prev_proj.module(), pk_blocks)
            diffs[n] = AlgMatrix.from_module_map(dmap, cov.proj, prev_proj)
        prev_proj = cov.proj
        bottom = n
    return ProjComplex(A, terms, diffs, eps, X, complete, bottom)


def resolve_module_stalk(M: Module, degree: int, depth: int) -> ProjComplex:
    """ProjComplex form of the cached minimal syzygy resolution of a module.

    terms[degree - k] covers Omega^k M; the differential at degree - k - 1 is
    the cover of Omega^{k+1} followed by the kernel inclusion into P_k."""
    A = M.algebra
    X = BoundedComplex.stalk(M, degree)
    if M.is_zero():
        return ProjComplex(A, {}, {}, {}, X, True, degree)
    st = _syzygy_state(M)
    _extend_syzygies(M, depth + 1)
    terms: dict[int, ProjectiveSum] = {}
    diffs: dict[int, AlgMatrix] = {}
    eps: dict[int, ModuleMap] = {}
    n = min(len(st["covers"]), depth + 2)
    for k in range(n):
        cov = st["covers"][k]
        deg = degree - k
        terms[deg] = cov.proj
        if k == 0:
            eps[deg] = cov.map
        else:
            kincl = st["incl"][k - 1]
            diffs[deg] = AlgMatrix.from_module_map(
                cov.map.compose(kincl), cov.proj, st["covers"][k - 1].proj)
    return ProjComplex(A, terms, diffs, eps, X, st["done"], degree - (n - 1))


# -- minimization ----------------------------------------------------------------


def _eliminate(terms: dict, diffs: dict, eps: dict, i: int, t0: int, s0: int):
    """Split off the contractible pair gen_{s0} -> gen_{t0} of diffs[i]."""
    d = diffs[i]
    P, Q = d.source, d.target
    A = P.algebra
    f = A.field
    w = Q.summands[t0]
    uinv = _corner_inverse(A, d.entry(t0, s0), w)
    ws = {}
    for s in range(len(P.summands)):
        if s == s0:
            continue
        z = d.entry(t0, s)
        if z:
            corr = _el_mul(A, uinv, z)
            if corr:
                ws[s] = corr
    newP = ProjectiveSum(A, tuple(v for s, v in enumerate(P.summands) if s != s0))
    newQ = ProjectiveSum(A, tuple(v for t, v in enumerate(Q.summands) if t != t0))
    smap = {}
    k = 0
    for s in range(len(P.summands)):
        if s != s0:
            smap[s] = k
            k += 1
    tmap = {}
    k = 0
    for t in range(len(Q.summands)):
        if t != t0:
            tmap[t] = k
            k += 1
    # Schur complement on the pivoted differential; corrections can create
    # entries at positions where the old differential was zero
    nd: dict[tuple[int, int], AlgElement] = {}
    for (t, s), z in d.entries.items():
        if t == t0 or s == s0:
            continue
        nd[(tmap[t], smap[s])] = dict(z)
    for t in range(len(Q.summands)):
        if t == t0:
            continue
        b = d.entry(t, s0)
        if not b:
            continue
        for s, w_s in ws.items():
            corr = _el_mul(A, b, w_s)
            if not corr:
                continue
            key = (tmap[t], smap[s])
            merged = _el_add(f, nd.get(key, {}),
                             _el_scale(f, f.from_int(-1), corr))
            if merged:
                nd[key] = merged
            else:
                nd.pop(key, None)
    diffs[i] = AlgMatrix(newP, newQ, nd)
    if i - 1 in diffs:
        e = diffs[i - 1]
        ne = {(smap[s], r): z for (s, r), z in e.entries.items() if s != s0}
        diffs[i - 1] = AlgMatrix(e.source, newP, ne)
    if i + 1 in diffs:
        g = diffs[i + 1]
        ng = {(x, tmap[t]): z for (x, t), z in g.entries.items() if t != t0}
        diffs[i + 1] = AlgMatrix(newQ, g.target, ng)
    # transport the chain map to the resolved complex
    if i in eps:
        npm, pm = newP.module(), P.module()
        blocks = []
        for x in range(A.n_vertices):
            rows = [[f.zero()] * pm.dims[x] for _ in range(npm.dims[x])]
            for idx, (snew_owner, z) in enumerate(newP.layout[x]):
                s_old = [s for s in smap if smap[s] == snew_owner][0]
                rows[idx][P.position[x][(s_old, z)]] = f.one()
                if s_old in ws:
                    prod = _el_mul(A, ws[s_old], {z: f.one()})
                    for y, c in prod.items():
                        col = P.position[x][(s0, y)]
                        rows[idx][col] = f.sub(rows[idx][col], c)
            blocks.append(Matrix(f, npm.dims[x], pm.dims[x], rows))
        sigma = ModuleMap(npm, pm, blocks)
        eps[i] = sigma.compose(eps[i])
    if i + 1 in eps:
        nqm, qm = newQ.module(), Q.module()
        blocks = []
        for x in range(A.n_vertices):
            rows = [[f.zero()] * qm.dims[x] for _ in range(nqm.dims[x])]
            for idx, (tnew_owner, z) in enumerate(newQ.layout[x]):
                t_old = [t for t in tmap if tmap[t] == tnew_owner][0]
                rows[idx][Q.position[x][(t_old, z)]] = f.one()
            blocks.append(Matrix(f, nqm.dims[x], qm.dims[x], rows))
        tau = ModuleMap(nqm, qm, blocks)
        eps[i + 1] = tau.compose(eps[i + 1])
    terms[i] = newP
    terms[i + 1] = newQ


def minimize(pc: ProjComplex) -> ProjComplex:
    """Homotopy-equivalent complex with all differentials in the radical."""
    terms = dict(pc.terms)
    diffs = dict(pc.diffs)
    eps = dict(pc.eps)
    while True:
        pivot = None
        for i in sorted(diffs):
            pos = diffs[i].find_unit_entry()
            if pos is not None:
                pivot = (i, pos)
                break
        if pivot is None:
            break
        i, (t0, s0) = pivot
        _eliminate(terms, diffs, eps, i, t0, s0)
    terms = {i: p for i, p in terms.items() if p.summands}
    diffs = {i: d for i, d in diffs.items()
             if i in terms and i + 1 in terms and d.entries}
    eps = {i: m for i, m in eps.items() if i in terms}
    return ProjComplex(pc.algebra, terms, diffs, eps, pc.target,
                       pc.complete, pc.bottom)


# -- invariants -------------------------------------------------------------------


@dataclass(frozen=True)
class ComplexInvariants:
    sup: int
    pd: HomInt
    width: HomInt


def _minimal_resolution_of(X: BoundedComplex, limit: int) -> ProjComplex:
    if len(X.terms) == 1:
        ((d0, m),) = X.terms.items()
        return resolve_module_stalk(m, d0, limit)
    lo, _ = X.degree_range
    return minimize(resolve_complex(X, lo - limit - 1))


def complex_invariants(X: BoundedComplex,
                       limit: int = DEFAULT_DEPTH_LIMIT) -> ComplexInvariants:
    """sup, pd and homological width, read off the minimal resolution."""
    hd = X.cohomology_dims()
    if not hd:
        raise ZeroComplex("complex has no cohomology")
    if len(X.terms) == 1:
        ((d0, m),) = X.terms.items()
        p = pd(m, limit)
        sup = -d0
        return ComplexInvariants(sup, p.plus(-d0), p)
    pc = _minimal_resolution_of(X, limit)
    support = pc.support()
    sup = -max(support)
    if sup != -max(hd):
        raise AssertionError(
            "sup of the minimal resolution disagrees with cohomology")
    if pc.complete and pc.to_bounded_complex().cohomology_dims() != hd:
        raise AssertionError(
            "minimal resolution does not reproduce the cohomology")
    if pc.complete:
        p = HomInt.exact(-min(support))
    else:
        p = _tail_verdict(pc, X.degree_range[0])
    return ComplexInvariants(sup, p, p.plus(sup))


def _tail_verdict(pc: ProjComplex, window_lo: int) -> HomInt:
    """Infinite (periodic tail kernels) or a floor, for incomplete resolutions."""
    from .decompose import is_isomorphic

    tails = []
    for j in range(window_lo, pc.bottom - 1, -1):
        d = pc.diffs.get(j)
        if d is None or j not in pc.terms:
            continue
        K, _ = kernel_of_map(d.to_module_map())
        if K.is_zero():
            continue
        for earlier in tails:
            if earlier.dims == K.dims and is_isomorphic(earlier, K):
                return HomInt.infinite()
        tails.append(K)
    return HomInt.at_least(-pc.bottom)


def is_perfect(X: BoundedComplex, limit: int = DEFAULT_DEPTH_LIMIT):
    """('yes' | 'no' | 'unknown', certificate).

    'no' comes with a syzygy-periodicity certificate (pair of resolution
    degrees carrying isomorphic kernels)."""
    if X.is_zero() or not X.cohomology_dims():
        return "yes", None
    if len(X.terms) == 1:
        ((d0, m),) = X.terms.items()
        from .modules import pd_certificate
        p = pd(m, limit)
        if p.is_none or p.is_finite_exact:
            return "yes", None
        if p.is_infinite:
            return "no", pd_certificate(m)
        return "unknown", None
    inv = complex_invariants(X, limit)
    if inv.pd.is_finite_exact or inv.pd.is_none:
        return "yes", None
    if inv.pd.is_infinite:
        return "no", "periodic tail"
    return "unknown", None


# -- duality ------------------------------------------------------------------------


def dual_complex(X: BoundedComplex) -> BoundedComplex:
    """Termwise k-dual over the opposite algebra, degrees negated."""
    terms = {-i: dual(m) for i, m in X.terms.items()}
    diffs = {}
    for i, d in X.diffs.items():
        diffs[-i - 1] = ModuleMap(terms[-i - 1], terms[-i],
                                  [b.transpose() for b in d.blocks])
    op = X.algebra.opposite()
    return BoundedComplex(op, terms, diffs, check=False)


def _op_basis_map(A: MonomialAlgebra) -> dict[int, int]:
    if "op_basis_map" not in A._cache:
        op = A.opposite()
        lookup = {}
        for j, z in enumerate(op.basis):
            lookup[(z.target, z.source, z.word)] = j
        mp = {}
        for i, z in enumerate(A.basis):
            mp[i] = lookup[(z.source, z.target, tuple(reversed(z.word)))]
        A._cache["op_basis_map"] = mp
    return A._cache["op_basis_map"]


def _dual_proj(pc: ProjComplex) -> ProjComplex:
    """Apply Hom(-, A) termwise to a complex of projectives."""
    A = pc.algebra
    op = A.opposite()
    opmap = _op_basis_map(A)
    terms = {}
    for i, p in pc.terms.items():
        terms[-i] = ProjectiveSum(op, p.summands)
    diffs = {}
    for i, d in pc.diffs.items():
        entries: dict[tuple[int, int], AlgElement] = {}
        for (t, s), z in d.entries.items():
            entries[(s, t)] = {opmap[y]: c for y, c in z.items()}
        diffs[-i - 1] = AlgMatrix(terms[-i - 1], terms[-i], entries)
    return ProjComplex(op, terms, diffs, {}, None, True,
                       -max(pc.terms) if pc.terms else 0)


def dual_perfect(X: BoundedComplex, limit: int = DEFAULT_DEPTH_LIMIT) -> BoundedComplex:
    """RHom(-, algebra) of a perfect complex, as a minimal complex over the
    opposite algebra: pd(X*) = -sup(X) and sup(X*) = -pd(X)."""
    pc = _minimal_resolution_of(X, limit)
    if not pc.complete:
        raise NotPerfect("complex has no bounded projective resolution "
                         f"within depth {limit}")
    return _dual_proj(pc).to_bounded_complex()


# -- truncations (quasi-isomorphic replacements) -------------------------------------


def proj_truncate(X: BoundedComplex, limit: int = DEFAULT_DEPTH_LIMIT,
                  certify: bool = True) -> BoundedComplex:
    """Quasi-isomorphic complex on [a, b] with projective terms above a.

    Fold of the projective resolution: the bottom term becomes the cokernel
    of the differential entering degree a."""
    if X.is_zero():
        return X
    a, b = X.degree_range
    if a == b:
        return X
    pc = resolve_complex(X, a - 1)
    verify_quasi_iso(pc.chain_map_to_target())
    terms = {}
    diffs = {}
    for i in range(a + 1, b + 1):
        terms[i] = pc.term_module(i)
        if i + 1 <= b and i in pc.diffs:
            diffs[i] = pc.diffs[i].to_module_map()
    incoming = pc.diffs.get(a - 1)
    pa = pc.term_module(a)
    img = image_of_map(incoming.to_module_map()) if incoming is not None \
        else [Matrix.zeros(X.algebra.field, 0, d) for d in pa.dims]
    Q, proj, section = _quotient_with_section(pa, img)
    terms[a] = Q
    if a + 1 in terms and a in pc.diffs:
        da = pc.diffs[a].to_module_map()
        blocks = [s * bl for s, bl in zip(section, da.blocks)]
        diffs[a] = ModuleMap(Q, terms[a + 1], blocks)
    U = BoundedComplex(X.algebra, terms, diffs)
    if certify:
        maps = {i: ModuleMap.identity(pc.term_module(i))
                for i in range(a + 1, b + 1) if i in pc.terms}
        if a in pc.terms:
            maps[a] = proj
        verify_quasi_iso(ChainMap(pc.to_bounded_complex(), U, maps))
    return U


def inj_truncate(X: BoundedComplex, limit: int = DEFAULT_DEPTH_LIMIT) -> BoundedComplex:
    """Quasi-isomorphic complex on [a, b] with injective terms below b."""
    return dual_complex(proj_truncate(dual_complex(X), limit))


# -- derived functors against stalk bimodules ------------------------------------------


def _tensor_term(P: ProjectiveSum, X: Bimodule) -> tuple[Module, list[dict[int, int]]]:
    """e_{v_1}X + ... + e_{v_k}X as a right module; offsets[s][w]."""
    B = X.right
    f = X.field
    offsets = []
    dims = [0] * B.n_vertices
    for v in P.summands:
        per = {}
        for w in range(B.n_vertices):
            per[w] = dims[w]
            dims[w] += X.dim_at(v, w)
        offsets.append(per)
    action = []
    for bi, b in enumerate(B.quiver.arrows):
        rows = [[f.zero()] * dims[b.target] for _ in range(dims[b.source])]
        for s, v in enumerate(P.summands):
            blk = X.right_block(bi, v)
            for i in range(blk.rows):
                for j in range(blk.cols):
                    if blk.entries[i][j] != f.zero():
                        rows[offsets[s][b.source] + i][offsets[s][b.target] + j] \
                            = blk.entries[i][j]
        action.append(Matrix(f, dims[b.source], dims[b.target], rows))
    return Module(B, dims, action), offsets


def _tensor_diff(d: AlgMatrix, X: Bimodule, src: tuple, tgt: tuple) -> ModuleMap:
    src_mod, src_off = src
    tgt_mod, tgt_off = tgt
    A = d.algebra
    B = X.right
    f = X.field
    blocks = [[[f.zero()] * tgt_mod.dims[w] for _ in range(src_mod.dims[w])]
              for w in range(B.n_vertices)]
    for (t, s), el in d.entries.items():
        for z, c in el.items():
            lop = X.left_element_operator(z)
            for w in range(B.n_vertices):
                blk = lop.blocks[w]
                for i in range(blk.rows):
                    for j in range(blk.cols):
                        val = blk.entries[i][j]
                        if val != f.zero():
                            r = src_off[s][w] + i
                            col = tgt_off[t][w] + j
                            blocks[w][r][col] = f.add(blocks[w][r][col],
                                                      f.mul(c, val))
    return ModuleMap(src_mod, tgt_mod,
                     [Matrix(f, src_mod.dims[w], tgt_mod.dims[w], blocks[w])
                      for w in range(B.n_vertices)])


def _left_side_projective(X: Bimodule) -> bool:
    """Projective as a left module; then - (x)_C X is already exact."""
    if "left_proj" not in X._cache:
        from .modules import is_projective
        X._cache["left_proj"] = is_projective(X.left_module_over_op())
    return X._cache["left_proj"]


def derived_tensor(source, stalk: StalkBimodule,
                   limit: int = DEFAULT_DEPTH_LIMIT) -> BoundedComplex:
    """source (x)^L X for a module or complex over the bimodule's left algebra.

    When X is projective on its left side the tensor functor is exact and is
    applied directly; otherwise the source is replaced by its minimal
    projective resolution, which must terminate within the limit."""
    from .bimodules import tensor_over, tensor_over_map
    X = stalk.bimodule
    if isinstance(source, Module):
        source_zero = source.is_zero()
    else:
        source_zero = source.is_zero()
    if source_zero or X.is_zero():
        return BoundedComplex.zero(X.right)
    if _left_side_projective(X):
        if isinstance(source, Module):
            out = BoundedComplex.stalk(tensor_over(source, X))
        else:
            terms = {i: tensor_over(m, X) for i, m in source.terms.items()}
            diffs = {i: tensor_over_map(d, X) for i, d in source.diffs.items()}
            out = BoundedComplex(X.right, terms, diffs, check=False)
        return out.shift(stalk.degree)
    if isinstance(source, Module):
        p = pd(source, limit)
        if p.is_none:
            return BoundedComplex.zero(X.right)
        if not p.is_finite_exact:
            raise DepthLimitExceeded(
                "left-side resolution does not terminate within the limit")
        pc = resolve_module_stalk(source, 0, int(p.lo))
    else:
        lo, _ = source.degree_range
        pc = resolve_complex(source, lo - limit - 1)
        if not pc.complete:
            raise DepthLimitExceeded(
                "left-side resolution does not terminate within the limit")
        pc = minimize(pc)
    data = {i: _tensor_term(P, X) for i, P in pc.terms.items() if P.summands}
    terms = {i: d[0] for i, d in data.items()}
    diffs = {}
    for i, d in pc.diffs.items():
        if i in data and i + 1 in data:
            diffs[i] = _tensor_diff(d, X, data[i], data[i + 1])
    return BoundedComplex(X.right, terms, diffs).shift(stalk.degree)


class _HomTerm:
    """Hom_A(T, N) for a (B, A)-bimodule T, as a right B-module."""

    def __init__(self, T: Bimodule, N: Module):
        B = T.left
        f = T.field
        rm = T.right_module()
        self.T, self.N, self.rm = T, N, rm
        self.basis = hom_space(rm, N)
        total = len(self.basis)
        flat_dim = sum(a * b for a, b in zip(rm.dims, N.dims))
        self.flat = Matrix(f, total, flat_dim, [h.flat() for h in self.basis])
        offs = T.right_offsets()
        # operators f -> f o (left action of e_v / arrow b)
        vertex_ops = []
        for v in range(B.n_vertices):
            blocks = []
            for w in range(T.right.n_vertices):
                m = [[f.zero()] * rm.dims[w] for _ in range(rm.dims[w])]
                for u in range(B.n_vertices):
                    if u == v:
                        for i in range(T.dim_at(u, w)):
                            m[offs[w][u] + i][offs[w][u] + i] = f.one()
                blocks.append(Matrix(f, rm.dims[w], rm.dims[w], m))
            proj_v = ModuleMap(rm, rm, blocks)
            vertex_ops.append(self._op_matrix(proj_v))
        arrow_ops = []
        for bi, b in enumerate(B.quiver.arrows):
            blocks = []
            for w in range(T.right.n_vertices):
                m = [[f.zero()] * rm.dims[w] for _ in range(rm.dims[w])]
                blk = T.left_block(bi, w)  # (b.target, w) -> (b.source, w)
                for i in range(blk.rows):
                    for j in range(blk.cols):
                        if blk.entries[i][j] != f.zero():
                            m[offs[w][b.target] + i][offs[w][b.source] + j] \
                                = blk.entries[i][j]
                blocks.append(Matrix(f, rm.dims[w], rm.dims[w], m))
            lam = ModuleMap(rm, rm, blocks)
            arrow_ops.append(self._op_matrix(lam))
        self.bases = [op.row_space() for op in vertex_ops]
        dims = [bb.rows for bb in self.bases]
        if sum(dims) != total:
            raise AssertionError("left idempotents do not grade the Hom space")
        action = []
        for bi, b in enumerate(B.quiver.arrows):
            rhs = self.bases[b.source] * arrow_ops[bi]
            sol = self.bases[b.target].solve_left(rhs)
            if sol is None:
                raise AssertionError("Hom grading not respected by arrows")
            action.append(sol)
        self.module = Module(B, dims, action)

    def _op_matrix(self, pre: ModuleMap) -> Matrix:
        """Matrix of f -> pre;f on hom coordinates."""
        f = self.T.field
        rows = []
        for h in self.basis:
            g = pre.compose(h)
            sol = self.flat.solve_left(Matrix(f, 1, self.flat.cols, [g.flat()]))
            if sol is None:
                raise AssertionError("Hom space is not closed under the action")
            rows.append(list(sol.entries[0]))
        return Matrix(f, len(self.basis), len(self.basis), rows)

    def coords_of(self, mp: ModuleMap):
        f = self.T.field
        sol = self.flat.solve_left(Matrix(f, 1, self.flat.cols, [mp.flat()]))
        return None if sol is None else list(sol.entries[0])


def derived_hom(stalk: StalkBimodule, N: Module,
                limit: int = DEFAULT_DEPTH_LIMIT) -> BoundedComplex:
    """RHom over the right-side algebra against N, with the residual
    left-side action: a complex over the bimodule's left algebra.

    The bimodule is replaced by a resolution by bimodule covers, truncated at
    pd of its right module (the truncation kernel stays projective on the
    right), so the output lives in degrees [0, pd]."""
    T0 = stalk.bimodule
    B = T0.left
    if T0.is_zero() or N.is_zero():
        return BoundedComplex.zero(B)
    p = pd(T0.right_module(), limit)
    if p.is_none:
        return BoundedComplex.zero(B)
    if not p.is_finite_exact:
        raise DepthLimitExceeded(
            "right-side projective dimension of the bimodule is not finite "
            "within the limit")
    m = int(p.lo)
    bim_terms: dict[int, Bimodule] = {}
    bim_diffs: dict[int, BimoduleMap] = {}
    if m == 0:
        bim_terms[0] = T0
    else:
        cur = T0
        frees = []
        covers = []
        incls = []
        for k in range(m):
            free, cov = bimodule_cover(cur)
            frees.append(cov.source)
            covers.append(cov)
            cur, kinc = kernel_of_bimodule_map(cov)
            incls.append(kinc)
        for k in range(m):
            bim_terms[-k] = frees[k]
        bim_terms[-m] = cur
        for k in range(1, m):
            bim_diffs[-k] = _compose_bimaps(covers[k], incls[k - 1])
        bim_diffs[-m] = incls[m - 1]
    hom_terms = {}
    for i, T in bim_terms.items():
        hom_terms[-i] = _HomTerm(T, N)
    terms = {k: ht.module for k, ht in hom_terms.items() if not ht.module.is_zero()}
    diffs = {}
    f = B.field
    for i, dmap in bim_diffs.items():
        # Hom(T^{i+1}, N) -> Hom(T^{i}, N): precompose with d: T^i -> T^{i+1}
        ksrc, ktgt = -i - 1, -i
        hs, ht = hom_terms[ksrc], hom_terms[ktgt]
        if hs.module.is_zero() or ht.module.is_zero():
            continue
        drm = dmap.as_right_module_map()
        rows = []
        for h in hs.basis:
            img = drm.compose(h)
            coords = ht.coords_of(img)
            if coords is None:
                raise AssertionError("precomposition left the Hom space")
            rows.append(coords)
        flat_op = Matrix(f, len(hs.basis), len(ht.basis), rows)
        blocks = []
        for v in range(B.n_vertices):
            rhs = hs.bases[v] * flat_op
            sol = ht.bases[v].solve_left(rhs)
            if sol is None:
                raise AssertionError("Hom differential breaks the grading")
            blocks.append(sol)
        diffs[ksrc] = ModuleMap(hs.module, ht.module, blocks)
    out = BoundedComplex(B, terms, diffs)
    return out.shift(-stalk.degree)


def _compose_bimaps(first: BimoduleMap, second: BimoduleMap) -> BimoduleMap:
    blocks = {}
    for key in first.source.dims:
        blocks[key] = first.block(key) * second.block(key)
    return BimoduleMap(first.source, second.target, blocks)


# -- serialization -----------------------------------------------------------------


def complex_to_json(X: BoundedComplex) -> dict:
    if X.is_zero():
        return {"range": [0, 0], "terms": {}, "differentials": {}}
    a, b = X.degree_range
    A = X.algebra
    out = {"range": [a, b], "terms": {}, "differentials": {}}
    for i, m in sorted(X.terms.items()):
        out["terms"][str(i)] = m.to_json()
    for i, d in sorted(X.diffs.items()):
        blocks = {}
        for v in range(A.n_vertices):
            if d.blocks[v].rows and d.blocks[v].cols:
                blocks[A.quiver.vertices[v]] = [
                    [A.field.format_scalar(x) for x in row]
                    for row in d.blocks[v].entries]
        out["differentials"][str(i)] = blocks
    return out


def complex_from_json(A: MonomialAlgebra, obj: dict) -> BoundedComplex:
    from .errors import ParseError
    from .modules import module_from_json
    try:
        terms = {int(i): module_from_json(A, t) for i, t in
                 obj.get("terms", {}).items()}
        diffs = {}
        f = A.field
        for i_str, blocks in obj.get("differentials", {}).items():
            i = int(i_str)
            src = terms.get(i)
            tgt = terms.get(i + 1)
            if src is None or tgt is None:
                raise ParseError(f"differential at {i} has missing endpoints")
            mats = []
            for v in range(A.n_vertices):
                label = A.quiver.vertices[v]
                rows, cols = src.dims[v], tgt.dims[v]
                if label in blocks and rows and cols:
                    grid = blocks[label]
                    if len(grid) != rows or any(len(r) != cols for r in grid):
                        raise ParseError(f"differential block at {i}/{label} "
                                         f"must be {rows}x{cols}")
                    mats.append(Matrix(f, rows, cols,
                                       [[f.parse_scalar(str(x)) for x in row]
                                        for row in grid]))
                else:
                    mats.append(Matrix.zeros(f, rows, cols))
            diffs[i] = ModuleMap(src, tgt, mats)
        return BoundedComplex(A, terms, diffs)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad complex JSON: {exc}") from exc
