"""Seeded random corpora: Nakayama algebras, arrow-span bimodules, monomial
modules, and bounded/perfect complexes.  Everything is driven by an explicit
random.Random so runs are reproducible byte for byte."""

from __future__ import annotations

import random
from typing import Optional

from .algebra import MonomialAlgebra, nakayama
from .bimodules import Bimodule, FreeBimodule
from .complexes import BoundedComplex
from .errors import NotMonomialRealizable
from .glue import TriangularGluing, glue_triangular
from .linalg import FieldSpec, Matrix, RATIONALS
from .modules import (
    Module, ModuleMap, ProjectiveSum, direct_sum, hom_space, quotient_module,
    simple_module,
)
from .recollement import BoundReport, datum_from_gluing, full_report


def random_nakayama(rng: random.Random, field: FieldSpec = RATIONALS,
                    max_n: int = 4) -> MonomialAlgebra:
    cycle = rng.random() < 0.5
    if cycle:
        n = rng.randint(1, max_n)
        while True:
            c = [rng.randint(2, n + 2) for _ in range(n)]
            if all(c[(i + 1) % n] >= c[i] - 1 for i in range(n)):
                return nakayama(True, n, c, field)
    n = rng.randint(1, max_n)
    if n == 1:
        return nakayama(False, 1, [1], field)
    c = [0] * n
    c[n - 1] = 1
    for i in range(n - 2, -1, -1):
        c[i] = rng.randint(2, min(n - i, c[i + 1] + 1))
    return nakayama(False, n, c, field)


def random_bimodule(rng: random.Random, c_alg: MonomialAlgebra,
                    b_alg: MonomialAlgebra, max_slots: int = 2) -> Bimodule:
    """Arrow-span bimodule: a monomial quotient of a free (C, B)-bimodule,
    guaranteed monomially realizable."""
    n_slots = rng.randint(0, max_slots)
    slots = [(rng.randrange(c_alg.n_vertices), rng.randrange(b_alg.n_vertices))
             for _ in range(n_slots)]
    free = FreeBimodule(c_alg, b_alg, slots)
    triples = sorted(
        {t for ts in free.layout.values() for t in ts},
        key=lambda t: (len(c_alg.basis[t[1]].word) + len(b_alg.basis[t[2]].word), t))
    killed: set = set()
    for (s, q, p) in triples:
        qw = c_alg.basis[q].word
        pw = b_alg.basis[p].word
        if not qw and not pw:
            continue  # keep the generators alive
        # parents: strip the outermost arrow on either side
        parent_killed = False
        if qw:
            q_parent = _strip_left(c_alg, q)
            if q_parent is not None and (s, q_parent, p) in killed:
                parent_killed = True
        if not parent_killed and pw:
            p_parent = _strip_right(b_alg, p)
            if p_parent is not None and (s, q, p_parent) in killed:
                parent_killed = True
        if parent_killed or rng.random() < 0.35:
            killed.add((s, q, p))
    return _span_bimodule_from_triples(c_alg, b_alg, free,
                                       [t for t in triples if t not in killed])


def _strip_left(c_alg: MonomialAlgebra, q: int) -> Optional[int]:
    """q with its first arrow removed: q = c . parent."""
    word = c_alg.basis[q].word
    rest = word[1:]
    for i, z in enumerate(c_alg.basis):
        if z.word == rest and z.source == c_alg.quiver.arrows[word[0]].target:
            return i
    return None


def _strip_right(b_alg: MonomialAlgebra, p: int) -> Optional[int]:
    word = b_alg.basis[p].word
    rest = word[:-1]
    for i, z in enumerate(b_alg.basis):
        if z.word == rest and z.source == b_alg.basis[p].source:
            return i
    return None


def _span_bimodule_from_triples(c_alg, b_alg, free: FreeBimodule,
                                survivors) -> Bimodule:
    f = c_alg.field
    survivors = sorted(set(survivors))
    comp: dict = {}
    for t in survivors:
        s, q, p = t
        key = (c_alg.basis[q].source, b_alg.basis[p].target)
        comp.setdefault(key, []).append(t)
    for ts in comp.values():
        ts.sort()
    pos = {k: {t: i for i, t in enumerate(ts)} for k, ts in comp.items()}
    dims = {k: len(ts) for k, ts in comp.items()}
    left_action = {}
    for ci, c in enumerate(c_alg.quiver.arrows):
        per = {}
        for v in range(b_alg.n_vertices):
            src = comp.get((c.target, v), [])
            tgt_key = (c.source, v)
            rows = [[f.zero()] * dims.get(tgt_key, 0) for _ in src]
            for i, (s, q, p) in enumerate(src):
                cq = c_alg.mult(c_alg.arrow_basis[ci], q)
                if cq is not None and tgt_key in pos and (s, cq, p) in pos[tgt_key]:
                    rows[i][pos[tgt_key][(s, cq, p)]] = f.one()
            per[v] = Matrix(f, len(src), dims.get(tgt_key, 0), rows)
        left_action[ci] = per
    right_action = {}
    for bi, b in enumerate(b_alg.quiver.arrows):
        per = {}
        for u in range(c_alg.n_vertices):
            src = comp.get((u, b.source), [])
            tgt_key = (u, b.target)
            rows = [[f.zero()] * dims.get(tgt_key, 0) for _ in src]
            for i, (s, q, p) in enumerate(src):
                pb = b_alg.mult(p, b_alg.arrow_basis[bi])
                if pb is not None and tgt_key in pos and (s, q, pb) in pos[tgt_key]:
                    rows[i][pos[tgt_key][(s, q, pb)]] = f.one()
            per[u] = Matrix(f, len(src), dims.get(tgt_key, 0), rows)
        right_action[bi] = per
    return Bimodule(c_alg, b_alg, dims, left_action, right_action)


def random_gluing(rng: random.Random,
                  field: FieldSpec = RATIONALS) -> TriangularGluing:
    b_alg = random_nakayama(rng, field)
    c_alg = random_nakayama(rng, field)
    m = random_bimodule(rng, c_alg, b_alg)
    return glue_triangular(b_alg, c_alg, m)


def fuzz_reports(seed: int, count: int, limit: int = 64) -> list[BoundReport]:
    """Seeded triangular recollements over Nakayama corners, fully checked."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        g = random_gluing(rng)
        datum = datum_from_gluing(g, label=f"fuzz[seed={seed},i={i}]")
        out.append(full_report(datum, limit))
    return out


def random_monomial_quotient(rng: random.Random, A: MonomialAlgebra) -> Module:
    """P_v / (span of an action-closed random set of nontrivial paths)."""
    v = rng.randrange(A.n_vertices)
    P = ProjectiveSum(A, (v,))
    Pm = P.module()
    f = A.field
    order = sorted(A.proj_basis(v), key=lambda z: (len(A.basis[z].word), z))
    killed = set()
    for z in order:
        word = A.basis[z].word
        if not word:
            continue
        parent = None
        for z2 in A.proj_basis(v):
            if A.basis[z2].word == word[:-1]:
                parent = z2
                break
        if (parent is not None and parent in killed) or rng.random() < 0.35:
            killed.add(z)
    bases = []
    for w in range(A.n_vertices):
        rows = []
        for i, (s, z) in enumerate(P.layout[w]):
            if z in killed:
                row = [f.zero()] * Pm.dims[w]
                row[i] = f.one()
                rows.append(row)
        bases.append(Matrix(f, len(rows), Pm.dims[w], rows))
    Q, _ = quotient_module(Pm, bases)
    return Q


def random_module_pool(rng: random.Random, A: MonomialAlgebra,
                       count: int) -> list[Module]:
    pool = [simple_module(A, v) for v in range(A.n_vertices)]
    while len(pool) < count:
        m = random_monomial_quotient(rng, A)
        if not m.is_zero():
            pool.append(m)
    return pool[:count]


def _random_map_in_kernel(rng: random.Random, src: Module, tgt: Module,
                          constraint: Optional[ModuleMap]) -> ModuleMap:
    """Random hom src -> tgt with (map ; constraint) = 0 when given."""
    basis = hom_space(src, tgt)
    if constraint is not None and basis:
        f = src.algebra.field
        rows = []
        for h in basis:
            rows.append(h.compose(constraint).flat())
        mat = Matrix(f, len(rows), len(rows[0]) if rows else 0, rows)
        ker = mat.kernel_basis()
        combos = [[ker.entries[i][j] for j in range(ker.cols)]
                  for i in range(ker.rows)]
    else:
        f = src.algebra.field
        combos = [[f.one() if i == j else f.zero() for j in range(len(basis))]
                  for i in range(len(basis))]
    out = ModuleMap.zero(src, tgt)
    for combo in combos:
        c = f.from_int(rng.randint(-2, 2))
        if c == f.zero():
            continue
        for coef, h in zip(combo, basis):
            if coef != f.zero():
                out = out + h.scale(f.mul(c, coef))
    return out


def random_bounded_complex(rng: random.Random, A: MonomialAlgebra,
                           pool: list[Module]) -> BoundedComplex:
    """Two or three term complex with d^2 = 0 and nonzero cohomology."""
    for _ in range(40):
        k = rng.choice([2, 2, 3])
        mods = [pool[rng.randrange(len(pool))] for _ in range(k)]
        base = rng.randint(-2, 1)
        degs = list(range(base, base + k))
        d0 = _random_map_in_kernel(rng, mods[0], mods[1], None)
        diffs = {degs[0]: d0}
        if k == 3:
            # pick the second differential inside the kernel of precomposition
            basis = hom_space(mods[1], mods[2])
            f = A.field
            good = None
            if basis:
                rows = [d0.compose(h).flat() for h in basis]
                mat = Matrix(f, len(rows), len(rows[0]), rows)
                ker = mat.kernel_basis()
                if ker.rows:
                    combo = [f.from_int(rng.randint(-2, 2)) for _ in range(ker.rows)]
                    d1 = ModuleMap.zero(mods[1], mods[2])
                    for c, row in zip(combo, ker.entries):
                        if c == f.zero():
                            continue
                        for coef, h in zip(row, basis):
                            if coef != f.zero():
                                d1 = d1 + h.scale(f.mul(c, coef))
                    good = d1
            diffs[degs[1]] = good if good is not None \
                else ModuleMap.zero(mods[1], mods[2])
        X = BoundedComplex(A, dict(zip(degs, mods)), diffs)
        if X.cohomology_dims():
            return X
    raise AssertionError("could not generate a complex with cohomology")


def random_perfect_complex(rng: random.Random,
                           A: MonomialAlgebra) -> BoundedComplex:
    """Bounded complex of projectives (perfect by construction)."""
    k = rng.choice([1, 2, 2, 3])
    terms = []
    for _ in range(k):
        n = rng.randint(1, 2)
        terms.append(ProjectiveSum(
            A, tuple(rng.randrange(A.n_vertices) for _ in range(n))).module())
    base = rng.randint(-2, 0)
    degs = list(range(base, base + k))
    diffs = {}
    prev: Optional[ModuleMap] = None
    for i in range(k - 1):
        d = _random_map_in_kernel(rng, terms[i], terms[i + 1], None) \
            if prev is None else _random_map_in_kernel(
                rng, terms[i], terms[i + 1], None)
        # enforce d_prev ; d = 0 by solving in the hom space
        if prev is not None:
            basis = hom_space(terms[i], terms[i + 1])
            f = A.field
            d = ModuleMap.zero(terms[i], terms[i + 1])
            if basis:
                rows = [prev.compose(h).flat() for h in basis]
                mat = Matrix(f, len(rows), len(rows[0]), rows)
                ker = mat.kernel_basis()
                for row in ker.entries:
                    c = f.from_int(rng.randint(-2, 2))
                    if c == f.zero():
                        continue
                    for coef, h in zip(row, basis):
                        if coef != f.zero():
                            d = d + h.scale(f.mul(c, coef))
        diffs[degs[i]] = d
        prev = d
    X = BoundedComplex(A, dict(zip(degs, terms)), diffs)
    if not X.cohomology_dims():
        # quasi-zero perfect complexes are legal but dull; retry once
        return random_perfect_complex(rng, A)
    return X
