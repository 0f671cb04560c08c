"""Acceptance suite: one test per criterion, each printing a PASS line with
its runtime and checked at the stated budget."""

import itertools
import json
import random
import time

import pytest

from quiverhom.algebra import (
    a2_algebra, base_field_algebra, build_algebra, dual_numbers, nakayama,
    Quiver,
)
from quiverhom.bimodules import Bimodule
from quiverhom.complexes import (
    BoundedComplex, complex_invariants, dual_perfect,
)
from quiverhom.corpus import (
    fuzz_reports, random_bounded_complex, random_gluing, random_module_pool,
    random_nakayama, random_perfect_complex,
)
from quiverhom.decompose import enumerate_indecomposables
from quiverhom.homint import HomInt
from quiverhom.igusa_todorov import (
    IsoClassRegistry, max_certified_division, phi, phi_dim_auto,
)
from quiverhom.invariants import (
    finitistic_dimension, global_dimension, is_selfinjective,
)
from quiverhom.linalg import RATIONALS
from quiverhom.modules import Module, direct_sum, is_projective, pd
from quiverhom.recollement import (
    check_corollary_3, check_kato_trivial, check_theorem_I, check_theorem_II,
    datum_quantities, triangular_recollement,
)

K = base_field_algebra(RATIONALS)
DN = dual_numbers(RATIONALS)
A2 = a2_algebra(RATIONALS)


class Budget:
    def __init__(self, name, seconds):
        self.name = name
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.monotonic()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.monotonic() - self.t0
        status = "PASS" if exc_type is None else "FAIL"
        print(f"{status} {self.name} ({elapsed:.2f}s / budget {self.seconds}s)")
        if exc_type is None:
            assert elapsed < self.seconds, \
                f"{self.name} exceeded its {self.seconds}s budget ({elapsed:.1f}s)"
        return False


def one_dim_bimodule(c, b):
    return Bimodule(c, b, {(0, 0): 1}, {}, {})


def test_criterion_1_selfinjective_iff_phidim_zero():
    with Budget("criterion 1 (selfinjectivity iff phi-dim 0)", 2.0):
        r = phi_dim_auto(DN)
        assert is_selfinjective(DN) is True
        assert (r.value, r.exact) == (0, True)
        r = phi_dim_auto(A2)
        assert is_selfinjective(A2) is False
        assert (r.value, r.exact) == (1, True)


def _finite_gldim_nakayamas(minimum):
    out = [nakayama(False, 2, [2, 1], RATIONALS),
           nakayama(False, 3, [2, 2, 1], RATIONALS),
           nakayama(False, 3, [3, 2, 1], RATIONALS),
           nakayama(False, 4, [2, 2, 2, 1], RATIONALS),
           nakayama(False, 4, [4, 3, 2, 1], RATIONALS),
           nakayama(False, 4, [3, 3, 2, 1], RATIONALS),
           nakayama(False, 4, [2, 3, 2, 1], RATIONALS),
           nakayama(False, 5, [2, 2, 2, 2, 1], RATIONALS)]
    rng = random.Random(2024)
    while len(out) < minimum:
        A = random_nakayama(rng, max_n=5)
        if global_dimension(A).is_finite_exact:
            out.append(A)
    return out


def test_criterion_2_fd_phidim_gldim_coincide():
    with Budget("criterion 2 (fd = phi-dim = gl.dim, 20 Nakayama algebras)", 30.0):
        algebras = _finite_gldim_nakayamas(20)
        assert len(algebras) >= 20
        for A in algebras:
            gl = global_dimension(A)
            assert gl.is_finite_exact
            fd = finitistic_dimension(A, "rep-finite")
            ph = phi_dim_auto(A)
            assert fd.exact and ph.exact
            assert fd.value == ph.value == int(gl.lo)


def test_criterion_3_theorem_I_tight():
    with Budget("criterion 3 (Theorem I tight instance)", 1.0):
        d = triangular_recollement(K, K, one_dim_bimodule(K, K))
        q = datum_quantities(d)
        assert q.id_right["A"].value == HomInt.exact(1)
        checks = {c.name: c for c in check_theorem_I(d, q=q)}
        c = checks["ThmI(c)"]
        assert c.hypothesis == "holds"
        assert c.verdict == "verified"
        assert c.lhs.value == HomInt.exact(1)
        assert c.rhs.value == HomInt.exact(1)  # equality, not just <=


def test_criterion_4_theorem_II_tight():
    with Budget("criterion 4 (Theorem II tight instance)", 1.0):
        d = triangular_recollement(K, K, one_dim_bimodule(K, K))
        q = datum_quantities(d)
        for k in "ABC":
            assert q.phidim[k].exact
        checks = {c.name: c for c in check_theorem_II(d, q=q)}
        c = checks["ThmII(c)"]
        assert c.verdict == "verified"
        assert c.lhs.value == HomInt.exact(1)
        assert c.rhs.value == HomInt.exact(1)


def test_criterion_5_fuzz_suite():
    with Budget("criterion 5 (50 seeded recollements, zero violations)", 600.0):
        reports = fuzz_reports(seed=7, count=50, limit=48)
        assert len(reports) == 50
        names = {c.name for r in reports for c in r.checks}
        for required in ["ThmI(a)", "ThmI(b)", "ThmI(c)", "ThmI(a')",
                        "ThmI(b')", "ThmI(c')", "ThmII(a)", "ThmII(b)",
                        "ThmII(c)", "ThmII(c|hyp)", "Thm4(lower)",
                        "Thm4(upper)", "Thm5(a)", "Thm5(b)", "Thm5(c)",
                        "Cor2(i,right)", "Cor2(i,left)", "Cor2(ii)",
                        "Cor2(iii)"]:
            assert required in names
        violations = [c for r in reports for c in r.checks
                      if c.verdict == "VIOLATION"]
        assert violations == []
        total = sum(len(r.checks) for r in reports)
        inconclusive = sum(len(r.inconclusive()) for r in reports)
        print(f"  inconclusive rate: {inconclusive}/{total} "
              f"= {inconclusive / total:.1%}")


def test_criterion_6_corollary_3():
    with Budget("criterion 6 (T_n Gorenstein shift)", 60.0):
        from quiverhom.invariants import gorenstein_profile
        from quiverhom.algebra import t_n
        assert gorenstein_profile(t_n(K, 2)).id_right == HomInt.exact(1)
        for A in [K, DN, A2]:
            for n in (2, 3):
                checks = check_corollary_3(A, n, [0, 1, 2, 3, 4])
                assert all(c.verdict == "verified" for c in checks), \
                    [(c.name, c.verdict) for c in checks]


def test_criterion_7_lemma_1_and_2_property_suites():
    with Budget("criterion 7 (Lemma 1 x100, Lemma 2 x50)", 120.0):
        rng = random.Random(2718)
        algebras = [A2, DN, nakayama(False, 3, [3, 2, 1], RATIONALS),
                    nakayama(True, 2, [3, 2], RATIONALS)]
        pools = {id(A): random_module_pool(rng, A, 6) for A in algebras}
        # Lemma 1: sup(X) = -max{i : H^i(X) != 0}
        for i in range(100):
            A = algebras[i % len(algebras)]
            X = random_bounded_complex(rng, A, pools[id(A)])
            inv = complex_invariants(X, limit=24)
            assert inv.sup == -max(X.cohomology_dims())
        # Lemma 2: pd(X*) = -sup(X), sup(X*) = -pd(X), and both again for X**
        for i in range(50):
            A = algebras[i % len(algebras)]
            X = random_perfect_complex(rng, A)
            inv = complex_invariants(X, limit=24)
            assert inv.pd.is_finite_exact
            Xs = dual_perfect(X, limit=24)
            invs = complex_invariants(Xs, limit=24)
            assert invs.pd == HomInt.exact(-inv.sup)
            assert invs.sup == -int(inv.pd.lo)
            Xss = dual_perfect(Xs, limit=24)
            invss = complex_invariants(Xss, limit=24)
            assert invss.pd == inv.pd
            assert invss.sup == inv.sup


def _corpus_with_finite_pd(target, max_pd=6):
    rng = random.Random(31415)
    found = []
    algebras = [A2, DN, nakayama(False, 3, [3, 2, 1], RATIONALS),
                nakayama(False, 4, [2, 2, 2, 1], RATIONALS),
                nakayama(True, 2, [3, 2], RATIONALS),
                nakayama(True, 3, [4, 3, 3], RATIONALS)]
    for g_seed in range(4):
        grng = random.Random(9000 + g_seed)
        algebras.append(random_gluing(grng).algebra)
    registries = {id(A): IsoClassRegistry(A) for A in algebras}
    for A in algebras:
        for m in enumerate_indecomposables(A) if A.is_nakayama() else []:
            found.append((A, m))
    while len([1 for A, m in found
               if pd(m).is_finite_exact and int(pd(m).lo) <= max_pd]) < target:
        A = algebras[rng.randrange(len(algebras))]
        pool = random_module_pool(rng, A, 3)
        found.append((A, pool[rng.randrange(len(pool))]))
    return found, registries


def test_criterion_8_phi_equals_pd():
    with Budget("criterion 8 (phi = pd on 200 modules of pd <= 6)", 300.0):
        found, registries = _corpus_with_finite_pd(200)
        checked = 0
        for A, m in found:
            p = pd(m)
            if not p.is_finite_exact or int(p.lo) > 6 or m.is_zero():
                continue
            assert phi(m, registries[id(A)]) == int(p.lo), (m.dims, p)
            checked += 1
        assert checked >= 200
        print(f"  phi = pd verified on {checked} modules")


def test_criterion_9_division_sound_direction():
    with Budget("criterion 9 (certified d-Divisions below phi)", 300.0):
        rng = random.Random(555)
        algebras = [A2, DN, nakayama(False, 3, [3, 2, 1], RATIONALS),
                    nakayama(True, 2, [3, 2], RATIONALS),
                    build_algebra(Quiver(["1"], [("x", "1", "1"),
                                                 ("y", "1", "1")]),
                                  [["x", "x"], ["x", "y"], ["y", "x"],
                                   ["y", "y"]], RATIONALS)]
        equal = 0
        total = 0
        for A in algebras:
            reg = IsoClassRegistry(A)
            pool = random_module_pool(rng, A, 5)
            for _ in range(8):
                picks = [pool[rng.randrange(len(pool))]
                         for _ in range(rng.randint(2, 3))]
                m = direct_sum(picks)
                ph = phi(m, reg)
                best = max_certified_division(m, window=min(6, ph + 2),
                                              registry=reg)
                assert best <= ph, (m.dims, best, ph)
                total += 1
                if best == ph:
                    equal += 1
        print(f"  certified max d equals phi in {equal}/{total} corpus runs")


def test_criterion_10_kato_trivial_tilting():
    with Budget("criterion 10 (Kato corollaries, trivial tilting)", 60.0):
        algebras = [K, DN, A2,
                    nakayama(False, 3, [2, 2, 1], RATIONALS),
                    nakayama(False, 3, [3, 2, 1], RATIONALS),
                    nakayama(False, 4, [4, 3, 2, 1], RATIONALS),
                    nakayama(True, 2, [2, 2], RATIONALS),
                    nakayama(True, 2, [3, 2], RATIONALS),
                    nakayama(True, 3, [3, 3, 3], RATIONALS),
                    nakayama(True, 3, [4, 3, 3], RATIONALS)]
        assert len(algebras) == 10
        for A in algebras:
            checks = check_kato_trivial(A)
            assert all(c.verdict == "verified" for c in checks), \
                [(c.name, c.verdict) for c in checks]


def test_criterion_11_fuzz_determinism():
    with Budget("criterion 11 (byte-identical seeded fuzz reports)", 240.0):
        def render(reports):
            return json.dumps([r.to_json() for r in reports],
                              sort_keys=True).encode()
        a = render(fuzz_reports(seed=12, count=6, limit=32))
        b = render(fuzz_reports(seed=12, count=6, limit=32))
        assert a == b
