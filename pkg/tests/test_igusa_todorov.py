import pytest

from quiverhom.algebra import (
    Quiver, a2_algebra, base_field_algebra, build_algebra, dual_numbers, nakayama,
)
from quiverhom.decompose import decompose, is_isomorphic
from quiverhom.igusa_todorov import (
    DivisionCertificate, IsoClassRegistry, division_certificates, k_class,
    max_certified_division, phi, phi_dim, phi_dim_auto, phi_with_trace,
    subgroup_rank,
)
from quiverhom.linalg import RATIONALS, Matrix
from quiverhom.modules import (
    Module, direct_sum, pd, projective_module, regular_module, simple_module,
)

A2 = a2_algebra(RATIONALS)
DN = dual_numbers(RATIONALS)

# local commutative algebra with two loops and radical square zero:
# k[x, y]/(x, y)^2 presented monomially
TWO_LOOP = build_algebra(
    Quiver(["1"], [("x", "1", "1"), ("y", "1", "1")]),
    [["x", "x"], ["x", "y"], ["y", "x"], ["y", "y"]], RATIONALS)


def two_loop_module(a, b):
    """dim-2 module over TWO_LOOP: top m with m.x = a*s, m.y = b*s."""
    f = RATIONALS
    mx = Matrix(f, 2, 2, [[f.zero(), f.from_int(a)], [f.zero(), f.zero()]])
    my = Matrix(f, 2, 2, [[f.zero(), f.from_int(b)], [f.zero(), f.zero()]])
    return Module(TWO_LOOP, (2,), [mx, my])


def test_k_class_of_projective_is_empty():
    reg = IsoClassRegistry(A2)
    assert k_class(projective_module(A2, 0), reg).is_zero()


def test_k_class_counts_multiplicities():
    reg = IsoClassRegistry(A2)
    m = direct_sum([simple_module(A2, 0), simple_module(A2, 0),
                    projective_module(A2, 1)])
    vec = k_class(m, reg)
    assert list(vec.counts.values()) == [2]


def test_k_class_drops_regular_over_dual_numbers():
    reg = IsoClassRegistry(DN)
    m = direct_sum([simple_module(DN, 0), regular_module(DN)])
    vec = k_class(m, reg)
    assert list(vec.counts.values()) == [1]


def test_registry_idempotent_insert():
    reg = IsoClassRegistry(DN)
    s = simple_module(DN, 0)
    i1 = reg.lookup_or_insert(s)
    i2 = reg.lookup_or_insert(simple_module(DN, 0))
    assert i1 == i2 == 0


def test_subgroup_rank():
    v1 = k_class(simple_module(A2, 0), IsoClassRegistry(A2))
    assert subgroup_rank([v1]) == 1
    reg = IsoClassRegistry(A2)
    a = k_class(simple_module(A2, 0), reg)
    b = k_class(direct_sum([simple_module(A2, 0)] * 2), reg)
    assert subgroup_rank([a, b]) == 1
    assert subgroup_rank([]) == 0


def test_phi_of_periodic_simple_is_zero():
    res = phi_with_trace(simple_module(DN, 0))
    assert res.value == 0
    assert res.ranks == [1, 1]


def test_phi_matches_pd_on_a2():
    assert phi(simple_module(A2, 0)) == 1
    assert phi(simple_module(A2, 1)) == 0
    assert phi(projective_module(A2, 0)) == 0


def test_phi_trace_for_s1():
    res = phi_with_trace(simple_module(A2, 0))
    assert res.value == 1
    assert res.ranks == [1, 0, 0]


def test_phi_plateau_then_drop():
    # radical-square-zero A_4 chain: Omega S_1 = S_2, ..., pd S_1 = 3 with
    # rank trace 1,1,1,0 - a plateau before the drop; the naive one-step
    # stabilization rule would wrongly return 0 here
    A = nakayama(False, 4, [2, 2, 2, 1], RATIONALS)
    res = phi_with_trace(simple_module(A, 0))
    assert res.ranks == [1, 1, 1, 0, 0]
    assert res.value == 3
    assert pd(simple_module(A, 0)) .lo == 3


def test_phi_equals_pd_when_finite():
    mods = [simple_module(A2, 0), simple_module(A2, 1),
            regular_module(A2)]
    A3 = nakayama(False, 3, [3, 2, 1], RATIONALS)
    mods += [simple_module(A3, v) for v in range(3)]
    for m in mods:
        p = pd(m)
        assert p.is_finite_exact
        assert phi(m) == int(p.lo)


def test_phi_monotone_under_summands():
    reg = IsoClassRegistry(A2)
    m = simple_module(A2, 0)
    n = simple_module(A2, 1)
    both = direct_sum([m, n])
    assert phi(both, reg) >= max(phi(m, reg), phi(n, reg))


def test_phi_multiplicity_insensitive():
    for k in (2, 3):
        m = simple_module(A2, 0)
        assert phi(direct_sum([m] * k)) == phi(m)
        s = simple_module(DN, 0)
        assert phi(direct_sum([s] * k)) == phi(s)


def test_phi_dim_selfinjective_dual_numbers():
    res = phi_dim_auto(DN)
    assert res.value == 0
    assert res.exact


def test_phi_dim_a2():
    res = phi_dim(A2, "rep-finite")
    assert res.value == 1 and res.exact
    res2 = phi_dim(A2, "gldim-finite")
    assert res2.value == 1 and res2.exact


def test_phi_dim_semisimple():
    K = base_field_algebra(RATIONALS)
    assert phi_dim(K, "rep-finite").value == 0


def test_phi_dim_two_loop_lower_bound():
    res = phi_dim(TWO_LOOP, "corpus")
    assert not res.exact
    assert res.value >= 0


def test_division_empty_for_projective():
    assert division_certificates(regular_module(A2), 4) == []


def test_division_single_class_returns_empty():
    # M = S_1 + P_2 over A_2: only one non-projective class, no valid pair
    m = direct_sum([simple_module(A2, 0), projective_module(A2, 1)])
    assert division_certificates(m, 4) == []
    assert phi(m) == 1  # phi is witnessed by pd instead


def test_division_two_loop_example():
    # M_a and M_b share their syzygy S but have different Ext^1 behavior:
    # a 1-Division with max certified d = 1 = phi(M)
    ma, mb = two_loop_module(1, 0), two_loop_module(0, 1)
    assert not is_isomorphic(ma, mb)
    m = direct_sum([ma, mb])
    reg = IsoClassRegistry(TWO_LOOP)
    assert phi(m, reg) == 1
    assert phi(ma, reg) == 0 and phi(mb, reg) == 0
    certs = division_certificates(m, 3, reg)
    assert certs
    assert max(c.d for c in certs) == 1


def test_max_certified_division_bounded_by_phi():
    reg = IsoClassRegistry(A2)
    mods = [direct_sum([simple_module(A2, 0), simple_module(A2, 1)]),
            regular_module(A2),
            direct_sum([simple_module(A2, 0), projective_module(A2, 0)])]
    for m in mods:
        assert max_certified_division(m, 4, reg) <= phi(m, reg)


def test_rank_confirmation_window_after_stabilization():
    # ranks stay constant for 8 further steps past the certified phi
    from quiverhom.decompose import enumerate_indecomposables
    from quiverhom.igusa_todorov import KClassVector, phi_of_class_ids
    from quiverhom.modules import is_projective

    A = nakayama(True, 2, [3, 2], RATIONALS)
    reg = IsoClassRegistry(A)
    ids = sorted({reg.lookup_or_insert(m) for m in enumerate_indecomposables(A)
                  if not is_projective(m)})
    res = phi_of_class_ids(reg, ids)
    vecs = [KClassVector({i: 1}) for i in ids]
    ranks = [subgroup_rank(vecs)]
    for _ in range(res.value + 9):
        nxt = []
        for v in vecs:
            out = {}
            for cid, mult in v.counts.items():
                for nid, m2 in reg.omega_vector(cid).counts.items():
                    out[nid] = out.get(nid, 0) + mult * m2
            nxt.append(KClassVector(out))
        vecs = nxt
        ranks.append(subgroup_rank(vecs))
    assert len(set(ranks[res.value:])) == 1
