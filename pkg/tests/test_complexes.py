import pytest

from quiverhom.algebra import a2_algebra, base_field_algebra, dual_numbers
from quiverhom.bimodules import StalkBimodule, regular_bimodule
from quiverhom.complexes import (
    AlgMatrix, BoundedComplex, ChainMap, complex_from_json, complex_invariants,
    complex_to_json, derived_hom, derived_tensor, dual_complex, dual_perfect,
    _dual_proj, inj_truncate, is_perfect, minimize, proj_truncate,
    resolve_complex, resolve_module_stalk, verify_quasi_iso,
)
from quiverhom.decompose import is_isomorphic
from quiverhom.errors import NotPerfect, ZeroComplex
from quiverhom.homint import HomInt
from quiverhom.linalg import RATIONALS, Matrix
from quiverhom.modules import (
    ModuleMap, ProjectiveSum, direct_sum, hom_space, projective_module,
    regular_module, simple_module,
)

A2 = a2_algebra(RATIONALS)
DN = dual_numbers(RATIONALS)


def test_resolution_of_projective_stalk_is_itself():
    p = projective_module(A2, 0)
    pc = resolve_module_stalk(p, 0, 8)
    assert pc.complete
    assert pc.support() == [0]
    verify_quasi_iso(pc.chain_map_to_target())


def test_resolution_of_simple_stalk():
    pc = resolve_module_stalk(simple_module(A2, 0), 0, 8)
    assert pc.complete
    assert pc.support() == [-1, 0]
    assert pc.terms[0].summands == (0,)   # P_1
    assert pc.terms[-1].summands == (1,)  # P_2
    verify_quasi_iso(pc.chain_map_to_target())


def test_resolution_of_contractible_cone_minimizes_to_zero():
    p = projective_module(A2, 0)
    cone = BoundedComplex(A2, {-1: p, 0: p}, {-1: ModuleMap.identity(p)})
    assert cone.cohomology_dims() == {}
    pc = minimize(resolve_complex(cone, -4))
    assert pc.support() == []


def test_minimize_identity_complex():
    P = ProjectiveSum(A2, (0,))
    d = AlgMatrix(P, P, {(0, 0): {A2.e(0): RATIONALS.one()}})
    from quiverhom.complexes import ProjComplex
    pc = ProjComplex(A2, {-1: P, 0: P}, {-1: d}, {}, None, True, -1)
    assert minimize(pc).support() == []


def test_minimize_splits_one_summand():
    # (P_1 + P_2) -> P_1 with map (id, 0): minimal form is the P_2 stalk
    src = ProjectiveSum(A2, (0, 1))
    tgt = ProjectiveSum(A2, (0,))
    d = AlgMatrix(src, tgt, {(0, 0): {A2.e(0): RATIONALS.one()}})
    from quiverhom.complexes import ProjComplex
    pc = ProjComplex(A2, {-1: src, 0: tgt}, {-1: d}, {}, None, True, -1)
    out = minimize(pc)
    assert out.support() == [-1]
    assert out.terms[-1].summands == (1,)


def test_minimize_preserves_cohomology():
    s = simple_module(A2, 0)
    two = direct_sum([s, projective_module(A2, 0)])
    X = BoundedComplex(A2, {0: two}, {})
    pc = resolve_complex(X, -6)
    mini = minimize(pc)
    assert mini.to_bounded_complex().cohomology_dims() == X.cohomology_dims()
    for d in mini.diffs.values():
        assert d.is_radical()
    verify_quasi_iso(mini.chain_map_to_target())


def test_invariants_of_module_stalk():
    X = BoundedComplex.stalk(simple_module(A2, 0))
    inv = complex_invariants(X)
    assert inv.sup == 0
    assert inv.pd == HomInt.exact(1)
    assert inv.width == HomInt.exact(1)


def test_invariants_shifted_projective():
    X = BoundedComplex.stalk(projective_module(A2, 1), -3)
    inv = complex_invariants(X)
    assert inv.sup == 3
    assert inv.pd == HomInt.exact(3)
    assert inv.width == HomInt.exact(0)


def test_invariants_zero_complex():
    with pytest.raises(ZeroComplex):
        complex_invariants(BoundedComplex.zero(A2))


def test_invariants_two_term_complex():
    # S_2 -> 0 in degree -1 plus S_1 in degree 0, zero differential
    X = BoundedComplex(A2, {-1: simple_module(A2, 1), 0: simple_module(A2, 0)},
                       {-1: ModuleMap.zero(simple_module(A2, 1), simple_module(A2, 0))})
    inv = complex_invariants(X)
    assert inv.sup == 0
    # S_2 = P_2 is projective: minimal complex is P_1 in degree 0 and
    # P_2 + P_2 in degree -1
    assert inv.pd == HomInt.exact(1)
    assert inv.width == HomInt.exact(1)


def test_invariants_infinite_tail():
    X = BoundedComplex.stalk(simple_module(DN, 0))
    inv = complex_invariants(X, limit=10)
    assert inv.sup == 0
    assert inv.pd.is_infinite
    assert inv.width.is_infinite


def test_lemma1_sup_equals_top_cohomology():
    # sup = -max{i : H^i != 0} on a mixed complex
    m1 = regular_module(A2)
    X = BoundedComplex(A2, {2: m1}, {})
    inv = complex_invariants(X)
    assert inv.sup == -2
    assert inv.pd == HomInt.exact(-2)


def test_is_perfect_examples():
    assert is_perfect(BoundedComplex.stalk(projective_module(A2, 0)))[0] == "yes"
    verdict, cert = is_perfect(BoundedComplex.stalk(simple_module(DN, 0)))
    assert verdict == "no"
    assert cert == (1, 2)
    assert is_perfect(BoundedComplex.stalk(simple_module(A2, 0)))[0] == "yes"


def test_dual_perfect_regular_stalk():
    X = BoundedComplex.stalk(regular_module(A2))
    D = dual_perfect(X)
    assert D.degree_range == (0, 0)
    assert D.term(0).total_dim == 3
    inv = complex_invariants(D)
    assert inv.pd == HomInt.exact(0)
    assert inv.sup == 0


def test_dual_perfect_shifted():
    X = BoundedComplex.stalk(projective_module(A2, 1), -2)
    D = dual_perfect(X)
    inv = complex_invariants(D)
    assert inv.pd == HomInt.exact(-2)
    assert inv.sup == -2


def test_dual_perfect_not_perfect():
    with pytest.raises(NotPerfect):
        dual_perfect(BoundedComplex.stalk(simple_module(DN, 0)), limit=8)


def test_dual_perfect_biduality_on_the_nose():
    for m in [simple_module(A2, 0), regular_module(A2)]:
        pc = resolve_module_stalk(m, 0, 8)
        dd = _dual_proj(_dual_proj(pc))
        assert {i: p.summands for i, p in dd.terms.items()} \
            == {i: p.summands for i, p in pc.terms.items()}
        assert {i: d.entries for i, d in dd.diffs.items()} \
            == {i: d.entries for i, d in pc.diffs.items()}


def test_dual_perfect_swaps_sup_and_pd():
    s = simple_module(A2, 0)
    X = BoundedComplex.stalk(s)  # sup 0, pd 1
    D = dual_perfect(X)
    inv = complex_invariants(D)
    assert inv.pd == HomInt.exact(0)   # pd(X*) = -sup(X)
    assert inv.sup == -1               # sup(X*) = -pd(X)


def test_proj_truncate_stalk_unchanged():
    X = BoundedComplex.stalk(projective_module(A2, 0))
    assert proj_truncate(X) is X


def test_proj_truncate_two_term():
    s1 = simple_module(A2, 0)
    X = BoundedComplex(A2, {-1: s1, 0: simple_module(A2, 1)},
                       {-1: ModuleMap.zero(s1, simple_module(A2, 1))})
    U = proj_truncate(X)
    lo, hi = U.degree_range
    assert (lo, hi) == (-1, 0)
    # terms above the bottom degree are projective
    from quiverhom.modules import is_projective
    assert is_projective(U.term(0))
    assert U.cohomology_dims() == X.cohomology_dims()


def test_inj_truncate_two_term():
    from quiverhom.modules import dual, is_projective
    s1 = simple_module(A2, 0)
    X = BoundedComplex(A2, {-1: s1, 0: simple_module(A2, 1)},
                       {-1: ModuleMap.zero(s1, simple_module(A2, 1))})
    V = inj_truncate(X)
    assert V.degree_range == (-1, 0)
    assert V.cohomology_dims() == X.cohomology_dims()
    # terms below the top degree are injective: dual is projective over op
    assert is_projective(dual(V.term(-1)))


def test_derived_tensor_unit():
    X = StalkBimodule(regular_bimodule(A2))
    out = derived_tensor(regular_module(A2), X)
    assert out.degree_range == (0, 0)
    assert is_isomorphic(out.term(0), regular_module(A2))


def test_derived_tensor_flat_regular():
    X = StalkBimodule(regular_bimodule(DN))
    out = derived_tensor(simple_module(DN, 0), X)
    # regular bimodule is flat: cohomology concentrated in degree 0
    assert out.cohomology_dims() == {0: 1}


def test_derived_tensor_respects_degree():
    X = StalkBimodule(regular_bimodule(A2), degree=2)
    out = derived_tensor(simple_module(A2, 1), X)
    assert out.degree_range == (2, 2)


def test_derived_hom_regular():
    X = StalkBimodule(regular_bimodule(A2))
    n = regular_module(A2)
    out = derived_hom(X, n)
    assert out.degree_range == (0, 0)
    assert is_isomorphic(out.term(0), n)


def test_derived_hom_zero():
    from quiverhom.modules import zero_module
    X = StalkBimodule(regular_bimodule(A2))
    assert derived_hom(X, zero_module(A2)).is_zero()


def test_complex_json_roundtrip():
    s1 = simple_module(A2, 0)
    X = BoundedComplex(A2, {-1: s1, 0: simple_module(A2, 1)},
                       {-1: ModuleMap.zero(s1, simple_module(A2, 1))})
    j = complex_to_json(X)
    Y = complex_from_json(A2, j)
    assert Y.degree_range == X.degree_range
    assert Y.cohomology_dims() == X.cohomology_dims()
