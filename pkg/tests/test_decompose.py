import random
from fractions import Fraction

import pytest

from quiverhom.algebra import (
    Quiver, a2_algebra, build_algebra, dual_numbers, nakayama,
)
from quiverhom.decompose import (
    Decomposition, EndoAlgebra, decompose, enumerate_indecomposables,
    indec_isomorphic, is_isomorphic, radical_of_endo,
)
from quiverhom.errors import FieldUnsupported, NotNakayama
from quiverhom.linalg import RATIONALS, FieldSpec, Matrix
from quiverhom.modules import (
    Module, direct_sum, projective_module, regular_module, simple_module, syzygy,
)

A2 = a2_algebra(RATIONALS)
DN = dual_numbers(RATIONALS)


def rand_invertible(rng, n):
    while True:
        m = Matrix.from_int_rows(RATIONALS,
                                 [[rng.randint(-3, 3) for _ in range(n)]
                                  for _ in range(n)])
        if m.rank() == n:
            return m


def conjugate(M, rng):
    gs = [rand_invertible(rng, d) for d in M.dims]
    inv = [g.solve_left(Matrix.identity(RATIONALS, g.rows)) for g in gs]
    action = []
    for ai, a in enumerate(M.algebra.quiver.arrows):
        action.append(inv[a.source] * M.action[ai] * gs[a.target])
    return Module(M.algebra, M.dims, action)


def test_radical_of_base_field_endo():
    e = EndoAlgebra(simple_module(A2, 0))
    assert e.dim == 1
    assert radical_of_endo(e) == []


def test_radical_of_matrix_algebra_is_zero():
    # End(S + S) is 2x2 matrices: semisimple
    e = EndoAlgebra(direct_sum([simple_module(A2, 0), simple_module(A2, 0)]))
    assert e.dim == 4
    assert radical_of_endo(e) == []


def test_radical_of_dual_numbers_endo():
    # End(regular k[x]/(x^2)) = k[x]/(x^2): radical is span{x}
    e = EndoAlgebra(regular_module(DN))
    assert e.dim == 2
    rad = radical_of_endo(e)
    assert len(rad) == 1
    nonzero = e.from_coords(rad[0])
    assert not nonzero.is_zero()
    assert nonzero.compose(nonzero).is_zero()


def test_radical_field_floor():
    f5 = FieldSpec("prime", 5)
    A = build_algebra(Quiver(["1", "2"], [("a", "1", "2")]), [], f5)
    s = simple_module(A, 0)
    big = direct_sum([s] * 3)  # End is 3x3 matrices, dim 9 > 5
    with pytest.raises(FieldUnsupported):
        decompose(big)


def test_decompose_block_sum():
    m = direct_sum([simple_module(A2, 0), simple_module(A2, 0),
                    projective_module(A2, 1)])
    dec = decompose(m)
    assert [(s.dims, k) for s, k in dec.summands] == [((0, 1), 1), ((1, 0), 2)]
    assert dec.witnesses.is_isomorphism()


def test_decompose_indecomposable_projective():
    dec = decompose(projective_module(A2, 0))
    assert len(dec.summands) == 1
    assert dec.summands[0][1] == 1


def test_decompose_split_diagonal():
    # dims (1,1) with zero arrow action: S_1 + S_2
    m = Module(A2, (1, 1), [Matrix.zeros(RATIONALS, 1, 1)])
    dec = decompose(m)
    assert sorted(s.dims for s, _ in dec.summands) == [(0, 1), (1, 0)]


def test_decompose_finds_hidden_split():
    # conjugated S + S over k[x]/x^2 twisted into a non-obvious basis
    rng = random.Random(4)
    m = conjugate(direct_sum([simple_module(DN, 0), simple_module(DN, 0),
                              regular_module(DN)]), rng)
    dec = decompose(m)
    assert sorted((s.dims, k) for s, k in dec.summands) == [((1,), 2), ((2,), 1)]
    assert dec.witnesses.is_isomorphism()


def test_is_isomorphic_reflexive_and_dim_check():
    m = regular_module(A2)
    assert is_isomorphic(m, m)
    assert not is_isomorphic(simple_module(A2, 0), simple_module(A2, 1))


def test_p1_not_isomorphic_to_sum_of_simples():
    # same dimension vector (1,1), different modules
    p1 = projective_module(A2, 0)
    s12 = direct_sum([simple_module(A2, 0), simple_module(A2, 1)])
    assert p1.dims == s12.dims
    assert not is_isomorphic(p1, s12)


def test_is_isomorphic_base_change_invariance():
    rng = random.Random(17)
    mods = [regular_module(A2), direct_sum([simple_module(DN, 0),
                                            regular_module(DN)]),
            projective_module(A2, 0)]
    for m in mods:
        for _ in range(3):
            assert is_isomorphic(m, conjugate(m, rng))


def test_enumerate_dual_numbers():
    indec = enumerate_indecomposables(DN)
    assert sorted(m.dims for m in indec) == [(1,), (2,)]


def test_enumerate_a2():
    indec = enumerate_indecomposables(A2)
    assert sorted(m.dims for m in indec) == [(0, 1), (1, 0), (1, 1)]


def test_enumerate_a3_radical_square_zero():
    A = nakayama(False, 3, [2, 2, 1], RATIONALS)
    indec = enumerate_indecomposables(A)
    assert len(indec) == 5  # 3 simples + 2 length-2 intervals


def test_enumerate_rejects_non_nakayama():
    q = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "1", "3")])
    A = build_algebra(q, [], RATIONALS)
    with pytest.raises(NotNakayama):
        enumerate_indecomposables(A)


def test_enumerate_pairwise_non_isomorphic():
    A = nakayama(True, 2, [3, 2], RATIONALS)
    indec = enumerate_indecomposables(A)
    for i in range(len(indec)):
        for j in range(i + 1, len(indec)):
            assert not is_isomorphic(indec[i], indec[j])


def test_syzygies_of_enumerated_stay_in_list():
    A = nakayama(True, 2, [3, 2], RATIONALS)
    indec = enumerate_indecomposables(A)
    for m in indec:
        o = syzygy(m, 1)
        if o.is_zero():
            continue
        dec = decompose(o)
        for s, _ in dec.summands:
            assert any(indec_isomorphic(s, t) for t in indec)


def test_decompose_sum_reassembles():
    rng = random.Random(31)
    A = nakayama(False, 3, [3, 2, 1], RATIONALS)
    indec = enumerate_indecomposables(A)
    for _ in range(5):
        picks = [indec[rng.randrange(len(indec))] for _ in range(3)]
        m = conjugate(direct_sum(picks), rng)
        dec = decompose(m)
        rebuilt = direct_sum([s for s, k in dec.summands for _ in range(k)])
        assert is_isomorphic(rebuilt, m)


def test_endo_of_summands_is_local():
    m = direct_sum([simple_module(A2, 0), regular_module(A2)])
    for s, _ in decompose(m).summands:
        e = EndoAlgebra(s)
        rad = radical_of_endo(e)
        assert e.dim - len(rad) == 1  # End/rad = k here
