import pytest

from quiverhom.algebra import a2_algebra, base_field_algebra, dual_numbers
from quiverhom.bimodules import (
    Bimodule, StalkBimodule, bimodule_cover, bimodule_top_generators,
    kernel_of_bimodule_map, regular_bimodule, tensor_over, zero_bimodule,
)
from quiverhom.decompose import is_isomorphic
from quiverhom.errors import NotMonomialRealizable
from quiverhom.glue import glue_triangular, triangular
from quiverhom.linalg import RATIONALS, Matrix
from quiverhom.modules import (
    projective_module, regular_module, simple_module, zero_module,
)

K = base_field_algebra(RATIONALS)
DN = dual_numbers(RATIONALS)


def one_dim_bimodule(c, b):
    """M = k over two one-vertex algebras (no arrows act)."""
    return Bimodule(c, b, {(0, 0): 1}, {}, {})


def right_regular_over_field(c, b):
    """M = B with trivial left C = k action and right regular action."""
    dims = {(0, v): sum(1 for z in range(b.dim)
                        if b.basis[z].target == v) for v in range(b.n_vertices)}
    # carrier basis at (0, v): paths of B with target v, in basis order
    layout = {v: [z for z in range(b.dim) if b.basis[z].target == v]
              for v in range(b.n_vertices)}
    pos = {v: {z: i for i, z in enumerate(layout[v])} for v in layout}
    right = {}
    f = b.field
    for bi, arr in enumerate(b.quiver.arrows):
        rows = [[f.zero()] * len(layout[arr.target]) for _ in layout[arr.source]]
        for z in layout[arr.source]:
            prod = b.mult(z, b.arrow_basis[bi])
            if prod is not None:
                rows[pos[arr.source][z]][pos[arr.target][prod]] = f.one()
        right[bi] = {0: Matrix(f, len(layout[arr.source]),
                               len(layout[arr.target]), rows)}
    return Bimodule(c, b, dims, {}, right)


def test_regular_bimodule_validates():
    for A in [a2_algebra(RATIONALS), DN]:
        regular_bimodule(A).validate()


def test_tensor_unit_law():
    # C (x)_C X = X as a right module
    A = a2_algebra(RATIONALS)
    X = regular_bimodule(A)
    t = tensor_over(regular_module(A), X)
    assert is_isomorphic(t, X.right_module())


def test_tensor_zero():
    A = a2_algebra(RATIONALS)
    X = regular_bimodule(A)
    assert tensor_over(zero_module(A), X).is_zero()


def test_glue_two_fields_gives_a2():
    m = one_dim_bimodule(K, K)
    A, split = triangular(K, K, m)
    assert A.dim == 3
    assert len(A.quiver.arrows) == 1
    a = A.quiver.arrows[0]
    assert A.quiver.vertices[a.source] in split.part2
    assert A.quiver.vertices[a.target] in split.part1


def test_glue_zero_bimodule():
    A, split = triangular(K, K, zero_bimodule(K, K))
    assert A.dim == 2
    assert len(A.quiver.arrows) == 0


def test_glue_dimension_formula():
    b = dual_numbers(RATIONALS)
    m = right_regular_over_field(K, b)
    A, split = triangular(b, K, m)
    assert A.dim == b.dim + 1 + 2  # 2 + 1 + 2 = 5


def test_glue_rejects_dependent_monomials():
    # left action of x equals right action of x on a 1-dim bimodule over
    # (k[x]/x^2, k[x]/x^2): the two crossing monomials x.g and g.x coincide,
    # which is the T_2 commutativity obstruction
    one = Matrix(RATIONALS, 1, 1, [[RATIONALS.one()]])
    m = Bimodule(DN, DN, {(0, 0): 2},
                 {0: {0: Matrix(RATIONALS, 2, 2,
                                [[RATIONALS.zero(), RATIONALS.one()],
                                 [RATIONALS.zero(), RATIONALS.zero()]])}},
                 {0: {0: Matrix(RATIONALS, 2, 2,
                                [[RATIONALS.zero(), RATIONALS.one()],
                                 [RATIONALS.zero(), RATIONALS.zero()]])}})
    m.validate()
    with pytest.raises(NotMonomialRealizable):
        triangular(DN, DN, m)


def test_tensor_against_corner_bimodule():
    # A_2 triangular datum: S_C (x) e_2A has the dimension of the coequalizer
    m = one_dim_bimodule(K, K)
    g = glue_triangular(K, K, m)
    A = g.algebra
    from quiverhom.bimodules import algebra_span_bimodule
    part2 = {A.quiver.vertex_index[l] for l in g.split.part2}
    carrier = [z for z in range(A.dim) if A.basis[z].source in part2]
    X = algebra_span_bimodule(
        A, g.c, A, carrier,
        lambda z: g.a_vertex_to_c()[A.basis[z].source],
        lambda z: A.basis[z].target,
        lambda ci: A.arrow_basis[g.c_arrow[ci]],
        lambda ai: A.arrow_basis[ai])
    X.validate()
    t = tensor_over(simple_module(g.c, 0), X)
    # S_C (x) e_2A = e_2A since C = k is simple: dims (1, 1) over A
    assert t.total_dim == 2


def test_bimodule_cover_and_kernel():
    A = a2_algebra(RATIONALS)
    X = regular_bimodule(A)
    free, cover = bimodule_cover(X)
    cover.verify()
    # regular bimodule is generated by the idempotents
    assert len(free.slots) == 2
    K, incl = kernel_of_bimodule_map(cover)
    incl.verify()
    # A (x) A covers A with kernel of dimension dim(A)^2-ish leftovers
    F = cover.source
    assert F.total_dim - K.total_dim == X.total_dim


def test_top_generators_of_regular():
    A = a2_algebra(RATIONALS)
    gens = bimodule_top_generators(regular_bimodule(A))
    assert [key for key, _ in gens] == [(0, 0), (1, 1)]
