"""Build small algebras and read off their homological invariants.

Run:  python3 demos/01_algebras_and_invariants.py
"""

from quiverhom import (
    RATIONALS, a2_algebra, base_field_algebra, dual_numbers, finitistic_dimension,
    global_dimension, gorenstein_profile, is_selfinjective, nakayama,
    phi_dim_auto,
)


def describe(name, A):
    print(f"== {name}  (dim {A.dim}, {len(A.quiver.vertices)} vertices)")
    print(f"   gl.dim        = {global_dimension(A)}")
    fd = finitistic_dimension(A, "rep-finite" if A.is_nakayama() else "corpus")
    print(f"   fin.dim       = {fd.value} (exact={fd.exact}, mode={fd.mode})")
    ph = phi_dim_auto(A)
    print(f"   phi-dim       = {ph.value} (exact={ph.exact}, mode={ph.mode})")
    g = gorenstein_profile(A)
    print(f"   id(A_A)       = {g.id_right},  id(_AA) = {g.id_left}")
    print(f"   selfinjective = {is_selfinjective(A)}")
    if g.gorenstein:
        print(f"   Gorenstein, {g.levels}-Gorenstein under the strict convention")
    print()


describe("ground field k", base_field_algebra(RATIONALS))
describe("path algebra of 1 -> 2", a2_algebra(RATIONALS))
describe("dual numbers k[x]/(x^2)", dual_numbers(RATIONALS))
describe("linear Nakayama, Kupisch (3,2,1)", nakayama(False, 3, [3, 2, 1], RATIONALS))
describe("cyclic Nakayama, Kupisch (3,2)", nakayama(True, 2, [3, 2], RATIONALS))
