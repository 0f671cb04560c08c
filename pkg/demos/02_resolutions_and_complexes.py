"""Minimal resolutions, syzygies, and complex invariants (sup, pd, width).

Run:  python3 demos/02_resolutions_and_complexes.py
"""

from quiverhom import (
    RATIONALS, BoundedComplex, a2_algebra, complex_invariants, dual_numbers,
    dual_perfect, is_perfect, pd, resolve_module_stalk, simple_module, syzygy,
)

A2 = a2_algebra(RATIONALS)
DN = dual_numbers(RATIONALS)

s1 = simple_module(A2, 0)
print("S_1 over the path algebra 1 -> 2")
pc = resolve_module_stalk(s1, 0, 8)
for i in sorted(pc.terms, reverse=True):
    labels = [A2.quiver.vertices[v] for v in pc.terms[i].summands]
    print(f"  degree {i:2d}: projective cover on vertices {labels}")
print(f"  pd = {pd(s1)}")

print()
print("the simple over k[x]/(x^2) is Omega-periodic:")
s = simple_module(DN, 0)
print(f"  Omega S has dims {syzygy(s, 1).dims}, Omega^2 S has dims {syzygy(s, 2).dims}")
print(f"  pd = {pd(s)}  (periodicity certificate)")
print(f"  is_perfect(stalk) = {is_perfect(BoundedComplex.stalk(s))[0]}")

print()
print("complex invariants of the S_1 stalk (sup, pd, width):")
inv = complex_invariants(BoundedComplex.stalk(s1))
print(f"  sup = {inv.sup}, pd = {inv.pd}, w = {inv.width}")

print()
print("duality of perfect complexes swaps pd and -sup:")
X = BoundedComplex.stalk(s1)
Xs = dual_perfect(X)
invs = complex_invariants(Xs)
print(f"  X : sup = {inv.sup},  pd = {inv.pd}")
print(f"  X*: sup = {invs.sup}, pd = {invs.pd}")
