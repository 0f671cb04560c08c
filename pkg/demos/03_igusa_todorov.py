"""The Igusa-Todorov function: rank traces, phi-dimension, d-Divisions.

Run:  python3 demos/03_igusa_todorov.py
"""

from quiverhom import (
    Matrix, Module, Quiver, RATIONALS, build_algebra, direct_sum,
    division_certificates, dual_numbers, nakayama, phi_dim, phi_with_trace,
    simple_module, IsoClassRegistry,
)

DN = dual_numbers(RATIONALS)

print("phi of the periodic simple over k[x]/(x^2):")
res = phi_with_trace(simple_module(DN, 0))
print(f"  rank trace {res.ranks} -> phi = {res.value}")

print()
print("a plateau before the drop (radical-square-zero chain of length 4):")
A4 = nakayama(False, 4, [2, 2, 2, 1], RATIONALS)
res = phi_with_trace(simple_module(A4, 0))
print(f"  rank trace {res.ranks} -> phi = {res.value} "
      "(one consecutive equality is not stabilization)")

print()
print("two modules sharing a syzygy over k[x,y]/(x,y)^2:")
TL = build_algebra(Quiver(["1"], [("x", "1", "1"), ("y", "1", "1")]),
                   [["x", "x"], ["x", "y"], ["y", "x"], ["y", "y"]], RATIONALS)
f = RATIONALS


def top_module(a, b):
    mx = Matrix(f, 2, 2, [[f.zero(), f.from_int(a)], [f.zero(), f.zero()]])
    my = Matrix(f, 2, 2, [[f.zero(), f.from_int(b)], [f.zero(), f.zero()]])
    return Module(TL, (2,), [mx, my])


ma, mb = top_module(1, 0), top_module(0, 1)
reg = IsoClassRegistry(TL)
m = direct_sum([ma, mb])
print(f"  phi(M_a) = {phi_with_trace(ma, reg).value}, "
      f"phi(M_b) = {phi_with_trace(mb, reg).value}, "
      f"phi(M_a + M_b) = {phi_with_trace(m, reg).value}")
for cert in division_certificates(m, 3, reg):
    print(f"  certified {cert.d}-Division: X classes {cert.x_classes}, "
          f"Y classes {cert.y_classes}, Ext^{cert.d} dims "
          f"{cert.ext_x} vs {cert.ext_y}")

print()
print("phi-dimension by mode:")
print(f"  rep-finite on k[x]/(x^2): {phi_dim(DN, 'rep-finite').to_json()}")
print(f"  corpus lower bound on k[x,y]/(x,y)^2: {phi_dim(TL, 'corpus').to_json()}")
