"""Standard recollements of triangular matrix algebras and the dimension
bounds, including a tight instance and a small fuzz run.

Run:  python3 demos/04_recollement_bounds.py
"""

from quiverhom import (
    Bimodule, RATIONALS, base_field_algebra, check_corollary_3,
    datum_quantities, full_report, triangular_recollement,
)
from quiverhom.corpus import fuzz_reports

K = base_field_algebra(RATIONALS)

print("A = [k 0; k k]: the tight instance")
datum = triangular_recollement(K, K, Bimodule(K, K, {(0, 0): 1}, {}, {}))
q = datum_quantities(datum)
print(f"  pd(_AY) = {q.pd_AY.value}, pd(Y*_A) = {q.pd_YstarA.value}, "
      f"w(_CX) = {q.w_CX.value}, w(X_A) = {q.w_XA.value}")
rep = full_report(datum)
for check in rep.checks:
    print(f"  {check.name:14s} [{check.hypothesis:7s}] "
          f"{check.lhs.value} <= {check.rhs.value}: {check.verdict}")

print()
print("T_n(A) Gorenstein level shift, A = k:")
for check in check_corollary_3(K, 2, [0, 1, 2]):
    print(f"  {check.name}: {check.verdict}")

print()
print("a small seeded fuzz run (5 triangular recollements):")
reports = fuzz_reports(seed=3, count=5, limit=32)
total = sum(len(r.checks) for r in reports)
violations = sum(len(r.violations()) for r in reports)
inconclusive = sum(len(r.inconclusive()) for r in reports)
print(f"  checks: {total}, violations: {violations}, "
      f"inconclusive: {inconclusive}")
