"""Build the n = 4 sample curve and look at its minor polynomials.

Run:  python3 demos/01_minors_and_roots.py
"""
from fractions import Fraction

from flagsturm.curve import minor_pair, minors, positivity_thresholds, project
from flagsturm.exactnum import count_real_roots, isolate_roots
from flagsturm.samples import sample4_curve

curve = sample4_curve()
print("L0 =")
for row in curve.L0.rows:
    print("   ", "  ".join(f"{str(x):>4}" for x in row))

# m_k is the lower-left k x k minor of Gamma(t); its degree is k(n-k)
for k, p in enumerate(minors(curve), 1):
    print(f"\nm_{k}(t) = {p}")
    print(f"  degree {p.degree}, real roots {count_real_roots(p)}")
    for iv in isolate_roots(p, width=Fraction(1, 10 ** 6)):
        print(f"  root in ({iv.lo}, {iv.hi}]  ~ {float(iv.mid):+.6f}")

# the 2 x 2 minors of the projected 2 x n curve decide the cyclic word
pc = project(curve)
print("\nm_{2,4}(0) =", minor_pair(pc, (2, 4))(0))

lo, hi = positivity_thresholds(curve.L0, curve.N0)
print(f"\nGamma(t) is totally negative for t <= {lo} and totally positive for t >= {hi}")
