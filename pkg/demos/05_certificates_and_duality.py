"""Randomised rank certificates and the duality identity.

Run:  python3 demos/05_certificates_and_duality.py
"""
import random

from flagsturm.curve import dual_curve, duality_sign, minor_k, random_curve
from flagsturm.verify import random_certificate, run_suite

rng = random.Random(2024)
for n in (4, 5, 6):
    rep, redraws = random_certificate(n, rng)
    print(f"n = {n}: m_2 zeros {rep.m2_root_count} <= {rep.bound},  rank trace {rep.rank_trace},"
          f"  redraws {redraws},  {'PASS' if rep.passed else 'FAIL'}")

c = random_curve(4, rng)
d = dual_curve(c)
print("\nm_1 of the dual:      ", minor_k(d, 1))
print("-m_3(-t) of the curve:", -minor_k(c, 3).reflect())
print("signs for k = 1..3:", [duality_sign(c, k) for k in range(1, 4)])

for name, ns in (("rankmove", [3, 4, 5]), ("counts", [3, 4]), ("duality", [3, 4])):
    rep = run_suite(name, ns)
    print(f"\nsuite {name}: {'PASS' if rep.passed else 'FAIL'}")
    for chk in rep.checks:
        print(f"  {'ok ' if chk.passed else 'BAD'} {chk.name}")
