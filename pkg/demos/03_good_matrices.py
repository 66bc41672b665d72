"""Good matrices: curves whose minors have all their roots real.

Grow L = lambda_{j1}(tau1) ... one generator at a time along a reduced word
for the top permutation, halving tau until the prefix is good.  Then read off
the itinerary, the time-ordered list of which minor vanishes.

Run:  python3 demos/03_good_matrices.py
"""
from flagsturm.bruhat import (
    build_good_matrix, count_nontransversality, distinctify, eta_word, itinerary,
)
from flagsturm.curve import unit_generator
from flagsturm.samples import sample5_good_matrix

gm = sample5_good_matrix()
print("nine generators:", gm.word, " taus:", ", ".join(map(str, gm.taus)))
it = itinerary(gm.curve)
print("itinerary:", it, " counts per k:", it.counts())

for n in (3, 4, 5):
    gm = distinctify(build_good_matrix(eta_word(n), unit_generator(n)))
    c = count_nontransversality(gm.curve)
    print(f"\nn = {n}: taus {[str(t) for t in gm.taus]}")
    print(f"  roots per m_k {c.with_multiplicity}, total {c.total} = (n^3 - n)/6 = {(n**3 - n) // 6}")
    print(f"  itinerary {itinerary(gm.curve)}")

# "along" mode keeps every root between the positivity thresholds of the identity
gm = distinctify(build_good_matrix(eta_word(4), unit_generator(4), mode="along"))
print(f"\nalong N0, window {tuple(map(str, gm.window))}: itinerary "
      f"{itinerary(gm.curve, *gm.window)}")
