"""Follow the cyclic word of the sample curve across every wall.

Each crossing is one admissible move; the rank never goes up and drops by
exactly one whenever m_2 changes sign.

Run:  python3 demos/02_crossing_sequence.py [out.svg]
"""
import sys

from flagsturm.samples import SAMPLE4_DOMAIN, sample4_curve
from flagsturm.svg import sequence_svg
from flagsturm.words import certify_theorem_main, crossing_sequence, rank

seq = crossing_sequence(sample4_curve(), *SAMPLE4_DOMAIN)
print(f"w0 = {seq.words[0]}   rk = {rank(seq.words[0])}")
for i, c in enumerate(seq.crossings, 1):
    m = c.move
    print(f"t ~ {float(c.interval.mid):+.4f}  m_{{{c.Y[0]},{c.Y[1]}}} = 0  "
          f"{m.mover} passes {abs(m.passed)}{'′' if m.passed < 0 else ''}  [{m.type:>4}]  "
          f"w{i} = {c.word_after}   rk = {m.rank_after}")

report = certify_theorem_main(sample4_curve(), *SAMPLE4_DOMAIN)
print(f"\nextended to [{report.extended_domain[0]}, {report.extended_domain[1]}]: "
      f"rank trace {report.rank_trace}")
print(f"m_2 has {report.m2_root_count} zeros (Sturm: {report.m2_root_count_sturm}), "
      f"bound {report.bound}; certificate {'passes' if report.passed else 'fails'}")

if len(sys.argv) > 1:
    with open(sys.argv[1], "w") as fh:
        fh.write(sequence_svg(seq))
    print("wrote", sys.argv[1])
