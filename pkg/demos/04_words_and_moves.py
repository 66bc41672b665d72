"""Cyclic words, their rank, and admissible moves.

Run:  python3 demos/04_words_and_moves.py
"""
from collections import Counter

from flagsturm.words import (
    AdmissibleWord, apply_move, enumerate_words, legal_moves, rank, totally_negative_word,
    totally_positive_word, witness_matrix, word_of_matrix,
)

for n in range(3, 7):
    print(f"n = {n}:  Pos word {totally_positive_word(n)} (rk 0),  "
          f"Neg word {totally_negative_word(n)} (rk {rank(totally_negative_word(n))})")

print("\nall eight words for n = 3:")
for w in enumerate_words(3):
    print(f"  {w}   rk={rank(w)}   {'W+' if w.is_plus else ''}")

# rank distribution over W+ for n = 5
dist = Counter(rank(w) for w in enumerate_words(5, plus_only=True))
print("\nrank distribution on W+ (n=5):", dict(sorted(dist.items())))

w = AdmissibleWord.parse("145231'4'5'2'3'")
print(f"\n{w}: legal moves {legal_moves(w)}")
for j, d in legal_moves(w):
    w2, rec = apply_move(w, j, d)
    print(f"  move {j} {'ccw' if d > 0 else 'cw'}: -> {w2}  type {rec.type}, "
          f"rank {rec.rank_before} -> {rec.rank_after}")

# every word in W+ is realised by a 2 x n matrix
X = witness_matrix(w)
print("\nwitness matrix rows:", [list(map(str, r)) for r in X])
print("word read back:", word_of_matrix(X))
