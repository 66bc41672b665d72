"""Verification suites: exhaustive where the search space is finite, seeded otherwise.

Every suite returns a :class:`SuiteReport`; failures are verdicts, never exceptions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .bruhat import build_good_matrix, distinctify, eta_word, itinerary
from .curve import (
    dual_curve, duality_sign, minors, random_curve, random_generator, unit_generator,
)
from .exactnum import count_real_roots, is_squarefree
from .words import (
    DegenerateCurveError, RankIncreaseError, apply_move, certify_theorem_main,
    enumerate_words, legal_moves, pair_sign, rank, totally_negative_word,
    totally_positive_word,
)

__all__ = ["Check", "SuiteReport", "SUITES", "run_suite", "random_certificate"]

CAPS = {"rankstep": 7, "rankmove": 6, "counts": 6, "theorem-main": 7, "theorem-la": 6, "duality": 6}


@dataclass
class Check:
    name: str
    passed: bool
    cases: int
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "cases": self.cases, "detail": self.detail}


@dataclass
class SuiteReport:
    suite: str
    params: dict
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, failures: list, cases: int, extra: str = ""):
        detail = extra
        if failures:
            detail = f"{len(failures)} failure(s), first: {failures[0]}" + (f"; {extra}" if extra else "")
        self.checks.append(Check(name, not failures, cases, detail))

    def to_json(self) -> dict:
        return {"suite": self.suite, "params": self.params, "passed": self.passed,
                "checks": [c.to_json() for c in self.checks]}


def _rankstep(rep: SuiteReport, n: int, rng: random.Random, count: int):
    bound = 2 * (n - 2)
    wp, wn = totally_positive_word(n), totally_negative_word(n)
    rep.add(f"n={n}: rank(totally positive) = 0", [] if rank(wp) == 0 else [rank(wp)], 1)
    rep.add(f"n={n}: rank(totally negative) = {bound}", [] if rank(wn) == bound else [rank(wn)], 1)
    words = enumerate_words(n)
    out_of_range = [str(w) for w in words if not 0 <= rank(w) <= bound]
    rep.add(f"n={n}: 0 <= rank <= {bound} on all words", out_of_range, len(words))
    plus = [w for w in words if w.is_plus]
    parity = [str(w) for w in plus if (pair_sign(w, (1, 2)) > 0) != (rank(w) % 2 == 0)]
    rep.add(f"n={n}: rank even iff 2 follows 1 (W+)", parity, len(plus))


def _rankmove(rep: SuiteReport, n: int, rng: random.Random, count: int):
    up, flip, stay, leave, moves = [], [], [], [], 0
    for w in enumerate_words(n, plus_only=True):
        for j, d in legal_moves(w):
            w2, rec = apply_move(w, j, d)
            moves += 1
            tag = f"{w} -> {w2} ({rec.type})"
            if rec.rank_after > rec.rank_before:
                up.append(tag)
            if rec.flips_m12 and rec.rank_after != rec.rank_before - 1:
                flip.append(tag)
            if rec.type == "IIIc" and rec.rank_after != rec.rank_before:
                stay.append(tag)
            if not w2.is_plus:
                leave.append(tag)
    rep.add(f"n={n}: moves never raise the rank", up, moves)
    rep.add(f"n={n}: moves swapping 1 and 2 lower the rank by 1", flip, moves)
    rep.add(f"n={n}: type IIIc keeps the rank", stay, moves)
    rep.add(f"n={n}: moves stay in W+", leave, moves)


def _counts(rep: SuiteReport, n: int, rng: random.Random, count: int):
    gm = distinctify(build_good_matrix(eta_word(n), unit_generator(n), seed=rng.randrange(2**32)))
    polys = minors(gm.curve)
    wrong = []
    for k, p in enumerate(polys, 1):
        if not (is_squarefree(p) and count_real_roots(p) == k * (n - k) == p.degree):
            wrong.append(f"m_{k}")
    rep.add(f"n={n}: each m_k has k(n-k) real simple roots", wrong, n - 1)
    total = sum(count_real_roots(p) for p in polys)
    expected = (n ** 3 - n) // 6
    rep.add(f"n={n}: total = (n^3-n)/6 = {expected}", [] if total == expected else [total], 1)
    it = itinerary(gm.curve)
    letters = [f"a_{k}: {c}" for k, c in enumerate(it.counts(), 1) if c != k * (n - k)]
    rep.add(f"n={n}: itinerary letter counts k(n-k)", letters, n - 1, f"itinerary {it}")


def _theorem_la(rep: SuiteReport, n: int, rng: random.Random, count: int):
    N0 = random_generator(n, rng)
    gm = distinctify(build_good_matrix(eta_word(n), N0, mode="along", seed=rng.randrange(2**32)))
    lo, hi = gm.window
    wrong = [f"m_{k}" for k, p in enumerate(minors(gm.curve), 1)
             if count_real_roots(p, lo, hi) != k * (n - k)]
    rep.add(f"n={n}: each m_k has k(n-k) roots in [{lo}, {hi}]", wrong, n - 1,
            f"N0 subdiagonal {[str(x) for x in N0.subdiag]}")


def random_certificate(n: int, rng: random.Random, lo=-1, hi=1, max_resample: int = 100):
    """Certificate for a random generic curve; degenerate samples are redrawn.

    Returns ``(report, resamples)``.
    """
    for resamples in range(max_resample):
        try:
            return certify_theorem_main(random_curve(n, rng), lo, hi), resamples
        except DegenerateCurveError:
            continue
    raise RuntimeError(f"no generic curve in {max_resample} draws")


def _theorem_main(rep: SuiteReport, n: int, rng: random.Random, count: int):
    fails, increases, worst, redraws = [], [], 0, 0
    for i in range(count):
        try:
            r, extra = random_certificate(n, rng)
        except RankIncreaseError as exc:
            increases.append(f"curve {i}: {exc}")
            continue
        redraws += extra
        worst = max(worst, r.m2_root_count)
        if not r.passed:
            fails.append(f"curve {i}: {'; '.join(r.failures)}")
    rep.add(f"n={n}: rank never increases", increases, count)
    rep.add(f"n={n}: certificate passes, m_2 has <= {2 * (n - 2)} zeros", fails, count,
            f"max m_2 zeros {worst}, degenerate redraws {redraws}")


def _duality(rep: SuiteReport, n: int, rng: random.Random, count: int):
    wrong = []
    for i in range(count):
        c = random_curve(n, rng)
        for k in range(1, n):
            try:
                eps = duality_sign(c, k)
            except AssertionError as exc:
                wrong.append(f"curve {i}: {exc}")
                continue
            if eps != (-1) ** (k * (n - k)):
                wrong.append(f"curve {i}, k={k}: sign {eps}")
        if dual_curve(dual_curve(c)).gamma != c.gamma:
            wrong.append(f"curve {i}: dual is not an involution")
    rep.add(f"n={n}: m_k of the dual = (-1)^(k(n-k)) m_(n-k)(-t)", wrong, count * (n - 1))


SUITES: dict[str, Callable] = {
    "rankstep": _rankstep,
    "rankmove": _rankmove,
    "counts": _counts,
    "theorem-main": _theorem_main,
    "theorem-la": _theorem_la,
    "duality": _duality,
}

DEFAULT_COUNT = {"theorem-main": 20, "duality": 20}


def run_suite(name: str, ns: Sequence[int], seed: int = 0, count: int | None = None) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    for n in ns:
        if not 3 <= n <= CAPS[name]:
            raise ValueError(f"suite {name} runs for 3 <= n <= {CAPS[name]}")
    count = DEFAULT_COUNT.get(name, 1) if count is None else count
    rep = SuiteReport(name, {"n": list(ns), "seed": seed, "count": count})
    for n in ns:
        # one stream per n so that ranges can be split without changing results
        SUITES[name](rep, n, random.Random(f"{name}:{seed}:{n}"), count)
    return rep
