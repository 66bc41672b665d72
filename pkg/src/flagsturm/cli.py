"""Command-line front end.

Exit codes: 0 when every verdict passes, 1 when some verdict fails, 2 for
usage or input errors (including degenerate inputs).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import samples
from .bruhat import (
    ItineraryError, NotGoodError, count_nontransversality, itinerary,
    perturbed_itinerary, word_matrix,
)
from .curve import (
    LowerUni, NilpotentGenerator, PolynomialCurve, make_curve, minor_pair, minors,
    pairs, project, unit_generator,
)
from .exactnum import RootInterval, as_fraction, isolate_roots, refine_root
from .svg import sequence_svg, word_svg
from .verify import SUITES, run_suite
from .words import (
    AdmissibleWord, DegenerateCurveError, IllegalMoveError, RankIncreaseError, WallError,
    apply_move, certify_theorem_main, crossing_sequence, enumerate_words, rank,
    rank_profile, word_of_matrix,
)

MIN_N, MAX_N = 2, 8


class InputError(ValueError):
    pass


# -- parsing helpers ----------------------------------------------------------

def parse_rational(text: str) -> Fraction:
    try:
        return as_fraction(str(text).strip())
    except (ValueError, ZeroDivisionError, TypeError):
        raise InputError(f"malformed rational {text!r}; use p/q") from None


def _load_json(text: str):
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None


def parse_matrix(text: str) -> list[list[Fraction]]:
    data = _load_json(text)
    if isinstance(data, dict):
        data = data.get("L0", data.get("matrix"))
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise InputError("matrix must be a JSON list of rows of \"p/q\" strings")
    return [[parse_rational(x) for x in row] for row in data]


def parse_word_spec(text: str, n: int) -> tuple[list[int], list[Fraction]]:
    """Whitespace-separated ``j:tau`` pairs, applied left to right."""
    letters, taus = [], []
    for tok in text.split():
        j, sep, tau = tok.partition(":")
        if not sep or not j.isdigit():
            raise InputError(f"malformed generator {tok!r}; use j:tau")
        if not 1 <= int(j) <= n - 1:
            raise InputError(f"generator index {j} outside 1..{n - 1}")
        letters.append(int(j))
        taus.append(parse_rational(tau))
    return letters, taus


def _n(args) -> int:
    if args.n is None:
        raise InputError("--n is required here")
    if not MIN_N <= args.n <= MAX_N:
        raise InputError(f"--n must lie in [{MIN_N}, {MAX_N}]")
    return args.n


def build_curve(args) -> PolynomialCurve:
    """Curve from --sample, --matrix or --word, with --subdiag for N0."""
    chosen = [x for x in (args.sample, args.matrix, args.word) if x]
    if len(chosen) != 1:
        raise InputError("give exactly one of --sample, --matrix, --word")
    if args.sample == "sample4":
        L0 = samples.sample4_curve().L0
    elif args.sample == "sample5":
        L0 = samples.sample5_good_matrix().L
    elif args.sample == "identity":
        L0 = LowerUni.identity(_n(args))
    elif args.matrix:
        try:
            L0 = LowerUni(parse_matrix(args.matrix))
        except InputError:
            raise
        except ValueError as exc:
            raise InputError(str(exc)) from None
    else:
        n = _n(args)
        letters, taus = parse_word_spec(args.word, n)
        L0 = word_matrix(n, letters, taus)
    if not MIN_N <= L0.n <= MAX_N:
        raise InputError(f"n must lie in [{MIN_N}, {MAX_N}]")
    if args.subdiag:
        vals = [parse_rational(x) for x in args.subdiag.replace(",", " ").split()]
        if len(vals) != L0.n - 1:
            raise InputError(f"--subdiag needs {L0.n - 1} entries")
        try:
            N0 = NilpotentGenerator(tuple(vals))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    else:
        N0 = unit_generator(L0.n)
    return make_curve(L0, N0)


def _domain(args, default=(None, None)):
    if args.domain is None:
        return default
    lo, hi = (parse_rational(x) for x in args.domain)
    if not lo < hi:
        raise InputError("--domain needs lo < hi")
    return lo, hi


def _precision(args) -> Optional[Fraction]:
    if args.precision is None:
        return None
    p = parse_rational(args.precision)
    if p <= 0:
        raise InputError("--precision must be positive")
    return p


def _root_json(p, iv: RootInterval, precision) -> dict:
    if precision is not None and iv.width > precision:
        iv = refine_root(p, iv, precision)
    return {"lo": str(iv.lo), "hi": str(iv.hi), "multiplicity": iv.multiplicity,
            "approx": f"{float(iv.mid):.6g}"}


# -- commands -----------------------------------------------------------------
# Each returns (payload, rows for csv, text lines, passed).

def cmd_curve(args):
    curve = build_curve(args)
    lo, hi = _domain(args)
    prec = _precision(args)
    out, rows, text = [], [], []
    text.append(f"n = {curve.n}, N0 subdiagonal = {' '.join(map(str, curve.N0.subdiag))}")
    for k, p in enumerate(minors(curve), 1):
        roots = [_root_json(p, iv, prec) for iv in isolate_roots(p, lo, hi)] if p else []
        out.append({"k": k, "degree": p.degree, "leading_sign": 1 if p.lc > 0 else -1,
                    "coefficients": p.to_json(), "roots": roots})
        rows.extend([k, r["lo"], r["hi"], r["multiplicity"]] for r in roots)
        text.append(f"m_{k}(t) = {p}")
        text.append(f"  degree {p.degree}, roots: " +
                    (", ".join(f"{r['approx']} (x{r['multiplicity']})" if r["multiplicity"] > 1
                               else r["approx"] for r in roots) or "none"))
    payload = {"command": "curve", "n": curve.n, "L0": curve.L0.to_json(),
               "N0_subdiag": [str(x) for x in curve.N0.subdiag], "minors": out}
    if args.pairs:
        pc = project(curve)
        payload["pair_minors"] = []
        for Y in pairs(curve.n):
            p = minor_pair(pc, Y)
            roots = [_root_json(p, iv, prec) for iv in isolate_roots(p, lo, hi)] if p.degree > 0 else []
            payload["pair_minors"].append({"Y": list(Y), "coefficients": p.to_json(), "roots": roots})
            text.append(f"m_{{{Y[0]},{Y[1]}}}(t) = {p}")
    counts = count_nontransversality(curve, lo=lo, hi=hi)
    payload["nontransversality"] = counts.to_json()
    text.append(f"total roots with multiplicity {counts.total}, distinct moments {counts.moments}")
    return payload, (["k", "root_lo", "root_hi", "multiplicity"], rows), text, True


def cmd_itinerary(args):
    curve = build_curve(args)
    lo, hi = _domain(args)
    payload = {"command": "itinerary"}
    try:
        it = itinerary(curve, lo, hi)
    except ItineraryError as exc:
        if not args.perturb:
            raise InputError(f"{exc} (or pass --perturb)") from None
        it, moved, taus = perturbed_itinerary(curve, lo, hi, seed=args.seed)
        payload["perturbed_L0"] = moved.L0.to_json()
        payload["perturbation_taus"] = [str(t) for t in taus]
    payload.update(it.to_json())
    rows = [[k, str(iv.lo), str(iv.hi), 1] for k, iv in zip(it.letters, it.intervals)]
    text = [str(it), "letter counts: " + " ".join(f"{chr(96 + k)}:{c}" for k, c in enumerate(it.counts(), 1)),
            f"total {len(it.letters)}"]
    if "perturbed_L0" in payload:
        text.append("(itinerary of a perturbed curve; see JSON output for the perturbation)")
    return payload, (["k", "root_lo", "root_hi", "multiplicity"], rows), text, True


def cmd_verify(args):
    if args.n_range:
        a, b = args.n_range
        ns = list(range(a, b + 1))
    else:
        ns = [_n(args)]
    try:
        rep = run_suite(args.suite, ns, seed=args.seed, count=args.count)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rows = [[rep.suite, c.name, "pass" if c.passed else "FAIL", c.cases, c.detail] for c in rep.checks]
    text = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}  [{c.cases} case(s)]" +
            (f"  {c.detail}" if c.detail else "") for c in rep.checks]
    text.append(f"suite {rep.suite}: {'PASS' if rep.passed else 'FAIL'}")
    payload = {"command": "verify", **rep.to_json()}
    return payload, (["suite", "check", "verdict", "cases", "detail"], rows), text, rep.passed


def _parse_word(text: str) -> AdmissibleWord:
    try:
        return AdmissibleWord.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_words(args):
    act = args.action
    a = args.args
    if act == "enumerate":
        n = _n(args)
        ws = enumerate_words(n, plus_only=args.plus)
        rows = [[str(w), rank(w), int(w.is_plus)] for w in ws]
        payload = {"command": "words enumerate", "n": n, "plus_only": args.plus, "count": len(ws),
                   "words": [{"word": r[0], "rank": r[1], "plus": bool(r[2])} for r in rows]}
        text = [f"{r[0]}  rk={r[1]}" for r in rows] + [f"{len(ws)} words"]
        return payload, (["word", "rank", "plus"], rows), text, True
    if act == "rank":
        if len(a) != 1:
            raise InputError("usage: words rank WORD")
        w = _parse_word(a[0])
        prof = rank_profile(w)
        r = rank(w)
        payload = {"command": "words rank", "word": str(w), "rank": r,
                   "runs": [list(x) for x in prof["runs"]], "contents": prof["contents"]}
        return payload, (["word", "rank"], [[str(w), r]]), [f"{w}  rk={r}"], True
    if act == "move":
        if len(a) not in (2, 3):
            raise InputError("usage: words move WORD J [ccw|cw]")
        w = _parse_word(a[0])
        d = None
        if len(a) == 3:
            if a[2] not in ("ccw", "cw"):
                raise InputError("direction must be ccw or cw")
            d = 1 if a[2] == "ccw" else -1
        try:
            w2, rec = apply_move(w, int(a[1]), d)
        except (IllegalMoveError, ValueError) as exc:
            raise InputError(str(exc)) from None
        payload = {"command": "words move", "before": str(w), "after": str(w2), "move": rec.to_json()}
        text = [f"{w} -> {w2}  type {rec.type}, rank {rec.rank_before} -> {rec.rank_after}"]
        return payload, (["before", "after", "type", "rank_before", "rank_after"],
                         [[str(w), str(w2), rec.type, rec.rank_before, rec.rank_after]]), text, True
    if act == "from-matrix":
        if len(a) != 1:
            raise InputError("usage: words from-matrix JSON")
        X = parse_matrix(a[0])
        if len(X) != 2 or len(X[0]) != len(X[1]):
            raise InputError("from-matrix needs a 2 x n matrix")
        try:
            w = word_of_matrix(X)
        except WallError as exc:
            raise InputError(str(exc)) from None
        payload = {"command": "words from-matrix", "word": str(w), "rank": rank(w)}
        return payload, (["word", "rank"], [[str(w), rank(w)]]), [f"{w}  rk={rank(w)}"], True
    if act in ("sequence", "certify"):
        curve = build_curve(args)
        lo, hi = _domain(args, (Fraction(-1), Fraction(1)))
        try:
            if act == "sequence":
                seq = crossing_sequence(curve, lo, hi)
                rep = None
            else:
                rep = certify_theorem_main(curve, lo, hi)
                seq = rep.sequence
        except DegenerateCurveError as exc:
            raise InputError(f"degenerate (not in C2): {exc}") from None
        except RankIncreaseError as exc:
            payload = {"command": f"words {act}", "passed": False, "error": str(exc)}
            return payload, (["error"], [[str(exc)]]), [f"FAIL  rank increase: {exc}"], False
        rows = [[f"{c.Y[0]}{c.Y[1]}", str(c.interval.lo), str(c.interval.hi), str(c.word_before),
                 str(c.word_after), c.move.type, c.move.rank_before, c.move.rank_after]
                for c in seq.crossings]
        text = [f"w0 = {seq.words[0]}  rk={rank(seq.words[0])}"]
        for i, c in enumerate(seq.crossings, 1):
            text.append(f"t ~ {float(c.interval.mid):.4f}  Y={{{c.Y[0]},{c.Y[1]}}}  {c.move.type:5s}"
                        f"  w{i} = {c.word_after}  rk={c.move.rank_after}")
        header = ["Y", "lo", "hi", "word_before", "word_after", "type", "rank_before", "rank_after"]
        if rep is None:
            payload = {"command": "words sequence", **seq.to_json()}
            return payload, (header, rows), text, True
        payload = {"command": "words certify", **rep.to_json()}
        text.append(f"m_2 zeros: {rep.m2_root_count} (bound {rep.bound}); rank trace {rep.rank_trace}")
        text.extend(f"FAIL  {f}" for f in rep.failures)
        text.append("certificate: " + ("PASS" if rep.passed else "FAIL"))
        return payload, (header, rows), text, rep.passed
    raise InputError(f"unknown words action {act!r}")


def cmd_svg(args):
    if args.what == "word":
        if len(args.args) not in (1, 2):
            raise InputError("usage: svg word WORD [J]")
        w = _parse_word(args.args[0])
        rec = None
        if len(args.args) == 2:
            try:
                _, rec = apply_move(w, int(args.args[1]))
            except (IllegalMoveError, ValueError) as exc:
                raise InputError(str(exc)) from None
        doc = word_svg(w, rec)
    else:
        curve = build_curve(args)
        lo, hi = _domain(args, (Fraction(-1), Fraction(1)))
        try:
            doc = sequence_svg(crossing_sequence(curve, lo, hi))
        except DegenerateCurveError as exc:
            raise InputError(f"degenerate (not in C2): {exc}") from None
    return {"command": "svg"}, None, [doc.rstrip("\n")], True


# -- argument parsing ---------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--n", type=int, help="dimension (2..8)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--domain", nargs=2, metavar=("LO", "HI"), help="rational endpoints p/q")
    p.add_argument("--precision", metavar="P/Q", help="refine root intervals below this width")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--perturb", action="store_true", help="perturb degenerate inputs")
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    return p


def _curve_spec(p: argparse.ArgumentParser):
    g = p.add_argument_group("curve")
    g.add_argument("--sample", choices=("sample4", "sample5", "identity"))
    g.add_argument("--matrix", help='JSON rows of "p/q" strings, or @file')
    g.add_argument("--word", help='generator product "j:tau j:tau ..." (needs --n)')
    g.add_argument("--subdiag", help="subdiagonal of N0 (default all ones)")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="flagsturm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curve", parents=[common], help="minor polynomials and their roots")
    _curve_spec(p)
    p.add_argument("--pairs", action="store_true", help="also list the 2 x 2 minors m_Y")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("itinerary", parents=[common], help="time-ordered letters of the roots")
    _curve_spec(p)
    p.set_defaults(func=cmd_itinerary)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--n-range", nargs=2, type=int, metavar=("A", "B"))
    p.add_argument("--count", type=int, help="random samples per n (seeded suites)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("words", parents=[common], help="admissible word tools")
    p.add_argument("action", choices=("enumerate", "rank", "move", "from-matrix", "sequence", "certify"))
    p.add_argument("args", nargs="*")
    p.add_argument("--plus", action="store_true", help="enumerate W+ only")
    _curve_spec(p)
    p.set_defaults(func=cmd_words)

    p = sub.add_parser("svg", parents=[common], help="draw a word or a crossing sequence")
    p.add_argument("what", choices=("word", "sequence"))
    p.add_argument("args", nargs="*")
    _curve_spec(p)
    p.set_defaults(func=cmd_svg)
    return parser


def _render(args, payload, table, text) -> str:
    if args.command == "svg":
        return text[0] + "\n"
    if args.format == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.format == "csv":
        if table is None:
            raise InputError("no tabular output for this command")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(table[0])
        w.writerows(table[1])
        return buf.getvalue()
    return "\n".join(text) + "\n"


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, table, text, passed = args.func(args)
        out = _render(args, payload, table, text)
    except (InputError, NotGoodError, ItineraryError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
