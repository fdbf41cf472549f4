"""Command-line surface: polynomial parser, classification commands,
machine-readable reports, batch census and the built-in self-test.

Commands: eotype, hw, classify-dm, scan, selftest.
Exit codes: 2 parse error, 3 constraint violation, 4 singular curve,
5 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time

import numpy as np

from .dieudonne import PolarizedDM, enumerate_polarized_dms, assemble_dm, full_fv_matrices
from .eoclass import (EOResult, classify, final_type_from_FV, weyl_from_final_type,
                      weyl_word)
from .errors import (ConstraintError, InternalInvariantError, PolyParseError,
                     SingularCurveError)
from .gf import GF, field_new
from .hwtriple import CurveCI, hw_triple
from .polyring import GradedPoly, monomial_basis

EXIT_PARSE = 2
EXIT_CONSTRAINT = 3
EXIT_SINGULAR = 4
EXIT_INTERNAL = 5

_VAR_ALIASES = {"x": 0, "y": 1, "z": 2}


# -- polynomial expression parser -------------------------------------------

def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in "+-*^":
            tokens.append((c, c, i))
            i += 1
        elif c.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
        elif c == "X":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise PolyParseError("variable 'X' needs an index", i)
            tokens.append(("var", int(text[i + 1:j]), i))
            i = j
        elif c in _VAR_ALIASES:
            tokens.append(("var", _VAR_ALIASES[c], i))
            i += 1
        else:
            raise PolyParseError(f"unexpected character {c!r}", i)
    return tokens


class _Parser:
    def __init__(self, tokens, text_len):
        self.tokens = tokens
        self.pos = 0
        self.text_len = text_len

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None, self.text_len)

    def take(self, kind=None):
        tok = self.peek()
        if tok[0] is None or (kind is not None and tok[0] != kind):
            raise PolyParseError(f"expected {kind or 'token'}, found {tok[0] or 'end of input'}",
                                 tok[2])
        self.pos += 1
        return tok

    def parse_poly(self):
        """Returns a list of (sign, coef or None, [(var, exp), ...])."""
        terms = []
        sign = 1
        if self.peek()[0] == "-":
            self.take()
            sign = -1
        terms.append(self.parse_term(sign))
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            terms.append(self.parse_term(1 if op == "+" else -1))
        tok = self.peek()
        if tok[0] is not None:
            raise PolyParseError(f"trailing input {tok[0]!r}", tok[2])
        return terms

    def parse_term(self, sign):
        kind, value, pos = self.peek()
        coef = 1
        factors = []
        if kind == "int":
            self.take()
            coef = value
            if self.peek()[0] == "*":
                self.take()
                factors = self.parse_mono()
        elif kind == "var":
            factors = self.parse_mono()
        else:
            raise PolyParseError("expected a coefficient or a variable", pos)
        return sign, coef, factors

    def parse_mono(self):
        factors = [self.parse_factor()]
        while self.peek()[0] == "*":
            self.take()
            factors.append(self.parse_factor())
        return factors

    def parse_factor(self):
        _, idx, pos = self.take("var")
        exp = 1
        if self.peek()[0] == "^":
            self.take()
            exp = self.take("int")[1]
        return idx, exp, pos


def parse_poly(text: str, nvars: int, ctx: GF) -> GradedPoly:
    """Parse a homogeneous polynomial expression into canonical dense form."""
    tokens = _tokenize(text)
    terms = _Parser(tokens, len(text)).parse_poly()
    exps = {}
    degree = None
    for sign, coef, factors in terms:
        e = [0] * nvars
        for idx, exp, pos in factors:
            if idx >= nvars:
                raise PolyParseError(
                    f"variable X{idx} out of range (indices must be <= {nvars - 1})", pos)
            e[idx] += exp
        d = sum(e)
        if degree is None:
            degree = d
        elif d != degree:
            raise PolyParseError(
                f"polynomial is not homogeneous: term of degree {d} after degree {degree}")
        key = tuple(e)
        exps[key] = exps.get(key, 0) + sign * coef
    poly = GradedPoly.zero(ctx, nvars, degree)
    coeffs = poly.coeffs.copy()
    basis = poly.basis
    for e, c in exps.items():
        coeffs[basis.index[e]] = ctx.from_int(c)
    return GradedPoly(ctx, nvars, degree, coeffs)


def render_poly(poly: GradedPoly) -> str:
    """Canonical renderer; parse_poly(render_poly(f)) == f."""
    return str(poly)


# -- reports ------------------------------------------------------------------

_REPORT_FIELDS = {
    "p": int,
    "ext_degree": int,
    "n": int,
    "degrees": list,
    "genus": int,
    "hasse_witt": list,
    "a_number": int,
    "p_rank": int,
    "final_type": list,
    "weyl_one_line": list,
    "weyl_word": str,
    "stratum_dim": int,
    "fast_tag": str,
    "timings": dict,
}


def validate_report(report: dict) -> None:
    for key, typ in _REPORT_FIELDS.items():
        if key not in report:
            raise InternalInvariantError(f"report is missing field {key!r}")
        if not isinstance(report[key], typ):
            raise InternalInvariantError(f"report field {key!r} has the wrong type")
    if len(report["final_type"]) != 2 * report["genus"] + 1:
        raise InternalInvariantError("final_type length must be 2g+1")
    if json.loads(json.dumps(report)) != report:
        raise InternalInvariantError("report does not round-trip through JSON")


def _matrix_entries(field: GF, M):
    if field.m == 1:
        return [[int(x) for x in row] for row in M]
    return [[[int(d) for d in field.decode(np.asarray(x))] for x in row] for row in M]


def build_report(curve: CurveCI, triple, result: EOResult, timings: dict) -> dict:
    field = curve.field
    report = {
        "p": field.p,
        "ext_degree": field.m,
        "n": curve.n,
        "degrees": list(curve.degrees),
        "genus": triple.g,
        "hasse_witt": _matrix_entries(field, triple.A_phi),
        "a_number": result.a_number,
        "p_rank": result.p_rank,
        "final_type": list(result.final_type.values),
        "weyl_one_line": list(result.weyl.one_line),
        "weyl_word": weyl_word(result.weyl),
        "stratum_dim": result.stratum_dim,
        "fast_tag": result.fast_tag,
        "timings": timings,
    }
    validate_report(report)
    return report


def _print_report(report: dict, out):
    print(f"field: GF({report['p']}" +
          (f"^{report['ext_degree']})" if report["ext_degree"] > 1 else ")"), file=out)
    print(f"curve: degrees {report['degrees']} in P^{report['n']}, genus {report['genus']}",
          file=out)
    print("hasse-witt matrix:", file=out)
    for row in report["hasse_witt"]:
        print("  " + " ".join(str(x) for x in row), file=out)
    print(f"fast tag: {report['fast_tag']}", file=out)
    print(f"final type: {report['final_type']}", file=out)
    print(f"weyl coset: {report['weyl_one_line']}  ({report['weyl_word']})", file=out)
    print(f"p-rank {report['p_rank']}, a-number {report['a_number']}, "
          f"stratum dim {report['stratum_dim']}", file=out)


# -- command implementations --------------------------------------------------

def _field_from_args(args) -> GF:
    modulus = None
    if getattr(args, "modulus", None):
        try:
            modulus = tuple(int(c) for c in args.modulus.split(","))
        except ValueError:
            raise ConstraintError(f"modulus {args.modulus!r} is not a comma-separated "
                                  "integer list") from None
    return field_new(args.p, getattr(args, "ext", 1) or 1, modulus)


def _curve_from_args(args, field: GF) -> CurveCI:
    n = args.n
    texts = [args.f] + [getattr(args, f"f{i}") for i in range(2, 9)
                        if getattr(args, f"f{i}", None)]
    if len(texts) != n - 1:
        raise ConstraintError(f"a curve in P^{n} needs {n - 1} forms, got {len(texts)}")
    polys = [parse_poly(t, n + 1, field) for t in texts]
    return CurveCI(field, polys)


def _open_out(args):
    if getattr(args, "out", None):
        return open(args.out, "w", newline="")
    return sys.stdout


def cmd_eotype(args) -> int:
    field = _field_from_args(args)
    curve = _curve_from_args(args, field)
    t0 = time.perf_counter()
    triple = hw_triple(curve, check_smooth=not args.skip_smoothness)
    t1 = time.perf_counter()
    result = classify(triple)
    t2 = time.perf_counter()
    report = build_report(curve, triple, result, {
        "hw_triple_s": t1 - t0, "classify_s": t2 - t1, "total_s": t2 - t0})
    out = _open_out(args)
    try:
        if args.json:
            json.dump(report, out, indent=2)
            out.write("\n")
        else:
            _print_report(report, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_hw(args) -> int:
    field = _field_from_args(args)
    curve = _curve_from_args(args, field)
    triple = hw_triple(curve, check_smooth=not args.skip_smoothness)
    out = _open_out(args)
    try:
        if args.json:
            payload = {
                "p": field.p,
                "ext_degree": field.m,
                "n": curve.n,
                "degrees": list(curve.degrees),
                "genus": triple.g,
                "fast_tag": triple.fast_tag,
                "hasse_witt": _matrix_entries(field, triple.A_phi),
                "kernel_basis": _matrix_entries(field, triple.kappa),
                "second_operator": _matrix_entries(field, triple.A_psi),
            }
            json.dump(payload, out, indent=2)
            out.write("\n")
        else:
            print(f"genus {triple.g}, tag {triple.fast_tag}", file=out)
            print("hasse-witt matrix:", file=out)
            for row in triple.A_phi:
                print("  " + " ".join(field.format_element(x) for x in row), file=out)
            print(f"kernel basis ({triple.h} rows):", file=out)
            for row in triple.kappa:
                print("  " + " ".join(field.format_element(x) for x in row), file=out)
            print("second operator columns:", file=out)
            for row in triple.A_psi:
                print("  " + " ".join(field.format_element(x) for x in row), file=out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def read_dm_file(path: str):
    """Matrix file: first line 'g p m', then 2g rows of g entries each."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise PolyParseError("empty matrix file")
    head = lines[0].split()
    if len(head) != 3:
        raise PolyParseError("first line must be 'g p m'")
    try:
        g, p, m = (int(x) for x in head)
    except ValueError:
        raise PolyParseError(f"non-integer header {lines[0]!r}") from None
    field = field_new(p, m)
    if len(lines) != 1 + 2 * g:
        raise PolyParseError(f"expected {2 * g} matrix rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        entries = ln.split()
        if len(entries) != g:
            raise PolyParseError(f"expected {g} entries per row, found {len(entries)}")
        try:
            rows.append([field.parse_element(e) for e in entries])
        except ValueError:
            raise PolyParseError(f"non-integer matrix entry in row {ln!r}") from None
    return field, np.array(rows)


def cmd_classify_dm(args) -> int:
    field, A_F = read_dm_file(args.file)
    dm = PolarizedDM(field, A_F)
    result = classify(dm)
    out = _open_out(args)
    try:
        if args.json:
            payload = {
                "p": field.p,
                "ext_degree": field.m,
                "g": dm.g,
                "final_type": list(result.final_type.values),
                "weyl_one_line": list(result.weyl.one_line),
                "weyl_word": weyl_word(result.weyl),
                "p_rank": result.p_rank,
                "a_number": result.a_number,
                "stratum_dim": result.stratum_dim,
                "fast_tag": result.fast_tag,
            }
            json.dump(payload, out, indent=2)
            out.write("\n")
        else:
            print(str(result), file=out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def run_scan(p: int, d: int, count: int, seed: int, out) -> dict:
    """Sample random degree-d plane forms, classify the smooth ones, and
    write a deterministic histogram as CSV."""
    field = field_new(p)
    basis = monomial_basis(3, d)
    rng = np.random.default_rng(seed)
    hist = {}
    singular = 0
    for index in range(count):
        coeffs = rng.integers(0, p, size=len(basis), dtype=np.int64)
        f = GradedPoly(field, 3, d, coeffs)
        try:
            curve = CurveCI(field, [f])
            result = classify(curve)
        except SingularCurveError:
            singular += 1
            continue
        except InternalInvariantError:
            print(f"internal error at sample index {index}", file=sys.stderr)
            raise
        hist[result.weyl.one_line] = hist.get(result.weyl.one_line, 0) + 1
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["weyl_one_line", "final_type", "p_rank", "a_number",
                     "stratum_dim", "count"])
    from .eoclass import WeylCoset, final_type_from_weyl, invariants_from_weyl
    for w_line in sorted(hist):
        w = WeylCoset(w_line)
        ft = final_type_from_weyl(w)
        p_rank, a_number, dim = invariants_from_weyl(w, w.g)
        writer.writerow([" ".join(map(str, w_line)),
                         " ".join(map(str, ft.values)),
                         p_rank, a_number, dim, hist[w_line]])
    writer.writerow(["SINGULAR", "", "", "", "", singular])
    writer.writerow(["TOTAL", "", "", "", "", count])
    return {"hist": hist, "singular": singular}


def cmd_scan(args) -> int:
    out = _open_out(args)
    try:
        run_scan(args.p, args.d, args.count, args.seed, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


# -- selftest -----------------------------------------------------------------

def _golden_checks(corrupt: bool = False):
    """(name, expected, actual) triples for the worked fixture curve."""
    F5 = field_new(5)
    f = parse_poly("X0^4+X1^4+X2^4+X0^3*X1+X0*X1^2*X2-X1^2*X2^2+3*X1*X2^3", 3, F5)
    curve = CurveCI(F5, [f])
    triple = hw_triple(curve)
    dm = assemble_dm(triple)
    full_F, full_V = full_fv_matrices(dm)
    result = classify(triple)
    expected_hw = [[0, 4, 1], [0, 2, 3], [0, 2, 3]]
    if corrupt:
        expected_hw = [[1, 4, 1], [0, 2, 3], [0, 2, 3]]
    yield ("hasse-witt matrix", expected_hw, triple.A_phi.tolist())
    yield ("kernel basis", [[1, 0, 0], [0, 1, 1]], triple.kappa.tolist())
    yield ("second operator on e_0", [3, 1, 3], triple.A_psi[:, 0].tolist())
    yield ("second operator on e_1+e_2", [3, 3, 1], triple.A_psi[:, 1].tolist())
    expected_AF = (np.array([[0, -1, 1], [0, -3, 3], [0, -3, 3],
                             [3, 1, 0], [1, 3, 0], [3, 3, 0]]) % 5).tolist()
    yield ("frobenius block", expected_AF, dm.A_F.tolist())
    expected_V = (np.array([[0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0],
                            [0, 0, 0, 0, 0, 0], [0, 0, 0, 3, 3, 1],
                            [-3, -3, -1, -3, -3, -1], [-3, -1, -3, 0, 0, 0]]) % 5).tolist()
    yield ("verschiebung matrix", expected_V, full_V.tolist())
    yield ("final type", [0, 0, 1, 1, 2, 2, 3], list(result.final_type.values))
    yield ("weyl coset", [1, 4, 2, 5, 3, 6], list(result.weyl.one_line))
    yield ("weyl word", "s3*s2", weyl_word(result.weyl))
    yield ("p-rank", 0, result.p_rank)
    yield ("a-number", 2, result.a_number)
    yield ("stratum dimension", 2, result.stratum_dim)
    F7 = field_new(7)
    cubic7 = classify(CurveCI(F7, [parse_poly("x^3+y^3+z^3", 3, F7)]))
    yield ("fermat cubic over GF(7)", "ordinary", cubic7.fast_tag)
    cubic5 = classify(CurveCI(F5, [parse_poly("x^3+y^3+z^3", 3, F5)]))
    yield ("fermat cubic over GF(5)", "superspecial", cubic5.fast_tag)
    quartic7 = classify(CurveCI(F7, [parse_poly("x^4+y^4+z^4", 3, F7)]))
    yield ("fermat quartic over GF(7)", [1, 2, 3, 4, 5, 6], list(quartic7.weyl.one_line))
    for g, expect in ((1, 2), (2, 4), (3, 8)):
        F2 = field_new(2)
        outs = {weyl_from_final_type(final_type_from_FV(m["F"], m["V"], F2)).one_line
                for m in enumerate_polarized_dms(g)}
        yield (f"distinct classes at genus {g}", expect, len(outs))
        if g == 3:
            yield ("census contains [1,4,2,5,3,6]", True, (1, 4, 2, 5, 3, 6) in outs)
            yield ("census contains [1,2,4,3,5,6]", True, (1, 2, 4, 3, 5, 6) in outs)


def cmd_selftest(args) -> int:
    failures = 0
    for name, expected, actual in _golden_checks(corrupt=getattr(args, "corrupt", False)):
        if expected == actual:
            print(f"CHECK {name}: PASS")
        else:
            print(f"CHECK {name}: FAIL (expected {expected}, got {actual})")
            failures += 1
    print("selftest:", "PASS" if failures == 0 else f"FAIL ({failures} mismatches)")
    return 0 if failures == 0 else 1


# -- entry point --------------------------------------------------------------

def _add_curve_flags(sp):
    sp.add_argument("--p", type=int, required=True, help="field characteristic")
    sp.add_argument("--ext", type=int, default=1, help="extension degree m")
    sp.add_argument("--modulus", type=str, default=None,
                    help="modulus coefficients 'c0,c1,...,1' (ascending)")
    sp.add_argument("--n", type=int, default=2, help="ambient projective dimension")
    sp.add_argument("--f", type=str, required=True, help="defining form")
    for i in range(2, 9):
        sp.add_argument(f"--f{i}", type=str, default=None,
                        help=argparse.SUPPRESS)
    sp.add_argument("--json", action="store_true", help="emit JSON")
    sp.add_argument("--out", type=str, default=None, help="write output to a file")
    sp.add_argument("--skip-smoothness", action="store_true",
                    help="bypass the plane smoothness check (at your own risk)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eotypes",
        description="Ekedahl-Oort types of complete intersection curves "
                    "over finite fields")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("eotype", help="classify a curve")
    _add_curve_flags(sp)
    sp.set_defaults(func=cmd_eotype)

    sp = sub.add_parser("hw", help="print the Hasse-Witt triple of a curve")
    _add_curve_flags(sp)
    sp.set_defaults(func=cmd_hw)

    sp = sub.add_parser("classify-dm", help="classify a Dieudonne module from a matrix file")
    sp.add_argument("file", help="text file: 'g p m' then 2g rows of g entries")
    sp.add_argument("--json", action="store_true", help="emit JSON")
    sp.add_argument("--out", type=str, default=None)
    sp.set_defaults(func=cmd_classify_dm)

    sp = sub.add_parser("scan", help="census of random plane curves")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", type=str, default=None, help="CSV output path")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("selftest", help="verify the built-in fixtures")
    sp.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PolyParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SingularCurveError as exc:
        print(f"singular curve: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except InternalInvariantError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ConstraintError as exc:
        print(f"constraint violation: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT


if __name__ == "__main__":
    sys.exit(main())
