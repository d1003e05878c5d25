"""monolink command line.

Exit status: 0 on success, 1 when a verification fails, 2 on bad input.
"""

import argparse
import json
import os
import sys

from . import __version__
from .curve import CurveError, enumerate_curves, parse, stats, to_json as curve_json
from .eha import CalibrationError
from .exactcoef import RatQT
from .notation import format_qt, format_schur
from .symfunc import DEFAULT, DegreeBoundError, SymF

CACHE_FORMAT = "monolink-cache"
CACHE_VERSION = 1


class InputError(ValueError):
    pass


def calibration_id(engine):
    """Id of the convention record an engine's output depends on ("" for A)."""
    if engine == "a":
        return ""
    from .eha import load_calibration
    rec = load_calibration()
    if engine == "c":
        return rec["magic"]["id"]
    return rec["id"]


class ResultCache:
    """Append-only line-delimited JSON store of census records.

    The first line is a header; each later line is one record
    {"word", "F", "report", "engine", "calibration_id"}.  Records written
    under a different calibration are ignored on load.
    """

    def __init__(self, path, engine="b"):
        self.path = path
        self.engine = engine
        self.cal = calibration_id(engine)
        self.records = {}
        self.loaded = set()
        if os.path.exists(path) and os.path.getsize(path):
            self._load()
        else:
            with open(path, "w") as fh:
                fh.write(json.dumps({"format": CACHE_FORMAT, "version": CACHE_VERSION,
                                     "monolink": __version__}) + "\n")

    def _load(self):
        with open(self.path) as fh:
            head = fh.readline()
            try:
                h = json.loads(head)
            except json.JSONDecodeError:
                raise InputError("%s: not a monolink cache" % self.path)
            if h.get("format") != CACHE_FORMAT or h.get("version") != CACHE_VERSION:
                raise InputError("%s: unsupported cache header %s" % (self.path, head.strip()))
            for line in fh:
                if not line.strip():
                    continue
                rec = json.loads(line)
                if rec.get("engine") == self.engine and rec.get("calibration_id") == self.cal:
                    self.records[rec["word"]] = rec
                    self.loaded.add(rec["word"])

    def get(self, word):
        return self.records.get(word)

    def hit(self, word):
        return word in self.loaded

    def put(self, word, F, report, engine):
        if word in self.records:
            return
        rec = {"word": word, "F": F.to_json(), "report": report.to_json(),
               "engine": engine, "calibration_id": self.cal}
        self.records[word] = rec
        with open(self.path, "a") as fh:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------

def _curve(word):
    try:
        C = parse(word)
    except CurveError as e:
        raise InputError("invalid curve %r: %s" % (word, e))
    # F_C lives in degree m
    DEFAULT.check(C.m)
    return C


def _F(C, engine):
    from .positivity import _engine
    return _engine(engine)(C)


def _emit(args, data, text):
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True, default=str))
    else:
        print(text)


def _apoly_text(P):
    if isinstance(P, RatQT):
        return str(P)
    slices = P.by_a_degree()
    parts = []
    for e in sorted(slices, reverse=True):
        parts.append("a^%d (%s)" % (e, format_qt(slices[e])))
    return " + ".join(parts) if parts else "0"


def cmd_eval(args):
    from .homfly import _at_t_inv_q, superpoly
    from .positivity import at_t1, classify, unimodality
    C = _curve(args.word)
    F = _F(C, args.engine)
    st = stats(C)
    PE = superpoly(C, F)
    Phat = superpoly(C, F, normalized=True)
    F1 = at_t1(F)
    Fq = _at_t_inv_q(F)
    rep = classify(C, F, convexity=True)
    uni = unimodality(Phat)
    rep.unimodal = uni.to_json()
    data = {"word": C.word, "m": C.m, "n": C.n, "engine": args.engine,
            "calibration_id": calibration_id(args.engine), "F": F.to_json(),
            "F_text": format_schur(F), "superpoly": PE.to_json(), "superpoly_normalized": Phat.to_json(),
            "t1": format_schur(F1), "t_inv_q": format_schur(Fq), "stats": st.to_json(),
            "positivity": rep.to_json()}
    lines = ["curve      %s  (m=%d, n=%d, k=%d, w=%d, b=%s, eps=%s)"
             % (C.word, C.m, C.n, st.k, st.writhe, list(st.b), list(st.eps)),
             "F          %s" % format_schur(F),
             "P^E        %s" % _apoly_text(PE),
             "P^         %s" % _apoly_text(Phat),
             "F|t=1      %s" % format_schur(F1),
             "F|t=1/q    %s" % format_schur(Fq),
             "positivity schur=%s series=%s qt-symmetric=%s zconvex=%s weak=%s"
             % (rep.schur_positive, rep.series_positive, rep.qt_symmetric, rep.zconvex,
                rep.weak_zconvex),
             "unimodal   q,t=%s parity=%s" % (uni.unimodal, uni.parity_unimodal)]
    if rep.witness:
        lines.append("witness    %s" % (rep.witness,))
    if args.engine != "a":
        lines.append("calibration %s" % data["calibration_id"])
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_enum(args):
    if args.m < 1 or args.n < 1:
        raise InputError("m and n must be positive")
    curves = enumerate_curves(args.m, args.n)
    _emit(args, [curve_json(C) for C in curves], "\n".join(C.word for C in curves))
    return 0


def cmd_classify(args):
    from .positivity import classify
    out = []
    for w in args.words:
        C = _curve(w)
        out.append(classify(C, _F(C, args.engine), convexity=True).to_json())
    text = "\n".join("%s schur=%s series=%s qt-symmetric=%s zconvex=%s weak=%s witness=%s"
                     % (r["word"], r["schur_positive"], r["series_positive"], r["qt_symmetric"],
                        r["zconvex"], r["weak_zconvex"], r["witness"]) for r in out)
    _emit(args, out, text)
    return 0


def _progress(m, n, count):
    print("  block %d x %d: %d curves" % (m, n, count), file=sys.stderr, flush=True)


def cmd_census(args):
    from .verify import suite_census
    DEFAULT.check(args.mmax)
    cache = ResultCache(args.cache, args.engine) if args.cache else None
    rep = suite_census(mmax=args.mmax, nmax=args.nmax, mmin=args.mmin, nmin=args.nmin, jobs=args.jobs,
                       engine=args.engine, cache=cache, audit=args.audit,
                       progress=_progress if args.verbose else None)
    c = rep["counts"]
    c["calibration_id"] = calibration_id(args.engine)
    text = ["curves with %d <= m <= %d, %d <= n <= %d: %d"
            % (args.mmin, args.mmax, args.nmin, args.nmax, c["total"]),
            "  series positive  %d" % c["series_positive"],
            "  weakly Z-convex  %d" % c["weak_zconvex"],
            "  Z-convex         %d" % c["zconvex"],
            "  containments     %s" % ("hold" if c["containments_hold"] else "FAIL"),
            "  audit            %s" % (c["audit"] or "off"),
            "  %.1f s" % c["seconds"]]
    if not rep["passed"]:
        text.append("FAILED: %s" % rep["failures"])
    _emit(args, rep, "\n".join(text))
    return 0 if rep["passed"] else 1


def cmd_verify(args):
    from .verify import SUITES, run_suite
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.suite == "all":
        names.remove("census")
    opts = {}
    if args.max is not None:
        opts["max"] = args.max
    if args.engine:
        opts["engine"] = args.engine
    opts.update(mmax=args.mmax, nmax=args.nmax, jobs=args.jobs)
    if args.cache:
        opts["cache"] = ResultCache(args.cache, args.engine or "b")
    reports = []
    for name in names:
        o = dict(opts)
        if name == "table1":
            o.pop("engine", None)
        reports.append(run_suite(name, **o))
    lines = []
    for r in reports:
        lines.append("%-10s %s  %d checks  %.1f s" % (r["suite"], "PASS" if r["passed"] else "FAIL",
                                                     r["checked"], r["seconds"]))
        if r["suite"] == "table1":
            lines.append("           %d/%d matches" % (r["matches"], r["curves"]))
        if r["suite"] == "writhe":
            c0 = r["C0"]
            lines.append("           w(%s): stated %d, computed %d, braid %d"
                         % (c0["word"], c0["stated"], c0["computed"], c0["braid"]))
        for f in r["failures"][:5]:
            lines.append("           %s" % json.dumps(f, default=str))
    _emit(args, reports if len(reports) > 1 else reports[0], "\n".join(lines))
    return 0 if all(r["passed"] for r in reports) else 1


def cmd_homfly(args):
    from .homfly import coxeter_braid, homfly, verify_prop_1_19
    C = _curve(args.word)
    beta = coxeter_braid(C)
    P = homfly(C)
    rep = verify_prop_1_19(C, _F(C, args.engine))
    data = {"word": C.word, "braid": beta.to_json(), "writhe": beta.writhe,
            "homfly": P.to_json(), "prop_1_19": rep.to_json()}
    lines = ["braid    %s  (writhe %d)" % (beta, beta.writhe), "HOMFLY   %s" % _apoly_text(P)]
    reduced = _per_unknot(P)
    if reduced is not None:
        lines.append("/unknot  %s" % _apoly_text(reduced))
        data["homfly_over_unknot"] = reduced.to_json()
    lines.append("DAHA side agrees with the Hecke trace: %s" % rep.holds)
    text = "\n".join(lines)
    _emit(args, data, text)
    return 0 if rep.holds else 1


def _per_unknot(P):
    """P divided by the unknot value, when that is a Laurent polynomial."""
    from .homfly import A, Z
    r = P * Z
    if not r.is_polynomial():
        return None
    return r.to_poly().exact_div(A - A ** -1)


def _pairs(spec):
    out = []
    for tok in spec.replace(";", " ").split():
        try:
            m, n = (int(x) for x in tok.split(","))
        except ValueError:
            raise InputError("bad pair %r (want m,n)" % tok)
        if m < 1 or n < 1:
            raise InputError("pair %r must be positive" % tok)
        out.append((m, n))
    if not out:
        raise InputError("no pairs given")
    return out


def cmd_splice(args):
    from .homfly import splice
    dia, alg = splice(_pairs(args.pairs))
    data = {"diagram": dia.to_json(), "algebraic": alg,
            "edge_checks": [{"edge": list(e), "xy": xy, "product": p} for e, xy, p in dia.edge_checks()]}
    lines = ["nodes %s" % " ".join(dia.nodes)]
    for e in dia.edges:
        lines.append("  %s -- %s  labels %s, %s" % tuple("-" if x is None else x for x in e))
    for e, xy, p in dia.edge_checks():
        lines.append("  edge %s-%s: %d > %d ? %s" % (e[0], e[1], xy, p, xy > p))
    lines.append("algebraic: %s" % alg)
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_t1(args):
    from .positivity import at_t1, t1_paths, t1_sum
    C = _curve(args.word)
    F = _F(C, args.engine)
    paths = t1_paths(C)
    lhs = t1_sum(C)
    rhs = at_t1(F)
    ok = lhs == rhs.convert("h")
    data = {"word": C.word, "paths": [{"path": w, "q_exponent": e, "runs": list(r)} for w, e, r in paths],
            "path_sum": lhs.to_json(), "specialization": rhs.to_json(), "equal": ok,
            "path_count": len(paths)}
    lines = ["%s  q^%d  runs %s" % (w, e, list(r)) for w, e, r in paths]
    lines += ["path sum   %s" % _h_text(lhs),
              "F|t=1      %s" % format_schur(rhs),
              "equal      %s" % ok,
              "paths      %d" % len(paths)]
    _emit(args, data, "\n".join(lines))
    return 0 if ok else 1


def _h_text(f):
    return format_schur(SymF(f.ring, "s", f.terms)).replace("s_", "h_")


def cmd_calibrate(args):
    from .eha import CALIBRATION_PATH, calibrate
    path = args.output or CALIBRATION_PATH
    rec = calibrate(write=True, path=path)
    text = "\n".join(["Engine B convention %s  id %s" % (json.dumps(rec["convention"], sort_keys=True), rec["id"]),
                      "Engine C convention %s  id %s" % (json.dumps(rec["magic"]["convention"], sort_keys=True),
                                                        rec["magic"]["id"]),
                      "checked on %d curves; written to %s" % (rec["curves_checked"], path)])
    _emit(args, rec, text)
    return 0


# ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--degree-bound", type=int, default=None, metavar="K",
                        help="largest symmetric-function degree to allow")
    eng = argparse.ArgumentParser(add_help=False)
    eng.add_argument("--engine", choices=("a", "b", "c"), default="a",
                     help="a: DAHA (reference), b: elliptic Hall, c: tableau formula")

    p = argparse.ArgumentParser(prog="monolink", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("eval", parents=[common, eng], help="F_C and everything derived from it")
    s.add_argument("word")
    s.set_defaults(fn=cmd_eval)

    s = sub.add_parser("enum", parents=[common], help="list the curves in an m x n box")
    s.add_argument("m", type=int)
    s.add_argument("n", type=int)
    s.set_defaults(fn=cmd_enum)

    s = sub.add_parser("classify", parents=[common, eng], help="positivity and convexity")
    s.add_argument("words", nargs="+")
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("census", parents=[common], help="counts over all small curves")
    s.add_argument("--engine", choices=("a", "b", "c"), default="b")
    s.add_argument("--mmax", type=int, default=7)
    s.add_argument("--nmax", type=int, default=7)
    s.add_argument("--mmin", type=int, default=1)
    s.add_argument("--nmin", type=int, default=1)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--cache", metavar="PATH")
    s.add_argument("--audit", type=float, default=0.01, help="fraction rechecked by Engine A")
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(fn=cmd_census)

    from .verify import SUITES
    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", choices=sorted(SUITES) + ["all"])
    s.add_argument("--max", type=int, default=None, help="size bound for the suite")
    s.add_argument("--engine", choices=("a", "b", "c"), default=None)
    s.add_argument("--mmax", type=int, default=7)
    s.add_argument("--nmax", type=int, default=7)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--cache", metavar="PATH")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("homfly", parents=[common, eng], help="HOMFLY polynomial of the curve's link")
    s.add_argument("word")
    s.set_defaults(fn=cmd_homfly)

    s = sub.add_parser("splice", parents=[common], help='splice diagram for "m1,n1 m2,n2 ..."')
    s.add_argument("pairs")
    s.set_defaults(fn=cmd_splice)

    s = sub.add_parser("t1", parents=[common, eng], help="the t = 1 path sum")
    s.add_argument("word")
    s.set_defaults(fn=cmd_t1)

    s = sub.add_parser("calibrate", parents=[common], help="fit Engines B and C to Engine A")
    s.add_argument("--output", metavar="PATH")
    s.set_defaults(fn=cmd_calibrate)
    return p


def main(argv=None):
    p = build_parser()
    try:
        args = p.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    saved = DEFAULT.degree_bound
    if args.degree_bound is not None:
        if args.degree_bound < 1:
            print("monolink: --degree-bound must be positive", file=sys.stderr)
            return 2
        DEFAULT.degree_bound = args.degree_bound
    try:
        return args.fn(args)
    except (InputError, DegreeBoundError, CalibrationError, ValueError, KeyError) as e:
        print("monolink: %s" % e, file=sys.stderr)
        return 2
    finally:
        DEFAULT.degree_bound = saved


if __name__ == "__main__":
    sys.exit(main())
