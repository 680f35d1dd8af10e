"""Command line front end: kh, ss, infer, and examples subcommands."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import khovanov as kh
from . import models, serde
from .complexes import UHomology, homology_f2
from .infer import enumerate_patterns, resolve_filtration
from .spectral import FilteredComplex, analyze, check_constraints, converge, pages


class InputError(Exception):
    pass


def _threads() -> int:
    raw = os.environ.get("SKEINSEQ_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise InputError("SKEINSEQ_THREADS must be an integer, got %r" % raw)
    if n < 1:
        raise InputError("SKEINSEQ_THREADS must be positive")
    return n  # computations are deterministic at any cap


def _normalize(keys):
    hs = [k[0] for k in keys]
    qs = [k[1] for k in keys if len(k) > 1]
    h0 = min(hs) if hs else 0
    q0 = min(qs) if qs else 0
    return h0, q0


def _diagram_from_args(args) -> kh.LinkDiagram:
    if args.pd and args.infile:
        raise InputError("give either --pd or --in, not both")
    if args.pd:
        d = kh.parse_pd(args.pd)
    elif args.infile:
        d = serde.load_diagram(serde.read_json(args.infile))
    else:
        raise InputError("a diagram is required (--pd or --in)")
    if args.mirror:
        d = kh.mirror(d)
    return d


def cmd_kh(args) -> int:
    d = _diagram_from_args(args)
    if args.flavor == "reduced" and args.basepoint is None:
        raise InputError("reduced flavor requires --basepoint")
    cc = kh.ckh(d, args.flavor, args.basepoint, args.swap_resolutions)
    lines: list[str] = []
    payload: dict = {"flavor": args.flavor}
    if args.flavor == "minus":
        hom = UHomology(cc.complex)
        table = hom.by_grading()
        h0, q0 = _normalize(list(table))
        lines.append("h_rel\tq_rel\tfree\ttorsion")
        rows = []
        for (h, q), (free, tors) in sorted(table.items()):
            prof = ",".join("u^%d" % k for k in tors) if tors else "-"
            lines.append("%d\t%d\t%d\t%s" % (h - h0, q - q0, free, prof))
            rows.append(
                {"h_rel": h - h0, "q_rel": q - q0, "free": free, "torsion": tors}
            )
        lines.append("# free_rank\t%d" % hom.free_rank)
        lines.append("# torsion_count\t%d" % len(hom.torsion))
        lines.append("# rank_over_U\t%d" % (2 * hom.free_rank))
        payload.update(
            {
                "anchors": rows,
                "free_rank": hom.free_rank,
                "torsion": hom.torsion,
                "rank_over_U": 2 * hom.free_rank,
            }
        )
    else:
        dims = {k: v for k, v in homology_f2(cc.complex).items() if v}
        h0, q0 = _normalize(list(dims))
        lines.append("h_rel\tq_rel\tdim")
        rows = []
        for (h, q), dim in sorted(dims.items()):
            lines.append("%d\t%d\t%d" % (h - h0, q - q0, dim))
            rows.append({"h_rel": h - h0, "q_rel": q - q0, "dim": dim})
        total = sum(dims.values())
        lines.append("# total\t%d" % total)
        payload.update({"dims": rows, "total": total})
    _emit(args, lines, payload)
    return 0


def cmd_ss(args) -> int:
    cx, levels, _ = serde.load_complex(serde.read_json(args.infile))
    if levels is None:
        raise InputError("the ss input needs filtration levels")
    fc = FilteredComplex(cx, levels, extra_depth=args.truncation)
    data = analyze(fc)
    max_r = args.max_r if args.max_r else max(data.max_jump() + 1, 2)
    page_list = pages(fc, max_r)
    rep = converge(fc)
    lines = ["r\tq_rel\th_rel\tdim\ttorsion-profile"]
    rows = []
    h0, q0 = _normalize(list(page_list[0].dims) or [(0, 0)])
    for page in page_list:
        for grade, dim in sorted(page.dims.items()):
            q_rel = (grade[1] - q0) if len(grade) > 1 else 0
            lines.append("%d\t%d\t%d\t%d\t-" % (page.r, q_rel, grade[0] - h0, dim))
            rows.append(
                {"r": page.r, "q_rel": q_rel, "h_rel": grade[0] - h0, "dim": dim}
            )
    einf = data.einf_by_level()
    for (grade, level), dim in sorted(einf.items()):
        q_rel = (grade[1] - q0) if len(grade) > 1 else 0
        lines.append(
            "inf\t%d\t%d\t%d\tlevel=%d" % (q_rel, grade[0] - h0, dim, level)
        )
    if cx.convention == "kh":
        cons = check_constraints(page_list)
        lines.append("# constraints\t%s" % ("pass" if cons.ok else "FAIL"))
        for v in cons.violations:
            lines.append("# violation\td%d\t%s" % (v.r, v.reason))
    else:
        cons = None
    lines.append("# converge\t%s" % ("pass" if rep.ok else "FAIL"))
    payload = {
        "pages": rows,
        "converge": rep.ok,
        "constraints": (cons.ok if cons else None),
    }
    _emit(args, lines, payload)
    if not rep.ok:
        return 3
    return 0


def cmd_infer(args) -> int:
    e2 = serde.load_page_spec(serde.read_json(args.e2))
    target = serde.load_target_spec(serde.read_json(args.target))
    patterns = enumerate_patterns(e2, target)
    lines = ["pattern\tk\tsrc\ttgt\tx_power"]
    rows = []
    for i, pat in enumerate(patterns):
        if not pat.entries:
            lines.append("%d\t-\t-\t-\t-" % i)
            rows.append({"pattern": i, "entries": []})
            continue
        for (k, src, tgt, a) in pat.entries:
            lines.append("%d\t%d\t%s\t%s\t%d" % (i, k, src, tgt, a))
        rows.append({"pattern": i, "entries": [list(e) for e in pat.entries]})
    lines.append("# count\t%d" % len(patterns))
    payload: dict = {"patterns": rows, "count": len(patterns)}
    if args.resolve and patterns:
        rep = resolve_filtration(e2, patterns[0], target)
        lines.append("# filtration\t%s" % rep.status)
        for (name, h, q, from_top) in rep.survivors:
            lines.append("# survivor\t%s\th=%d\tq=%d\tfrom_top=%d" % (name, h, q, from_top))
        for name in sorted(rep.assignment):
            lines.append("# assign\t%s\t%s" % (name, rep.assignment[name]))
        for deep, shallow in rep.forced_below:
            lines.append("# deeper\t%s\tthan\t%s" % (deep, shallow))
        payload["filtration"] = {
            "status": rep.status,
            "survivors": [list(s) for s in rep.survivors],
            "assignment": rep.assignment,
        }
    _emit(args, lines, payload)
    return 0


def cmd_examples(args) -> int:
    rows = models.run_model_suite()
    rows.extend(_khovanov_golden_rows())
    lines = ["check\tresult\tdetail"]
    fails = 0
    for label, passed, detail in rows:
        lines.append("%s\t%s\t%s" % (label, "pass" if passed else "FAIL", detail))
        if not passed:
            fails += 1
    lines.append("# checks\t%d" % len(rows))
    lines.append("# failures\t%d" % fails)
    payload = {
        "checks": [
            {"label": l, "passed": p, "detail": d} for (l, p, d) in rows
        ],
        "failures": fails,
    }
    _emit(args, lines, payload)
    return 0 if fails == 0 else 3


TREFOIL_PD = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"
HOPF_PD = "PD[X(1,3,2,4),X(3,1,4,2)]"


def _khovanov_golden_rows():
    rows = []

    def note(label, passed, detail=""):
        rows.append((label, passed, detail))

    cc = kh.ckh(kh.parse_pd("U"), "hat")
    note("unknot hat dim 2", sum(homology_f2(cc.complex).values()) == 2)
    mt = kh.mirror(kh.parse_pd(TREFOIL_PD))
    hom = UHomology(kh.ckh(mt, "minus").complex)
    note("mirror trefoil minus free rank 3", hom.free_rank == 3 and not hom.torsion)
    note(
        "mirror trefoil hat dim 6",
        sum(homology_f2(kh.ckh(mt, "hat").complex).values()) == 6,
    )
    dims = {
        k: v
        for k, v in homology_f2(
            kh.ckh(mt, "reduced", basepoint=min(mt.arcs)).complex
        ).items()
        if v
    }
    note(
        "mirror trefoil reduced dim 3 in one delta class",
        sum(dims.values()) == 3 and len({q - 2 * h for (h, q) in dims}) == 1,
    )
    mh = kh.mirror(kh.parse_pd(HOPF_PD))
    cc = kh.ckh(mh, "minus")
    hom = UHomology(cc.complex)
    note("mirror hopf minus free rank 2", hom.free_rank == 2 and not hom.torsion)
    acts = [
        hom.induced_matrix(kh.basepoint_action(cc, arc))
        for arc in mh.component_arcs()
    ]
    note("mirror hopf component actions equal", acts[0] == acts[1], repr(acts[0]))
    fc = FilteredComplex(cc.complex, cc.levels)
    note("mirror hopf cube converges", converge(fc).ok)
    for n in (1, 2, 3, 4):
        hom = UHomology(kh.ckh(kh.unlink(n), "minus").complex)
        note(
            "unlink %d minus rank 2^%d over F[U]" % (n, n),
            hom.free_rank == 2 ** (n - 1) and not hom.torsion,
        )
    return rows


def _emit(args, lines, payload) -> None:
    if getattr(args, "out", "tsv") == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="skeinseq",
        description="Cube-of-resolutions homology, filtered-complex spectral "
        "sequences, and forced-differential inference over F2.",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("kh", help="homology of a planar diagram")
    p.add_argument("--pd", help="PD text, e.g. PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]")
    p.add_argument("--in", dest="infile", help="diagram JSON file")
    p.add_argument("--flavor", choices=kh.FLAVORS, default="minus")
    p.add_argument("--basepoint", type=int)
    p.add_argument("--mirror", action="store_true")
    p.add_argument("--swap-resolutions", action="store_true")
    p.add_argument("--out", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_kh)

    p = sub.add_parser("ss", help="spectral sequence of a filtered complex")
    p.add_argument("--in", dest="infile", required=True, help="complex JSON with filtration")
    p.add_argument("--max-r", type=int, default=0)
    p.add_argument("--truncation", type=int, default=0,
                   help="extra depth for the reported grading window")
    p.add_argument("--out", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_ss)

    p = sub.add_parser("infer", help="enumerate differential patterns")
    p.add_argument("--e2", required=True, help="page spec JSON")
    p.add_argument("--target", required=True, help="target spec JSON")
    p.add_argument("--resolve", action="store_true", help="also resolve filtration levels")
    p.add_argument("--out", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("examples", help="run the golden example suite")
    p.add_argument("--out", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_examples)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        _threads()
        return args.func(args)
    except InputError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    except (AssertionError, ArithmeticError) as exc:
        sys.stderr.write("internal invariant failure: %s\n" % exc)
        return 3


if __name__ == "__main__":
    sys.exit(main())
