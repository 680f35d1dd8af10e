"""JSON input formats for complexes, diagrams, and page/target specs."""

from __future__ import annotations

import json
from typing import Any

from .complexes import CONV_FLOER, CONV_KH, ChainComplex, Generator
from .infer import PageSpec, TargetSpec, Tower
from .khovanov import LinkDiagram
from .poly import FULL, HALF, VarSet, parse_poly

UNIT_NAMES = {"1": FULL, "1/2": HALF, "0.5": HALF}
UNIT_TEXT = {FULL: "1", HALF: "1/2"}


def load_complex(doc: dict[str, Any]):
    """(complex, levels or None, raw action specs) from the JSON format."""
    vars_doc = doc.get("variables", [])
    names = tuple(v["name"] for v in vars_doc)
    units = tuple(UNIT_NAMES[str(v.get("unit", "1/2"))] for v in vars_doc)
    vs = VarSet(names, units)
    gens = []
    levels: dict[str, int] = {}
    any_level = False
    any_q = False
    for g in doc.get("generators", []):
        gid = str(g["id"])
        q = g.get("q")
        alex2 = g.get("alex2")
        if q is not None:
            any_q = True
        gens.append(Generator(gid, int(g["h"]), q if q is None else int(q),
                              alex2 if alex2 is None else int(alex2)))
        if "filtration" in g:
            any_level = True
            levels[gid] = int(g["filtration"])
    convention = doc.get("convention")
    if convention is None:
        convention = CONV_KH if any_q else CONV_FLOER
    diff = {}
    for e in doc.get("diff", []):
        key = (str(e["from"]), str(e["to"]))
        p = parse_poly(vs, str(e["poly"]))
        diff[key] = diff[key] + p if key in diff else p
    pairs = {str(k): tuple(v) for k, v in doc.get("pairs", {}).items()}
    cx = ChainComplex(vs, gens, diff, convention, pairs)
    lv = None
    if any_level:
        if len(levels) != len(gens):
            raise ValueError("filtration present on only some generators")
        lv = levels
        if all(
            lv[t] < lv[s] for (s, t), p in cx.diff.items() if p
        ) and cx.diff:
            lv = {g: -x for g, x in lv.items()}  # re-index decreasing inputs
    return cx, lv, doc.get("actions", [])


def dump_complex(cx: ChainComplex, levels: dict[str, int] | None = None) -> dict:
    doc: dict[str, Any] = {
        "variables": [
            {"name": n, "unit": UNIT_TEXT[u]}
            for n, u in zip(cx.vars.names, cx.vars.units)
        ],
        "convention": cx.convention,
        "generators": [],
        "diff": [],
    }
    if cx.pairs:
        doc["pairs"] = {k: list(v) for k, v in sorted(cx.pairs.items())}
    for g in cx.gens:
        row: dict[str, Any] = {"id": g.gid, "h": g.h}
        if g.q is not None:
            row["q"] = g.q
        if g.alex2 is not None:
            row["alex2"] = g.alex2
        if levels is not None:
            row["filtration"] = levels[g.gid]
        doc["generators"].append(row)
    for (src, tgt), p in sorted(cx.diff.items()):
        doc["diff"].append({"from": src, "to": tgt, "poly": str(p)})
    return doc


def load_diagram(doc: dict[str, Any]) -> LinkDiagram:
    crossings = tuple(tuple(int(x) for x in c) for c in doc.get("crossings", []))
    basepoints = tuple(
        sorted((str(k), int(v)) for k, v in doc.get("basepoints", {}).items())
    )
    return LinkDiagram(crossings, int(doc.get("free_loops", 0)), basepoints)


def load_page_spec(doc: dict[str, Any]) -> PageSpec:
    towers = []
    for t in doc.get("towers", []):
        towers.append(
            Tower(str(t["name"]), int(t["h"]), int(t["q"]), t.get("order"))
        )
    return PageSpec(tuple(towers))


def load_target_spec(doc: dict[str, Any]) -> TargetSpec:
    anchors = None
    if doc.get("anchors") is not None:
        anchors = tuple(
            (int(a[0]), int(a[1]), None if a[2] is None else int(a[2]))
            for a in doc["anchors"]
        )
    actions = {}
    for name, entries in doc.get("actions", {}).items():
        mat = {}
        for e in entries:
            mat[(str(e[0]), str(e[1]))] = 1
        actions[str(name)] = mat
    return TargetSpec(
        int(doc.get("free_rank", 0)),
        tuple(int(k) for k in doc.get("torsion", [])),
        anchors,
        tuple(str(b) for b in doc.get("basis", [])),
        actions,
    )


def read_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
