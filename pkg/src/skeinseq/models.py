"""Closed-form model complexes with their action data and verifiers.

The six models are small complexes whose differentials and action
matrices are fixed data; the verifiers re-derive everything checkable
(square-zero, anticommutator identities, action squares, kernel ranks,
top-grading action patterns) so a transcription error cannot pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import gf2
from .complexes import (
    CONV_FLOER,
    ChainComplex,
    ChainMap,
    Generator,
    UHomology,
    _monomials_of_drop,
    collapse_all,
    collapse_pairs,
    phi_action,
    tensor,
)
from .poly import HALF, Poly, VarSet, parse_poly

MODEL_NAMES = ("k_nonori", "k_ori", "l_nonori", "l_ori", "trefoil_cfl", "z11_2")


@dataclass(frozen=True)
class ActionSpec:
    name: str
    kind: str  # "loop" or "path"
    entries: tuple[tuple[str, str, str], ...]  # (from, to, poly text)
    endpoints: tuple[str, str] | None = None
    dh: int = -1


@dataclass
class ModelComplex:
    name: str
    complex: ChainComplex
    actions: dict[str, ActionSpec] = field(default_factory=dict)
    kind: str | None = None  # "nonori" or "ori" for the two-generator tops

    def action_map(self, name: str, cx: ChainComplex | None = None) -> ChainMap:
        spec = self.actions[name]
        cx = cx or self.complex
        entries = {}
        for (src, tgt, text) in spec.entries:
            p = parse_poly(self.complex.vars, text)
            if cx is not self.complex:
                p = _transport(self.complex, cx, p)
            key = (src, tgt)
            entries[key] = entries.get(key, Poly.zero(cx.vars)) + p
        return ChainMap(cx, cx, entries, dh=spec.dh, name=name, check=False)


def _transport(src_cx: ChainComplex, dst_cx: ChainComplex, p: Poly) -> Poly:
    assignment = {}
    for pid, names in src_cx.pairs.items():
        dst_names = dst_cx.pairs[pid]
        if len(dst_names) == 1:
            for n in names:
                assignment[n] = dst_names[0]
        else:
            for a, b in zip(names, dst_names):
                assignment[a] = b
    return p.map_vars(dst_cx.vars, assignment)


def _two_step(vs, pairs, top: str, bot: str, down: str, up: str | None,
              alex_top: int = 1) -> ChainComplex:
    gens = [Generator(top, 0, None, alex_top), Generator(bot, 0, None, (alex_top + 1) % 2)]
    diff = {(top, bot): parse_poly(vs, down)}
    if up:
        diff[(bot, top)] = parse_poly(vs, up)
    return ChainComplex(vs, gens, diff, CONV_FLOER, pairs, check=True)


def build_model(name: str) -> ModelComplex:
    """The named model complex; raises KeyError for unknown names."""
    if name == "k_nonori":
        vs = VarSet(("z", "w"), (HALF, HALF))
        pairs = {"1": ("z", "w")}
        gens = [Generator("f", 0, None, 1), Generator("g", 0, None, 0)]
        diff = {("f", "g"): parse_poly(vs, "z+w")}
        return ModelComplex(name, ChainComplex(vs, gens, diff, CONV_FLOER, pairs),
                            kind="nonori")
    if name == "k_ori":
        vs = VarSet(("z1", "w1", "z2", "w2"), (HALF,) * 4)
        pairs = {"1": ("z1", "w1"), "2": ("z2", "w2")}
        gens = [
            Generator("ax", 0, None, 0),
            Generator("ay", 0, None, 1),
            Generator("bx", 0, None, 1),
            Generator("by", 0, None, 0),
        ]
        diff = {
            ("ax", "ay"): parse_poly(vs, "w1+w2"),
            ("ax", "bx"): parse_poly(vs, "z1+z2"),
            ("ay", "ax"): parse_poly(vs, "z1+z2"),
            ("ay", "by"): parse_poly(vs, "z1+z2"),
            ("bx", "ax"): parse_poly(vs, "w1+w2"),
            ("bx", "by"): parse_poly(vs, "w1+w2"),
            ("by", "ay"): parse_poly(vs, "w1+w2"),
            ("by", "bx"): parse_poly(vs, "z1+z2"),
        }
        return ModelComplex(name, ChainComplex(vs, gens, diff, CONV_FLOER, pairs),
                            kind="ori")
    if name == "l_nonori":
        vs = VarSet(("z1", "w1", "z2", "w2"), (HALF,) * 4)
        pairs = {"1": ("z1", "w1"), "2": ("z2", "w2")}
        fa = _two_step(vs, pairs, "b", "a", "z1+z2", "w1+w2")
        fc = _two_step(vs, pairs, "z", "w", "z1+w2", None)
        fb = _two_step(vs, pairs, "x", "y", "z1+z2", "w1+w2")
        cx = tensor(tensor(fa, fc), fb)
        return ModelComplex(name, cx)
    if name == "l_ori":
        vs = VarSet(("z1", "w1", "z2", "w2", "z3", "w3"), (HALF,) * 6)
        pairs = {"1": ("z1", "w1"), "2": ("z2", "w2"), "3": ("z3", "w3")}
        f1 = _two_step(vs, pairs, "d", "c", "z1+z2", "w1+w3")
        f2 = _two_step(vs, pairs, "z", "w", "z1+z2", "w1+w3")
        f3 = _two_step(vs, pairs, "b", "a", "z2+z3", "w2+w3")
        f4 = _two_step(vs, pairs, "x", "y", "z2+z3", "w2+w3")
        cx = tensor(tensor(tensor(f1, f2), f3), f4)
        return ModelComplex(name, cx)
    if name == "trefoil_cfl":
        vs = VarSet(("u",), (HALF,))
        pairs = {"1": ("u",)}
        gens = [
            Generator("a", 0, None, 0),
            Generator("b", 0, None, 0),
            Generator("c", 0, None, 1),
        ]
        diff = {("c", "a"): parse_poly(vs, "u")}
        return ModelComplex(name, ChainComplex(vs, gens, diff, CONV_FLOER, pairs))
    if name == "z11_2":
        vs = VarSet(("Z", "W"), (HALF, HALF))
        pairs = {"1": ("Z", "W")}
        gens = [
            Generator("ax", 0, None, 0),
            Generator("ay", 0, None, 1),
            Generator("bx", 0, None, 1),
            Generator("by", 0, None, 0),
        ]
        kappa = ActionSpec(
            "A_kappa",
            "loop",
            (
                ("ax", "ay", "Z"),
                ("ax", "bx", "W"),
                ("ay", "ax", "W"),
                ("ay", "by", "W"),
                ("bx", "ax", "Z"),
                ("bx", "by", "Z"),
                ("by", "ay", "Z"),
                ("by", "bx", "W"),
            ),
        )
        lam = ActionSpec(
            "A_lambda",
            "loop",
            (
                ("ay", "ax", "W"),
                ("bx", "ax", "Z"),
                ("by", "ay", "Z"),
                ("by", "bx", "W"),
            ),
        )
        cx = ChainComplex(vs, gens, {}, CONV_FLOER, pairs)
        return ModelComplex(name, cx, {"A_kappa": kappa, "A_lambda": lam})
    raise KeyError("unknown model %r" % name)


# -- top-grading homology and action patterns ---------------------------------------


@dataclass
class TopTable:
    basis: list[frozenset[str]]  # cycle supports are multi-generator sums
    vectors: list[int]  # masks over the top generators
    top_gens: list[str]
    phi: dict[str, list[list[int]]]  # pair -> matrix on the cycle basis
    alex: list[int]
    canonical: dict[str, int] | None  # pattern name -> basis position


def _top_cycles(cx: ChainComplex) -> tuple[list[str], list[int]]:
    top = max(g.h for g in cx.gens)
    tops = [g.gid for g in cx.gens if g.h == top]
    row_index: dict[tuple[str, tuple[int, ...]], int] = {}
    cols = []
    for gid in tops:
        vec = 0
        for (s, t), p in cx.diff.items():
            if s != gid:
                continue
            for m in p.terms:
                key = (t, m)
                if key not in row_index:
                    row_index[key] = len(row_index)
                vec ^= 1 << row_index[key]
        cols.append(vec)
    kernel = gf2.column_kernel(cols)
    return tops, sorted(kernel)


def _phi_matrix_on_tops(model_cx: ChainComplex, pair: str,
                        tops: list[str]) -> dict[tuple[int, int], int]:
    """F2 matrix of the derivative action restricted to the top slice."""
    pm = phi_action(model_cx, pair)
    pos = {g: i for i, g in enumerate(tops)}
    out: dict[tuple[int, int], int] = {}
    for (src, tgt), p in pm.entries.items():
        if src in pos and tgt in pos:
            const = sum(1 for m in p.terms if all(e == 0 for e in m)) % 2
            if const:
                out[(pos[src], pos[tgt])] = 1
    return out


def _apply_mask(matrix: dict[tuple[int, int], int], mask: int, n: int) -> int:
    out = 0
    for i in range(n):
        if (mask >> i) & 1:
            for (a, b), v in matrix.items():
                if a == i and v:
                    out ^= 1 << b
    return out


GOLDEN_PATTERNS = {
    "l_nonori": {
        "names": ("a", "b", "c", "d"),
        "groups": (("a", "d"), ("b", "c")),
        "phi": {
            "1": {"a": ("c",), "b": ("d",)},
            "2": {"a": ("b", "c"), "b": ("d",), "c": ("d",)},
        },
    },
    "l_ori": {
        "names": ("a", "b", "c", "d"),
        "groups": (("a", "d"), ("b", "c")),
        "phi": {
            "1": {"a": ("c",), "b": ("d",)},
            "2": {"a": ("b", "c"), "b": ("d",), "c": ("d",)},
            "3": {"a": ("b",), "c": ("d",)},
        },
    },
    "k_nonori": {
        "names": ("f", "g"),
        "groups": (("f",), ("g",)),
        "phi": {"1": {"f": ("g",)}},
    },
    "k_ori": {
        "names": ("f", "g"),
        "groups": (("f",), ("g",)),
        "phi": {"1": {"f": ("g",)}, "2": {"f": ("g",)}},
    },
}

# degree -1 homology actions on the canonical top basis of l_ori
L_ORI_TOP_ACTIONS = {
    "A12": {"a": ("c",), "c": ("a",), "b": ("d",), "d": ("b",)},
    "B23": {"a": ("b",), "b": ("a",), "c": ("d",), "d": ("c",)},
    "A23": {"a": ("b", "c"), "b": ("a", "d"), "c": ("d",), "d": ("c",)},
    "A13": {"a": ("b",), "b": ("a",), "c": ("a", "d"), "d": ("b", "c")},
}


def top_homology_table(m: ModelComplex) -> TopTable:
    """Top-grading homology basis with its derivative-action matrices.

    The canonical labelling is found by searching alexander-homogeneous
    bases realizing the golden arrow pattern exactly; a model whose
    actions cannot be put in that shape raises.
    """
    cx = collapse_pairs(m.complex)
    tops, cycles = _top_cycles(cx)
    nt = len(tops)
    pair_ids = sorted(m.complex.pairs)
    phi_mats = {
        pid: _phi_matrix_on_tops(m.complex, pid, tops) for pid in pair_ids
    }
    space = gf2.ColumnSpace()
    for v in cycles:
        space.add(v)

    def induce(pid: str, mask: int) -> int:
        img = _apply_mask(phi_mats[pid], mask, nt)
        if space.express(img) is None:
            raise AssertionError("action image left the cycle space")
        return img

    matrices: dict[str, list[list[int]]] = {}
    for pid in pair_ids:
        mat = []
        for v in cycles:
            img = induce(pid, v)
            combo = space.express(img)
            row = [(combo >> i) & 1 for i in range(len(cycles))] if combo else [0] * len(cycles)
            mat.append(row)
        matrices[pid] = mat

    alex_of_gen = {g.gid: cx.gen(g.gid).alex2 for g in cx.gens}

    def vec_alex(mask: int) -> int | None:
        vals = {alex_of_gen[tops[i]] for i in range(nt) if (mask >> i) & 1}
        return vals.pop() if len(vals) == 1 else None

    alex = [vec_alex(v) if vec_alex(v) is not None else -1 for v in cycles]

    canonical = None
    pattern = GOLDEN_PATTERNS.get(m.name)
    if pattern is not None:
        canonical = _match_pattern(
            pattern, pair_ids, cycles, phi_mats, vec_alex, space, nt
        )
        if canonical is None:
            raise AssertionError("no basis realizes the golden action pattern")
    return TopTable(
        [frozenset(tops[i] for i in range(nt) if (v >> i) & 1) for v in cycles],
        cycles,
        tops,
        matrices,
        alex,
        canonical,
    )


def _match_pattern(pattern, pair_ids, cycles, phi_mats, vec_alex, space, nt):
    """Search for homogeneous vectors realizing the golden arrows exactly."""
    import itertools
    names = pattern["names"]
    groups = pattern["groups"]
    dim = len(cycles)
    if dim != len(names):
        return None
    all_vecs = []
    for mask in range(1, 1 << dim):
        vec = 0
        for i in range(dim):
            if (mask >> i) & 1:
                vec ^= cycles[i]
        all_vecs.append(vec)
    all_vecs = sorted(set(all_vecs))
    by_alex: dict[int, list[int]] = {}
    for v in all_vecs:
        a = vec_alex(v)
        if a is not None:
            by_alex.setdefault(a, []).append(v)
    alex_vals = sorted(by_alex)
    if len(alex_vals) != 2:
        return None

    def ok(assign: dict[str, int]) -> bool:
        for pid in pair_ids:
            targets_by_name = pattern["phi"].get(pid, {})
            for nm, vec in assign.items():
                img = _apply_mask(phi_mats[pid], vec, nt)
                want = 0
                for t in targets_by_name.get(nm, ()):
                    want ^= assign[t]
                if img != want:
                    return False
        return True

    for flip in (0, 1):
        class_of_group = {0: alex_vals[flip], 1: alex_vals[1 - flip]}
        pools = [by_alex[class_of_group[gi]] for gi in range(len(groups))]
        for choices in itertools.product(
            *[itertools.permutations(pool, len(grp)) for pool, grp in zip(pools, groups)]
        ):
            assign: dict[str, int] = {}
            for grp, chosen in zip(groups, choices):
                for nm, vec in zip(grp, chosen):
                    assign[nm] = vec
            base = gf2.ColumnSpace()
            if any(base.add(v) is not None for v in assign.values()):
                continue
            if len(assign) == dim and ok(assign):
                out = {}
                for nm, vec in sorted(assign.items()):
                    out[nm] = vec
                return out
    return None


# -- canonical pair -------------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalPair:
    f: frozenset[str]
    g: frozenset[str]
    theta: str  # "f" or "g"


def canonical_fg(m: ModelComplex) -> CanonicalPair:
    """The unique homogeneous top classes with g killed by every action."""
    if m.kind not in ("nonori", "ori"):
        raise ValueError("canonical pair defined for the two-generator tops")
    cx = collapse_pairs(m.complex)
    tops, cycles = _top_cycles(cx)
    nt = len(tops)
    if len(cycles) != 2:
        raise ArithmeticError("characterization not satisfiable: top rank != 2")
    pair_ids = sorted(m.complex.pairs)
    phi_mats = {pid: _phi_matrix_on_tops(m.complex, pid, tops) for pid in pair_ids}
    alex_of_gen = {g.gid: cx.gen(g.gid).alex2 for g in cx.gens}
    vecs = sorted({cycles[0], cycles[1], cycles[0] ^ cycles[1]})
    homog = []
    for v in vecs:
        vals = {alex_of_gen[tops[i]] for i in range(nt) if (v >> i) & 1}
        if len(vals) == 1:
            homog.append(v)
    gs = [
        v
        for v in homog
        if all(_apply_mask(phi_mats[p], v, nt) == 0 for p in pair_ids)
    ]
    fs = [
        v
        for v in homog
        if any(_apply_mask(phi_mats[p], v, nt) != 0 for p in pair_ids)
    ]
    if len(gs) != 1 or len(fs) != 1:
        raise ArithmeticError("characterization not satisfiable")
    to_set = lambda v: frozenset(tops[i] for i in range(nt) if (v >> i) & 1)
    return CanonicalPair(to_set(fs[0]), to_set(gs[0]), "g" if m.kind == "nonori" else "f")


# -- action verification -----------------------------------------------------------------


@dataclass
class ActionReport:
    name: str
    checks: list[tuple[str, bool, str]]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)


def verify_action(m: ModelComplex, name: str) -> ActionReport:
    """Anticommutator identity, square, and model-specific kernel checks.

    For the l_ori top-grading tables (A12, B23, A23, A13) the check is the
    additivity identities tying them to the derivative actions; for declared
    chain-level actions it is the loop/path identity plus the square.
    """
    if m.name == "l_ori" and name in L_ORI_TOP_ACTIONS:
        return ActionReport(name, _l_ori_action_checks(m))
    spec = m.actions[name]
    checks: list[tuple[str, bool, str]] = []
    amap = m.action_map(name)
    anti = amap.anticommutator()
    if spec.kind == "loop":
        checks.append(("loop anticommutator", not anti, _describe(anti)))
    else:
        want = _path_rhs(m.complex, spec)
        diff = dict(anti)
        for gid, p in want.items():
            key = (gid, gid)
            cur = diff.get(key)
            acc = p if cur is None else cur + p
            if acc:
                diff[key] = acc
            elif key in diff:
                del diff[key]
        checks.append(("path anticommutator", not diff, _describe(diff)))
    square = ChainMap(
        m.complex, m.complex,
        _compose_entries(amap, amap), dh=2 * spec.dh, check=False,
    )
    checks.append(("square vanishes", not square.entries, _describe(square.entries)))

    if m.name == "z11_2":
        checks.extend(_z11_checks(m))
    return ActionReport(name, checks)


def _compose_entries(a: ChainMap, b: ChainMap):
    from .complexes import mat_compose

    return mat_compose(a.entries, b.entries)


def _describe(entries) -> str:
    if not entries:
        return ""
    parts = ["%s->%s:%s" % (k[0], k[1], p) for k, p in sorted(entries.items(), key=lambda kv: kv[0])]
    return "; ".join(parts[:4])


def _path_rhs(cx: ChainComplex, spec: ActionSpec) -> dict[str, Poly]:
    assert spec.endpoints is not None
    u1, u2 = spec.endpoints
    p = Poly.var(cx.vars, u1, 2) + Poly.var(cx.vars, u2, 2)
    return {g.gid: p for g in cx.gens}


def _z11_checks(m: ModelComplex) -> list[tuple[str, bool, str]]:
    """Collapsed-ring identities: path form of the anticommutator and the
    kernel of each nontrivial loop action on the rank-2 alexander summand."""
    checks: list[tuple[str, bool, str]] = []
    cxc = collapse_all(m.complex, "u")
    kappa = m.action_map("A_kappa", cxc)
    lam = m.action_map("A_lambda", cxc)
    both = kappa + lam
    # with one u the two path endpoints carry the same square, so the path
    # right-hand side vanishes; the anticommutator must vanish entrywise too
    for label, amap in (("A_kappa", kappa), ("A_lambda", lam)):
        anti = amap.anticommutator()
        checks.append(
            ("path anticommutator (collapsed) " + label, not anti, _describe(anti))
        )
    tops, cycles = _top_cycles(cxc)
    nt = len(tops)
    alex_of = {g.gid: cxc.gen(g.gid).alex2 for g in cxc.gens}
    c0 = [
        v
        for v in cycles
        if {alex_of[tops[i]] for i in range(nt) if (v >> i) & 1} == {1}
    ]
    space0 = gf2.ColumnSpace()
    for v in c0:
        space0.add(v)
    checks.append(("C0 rank 2", space0.rank == 2, "rank %d" % space0.rank))
    kernels = []
    for label, amap in (("A_kappa", kappa), ("A_lambda", lam), ("A_kappa+A_lambda", both)):
        mat: dict[tuple[int, int], int] = {}
        pos = {g: i for i, g in enumerate(tops)}
        for (src, tgt), p in amap.entries.items():
            for mono in p.terms:
                if sum(mono) == 1 and src in pos and tgt in pos:
                    key = (pos[src], pos[tgt])
                    mat[key] = mat.get(key, 0) ^ 1
        cols = []
        basis = space0.basis
        vecs = [v for _, v, _ in basis]
        for v in vecs:
            cols.append(_apply_mask(mat, v, nt))
        kern = gf2.column_kernel(cols)
        kvecs = sorted(
            _combine(vecs, combo) for combo in kern
        )
        kernels.append((label, kvecs))
        checks.append(
            ("ker %s on C0 rank 1" % label, len(kvecs) == 1, "rank %d" % len(kvecs))
        )
    same = kernels[0][1] == kernels[1][1] == kernels[2][1]
    checks.append(("kernel independent of the loop", same, repr(kernels)))
    return checks


def _combine(vecs: list[int], combo: int) -> int:
    out = 0
    for i, v in enumerate(vecs):
        if (combo >> i) & 1:
            out ^= v
    return out


def _l_ori_action_checks(m: ModelComplex) -> list[tuple[str, bool, str]]:
    """Additivity identities tying the golden degree -1 tables together."""
    table = top_homology_table(m)
    assert table.canonical is not None
    names = sorted(table.canonical)
    vec_of = {nm: table.canonical[nm] for nm in names}
    nt = len(table.top_gens)
    space = gf2.ColumnSpace()
    order = []
    for nm in ("a", "b", "c", "d"):
        space.add(vec_of[nm])
        order.append(nm)

    def as_matrix(golden: dict[str, tuple[str, ...]]) -> dict[str, int]:
        out = {}
        for nm in order:
            img = 0
            for t in golden.get(nm, ()):
                img ^= vec_of[t]
            out[nm] = img
        return out

    def phi_as_matrix(pid: str) -> dict[str, int]:
        mats = _phi_matrix_on_tops(m.complex, pid, table.top_gens)
        return {nm: _apply_mask(mats, vec_of[nm], nt) for nm in order}

    a12 = as_matrix(L_ORI_TOP_ACTIONS["A12"])
    b23 = as_matrix(L_ORI_TOP_ACTIONS["B23"])
    a23 = as_matrix(L_ORI_TOP_ACTIONS["A23"])
    a13 = as_matrix(L_ORI_TOP_ACTIONS["A13"])
    phi2 = phi_as_matrix("2")
    phi3 = phi_as_matrix("3")
    ok1 = all(a23[nm] == b23[nm] ^ phi2[nm] ^ phi3[nm] for nm in order)
    ok2 = all(a13[nm] == a12[nm] ^ a23[nm] for nm in order)
    return [
        ("A23 = B23 + phi2 + phi3", ok1, ""),
        ("A13 = A12 + A23", ok2, ""),
    ]


# -- whole-suite runner ------------------------------------------------------------------


def run_model_suite() -> list[tuple[str, bool, str]]:
    """Every golden check over every model; (label, passed, detail) rows."""
    rows: list[tuple[str, bool, str]] = []

    def note(label: str, passed: bool, detail: str = "") -> None:
        rows.append((label, passed, detail))

    for name in MODEL_NAMES:
        m = build_model(name)
        bad = m.complex.verify_d2()
        note("%s d2=0" % name, not bad, _describe({(s, t): p for s, t, p in bad}))
        cxc = collapse_pairs(m.complex)
        note("%s d2=0 collapsed" % name, not cxc.verify_d2())

    m = build_model("k_nonori")
    hom = UHomology(collapse_pairs(m.complex))
    note("k_nonori homology free rank 2", hom.free_rank == 2 and not hom.torsion)
    cp = canonical_fg(m)
    note("k_nonori theta=g", cp.theta == "g" and cp.g == frozenset({"g"})
         and cp.f == frozenset({"f"}))
    note("k_nonori top pattern", top_homology_table(m).canonical is not None)

    m = build_model("k_ori")
    table = top_homology_table(m)
    note("k_ori top rank 2", len(table.vectors) == 2)
    cp = canonical_fg(m)
    note(
        "k_ori f=ay+bx g=ax+by theta=f",
        cp.theta == "f"
        and cp.f == frozenset({"ay", "bx"})
        and cp.g == frozenset({"ax", "by"}),
    )
    note("k_ori u injective on top", _u_injective_on_top(m))

    for name, rank in (("l_nonori", 4), ("l_ori", 4)):
        m = build_model(name)
        table = top_homology_table(m)
        note("%s top rank %d" % (name, rank), len(table.vectors) == rank)
        note("%s golden pattern" % name, table.canonical is not None)

    m = build_model("l_ori")
    hom = UHomology(collapse_all(m.complex))
    note("l_ori collapsed torsion-free", not hom.torsion and hom.free_rank == 16)
    for label, passed, detail in verify_action(m, "A23").checks:
        note("l_ori " + label, passed, detail)

    m = build_model("trefoil_cfl")
    hom = UHomology(m.complex)
    note(
        "trefoil_cfl homology F[u] + F[u]/u",
        hom.free_rank == 1 and hom.torsion == [1],
    )

    m = build_model("z11_2")
    for action in ("A_kappa", "A_lambda"):
        rep = verify_action(m, action)
        for label, passed, detail in rep.checks:
            note("z11_2 %s %s" % (action, label), passed, detail)
    return rows


def _u_injective_on_top(m: ModelComplex) -> bool:
    """No top class dies under multiplication by one u variable."""
    cx = collapse_pairs(m.complex)
    tops, cycles = _top_cycles(cx)
    top = max(g.h for g in cx.gens)
    var = cx.vars.names[0]
    below, index = _slice_basis(cx, top - 1)
    image_cols = []
    for g in cx.gens:
        for m0 in _monomials_of_drop(cx.vars, g.h - top):
            vec = 0
            for (s, t), p in cx.diff.items():
                if s != g.gid:
                    continue
                for mm in p.terms:
                    tot = tuple(a + b for a, b in zip(m0, mm))
                    vec ^= 1 << index[(t, tot)]
            image_cols.append(vec)
    space = gf2.ColumnSpace()
    for v in image_cols:
        space.add(v)
    vidx = cx.vars.index(var)
    for mask in cycles:
        vec = 0
        for i, gid in enumerate(tops):
            if (mask >> i) & 1:
                mono = [0] * cx.vars.n
                mono[vidx] = 1
                vec ^= 1 << index[(gid, tuple(mono))]
        if space.contains(vec):
            return False
    return True


def _slice_basis(cx: ChainComplex, d: int):
    slots = []
    for g in cx.gens:
        for m in _monomials_of_drop(cx.vars, g.h - d):
            slots.append((g.gid, m))
    slots.sort()
    return slots, {slot: i for i, slot in enumerate(slots)}
