"""Exhaustive enumeration of differential patterns on a given start page.

A page is a finite list of summands of a graded F2[X]-module (X acts with
(h, q) bidegree (0, -2)).  Differentials d_k must be X-equivariant, carry
bidegree (2k-2, k), vanish for even k, and square to zero; candidate
patterns are pushed through page homology until no bidegree admits a
differential, then compared against the requested limit shape.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .umod import MonoVec, echelonize, module_decompose, reduce_columns, solve_in_echelon


@dataclass(frozen=True)
class Tower:
    name: str
    h: int
    q: int
    order: int | None = None  # None = free tower, k = u-torsion of order k

    @property
    def free(self) -> bool:
        return self.order is None


@dataclass(frozen=True)
class PageSpec:
    towers: tuple[Tower, ...]

    def __post_init__(self) -> None:
        names = [t.name for t in self.towers]
        if len(names) != len(set(names)):
            raise ValueError("duplicate tower names")
        if any(not t.free for t in self.towers):
            raise ValueError("a start page consists of free towers")


@dataclass(frozen=True)
class TargetSpec:
    free_rank: int
    torsion: tuple[int, ...] = ()
    anchors: tuple[tuple[int, int, int | None], ...] | None = None  # (h, q, order)
    basis: tuple[str, ...] = ()
    actions: dict = field(default_factory=dict, hash=False, compare=False)


@dataclass(frozen=True)
class Pattern:
    entries: tuple[tuple[int, str, str, int], ...]  # (k, src, tgt, x power)

    def nonzero_pages(self) -> tuple[int, ...]:
        return tuple(sorted({k for (k, _, _, _) in self.entries}))


def _candidates(summands: list[Tower], k: int) -> list[tuple[int, int, int]]:
    """(src index, tgt index, x power) slots admissible for d_k."""
    out = []
    for i, s in enumerate(summands):
        for j, t in enumerate(summands):
            if t.h - s.h != k:
                continue
            num = t.q - s.q - (2 * k - 2)
            if num % 2 != 0:
                continue
            a = num // 2
            if a < 0:
                continue
            # u^{order_src} src = 0 must land on zero
            if s.order is not None and (t.order is None or s.order + a < t.order):
                continue
            out.append((i, j, a))
    out.sort(key=lambda c: (c[2], c[0], c[1]))
    return out


def _well_defined_and_square_zero(
    summands: list[Tower], entries: list[tuple[int, int, int]]
) -> bool:
    """d must kill relations and compose to zero modulo relations."""
    mat: dict[tuple[int, int], int] = {}
    for (i, j, a) in entries:
        if (i, j) in mat:
            return False
        mat[(i, j)] = a
    for (i, j), a in mat.items():
        oi = summands[i].order
        oj = summands[j].order
        if oi is not None and (oj is None or oi + a < oj):
            return False
    comp: dict[tuple[int, int], set[int]] = {}
    for (i, j), a in mat.items():
        for (j2, l), b in mat.items():
            if j2 != j:
                continue
            key = (i, l)
            power = a + b
            acc = comp.setdefault(key, set())
            if power in acc:
                acc.discard(power)
            else:
                acc.add(power)
    for (i, l), powers in comp.items():
        ol = summands[l].order
        for p in powers:
            if ol is None or p < ol:
                return False
    return True


def _page_homology(
    summands: list[Tower], entries: list[tuple[int, int, int]]
) -> list[Tower]:
    """Homology of the page with the chosen differential, again as towers."""
    n = len(summands)
    dcols: list[MonoVec] = [dict() for _ in range(n)]
    for (i, j, a) in entries:
        dcols[i][j] = a
    rel_cols: list[MonoVec] = []
    for j, t in enumerate(summands):
        if t.order is not None:
            rel_cols.append({j: t.order})
    # kernel of d on the presented module: v with d v in the relation span,
    # found as the first-block projection of ker[d | D]
    both = [dict(dcols[j]) for j in range(n)] + [dict(c) for c in rel_cols]
    _, logs = reduce_columns(both)
    xgens: list[MonoVec] = []
    for log in logs:
        proj = {slot: e for slot, e in log.items() if slot < n}
        if proj:
            xgens.append(proj)
    basis = echelonize(xgens) if xgens else []
    denoms: list[MonoVec] = []
    for j in range(n):
        if dcols[j]:
            denoms.append(dict(dcols[j]))
    denoms.extend(dict(c) for c in rel_cols)
    coords = [solve_in_echelon(basis, v) for v in denoms]
    grades = []
    for vec in basis:
        slot = min(vec)
        e = vec[slot]
        t = summands[slot]
        grades.append((t.h, t.q - 2 * e))
    dec = module_decompose(len(basis), coords, grades, (0, 2))
    out = []
    for idx, s in enumerate(dec.summands):
        h, q = s.grades
        out.append(Tower("p%d@%d,%d" % (idx, h, q), h, q, s.order))
    return out


def _window_free_rank(summands: list[Tower]) -> int:
    return sum(1 for t in summands if t.free)


def _normalized_shape(summands: list[Tower]) -> tuple:
    if not summands:
        return ()
    h0 = min(t.h for t in summands)
    q0 = min(t.q for t in summands)
    return tuple(
        sorted((t.h - h0, t.q - q0, t.order if t.order is not None else -1)
               for t in summands)
    )


def _matches_target(summands: list[Tower], target: TargetSpec) -> bool:
    free = [t for t in summands if t.free]
    tors = sorted(t.order for t in summands if not t.free)
    if len(free) != target.free_rank or tors != sorted(target.torsion):
        return False
    if target.anchors is not None:
        want = tuple(
            sorted(
                (h - min(a[0] for a in target.anchors),
                 q - min(a[1] for a in target.anchors),
                 o if o is not None else -1)
                for (h, q, o) in target.anchors
            )
        )
        if _normalized_shape(summands) != want:
            return False
    return True


def enumerate_patterns(e2: PageSpec, target: TargetSpec, max_candidates: int = 18) -> list[Pattern]:
    """All admissible differential patterns reaching the target, canonicalized.

    Unreachable targets give an empty list.  Patterns are identified up to
    grading-preserving permutations of equal-bigrading towers.
    """
    if len(e2.towers) > 12:
        raise ValueError("start page too large for exhaustive search")
    start = list(e2.towers)
    results: list[tuple[tuple, Pattern]] = []
    span = max((t.h for t in start), default=0) - min((t.h for t in start), default=0)

    def rec(summands: list[Tower], k: int, chosen: list[tuple[int, str, str, int]]):
        if _window_free_rank(summands) < target.free_rank:
            return
        if k > max(span, 1):
            if _matches_target(summands, target):
                pat = Pattern(tuple(chosen))
                results.append((_canonical_key(e2, pat), pat))
            return
        if k % 2 == 0:
            rec(summands, k + 1, chosen)
            return
        cands = _candidates(summands, k)
        if len(cands) > max_candidates:
            raise ValueError("too many candidate entries on page %d" % k)
        for mask in range(1 << len(cands)):
            entries = [cands[i] for i in range(len(cands)) if (mask >> i) & 1]
            if not _well_defined_and_square_zero(summands, entries):
                continue
            if entries:
                nxt = _page_homology(summands, entries)
                recorded = chosen + [
                    (k, summands[i].name, summands[j].name, a)
                    for (i, j, a) in entries
                ]
            else:
                nxt = summands
                recorded = chosen
            rec(nxt, k + 1, recorded)

    rec(start, 2, [])
    seen: dict[tuple, Pattern] = {}
    for key, pat in sorted(results, key=lambda kp: kp[0]):
        if key not in seen:
            seen[key] = pat
    return list(seen.values())


def _canonical_key(e2: PageSpec, pat: Pattern) -> tuple:
    """Pattern fingerprint invariant under equal-grade tower permutations."""
    grade_of = {t.name: (t.h, t.q) for t in e2.towers}
    rows = []
    for (k, src, tgt, a) in pat.entries:
        gs = grade_of.get(src, src)
        gt = grade_of.get(tgt, tgt)
        rows.append((k, gs, gt, a))
    return tuple(sorted(map(repr, rows)))


# -- filtration resolution -------------------------------------------------------


@dataclass
class FiltrationReport:
    status: str  # "ok", "underdetermined", or "no assignment"
    survivors: tuple[tuple[str, int, int, int], ...]  # (name, h, q, level from top)
    assignment: dict[str, str] = field(default_factory=dict)
    forced_below: tuple[tuple[str, str], ...] = ()  # (deeper, shallower)


def replay(e2: PageSpec, pattern: Pattern) -> list[Tower]:
    """Survivor towers after running the pattern's differentials."""
    summands = list(e2.towers)
    index = {t.name: i for i, t in enumerate(summands)}
    by_page: dict[int, list[tuple[int, int, int]]] = {}
    for (k, src, tgt, a) in pattern.entries:
        by_page.setdefault(k, []).append((index[src], index[tgt], a))
    for k in sorted(by_page):
        summands2 = _page_homology(summands, by_page[k])
        # keep original names where a summand survives at the same grade
        used = set()
        renamed = []
        for t in summands2:
            match = None
            for old in summands:
                if old.name in used:
                    continue
                if (old.h, old.q) == (t.h, t.q) and (old.order == t.order or old.free and t.free):
                    match = old.name
                    break
            if match is not None:
                used.add(match)
                renamed.append(Tower(match, t.h, t.q, t.order))
            else:
                renamed.append(t)
        summands = renamed
        index = {t.name: i for i, t in enumerate(summands)}
    return summands


def resolve_filtration(
    e2: PageSpec, pattern: Pattern, target: TargetSpec
) -> FiltrationReport:
    """Match limit-module action matrices against survivor levels.

    The cube filtration level of a tower is its h anchor.  An action entry
    into a survivor whose level is not strictly deeper than the source dies
    in the associated graded, so off-diagonal target entries force strict
    level inequalities; assignments violating them are discarded.
    """
    survivors = replay(e2, pattern)
    free = [t for t in survivors if t.free]
    top = max((t.h for t in e2.towers), default=0)
    rows = tuple(
        (t.name, t.h, t.q, top - t.h) for t in sorted(free, key=lambda t: (t.h, t.q))
    )
    if not target.actions or not target.basis:
        return FiltrationReport("underdetermined", rows)
    names = list(target.basis)
    if len(names) != len(free):
        return FiltrationReport("no assignment", rows)
    valid: list[dict[str, str]] = []
    forced_sets = []
    for perm in itertools.permutations(free):
        assign = dict(zip(names, perm))
        ok = True
        forced = []
        for matrix in target.actions.values():
            for (row, col), coeff in matrix.items():
                if not coeff:
                    continue
                lr = assign[row].h
                lc = assign[col].h
                if row == col:
                    continue
                if lr <= lc:
                    ok = False
                    break
                forced.append((row, col))
            if not ok:
                break
        if ok:
            valid.append(assign)
            forced_sets.append(tuple(sorted(set(forced))))
    if not valid:
        return FiltrationReport("no assignment", rows)
    splits = {
        tuple(sorted((nm, assign[nm].h) for nm in names)) for assign in valid
    }
    if len(splits) > 1 or not forced_sets[0]:
        return FiltrationReport("underdetermined", rows)
    assign = valid[0]
    return FiltrationReport(
        "ok",
        rows,
        {nm: assign[nm].name for nm in names},
        forced_sets[0],
    )
