"""Bigraded chain complexes over F2[u1..um] and chain maps between them.

Two grading conventions coexist:

* ``floer``: the differential drops h by 1 and each half-unit variable
  power also drops h by 1; generators may carry a mod-2 alexander grading
  that the differential preserves (variables flip it per half power).
* ``kh``: the differential raises h by 1 and preserves q; a half-unit
  variable power drops q by 2 (a full unit by 4) and leaves h alone.

Complexes are immutable after construction and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from . import gf2
from .poly import Poly, VarSet
from .umod import (
    MonoVec,
    echelonize,
    module_decompose,
    reduce_columns,
    solve_in_echelon,
    vec_add_shifted,
)

CONV_FLOER = "floer"
CONV_KH = "kh"


@dataclass(frozen=True)
class Generator:
    gid: str
    h: int
    q: int | None = None
    alex2: int | None = None


MatrixEntries = Mapping[tuple[str, str], Poly]


class ChainComplex:
    """Finitely generated complex with polynomial differential entries."""

    def __init__(
        self,
        vars: VarSet,
        gens: Sequence[Generator],
        diff: MatrixEntries,
        convention: str = CONV_FLOER,
        pairs: Mapping[str, tuple[str, ...]] | None = None,
        check: bool = True,
    ) -> None:
        if convention not in (CONV_FLOER, CONV_KH):
            raise ValueError("unknown convention %r" % convention)
        self.vars = vars
        self.gens = tuple(gens)
        self.convention = convention
        self.order = {g.gid: i for i, g in enumerate(self.gens)}
        if len(self.order) != len(self.gens):
            raise ValueError("duplicate generator ids")
        self.diff = {k: p for k, p in diff.items() if p}
        self.pairs = dict(pairs or {})
        for pid, names in self.pairs.items():
            for n in names:
                vars.index(n)
        if check:
            self._check_homogeneous()

    # -- basic access ---------------------------------------------------------

    def gen(self, gid: str) -> Generator:
        return self.gens[self.order[gid]]

    @property
    def n(self) -> int:
        return len(self.gens)

    def grade(self, gid: str) -> tuple[int, ...]:
        g = self.gen(gid)
        if self.convention == CONV_KH:
            return (g.h, g.q)
        return (g.h,) if g.alex2 is None else (g.h, g.alex2)

    def ugrade(self, gid: str) -> tuple[int, ...]:
        """Integer grading tuple that u shifts linearly (no mod-2 part)."""
        g = self.gen(gid)
        if self.convention == CONV_KH:
            return (g.h, g.q)
        return (g.h,)

    def ustep(self) -> tuple[int, ...]:
        """Per-power grade drop of the unique variable."""
        if self.vars.n != 1:
            raise ValueError("ustep needs a one-variable complex")
        unit = self.vars.units[0]
        if self.convention == CONV_KH:
            return (0, 2 * unit)
        return (unit,)

    def columns(self) -> dict[str, dict[str, Poly]]:
        out: dict[str, dict[str, Poly]] = {g.gid: {} for g in self.gens}
        for (src, tgt), p in self.diff.items():
            out[src][tgt] = p
        return out

    # -- validation -----------------------------------------------------------

    def _entry_ok(self, src: Generator, tgt: Generator, p: Poly, dh: int,
                  dq: int | None = 0, dalex: int = 0) -> bool:
        for m in p.terms:
            if self.convention == CONV_FLOER:
                if tgt.h - self.vars.h_drop(m) != src.h + dh:
                    return False
                if src.alex2 is not None and tgt.alex2 is not None:
                    if (tgt.alex2 + self.vars.alex2(m)) % 2 != (src.alex2 + dalex) % 2:
                        return False
            else:
                if tgt.h != src.h + dh:
                    return False
                if src.q is None or tgt.q is None:
                    return False
                want = src.q if dq is None else src.q + dq
                if tgt.q - self.vars.q_drop(m) != want:
                    return False
        return True

    def _check_homogeneous(self) -> None:
        dh = -1 if self.convention == CONV_FLOER else 1
        for (src, tgt), p in self.diff.items():
            if src not in self.order or tgt not in self.order:
                raise ValueError("entry on unknown generator (%s,%s)" % (src, tgt))
            if not self._entry_ok(self.gen(src), self.gen(tgt), p, dh):
                raise ValueError(
                    "inhomogeneous differential entry %s -> %s: %s" % (src, tgt, p)
                )

    def verify_d2(self) -> list[tuple[str, str, Poly]]:
        """Nonzero entries of the squared differential (empty means pass)."""
        cols = self.columns()
        bad: list[tuple[str, str, Poly]] = []
        for src in (g.gid for g in self.gens):
            acc: dict[str, Poly] = {}
            for mid, p in cols[src].items():
                for tgt, p2 in cols[mid].items():
                    prod = p * p2
                    if not prod:
                        continue
                    cur = acc.get(tgt)
                    acc[tgt] = prod if cur is None else cur + prod
            for tgt, p in sorted(acc.items()):
                if p:
                    bad.append((src, tgt, p))
        return bad

    # -- rebuilding helpers -----------------------------------------------------

    def with_generator_order(self, new_order: Sequence[str]) -> "ChainComplex":
        if sorted(new_order) != sorted(self.order):
            raise ValueError("new order must be a permutation of generator ids")
        gens = [self.gen(g) for g in new_order]
        return ChainComplex(self.vars, gens, self.diff, self.convention, self.pairs,
                            check=False)


# -- matrix helpers over Poly -------------------------------------------------


def mat_compose(
    second: MatrixEntries, first: MatrixEntries
) -> dict[tuple[str, str], Poly]:
    """Matrix of (second after first); entries map src -> sum coeff * tgt."""
    by_src: dict[str, dict[str, Poly]] = {}
    for (src, mid), p in first.items():
        by_src.setdefault(src, {})[mid] = p
    by_mid: dict[str, dict[str, Poly]] = {}
    for (mid, tgt), p in second.items():
        by_mid.setdefault(mid, {})[tgt] = p
    out: dict[tuple[str, str], Poly] = {}
    for src, mids in by_src.items():
        for mid, p1 in mids.items():
            for tgt, p2 in by_mid.get(mid, {}).items():
                prod = p1 * p2
                if not prod:
                    continue
                key = (src, tgt)
                cur = out.get(key)
                acc = prod if cur is None else cur + prod
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
    return out


def mat_add(a: MatrixEntries, b: MatrixEntries) -> dict[tuple[str, str], Poly]:
    out: dict[tuple[str, str], Poly] = dict(a)
    for key, p in b.items():
        cur = out.get(key)
        acc = p if cur is None else cur + p
        if acc:
            out[key] = acc
        elif key in out:
            del out[key]
    return out


class ChainMap:
    """A graded map between complexes over the same variable universe."""

    def __init__(
        self,
        source: ChainComplex,
        target: ChainComplex,
        entries: MatrixEntries,
        dh: int = 0,
        dq: int | None = None,
        dalex: int = 0,
        name: str = "",
        check: bool = True,
    ) -> None:
        if source.vars != target.vars:
            raise ValueError("chain map across different variable universes")
        self.source = source
        self.target = target
        self.entries = {k: p for k, p in entries.items() if p}
        self.dh = dh
        self.dq = dq
        self.dalex = dalex
        self.name = name
        if check:
            for (src, tgt), p in self.entries.items():
                ok = source._entry_ok(
                    source.gen(src), target.gen(tgt), p, dh,
                    dq if source.convention == CONV_KH else 0,
                    dalex,
                )
                if not ok:
                    raise ValueError(
                        "map entry %s -> %s off degree (%s)" % (src, tgt, p)
                    )

    def anticommutator(self) -> dict[tuple[str, str], Poly]:
        """M d + d M for an endomap-shaped pair of complexes."""
        md = mat_compose(self.entries, self.source.diff)
        dm = mat_compose(self.target.diff, self.entries)
        return mat_add(md, dm)

    def is_chain_map(self) -> bool:
        return not self.anticommutator()

    def __add__(self, other: "ChainMap") -> "ChainMap":
        if (self.source, self.target, self.dh) != (other.source, other.target, other.dh):
            raise ValueError("incompatible chain map sum")
        return ChainMap(
            self.source, self.target, mat_add(self.entries, other.entries),
            self.dh, self.dq, self.dalex, check=False,
        )


# -- constructions --------------------------------------------------------------


def tensor(c1: ChainComplex, c2: ChainComplex, sep: str = "*") -> ChainComplex:
    """Tensor product over the shared ground ring; gradings add."""
    if c1.vars != c2.vars:
        raise ValueError("tensor factors over different variable universes")
    if c1.convention != c2.convention:
        raise ValueError("tensor factors with different conventions")
    gens: list[Generator] = []
    for g1 in c1.gens:
        for g2 in c2.gens:
            q = None if g1.q is None or g2.q is None else g1.q + g2.q
            a = (
                None
                if g1.alex2 is None or g2.alex2 is None
                else (g1.alex2 + g2.alex2) % 2
            )
            gens.append(Generator(g1.gid + sep + g2.gid, g1.h + g2.h, q, a))
    diff: dict[tuple[str, str], Poly] = {}
    for (src, tgt), p in c1.diff.items():
        for g2 in c2.gens:
            diff[(src + sep + g2.gid, tgt + sep + g2.gid)] = p
    for (src, tgt), p in c2.diff.items():
        for g1 in c1.gens:
            key = (g1.gid + sep + src, g1.gid + sep + tgt)
            cur = diff.get(key)
            diff[key] = p if cur is None else cur + p
    pairs = dict(c1.pairs)
    pairs.update(c2.pairs)
    return ChainComplex(c1.vars, gens, diff, c1.convention, pairs, check=False)


def substitute(
    cx: ChainComplex, assignment: Mapping[str, str]
) -> ChainComplex:
    """Entrywise variable-for-variable substitution."""
    new_names: list[str] = []
    new_units: list[int] = []
    for name, unit in zip(cx.vars.names, cx.vars.units):
        new = assignment.get(name, name)
        if new not in new_names:
            new_names.append(new)
            new_units.append(unit)
        else:
            if new_units[new_names.index(new)] != unit:
                raise ValueError("unit mismatch for substitution target %r" % new)
    target = VarSet(tuple(new_names), tuple(new_units))
    diff = {
        key: p.map_vars(target, dict(assignment)) for key, p in cx.diff.items()
    }
    pairs: dict[str, tuple[str, ...]] = {}
    for pid, names in cx.pairs.items():
        mapped: list[str] = []
        for n in names:
            nn = assignment.get(n, n)
            if nn not in mapped:
                mapped.append(nn)
        pairs[pid] = tuple(mapped)
    return ChainComplex(target, cx.gens, diff, cx.convention, pairs)


def collapse_pairs(cx: ChainComplex, prefix: str = "u") -> ChainComplex:
    """Identify the two variables of every declared basepoint pair."""
    assignment: dict[str, str] = {}
    for pid in sorted(cx.pairs):
        new = prefix + pid
        for n in cx.pairs[pid]:
            assignment[n] = new
    return substitute(cx, assignment)


def collapse_all(cx: ChainComplex, name: str = "u") -> ChainComplex:
    """Send every variable to a single one (units must agree)."""
    units = set(cx.vars.units)
    if len(units) > 1:
        raise ValueError("cannot collapse mixed units to one variable")
    assignment = {n: name for n in cx.vars.names}
    return substitute(cx, assignment)


def kill_vars(cx: ChainComplex) -> ChainComplex:
    """Quotient by every variable: keep only constant monomial terms."""
    target = VarSet((), ())
    zero_mono = ()
    diff: dict[tuple[str, str], Poly] = {}
    for key, p in cx.diff.items():
        keep = frozenset(
            zero_mono for m in p.terms if all(e == 0 for e in m)
        )
        if keep:
            diff[key] = Poly(target, keep)
    return ChainComplex(target, cx.gens, diff, cx.convention, {})


def phi_action(cx: ChainComplex, pair: str, side: str = "z") -> ChainMap:
    """Formal-derivative action of a basepoint pair on the complex."""
    if pair not in cx.pairs:
        raise KeyError("unknown basepoint pair %r" % pair)
    names = cx.pairs[pair]
    if side == "z":
        var = names[0]
    elif side == "w":
        var = names[-1]
    else:
        raise ValueError("side must be 'z' or 'w'")
    entries = {}
    for key, p in cx.diff.items():
        d = p.derivative(var)
        if d:
            entries[key] = d
    return ChainMap(cx, cx, entries, dh=0, dalex=1, name="phi_%s_%s" % (pair, side))


# -- homology -------------------------------------------------------------------


def homology_f2(cx: ChainComplex) -> dict[tuple[int, ...], int]:
    """Dimension of homology per grading for variable-free complexes."""
    if cx.vars.n != 0:
        raise ValueError("plain F2 homology needs a variable-free complex")
    groups: dict[tuple[int, ...], list[str]] = {}
    for g in cx.gens:
        groups.setdefault(cx.grade(g.gid), []).append(g.gid)
    cols_by_src: dict[str, int] = {g.gid: 0 for g in cx.gens}
    for (s, t), p in cx.diff.items():
        if p:
            cols_by_src[s] |= 1 << cx.order[t]
    rank_out: dict[tuple[int, ...], int] = {}
    target_of: dict[tuple[int, ...], tuple[int, ...]] = {}
    for grade, grp in groups.items():
        rank_out[grade] = gf2.matrix_rank([cols_by_src[g] for g in grp], cx.n)
    for (s, t), p in cx.diff.items():
        if p:
            target_of[cx.grade(s)] = cx.grade(t)
    dims: dict[tuple[int, ...], int] = {}
    for grade, grp in groups.items():
        into = sum(
            rank_out[src] for src, tgt in target_of.items() if tgt == grade
        )
        dims[grade] = len(grp) - rank_out[grade] - into
    return dict(sorted(dims.items()))


class UHomology:
    """Homology of a one-variable complex as a decomposed F2[u]-module."""

    def __init__(self, cx: ChainComplex) -> None:
        if cx.vars.n != 1:
            raise ValueError("u-homology needs a one-variable complex")
        self.cx = cx
        cols: list[MonoVec] = []
        for g in cx.gens:
            col: MonoVec = {}
            for (s, t), p in cx.diff.items():
                if s != g.gid:
                    continue
                if not p.is_monomial():
                    raise ValueError("inhomogeneous entry %s -> %s" % (s, t))
                col[cx.order[t]] = p.single_exponent()
            cols.append(col)
        pivots, kernel_logs = reduce_columns(cols)
        self.kernel = echelonize(kernel_logs) if kernel_logs else []
        image = [dict(vec) for _, (vec, _) in sorted(pivots.items())]
        rel_cols = [solve_in_echelon(self.kernel, v) for v in image]
        step = cx.ustep()
        grades = [self._vec_grade(k) for k in self.kernel]
        self.decomposition = module_decompose(
            len(self.kernel), rel_cols, grades, step
        )
        self._positions = {
            s.index: i for i, s in enumerate(self.decomposition.summands)
        }

    def _vec_grade(self, vec: MonoVec) -> tuple[int, ...]:
        slot = min(vec)
        e = vec[slot]
        base = self.cx.ugrade(self.cx.gens[slot].gid)
        return tuple(x - e * s for x, s in zip(base, self.cx.ustep()))

    @property
    def summands(self):
        return self.decomposition.summands

    def by_grading(self):
        return self.decomposition.by_grading()

    @property
    def free_rank(self) -> int:
        return self.decomposition.free_rank

    @property
    def torsion(self) -> list[int]:
        return self.decomposition.torsion

    def cycle_rep(self, position: int) -> MonoVec:
        """Representative cycle (generator-space vector) of a summand."""
        s = self.decomposition.summands[position]
        kvec = self.decomposition.summand_rep(s)
        out: MonoVec = {}
        for kidx, e in kvec.items():
            vec_add_shifted(out, self.kernel[kidx], e)
        return out

    def class_coords(self, vec: MonoVec) -> dict[int, int]:
        """Coordinates of a cycle over the summand positions."""
        kcoords = solve_in_echelon(self.kernel, vec)
        raw = self.decomposition.coords_of(kcoords)
        return {self._positions[idx]: e for idx, e in raw.items()}

    def induced_matrix(self, cmap: ChainMap) -> dict[tuple[int, int], int]:
        """Matrix u^e entries of an endomorphism on the summand basis."""
        if cmap.source is not self.cx or cmap.target is not self.cx:
            raise ValueError("map is not an endomorphism of this complex")
        if not cmap.is_chain_map():
            raise ValueError("not a chain map")
        cols: dict[str, MonoVec] = {}
        for (s, t), p in cmap.entries.items():
            if not p.is_monomial():
                raise ValueError("inhomogeneous map entry")
            cols.setdefault(s, {})[self.cx.order[t]] = p.single_exponent()
        out: dict[tuple[int, int], int] = {}
        for pos in range(len(self.summands)):
            rep = self.cycle_rep(pos)
            img: MonoVec = {}
            for slot, e in rep.items():
                gid = self.cx.gens[slot].gid
                for tgt, ee in cols.get(gid, {}).items():
                    vec_add_shifted(img, {tgt: ee + e}, 0)
            if not img:
                continue
            for pos2, e in self.class_coords(img).items():
                out[(pos, pos2)] = e
        return out


def homology(cx: ChainComplex, ring: str):
    """Spec-level homology dispatcher: ring is 'f2' or 'u'."""
    if ring == "f2":
        return homology_f2(cx)
    if ring == "u":
        hom = UHomology(cx)
        check_truncation_stability(hom)
        return hom
    raise ValueError("ring must be 'f2' or 'u'")


def induced_on_homology(cmap: ChainMap) -> dict[tuple[int, int], int]:
    """Matrix of a chain map on u-homology summands (rejects non-chain maps)."""
    hom = UHomology(cmap.source)
    return hom.induced_matrix(cmap)


# -- graded F2 slice dimensions (works for any number of variables) -------------


def _monomials_of_drop(vs: VarSet, drop: int) -> list[tuple[int, ...]]:
    """All exponent vectors whose graded drop equals the given value."""
    out: list[tuple[int, ...]] = []

    def rec(i: int, left: int, acc: list[int]) -> None:
        if i == vs.n:
            if left == 0:
                out.append(tuple(acc))
            return
        unit = vs.units[i]
        e = 0
        while e * unit <= left:
            rec(i + 1, left - e * unit, acc + [e])
            e += 1

    if drop >= 0:
        rec(0, drop, [])
    return out


def slice_dims(cx: ChainComplex, h_from: int, h_to: int) -> dict[int, int]:
    """F2 dimensions of homology per h-slice for floer-convention complexes."""
    if cx.convention != CONV_FLOER:
        raise ValueError("slice_dims expects the floer convention")
    lo, hi = min(h_from, h_to), max(h_from, h_to)
    slots: dict[int, list[tuple[str, tuple[int, ...]]]] = {}
    for d in range(lo - 1, hi + 2):
        lst: list[tuple[str, tuple[int, ...]]] = []
        for g in cx.gens:
            for m in _monomials_of_drop(cx.vars, g.h - d):
                lst.append((g.gid, m))
        slots[d] = sorted(lst)
    index = {
        d: {slot: i for i, slot in enumerate(lst)} for d, lst in slots.items()
    }
    ranks: dict[int, int] = {}
    for d in range(lo, hi + 2):
        if d not in slots or (d - 1) not in slots:
            continue
        cols = []
        tgt_index = index[d - 1]
        for gid, m in slots[d]:
            vec = 0
            for (s, t), p in cx.diff.items():
                if s != gid:
                    continue
                for mm in p.terms:
                    tot = tuple(a + b for a, b in zip(m, mm))
                    key = (t, tot)
                    if key in tgt_index:
                        vec ^= 1 << tgt_index[key]
            cols.append(vec)
        ranks[d] = gf2.matrix_rank(cols, len(slots[d - 1]))
    dims: dict[int, int] = {}
    for d in range(lo, hi + 1):
        dims[d] = len(slots[d]) - ranks.get(d, 0) - ranks.get(d + 1, 0)
    return dims


def check_truncation_stability(hom: UHomology) -> None:
    """Compare the exact decomposition with brute-force slice dimensions.

    Dimensions per slice are recomputed over two window depths; both must
    match the prediction from the decomposition.
    """
    cx = hom.cx
    if not cx.gens:
        return
    if cx.convention == CONV_KH:
        return  # slices run along q; covered by the spectral cross-checks
    hs = [g.h for g in cx.gens]
    span = max(hs) - min(hs)
    unit = cx.vars.units[0]
    for extra in (2, 4):
        depth = span + extra * unit
        lo, hi = min(hs) - depth, max(hs)
        dims = slice_dims(cx, lo, hi)
        for d in range(lo, hi + 1):
            want = 0
            for s in hom.summands:
                anchor = s.grades[0]
                if s.free:
                    if anchor >= d and (anchor - d) % unit == 0:
                        want += 1
                else:
                    if anchor >= d > anchor - s.order * unit and (anchor - d) % unit == 0:
                        want += 1
            if dims.get(d, 0) != want:
                raise ArithmeticError(
                    "truncated slice dimension mismatch at h=%d: %d vs %d"
                    % (d, dims.get(d, 0), want)
                )
