"""Exact module arithmetic over the graded PID F2[u].

Everything here assumes homogeneous data: the grading gives u a nonzero
degree, so a homogeneous entry of a matrix over F2[u] is a single monomial
u^e.  A vector is stored as {slot: exponent}; adding u^s times another
vector either creates entries or cancels equal ones, and homogeneity
guarantees colliding exponents agree (asserted).
"""

from __future__ import annotations

from dataclasses import dataclass, field

MonoVec = dict[int, int]


def vec_add_shifted(dst: MonoVec, src: MonoVec, shift: int) -> None:
    """dst += u^shift * src in place (F2 cancellation)."""
    for slot, e in src.items():
        ee = e + shift
        old = dst.pop(slot, None)
        if old is None:
            dst[slot] = ee
        elif old != ee:
            raise ArithmeticError(
                "inhomogeneous collision at slot %d: u^%d vs u^%d" % (slot, old, ee)
            )


def reduce_columns(
    cols: list[MonoVec],
) -> tuple[dict[int, tuple[MonoVec, MonoVec]], list[MonoVec]]:
    """Column reduction over F2[u] with valuation-aware pivoting.

    Returns (pivots, kernel_logs): pivots maps a leading slot to the
    reduced column owning it (minimal valuation there) plus its combination
    log over original column indices; kernel_logs are the logs of columns
    that reduced to zero.  All operations are unimodular, so for
    homogeneous input the logs form a free basis of the kernel.
    """
    pivots: dict[int, tuple[MonoVec, MonoVec]] = {}
    kernel_logs: list[MonoVec] = []
    for j, col in enumerate(cols):
        vec = dict(col)
        log: MonoVec = {j: 0}
        while True:
            if not vec:
                kernel_logs.append(log)
                break
            lead = min(vec)
            e = vec[lead]
            hit = pivots.get(lead)
            if hit is None:
                pivots[lead] = (vec, log)
                break
            pvec, plog = hit
            pe = pvec[lead]
            if e >= pe:
                vec_add_shifted(vec, pvec, e - pe)
                vec_add_shifted(log, plog, e - pe)
            else:
                # the newcomer has smaller valuation: it takes the pivot slot
                # and the displaced column keeps reducing
                pivots[lead] = (vec, log)
                nvec, nlog = dict(pvec), dict(plog)
                vec_add_shifted(nvec, vec, pe - e)
                vec_add_shifted(nlog, log, pe - e)
                vec, log = nvec, nlog
    return pivots, kernel_logs


def echelonize(cols: list[MonoVec]) -> list[MonoVec]:
    """Reduce a list of homogeneous vectors to echelon form (distinct leads)."""
    pivots, kernel = reduce_columns(cols)
    if kernel:
        raise ArithmeticError("echelonize expected independent columns")
    out = [vec for _, (vec, _) in sorted(pivots.items())]
    return out


def solve_in_echelon(basis: list[MonoVec], target: MonoVec) -> MonoVec:
    """Coordinates of target in an echelon basis (raises if unsolvable)."""
    coords: MonoVec = {}
    vec = dict(target)
    by_lead = {min(b): (i, b) for i, b in enumerate(basis) if b}
    while vec:
        lead = min(vec)
        if lead not in by_lead:
            raise ArithmeticError("vector outside the span (slot %d)" % lead)
        i, b = by_lead[lead]
        shift = vec[lead] - b[lead]
        if shift < 0:
            raise ArithmeticError("vector not in the F2[u]-span (needs u^%d)" % shift)
        vec_add_shifted(vec, b, shift)
        if i in coords:
            raise ArithmeticError("echelon solve revisited column %d" % i)
        coords[i] = shift
    return coords


@dataclass(frozen=True)
class Summand:
    """One direct summand of a decomposed module."""

    order: int | None  # None = free, k >= 1 = F2[u]/(u^k)
    grades: tuple[int, ...]
    index: int  # row index in the transformed generator basis

    @property
    def free(self) -> bool:
        return self.order is None


@dataclass
class ModuleDecomposition:
    """Cokernel of a homogeneous presentation over F2[u]."""

    summands: list[Summand]
    transform: list[MonoVec] = field(repr=False, default_factory=list)
    inverse: list[MonoVec] = field(repr=False, default_factory=list)
    killed: set[int] = field(repr=False, default_factory=set)
    torsion_caps: dict[int, int] = field(repr=False, default_factory=dict)

    @property
    def free_rank(self) -> int:
        return sum(1 for s in self.summands if s.free)

    @property
    def torsion(self) -> list[int]:
        return sorted(s.order for s in self.summands if not s.free)

    def by_grading(self) -> dict[tuple[int, ...], tuple[int, list[int]]]:
        """grade -> (free rank, sorted torsion orders) anchored there."""
        out: dict[tuple[int, ...], tuple[int, list[int]]] = {}
        for s in self.summands:
            free, tors = out.get(s.grades, (0, []))
            if s.free:
                free += 1
            else:
                tors = tors + [s.order]
            out[s.grades] = (free, sorted(tors))
        return dict(sorted(out.items()))

    def window_dim(self, length: int) -> int:
        """Total F2-dimension in a u-power window of the given length."""
        return sum(
            length if s.free else min(s.order, length) for s in self.summands
        )

    def reduce_coords(self, coords: MonoVec) -> MonoVec:
        """Normal form of transformed coordinates modulo the relations."""
        out: MonoVec = {}
        for idx, e in coords.items():
            if idx in self.killed:
                continue
            cap = self.torsion_caps.get(idx)
            if cap is not None and e >= cap:
                continue
            out[idx] = e
        return out

    def coords_of(self, vec: MonoVec) -> MonoVec:
        """Class of a generator-space vector in the decomposed coordinates."""
        moved: MonoVec = {}
        for row, transform_row in enumerate(self.transform):
            acc: MonoVec = {}
            for col, te in transform_row.items():
                if col in vec:
                    vec_add_shifted(acc, {0: vec[col] + te}, 0)
            if acc:
                moved[row] = acc[0]
        return self.reduce_coords(moved)

    def summand_rep(self, s: Summand) -> MonoVec:
        """A vector in the original generator space representing the summand."""
        return {
            j: row[s.index] for j, row in enumerate(self.inverse) if s.index in row
        }


def _mat_row_op(mat: list[MonoVec], dst: int, src: int, shift: int) -> None:
    vec_add_shifted(mat[dst], mat[src], shift)


def _mat_col_op(mat: list[MonoVec], dst: int, src: int, shift: int) -> None:
    for row in mat:
        if src in row:
            e = row[src] + shift
            old = row.pop(dst, None)
            if old is None:
                row[dst] = e
            elif old != e:
                raise ArithmeticError("inhomogeneous collision in transform")


def module_decompose(
    n_gens: int,
    relations: list[MonoVec],
    grades: list[tuple[int, ...]],
    u_grade_step: tuple[int, ...] | None = None,
) -> ModuleDecomposition:
    """Smith-style decomposition of coker(relations) over F2[u].

    relations are columns {generator: exponent}; grades are per-generator
    grading tuples.  When u_grade_step is given, homogeneity of every
    relation column is checked against it (u lowers the grade by the step).
    """
    if u_grade_step is not None:
        for col in relations:
            seen = None
            for row, e in col.items():
                g = tuple(x - e * s for x, s in zip(grades[row], u_grade_step))
                if seen is None:
                    seen = g
                elif seen != g:
                    raise ValueError("non-homogeneous presentation column: %r" % (col,))

    mat: list[MonoVec] = [dict() for _ in range(n_gens)]
    for j, col in enumerate(relations):
        for row, e in col.items():
            mat[row][j] = e
    transform: list[MonoVec] = [{i: 0} for i in range(n_gens)]
    inverse: list[MonoVec] = [{i: 0} for i in range(n_gens)]
    live_rows = set(range(n_gens))
    live_cols = set(range(len(relations)))

    killed: set[int] = set()
    torsion_caps: dict[int, int] = {}

    while True:
        best: tuple[int, int, int] | None = None
        for r in sorted(live_rows):
            for c, e in mat[r].items():
                if c not in live_cols:
                    continue
                key = (e, r, c)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        e, r, c = best
        # clear the pivot column with row operations (tracked in transforms)
        for r2 in sorted(live_rows):
            if r2 == r:
                continue
            e2 = mat[r2].get(c)
            if e2 is None:
                continue
            shift = e2 - e
            _mat_row_op(mat, r2, r, shift)
            _mat_row_op(transform, r2, r, shift)
            _mat_col_op(inverse, r, r2, shift)
        # clear the pivot row with column operations (relations only)
        for c2 in sorted(live_cols):
            if c2 == c:
                continue
            e2 = mat[r].get(c2)
            if e2 is None:
                continue
            shift = e2 - e
            for row in sorted(live_rows):
                if c in mat[row]:
                    ee = mat[row][c] + shift
                    old = mat[row].pop(c2, None)
                    if old is None:
                        mat[row][c2] = ee
                    elif old != ee:
                        raise ArithmeticError("inhomogeneous collision")
        if e == 0:
            killed.add(r)
        else:
            torsion_caps[r] = e
        live_rows.discard(r)
        live_cols.discard(c)

    # the new generator r is the class of column r of P^-1 in the old basis
    grade_of_row: dict[int, tuple[int, ...]] = {}
    for r in range(n_gens):
        for j in range(n_gens):
            if r in inverse[j]:
                grade_of_row[r] = _shift_grade(grades[j], inverse[j][r], u_grade_step)
                break
        else:
            raise ArithmeticError("degenerate transform column %d" % r)

    summands: list[Summand] = []
    for r in range(n_gens):
        if r in killed:
            continue
        order = torsion_caps.get(r)
        summands.append(Summand(order, grade_of_row[r], r))
    summands.sort(key=lambda s: (s.grades, s.order is None, s.order or 0, s.index))
    return ModuleDecomposition(summands, transform, inverse, killed, torsion_caps)


def _shift_grade(
    grade: tuple[int, ...], exp: int, step: tuple[int, ...] | None
) -> tuple[int, ...]:
    if step is None or exp == 0:
        return grade
    return tuple(x - exp * s for x, s in zip(grade, step))
