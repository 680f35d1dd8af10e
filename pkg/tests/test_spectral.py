import random

import pytest

from skeinseq import khovanov as kh
from skeinseq.complexes import CONV_FLOER, ChainComplex, Generator, UHomology, homology_f2
from skeinseq.poly import HALF, Poly, VarSet
from skeinseq.spectral import (
    FilteredComplex,
    SpectralPage,
    analyze,
    check_constraints,
    converge,
    pages,
)

U1 = VarSet(("u",), (HALF,))

TREFOIL = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"


def planted(jump, power=1):
    """Two-generator filtered complex with one differential of given jump."""
    gens = [Generator("a", 0), Generator("b", power - 1)]
    diff = {("a", "b"): Poly.var(U1, "u", power)}
    cx = ChainComplex(U1, gens, diff, CONV_FLOER)
    return FilteredComplex(cx, {"a": 0, "b": jump})


def test_planted_jumps_recover_page_profile():
    for jump in (1, 2, 3, 4, 5):
        fc = planted(jump, power=jump)  # h-homogeneity ties power to h here
        data = analyze(fc)
        assert sorted({e.jump for e in data.events}) == [jump]
        page_list = pages(fc, jump + 1)
        tot = [sum(p.dims.values()) for p in page_list]
        # constant through page `jump`, then it drops
        assert all(t == tot[0] for t in tot[:jump])
        assert tot[jump] < tot[jump - 1]
        for r in range(1, jump + 1):
            ranks = page_list[r - 1].d_ranks
            assert (sum(ranks.values()) > 0) == (r == jump)
        rep = converge(fc)
        assert rep.ok


def test_spec_example_jump_three():
    # levels 0 and 3 with a u entry: d1 = d2 = 0, d3 nonzero, E4 = Einf
    gens = [Generator("a", 0), Generator("b", 0)]
    diff = {("a", "b"): Poly.var(U1, "u")}
    cx = ChainComplex(U1, gens, diff, CONV_FLOER)
    fc = FilteredComplex(cx, {"a": 0, "b": 3})
    data = analyze(fc)
    assert [e.jump for e in data.events][:1] == [3]
    assert all(e.jump == 3 for e in data.events)
    rep = converge(fc)
    assert rep.ok
    # the total homology is one u-torsion class: cross-check independently
    hom = UHomology(cx)
    assert hom.free_rank == 0 and hom.torsion == [1]


def test_zero_differential():
    cx = ChainComplex(U1, [Generator("a", 0), Generator("b", 0)], {}, CONV_FLOER)
    fc = FilteredComplex(cx, {"a": 0, "b": 2})
    data = analyze(fc)
    assert data.events == []
    assert converge(fc).ok
    page_list = pages(fc, 3)
    assert page_list[0].dims == page_list[2].dims


def test_filtration_violation():
    gens = [Generator("a", 0), Generator("b", 0)]
    diff = {("a", "b"): Poly.var(U1, "u")}
    cx = ChainComplex(U1, gens, diff, CONV_FLOER)
    with pytest.raises(ValueError):
        FilteredComplex(cx, {"a": 1, "b": 0})
    with pytest.raises(ValueError):
        FilteredComplex(cx, {"a": 0, "b": 0})


def test_cube_pages_collapse_at_e2():
    for text in (TREFOIL, "PD[X(1,3,2,4),X(3,1,4,2)]"):
        d = kh.parse_pd(text)
        for flavor in ("minus", "hat"):
            cc = kh.ckh(d, flavor)
            fc = FilteredComplex(cc.complex, cc.levels)
            data = analyze(fc)
            assert all(e.jump == 1 for e in data.events)
            # E2 = Einf: page dims stabilize from r = 2 on
            p = pages(fc, 4)
            assert p[1].dims == p[2].dims == p[3].dims
            assert converge(fc).ok
            cons = check_constraints(pages(fc, 3))
            assert cons.ok


def test_e2_equals_kh_minus():
    d = kh.mirror(kh.parse_pd(TREFOIL))
    cc = kh.ckh(d, "minus")
    fc = FilteredComplex(cc.complex, cc.levels)
    data = analyze(fc)
    hom = UHomology(cc.complex)
    # expand the decomposition into windowed slot dimensions per (h, q)
    floor = data.trusted_floor
    want = {}
    for s in hom.summands:
        h, q = s.grades
        j = 0
        while True:
            qq = q - 2 * j
            if qq < floor:
                break
            if s.order is not None and j >= s.order:
                break
            want[(h, qq)] = want.get((h, qq), 0) + 1
            j += 1
    assert data.page_dims(2) == dict(sorted(want.items()))


def test_e2_equals_kh_hat():
    d = kh.parse_pd(TREFOIL)
    cc = kh.ckh(d, "hat")
    fc = FilteredComplex(cc.complex, cc.levels)
    data = analyze(fc)
    want = {k: v for k, v in homology_f2(cc.complex).items() if v}
    assert data.page_dims(2) == want


def test_monotone_dims_and_equality_iff_zero_d():
    fc = planted(3, power=3)
    data = analyze(fc)
    prev = None
    for r in range(1, 6):
        tot = sum(data.page_dims(r).values())
        if prev is not None:
            assert tot <= prev
            if tot == prev:
                assert sum(data.d_ranks(r - 1).values()) == 0
        prev = tot


def test_page_output_invariant_under_permutation():
    d = kh.parse_pd(TREFOIL)
    cc = kh.ckh(d, "minus")
    order = [g.gid for g in cc.complex.gens]
    rng = random.Random(12)
    fc = FilteredComplex(cc.complex, cc.levels)
    base = analyze(fc)
    for _ in range(3):
        rng.shuffle(order)
        cx2 = cc.complex.with_generator_order(order)
        fc2 = FilteredComplex(cx2, cc.levels)
        data2 = analyze(fc2)
        for r in (1, 2, 3):
            assert data2.page_dims(r) == base.page_dims(r)
            assert data2.d_ranks(r) == base.d_ranks(r)


def test_constraints_flag_bad_pages():
    # slot bidegree of the forced third-page arrow: (q, h) = (4, 3)
    ok_page = SpectralPage(3, {}, {((0, -1), (3, 3)): 1})
    assert check_constraints([ok_page]).ok
    bad_bidegree = SpectralPage(3, {}, {((0, -1), (3, 4)): 1})
    assert not check_constraints([bad_bidegree]).ok
    nonzero_d2 = SpectralPage(2, {}, {((0, 0), (2, 2)): 1})
    assert not check_constraints([nonzero_d2]).ok
    all_zero = SpectralPage(2, {}, {})
    assert check_constraints([all_zero]).ok


def test_einf_free_rank_matches_module_decomposition():
    # a planted jump with torsion limit: the unpaired slot count in the
    # anchor slice equals the independent module decomposition
    fc = planted(3, power=1)
    data = analyze(fc)
    hom = UHomology(fc.base)
    assert hom.free_rank == 0 and hom.torsion == [1]
    einf_total_top = sum(
        dim for (grade, lvl), dim in data.einf_by_level().items()
        if grade[0] == max(g.h for g in fc.base.gens)
    )
    assert einf_total_top == 1
    assert converge(fc).ok
