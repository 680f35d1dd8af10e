import random

from skeinseq import khovanov as kh
from skeinseq.complexes import UHomology
from skeinseq.infer import (
    PageSpec,
    Pattern,
    TargetSpec,
    Tower,
    enumerate_patterns,
    replay,
    resolve_filtration,
)
from skeinseq.spectral import SpectralPage, check_constraints

TREFOIL_PAGE = PageSpec(
    (Tower("z", 0, -1), Tower("y", 1, 1), Tower("x", 3, 5))
)
HOPF_PAGE = PageSpec((Tower("x", 0, 0), Tower("y", 2, 4)))


def test_trefoil_page_matches_computed_kh():
    """The frozen tower placements agree with a fresh cube computation."""
    d = kh.mirror(kh.parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"))
    hom = UHomology(kh.ckh(d, "minus").complex)
    got = sorted((h, q) for (h, q), (free, tors) in hom.by_grading() .items()
                 for _ in range(free))
    assert got == sorted((t.h, t.q) for t in TREFOIL_PAGE.towers)


def test_trefoil_unique_pattern():
    pats = enumerate_patterns(TREFOIL_PAGE, TargetSpec(free_rank=1, torsion=(1,)))
    assert len(pats) == 1
    assert pats[0].entries == ((3, "z", "x", 1),)


def test_hopf_collapses():
    pats = enumerate_patterns(HOPF_PAGE, TargetSpec(free_rank=2))
    assert pats == [Pattern(())]


def test_zero_pattern_when_target_equals_page():
    pats = enumerate_patterns(TREFOIL_PAGE, TargetSpec(free_rank=3))
    assert Pattern(()) in pats
    assert len(pats) == 1  # no admissible nonzero map reaches the same shape


def test_unreachable_target_is_empty():
    pats = enumerate_patterns(HOPF_PAGE, TargetSpec(free_rank=0, torsion=(2, 2)))
    assert pats == []


def test_patterns_pass_constraints():
    for page, target in (
        (TREFOIL_PAGE, TargetSpec(free_rank=1, torsion=(1,))),
        (HOPF_PAGE, TargetSpec(free_rank=2)),
    ):
        grade = {t.name: (t.h, t.q) for t in page.towers}
        for pat in enumerate_patterns(page, target):
            pages = {}
            for (k, src, tgt, a) in pat.entries:
                hs, qs = grade[src]
                ht, qt = grade[tgt]
                pages.setdefault(k, {})[((hs, qs), (ht, qt - 2 * a))] = 1
            page_objs = [SpectralPage(k, {}, d) for k, d in pages.items()]
            assert check_constraints(page_objs).ok


def test_permuted_pagespec_same_canonical_set():
    rng = random.Random(5)
    towers = list(TREFOIL_PAGE.towers)
    base = enumerate_patterns(TREFOIL_PAGE, TargetSpec(free_rank=1, torsion=(1,)))
    for _ in range(4):
        rng.shuffle(towers)
        pats = enumerate_patterns(PageSpec(tuple(towers)),
                                  TargetSpec(free_rank=1, torsion=(1,)))
        assert [sorted(p.entries) for p in pats] == [sorted(p.entries) for p in base]


def test_replay_survivors():
    pat = Pattern(((3, "z", "x", 1),))
    out = replay(TREFOIL_PAGE, pat)
    free = [t for t in out if t.free]
    tors = [t for t in out if not t.free]
    assert len(free) == 1 and free[0].name == "y"
    assert len(tors) == 1 and tors[0].order == 1 and (tors[0].h, tors[0].q) == (3, 5)


def test_trefoil_survivor_level():
    pat = Pattern(((3, "z", "x", 1),))
    rep = resolve_filtration(TREFOIL_PAGE, pat, TargetSpec(free_rank=1, torsion=(1,)))
    assert rep.status == "underdetermined"
    assert rep.survivors == (("y", 1, 1, 2),)  # two below the top of the page


def test_hopf_filtration_split():
    actions = {"U2": {("b", "b"): 1, ("bd", "b"): 1, ("bd", "bd"): 1}}
    target = TargetSpec(2, (), None, ("b", "bd"), actions)
    rep = resolve_filtration(HOPF_PAGE, Pattern(()), target)
    assert rep.status == "ok"
    assert rep.assignment == {"b": "x", "bd": "y"}
    assert rep.forced_below == (("bd", "b"),)


def test_identity_actions_underdetermined():
    actions = {"U2": {("b", "b"): 1, ("bd", "bd"): 1}}
    target = TargetSpec(2, (), None, ("b", "bd"), actions)
    rep = resolve_filtration(HOPF_PAGE, Pattern(()), target)
    assert rep.status == "underdetermined"


def test_inconsistent_actions_rejected():
    # an action needing both levels strictly deeper than each other
    actions = {"A": {("b", "bd"): 1, ("bd", "b"): 1}}
    target = TargetSpec(2, (), None, ("b", "bd"), actions)
    rep = resolve_filtration(HOPF_PAGE, Pattern(()), target)
    assert rep.status == "no assignment"


def test_anchor_matching():
    target = TargetSpec(free_rank=1, torsion=(1,),
                        anchors=((1, 1, None), (3, 5, 1)))
    pats = enumerate_patterns(TREFOIL_PAGE, target)
    assert len(pats) == 1
    bad = TargetSpec(free_rank=1, torsion=(1,), anchors=((0, 0, None), (5, 5, 1)))
    assert enumerate_patterns(TREFOIL_PAGE, bad) == []


def test_page_homology_with_torsion_cross_checked():
    """One differential into a torsion tower, checked against a hand value."""
    from skeinseq.infer import _page_homology

    summands = [Tower("z", 0, 0), Tower("x", 3, 7, 2)]
    # d3: z -> u x has bidegree (2k-2, k) = (4, 3): power (7 - 0 - 4)/2 > 0
    entries = [(0, 1, 1)]
    out = _page_homology(summands, entries)
    frees = [t for t in out if t.free]
    tors = [t for t in out if not t.free]
    # kernel of z -> u x modulo u^2 x is u*z; the x part becomes order one
    assert len(frees) == 1 and (frees[0].h, frees[0].q) == (0, -2)
    assert len(tors) == 1 and tors[0].order == 1 and (tors[0].h, tors[0].q) == (3, 7)


def test_page_homology_matches_complex_homology():
    """The infer page calculus agrees with the chain-level machinery."""
    import random as _random

    from skeinseq.complexes import CONV_KH, ChainComplex, Generator, UHomology
    from skeinseq.infer import _candidates, _page_homology, _well_defined_and_square_zero
    from skeinseq.poly import HALF, Poly, VarSet

    rng = _random.Random(1729)
    vs = VarSet(("u",), (HALF,))
    for _ in range(40):
        towers = []
        for i in range(rng.randrange(2, 5)):
            towers.append(Tower("t%d" % i, rng.randrange(4), rng.randrange(-2, 8)))
        k = rng.choice((1, 3))
        cands = _candidates(towers, k)
        if not cands:
            continue
        picked = [c for c in cands if rng.random() < 0.5]
        if not _well_defined_and_square_zero(towers, picked):
            continue
        out = _page_homology(towers, picked)
        # same data as a chain complex over u with the kh convention
        gens = [Generator(t.name, t.h, t.q) for t in towers]
        diff = {}
        for (i, j, a) in picked:
            diff[(towers[i].name, towers[j].name)] = Poly.var(vs, "u", a)
        # kh convention needs d to raise h by one; fake it with h = h/k scaling
        # only when k == 1; otherwise verify via the module route alone
        if k == 1 and all(
            towers[j].h - towers[i].h == 1 for (i, j, a) in picked
        ):
            cx = ChainComplex(vs, gens, diff, CONV_KH, check=True)
            hom = UHomology(cx)
            assert sorted((s.grades, s.order) for s in hom.decomposition.summands) == \
                sorted((( (t.h, t.q)), t.order) for t in out)
