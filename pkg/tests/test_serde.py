import json

import pytest

from skeinseq import khovanov as kh
from skeinseq.complexes import UHomology
from skeinseq.models import build_model
from skeinseq.serde import (
    dump_complex,
    load_complex,
    load_diagram,
    load_page_spec,
    load_target_spec,
)


def test_complex_roundtrip():
    m = build_model("l_nonori")
    doc = dump_complex(m.complex)
    cx, levels, actions = load_complex(doc)
    assert levels is None
    assert cx.diff == m.complex.diff
    assert [g.gid for g in cx.gens] == [g.gid for g in m.complex.gens]


def test_complex_roundtrip_with_levels():
    cc = kh.ckh(kh.parse_pd("PD[X(1,3,2,4),X(3,1,4,2)]"), "minus")
    doc = dump_complex(cc.complex, cc.levels)
    cx, levels, _ = load_complex(doc)
    assert levels == cc.levels
    assert UHomology(cx).by_grading() == UHomology(cc.complex).by_grading()


def test_json_serializable():
    m = build_model("z11_2")
    text = json.dumps(dump_complex(m.complex), sort_keys=True)
    cx, _, _ = load_complex(json.loads(text))
    assert cx.n == 4


def test_partial_filtration_rejected():
    doc = {
        "variables": [],
        "generators": [{"id": "a", "h": 0, "filtration": 0}, {"id": "b", "h": 0}],
        "diff": [],
    }
    with pytest.raises(ValueError):
        load_complex(doc)


def test_diagram_loader():
    d = load_diagram({"crossings": [[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]})
    assert d.components() == 1
    d = load_diagram({"free_loops": 2})
    assert d.components() == 0 or d.free_loops == 2


def test_spec_loaders():
    page = load_page_spec({"towers": [{"name": "x", "h": 0, "q": 0}]})
    assert page.towers[0].name == "x"
    target = load_target_spec(
        {"free_rank": 2, "torsion": [1], "basis": ["a"], "actions": {"A": [["a", "a"]]}}
    )
    assert target.free_rank == 2 and target.torsion == (1,)
    assert target.actions["A"] == {("a", "a"): 1}
