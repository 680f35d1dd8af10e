"""Cube-of-resolutions chain complexes from planar diagrams.

PD crossings are 4-tuples of arc ids read cyclically; the 0-smoothing of
X(a,b,c,d) joins (a,d) and (b,c), the 1-smoothing joins (a,b) and (c,d).
The coefficient algebra assigns each resolved circle the rank-2 module
with labels 1, x and relation x^2 = U; the minus flavor is presented as a
free module over F2[u] with u the label action of the marked point (so
U = u^2), the hat flavor quotients by U, the reduced one by u.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .complexes import CONV_KH, ChainComplex, ChainMap, Generator
from .poly import HALF, Poly, VarSet

Crossing = tuple[int, int, int, int]

FLAVORS = ("minus", "hat", "reduced")


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[Crossing, ...]
    free_loops: int = 0
    basepoints: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        counts: dict[int, int] = {}
        for cr in self.crossings:
            if len(cr) != 4:
                raise ValueError("crossing needs 4 arcs: %r" % (cr,))
            for a in cr:
                counts[a] = counts.get(a, 0) + 1
        bad = {a: c for a, c in counts.items() if c != 2}
        if bad:
            raise ValueError("arcs must appear exactly twice: %r" % (bad,))
        if self.free_loops < 0:
            raise ValueError("negative free loop count")
        if not self.crossings and not self.free_loops:
            raise ValueError("no crossings (use the unknot token 'U')")
        for name, arc in self.basepoints:
            if arc not in counts and not self._is_loop_arc(arc):
                raise ValueError("basepoint %r on unknown arc %r" % (name, arc))

    def _is_loop_arc(self, arc: int) -> bool:
        return -self.free_loops <= arc <= -1

    @property
    def arcs(self) -> tuple[int, ...]:
        out = {a for cr in self.crossings for a in cr}
        out.update(range(-self.free_loops, 0))
        return tuple(sorted(out))

    def component_arcs(self) -> list[int]:
        """Least arc id of every link component, by strand-following."""
        parent = {a: a for a in self.arcs}

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a: int, b: int) -> None:
            parent[find(a)] = find(b)

        for (a, b, c, d) in self.crossings:
            union(a, c)
            union(b, d)
        reps: dict[int, int] = {}
        for a in self.arcs:
            r = find(a)
            reps[r] = min(reps.get(r, a), a)
        return sorted(reps.values())

    def components(self) -> int:
        """Number of link components."""
        return len(self.component_arcs())


_PD_TOKEN = re.compile(r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)|U")


def parse_pd(text: str) -> LinkDiagram:
    """Parse PD notation like "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]".

    The token U stands for a crossingless unknot component.
    """
    text = text.strip()
    if text == "U":
        return LinkDiagram((), 1)
    m = re.fullmatch(r"PD\[(.*)\]", text, re.S)
    if not m:
        raise ValueError("expected PD[...] or the unknot token 'U'")
    body = m.group(1).strip()
    if not body:
        raise ValueError("no crossings")
    crossings: list[Crossing] = []
    loops = 0
    pos = 0
    for tok in _PD_TOKEN.finditer(body):
        gap = body[pos:tok.start()].strip()
        if gap not in ("", ","):
            raise ValueError("malformed token near %r" % gap)
        pos = tok.end()
        if tok.group(0) == "U":
            loops += 1
        else:
            crossings.append(tuple(int(g) for g in tok.groups()))  # type: ignore
    if body[pos:].strip() not in ("",):
        raise ValueError("malformed token near %r" % body[pos:])
    if not crossings and not loops:
        raise ValueError("no crossings")
    return LinkDiagram(tuple(crossings), loops)


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Reverse the crossing convention by rotating each PD tuple one step."""
    return LinkDiagram(
        tuple((b, c, d, a) for (a, b, c, d) in d.crossings),
        d.free_loops,
        d.basepoints,
    )


def unlink(n: int) -> LinkDiagram:
    if n < 1:
        raise ValueError("unlink needs at least one component")
    return LinkDiagram((), n)


def cyclic_knot(n: int) -> LinkDiagram:
    """An n-crossing one-component diagram from a cyclic PD pattern (n odd).

    n = 3 is the standard trefoil code; larger odd n give valid knot
    diagrams (not in general torus knots) useful as corpus entries.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("cyclic_knot needs an odd n >= 3")

    def wrap(x: int) -> int:
        return (x - 1) % (2 * n) + 1

    crossings = tuple(
        (wrap(2 * k + 1), wrap(2 * k + 4), wrap(2 * k + 2), wrap(2 * k + 5))
        for k in range(n)
    )
    return LinkDiagram(crossings)


def add_kink(d: LinkDiagram, arc: int) -> LinkDiagram:
    """A first Reidemeister kink on the given arc (adds one crossing)."""
    if arc not in d.arcs or arc < 0:
        raise ValueError("no such crossing arc %r" % arc)
    loop = max(d.arcs) + 1
    cont = loop + 1
    crossings = []
    replaced = False
    for cr in d.crossings:
        row = []
        for a in cr:
            if a == arc and not replaced:
                row.append(cont)
                replaced = True
            else:
                row.append(a)
        crossings.append(tuple(row))
    crossings.append((arc, loop, loop, cont))
    return LinkDiagram(tuple(crossings), d.free_loops, d.basepoints)


def connect_sum(d1: LinkDiagram, d2: LinkDiagram, arc1: int | None = None,
                arc2: int | None = None) -> LinkDiagram:
    """Connected sum splicing one arc of each diagram."""
    if d1.free_loops or d2.free_loops:
        raise ValueError("connected sum needs crossing diagrams")
    arc1 = min(d1.arcs) if arc1 is None else arc1
    arc2 = min(d2.arcs) if arc2 is None else arc2
    shift = max(d1.arcs)
    second = [tuple(a + shift for a in cr) for cr in d2.crossings]
    a2 = arc2 + shift
    first = [list(cr) for cr in d1.crossings]
    done = False
    for cr in first:
        for i, a in enumerate(cr):
            if a == arc1 and not done:
                cr[i] = a2
                done = True
    second2 = [list(cr) for cr in second]
    done = False
    for cr in second2:
        for i, a in enumerate(cr):
            if a == a2 and not done:
                cr[i] = arc1
                done = True
    crossings = tuple(tuple(cr) for cr in first + second2)
    return LinkDiagram(crossings)


def smooth(d: LinkDiagram, crossing: int, choice: int) -> LinkDiagram:
    """Replace one crossing by its smoothing, producing a smaller diagram."""
    if not 0 <= crossing < len(d.crossings):
        raise ValueError("no such crossing")
    a, b, c, dd = d.crossings[crossing]
    joins = [(a, dd), (b, c)] if choice == 0 else [(a, b), (c, dd)]
    rest = [cr for i, cr in enumerate(d.crossings) if i != crossing]
    parent = {x: x for x in d.arcs}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (x, y) in joins:
        parent[find(x)] = find(y)
    occur: dict[int, int] = {}
    for cr in rest:
        for x in cr:
            occur[find(x)] = occur.get(find(x), 0) + 1
    new_loops = d.free_loops
    relabel: dict[int, int] = {}
    for x in sorted({find(a2) for a2 in d.arcs if a2 > 0}):
        cnt = occur.get(x, 0)
        if cnt == 0:
            new_loops += 1
        elif cnt == 2:
            relabel[x] = x
        else:
            raise AssertionError("smoothing left arc with %d ends" % cnt)
    new_crossings = tuple(
        tuple(relabel[find(x)] for x in cr) for cr in rest  # type: ignore
    )
    return LinkDiagram(new_crossings, new_loops)


# -- resolutions ----------------------------------------------------------------


@dataclass(frozen=True)
class ResolutionState:
    vertex: tuple[int, ...]
    circles: tuple[frozenset[int], ...]

    @property
    def weight(self) -> int:
        return sum(self.vertex)

    def circle_of(self, arc: int) -> frozenset[int]:
        for c in self.circles:
            if arc in c:
                return c
        raise KeyError("arc %r not on any circle" % arc)


def resolve(d: LinkDiagram, vertex: tuple[int, ...], swap: bool = False) -> ResolutionState:
    """Circles of the complete resolution given one 0/1 choice per crossing."""
    if len(vertex) != len(d.crossings):
        raise ValueError("vertex length mismatch")
    parent = {a: a for a in d.arcs}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, b, c, dd), v in zip(d.crossings, vertex):
        choice = v ^ (1 if swap else 0)
        joins = [(a, dd), (b, c)] if choice == 0 else [(a, b), (c, dd)]
        for (x, y) in joins:
            parent[find(x)] = find(y)
    groups: dict[int, set[int]] = {}
    for a in d.arcs:
        groups.setdefault(find(a), set()).add(a)
    circles = tuple(
        sorted((frozenset(g) for g in groups.values()), key=min)
    )
    return ResolutionState(tuple(vertex), circles)


# -- edge maps -------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeMap:
    """Band map between adjacent resolutions on x-label subsets.

    apply() sends a set of x-labelled circles to terms (U-power, new set).
    """

    kind: str
    sources: tuple[frozenset[int], ...]
    targets: tuple[frozenset[int], ...]

    def apply(
        self, labels: frozenset[frozenset[int]]
    ) -> list[tuple[int, frozenset[frozenset[int]]]]:
        if self.kind == "merge":
            c1, c2 = self.sources
            (dst,) = self.targets
            eps = (c1 in labels) + (c2 in labels)
            rest = labels - {c1, c2}
            if eps == 2:
                return [(1, rest)]
            if eps == 1:
                return [(0, rest | {dst})]
            return [(0, rest)]
        (src,) = self.sources
        d1, d2 = self.targets
        if src in labels:
            rest = labels - {src}
            return [(0, rest | {d1, d2}), (1, rest)]
        return [(0, labels | {d1}), (0, labels | {d2})]


def edge_map(st0: ResolutionState, st1: ResolutionState) -> EdgeMap:
    """Merge or split block between two resolutions differing at one crossing."""
    set0, set1 = set(st0.circles), set(st1.circles)
    changed0 = tuple(sorted(set0 - set1, key=min))
    changed1 = tuple(sorted(set1 - set0, key=min))
    if len(changed0) == 2 and len(changed1) == 1:
        return EdgeMap("merge", changed0, changed1)
    if len(changed0) == 1 and len(changed1) == 2:
        return EdgeMap("split", changed0, changed1)
    raise ValueError(
        "circle counts differ by %d, not 1"
        % abs(len(st1.circles) - len(st0.circles))
    )


# -- the cube --------------------------------------------------------------------


def _gid(vertex: tuple[int, ...], labels: frozenset[frozenset[int]]) -> str:
    tag = ",".join(str(min(c)) for c in sorted(labels, key=min))
    return "v%s|%s" % ("".join(str(b) for b in vertex), tag)


def _subsets(items: list[frozenset[int]]):
    n = len(items)
    for mask in range(1 << n):
        yield frozenset(items[i] for i in range(n) if (mask >> i) & 1)


@dataclass
class CubeComplex:
    """Assembled cube complex plus the data needed to interpret generators."""

    diagram: LinkDiagram
    flavor: str
    basepoint_arc: int | None
    swap: bool
    complex: ChainComplex
    levels: dict[str, int]
    states: list[ResolutionState]
    info: dict[str, tuple[int, frozenset[frozenset[int]]]] = field(repr=False, default_factory=dict)

    def base_circle(self, vertex_index: int) -> frozenset[int]:
        assert self.basepoint_arc is not None
        return self.states[vertex_index].circle_of(self.basepoint_arc)


def ckh(
    d: LinkDiagram,
    flavor: str,
    basepoint: int | None = None,
    swap: bool = False,
) -> CubeComplex:
    """Cube-of-resolutions complex in the requested flavor.

    h is the number of 1-resolutions, q the label grading, and the
    filtration level equals h.  Gradings are relative; reports normalize.
    """
    if flavor not in FLAVORS:
        raise ValueError("flavor must be one of %r" % (FLAVORS,))
    arcs = d.arcs
    if flavor == "reduced" and basepoint is None:
        raise ValueError("reduced flavor requires a basepoint")
    if flavor in ("minus", "reduced"):
        if basepoint is None:
            basepoint = min(arcs)
        elif basepoint not in arcs:
            raise ValueError("basepoint on unknown arc %r" % basepoint)
    else:
        basepoint = None

    n = len(d.crossings)
    states = [
        resolve(d, tuple((i >> j) & 1 for j in range(n)), swap)
        for i in range(1 << n)
    ]
    if flavor == "minus":
        vs = VarSet(("u",), (HALF,))
    else:
        vs = VarSet((), ())

    gens: list[Generator] = []
    info: dict[str, tuple[int, frozenset[frozenset[int]]]] = {}
    levels: dict[str, int] = {}
    by_vertex: list[list[str]] = [[] for _ in states]
    for i, st in enumerate(states):
        circles = list(st.circles)
        if basepoint is not None:
            base = st.circle_of(basepoint)
            circles = [c for c in circles if c != base]
        c_total = len(st.circles)
        for labels in _subsets(circles):
            gid = _gid(st.vertex, labels)
            h = st.weight
            q = c_total - 2 * len(labels) + st.weight
            gens.append(Generator(gid, h, q))
            info[gid] = (i, labels)
            levels[gid] = h
            by_vertex[i].append(gid)

    diff: dict[tuple[str, str], Poly] = {}

    def add_entry(src: str, tgt: str, upow: int) -> None:
        p = Poly.var(vs, "u", upow) if upow else Poly.one(vs)
        key = (src, tgt)
        cur = diff.get(key)
        acc = p if cur is None else cur + p
        if acc:
            diff[key] = acc
        elif key in diff:
            del diff[key]

    for i, st in enumerate(states):
        for j in range(n):
            if (i >> j) & 1:
                continue
            i2 = i | (1 << j)
            em = edge_map(st, states[i2])
            base2 = (
                states[i2].circle_of(basepoint) if basepoint is not None else None
            )
            for gid in by_vertex[i]:
                labels = info[gid][1]
                for (ucount, out) in em.apply(labels):
                    t = 2 * ucount
                    out2 = out
                    if base2 is not None and base2 in out:
                        out2 = out - {base2}
                        t += 1
                    if flavor == "hat" and ucount:
                        continue
                    if flavor == "reduced" and t:
                        continue
                    if flavor != "minus":
                        t = 0
                    add_entry(gid, _gid(states[i2].vertex, out2), t)

    cx = ChainComplex(vs, gens, diff, CONV_KH)
    return CubeComplex(d, flavor, basepoint, swap, cx, levels, states, info)


def basepoint_action(cc: CubeComplex, arc: int) -> ChainMap:
    """Multiplication by the label of the circle through a marked arc."""
    if cc.flavor != "minus":
        raise ValueError("basepoint actions live on the minus flavor")
    if arc not in cc.diagram.arcs:
        raise ValueError("unknown point %r" % arc)
    vs = cc.complex.vars
    entries: dict[tuple[str, str], Poly] = {}
    for gid, (vi, labels) in cc.info.items():
        circle = cc.states[vi].circle_of(arc)
        if circle == cc.base_circle(vi):
            entries[(gid, gid)] = Poly.var(vs, "u", 1)
        elif circle in labels:
            entries[(gid, _gid(cc.states[vi].vertex, labels - {circle}))] = Poly.var(
                vs, "u", 2
            )
        else:
            entries[(gid, _gid(cc.states[vi].vertex, labels | {circle}))] = Poly.one(
                vs
            )
    return ChainMap(cc.complex, cc.complex, entries, dh=0, dq=-2, name="X@%s" % arc)
