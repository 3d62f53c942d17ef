"""Oriented planar link diagrams in PD notation.

Conventions
-----------
A crossing ``X(a,b,c,d)`` lists its four edge labels counterclockwise,
starting from the incoming under-strand, so the under-strand runs
``a -> c``.  Picture the under-strand heading north: ``b`` is east,
``d`` is west.  The crossing is positive when the over-strand runs
``d -> b`` (west to east) and negative when it runs ``b -> d``.

Components are stored as tuples of edge labels in traversal order; a
crossingless unknotted component is the empty tuple.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import DiagramError, PDParseError, PresentationError

__all__ = [
    "Crossing",
    "LinkDiagram",
    "SurgeryPresentation",
    "parse_pd",
    "from_braid",
    "linking_matrix",
    "mirror",
    "reverse_all",
    "disjoint_union",
    "switch_crossing",
    "smooth_crossing",
    "delete_components",
    "cable",
    "cable_crossing_count",
    "sublink",
    "enumerate_sublinks",
    "kirby_knot_surgery",
    "unknot",
    "empty_link",
    "unlink",
]


@dataclass(frozen=True)
class Crossing:
    a: int
    b: int
    c: int
    d: int
    sign: int

    @property
    def labels(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def over_in(self) -> int:
        return self.d if self.sign > 0 else self.b

    @property
    def over_out(self) -> int:
        return self.b if self.sign > 0 else self.d

    def relabel(self, f) -> "Crossing":
        return Crossing(f(self.a), f(self.b), f(self.c), f(self.d), self.sign)

    def switched(self) -> "Crossing":
        # the old over-strand becomes the under-strand; relist from its incoming end
        if self.sign > 0:
            return Crossing(self.d, self.a, self.b, self.c, -1)
        return Crossing(self.b, self.c, self.d, self.a, 1)

    def reversed(self) -> "Crossing":
        return Crossing(self.c, self.d, self.a, self.b, self.sign)

    def pd(self) -> str:
        return f"X({self.a},{self.b},{self.c},{self.d})"


class _UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        p = self.parent.get(x, x)
        if p == x:
            return x
        root = self.find(p)
        self.parent[x] = root
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # keep the smaller label as representative for determinism
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx


def _successors(crossings: Sequence[Crossing]) -> dict[int, int]:
    nxt: dict[int, int] = {}
    for k, x in enumerate(crossings):
        for src, dst in ((x.a, x.c), (x.over_in, x.over_out)):
            if src in nxt:
                raise DiagramError(f"edge {src} enters two crossings (crossing {k})")
            nxt[src] = dst
    return nxt


def _traverse(start: int, nxt: dict[int, int]) -> tuple[int, ...]:
    out = [start]
    e = nxt[start]
    while e != start:
        out.append(e)
        e = nxt[e]
        if len(out) > len(nxt):
            raise DiagramError("edge successor map is not a permutation")
    return tuple(out)


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[Crossing, ...]
    components: tuple[tuple[int, ...], ...]
    framings: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.framings:
            object.__setattr__(self, "framings", (0,) * len(self.components))
        if len(self.framings) != len(self.components):
            raise DiagramError("one framing per component is required")

    # --- basic data
    @property
    def num_components(self) -> int:
        return len(self.components)

    def __len__(self) -> int:
        return len(self.crossings)

    @property
    def loops(self) -> int:
        return sum(1 for comp in self.components if not comp)

    @property
    def writhe(self) -> int:
        return sum(x.sign for x in self.crossings)

    def edge_component(self) -> dict[int, int]:
        return {e: i for i, comp in enumerate(self.components) for e in comp}

    def crossing_components(self, k: int) -> tuple[int, int]:
        """(under component, over component) of crossing ``k``."""
        owner = self.edge_component()
        x = self.crossings[k]
        return owner[x.a], owner[x.over_in]

    def self_writhes(self) -> list[int]:
        w = [0] * self.num_components
        for k, x in enumerate(self.crossings):
            cu, co = self.crossing_components(k)
            if cu == co:
                w[cu] += x.sign
        return w

    def validate(self) -> "LinkDiagram":
        counts: dict[int, int] = {}
        for x in self.crossings:
            for e in x.labels:
                counts[e] = counts.get(e, 0) + 1
        for e, n in counts.items():
            if n != 2:
                raise DiagramError(f"edge {e} appears {n} times; expected 2")
        nxt = _successors(self.crossings)
        seen: set[int] = set()
        for comp in self.components:
            for i, e in enumerate(comp):
                if e in seen:
                    raise DiagramError(f"edge {e} listed in two components")
                seen.add(e)
                if nxt.get(e) != comp[(i + 1) % len(comp)]:
                    raise DiagramError(f"component order breaks at edge {e}")
        if seen != set(counts):
            raise DiagramError("components do not cover every edge")
        return self

    def with_framings(self, framings: Sequence[int]) -> "LinkDiagram":
        return LinkDiagram(self.crossings, self.components, tuple(framings))

    # --- serialization
    def to_pd(self) -> str:
        xs = ", ".join(x.pd() for x in self.crossings)
        comps = "[" + ",".join("[" + ",".join(map(str, c)) + "]" for c in self.components) + "]"
        fr = "[" + ",".join(map(str, self.framings)) + "]"
        out = f"PD[{xs}] loops={self.loops} components={comps} framings={fr}"
        if self._needs_signs():
            out += " signs=[" + ",".join(str(x.sign) for x in self.crossings) + "]"
        return out

    def _needs_signs(self) -> bool:
        # labels alone cannot orient a two-edge component made of over-strands only
        raw = [x.labels for x in self.crossings]
        try:
            return _from_pd_data(raw, self.components, self.framings, self.loops).crossings != self.crossings
        except DiagramError:
            return True

    def to_json(self) -> dict:
        return {
            "crossings": [list(x.labels) for x in self.crossings],
            "components": [list(c) for c in self.components],
            "framings": list(self.framings),
            "loops": self.loops,
        }

    @classmethod
    def from_json(cls, data: dict) -> "LinkDiagram":
        return _from_pd_data(
            [tuple(x) for x in data["crossings"]],
            [list(c) for c in data["components"]] if data.get("components") is not None else None,
            data.get("framings"),
            data.get("loops", 0),
        )

    def canonical(self) -> "LinkDiagram":
        """Relabel edges 1..E in traversal order (framings dropped)."""
        mapping: dict[int, int] = {}
        for comp in self.components:
            for e in comp:
                mapping[e] = len(mapping) + 1
        f = mapping.__getitem__
        comps = tuple(tuple(f(e) for e in comp) for comp in self.components)
        return LinkDiagram(tuple(x.relabel(f) for x in self.crossings), comps)

    def key(self) -> str:
        """Hashable canonical serialization used for memoization."""
        c = self.canonical()
        return c.to_pd().split(" framings=")[0]

    def __str__(self):
        return self.to_pd()


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<word>[A-Za-z_]+)|(?P<sym>[\[\](),=]))")


class _Tokens:
    def __init__(self, text: str):
        self.items: list[tuple[str, str, int]] = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise PDParseError(f"unexpected character {text[pos]!r}", pos)
            kind = m.lastgroup
            self.items.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0
        self.end = len(text)

    def peek(self):
        return self.items[self.i] if self.i < len(self.items) else ("eof", "", self.end)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if kind and tok[0] != kind or value is not None and tok[1] != value:
            want = value if value is not None else kind
            raise PDParseError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def int(self) -> int:
        return int(self.take("int")[1])

    def int_list(self) -> list[int]:
        self.take("sym", "[")
        out = []
        if self.peek()[1] != "]":
            out.append(self.int())
            while self.peek()[1] == ",":
                self.take()
                out.append(self.int())
        self.take("sym", "]")
        return out


def parse_pd(text: str) -> LinkDiagram:
    """Parse ``PD[X(a,b,c,d), ...] loops=k components=[[...],...] framings=[...]``.

    ``X[...]`` brackets and a bare list without the ``PD`` head are
    accepted as well.  ``components`` lists the edges of each component in
    traversal order (``[]`` for a crossingless loop) and fixes all
    orientations; if omitted, orientations are inferred from the
    under-strands and components are ordered by smallest label, with
    ``loops`` crossingless components appended.  ``signs=[...]`` (one +1/-1
    per crossing) is written only when the labels cannot fix an orientation.
    """
    tk = _Tokens(text)
    if tk.peek()[1] != "[":
        tk.take("word", "PD")
    tk.take("sym", "[")
    raw: list[tuple[int, int, int, int]] = []
    positions: list[int] = []
    if tk.peek()[1] != "]":
        while True:
            _, _, pos = tk.take("word", "X")
            opener = tk.take("sym")[1]
            if opener not in "([":
                raise PDParseError("expected '(' after X", pos)
            vals = [tk.int()]
            for _ in range(3):
                tk.take("sym", ",")
                vals.append(tk.int())
            tk.take("sym", ")" if opener == "(" else "]")
            raw.append(tuple(vals))
            positions.append(pos)
            if tk.peek()[1] == ",":
                tk.take()
                continue
            break
    tk.take("sym", "]")
    loops = None
    components = None
    framings = None
    signs = None
    while tk.peek()[0] != "eof":
        _, name, pos = tk.take("word")
        tk.take("sym", "=")
        if name == "loops":
            loops = tk.int()
        elif name == "components":
            tk.take("sym", "[")
            components = []
            if tk.peek()[1] != "]":
                components.append(tk.int_list())
                while tk.peek()[1] == ",":
                    tk.take()
                    components.append(tk.int_list())
            tk.take("sym", "]")
        elif name == "framings":
            framings = tk.int_list()
        elif name == "signs":
            signs = tk.int_list()
        else:
            raise PDParseError(f"unknown field {name!r}", pos)

    counts: dict[int, list[int]] = {}
    for k, labels in enumerate(raw):
        for e in labels:
            counts.setdefault(e, []).append(k)
    for e, where in counts.items():
        if len(where) != 2:
            raise PDParseError(f"edge {e} appears {len(where)} times; expected 2", positions[where[-1]])
    try:
        if signs is not None:
            if components is None or len(signs) != len(raw) or set(signs) - {1, -1}:
                raise DiagramError("signs= needs components= and one +1/-1 per crossing")
            D = LinkDiagram(tuple(Crossing(*x, sg) for x, sg in zip(raw, signs)),
                            tuple(tuple(c) for c in components), tuple(framings or ()))
            return D.validate()
        return _from_pd_data(raw, components, framings, loops)
    except DiagramError as exc:
        raise PDParseError(str(exc)) from exc


def _from_pd_data(raw, components, framings, loops) -> LinkDiagram:
    raw = [tuple(int(v) for v in x) for x in raw]
    if components is not None:
        comps = [tuple(c) for c in components]
        nxt = {}
        for c in comps:
            for i, e in enumerate(c):
                nxt[e] = c[(i + 1) % len(c)]
        crossings = []
        inferred = None
        for k, (a, b, c, d) in enumerate(raw):
            if nxt.get(a) != c:
                raise DiagramError(f"crossing {k}: under-strand does not run from {a} to {c}")
            fwd, back = nxt.get(d) == b, nxt.get(b) == d
            if fwd and back:
                # a two-edge component passes both ways; use which ends are heads
                if inferred is None:
                    inferred = _infer_orientation(raw)
                sign = inferred[k].sign
            elif fwd:
                sign = 1
            elif back:
                sign = -1
            else:
                raise DiagramError(f"crossing {k}: over-strand {b}/{d} is not consecutive in any component")
            crossings.append(Crossing(a, b, c, d, sign))
        nloops = sum(1 for c in comps if not c)
        if loops is not None and loops != nloops:
            raise DiagramError(f"loops={loops} but components lists {nloops} empty components")
        fr = tuple(framings) if framings is not None else ()
        return LinkDiagram(tuple(crossings), tuple(comps), fr).validate()

    crossings = _infer_orientation(raw)
    nxt = _successors(crossings)
    comps = []
    seen: set[int] = set()
    for e in sorted(nxt):
        if e not in seen:
            cyc = _traverse(e, nxt)
            seen.update(cyc)
            comps.append(cyc)
    comps.extend(() for _ in range(loops or 0))
    fr = tuple(framings) if framings is not None else ()
    return LinkDiagram(tuple(crossings), tuple(comps), fr).validate()


def _infer_orientation(raw) -> list[Crossing]:
    # direction of an edge is known once one of its ends is known to be a head or a tail
    head_at: dict[int, tuple[int, int]] = {}
    tail_at: dict[int, tuple[int, int]] = {}
    over_dir: dict[int, int] = {}
    slots: dict[int, list[tuple[int, int]]] = {}
    for k, (a, b, c, d) in enumerate(raw):
        for s, e in enumerate((a, b, c, d)):
            slots.setdefault(e, []).append((k, s))
        head_at[a] = (k, 0)
        tail_at[c] = (k, 2)

    def decide(k: int) -> int | None:
        a, b, c, d = raw[k]
        # b is incoming here if its other end is a tail
        for e, s, sign_if_in in ((b, 1, -1), (d, 3, 1)):
            other = [p for p in slots[e] if p != (k, s)]
            if not other:
                continue
            ok, os_ = other[0]
            if os_ == 2 or (os_ in (1, 3) and ok in over_dir and _over_out_slot(over_dir[ok]) == os_):
                return sign_if_in
            if os_ == 0 or (os_ in (1, 3) and ok in over_dir and _over_in_slot(over_dir[ok]) == os_):
                return -sign_if_in
        return None

    pending = set(range(len(raw)))
    while pending:
        progress = False
        for k in sorted(pending):
            s = decide(k)
            if s is not None:
                over_dir[k] = s
                pending.discard(k)
                progress = True
        if not progress:
            k = min(pending)
            a, b, c, d = raw[k]
            over_dir[k] = 1 if b == d + 1 else -1
            pending.discard(k)
    return [Crossing(*raw[k], over_dir[k]) for k in range(len(raw))]


def _over_in_slot(sign: int) -> int:
    return 3 if sign > 0 else 1


def _over_out_slot(sign: int) -> int:
    return 1 if sign > 0 else 3


# ---------------------------------------------------------------------------
# constructors


def empty_link() -> LinkDiagram:
    return LinkDiagram((), ())


def unknot(framing: int = 0) -> LinkDiagram:
    return LinkDiagram((), ((),), (framing,))


def unlink(n: int) -> LinkDiagram:
    return LinkDiagram((), ((),) * n)


class _Labels:
    def __init__(self, start: int = 1):
        self.n = start - 1

    def fresh(self) -> int:
        self.n += 1
        return self.n


def _braid_crossings(word: Iterable[int], bottom: Sequence[int], labels: _Labels):
    """Stack braid generators on strands with the given bottom labels.

    Strands head north; position 1 is westmost.  Returns the crossings and
    the labels leaving the top.
    """
    cur = list(bottom)
    out = []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < len(cur) - 1 or g == 0:
            raise DiagramError(f"braid generator {g} out of range for {len(cur)} strands")
        sw, se = cur[i], cur[i + 1]
        nw, ne = labels.fresh(), labels.fresh()
        if g > 0:
            out.append(Crossing(se, ne, nw, sw, 1))
        else:
            out.append(Crossing(sw, se, ne, nw, -1))
        cur[i], cur[i + 1] = nw, ne
    return out, cur


def _assemble(crossings: Sequence[Crossing], starts: Sequence[int | None], framings=()) -> LinkDiagram:
    nxt = _successors(crossings)
    comps = tuple(() if s is None else _traverse(s, nxt) for s in starts)
    return LinkDiagram(tuple(crossings), comps, tuple(framings)).validate()


def _merge_labels(crossings: Sequence[Crossing], uf: _UnionFind) -> list[Crossing]:
    return [x.relabel(uf.find) for x in crossings]


def from_braid(word: Sequence[int], strands: int, framings: Sequence[int] | None = None) -> LinkDiagram:
    """Closure of a braid word (``i`` for sigma_i, ``-i`` for its inverse)."""
    labels = _Labels()
    bottom = [labels.fresh() for _ in range(strands)]
    xs, top = _braid_crossings(word, bottom, labels)
    uf = _UnionFind()
    for b, t in zip(bottom, top):
        uf.union(b, t)
    xs = _merge_labels(xs, uf)
    used = {e for x in xs for e in x.labels}
    starts: list[int | None] = []
    done: set[int] = set()
    nxt = _successors(xs)
    for b in bottom:
        r = uf.find(b)
        if r in done:
            continue
        if r not in used:
            starts.append(None)
            done.add(r)
        else:
            cyc = _traverse(r, nxt)
            done.update(uf.find(e) for e in cyc)
            starts.append(r)
    fr = tuple(framings) if framings is not None else ()
    return _assemble(xs, starts, fr)


# ---------------------------------------------------------------------------
# invariants of the diagram


def linking_matrix(L: LinkDiagram) -> list[list[int]]:
    """Self-writhes on the diagonal, pairwise linking numbers off it."""
    n = L.num_components
    twice = [[0] * n for _ in range(n)]
    for k, x in enumerate(L.crossings):
        cu, co = L.crossing_components(k)
        if cu == co:
            twice[cu][cu] += 2 * x.sign
        else:
            twice[cu][co] += x.sign
            twice[co][cu] += x.sign
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if twice[i][j] % 2:
                raise DiagramError("odd crossing count between two components")
            out[i][j] = twice[i][j] // 2
    return out


# ---------------------------------------------------------------------------
# global operations


def mirror(L: LinkDiagram, negate_framings: bool = False) -> LinkDiagram:
    xs = tuple(x.switched() for x in L.crossings)
    fr = tuple(-f for f in L.framings) if negate_framings else L.framings
    return LinkDiagram(xs, L.components, fr)


def reverse_all(L: LinkDiagram) -> LinkDiagram:
    xs = tuple(x.reversed() for x in L.crossings)
    comps = tuple(tuple(reversed(c)) for c in L.components)
    return LinkDiagram(xs, comps, L.framings).validate()


def disjoint_union(L1: LinkDiagram, L2: LinkDiagram) -> LinkDiagram:
    labels1 = [e for c in L1.components for e in c]
    off = max(labels1, default=0)
    shift = lambda e: e + off  # noqa: E731
    xs = L1.crossings + tuple(x.relabel(shift) for x in L2.crossings)
    comps = L1.components + tuple(tuple(shift(e) for e in c) for c in L2.components)
    return LinkDiagram(xs, comps, L1.framings + L2.framings)


def _check_index(L: LinkDiagram, k: int) -> None:
    if not 0 <= k < len(L.crossings):
        raise DiagramError(f"crossing index {k} out of range (diagram has {len(L.crossings)})")


def switch_crossing(L: LinkDiagram, k: int) -> LinkDiagram:
    _check_index(L, k)
    xs = list(L.crossings)
    xs[k] = xs[k].switched()
    return LinkDiagram(tuple(xs), L.components, L.framings)


def _rebuild_after_merge(L: LinkDiagram, xs: list[Crossing], uf: _UnionFind, keep: Sequence[int]) -> LinkDiagram:
    """Recompute components after edges were merged and crossings removed.

    New components are ordered by the first old component (among ``keep``)
    that they meet.
    """
    used = {e for x in xs for e in x.labels}
    nxt = _successors(xs)
    starts: list[int | None] = []
    fr: list[int] = []
    seen: set[int] = set()
    for ci in keep:
        comp = L.components[ci]
        if not comp:
            starts.append(None)
            fr.append(L.framings[ci])
            continue
        for e in comp:
            r = uf.find(e)
            if r in seen:
                continue
            if r in used:
                cyc = _traverse(r, nxt)
                seen.update(cyc)
                starts.append(r)
            else:
                seen.add(r)
                starts.append(None)
            fr.append(L.framings[ci])
    return _assemble(xs, starts, fr)


def smooth_crossing(L: LinkDiagram, k: int) -> LinkDiagram:
    """Oriented smoothing of crossing ``k``; components are recomputed."""
    _check_index(L, k)
    x = L.crossings[k]
    uf = _UnionFind()
    uf.union(x.a, x.over_out)
    uf.union(x.over_in, x.c)
    xs = _merge_labels([y for i, y in enumerate(L.crossings) if i != k], uf)
    return _rebuild_after_merge(L, xs, uf, range(L.num_components))


def delete_components(L: LinkDiagram, keep: Iterable[int]) -> LinkDiagram:
    """The sublink made of the components with indices in ``keep``."""
    keep = sorted(set(keep))
    if any(not 0 <= i < L.num_components for i in keep):
        raise DiagramError("component index out of range")
    if len(keep) == L.num_components:
        return L
    owner = L.edge_component()
    kept = set(keep)
    uf = _UnionFind()
    xs = []
    for x in L.crossings:
        under = owner[x.a] in kept
        over = owner[x.over_in] in kept
        if under and over:
            xs.append(x)
        elif under:
            uf.union(x.a, x.c)
        elif over:
            uf.union(x.over_in, x.over_out)
    xs = _merge_labels(xs, uf)
    return _rebuild_after_merge(L, xs, uf, keep)


# ---------------------------------------------------------------------------
# cabling


def cable_crossing_count(L: LinkDiagram, m: int | Sequence[int]) -> int:
    ms = [m] * L.num_components if isinstance(m, int) else list(m)
    total = 0
    for k in range(len(L.crossings)):
        cu, co = L.crossing_components(k)
        total += ms[cu] * ms[co]
    for w, mi in zip(L.self_writhes(), ms):
        total += abs(w) * mi * (mi - 1)
    return total


def cable(L: LinkDiagram, m: int | Sequence[int]) -> LinkDiagram:
    """0-framed parallel: each component replaced by ``m`` copies with pairwise linking 0.

    Takes the blackboard parallel and then inserts ``-w`` full twists on the
    band of a component with self-writhe ``w``.  Components of the result are
    ordered (component, copy); copy 1 is leftmost with respect to the
    orientation.  ``m`` may also be one multiplicity per component.
    """
    ms = [m] * L.num_components if isinstance(m, int) else list(m)
    if len(ms) != L.num_components or any(mi < 1 for mi in ms):
        raise DiagramError("cable multiplicities must be positive, one per component")
    if all(mi == 1 for mi in ms):
        return L
    owner = L.edge_component()
    writhes = L.self_writhes()
    labels = _Labels()
    twisted = {comp[0]: ci for ci, comp in enumerate(L.components) if comp and writhes[ci] and ms[ci] > 1}
    lab: dict[tuple[int, int, str], int] = {}

    def edge_label(e: int, p: int, end: str) -> int:
        key = (e, p, end if e in twisted else "")
        if key not in lab:
            lab[key] = labels.fresh()
        return lab[key]

    xs: list[Crossing] = []
    for x in L.crossings:
        mu = ms[owner[x.a]]
        mo = ms[owner[x.over_in]]
        s = x.sign
        vert = {}
        horiz = {}
        for col in range(1, mu + 1):
            vert[col, 0] = edge_label(x.a, col, "head")
            vert[col, mo] = edge_label(x.c, col, "tail")
            for y in range(1, mo):
                vert[col, y] = labels.fresh()
        for y in range(1, mo + 1):
            q = mo + 1 - y if s > 0 else y
            if s > 0:
                horiz[y, 0] = edge_label(x.d, q, "head")
                horiz[y, mu] = edge_label(x.b, q, "tail")
            else:
                horiz[y, mu] = edge_label(x.b, q, "head")
                horiz[y, 0] = edge_label(x.d, q, "tail")
            for col in range(1, mu):
                horiz[y, col] = labels.fresh()
        for col in range(1, mu + 1):
            for y in range(1, mo + 1):
                xs.append(Crossing(vert[col, y - 1], horiz[y, col], vert[col, y], horiz[y, col - 1], s))

    uf = _UnionFind()
    for e, ci in twisted.items():
        mi = ms[ci]
        w = writhes[ci]
        eps = -1 if w > 0 else 1
        full = [eps * g for g in range(1, mi)] * mi
        bottom = [edge_label(e, p, "tail") for p in range(1, mi + 1)]
        bxs, top = _braid_crossings(full * abs(w), bottom, labels)
        for p, t in enumerate(top, start=1):
            uf.union(edge_label(e, p, "head"), t)
        xs.extend(bxs)
    xs = _merge_labels(xs, uf)

    starts: list[int | None] = []
    fr: list[int] = []
    for ci, comp in enumerate(L.components):
        for p in range(1, ms[ci] + 1):
            if comp:
                e = comp[0]
                starts.append(uf.find(edge_label(e, p, "head")))
            else:
                starts.append(None)
            fr.append(L.framings[ci])
    return _assemble(xs, starts, fr)


def sublink(Lm: LinkDiagram, idx: Sequence[int], m: int | None = None) -> LinkDiagram:
    """Sublink of a uniform cable keeping the first ``idx[xi]`` copies of component ``xi``."""
    mu = len(idx)
    if mu == 0:
        if Lm.num_components:
            raise DiagramError("empty index for a nonempty cable")
        return Lm
    if m is None:
        if Lm.num_components % mu:
            raise DiagramError("index length does not divide the component count")
        m = Lm.num_components // mu
    if any(not 0 <= i <= m for i in idx):
        raise DiagramError(f"cable index {tuple(idx)} out of range 0..{m}")
    keep = [xi * m + p for xi, i in enumerate(idx) for p in range(i)]
    return delete_components(Lm, keep)


def enumerate_sublinks(L: LinkDiagram, m: int) -> Iterator[tuple[tuple[int, ...], LinkDiagram, int]]:
    """All ``(idx, L', f_L')`` for ``L' ⊂ L^m`` in lexicographic index order."""
    Lm = cable(L, m)
    for idx in product(range(m + 1), repeat=L.num_components):
        f = 1
        for fx, i in zip(L.framings, idx):
            f *= fx ** i
        yield idx, sublink(Lm, idx, m), f


# ---------------------------------------------------------------------------
# surgery presentations


@dataclass(frozen=True)
class SurgeryPresentation:
    """A unit-framed algebraically split link."""

    diagram: LinkDiagram
    name: str = ""

    def __post_init__(self):
        D = self.diagram
        if any(f not in (1, -1) for f in D.framings):
            raise PresentationError(f"framings must all be +1 or -1, got {D.framings}")
        lk = linking_matrix(D)
        for i in range(D.num_components):
            for j in range(i + 1, D.num_components):
                if lk[i][j]:
                    raise PresentationError(f"components {i} and {j} have linking number {lk[i][j]}")

    @property
    def framings(self) -> tuple[int, ...]:
        return self.diagram.framings

    @property
    def num_components(self) -> int:
        return self.diagram.num_components

    def mirror(self) -> "SurgeryPresentation":
        """Presentation of the orientation-reversed manifold."""
        return SurgeryPresentation(mirror(self.diagram, negate_framings=True), f"mirror({self.name})")


def kirby_knot_surgery(K: LinkDiagram, n: int) -> SurgeryPresentation:
    """Unit-framed presentation of 1/n surgery on a knot: ``K^|n|`` framed ``sign(n)``."""
    if K.num_components != 1:
        raise DiagramError("1/n surgery needs a knot")
    if n == 0:
        raise DiagramError("1/0 surgery returns S^3; there is no link to present")
    s = 1 if n > 0 else -1
    D = cable(K, abs(n))
    return SurgeryPresentation(D.with_framings([s] * D.num_components), f"1/{n} surgery")
