"""Stable marked trees, boundary strata, and the strata of the augmented space that equalize
the two forgetful maps.

Range curves carry the labels 0, 1, inf, y, z; domain curves carry 0, 1, inf, x.
The map F sends the domain marks to 0 -> inf, inf -> 1, 1 -> y, x -> 0, and
its critical values are inf and z.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .exactfield import INF, RatExpr, UniPoly, exact_roots
from .exactfield.scalars import as_fraction, format_scalar

RANGE_LABELS = ("0", "1", "inf", "y", "z")
DOMAIN_LABELS = ("0", "1", "inf", "x")
F_ON_MARKS = {"0": "inf", "inf": "1", "1": "y", "x": "0"}
CRITICAL_VALUES = ("inf", "z")
_ORDER = {lab: i for i, lab in enumerate(("0", "1", "inf", "x", "y", "z"))}


def _sorted(labels) -> list[str]:
    return sorted(labels, key=lambda s: (_ORDER.get(s, 99), s))


def block_str(block) -> str:
    return "{" + ",".join(_sorted(block)) + "}"


class NotATreeError(ValueError):
    pass


@dataclass(frozen=True)
class MarkedTree:
    """Components (vertices) carrying marked labels, joined by nodes (edges).

    Marks live on vertices, so they never coincide with nodes.
    """

    marks: tuple[frozenset, ...]
    edges: frozenset = frozenset()

    def __post_init__(self):
        n = len(self.marks)
        object.__setattr__(self, "marks", tuple(frozenset(m) for m in self.marks))
        object.__setattr__(self, "edges", frozenset(frozenset(e) for e in self.edges))
        if n == 0:
            raise NotATreeError("a curve needs at least one component")
        seen: set = set()
        for m in self.marks:
            if seen & m:
                raise ValueError(f"label(s) {sorted(seen & m)} on two components")
            seen |= m
        for e in self.edges:
            if len(e) != 2 or not all(0 <= v < n for v in e):
                raise NotATreeError(f"bad edge {sorted(e)}")
        if len(self.edges) != n - 1 or not self._connected():
            raise NotATreeError("components and nodes do not form a tree")

    def _connected(self) -> bool:
        reach, stack = {0}, [0]
        while stack:
            v = stack.pop()
            for w in self.neighbors(v):
                if w not in reach:
                    reach.add(w)
                    stack.append(w)
        return len(reach) == len(self.marks)

    @classmethod
    def single(cls, labels) -> "MarkedTree":
        return cls((frozenset(labels),))

    @classmethod
    def chain(cls, *blocks) -> "MarkedTree":
        return cls(tuple(frozenset(b) for b in blocks), [(i, i + 1) for i in range(len(blocks) - 1)])

    @property
    def labels(self) -> frozenset:
        return frozenset().union(*self.marks)

    def neighbors(self, v: int) -> list[int]:
        return [w for e in self.edges if v in e for w in e if w != v]

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def distinguished(self, v: int) -> int:
        return len(self.marks[v]) + self.degree(v)

    def case(self, v: int) -> int:
        """1: stable; 2: unstable with two nodes; 3: unstable with one node; 0: lone unstable component."""
        if self.distinguished(v) >= 3:
            return 1
        d = self.degree(v)
        return 2 if d == 2 else 3 if d == 1 else 0

    def splits(self) -> frozenset:
        """Label bipartitions cut by the nodes, each as the side without the first label."""
        first = _sorted(self.labels)[0] if self.labels else None
        out = set()
        for e in self.edges:
            a, b = tuple(e)
            side = self._side(a, b)
            if first in side:
                side = self.labels - side
            out.add(frozenset(side))
        return frozenset(out)

    def _side(self, v: int, away: int) -> frozenset:
        out, stack, seen = set(), [v], {away, v}
        while stack:
            u = stack.pop()
            out |= self.marks[u]
            for w in self.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return frozenset(out)

    @property
    def is_point_degenerate(self) -> bool:
        return len(self.marks) == 1 and len(self.marks[0]) < 3

    def canonical(self) -> str:
        """Isomorphism-invariant encoding (minimum over all roots)."""

        def enc(v, parent):
            kids = sorted(enc(w, v) for w in self.neighbors(v) if w != parent)
            return "(" + ",".join(_sorted(self.marks[v])) + "".join(kids) + ")"

        return min(enc(v, None) for v in range(len(self.marks)))

    def __eq__(self, other):
        if not isinstance(other, MarkedTree):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def blocks(self) -> tuple[frozenset, ...]:
        """Vertex mark sets, in path order for chains."""
        if len(self.marks) <= 1 or any(self.degree(v) > 2 for v in range(len(self.marks))):
            return self.marks
        start = min((v for v in range(len(self.marks)) if self.degree(v) == 1),
                    key=lambda v: [_ORDER.get(s, 99) for s in _sorted(self.marks[v])])
        order, prev = [start], None
        while len(order) < len(self.marks):
            nxt = [w for w in self.neighbors(order[-1]) if w != prev]
            prev = order[-1]
            order.append(nxt[0])
        return tuple(self.marks[v] for v in order)

    def partition_str(self) -> str:
        return "∪".join(block_str(b) for b in self.blocks())

    def relabel(self, mapping: dict) -> "MarkedTree":
        return MarkedTree(tuple(frozenset(mapping.get(s, s) for s in m) for m in self.marks), self.edges)

    def forget(self, labels) -> "MarkedTree":
        drop = set(labels)
        return MarkedTree(tuple(m - drop for m in self.marks), self.edges)

    def __str__(self):
        return self.partition_str()


def is_stable(t: MarkedTree) -> bool:
    return all(t.distinguished(v) >= 3 for v in range(len(t.marks)))


def is_prestable(t: MarkedTree) -> bool:
    # marks are attached to components, never to nodes, so this holds by construction
    return True


def unstable_components(t: MarkedTree) -> dict[int, int]:
    return {v: t.case(v) for v in range(len(t.marks)) if t.case(v) != 1}


def stabilize(t: MarkedTree) -> MarkedTree:
    """Contract unstable components, moving a mark (if any) onto the image point."""
    marks = [set(m) for m in t.marks]
    adj = {v: set(t.neighbors(v)) for v in range(len(marks))}
    alive = set(range(len(marks)))
    changed = True
    while changed and len(alive) > 1:
        changed = False
        for v in sorted(alive):
            d = len(adj[v])
            if len(marks[v]) + d >= 3 or d == 0:
                continue
            if d == 1:
                (w,) = adj[v]
                marks[w] |= marks[v]
                adj[w].discard(v)
            else:
                w1, w2 = adj[v]
                adj[w1].discard(v)
                adj[w2].discard(v)
                adj[w1].add(w2)
                adj[w2].add(w1)
            alive.discard(v)
            del adj[v]
            changed = True
            break
    order = sorted(alive)
    index = {v: i for i, v in enumerate(order)}
    edges = {frozenset((index[v], index[w])) for v in order for w in adj[v]}
    return MarkedTree(tuple(frozenset(marks[v]) for v in order), edges)


# --- enumeration -------------------------------------------------------------

def _compatible(a: frozenset, b: frozenset, labels: frozenset) -> bool:
    return a <= b or b <= a or not (a & b) or (a | b) == labels


def tree_from_splits(labels, splits) -> MarkedTree:
    """The stable tree whose nodes cut exactly the given compatible splits.

    Each split is taken as the cluster avoiding a fixed reference label; the
    clusters form a laminar family and each one is a component below its parent.
    """
    labels = frozenset(labels)
    ref = _sorted(labels)[0]
    clusters = sorted({s if ref not in s else labels - s for s in splits}, key=len)
    parent = {}
    for i, c in enumerate(clusters):
        above = [j for j in range(i + 1, len(clusters)) if c < clusters[j]]
        parent[i] = min(above, key=lambda j: len(clusters[j])) if above else -1
    n = len(clusters)
    marks = []
    for i, c in enumerate(clusters):
        kids = [clusters[j] for j in range(n) if parent[j] == i]
        marks.append(c - frozenset().union(*kids) if kids else c)
    top = [clusters[j] for j in range(n) if parent[j] == -1]
    marks.append(labels - frozenset().union(*top) if top else labels)
    root = n
    edges = [(i, parent[i] if parent[i] >= 0 else root) for i in range(n)]
    return MarkedTree(tuple(marks), edges)


@dataclass
class StratumRecord:
    tree: MarkedTree
    stable: bool = True
    subtype: str | None = None
    status: str = ""
    name: str | None = None
    reason: str = ""
    p_lower: str = ""
    p_upper: tuple[str, ...] = ()
    witness: dict = field(default_factory=dict)

    @property
    def blocks(self) -> tuple[frozenset, ...]:
        return self.tree.blocks()

    @property
    def partition(self) -> str:
        return self.tree.partition_str()

    @property
    def codimension(self) -> int:
        return len(self.tree.edges)

    def to_json(self) -> dict:
        return {
            "partition": self.partition,
            "blocks": [_sorted(b) for b in self.blocks],
            "codimension": self.codimension,
            "stable": self.stable,
            "subtype": self.subtype,
            "status": self.status,
            "name": self.name,
            "reason": self.reason,
            "p_L": self.p_lower,
            "p_U": list(self.p_upper),
            "witness": self.witness,
        }


def enumerate_boundary_strata(labels=RANGE_LABELS) -> list[StratumRecord]:
    """All boundary strata: nonempty sets of pairwise compatible splits."""
    labels = frozenset(labels)
    if len(labels) not in (4, 5):
        raise ValueError(f"supported label counts are 4 and 5, got {len(labels)}")
    ref = _sorted(labels)[0]
    rest = [s for s in _sorted(labels) if s != ref]
    candidates = []
    for k in range(2, len(labels) - 1):
        for c in itertools.combinations(rest, k):
            candidates.append(frozenset(c))
    out = []
    for r in range(1, len(labels) - 2):
        for combo in itertools.combinations(candidates, r):
            if all(_compatible(a, b, labels) for a, b in itertools.combinations(combo, 2)):
                t = tree_from_splits(labels, combo)
                rec = StratumRecord(t, is_stable(t))
                if len(labels) == 5 and len(t.marks) == 2:
                    rec.subtype = classify_type2(rec)
                out.append(rec)
    out.sort(key=lambda s: (s.codimension, s.partition))
    return out


# --- type (2) classification ----------------------------------------------------

def classify_type2(s) -> str:
    """Subtype of a two-component stratum of the five-label space, from where z and inf sit."""
    tree = s.tree if isinstance(s, StratumRecord) else s
    if tree.labels != frozenset(RANGE_LABELS) or len(tree.marks) != 2:
        raise ValueError("classify_type2 needs a two-component stratum with labels 0,1,inf,y,z")
    bz = next(b for b in tree.marks if "z" in b)
    binf = next(b for b in tree.marks if "inf" in b)
    if bz is binf:
        return "2b" if len(bz) == 3 else "2c"
    return "2a" if len(bz) == 3 else "2d"


# --- admissible double covers -----------------------------------------------------

@dataclass
class CoverCombinatorics:
    """A degree-2 admissible cover over a range tree, with one placement of the domain marks.

    Domain components are (range vertex, sheet); a ramified range vertex has
    a single sheet 0, an unramified one has sheets 1 and 2.
    """

    range_tree: MarkedTree
    ramified: frozenset
    branched_edges: frozenset
    components: tuple
    edges: tuple
    marks: dict  # domain component -> set of domain labels
    degrees: dict  # domain component -> degree over its range component

    def domain_tree(self) -> MarkedTree:
        index = {c: i for i, c in enumerate(self.components)}
        return MarkedTree(tuple(frozenset(self.marks.get(c, ())) for c in self.components),
                          [(index[a], index[b]) for a, b in self.edges])

    def check(self) -> bool:
        """Degree 2 over every range component, and nodes over nodes."""
        for v in range(len(self.range_tree.marks)):
            if sum(d for c, d in self.degrees.items() if c[0] == v) != 2:
                return False
        for a, b in self.edges:
            if frozenset((a[0], b[0])) not in self.range_tree.edges:
                return False
        return True


def _critical_vertex(t: MarkedTree, label: str) -> int:
    return next(v for v, m in enumerate(t.marks) if label in m)


def _path(t: MarkedTree, a: int, b: int) -> list[int]:
    prev = {a: None}
    stack = [a]
    while stack:
        v = stack.pop()
        for w in t.neighbors(v):
            if w not in prev:
                prev[w] = v
                stack.append(w)
    out = [b]
    while out[-1] != a:
        out.append(prev[out[-1]])
    return out[::-1]


def double_covers(t: MarkedTree) -> list[CoverCombinatorics]:
    """Admissible degree-2 covers over t branched at inf and z, one per placement of marks.

    Nodes on the path between the two critical values are branched; the cover
    is connected over the vertices of that path and splits into two sheets
    elsewhere. Placements differing by a sheet swap over a whole hanging
    subtree give isomorphic covers and are listed once.
    """
    path = _path(t, _critical_vertex(t, "inf"), _critical_vertex(t, "z"))
    ramified = frozenset(path)
    branched = frozenset(frozenset((a, b)) for a, b in zip(path, path[1:]))
    comps: list = []
    for v in range(len(t.marks)):
        comps.extend([(v, 0)] if v in ramified else [(v, 1), (v, 2)])
    edges = []
    for e in t.edges:
        a, b = sorted(e)
        if a in ramified and b in ramified:
            edges.append(((a, 0), (b, 0)))
        elif a in ramified or b in ramified:
            r, u = (a, b) if a in ramified else (b, a)
            edges += [((r, 0), (u, 1)), ((r, 0), (u, 2))]
        else:
            edges += [((a, 1), (b, 1)), ((a, 2), (b, 2))]
    degrees = {c: 2 if c[1] == 0 else 1 for c in comps}
    # hanging subtrees: connected pieces of the unramified vertices
    hanging = _components_of(t, [v for v in range(len(t.marks)) if v not in ramified])
    free = [lab for lab in DOMAIN_LABELS if _vertex_of(t, F_ON_MARKS[lab]) not in ramified]
    fixed = [((_vertex_of(t, F_ON_MARKS[lab]), 0), lab)
             for lab in DOMAIN_LABELS if _vertex_of(t, F_ON_MARKS[lab]) in ramified]
    out, seen = [], set()
    for choice in itertools.product((1, 2), repeat=len(free)):
        marks: dict = {}
        for c, lab in fixed:
            marks.setdefault(c, set()).add(lab)
        for lab, sheet in zip(free, choice):
            marks.setdefault((_vertex_of(t, F_ON_MARKS[lab]), sheet), set()).add(lab)
        sig = _placement_signature(marks, hanging)
        if sig in seen:
            continue
        seen.add(sig)
        out.append(CoverCombinatorics(t, ramified, branched, tuple(comps), tuple(edges),
                                      marks, degrees))
    return out


def _vertex_of(t: MarkedTree, label: str) -> int:
    return next(v for v, m in enumerate(t.marks) if label in m)


def _components_of(t: MarkedTree, verts) -> list[frozenset]:
    left, out = set(verts), []
    while left:
        v = left.pop()
        comp, stack = {v}, [v]
        while stack:
            u = stack.pop()
            for w in t.neighbors(u):
                if w in left:
                    left.discard(w)
                    comp.add(w)
                    stack.append(w)
        out.append(frozenset(comp))
    return out


def _placement_signature(marks: dict, hanging) -> tuple:
    sig = []
    for piece in hanging:
        s1 = frozenset((v, lab) for (v, sh), labs in marks.items() if v in piece and sh == 1
                       for lab in labs)
        s2 = frozenset((v, lab) for (v, sh), labs in marks.items() if v in piece and sh == 2
                       for lab in labs)
        sig.append(frozenset((s1, s2)))
    return tuple(sig)


def p_lower(t: MarkedTree) -> MarkedTree:
    """Forget z on the range curve, read y as x, stabilize."""
    return stabilize(t.forget({"z"}).relabel({"y": "x"}))


def p_upper_images(t: MarkedTree) -> list[MarkedTree]:
    """Stabilized domain curves over t, one per admissible cover."""
    out = []
    for cover in double_covers(t):
        img = stabilize(cover.domain_tree())
        if img not in out:
            out.append(img)
    return out


# --- cross ratios -------------------------------------------------------------

def _lift(a):
    if a is INF:
        return (Fraction(1), Fraction(0))
    if isinstance(a, int):
        a = Fraction(a)
    return (a, Fraction(1))


def _det(p, q):
    return p[0] * q[1] - p[1] * q[0]


def cross_ratio(a, b, c, d, with_flag: bool = False):
    """[a,b;c,d] = (a-c)(b-d) / ((b-c)(a-d)), with inf handled by projective lifts.

    Values may be rationals, INF, or rational functions. Two coincident
    arguments give a degenerate value in {0, 1, inf}; three or more raise.
    """
    pts = [_lift(v) for v in (a, b, c, d)]
    same = [(i, j) for i, j in itertools.combinations(range(4), 2) if _det(pts[i], pts[j]) == 0]
    coincident = {i for pair in same for i in pair}
    if len(coincident) >= 3 and not (len(same) == 2 and len(coincident) == 4):
        raise ValueError("cross ratio undefined: three or more points coincide")
    pa, pb, pc, pd = pts
    num = _det(pa, pc) * _det(pb, pd)
    den = _det(pb, pc) * _det(pa, pd)
    if den == 0 and num == 0:
        raise ValueError("cross ratio undefined for this coincidence pattern")
    value = INF if den == 0 else num / den
    return (value, bool(same)) if with_flag else value


def mobius(a, b, c, d, t):
    """(a t + b)/(c t + d) on the extended line."""
    if t is INF:
        return INF if c == 0 else Fraction(a) / c
    den = c * t + d
    return INF if den == 0 else (a * t + b) / den


# --- the equalizer --------------------------------------------------------------

def _two_c_witness() -> dict:
    x = RatExpr.X()
    lhs = cross_ratio(Fraction(0), INF, Fraction(1), x)
    rhs = cross_ratio(INF, Fraction(1), x, Fraction(0))
    diff = lhs - rhs
    roots = [r for r, _ in exact_roots(UniPoly(diff.num.x_coeff_list(), "x"))]
    return {
        "equation": "[0,inf;1,x] = [inf,1;x,0]",
        "lhs": lhs.to_str(), "rhs": rhs.to_str(),
        "solutions": [format_scalar(r) for r in roots],
        "flagged": bool(roots),
    }


A1 = MarkedTree.chain({"inf", "y", "z"}, {"0", "1"})
A2 = MarkedTree.chain({"0", "1", "z"}, {"y", "inf"})
CORNER = MarkedTree.chain({"0", "1"}, {"z"}, {"y", "inf"})


def _analyze(rec: StratumRecord) -> None:
    t = rec.tree
    low = p_lower(t)
    ups = p_upper_images(t)
    rec.p_lower = low.partition_str() if not low.is_point_degenerate else "degenerate"
    rec.p_upper = tuple(u.partition_str() for u in ups)
    match = [u for u in ups if u == low and len(u.marks) > 1]
    if rec.subtype == "2c":
        rec.status = "conditional"
        rec.witness = _two_c_witness()
        rec.reason = ("both forgetful images are smooth four-point curves; they agree only where "
                      "the cross ratios match, solutions x in {" + ",".join(rec.witness["solutions"])
                      + "}")
        return
    if match:
        if t == A1:
            rec.status, rec.name = "in AV", "A1"
        elif t == A2:
            rec.status, rec.name = "in AV", "A2"
        elif t == CORNER:
            rec.status, rec.name = "in AV", "corner"
        else:
            rec.status = "conditional"
            rec.reason = ("nodal images agree combinatorially; membership also needs the "
                          "gluing data to match, which this check does not decide")
            return
        rec.reason = f"p_L = p_U = {low.partition_str()}"
        return
    if len(low.marks) == 1 and any(len(u.marks) == 1 for u in ups):
        rec.status = "excluded"
        rec.reason = ("both images lie in the open stratum, so equality is one cross-ratio "
                      "condition: at most finitely many points, not the whole stratum")
        return
    rec.status = "excluded"
    rec.reason = f"p_L gives {rec.p_lower}, p_U gives {' or '.join(rec.p_upper)}"


@dataclass
class EqualizerResult:
    admitted: list[StratumRecord]
    excluded: list[StratumRecord]
    conditional: list[StratumRecord]
    records: list[StratumRecord]

    def names(self) -> set[str]:
        return {r.name for r in self.admitted}


def equalizer_strata() -> EqualizerResult:
    """Which boundary strata of the five-label space equalize p_L and p_U."""
    recs = enumerate_boundary_strata(RANGE_LABELS)
    for r in recs:
        _analyze(r)
    return EqualizerResult(
        [r for r in recs if r.status == "in AV"],
        [r for r in recs if r.status == "excluded"],
        [r for r in recs if r.status == "conditional"],
        recs,
    )


# --- the maps from the exceptional curves ----------------------------------------

@dataclass(frozen=True)
class StratumPoint:
    stratum: str
    partition: str
    parameter: object
    configuration: dict
    cross_ratio: object
    datum: str

    def to_json(self) -> dict:
        return {
            "stratum": self.stratum, "partition": self.partition,
            "parameter": format_scalar(self.parameter),
            "configuration": {k: format_scalar(v) for k, v in self.configuration.items()},
            "cross_ratio": format_scalar(self.cross_ratio), "datum": self.datum,
        }


class DegenerateParameterError(ValueError):
    pass


def _param(value):
    if value is INF or (isinstance(value, str) and value.strip().lower() in ("inf", "oo")):
        return INF
    return as_fraction(value)


def kappa_maps(which: str, param, limits=None) -> StratumPoint:
    """kappa_inf: E_inf -> A1 and kappa_q: E_q -> A2 (with v = 1 sent to the corner)."""
    from .surface.limits import exceptional_limits

    limits = limits or exceptional_limits()
    t = _param(param)
    key = {"E_inf": "E_inf", "inf": "E_inf", "E_q": "E_q", "q": "E_q"}.get(which)
    if key is None:
        raise ValueError(f"unknown exceptional curve {which!r}")
    lim = limits[key]
    if key == "E_q" and t == 1:
        return StratumPoint("corner", CORNER.partition_str(), t, {}, None, "alpha_0")
    for d in lim.degenerate:
        if d.parameter == t:
            why = ", ".join(d.meaning) or f"limit equals {format_scalar(d.value)}"
            raise DegenerateParameterError(
                f"{lim.variable} = {format_scalar(t)} is degenerate on {key}: {why}"
            )
    if t is INF:
        raise DegenerateParameterError(f"{lim.variable} = inf is degenerate on {key}")
    zval = lim(t)
    if key == "E_inf":
        # the component carrying inf, y, z, scaled so y = 1, with the node (where 0, 1, x meet) at 0
        cfg = {"node": Fraction(0), "inf": INF, "y": Fraction(1), "z": zval}
        return StratumPoint("A1", A1.partition_str(), t, cfg,
                            cross_ratio(Fraction(0), INF, Fraction(1), zval), f"[0,inf;1,{zval}]")
    vbar = 1 / t
    cfg = {"0": Fraction(0), "1": Fraction(1), "inf": INF, "vbar": vbar, "z": zval}
    return StratumPoint("A2", A2.partition_str(), t, cfg,
                        cross_ratio(Fraction(0), Fraction(1), INF, vbar), f"[0,1;inf,{vbar}]")
