"""Parametric extremal bipartite families and containment tests.

Each family is built with a fixed canonical vertex labeling (block order
documented per builder) so that path catalogs and witnesses can address
vertices deterministically. Containment of an arbitrary graph in a family
("G is a subgraph of the family on the same parts, up to part-respecting
isomorphism") is decided by exhaustive search with degree pruning, at desk
scale only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .bigraph import BipartiteGraph, build
from .errors import InvalidFamilyParams, TooLarge

DEFAULT_CONTAINMENT_CAP = 32  # max n_x + n_y for the exponential searches

KINDS = ("K", "M", "M-", "N1", "N2", "F")


@dataclass(frozen=True)
class FamilySpec:
    """A named family instance: kind plus its integer parameters.

    Parameter layout per kind:
      K:  (s, t)          complete bipartite
      M:  (n, m, s, t)    two complete blocks with one s-by-t missing block
      M-: (n, m, s, t)    M with one distinguished near-edge pattern removed
      N1: (n, p)          balanced, two complete blocks bridged by an edge pair
      N2: (n, p)          balanced, two complete blocks bridged by a non-edge pair
      F:  (n, m, k, p, l) pendant-group construction
    """

    kind: str
    params: tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidFamilyParams(f"unknown family kind {self.kind!r}")
        object.__setattr__(self, "params", tuple(int(v) for v in self.params))
        self.validate()

    # -- constructors -------------------------------------------------------

    @classmethod
    def complete(cls, s, t):
        return cls("K", (s, t))

    @classmethod
    def m(cls, n, m, s, t):
        return cls("M", (n, m, s, t))

    @classmethod
    def m_minus(cls, n, m, s, t):
        return cls("M-", (n, m, s, t))

    @classmethod
    def n1(cls, n, p):
        return cls("N1", (n, p))

    @classmethod
    def n2(cls, n, p):
        return cls("N2", (n, p))

    @classmethod
    def f(cls, n, m, k, p, l):
        return cls("F", (n, m, k, p, l))

    # -- validation ----------------------------------------------------------

    def validate(self):
        req = _REQUIREMENTS[self.kind]
        if len(self.params) != req[0]:
            raise InvalidFamilyParams(
                f"{self.kind} takes {req[0]} parameters, got {len(self.params)}"
            )
        for name, ok in req[1](*self.params):
            if not ok:
                raise InvalidFamilyParams(f"{self.kind}{self.params}: requires {name}")

    @property
    def part_sizes(self):
        if self.kind == "K":
            s, t = self.params
            return (s, t)
        if self.kind in ("M", "M-"):
            n, m, _, _ = self.params
            return (n, m)
        if self.kind in ("N1", "N2"):
            n, _ = self.params
            return (n, n)
        n, m, _, _, _ = self.params
        return (n, m)

    # -- text form used by the CLI: e.g. "M:6,6,4,2" --------------------------

    def format(self) -> str:
        return f"{self.kind}:" + ",".join(str(v) for v in self.params)

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        text = text.strip()
        if ":" not in text:
            raise InvalidFamilyParams(f"cannot parse family spec {text!r}")
        kind, _, rest = text.partition(":")
        if kind not in KINDS:
            raise InvalidFamilyParams(f"unknown family kind {kind!r}")
        try:
            params = tuple(int(v) for v in rest.split(","))
        except ValueError:
            raise InvalidFamilyParams(f"non-integer parameter in {text!r}") from None
        return cls(kind, params)

    def __str__(self):
        return self.format()


_REQUIREMENTS = {
    "K": (2, lambda s, t: [("s >= 0", s >= 0), ("t >= 0", t >= 0)]),
    "M": (
        4,
        lambda n, m, s, t: [
            ("0 <= s <= n", 0 <= s <= n),
            ("0 <= t <= m", 0 <= t <= m),
        ],
    ),
    "M-": (
        4,
        lambda n, m, s, t: [
            ("1 <= s <= n", 1 <= s <= n),
            ("0 <= t <= m-1", 0 <= t <= m - 1),
        ],
    ),
    "N1": (2, lambda n, p: [("p >= 0", p >= 0), ("n >= p+3", n >= p + 3)]),
    "N2": (2, lambda n, p: [("p >= 0", p >= 0), ("n >= p+4", n >= p + 4)]),
    "F": (
        5,
        lambda n, m, k, p, l: [
            ("p >= 0", p >= 0),
            ("k >= p+2", k >= p + 2),
            ("0 <= l <= k-1", 0 <= l <= k - 1),
            ("n >= (k-p)(k-l)+l", n >= (k - p) * (k - l) + l),
            ("n-1 <= m <= n", n - 1 <= m <= n),
        ],
    ),
}


# -- builders ----------------------------------------------------------------


def family_blocks(spec: FamilySpec):
    """Canonical index ranges of the labeled blocks, per part.

    Returns {"X": [(name, range)...], "Y": [(name, range)...]} in labeling
    order; builders lay vertices out in exactly this order.
    """
    k_ = spec.kind
    if k_ == "K":
        s, t = spec.params
        return {"X": [("x", range(s))], "Y": [("y", range(t))]}
    if k_ == "M":
        n, m, s, t = spec.params
        return {
            "X": [("x1", range(s)), ("x2", range(s, n))],
            "Y": [("y1", range(m - t)), ("y2", range(m - t, m))],
        }
    if k_ == "M-":
        n, m, s, t = spec.params
        return {
            "X": [("x1", range(s - 1)), ("xu", range(s - 1, s)), ("x3", range(s, n))],
            "Y": [
                ("y1", range(m - t - 1)),
                ("yv", range(m - t - 1, m - t)),
                ("y3", range(m - t, m)),
            ],
        }
    if k_ in ("N1", "N2"):
        n, p = spec.params
        a = n - p - 2 if k_ == "N1" else n - p - 3
        b = p + 1 if k_ == "N1" else p + 2
        return {
            "X": [("x1", range(a)), ("x2", range(a, a + b)), ("x3", range(a + b, n))],
            "Y": [("y1", range(a)), ("y2", range(a, a + b)), ("y3", range(a + b, n))],
        }
    n, m, k, p, l = spec.params
    h = k - p
    t0 = n - (k - p) * (k - l) - l
    blocks_x = [("xt", range(t0)), ("xl", range(t0, t0 + l))]
    pos = t0 + l
    for i in range(1, h + 1):
        blocks_x.append((f"xp{i}", range(pos, pos + (k - l))))
        pos += k - l
    return {
        "X": blocks_x,
        "Y": [("y1", range(m - k + p)), ("yd", range(m - k + p, m))],
    }


def build_family(spec: FamilySpec) -> BipartiteGraph:
    """Build the family instance with its canonical labeling."""
    n_x, n_y = spec.part_sizes
    blocks = family_blocks(spec)
    bx = {name: rng for name, rng in blocks["X"]}
    by = {name: rng for name, rng in blocks["Y"]}
    edges = []

    def join(xs, ys):
        edges.extend((x, y) for x in xs for y in ys)

    if spec.kind == "K":
        join(bx["x"], by["y"])
    elif spec.kind == "M":
        join(bx["x1"], by["y1"])
        join(bx["x2"], by["y1"])
        join(bx["x2"], by["y2"])
    elif spec.kind == "M-":
        join(bx["x1"], by["y1"])
        join(bx["xu"], by["y1"])
        join(bx["xu"], by["yv"])
        join(bx["x3"], by["y1"])
        join(bx["x3"], by["yv"])
        join(bx["x3"], by["y3"])
    elif spec.kind == "N1":
        join(bx["x1"], by["y1"])
        join(bx["x1"], by["y2"])
        join(bx["x2"], by["y1"])
        join(bx["x2"], by["y2"])
        join(bx["x2"], by["y3"])
        join(bx["x3"], by["y2"])
        join(bx["x3"], by["y3"])
    elif spec.kind == "N2":
        join(bx["x1"], by["y1"])
        join(bx["x1"], by["y2"])
        join(bx["x2"], by["y1"])
        join(bx["x2"], by["y2"])
        join(bx["x2"], by["y3"])
        join(bx["x3"], by["y2"])
    else:  # F
        n, m, k, p, l = spec.params
        h = k - p
        all_x = range(n_x)
        join(all_x, by["y1"])
        yd = list(by["yd"])
        join(bx["xl"], yd)
        for i in range(1, h + 1):
            join(bx[f"xp{i}"], [yd[i - 1]])
    return build(n_x, n_y, edges)


@dataclass(frozen=True)
class ClosedFormCount:
    """Edge count with its provenance: a stated closed form or block arithmetic."""

    value: int
    source: str  # "quoted" or "derived"


def closed_form_edge_count(spec: FamilySpec) -> ClosedFormCount:
    """Edge count from the block structure, without building the graph.

    Instances covered by a stated closed form are flagged "quoted"; the
    rest ("M-", "F", "N2", generic "M", "K") are flagged "derived".
    """
    k_ = spec.kind
    if k_ == "K":
        s, t = spec.params
        return ClosedFormCount(s * t, "derived")
    if k_ == "M":
        n, m, s, t = spec.params
        value = n * (m - t) + (n - s) * t
        quoted = (m == n and s + t <= n) or (m == n - 1 and (s == 1 or s + t <= n - 1))
        return ClosedFormCount(value, "quoted" if quoted else "derived")
    if k_ == "M-":
        n, m, s, t = spec.params
        return ClosedFormCount(n * (m - t) + (n - s) * t - (s - 1), "derived")
    if k_ == "N1":
        n, p = spec.params
        return ClosedFormCount(n * n - 2 * n + 2 * p + 4, "quoted")
    if k_ == "N2":
        n, p = spec.params
        return ClosedFormCount(n * n - 2 * n + 2 * p + 5, "derived")
    n, m, k, p, l = spec.params
    return ClosedFormCount(
        n * (m - k + p) + l * (k - p) + (k - p) * (k - l), "derived"
    )


# -- containment ---------------------------------------------------------------


@dataclass(frozen=True)
class ContainmentWitness:
    """An s-by-t edge-free block certifying containment in an M-family.

    With swapped=False, x_hole has size s and y_hole size t. With
    swapped=True the embedding exchanged the parts (only attempted on
    balanced graphs): x_hole has size t and y_hole size s. Either way both
    holes index the tested graph's own parts and span no edge.
    """

    x_hole: tuple
    y_hole: tuple
    swapped: bool = False


def contained_in_M(
    g: BipartiteGraph,
    s: int,
    t: int,
    allow_part_swap: bool = True,
    size_cap: int = DEFAULT_CONTAINMENT_CAP,
):
    """Witness that G fits inside M_{n_x,n_y}^{s,t}, or None.

    Containment holds exactly when some s-set of X and t-set of Y span no
    edge, i.e. the bipartite complement contains a complete s-by-t block.
    The hole is seeded with lowest-degree vertices first.
    """
    if not 0 <= s <= g.n_x or not 0 <= t <= g.n_y:
        raise InvalidFamilyParams(f"hole sizes ({s},{t}) exceed parts ({g.n_x},{g.n_y})")
    if g.total_vertices > size_cap:
        raise TooLarge(f"{g.total_vertices} vertices exceed the containment cap {size_cap}")
    found = _find_hole(g, s, t)
    if found is not None:
        return ContainmentWitness(found[0], found[1], swapped=False)
    if allow_part_swap and g.n_x == g.n_y and s != t:
        found = _find_hole(g.transpose(), s, t)
        if found is not None:
            # holes are reported against g's own parts
            return ContainmentWitness(found[1], found[0], swapped=True)
    return None


def _find_hole(g: BipartiteGraph, s: int, t: int):
    """First (x_set, y_set) spanning no edge, lowest-degree-first order."""
    if s == 0 or t == 0:
        order_x = _degree_order(g, "X")
        order_y = _degree_order(g, "Y")
        return tuple(sorted(order_x[:s])), tuple(sorted(order_y[:t]))
    if comb(g.n_y, t) <= comb(g.n_x, s):
        order_y = _degree_order(g, "Y")
        order_x = _degree_order(g, "X")
        for combo in itertools.combinations(order_y, t):
            y_mask = 0
            for j in combo:
                y_mask |= 1 << j
            free = [i for i in order_x if g.rows[i] & y_mask == 0]
            if len(free) >= s:
                return tuple(sorted(free[:s])), tuple(sorted(combo))
        return None
    cols = g.columns()
    order_x = _degree_order(g, "X")
    order_y = _degree_order(g, "Y")
    for combo in itertools.combinations(order_x, s):
        x_mask = 0
        for i in combo:
            x_mask |= 1 << i
        free = [j for j in order_y if cols[j] & x_mask == 0]
        if len(free) >= t:
            return tuple(sorted(combo)), tuple(sorted(free[:t]))
    return None


def _degree_order(g: BipartiteGraph, part: str):
    if part == "X":
        return sorted(range(g.n_x), key=lambda i: (g.rows[i].bit_count(), i))
    cols = g.columns()
    return sorted(range(g.n_y), key=lambda j: (cols[j].bit_count(), j))


def contained_in_family(
    g: BipartiteGraph,
    spec: FamilySpec,
    allow_part_swap: bool = True,
    size_cap: int = DEFAULT_CONTAINMENT_CAP,
) -> bool:
    """Decide whether G embeds part-preservingly into the family instance.

    The embedding must be injective on each part and map every G-edge to a
    family edge. When allow_part_swap is set and G is balanced, the mirrored
    embedding is also attempted.
    """
    if g.total_vertices > size_cap:
        raise TooLarge(f"{g.total_vertices} vertices exceed the containment cap {size_cap}")
    host = build_family(spec)
    if _embeds(g, host):
        return True
    if allow_part_swap and g.n_x == g.n_y:
        return _embeds(g.transpose(), host)
    return False


def isomorphic_to_family(
    g: BipartiteGraph, spec: FamilySpec, allow_part_swap: bool = True
) -> bool:
    """Part-respecting isomorphism test against a family instance.

    Equal part sizes plus equal edge count make any edge-preserving
    injective embedding bijective and edge-surjective, so one containment
    direction plus the edge-count match decides isomorphism.
    """
    host_sizes = spec.part_sizes
    sizes_match = (g.n_x, g.n_y) == host_sizes or (
        allow_part_swap and (g.n_y, g.n_x) == host_sizes
    )
    if not sizes_match:
        return False
    if g.edge_count != closed_form_edge_count(spec).value:
        return False
    return contained_in_family(g, spec, allow_part_swap=allow_part_swap)


def _embeds(g: BipartiteGraph, host: BipartiteGraph) -> bool:
    """Injective part-preserving embedding search, host twins collapsed."""
    if g.n_x > host.n_x or g.n_y > host.n_y:
        return False

    x_classes = host.x_twin_classes()  # members share a neighborhood bitmask
    y_classes = host.y_twin_classes()
    host_cols = host.columns()
    x_class_mask = [host.rows[cl[0]] for cl in x_classes]
    x_class_cap = [len(cl) for cl in x_classes]
    x_class_deg = [m.bit_count() for m in x_class_mask]
    y_class_mask = [host_cols[cl[0]] for cl in y_classes]
    y_class_cap = [len(cl) for cl in y_classes]
    # adjacency between host classes: y-class cj touches x-class ci
    y_adj_x = [
        [bool(y_class_mask[cj] & (1 << x_classes[ci][0])) for ci in range(len(x_classes))]
        for cj in range(len(y_classes))
    ]

    g_cols = g.columns()
    g_x_order = sorted(range(g.n_x), key=lambda i: (-g.rows[i].bit_count(), i))
    assign = [-1] * g.n_x  # g x-vertex -> host x-class

    def y_side_feasible() -> bool:
        # each g y-vertex needs a host y-class adjacent to all classes its
        # g-neighbors occupy; capacities make the choice injective
        allowed = []
        for j in range(g.n_y):
            used = {assign[i] for i in range(g.n_x) if (g_cols[j] >> i) & 1}
            opts = [
                cj
                for cj in range(len(y_classes))
                if all(y_adj_x[cj][ci] for ci in used)
            ]
            if not opts:
                return False
            allowed.append(opts)
        return _capacity_matching(allowed, y_class_cap)

    def place(pos: int) -> bool:
        if pos == len(g_x_order):
            return y_side_feasible()
        i = g_x_order[pos]
        need = g.rows[i].bit_count()
        for ci in range(len(x_classes)):
            if x_class_cap[ci] == 0 or x_class_deg[ci] < need:
                continue
            assign[i] = ci
            x_class_cap[ci] -= 1
            if place(pos + 1):
                return True
            x_class_cap[ci] += 1
            assign[i] = -1
        return False

    return place(0)


def _capacity_matching(allowed, caps) -> bool:
    """Can every item pick one of its allowed bins within bin capacities?"""
    slot_bin = [b for b, c in enumerate(caps) for _ in range(c)]
    taken_by = [-1] * len(slot_bin)
    allowed_sets = [frozenset(a) for a in allowed]

    def augment(item, seen) -> bool:
        for si, b in enumerate(slot_bin):
            if si in seen or b not in allowed_sets[item]:
                continue
            seen.add(si)
            if taken_by[si] == -1 or augment(taken_by[si], seen):
                taken_by[si] = item
                return True
        return False

    for item in sorted(range(len(allowed)), key=lambda i: len(allowed[i])):
        if not augment(item, set()):
            return False
    return True
