"""Graph family constructors and the family-spec mini-language.

Spec strings name graphs canonically:

    cycle:N | path:N | complete:N | empty:N
    kite:r=R,s=S
    ring:r=R,d=D | ringplus:r=R,d=D
    rr:n=N,d=D,seed=S          (seed optional, defaults to 0)
    cart:CHILD,CHILD | lex:CHILD,CHILD
    file:PATH                  (terminal: PATH runs to end of string)

`parse_family` / `canonical_name` round-trip; `build_family` constructs
the graph (plus a ring descriptor where applicable).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from perronlab.errors import (
    GenerationFailed,
    InvalidParameters,
    InvalidSize,
    ParseError,
)
from perronlab.graph import Edge, Graph, add_edge, is_connected, read_edge_list


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidSize(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise InvalidSize(f"path needs n >= 1, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    if n < 1:
        raise InvalidSize(f"complete graph needs n >= 1, got {n}")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def edgeless(n: int) -> Graph:
    if n < 1:
        raise InvalidSize(f"edgeless graph needs n >= 1, got {n}")
    return Graph.from_edges(n, [])


_ATOMIC = {"cycle": cycle, "path": path, "complete": complete, "empty": edgeless}


def atomic(kind: str, size: int) -> Graph:
    try:
        ctor = _ATOMIC[kind]
    except KeyError:
        raise InvalidParameters(f"unknown atomic family {kind!r}") from None
    return ctor(size)


def kite(r: int, s: int) -> Graph:
    """Path of r vertices whose last vertex is absorbed into a clique of s.

    Vertices 0..r-1 form the path (0 is the pendant end); vertices
    r-1..r+s-2 form the clique.  n = r + s - 1.
    """
    if r < 1:
        raise InvalidSize(f"kite needs r >= 1, got r={r}")
    if s < 2:
        raise InvalidSize(f"kite needs s >= 2, got s={s}")
    edges = [(i, i + 1) for i in range(r - 1)]
    edges += [
        (i, j) for i in range(r - 1, r + s - 1) for j in range(i + 1, r + s - 1)
    ]
    return Graph.from_edges(r + s - 1, edges)


def petersen() -> Graph:
    """3-regular graph on 10 vertices: outer 5-cycle, inner 5-star, spokes."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, 5 + i) for i in range(5)]
    return Graph.from_edges(10, edges)


def cartesian_product(h: Graph, g: Graph) -> Graph:
    """(a,v) ~ (b,w) iff (a=b and v~w) or (a~b and v=w); index a*|V(g)|+v."""
    ng = g.n
    edges = []
    for a in range(h.n):
        base = a * ng
        for v in range(ng):
            for w in g.adj[v]:
                if w > v:
                    edges.append((base + v, base + w))
    for a in range(h.n):
        for b in h.adj[a]:
            if b > a:
                edges.extend((a * ng + v, b * ng + v) for v in range(ng))
    return Graph.from_edges(h.n * ng, edges)


def lexicographic_product(h: Graph, g: Graph) -> Graph:
    """(a,v) ~ (b,w) iff a~b, or a=b and v~w; index a*|V(g)|+v."""
    ng = g.n
    edges = []
    for a in range(h.n):
        base = a * ng
        for v in range(ng):
            for w in g.adj[v]:
                if w > v:
                    edges.append((base + v, base + w))
    for a in range(h.n):
        for b in h.adj[a]:
            if b > a:
                edges.extend(
                    (a * ng + v, b * ng + w) for v in range(ng) for w in range(ng)
                )
    return Graph.from_edges(h.n * ng, edges)


@dataclass(frozen=True, eq=False)
class RingDescriptor:
    """A d-regular ring-with-gadget graph and its labeled anatomy.

    Layers L_{-r}..L_r are cliques of size d-1 chained by matchings; the
    gadget (two modified (d+1)-cliques plus two pendant connectors) closes
    both ends so every vertex has degree d.  `e_star` is the designated
    non-edge inside the first gadget clique whose endpoints sit at
    distance 2.
    """

    r: int
    d: int
    graph: Graph
    layer_map: dict[int, tuple[int, ...]]
    gadget: dict[str, int]
    e_star: Edge

    @property
    def n(self) -> int:
        return self.graph.n

    def layer_vertices(self, j: int) -> tuple[int, ...]:
        return self.layer_map[j]

    def switching_permutation(self) -> np.ndarray:
        """Automorphism negating the layer index and swapping the two
        gadget sides; fixes the rest of the gadget pointwise."""
        perm = np.arange(self.graph.n, dtype=np.int64)
        for j in range(-self.r, self.r + 1):
            src = self.layer_map[j]
            dst = self.layer_map[-j]
            for a, b in zip(src, dst):
                perm[a] = b
        swaps = [("w1", "w2"), ("H1[1]", "H1[2]"), ("H1[3]", "H1[4]"), ("H2[1]", "H2[2]")]
        for a, b in swaps:
            perm[self.gadget[a]] = self.gadget[b]
            perm[self.gadget[b]] = self.gadget[a]
        return perm


def ring(r: int, d: int) -> RingDescriptor:
    """Construct the d-regular ring gadget graph with 2r+1 layers.

    n = (2r+1)(d-1) + 2 + 2(d+1).  Index layout: layer j occupies
    (j+r)(d-1)..(j+r)(d-1)+d-2, then w1, w2, then H1[1..d+1], H2[1..d+1].
    """
    if r < 1:
        raise InvalidParameters(f"ring needs r >= 1, got r={r}")
    if d < 3:
        raise InvalidParameters(f"ring needs d >= 3, got d={d}")
    width = d - 1
    core_n = (2 * r + 1) * width
    layer_map = {
        j: tuple((j + r) * width + i for i in range(width))
        for j in range(-r, r + 1)
    }
    w1 = core_n
    w2 = core_n + 1
    h1 = {k: core_n + 2 + (k - 1) for k in range(1, d + 2)}
    h2 = {k: core_n + 2 + (d + 1) + (k - 1) for k in range(1, d + 2)}
    n = core_n + 2 + 2 * (d + 1)

    edges = []
    for j in range(-r, r + 1):
        layer = layer_map[j]
        edges += [(layer[a], layer[b]) for a in range(width) for b in range(a + 1, width)]
        if j < r:
            after = layer_map[j + 1]
            edges += [(layer[i], after[i]) for i in range(width)]

    # first gadget clique: drop {1,2} and {3,4}
    edges += [
        (h1[a], h1[b])
        for a in range(1, d + 2)
        for b in range(a + 1, d + 2)
        if (a, b) not in ((1, 2), (3, 4))
    ]
    # second gadget clique: drop {1,2}
    edges += [
        (h2[a], h2[b])
        for a in range(1, d + 2)
        for b in range(a + 1, d + 2)
        if (a, b) != (1, 2)
    ]
    # cross edges restore degree d on the trimmed clique vertices
    edges += [(h2[1], h1[3]), (h2[2], h1[4])]
    # pendant connectors: w1 hangs off h1[1] and fans into the left end layer
    edges += [(w1, h1[1]), (w2, h1[2])]
    edges += [(w1, v) for v in layer_map[-r]]
    edges += [(w2, v) for v in layer_map[r]]

    g = Graph.from_edges(n, edges)
    gadget = {"w1": w1, "w2": w2, "u1": h1[1], "u2": h1[2]}
    gadget.update({f"H1[{k}]": h1[k] for k in range(1, d + 2)})
    gadget.update({f"H2[{k}]": h2[k] for k in range(1, d + 2)})
    return RingDescriptor(
        r=r, d=d, graph=g, layer_map=layer_map, gadget=gadget,
        e_star=Edge(h1[3], h1[4]),
    )


def ring_plus_e(r: int, d: int) -> tuple[RingDescriptor, Graph]:
    """Ring descriptor together with the graph after inserting e_star."""
    desc = ring(r, d)
    return desc, add_edge(desc.graph, desc.e_star)


def random_regular(n: int, d: int, seed: int, max_retries: int = 500) -> Graph:
    """Random d-regular graph via the pairing model.

    Draws perfect matchings on n*d stubs until the projected multigraph is
    simple and connected; deterministic for a fixed seed.
    """
    if n < 2 or d < 1 or d >= n:
        raise InvalidParameters(f"need 2 <= d+1 <= n and d >= 1, got n={n}, d={d}")
    if (n * d) % 2:
        raise InvalidParameters(f"n*d must be even, got n={n}, d={d}")
    rng = np.random.default_rng(seed)
    for _ in range(max_retries):
        stubs = rng.permutation(n * d) // d
        pairs = stubs.reshape(-1, 2)
        if (pairs[:, 0] == pairs[:, 1]).any():
            continue
        lo = np.minimum(pairs[:, 0], pairs[:, 1])
        hi = np.maximum(pairs[:, 0], pairs[:, 1])
        keys = lo * n + hi
        if np.unique(keys).size != keys.size:
            continue
        g = Graph.from_edges(n, [(int(a), int(b)) for a, b in zip(lo, hi)])
        if is_connected(g):
            return g
    raise GenerationFailed(
        f"no simple connected d-regular graph found in {max_retries} draws "
        f"(n={n}, d={d}, seed={seed})"
    )


@dataclass(frozen=True)
class FamilySpec:
    """Parsed family string: a kind plus parameters (ints, a path, or
    child FamilySpec nodes for products)."""

    kind: str
    params: tuple

    def __str__(self) -> str:
        return canonical_name(self)


@dataclass(frozen=True)
class BuiltGraph:
    graph: Graph
    spec: FamilySpec
    ring: RingDescriptor | None = None


_KEYED = {
    "kite": (("r", True), ("s", True)),
    "ring": (("r", True), ("d", True)),
    "ringplus": (("r", True), ("d", True)),
    "rr": (("n", True), ("d", True), ("seed", False)),
}
_PRODUCTS = ("cart", "lex")


def _read_int(s: str, pos: int) -> tuple[int, int]:
    start = pos
    while pos < len(s) and s[pos].isdigit():
        pos += 1
    if pos == start:
        raise ParseError(f"expected integer at position {start} in {s!r}")
    return int(s[start:pos]), pos


def _parse(s: str, pos: int) -> tuple[FamilySpec, int]:
    colon = s.find(":", pos)
    if colon < 0:
        raise ParseError(f"expected 'kind:...' at position {pos} in {s!r}")
    kind = s[pos:colon]
    pos = colon + 1
    if kind == "file":
        rest = s[pos:]
        if not rest:
            raise ParseError("file: requires a path")
        return FamilySpec("file", (rest,)), len(s)
    if kind in _ATOMIC:
        val, pos = _read_int(s, pos)
        return FamilySpec(kind, (val,)), pos
    if kind in _KEYED:
        vals = []
        for i, (key, required) in enumerate(_KEYED[kind]):
            prefix = key + "="
            if i > 0:
                if s.startswith("," + prefix, pos):
                    pos += 1
                elif required:
                    raise ParseError(f"{kind}: missing parameter {key!r} in {s!r}")
                else:
                    vals.append(None)
                    continue
            if not s.startswith(prefix, pos):
                raise ParseError(f"{kind}: expected '{key}=' at position {pos} in {s!r}")
            val, pos = _read_int(s, pos + len(prefix))
            vals.append(val)
        return FamilySpec(kind, tuple(vals)), pos
    if kind in _PRODUCTS:
        left, pos = _parse(s, pos)
        if pos >= len(s) or s[pos] != ",":
            raise ParseError(f"{kind}: expected ',' between factors in {s!r}")
        right, pos = _parse(s, pos + 1)
        return FamilySpec(kind, (left, right)), pos
    raise ParseError(f"unknown family kind {kind!r} in {s!r}")


def parse_family(s: str) -> FamilySpec:
    spec, pos = _parse(s.strip(), 0)
    if pos != len(s.strip()):
        raise ParseError(f"trailing text {s.strip()[pos:]!r} in family spec {s!r}")
    return spec


def canonical_name(spec: FamilySpec) -> str:
    kind = spec.kind
    if kind == "file":
        return f"file:{spec.params[0]}"
    if kind in _ATOMIC:
        return f"{kind}:{spec.params[0]}"
    if kind in _KEYED:
        keys = [k for k, _ in _KEYED[kind]]
        vals = list(spec.params)
        if kind == "rr" and vals[2] is None:
            vals[2] = 0
        parts = ",".join(f"{k}={v}" for k, v in zip(keys, vals))
        return f"{kind}:{parts}"
    if kind in _PRODUCTS:
        return f"{kind}:{canonical_name(spec.params[0])},{canonical_name(spec.params[1])}"
    raise ParseError(f"unknown family kind {kind!r}")


def build_family(spec: FamilySpec | str) -> BuiltGraph:
    if isinstance(spec, str):
        spec = parse_family(spec)
    kind = spec.kind
    if kind in _ATOMIC:
        return BuiltGraph(atomic(kind, spec.params[0]), spec)
    if kind == "kite":
        return BuiltGraph(kite(*spec.params), spec)
    if kind == "ring":
        desc = ring(*spec.params)
        return BuiltGraph(desc.graph, spec, ring=desc)
    if kind == "ringplus":
        desc, g = ring_plus_e(*spec.params)
        return BuiltGraph(g, spec, ring=desc)
    if kind == "rr":
        n, d, seed = spec.params
        return BuiltGraph(random_regular(n, d, 0 if seed is None else seed), spec)
    if kind == "cart":
        left = build_family(spec.params[0])
        right = build_family(spec.params[1])
        return BuiltGraph(cartesian_product(left.graph, right.graph), spec)
    if kind == "lex":
        left = build_family(spec.params[0])
        right = build_family(spec.params[1])
        return BuiltGraph(lexicographic_product(left.graph, right.graph), spec)
    if kind == "file":
        return BuiltGraph(read_edge_list(spec.params[0]), spec)
    raise ParseError(f"unknown family kind {kind!r}")
