"""Finite honeycomb lattices (torus or open rhombic patch).

Brick-wall integer embedding.  Unit cell ``(i, j)`` holds an A vertex and a
B vertex.  The A vertex of cell ``(i, j)`` has three edges, one of each type:

    z: A(i, j) -- B(i, j)
    x: A(i, j) -- B(i-1, j)
    y: A(i, j) -- B(i, j-1)

so every edge has exactly one A and one B endpoint.  Hexagon ``p(i, j)`` has
the cyclic vertex sequence

    A(i,j), B(i,j), A(i+1,j), B(i+1,j-1), A(i+1,j-1), B(i,j-1).

Site ids: vertices first (0..V-1), then edges (V..V+E-1).  On the torus
vertex ``A(i,j)`` is ``2*(i*l2+j)``, ``B(i,j)`` is the next id, and the edge
of type t at ``A(i,j)`` is ``3*(i*l2+j) + {z:0, x:1, y:2}[t]``.
"""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

EDGE_TYPES = ("z", "x", "y")
_OFFSETS = {"z": (0, 0), "x": (-1, 0), "y": (0, -1)}


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    a: int  # A-sublattice endpoint (vertex index)
    b: int  # B-sublattice endpoint
    kind: str


@dataclass(frozen=True)
class RegionPartition:
    v_int: frozenset
    v_bd: frozenset
    v_ext: frozenset
    e_int: frozenset
    e_bd: frozenset
    e_ext: frozenset

    @property
    def v_closed(self) -> frozenset:
        return self.v_int | self.v_bd

    @property
    def e_closed(self) -> frozenset:
        return self.e_int | self.e_bd


@dataclass(frozen=True)
class Loop:
    """A closed simple edge walk together with the region it bounds.

    ``interior_vertices`` / ``interior_edges`` are the strict interior; chords
    (interior edges with both endpoints on the loop) belong to
    ``interior_edges``.  A loop with no edges is allowed only as the boundary
    of a region covering a whole closed surface.
    """

    edges: tuple
    vertices: tuple
    interior_vertices: frozenset
    interior_edges: frozenset
    partition: RegionPartition = field(compare=False, repr=False)


@dataclass(frozen=True)
class EdgePath:
    edges: tuple
    vertices: tuple  # len(edges) + 1 entries

    @property
    def endpoints(self) -> tuple:
        return (self.vertices[0], self.vertices[-1])


class HoneycombLattice:
    """Vertices, edges and hexagons with the A/B bipartition."""

    def __init__(self, kind: str, dims: tuple, vertex_keys: Sequence, edge_keys: Sequence,
                 plaquette_keys: Sequence, resolve):
        self.kind = kind
        self.dims = tuple(dims)
        self._vkeys = list(vertex_keys)
        self._vindex = {k: i for i, k in enumerate(self._vkeys)}
        self.vertices = [k[0] for k in self._vkeys]  # sublattice tag per vertex
        self.edges: list[Edge] = []
        self._eindex = {}
        for ek in edge_keys:
            (ai, aj), t = ek
            a = self._vindex[resolve(("A", ai, aj))]
            di, dj = _OFFSETS[t]
            b = self._vindex[resolve(("B", ai + di, aj + dj))]
            self._eindex[ek] = len(self.edges)
            self.edges.append(Edge(a, b, t))
        self.plaquettes: list[tuple] = []
        self.plaquette_vertices: list[tuple] = []
        for (i, j) in plaquette_keys:
            ekeys = (
                ((i, j), "z"), ((i + 1, j), "x"), ((i + 1, j), "y"),
                ((i + 1, j - 1), "z"), ((i + 1, j - 1), "x"), ((i, j), "y"),
            )
            vkeys = (("A", i, j), ("B", i, j), ("A", i + 1, j),
                     ("B", i + 1, j - 1), ("A", i + 1, j - 1), ("B", i, j - 1))
            self.plaquettes.append(tuple(self._eindex[resolve_edge(resolve, k)] for k in ekeys))
            self.plaquette_vertices.append(tuple(self._vindex[resolve(k)] for k in vkeys))
        self._stars: list[list[int]] = [[] for _ in self.vertices]
        for idx, e in enumerate(self.edges):
            self._stars[e.a].append(idx)
            self._stars[e.b].append(idx)
        self._by_type = {}
        for idx, e in enumerate(self.edges):
            self._by_type[(e.a, e.kind)] = idx
            self._by_type[(e.b, e.kind)] = idx

    # -- counts and ids -------------------------------------------------
    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_sites(self) -> int:
        return self.n_vertices + self.n_edges

    def vertex_site(self, v: int) -> int:
        return v

    def edge_site(self, e: int) -> int:
        return self.n_vertices + e

    def site_label(self, s: int) -> str:
        if s < self.n_vertices:
            sub, i, j = self._vkeys[s]
            return f"{sub}({i},{j})"
        e = self.edges[s - self.n_vertices]
        return f"e[{self.site_label(e.a)}-{self.site_label(e.b)}]"

    def vertex_key(self, v: int) -> tuple:
        return self._vkeys[v]

    def vertex(self, sub: str, i: int, j: int) -> int:
        return self._vindex[self._resolve_key((sub, i, j))]

    def _resolve_key(self, key):
        if self.kind == "torus":
            sub, i, j = key
            return (sub, i % self.dims[0], j % self.dims[1])
        return key

    def sublattice(self, v: int) -> str:
        return self.vertices[v]

    def vertices_of(self, sub: str) -> list[int]:
        return [v for v, s in enumerate(self.vertices) if s == sub]

    # -- incidence ------------------------------------------------------
    def star(self, v: int) -> tuple:
        """Edges incident to ``v`` (s(v))."""
        return tuple(self._stars[v])

    def edge_at(self, v: int, kind: str):
        return self._by_type.get((v, kind))

    def other_end(self, e: int, v: int) -> int:
        edge = self.edges[e]
        if edge.a == v:
            return edge.b
        if edge.b == v:
            return edge.a
        raise LatticeError(f"vertex {v} is not an endpoint of edge {e}")

    def plaquette_edges(self, p: int) -> tuple:
        return self.plaquettes[p]

    def site_neighbors(self, s: int) -> list[int]:
        """Neighbours in the vertex--edge incidence graph."""
        if s < self.n_vertices:
            return [self.edge_site(e) for e in self._stars[s]]
        e = self.edges[s - self.n_vertices]
        return [e.a, e.b]

    def thicken(self, sites: Iterable[int], radius: int) -> frozenset:
        """All sites within ``radius`` incidence steps of ``sites``."""
        seen = set(sites)
        frontier = deque((s, 0) for s in seen)
        while frontier:
            s, d = frontier.popleft()
            if d == radius:
                continue
            for t in self.site_neighbors(s):
                if t not in seen:
                    seen.add(t)
                    frontier.append((t, d + 1))
        return frozenset(seen)

    def to_spec(self) -> dict:
        if self.kind == "torus":
            return {"kind": "torus", "cells": list(self.dims)}
        return {"kind": "patch", "size": list(self.dims)}

    def __repr__(self) -> str:
        return (f"HoneycombLattice({self.kind}, {self.dims}, V={self.n_vertices}, "
                f"E={self.n_edges}, P={len(self.plaquettes)})")


def resolve_edge(resolve, key):
    (i, j), t = key
    _, ri, rj = resolve(("A", i, j))
    return ((ri, rj), t)


def build_torus(l1: int, l2: int) -> HoneycombLattice:
    if l1 < 1 or l2 < 1:
        raise LatticeError("torus needs at least one cell in each direction")

    def resolve(key):
        sub, i, j = key
        return (sub, i % l1, j % l2)

    vkeys, ekeys, pkeys = [], [], []
    for i in range(l1):
        for j in range(l2):
            vkeys += [("A", i, j), ("B", i, j)]
            ekeys += [((i, j), t) for t in EDGE_TYPES]
            pkeys.append((i, j))
    return HoneycombLattice("torus", (l1, l2), vkeys, ekeys, pkeys, resolve)


def build_patch(w: int, h: int) -> HoneycombLattice:
    """Open rhombic patch made of ``w x h`` hexagons."""
    if w < 1 or h < 1:
        raise LatticeError("patch needs at least one hexagon in each direction")
    pkeys = [(i, j) for i in range(w) for j in range(h)]
    vset, eset = set(), set()
    for (i, j) in pkeys:
        vset.update([("A", i, j), ("B", i, j), ("A", i + 1, j),
                     ("B", i + 1, j - 1), ("A", i + 1, j - 1), ("B", i, j - 1)])
        eset.update([((i, j), "z"), ((i + 1, j), "x"), ((i + 1, j), "y"),
                     ((i + 1, j - 1), "z"), ((i + 1, j - 1), "x"), ((i, j), "y")])
    vkeys = sorted(vset, key=lambda k: (k[1], k[2], k[0]))
    ekeys = sorted(eset, key=lambda k: (k[0], EDGE_TYPES.index(k[1])))
    return HoneycombLattice("patch", (w, h), vkeys, ekeys, pkeys, lambda k: k)


def lattice_from_spec(spec: dict) -> HoneycombLattice:
    """``{"kind":"torus","cells":[a,b]}`` or ``{"kind":"patch","size":[w,h]}``."""
    try:
        kind = spec["kind"]
        if kind == "torus":
            a, b = spec["cells"]
            return build_torus(int(a), int(b))
        if kind == "patch":
            w, h = spec["size"]
            return build_patch(int(w), int(h))
    except (KeyError, TypeError, ValueError) as exc:
        raise LatticeError(f"bad lattice spec {spec!r}: {exc}") from exc
    raise LatticeError(f"unknown lattice kind {spec.get('kind')!r}")


# -- loops and regions -------------------------------------------------------

def _order_cycle(lat: HoneycombLattice, edges: Iterable[int]) -> tuple[tuple, tuple]:
    """Order an edge set as a single simple cycle; raise if it is not one."""
    edges = list(dict.fromkeys(edges))
    if not edges:
        return (), ()
    inc = defaultdict(list)
    for e in edges:
        inc[lat.edges[e].a].append(e)
        inc[lat.edges[e].b].append(e)
    for v, es in inc.items():
        if len(es) != 2:
            raise LatticeError(f"edges do not form a simple loop (vertex {v} has degree {len(es)})")
    start = edges[0]
    v0 = lat.edges[start].a
    order_e, order_v = [start], [v0]
    v = lat.other_end(start, v0)
    prev = start
    while v != v0:
        order_v.append(v)
        nxt = inc[v][0] if inc[v][1] == prev else inc[v][1]
        if nxt == prev:  # doubled edge; both slots equal
            raise LatticeError("degenerate loop")
        order_e.append(nxt)
        prev = nxt
        v = lat.other_end(nxt, v)
    if len(order_e) != len(edges):
        raise LatticeError("edges form more than one cycle")
    return tuple(order_e), tuple(order_v)


def _partition(lat: HoneycombLattice, loop_edges, loop_vertices, v_int, e_int) -> RegionPartition:
    all_v = frozenset(range(lat.n_vertices))
    all_e = frozenset(range(lat.n_edges))
    v_bd = frozenset(loop_vertices)
    e_bd = frozenset(loop_edges)
    v_int = frozenset(v_int)
    if v_int & v_bd:
        raise LatticeError("interior vertices overlap the loop")
    touching = frozenset(e for e in all_e if lat.edges[e].a in v_int or lat.edges[e].b in v_int)
    e_int = frozenset(e_int) | touching
    if e_int & e_bd:
        raise LatticeError("interior edges overlap the loop")
    v_ext = all_v - v_int - v_bd
    e_ext = all_e - e_int - e_bd
    for e in e_ext:
        edge = lat.edges[e]
        if edge.a in v_int or edge.b in v_int:
            raise LatticeError(f"edge {e} joins interior to exterior without crossing the loop")
    for e in e_int:
        edge = lat.edges[e]
        if edge.a in v_ext or edge.b in v_ext:
            raise LatticeError(f"interior edge {e} touches an exterior vertex")
    return RegionPartition(v_int, v_bd, v_ext, e_int, e_bd, e_ext)


def loop_from_plaquettes(lat: HoneycombLattice, plaquettes: Iterable[int]) -> Loop:
    """The loop bounding a union of hexagons; interior taken from the union."""
    plaquettes = sorted(set(plaquettes))
    count = defaultdict(int)
    for p in plaquettes:
        for e in lat.plaquettes[p]:
            count[e] += 1
    bd_edges = [e for e, c in sorted(count.items()) if c % 2 == 1]
    edges, verts = _order_cycle(lat, bd_edges)
    region_v = {v for p in plaquettes for v in lat.plaquette_vertices[p]}
    if not edges and plaquettes and len(plaquettes) != len(lat.plaquettes):
        raise LatticeError("region has empty boundary but is not the whole surface")
    v_int = region_v - set(verts)
    e_int = set(count) - set(edges)
    part = _partition(lat, edges, verts, v_int, e_int)
    return Loop(edges, verts, part.v_int, part.e_int, part)


def region_from_plaquettes(lat: HoneycombLattice, plaquettes: Iterable[int]) -> Loop:
    """Like ``loop_from_plaquettes`` but the boundary may have several
    components (e.g. two hexagons wrapping a small torus).  Boundary edges
    and vertices are then listed in index order rather than walk order."""
    plaquettes = sorted(set(plaquettes))
    try:
        return loop_from_plaquettes(lat, plaquettes)
    except LatticeError:
        pass
    count = defaultdict(int)
    for p in plaquettes:
        for e in lat.plaquettes[p]:
            count[e] += 1
    edges = tuple(e for e, c in sorted(count.items()) if c % 2 == 1)
    verts = tuple(sorted({v for e in edges for v in (lat.edges[e].a, lat.edges[e].b)}))
    region_v = {v for p in plaquettes for v in lat.plaquette_vertices[p]}
    part = _partition(lat, edges, verts, region_v - set(verts), set(count) - set(edges))
    return Loop(edges, verts, part.v_int, part.e_int, part)


def loop_from_edges(lat: HoneycombLattice, edges: Sequence[int], interior: dict | None = None) -> Loop:
    """Build a loop from its edges.

    ``interior`` may give ``{"vertices": [...], "edges": [...]}`` or
    ``{"plaquettes": [...]}``.  Without it the interior is flood-filled, which
    is only meaningful on a patch.
    """
    order_e, order_v = _order_cycle(lat, edges)
    if not order_e:
        raise LatticeError("empty loop")
    if interior is not None and "plaquettes" in interior:
        loop = loop_from_plaquettes(lat, interior["plaquettes"])
        if set(loop.edges) != set(order_e):
            raise LatticeError("plaquette interior does not match the loop")
        return loop
    if interior is None:
        if lat.kind != "patch":
            raise LatticeError("interior of a loop on a torus must be given explicitly")
        plaqs = flood_fill_interior(lat, order_e)
        return loop_from_plaquettes(lat, plaqs)
    part = _partition(lat, order_e, order_v, interior.get("vertices", ()), interior.get("edges", ()))
    return Loop(order_e, order_v, part.v_int, part.e_int, part)


def flood_fill_interior(lat: HoneycombLattice, loop_edges: Iterable[int]) -> list[int]:
    """Hexagons enclosed by a loop on a patch (those not reachable from outside)."""
    loop_edges = set(loop_edges)
    owners = defaultdict(list)
    for p, es in enumerate(lat.plaquettes):
        for e in es:
            owners[e].append(p)
    outside = deque(p for e, ps in owners.items() if len(ps) == 1 and e not in loop_edges for p in ps)
    seen = set(outside)
    while outside:
        p = outside.popleft()
        for e in lat.plaquettes[p]:
            if e in loop_edges:
                continue
            for q in owners[e]:
                if q not in seen:
                    seen.add(q)
                    outside.append(q)
    return [p for p in range(len(lat.plaquettes)) if p not in seen]


def hexagon_loop(lat: HoneycombLattice, p: int) -> Loop:
    return loop_from_plaquettes(lat, [p])


def whole_surface(lat: HoneycombLattice) -> Loop:
    """Region covering every hexagon; empty boundary on a torus."""
    return loop_from_plaquettes(lat, range(len(lat.plaquettes)))


def loop_partition(lat: HoneycombLattice, loop: Loop) -> RegionPartition:
    return _partition(lat, loop.edges, loop.vertices, loop.interior_vertices, loop.interior_edges)


# -- paths ---------------------------------------------------------------------

def path_from(lat: HoneycombLattice, v0: int, steps: Iterable[str], simple: bool = True) -> EdgePath:
    """Walk from a B vertex taking the edge of the given type at each step."""
    if lat.sublattice(v0) != "B":
        raise LatticeError("paths start on a B vertex")
    edges, verts = [], [v0]
    v = v0
    for t in steps:
        if t not in EDGE_TYPES:
            raise LatticeError(f"invalid step {t!r}")
        e = lat.edge_at(v, t)
        if e is None:
            raise LatticeError(f"no {t}-edge at vertex {v}")
        v = lat.other_end(e, v)
        if simple and (v in verts or e in edges):
            raise LatticeError("path crosses itself")
        edges.append(e)
        verts.append(v)
    return EdgePath(tuple(edges), tuple(verts))


def path_from_edges(lat: HoneycombLattice, v0: int, edges: Sequence[int]) -> EdgePath:
    verts = [v0]
    v = v0
    for e in edges:
        v = lat.other_end(e, v)
        verts.append(v)
    return EdgePath(tuple(edges), tuple(verts))


def crossing_edges(path: EdgePath, edges: Iterable[int]) -> int:
    return len(set(path.edges) & set(edges))
