import pytest
from hypothesis import given
from hypothesis import strategies as st

from setlab.lattice import (
    LatticeError,
    build_patch,
    build_torus,
    flood_fill_interior,
    hexagon_loop,
    lattice_from_spec,
    loop_from_edges,
    loop_from_plaquettes,
    path_from,
    region_from_plaquettes,
    whole_surface,
)


@pytest.mark.parametrize("l1,l2", [(1, 1), (2, 2), (3, 3), (2, 3)])
def test_torus_counts_and_regularity(l1, l2):
    lat = build_torus(l1, l2)
    assert lat.n_vertices == 2 * l1 * l2
    assert lat.n_edges == 3 * l1 * l2
    assert len(lat.plaquettes) == l1 * l2
    assert all(len(lat.star(v)) == 3 for v in range(lat.n_vertices))
    assert all(len(p) == 6 for p in lat.plaquettes)


@pytest.mark.parametrize("kind", ["torus", "patch"])
def test_bipartition(kind):
    lat = build_torus(3, 2) if kind == "torus" else build_patch(3, 2)
    for e in lat.edges:
        assert lat.sublattice(e.a) == "A" and lat.sublattice(e.b) == "B"


@pytest.mark.parametrize("w,h", [(1, 1), (2, 1), (3, 2), (2, 3)])
def test_patch_is_a_disk(w, h):
    # Euler characteristic of a disk: V - E + F = 1
    lat = build_patch(w, h)
    assert lat.n_vertices - lat.n_edges + len(lat.plaquettes) == 1
    assert len(lat.plaquettes) == w * h


def test_patch_two_hexagons():
    lat = build_patch(2, 1)
    assert (lat.n_vertices, lat.n_edges) == (10, 11)
    assert min(len(lat.star(v)) for v in range(lat.n_vertices)) == 2


def test_site_ids_are_a_bijection():
    lat = build_torus(2, 2)
    sites = [lat.vertex_site(v) for v in range(lat.n_vertices)] + [lat.edge_site(e) for e in range(lat.n_edges)]
    assert sorted(sites) == list(range(lat.n_sites))


def test_size_zero_rejected():
    with pytest.raises(LatticeError):
        build_torus(0, 2)
    with pytest.raises(LatticeError):
        build_patch(1, 0)


def test_spec_roundtrip():
    for spec in ({"kind": "torus", "cells": [2, 3]}, {"kind": "patch", "size": [3, 2]}):
        assert lattice_from_spec(spec).to_spec() == spec
    with pytest.raises(LatticeError):
        lattice_from_spec({"kind": "sphere"})
    with pytest.raises(LatticeError):
        lattice_from_spec({"kind": "torus"})


def test_hexagon_loop_partition():
    lat = build_torus(2, 2)
    loop = hexagon_loop(lat, 0)
    part = loop.partition
    assert set(loop.edges) == set(lat.plaquettes[0])
    assert part.v_int == frozenset() and part.e_int == frozenset()
    assert part.e_int | part.e_bd | part.e_ext == frozenset(range(lat.n_edges))
    assert not (part.e_bd & part.e_ext)


def test_two_hexagon_loop_has_a_chord():
    lat = build_torus(3, 3)
    shared = set(lat.plaquettes[0]) & set(lat.plaquettes[3])
    loop = loop_from_plaquettes(lat, [0, 3])
    assert len(loop.edges) == 10
    # the shared edge joins two boundary vertices: it is interior, no vertex is
    assert loop.partition.e_int == frozenset(shared)
    assert loop.partition.v_int == frozenset()


def test_region_with_two_boundary_components():
    lat = build_torus(2, 2)
    with pytest.raises(LatticeError):
        loop_from_plaquettes(lat, [0, 1])
    region = region_from_plaquettes(lat, [0, 1])
    assert len(region.edges) == 8
    assert len(region.partition.e_int) == 2


def test_whole_surface_and_patch_boundary():
    lat = build_torus(2, 2)
    assert whole_surface(lat).edges == ()
    patch = build_patch(2, 2)
    full = whole_surface(patch)
    assert full.partition.v_ext == frozenset()


def test_flood_fill_on_patch():
    patch = build_patch(3, 3)
    inner = patch.plaquettes.index(patch.plaquettes[4])
    loop = loop_from_edges(patch, patch.plaquettes[inner])
    assert flood_fill_interior(patch, loop.edges) == [inner]


def test_torus_loop_needs_interior():
    lat = build_torus(3, 3)
    with pytest.raises(LatticeError):
        loop_from_edges(lat, lat.plaquettes[0])
    loop = loop_from_edges(lat, lat.plaquettes[0], {"plaquettes": [0]})
    assert loop == hexagon_loop(lat, 0)


def test_non_loop_rejected():
    lat = build_torus(3, 3)
    with pytest.raises(LatticeError):
        loop_from_edges(lat, list(lat.plaquettes[0])[:4], {"vertices": []})


def test_four_step_path():
    lat = build_torus(2, 2)
    v0 = lat.vertex("B", 0, 0)
    path = path_from(lat, v0, "zxyz")
    assert len(path.edges) == 4
    end = path.endpoints[1]
    assert end != v0 and lat.sublattice(end) == "B"


def test_path_errors():
    lat = build_torus(2, 2)
    with pytest.raises(LatticeError):
        path_from(lat, lat.vertex("A", 0, 0), "z")
    with pytest.raises(LatticeError):
        path_from(lat, lat.vertex("B", 0, 0), "zq")
    with pytest.raises(LatticeError):
        path_from(lat, lat.vertex("B", 0, 0), "zz")


@given(st.text(alphabet="xyz", min_size=1, max_size=8))
def test_paths_alternate(steps):
    lat = build_torus(3, 3)
    try:
        path = path_from(lat, lat.vertex("B", 1, 1), steps)
    except LatticeError:
        return
    subs = [lat.sublattice(v) for v in path.vertices]
    assert all(a != b for a, b in zip(subs, subs[1:]))
    for k in range(1, len(path.vertices) - 1):
        v = path.vertices[k]
        assert sum(1 for e in path.edges if v in (lat.edges[e].a, lat.edges[e].b)) == 2


def test_thicken():
    lat = build_torus(3, 3)
    assert lat.thicken([0], 0) == frozenset({0})
    assert lat.thicken([0], 1) == frozenset({0} | {lat.edge_site(e) for e in lat.star(0)})
