from fractions import Fraction

import pytest

from setlab.algebra import commutator_phase, pauli_x, pauli_z
from setlab.lattice import build_patch, build_torus, hexagon_loop, loop_from_plaquettes, region_from_plaquettes
from setlab.model import (
    ELEMENT_A,
    ELEMENT_B,
    KLEIN,
    LABELS,
    AnyonRep,
    NonLocalDefect,
    SetModel,
    alpha_conjugate,
    local_boundary_check,
    bare_x_string,
    boundary_w,
    check_defect_composition,
    defect_sector,
    dressed_x_string,
    endpoint_factors,
    entangler_region,
    fuse_labels,
    omega_table,
    plaquette_op,
    verify_loop_identity,
    vertex_op,
    w_table_example,
    y_identity_lhs,
    x_anyon,
)
from setlab.lattice import path_from
from setlab.suites import KNOWN_OMEGA_X, endpoint_locality, random_paths, stabilizer_commutation

ALL_ONES = [[1] * 4 for _ in range(4)]


@pytest.fixture(scope="module")
def torus2():
    return SetModel(build_torus(2, 2))


@pytest.fixture(scope="module")
def torus3():
    return SetModel(build_torus(3, 3))


def test_stabilizer_shapes():
    lat = build_torus(2, 2)
    a = vertex_op(lat, 0)
    assert a.is_diagonal and a.poly.degree() == 1 and len(a.poly) == 3
    b = plaquette_op(lat, 0)
    assert len(b.xsupport) == 6 and b.poly.is_zero()
    assert (a * a).is_identity and (b * b).is_identity
    corner = min(range(build_patch(1, 1).n_vertices), key=lambda v: len(build_patch(1, 1).star(v)))
    assert len(vertex_op(build_patch(1, 1), corner).poly) < 3


@pytest.mark.parametrize("cells", [(2, 2), (3, 3)])
def test_stabilizers_commute(cells):
    assert stabilizer_commutation(build_torus(*cells)) == []


def test_entangler_factors(torus2):
    lat = torus2.lattice
    assert len(entangler_region(lat, hexagon_loop(lat, 0))) == 6
    full = torus2.full_entangler()
    assert len(full) == 12
    assert (full.operator * full.operator).is_identity


def test_symmetry_group(torus2):
    a, b = (torus2.symmetry_operator(g) for g in (ELEMENT_A, ELEMENT_B))
    assert commutator_phase(a, b) == 1
    assert (a * a).is_identity
    op = pauli_z(0) * pauli_x(9)
    assert torus2.beta(ELEMENT_A, torus2.beta(ELEMENT_A, op)) == op


def test_alpha_leaves_diagonals_alone(torus2):
    circ = torus2.full_entangler()
    assert alpha_conjugate(circ, vertex_op(torus2.lattice, 3)) == vertex_op(torus2.lattice, 3)


def test_dressed_string_is_alpha_of_bare(torus3):
    lat = torus3.lattice
    path = path_from(lat, lat.vertex("B", 1, 1), "zxyzx")
    dressed = dressed_x_string(lat, path).operator
    assert dressed == alpha_conjugate(torus3.full_entangler(), bare_x_string(lat, path))


@pytest.mark.parametrize("cells", [(2, 2), (3, 3)])
@pytest.mark.parametrize("sub", ["A", "B"])
def test_loop_identity(cells, sub):
    lat = build_torus(*cells)
    for loop in (hexagon_loop(lat, 0), region_from_plaquettes(lat, [0, 1])):
        assert verify_loop_identity(lat, loop, sub=sub).passed


def test_loop_identity_reports_a_missing_gate():
    lat = build_torus(3, 3)
    loop = hexagon_loop(lat, 0)
    circ = entangler_region(lat)
    e = loop.edges[0]
    edge = lat.edges[e]
    broken = circ.without((lat.vertex_site(edge.a), lat.edge_site(e), lat.vertex_site(edge.b)))
    result = verify_loop_identity(lat, loop, broken)
    assert not result.passed
    assert e in result.detail["missing_ccz_edges"]


def test_boundary_split(torus3):
    lat = torus3.lattice
    loop = loop_from_plaquettes(lat, [0, 3])
    w, w1, w2 = boundary_w(lat, loop, "A")
    assert w == w1 * w2


def test_omega_tables(torus2):
    signs = omega_table(torus2, w_table_example(torus2))
    assert signs.signs("eX") == [list(r) for r in KNOWN_OMEGA_X]
    assert signs.signs("f") == [list(r) for r in KNOWN_OMEGA_X]
    assert signs.signs("1") == ALL_ONES
    assert signs.signs("eZ") == ALL_ONES


def test_omega_gauge_row_and_column(torus3):
    tables = omega_table(torus3, w_table_example(torus3)).tables
    for label in LABELS:
        assert all(q == 0 for q in tables[label][0])
        assert all(row[0] == 0 for row in tables[label])


def test_omega_on_a_longer_string(torus3):
    lat = torus3.lattice
    reps = torus3.default_anyons()
    reps = dict(reps, eX=x_anyon(lat, path_from(lat, lat.vertex("B", 0, 0), "zxzyzx")))
    tables = omega_table(torus3, w_table_example(torus3, reps))
    assert tables.signs("eX") == [list(r) for r in KNOWN_OMEGA_X]


def test_fusion_of_labels():
    assert fuse_labels("eX", "eZ") == "f"
    assert fuse_labels("f", "f") == "1"


def test_w_table_rephasing_moves_omega(torus2):
    wt = w_table_example(torus2)
    before = omega_table(torus2, wt).tables["eX"]
    after = omega_table(torus2, wt.rephased({"eX": {ELEMENT_A: Fraction(1, 2)}})).tables["eX"]
    # d(lam)(g,h) = lam(gh) - lam(g) - lam(h) with lam supported on (1,0)
    ia = KLEIN.index(ELEMENT_A)
    for g in range(4):
        for h in range(4):
            gh = KLEIN.index(tuple((x + y) % 2 for x, y in zip(KLEIN[g], KLEIN[h])))
            lam = lambda k: Fraction(1, 2) if k == ia else Fraction(0)  # noqa: E731
            assert (after[g][h] - before[g][h]) % 1 == (lam(gh) - lam(g) - lam(h)) % 1


def test_y_identity_operator_level(torus2):
    wt = w_table_example(torus2)
    tables = omega_table(torus2, wt).tables
    for a in LABELS:
        for b in LABELS:
            for gi, g in enumerate(KLEIN):
                for hi, h in enumerate(KLEIN):
                    lhs = y_identity_lhs(torus2, wt, a, b, g, h)
                    assert lhs == (tables[a][gi][hi] + tables[b][gi][hi]) % 1


def test_endpoint_locality_random_paths(torus3):
    import numpy as np

    paths = random_paths(torus3.lattice, 10, np.random.default_rng(7))
    assert len(paths) == 10
    assert endpoint_locality(torus3, paths) == []


def test_endpoint_factors_sign_at_anchor_zero(torus2):
    rep = torus2.default_anyons()["eX"]
    for g in KLEIN:
        f0, f1 = endpoint_factors(torus2, g, rep)
        assert f0 * f1 == torus2.beta(g, rep.operator) * rep.operator.inverse()
        assert f1.poly.constant_bit() == 0


def test_endpoint_factors_reject_tight_radius(torus3):
    rep = torus3.default_anyons()["eX"]
    assert endpoint_factors(torus3, ELEMENT_A, rep, radius=0)
    # forget the far endpoint: its Z factor is then nowhere near an anchor
    one_sided = AnyonRep("eX", rep.operator, rep.anchors[:1])
    with pytest.raises(NonLocalDefect):
        endpoint_factors(torus3, ELEMENT_A, one_sided, radius=1)


@pytest.mark.parametrize("g", [ELEMENT_A, ELEMENT_B, (1, 1)])
def test_defect_sector(torus3, g):
    sector = defect_sector(torus3, g, hexagon_loop(torus3.lattice, 0))
    assert check_defect_composition(torus3, sector).passed


def test_local_boundary_items(torus3):
    lat = torus3.lattice
    inner = hexagon_loop(lat, 0)
    outer = loop_from_plaquettes(lat, [0, 3])
    report = local_boundary_check(torus3, ELEMENT_A, inner, outer, vacuum_distance=0.0)
    assert report["item1"]["pass"]
    assert report["item2"]["pass"]
    assert report["pass"]


def test_local_boundary_items_on_framed_patch():
    lat = build_patch(7, 7)
    model = SetModel(lat)
    hexes = lat.plaquettes

    def grow(region):
        return {q for q in range(len(hexes)) for p in region if set(hexes[p]) & set(hexes[q])}

    centre = 24
    ring1 = grow({centre})
    ring2 = grow(ring1)
    inner = hexagon_loop(lat, centre)
    frames = [loop_from_plaquettes(lat, sorted(ring1)), loop_from_plaquettes(lat, sorted(ring2))]
    frame_sites = [frozenset(lat.vertex_site(v) for v in f.vertices) for f in frames]
    near = sorted(lat.vertex_site(v) for v in inner.vertices)
    probes = [op(s) for s in near for op in (pauli_x, pauli_z)]
    for g in (ELEMENT_A, ELEMENT_B, (1, 1)):
        report = local_boundary_check(model, g, inner, frames[0], framed=frames, probes=probes,
                                      frame_sites=frame_sites)
        assert report["item3"]["pass"] and report["item4"]["pass"] and report["pass"]
    # a probe sitting on the smaller frame sees the two boundaries differ
    on_frame = [pauli_x(s) for s in sorted(frame_sites[0])[:3]]
    report = local_boundary_check(model, ELEMENT_A, inner, frames[0], framed=frames, probes=on_frame,
                                  frame_sites=frame_sites)
    assert not report["item3"]["pass"]
