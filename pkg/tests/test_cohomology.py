import json
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from setlab.cohomology import (
    FiniteGroup,
    GModule,
    GroupError,
    antisymmetric_form,
    coboundary,
    coboundary_from_rephasing,
    cochain_add,
    cochain_from_json,
    cochain_to_json,
    cocycle2_check,
    cohomologous,
    eta_from_omega,
    h2_bruteforce,
    h2_trivial_action,
    phase,
    smith_normal_form,
    solve_mod,
    trivial_cochain,
)
from setlab.lattice import build_torus
from setlab.model import LABELS, SetModel, w_table_example
from setlab.suites import model_eta

HALF = Fraction(1, 2)


def swap_module():
    """Z2 swapping labels p and q, fixing r."""
    G = FiniteGroup.cyclic(2)
    act = {("p", 0): "p", ("q", 0): "q", ("r", 0): "r", ("p", 1): "q", ("q", 1): "p", ("r", 1): "r"}
    return GModule(G, ("p", "q", "r"), act)


def z3_module():
    G = FiniteGroup.cyclic(3)
    cyc = "abc"
    act = {(x, g): cyc[(cyc.index(x) + g) % 3] for x in cyc for g in range(3)}
    return GModule(G, tuple(cyc), act)


@pytest.fixture(scope="module")
def eta_model():
    return model_eta()


# -- groups and modules ---------------------------------------------------------

def test_klein_order_and_names():
    G = FiniteGroup.klein()
    assert G.names == ["(0,0)", "(1,0)", "(0,1)", "(1,1)"]
    assert all(G.mul(g, g) == G.identity for g in G.elements())
    assert G.mul(1, 2) == 3


def test_group_validation():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [0, 1]])
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1, 2], [1, 0, 2], [2, 2, 0]])
    with pytest.raises(GroupError):
        FiniteGroup.named("s3")


def test_module_right_action_law():
    swap_module()
    z3_module()
    G = FiniteGroup.cyclic(3)
    bad = {(x, g): x for x in "ab" for g in range(3)}
    bad[("a", 1)], bad[("b", 1)] = "b", "a"  # a Z2 swap cannot be a Z3 action
    with pytest.raises(GroupError):
        GModule(G, ("a", "b"), bad)


def test_phase_normalisation():
    assert phase("3/2") == HALF
    assert phase(-Fraction(1, 4)) == Fraction(3, 4)


# -- eta and cocycles -----------------------------------------------------------

def test_eta_trivial_action_is_omega(eta_model):
    eta, module = eta_model
    from setlab.model import omega_table

    model = SetModel(build_torus(2, 2))
    tables = omega_table(model, w_table_example(model)).tables
    assert all(eta[(a, g, h)] == tables[a][g][h] for (a, g, h) in eta)


def test_eta_relocates_entries_under_an_action():
    module = swap_module()
    omega = {a: [[Fraction(0)] * 2 for _ in range(2)] for a in module.labels}
    omega["q"][1][0] = HALF
    eta = eta_from_omega(omega, module)
    # a^((gh)^-1) with g=1, h=0: p -> q
    assert eta[("p", 1, 0)] == HALF and eta[("q", 1, 0)] == 0


def test_missing_label():
    module = swap_module()
    with pytest.raises(KeyError):
        eta_from_omega({"p": [[0, 0], [0, 0]]}, module)


def test_model_eta_is_a_cocycle(eta_model):
    eta, module = eta_model
    assert cocycle2_check(eta, module) == (True, None)
    assert cocycle2_check(trivial_cochain(module), module)[0]


def test_flipped_entry_breaks_cocycle(eta_model):
    eta, module = eta_model
    broken = dict(eta)
    broken[("eX", 1, 2)] = phase(broken[("eX", 1, 2)] + HALF)
    ok, witness = cocycle2_check(broken, module)
    assert not ok and witness[0] == "eX"


def _random_lam(module, draw_bits):
    return {(a, g): Fraction(draw_bits[i], 4)
            for i, (a, g) in enumerate(product(module.labels, module.group.elements()))}


@pytest.mark.parametrize("make", [swap_module, z3_module, lambda: GModule.trivial(FiniteGroup.klein(), LABELS)])
@given(data=st.data())
@settings(max_examples=25, deadline=None)
def test_coboundaries_are_cocycles(make, data):
    module = make()
    m = len(module.labels) * module.group.order
    lam = _random_lam(module, data.draw(st.lists(st.integers(0, 3), min_size=m, max_size=m)))
    assert cocycle2_check(coboundary(lam, module), module)[0]


@given(st.lists(st.integers(0, 1), min_size=16, max_size=16), st.lists(st.integers(0, 1), min_size=16, max_size=16))
@settings(max_examples=20, deadline=None)
def test_coboundary_is_additive(bits1, bits2):
    module = GModule.trivial(FiniteGroup.klein(), LABELS)
    keys = list(product(LABELS, range(4)))
    lam = {k: Fraction(b, 2) for k, b in zip(keys, bits1)}
    mu = {k: Fraction(b, 2) for k, b in zip(keys, bits2)}
    both = {k: lam[k] + mu[k] for k in keys}
    assert coboundary(both, module) == cochain_add(coboundary(lam, module), coboundary(mu, module))


@pytest.fixture(scope="module")
def model_and_table():
    model = SetModel(build_torus(2, 2))
    return model, w_table_example(model)


def test_rephasing_trivial_lambda(model_and_table):
    model, wt = model_and_table
    lam = {(a, g): Fraction(0) for a in LABELS for g in range(4)}
    assert all(q == 0 for q in coboundary_from_rephasing(lam, wt, model).values())


@given(st.lists(st.integers(0, 1), min_size=16, max_size=16))
@settings(max_examples=15, deadline=None)
def test_rephasing_matches_closed_form(model_and_table, bits):
    model, wt = model_and_table
    module = GModule.trivial(FiniteGroup.klein(), LABELS)
    lam = {k: Fraction(b, 2) for k, b in zip(product(LABELS, range(4)), bits)}
    operational = coboundary_from_rephasing(lam, wt, model, module)
    assert operational == coboundary(lam, module)
    assert cocycle2_check(operational, module)[0]


def test_single_rephasing_gives_explicit_cocycle(model_and_table):
    model, wt = model_and_table
    lam = {(a, g): Fraction(0) for a in LABELS for g in range(4)}
    lam[("eX", 1)] = HALF
    d = coboundary_from_rephasing(lam, wt, model)
    nonzero = sorted(k for k, q in d.items() if q)
    # lam(gh) - lam(g) - lam(h) is 1/2 exactly when one of g, h, gh equals (1,0)
    assert nonzero == [("eX", g, h) for g in range(4) for h in range(4)
                       if (g == 1) + (h == 1) + ((g ^ h) == 1) == 1]


# -- classes --------------------------------------------------------------------

def test_model_class_is_nontrivial(eta_model):
    eta, module = eta_model
    r = cohomologous(eta, trivial_cochain(module), module)
    assert (r.answer, r.method, r.candidates) == ("no", "exhaustive", 2 ** 16)
    assert cohomologous(eta, trivial_cochain(module), module, bound=1).answer == "no"


def test_antisymmetric_form_detects_u1_class(eta_model):
    # vanishes on every U(1) coboundary for abelian G, so a nonzero value
    # rules out triviality with any U(1) rephasing, not only Z_2 ones
    eta, module = eta_model
    G = module.group
    for label, expect_nonzero in (("eX", True), ("f", True), ("eZ", False), ("1", False)):
        form = antisymmetric_form([[eta[(label, g, h)] for h in G.elements()] for g in G.elements()], G)
        assert any(q for row in form for q in row) == expect_nonzero


@given(st.lists(st.integers(0, 1), min_size=16, max_size=16))
@settings(max_examples=10, deadline=None)
def test_rephased_eta_is_cohomologous(eta_model, bits):
    eta, module = eta_model
    lam = {k: Fraction(b, 2) for k, b in zip(product(LABELS, range(4)), bits)}
    eta2 = cochain_add(eta, coboundary(lam, module))
    r = cohomologous(eta, eta2, module)
    assert r.answer == "yes"
    assert cochain_add(eta, coboundary(r.witness, module)) == eta2
    assert cohomologous(eta, eta2, module, bound=1).answer == "yes"


def test_cohomologous_is_an_equivalence(eta_model):
    eta, module = eta_model
    triv = trivial_cochain(module)
    lam = {k: Fraction(0) for k in product(LABELS, range(4))}
    lam[("f", 3)] = HALF
    eta2 = cochain_add(eta, coboundary(lam, module))
    assert cohomologous(eta, eta, module).answer == "yes"
    assert cohomologous(eta2, eta, module).answer == cohomologous(eta, eta2, module).answer == "yes"
    assert cohomologous(eta2, triv, module).answer == "no"


def test_cohomologous_rejects_foreign_modulus(eta_model):
    eta, module = eta_model
    with pytest.raises(ValueError):
        cohomologous(eta, trivial_cochain(module), module, modulus=3)


# -- Smith normal form ------------------------------------------------------------

def _mul(a, b, n=None):
    out = [[sum(x * y for x, y in zip(r, c)) for c in zip(*b)] for r in a]
    return [[v % n for v in r] for r in out] if n else out


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 4]], 8).D == [[2, 0], [0, 4]]
    assert smith_normal_form([[1, 0], [0, 1]]).D == [[1, 0], [0, 1]]
    assert smith_normal_form([[0, 0], [0, 0]]).D == [[0, 0], [0, 0]]
    assert smith_normal_form([[6, 0], [0, 4]], 8).diagonal == [2, 4]


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
@settings(max_examples=60)
def test_snf_transforms(rows):
    r = smith_normal_form(rows)
    assert _mul(_mul(r.U, rows), r.V) == r.D
    k = len(rows[0])
    assert _mul(r.V, r.Vinv) == [[int(i == j) for j in range(k)] for i in range(k)]
    diag = [d for d in r.diagonal if d]
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    assert all(d >= 0 for d in r.diagonal)


@given(st.lists(st.lists(st.integers(0, 5), min_size=3, max_size=3), min_size=1, max_size=3),
       st.lists(st.integers(0, 5), min_size=3, max_size=3))
@settings(max_examples=60)
def test_solve_mod_against_enumeration(rows, x):
    n = 6
    rhs = [sum(a * b for a, b in zip(r, x)) % n for r in rows]
    sol = solve_mod(rows, rhs, n)
    assert sol is not None
    assert [sum(a * b for a, b in zip(r, sol)) % n for r in rows] == rhs


def test_solve_mod_detects_no_solution():
    assert solve_mod([[2]], [1], 4) is None


# -- H^2 -----------------------------------------------------------------------------

def _count_h2(group, n):
    """Independent oracle: plain loops over every Z_n-valued 2-cochain."""
    G = group.elements()
    pairs = list(product(G, G))
    cocycles = []
    for vals in product(range(n), repeat=len(pairs)):
        f = dict(zip(pairs, vals))
        if all((f[(h, k)] - f[(group.mul(g, h), k)] + f[(g, group.mul(h, k))] - f[(g, h)]) % n == 0
               for g in G for h in G for k in G):
            cocycles.append(vals)
    bounds = set()
    for lam in product(range(n), repeat=group.order):
        bounds.add(tuple((lam[h] - lam[group.mul(g, h)] + lam[g]) % n for g, h in pairs))
    return len(cocycles) // len(bounds)


@pytest.mark.parametrize("group,n,order,invariants", [
    (FiniteGroup.cyclic(2), 2, 2, [2]),
    (FiniteGroup.klein(), 2, 8, [2, 2, 2]),
    (FiniteGroup.cyclic(3), 3, 3, [3]),
    (FiniteGroup.cyclic(4), 2, 2, [2]),
    (FiniteGroup.cyclic(2), 4, 2, [2]),
])
def test_h2(group, n, order, invariants):
    snf = h2_trivial_action(group, n)
    brute = h2_bruteforce(group, n)
    assert (snf.order, snf.invariants) == (brute.order, brute.invariants) == (order, invariants)


@pytest.mark.parametrize("group,n", [(FiniteGroup.cyclic(2), 2), (FiniteGroup.cyclic(3), 3),
                                     (FiniteGroup.cyclic(4), 2)])
def test_h2_order_against_loop_oracle(group, n):
    assert h2_trivial_action(group, n).order == _count_h2(group, n)


def test_h2_size_guards():
    with pytest.raises(ValueError):
        h2_trivial_action(FiniteGroup.cyclic(9), 2)
    with pytest.raises(ValueError):
        h2_bruteforce(FiniteGroup.cyclic(5), 5)


# -- files ----------------------------------------------------------------------------

def test_cochain_json_roundtrip(eta_model):
    eta, module = eta_model
    text = json.dumps(cochain_to_json(eta, module))
    eta2, module2 = cochain_from_json(json.loads(text))
    assert eta2 == eta and module2.labels == module.labels


def test_cochain_json_rejects_partial(eta_model):
    eta, module = eta_model
    obj = cochain_to_json(eta, module)
    obj["values"].pop("eX,1,2")
    with pytest.raises(ValueError):
        cochain_from_json(obj)
    with pytest.raises(ValueError):
        cochain_from_json({"labels": []})
