"""Check suites behind the command-line subcommands.

Each ``suite_*`` function returns a :class:`Report`; the individual checks are
plain functions so tests can call them directly.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import gcrossed
from .algebra import (
    PhasePoly,
    XdOperator,
    apply_to_basis,
    ccz,
    commutator_phase,
    cz,
    identity,
    pauli_x,
    pauli_z,
)
from .cohomology import (
    FiniteGroup,
    GModule,
    antisymmetric_form,
    cocycle2_check,
    coboundary,
    cochain_add,
    cochain_from_json,
    cohomologous,
    eta_from_omega,
    h2_bruteforce,
    h2_trivial_action,
    trivial_cochain,
)
from .lattice import (
    HoneycombLattice,
    LatticeError,
    hexagon_loop,
    path_from,
    region_from_plaquettes,
    whole_surface,
)
from .model import (
    ELEMENT_A,
    ELEMENT_B,
    LABELS,
    SetModel,
    alpha_conjugate,
    bare_x_string,
    check_defect_composition,
    defect_sector,
    dressed_x_string,
    endpoint_factors,
    fuse,
    omega_table,
    plaquette_op,
    verify_loop_identity,
    vertex_op,
    w_table_example,
    x_anyon,
)
from .report import Report

# omega for the dressed X-string anyon, g and h ordered (0,0), (1,0), (0,1), (1,1)
KNOWN_OMEGA_X = ((1, 1, 1, 1), (1, 1, -1, -1), (1, 1, 1, 1), (1, 1, -1, -1))
ALL_ONES = ((1,) * 4,) * 4
NONTRIVIAL = ((0, 0), ELEMENT_A, ELEMENT_B, (1, 1))

ANCHOR_CONJ_CCZ = "Ad X_vA (CCZ_{vA,e,vB}) = CCZ_{vA,e,vB} CZ_{e,vB}"
ANCHOR_CONJ_CZ = "Ad X_vA (CZ_{vB,vA}) = CZ_{vB,vA} Z_vB"
ANCHOR_LOOP = "u_A(L) U_CCZ = W_L U_CCZ u_A(L)"
ANCHOR_VACUUM = "u_A(L) Omega = W_L^(2) Omega (boundary is a product of commuting terms)"
ANCHOR_INVARIANCE = "phi o beta_g = phi"
ANCHOR_OMEGA = "omega^(a)(g,h) with g,h ordered (0,0),(1,0),(0,1),(1,1)"
ANCHOR_FUSION = "omega^(a) omega^(b) = omega^(c) for c = a b, and a^(g) = a"
ANCHOR_COCYCLE = "eta in Z^2(G, M)"
ANCHOR_CLASS = "class of eta independent of the choice of W"
ANCHOR_UNIQUE = "unique stabilizer ground state"
ANCHOR_DEFECT = "sigma_g^-1 o sigma_g = identity"


# -- algebra -------------------------------------------------------------------

def random_poly(rng: np.random.Generator, n_sites: int, terms: int = 4, max_degree: int = 3) -> PhasePoly:
    monos = []
    for _ in range(int(rng.integers(0, terms + 1))):
        k = int(rng.integers(0, max_degree + 1))
        monos.append([int(s) for s in rng.choice(n_sites, size=min(k, n_sites), replace=False)])
    return PhasePoly(monos)


def random_operator(rng: np.random.Generator, n_sites: int) -> XdOperator:
    xs = frozenset(int(s) for s in np.flatnonzero(rng.random(n_sites) < 0.3))
    return XdOperator(xs, random_poly(rng, n_sites))


def conjugation_identities(triples=((0, 1, 2),)) -> tuple:
    """Both vertex-flip conjugation identities on each ``(vA, e, vB)`` triple."""
    bad_ccz, bad_cz = [], []
    for va, e, vb in triples:
        x = pauli_x(va)
        if x.conjugate(ccz(va, e, vb)) != ccz(va, e, vb) * cz(e, vb):
            bad_ccz.append((va, e, vb))
        if x.conjugate(cz(vb, va)) != cz(vb, va) * pauli_z(vb):
            bad_cz.append((va, e, vb))
    return bad_ccz, bad_cz


def lattice_triples(lat: HoneycombLattice) -> list:
    return [(lat.vertex_site(ed.a), lat.edge_site(e), lat.vertex_site(ed.b)) for e, ed in enumerate(lat.edges)]


def group_law_fuzz(rng: np.random.Generator, count: int = 1000, n_sites: int = 8) -> dict:
    failures = {"associativity": 0, "inverse": 0, "identity": 0, "semantics": 0}
    for _ in range(count):
        a, b, c = (random_operator(rng, n_sites) for _ in range(3))
        if (a * b) * c != a * (b * c):
            failures["associativity"] += 1
        if not (a * a.inverse()).is_identity or not (a.inverse() * a).is_identity:
            failures["inverse"] += 1
        if a * identity() != a or identity() * a != a:
            failures["identity"] += 1
        z = tuple(int(v) for v in rng.integers(0, 2, n_sites))
        zb, sb = apply_to_basis(b, z)
        za, sa = apply_to_basis(a, zb)
        if apply_to_basis(a * b, z) != (za, sa * sb):
            failures["semantics"] += 1
    return failures


def substitution_composition(rng: np.random.Generator, count: int = 300, n_sites: int = 8) -> int:
    bad = 0
    for _ in range(count):
        p = random_poly(rng, n_sites, terms=6)
        x = frozenset(int(s) for s in np.flatnonzero(rng.random(n_sites) < 0.4))
        y = frozenset(int(s) for s in np.flatnonzero(rng.random(n_sites) < 0.4))
        if p.substitute(x ^ y) != p.substitute(x).substitute(y):
            bad += 1
    return bad


def diagonal_closure(rng: np.random.Generator, count: int = 300, n_sites: int = 8) -> int:
    bad = 0
    for _ in range(count):
        a = random_operator(rng, n_sites)
        d = XdOperator(frozenset(), random_poly(rng, n_sites))
        if not a.conjugate(d).is_diagonal:
            bad += 1
    return bad


def suite_algebra(seed: int = 0, fuzz: int = 1000) -> Report:
    rng = np.random.default_rng(seed)
    rep = Report("verify-algebra", {"seed": seed, "fuzz": fuzz})
    from .lattice import build_torus

    triples = [(0, 1, 2)] + lattice_triples(build_torus(2, 2))

    def conj(which):
        def run():
            bad = conjugation_identities(triples)[which]
            return not bad, {"instances": len(triples), "failures": bad}
        return run

    rep.run("algebra.conj-ccz", ANCHOR_CONJ_CCZ, conj(0))
    rep.run("algebra.conj-cz", ANCHOR_CONJ_CZ, conj(1))

    def fuzz_run():
        f = group_law_fuzz(rng, fuzz)
        return not any(f.values()), {"triples": fuzz, "failures": f}

    rep.run("algebra.group-law", "product (x1,p1)(x2,p2) = (x1+x2, p2 + p1 o tau_x2)", fuzz_run)
    rep.run("algebra.substitution", "p o tau_(x+y) = (p o tau_x) o tau_y",
            lambda: ((b := substitution_composition(rng)) == 0, {"failures": b}))
    rep.run("algebra.diagonal-closure", "conjugates of diagonal operators are diagonal",
            lambda: ((b := diagonal_closure(rng)) == 0, {"failures": b}))

    def roundtrip():
        bad = [op.to_text() for op in (random_operator(rng, 12) for _ in range(200))
               if XdOperator.from_text(op.to_text()) != op]
        return not bad, {"failures": bad[:3]}

    rep.run("algebra.text-roundtrip", "operator text form X{...}; P{...}", roundtrip)
    rep.run("algebra.ccz-sign", "CCZ |1,1,1> = -|1,1,1>",
            lambda: (apply_to_basis(ccz(0, 1, 2), (1, 1, 1)) == ((1, 1, 1), -1), {}))
    return rep


# -- model -----------------------------------------------------------------------

def standard_loops(lat: HoneycombLattice) -> dict:
    """Named regions for the identity checks: one hexagon and, when the
    lattice has room, two adjacent hexagons."""
    if len(lat.plaquettes) == 1:
        return {"whole-surface": whole_surface(lat)} if lat.kind == "torus" else {"hexagon": hexagon_loop(lat, 0)}
    loops = {"hexagon": hexagon_loop(lat, 0)}
    for q in range(1, len(lat.plaquettes)):
        if set(lat.plaquettes[0]) & set(lat.plaquettes[q]):
            try:
                loops["two-hexagon"] = region_from_plaquettes(lat, [0, q])
                break
            except LatticeError:
                continue
    return loops


def stabilizer_commutation(lat: HoneycombLattice) -> list:
    """Every pair of A_v, B_p commutes; returns offending pairs."""
    ops = [("A", v, vertex_op(lat, v)) for v in range(lat.n_vertices)] + [
        ("B", p, plaquette_op(lat, p)) for p in range(len(lat.plaquettes))]
    bad = []
    for i, (k1, i1, a) in enumerate(ops):
        for k2, i2, b in ops[i + 1:]:
            if commutator_phase(a, b) != 1:
                bad.append((f"{k1}{i1}", f"{k2}{i2}"))
    return bad


def random_paths(lat: HoneycombLattice, count: int, rng: np.random.Generator, max_len: int = 6) -> list:
    """Simple open paths from random B vertices with distinct endpoints."""
    out, tries = [], 0
    bs = lat.vertices_of("B")
    while len(out) < count and tries < 100 * count:
        tries += 1
        v0 = bs[int(rng.integers(len(bs)))]
        steps = ["xyz"[int(rng.integers(3))] for _ in range(int(rng.integers(1, max_len + 1)))]
        try:
            path = path_from(lat, v0, "".join(steps), simple=True)
        except LatticeError:
            continue
        if path.endpoints[0] != path.endpoints[1]:
            out.append(path)
    return out


def endpoint_locality(model: SetModel, paths, radius: int = 2) -> list:
    """For every g and path, the defect of the dressed string splits into
    factors near the two endpoints."""
    bad = []
    for k, path in enumerate(paths):
        rep = x_anyon(model.lattice, path)
        for g in NONTRIVIAL[1:]:
            try:
                endpoint_factors(model, g, rep, radius)
            except ValueError as exc:
                bad.append({"path": k, "g": list(g), "error": str(exc)})
    return bad


def suite_model(lat: HoneycombLattice, seed: int = 0) -> Report:
    rng = np.random.default_rng(seed)
    model = SetModel(lat)
    circ = model.full_entangler()
    rep = Report("verify-model", {"lattice": lat.to_spec(), "seed": seed})

    rep.run("model.stabilizer-commutation", "[A_v, B_p] = 0",
            lambda: ((b := stabilizer_commutation(lat)) == [], {"offending": b[:5]}))
    rep.run("model.entangler", "U_CCZ is a product of commuting CCZ, one per edge",
            lambda: ((circ.operator * circ.operator).is_identity and len(circ) == lat.n_edges,
                     {"factors": len(circ)}))

    def beta_laws():
        ops = [random_operator(rng, lat.n_sites) for _ in range(50)]
        ok = all(model.beta(ELEMENT_A, model.beta(ELEMENT_B, o)) == model.beta(ELEMENT_B, model.beta(ELEMENT_A, o))
                 and model.beta(ELEMENT_A, model.beta(ELEMENT_A, o)) == o for o in ops)
        return ok, {"samples": len(ops)}

    rep.run("model.symmetry-group", "beta_A, beta_B commute and square to the identity", beta_laws)
    rep.run("model.alpha-invariance", "beta_g commutes with alpha",
            lambda: (all(model.beta(g, alpha_conjugate(circ, o)) == alpha_conjugate(circ, model.beta(g, o))
                         for g in NONTRIVIAL for o in model.stabilizers()), {}))

    for name, loop in standard_loops(lat).items():
        for sub in ("A", "B"):
            def run(loop=loop, sub=sub):
                r = verify_loop_identity(lat, loop, sub=sub)
                detail = dict(r.detail)
                if r.residual is not None:
                    detail["residual"] = r.residual.to_text()
                return r.passed, detail
            rep.run(f"model.loop-identity.{name}.{sub}", ANCHOR_LOOP.replace("u_A", f"u_{sub}"), run)

    reps = model.default_anyons()
    ex = reps["eX"]
    if ex.anchors[0] != ex.anchors[1]:  # on the 1x1 torus the string closes on itself
        def dressed():
            path = _default_path(model)
            s = dressed_x_string(lat, path).operator
            return s == alpha_conjugate(circ, bare_x_string(lat, path)), {"edges": list(path.edges)}
        rep.run("model.dressed-string", "rho_X = alpha(prod X_e)", dressed)

        paths = random_paths(lat, 10, rng)
        rep.run("model.endpoint-locality", "beta_g(S) S^* is a product of endpoint factors",
                lambda: ((b := endpoint_locality(model, paths)) == [], {"paths": len(paths), "failures": b}))

        loop = standard_loops(lat).get("hexagon")
        if loop is not None and loop.edges:
            for g in NONTRIVIAL[1:]:
                def run(g=g):
                    sector = defect_sector(model, g, loop)
                    r = check_defect_composition(model, sector)
                    return r.passed, r.detail
                rep.run(f"model.defect.{g[0]}{g[1]}", ANCHOR_DEFECT, run)
    return rep


def _default_path(model: SetModel):
    lat = model.lattice
    from .model import _patch_steps

    v0 = lat.vertex("B", 0, 0)
    steps = "zxyz" if lat.kind == "torus" else _patch_steps(lat, v0)
    return path_from(lat, v0, steps, simple=False)


# -- omega -----------------------------------------------------------------------

def model_reps(model: SetModel, steps: str | None = None) -> dict:
    reps = model.default_anyons()
    if steps:
        lat = model.lattice
        ex = x_anyon(lat, path_from(lat, lat.vertex("B", 0, 0), steps, simple=False))
        reps = {"1": reps["1"], "eX": ex, "eZ": reps["eZ"], "f": fuse(ex, reps["eZ"])}
    return reps


def omega_signs(lat: HoneycombLattice, steps: str | None = None) -> dict:
    model = SetModel(lat)
    wt = w_table_example(model, model_reps(model, steps))
    ot = omega_table(model, wt)
    return {a: tuple(tuple(r) for r in ot.signs(a)) for a in LABELS}


def suite_omega(lat: HoneycombLattice, steps: str | None = None) -> tuple[Report, dict]:
    rep = Report("omega", {"lattice": lat.to_spec(), "path": steps or "default"})
    if steps:
        # a malformed path is an input error, not a failed check
        path_from(lat, lat.vertex("B", 0, 0), steps, simple=False)
    holder = {}

    def compute():
        holder["signs"] = omega_signs(lat, steps)
        return True, {"labels": list(LABELS)}

    rep.run("omega.compute", ANCHOR_OMEGA, compute)
    signs = holder.get("signs")
    expected = {"1": ALL_ONES, "eX": KNOWN_OMEGA_X, "eZ": ALL_ONES, "f": KNOWN_OMEGA_X}
    for a in LABELS:
        rep.run(f"omega.table.{a}", ANCHOR_OMEGA,
                lambda a=a: (signs is not None and signs[a] == expected[a],
                             {"table": signs[a] if signs else None, "expected": expected[a]}))

    def compat():
        prod = tuple(tuple(x * y for x, y in zip(r1, r2)) for r1, r2 in zip(signs["eX"], signs["eZ"]))
        return prod == signs["f"], {"eX*eZ": prod, "f": signs["f"]}

    rep.run("omega.fusion-compat", ANCHOR_FUSION, compat)
    return rep, (signs or {})


# -- cohomology -------------------------------------------------------------------------

def model_eta(lat: HoneycombLattice | None = None) -> tuple[dict, GModule]:
    from .lattice import build_torus

    lat = build_torus(2, 2) if lat is None else lat
    model = SetModel(lat)
    om = omega_table(model, w_table_example(model)).tables
    module = GModule.trivial(FiniteGroup.klein(), LABELS)
    return eta_from_omega(om, module), module


def random_rephasing(module: GModule, rng: np.random.Generator, n: int = 2) -> dict:
    return {(a, g): Fraction(int(rng.integers(n)), n) for a in module.labels for g in module.group.elements()}


def suite_cohomology(group: str = "z2z2", coeff: int = 2, h2: bool = False, file: str | None = None,
                     seed: int = 0) -> Report:
    rng = np.random.default_rng(seed)
    rep = Report("cohomology", {"group": group, "coeff": coeff, "h2": h2,
                                "file": Path(file).name if file else None, "seed": seed})
    if file:
        eta, module = cochain_from_json(json.loads(Path(file).read_text()))
        source = "file"
    elif group.lower() in ("z2z2", "klein", "z2xz2"):
        eta, module = model_eta()
        source = "model"
    else:
        eta = module = None
        source = None

    if eta is not None:
        def cocycle():
            ok, witness = cocycle2_check(eta, module)
            return ok, {"source": source, "instances": module.group.order ** 3 * len(module.labels),
                        "witness": witness}
        rep.run("cohomology.cocycle", ANCHOR_COCYCLE, cocycle)

        def klass():
            r = cohomologous(eta, trivial_cochain(module), module)
            detail = {"source": source, "trivial": r.answer, "method": r.method, "candidates": r.candidates}
            # the model table is known to be nontrivial; a user file is only classified
            return (r.answer == "no") if source == "model" else True, detail
        rep.run("cohomology.class", ANCHOR_CLASS, klass)

        def rephase():
            lam = random_rephasing(module, rng)
            eta2 = cochain_add(eta, coboundary(lam, module))
            ok2, _ = cocycle2_check(eta2, module)
            r = cohomologous(eta, eta2, module)
            return ok2 and r.answer == "yes", {"method": r.method, "candidates": r.candidates}
        rep.run("cohomology.rephasing", ANCHOR_CLASS, rephase)

        if module.is_trivial() and module.group.is_abelian():
            def antisym():
                forms = {a: antisymmetric_form([[eta[(a, g, h)] for h in module.group.elements()]
                                                for g in module.group.elements()], module.group)
                         for a in module.labels}
                nonzero = sorted(a for a, f in forms.items() if any(q for row in f for q in row))
                return True, {"labels_with_nonzero_form": nonzero}
            rep.run("cohomology.antisymmetric-form", ANCHOR_CLASS, antisym)

    if h2 or eta is None:
        G = FiniteGroup.named(group)

        def h2run():
            a = h2_trivial_action(G, coeff)
            b = h2_bruteforce(G, coeff)
            return a.invariants == b.invariants and a.order == b.order, {
                "snf": a.invariants, "bruteforce": b.invariants, "order": a.order}
        rep.run(f"cohomology.h2.{group.lower()}.{coeff}", "H^2(G, Z_n), trivial action", h2run)
    return rep


# -- data checks -----------------------------------------------------------------

def suite_checkdata(file: str | None = None) -> Report:
    path = Path(file) if file else gcrossed.EXAMPLE_FILE
    rep = Report("checkdata", {"file": path.name})
    data = gcrossed.load(path)  # SchemaError propagates to the caller
    anchors = {
        "theta-action": "(a^(h))^(g) = a^(gh)",
        "grading": "grading map to G is multiplicative",
        "braid-bilinear": "abelian hexagon identities",
        "theta-covariance": "braiding invariant under the action",
        "fusion-compat": ANCHOR_FUSION,
        "y-identity": "Y^(g) beta_g(Y^(h)) Y^(gh)* = omega^(a) omega^(b)",
        "defect-braiding": "defect braiding data",
    }
    for check in gcrossed.ALL_CHECKS:
        out = check(data)
        rep.run(f"data.{out.name}", anchors[out.name],
                lambda out=out: (out.passed, {"detail": out.detail, "witness": out.witness}))
    return rep


# -- dense oracle ----------------------------------------------------------------------

def suite_oracle(lat: HoneycombLattice, seed: int = 0, max_qubits: int = 24, observables: int = 100,
                 samples: int = 20, dump: str | None = None) -> Report:
    from .oracle import (
        QubitLimitError,
        boundary_excitation_check,
        cross_validate,
        dump_state,
        expectation,
        ground_state,
        random_local_observables,
        stabilizer_uniqueness_check,
        symmetry_invariance_check,
    )
    from .model import ua_restriction, boundary_w

    if lat.n_sites > max_qubits:
        raise QubitLimitError(f"{lat.n_sites} qubits exceeds the limit of {max_qubits}")
    rng = np.random.default_rng(seed)
    rep = Report("oracle", {"lattice": lat.to_spec(), "seed": seed, "observables": observables,
                            "samples": samples})
    bundle = ground_state(lat, max_qubits)
    if dump:
        dump_state(bundle.entangled, dump)

    def stabs():
        worst = max(abs(expectation(s, bundle.reference) - 1) for s in bundle.stabilizers)
        return worst < 1e-12, {"max_deviation": worst, "count": len(bundle.stabilizers)}

    rep.run("oracle.stabilizers", "A_v = B_p = 1 on the reference state", stabs)

    loops = standard_loops(lat)
    for name, loop in loops.items():
        for g in NONTRIVIAL[1:]:
            rep.run(f"oracle.vacuum.{name}.{g[0]}{g[1]}", ANCHOR_VACUUM,
                    lambda loop=loop, g=g: ((d := boundary_excitation_check(bundle, loop, g)) < 1e-10,
                                            {"distance": d}))

    obs = random_local_observables(lat, observables, rng)
    for g in NONTRIVIAL[1:]:
        rep.run(f"oracle.invariance.{g[0]}{g[1]}", ANCHOR_INVARIANCE,
                lambda g=g: ((d := symmetry_invariance_check(bundle, g, obs)) < 1e-10,
                             {"max_deviation": d, "observables": len(obs)}))

    if lat.n_edges <= 16:
        expected = 1 if lat.kind == "patch" else 4
        rep.run("oracle.ground-space-dimension", ANCHOR_UNIQUE,
                lambda: ((d := stabilizer_uniqueness_check(lat)) == expected, {"dimension": d, "expected": expected}))

    va, e, vb = lattice_triples(lat)[0]
    rep.run("oracle.cross.conj-ccz", ANCHOR_CONJ_CCZ,
            lambda: ((d := cross_validate([pauli_x(va), ccz(va, e, vb), pauli_x(va)],
                                          [ccz(va, e, vb), cz(e, vb)], lat.n_sites, rng, samples)) < 1e-12,
                     {"distance": d, "samples": samples}))
    rep.run("oracle.cross.conj-cz", ANCHOR_CONJ_CZ,
            lambda: ((d := cross_validate([pauli_x(va), cz(vb, va), pauli_x(va)],
                                          [cz(vb, va), pauli_z(vb)], lat.n_sites, rng, samples)) < 1e-12,
                     {"distance": d, "samples": samples}))
    circ = SetModel(lat).full_entangler().operator
    for name, loop in loops.items():
        u = ua_restriction(lat, loop).operator
        w = boundary_w(lat, loop, "A")[0]
        rep.run(f"oracle.cross.loop-identity.{name}", ANCHOR_LOOP,
                lambda u=u, w=w: ((d := cross_validate([u, circ], [w, circ, u], lat.n_sites, rng, samples)) < 1e-12,
                                  {"distance": d, "samples": samples}))
    return rep


__all__ = [
    "KNOWN_OMEGA_X", "suite_algebra", "suite_model", "suite_omega", "suite_cohomology",
    "suite_checkdata", "suite_oracle", "conjugation_identities", "group_law_fuzz",
    "substitution_composition", "stabilizer_commutation", "endpoint_locality", "random_paths",
    "standard_loops", "omega_signs", "model_eta", "random_rephasing",
]
