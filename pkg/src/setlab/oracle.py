"""Dense state-vector ground truth for vacuum-level identities.

Qubit ``k`` is bit ``k`` of the basis index (site-id order, little endian).
"""
from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .algebra import XdOperator, ccz, cz, pauli_x, pauli_z
from .lattice import HoneycombLattice, Loop
from .model import (
    SetModel,
    alpha_conjugate,
    boundary_w,
    defect_boundary_unitary,
    plaquette_op,
    restricted_action,
    vertex_op,
)

MAX_QUBITS = 24
_MAGIC = b"SETLABSV"


class QubitLimitError(ValueError):
    pass


def _guard(n: int, max_qubits: int) -> None:
    if n > max_qubits:
        raise QubitLimitError(f"{n} qubits exceeds the limit of {max_qubits}")


def operator_masks(op: XdOperator) -> tuple[np.ndarray, int]:
    masks = np.array([sum(1 << v for v in m) for m in op.poly.monomials], dtype=np.uint64)
    xmask = sum(1 << v for v in op.xsupport)
    return masks, xmask


@dataclass
class StateVector:
    amplitudes: np.ndarray

    @property
    def n(self) -> int:
        return int(self.amplitudes.shape[0]).bit_length() - 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        return StateVector(self.amplitudes / self.norm())

    def distance(self, other: "StateVector") -> float:
        return float(np.linalg.norm(self.amplitudes - other.amplitudes))

    @classmethod
    def basis(cls, n: int, index: int = 0, max_qubits: int = MAX_QUBITS) -> "StateVector":
        _guard(n, max_qubits)
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator, max_qubits: int = MAX_QUBITS) -> "StateVector":
        _guard(n, max_qubits)
        amps = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
        return cls(amps / np.linalg.norm(amps))


def apply_xd(op: XdOperator, state: StateVector) -> StateVector:
    if op.support() and max(op.support()) >= state.n:
        raise ValueError(f"operator reaches site {max(op.support())} on a {state.n}-qubit state")
    masks, xmask = operator_masks(op)
    return StateVector(kernels.apply_phase_flip(state.amplitudes, masks, np.uint64(xmask)))


def apply_sequence(ops: Sequence[XdOperator], state: StateVector) -> StateVector:
    """Apply ``ops[0] ops[1] ... ops[-1]`` (rightmost acts first)."""
    for op in reversed(ops):
        state = apply_xd(op, state)
    return state


def expectation(op: XdOperator, state: StateVector) -> complex:
    return complex(np.vdot(state.amplitudes, apply_xd(op, state).amplitudes))


@dataclass
class GroundStateBundle:
    lattice: HoneycombLattice
    reference: StateVector  # toric-code edges (x) |+> vertices
    entangled: StateVector  # full CCZ circuit applied to the reference
    stabilizers: list


def ground_state(lat: HoneycombLattice, max_qubits: int = MAX_QUBITS) -> GroundStateBundle:
    n = lat.n_sites
    _guard(n, max_qubits)
    amps = np.zeros(1 << n, dtype=np.complex128)
    # edges in |0>, vertices in |+>: every index whose edge bits vanish
    idx = np.arange(1 << lat.n_vertices, dtype=np.uint64)
    full = np.zeros_like(idx)
    for k, v in enumerate(range(lat.n_vertices)):
        full |= ((idx >> np.uint64(k)) & np.uint64(1)) << np.uint64(lat.vertex_site(v))
    amps[full] = 1.0
    state = StateVector(amps / np.linalg.norm(amps))
    for p in range(len(lat.plaquettes)):
        bp = plaquette_op(lat, p)
        state = StateVector(0.5 * (state.amplitudes + apply_xd(bp, state).amplitudes))
        nrm = state.norm()
        if nrm < 1e-12:
            raise ArithmeticError("plaquette projection annihilated the state")
        state = StateVector(state.amplitudes / nrm)
    stabs = [vertex_op(lat, v) for v in range(lat.n_vertices)] + [
        plaquette_op(lat, p) for p in range(len(lat.plaquettes))]
    model = SetModel(lat)
    entangled = apply_xd(model.full_entangler().operator, state)
    return GroundStateBundle(lat, state, entangled, stabs)


def vacuum_expectation(bundle: GroundStateBundle, op: XdOperator) -> complex:
    """phi(op) = <Omega| op |Omega> on the entangled state."""
    return expectation(op, bundle.entangled)


def random_local_observables(lat: HoneycombLattice, count: int, rng: np.random.Generator,
                             radius: int = 2) -> list:
    """Random local flip-and-phase operators.

    Half of them are multiplied by an entangler-dressed stabilizer so that
    their vacuum expectation is not forced to vanish.
    """
    model = SetModel(lat)
    circ = model.full_entangler()
    stabs = model.stabilizers()
    out = []
    for _ in range(count):
        centre = int(rng.integers(lat.n_sites))
        sites = sorted(lat.thicken([centre], radius))
        op = XdOperator()
        for _ in range(int(rng.integers(1, 4))):
            kind = int(rng.integers(4))
            picks = [int(s) for s in rng.choice(sites, size=min(3, len(sites)), replace=False)]
            if kind == 0:
                op = op * pauli_x(picks[0])
            elif kind == 1:
                op = op * pauli_z(picks[0])
            elif kind == 2 and len(picks) >= 2:
                op = op * cz(picks[0], picks[1])
            elif len(picks) >= 3:
                op = op * ccz(*picks[:3])
        if rng.random() < 0.5:
            s = stabs[int(rng.integers(len(stabs)))]
            op = alpha_conjugate(circ, s) * (op if rng.random() < 0.5 else XdOperator())
        out.append(op)
    return out


def symmetry_invariance_check(bundle: GroundStateBundle, g: tuple, observables: Iterable[XdOperator]) -> float:
    """max |phi(beta_g(A)) - phi(A)| over the observables."""
    model = SetModel(bundle.lattice)
    worst = 0.0
    for op in observables:
        a = vacuum_expectation(bundle, op)
        b = vacuum_expectation(bundle, model.beta(g, op))
        worst = max(worst, abs(b - a))
    return worst


def boundary_excitation_check(bundle: GroundStateBundle, loop: Loop, g: tuple = (1, 0)) -> float:
    """|| u_g(L) Omega - W_g Omega || with W_g the boundary unitary."""
    lat = bundle.lattice
    u = restricted_action(lat, loop, g)
    w = defect_boundary_unitary(lat, loop, g)
    return apply_xd(u, bundle.entangled).distance(apply_xd(w, bundle.entangled))


def w1_acts_trivially(bundle: GroundStateBundle, loop: Loop, sub: str = "A") -> float:
    _, w1, _ = boundary_w(bundle.lattice, loop, sub)
    return apply_xd(w1, bundle.reference).distance(bundle.reference)


def _edge_ops(lat: HoneycombLattice, drop_plaquettes: Iterable[int] = ()) -> list:
    """Stabilizers re-indexed onto the edge qubits only (edge e -> qubit e)."""
    shift = lat.n_vertices
    drop = set(drop_plaquettes)
    ops = []
    for op in [vertex_op(lat, v) for v in range(lat.n_vertices)] + [
            plaquette_op(lat, p) for p in range(len(lat.plaquettes)) if p not in drop]:
        ops.append(XdOperator(frozenset(s - shift for s in op.xsupport),
                              [tuple(s - shift for s in m) for m in op.poly.monomials]))
    return ops


def stabilizer_uniqueness_check(lat: HoneycombLattice, drop_plaquettes: Iterable[int] = (),
                                max_qubits: int = 16, block: int = 512) -> int:
    """Dimension of the joint +1 eigenspace of all A_v, B_p on the edge qubits.

    Computed as the trace of the product of projectors, applied to every
    computational basis state.
    """
    n = lat.n_edges
    _guard(n, max_qubits)
    ops = [operator_masks(op) for op in _edge_ops(lat, drop_plaquettes)]
    dim = 1 << n
    total = 0.0
    for start in range(0, dim, block):
        cols = min(block, dim - start)
        m = np.zeros((dim, cols), dtype=np.complex128)
        m[np.arange(start, start + cols), np.arange(cols)] = 1.0
        for masks, xmask in ops:
            m = 0.5 * (m + kernels.apply_phase_flip_columns(m, masks, np.uint64(xmask)))
        total += float(np.real(m[np.arange(start, start + cols), np.arange(cols)].sum()))
    return int(round(total))


def dump_state(state: StateVector, path: str | Path) -> None:
    """Binary dump: magic, uint32 n, endianness tag, then complex128 amplitudes."""
    tag = b"<"
    with open(path, "wb") as fh:
        fh.write(_MAGIC + struct.pack("<I", state.n) + tag)
        fh.write(state.amplitudes.astype("<c16").tobytes())


def load_state(path: str | Path) -> StateVector:
    data = Path(path).read_bytes()
    if not data.startswith(_MAGIC):
        raise ValueError("not a setlab state dump")
    (n,) = struct.unpack("<I", data[8:12])
    tag = data[12:13].decode()
    amps = np.frombuffer(data[13:], dtype=np.dtype(tag + "c16"))
    if amps.shape[0] != 1 << n:
        raise ValueError("truncated state dump")
    return StateVector(amps.astype(np.complex128))


def cross_validate(lhs: Sequence[XdOperator], rhs: Sequence[XdOperator], n: int,
                   rng: np.random.Generator, samples: int = 20) -> float:
    """Largest distance between the two operator products on random states."""
    worst = 0.0
    for _ in range(samples):
        s = StateVector.random(n, rng)
        worst = max(worst, apply_sequence(lhs, s).distance(apply_sequence(rhs, s)))
    return worst


__all__ = [
    "StateVector", "GroundStateBundle", "QubitLimitError", "apply_xd", "apply_sequence",
    "expectation", "ground_state", "vacuum_expectation", "random_local_observables",
    "symmetry_invariance_check", "boundary_excitation_check", "stabilizer_uniqueness_check",
    "dump_state", "load_state", "cross_validate",
]
