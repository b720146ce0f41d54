"""Exact algebra of bit flips dressed with diagonal +-1 phases.

Every operator handled here acts on computational basis states as

    U |z> = (-1)^{p(z)} |z xor x>

where ``x`` is a set of flipped sites and ``p`` is a polynomial over F2 in
the bit variables ``z_v``.  Pauli X/Z, CZ, CCZ and all their products live
in this group, and the representation ``(x, p)`` is canonical, so equality
of operators is equality of the pair.

Monomials are sorted tuples of site indices; the empty tuple is the
constant 1 and carries the global sign.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "Monomial",
    "PhasePoly",
    "XdOperator",
    "NonScalarCommutator",
    "poly_add",
    "poly_substitute",
    "op_multiply",
    "op_inverse",
    "op_conjugate",
    "commutator_phase",
    "apply_to_basis",
    "identity",
    "pauli_x",
    "pauli_z",
    "cz",
    "ccz",
    "diagonal",
    "x_product",
    "z_product",
    "product",
]

Monomial = tuple  # sorted tuple[int, ...]


def _monomial(vars_: Iterable[int]) -> Monomial:
    vs = sorted(set(vars_))
    if any(v < 0 for v in vs):
        raise ValueError("site ids must be non-negative")
    return tuple(vs)


class PhasePoly:
    """Polynomial over F2 in the site bits, stored as a set of monomials."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, monomials: Iterable[Sequence[int]] = ()):
        terms: set = set()
        for m in monomials:
            terms ^= {_monomial(m)}
        self._terms = frozenset(terms)
        self._hash = None

    @classmethod
    def _from_terms(cls, terms: frozenset) -> "PhasePoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, bit: int = 1) -> "PhasePoly":
        return cls._from_terms(frozenset({()}) if bit & 1 else frozenset())

    @property
    def monomials(self) -> tuple:
        """Monomials in canonical (lexicographic) order."""
        return tuple(sorted(self._terms))

    @property
    def terms(self) -> frozenset:
        return self._terms

    def variables(self) -> frozenset:
        return frozenset(v for m in self._terms for v in m)

    def degree(self) -> int:
        return max((len(m) for m in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return self._terms <= {()}

    def constant_bit(self) -> int:
        return 1 if () in self._terms else 0

    def __add__(self, other: "PhasePoly") -> "PhasePoly":
        return PhasePoly._from_terms(self._terms ^ other._terms)

    __xor__ = __add__

    def __mul__(self, other: "PhasePoly") -> "PhasePoly":
        acc: set = set()
        for a in self._terms:
            for b in other._terms:
                acc ^= {tuple(sorted(set(a) | set(b)))}
        return PhasePoly._from_terms(frozenset(acc))

    def substitute(self, flips: Iterable[int]) -> "PhasePoly":
        """Return the polynomial ``z -> p(z xor flips)``, re-expanded."""
        flips = flips if isinstance(flips, (set, frozenset)) else frozenset(flips)
        if not flips or not self._terms:
            return self
        acc: set = set()
        for m in self._terms:
            hit = [v for v in m if v in flips]
            if not hit:
                acc ^= {m}
                continue
            rest = tuple(v for v in m if v not in flips)
            # prod_{v in hit} (z_v + 1) = sum over subsets of hit
            for k in range(len(hit) + 1):
                for sub in combinations(hit, k):
                    acc ^= {tuple(sorted(rest + sub))}
        return PhasePoly._from_terms(frozenset(acc))

    def evaluate(self, bits) -> int:
        """Evaluate at an assignment; ``bits`` maps site -> 0/1 (indexable)."""
        total = 0
        for m in self._terms:
            if all(bits[v] for v in m):
                total ^= 1
        return total

    def restrict_support(self, sites: frozenset) -> "PhasePoly":
        return PhasePoly._from_terms(frozenset(m for m in self._terms if set(m) <= sites))

    def __eq__(self, other) -> bool:
        return isinstance(other, PhasePoly) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self.monomials)

    def __repr__(self) -> str:
        return f"PhasePoly({_format_poly(self)})"


def _format_monomial(m: Monomial) -> str:
    return "1" if not m else "*".join(f"z{v}" for v in m)


def _format_poly(p: PhasePoly) -> str:
    return ";".join(_format_monomial(m) for m in p.monomials)


def poly_add(p: PhasePoly, q: PhasePoly) -> PhasePoly:
    return p + q


def poly_substitute(p: PhasePoly, x: Iterable[int]) -> PhasePoly:
    return p.substitute(x)


class NonScalarCommutator(ValueError):
    """The group commutator of two operators is not +-I."""

    def __init__(self, residual: "XdOperator"):
        super().__init__(f"commutator is not scalar: {residual.to_text()}")
        self.residual = residual


@dataclass(frozen=True)
class XdOperator:
    """``U|z> = (-1)^{poly(z)} |z xor xsupport>``; immutable and canonical."""

    xsupport: frozenset = frozenset()
    poly: PhasePoly = PhasePoly()

    def __post_init__(self):
        if not isinstance(self.xsupport, frozenset):
            object.__setattr__(self, "xsupport", frozenset(self.xsupport))
        if not isinstance(self.poly, PhasePoly):
            object.__setattr__(self, "poly", PhasePoly(self.poly))

    def __mul__(self, other: "XdOperator") -> "XdOperator":
        if not isinstance(other, XdOperator):
            return NotImplemented
        return XdOperator(
            self.xsupport ^ other.xsupport,
            other.poly + self.poly.substitute(other.xsupport),
        )

    def inverse(self) -> "XdOperator":
        return XdOperator(self.xsupport, self.poly.substitute(self.xsupport))

    def conjugate(self, other: "XdOperator") -> "XdOperator":
        """``self * other * self^-1``."""
        return self * other * self.inverse()

    def adjoint(self) -> "XdOperator":
        return self.inverse()

    @property
    def is_diagonal(self) -> bool:
        return not self.xsupport

    @property
    def is_identity(self) -> bool:
        return not self.xsupport and self.poly.is_zero()

    def scalar(self):
        """+1 / -1 if the operator is a multiple of the identity, else None."""
        if self.xsupport or not self.poly.is_constant():
            return None
        return -1 if self.poly.constant_bit() else 1

    def is_involution(self) -> bool:
        return (self * self).is_identity

    def support(self) -> frozenset:
        return self.xsupport | self.poly.variables()

    def negate(self) -> "XdOperator":
        return XdOperator(self.xsupport, self.poly + PhasePoly.constant(1))

    def to_text(self) -> str:
        xs = ",".join(str(v) for v in sorted(self.xsupport))
        return f"X{{{xs}}}; P{{{_format_poly(self.poly)}}}"

    @classmethod
    def from_text(cls, text: str) -> "XdOperator":
        m = re.fullmatch(r"\s*X\{([^}]*)\}\s*;\s*P\{([^}]*)\}\s*", text)
        if m is None:
            raise ValueError(f"malformed operator text: {text!r}")
        xs = [int(t) for t in m.group(1).split(",") if t.strip()]
        monos = []
        for tok in m.group(2).split(";"):
            tok = tok.strip()
            if not tok:
                continue
            if tok == "1":
                monos.append(())
                continue
            vars_ = []
            for f in tok.split("*"):
                f = f.strip()
                if not re.fullmatch(r"z\d+", f):
                    raise ValueError(f"bad monomial factor {f!r}")
                vars_.append(int(f[1:]))
            monos.append(vars_)
        return cls(frozenset(xs), PhasePoly(monos))

    def __repr__(self) -> str:
        return f"XdOperator({self.to_text()})"


def op_multiply(a: XdOperator, b: XdOperator) -> XdOperator:
    return a * b


def op_inverse(a: XdOperator) -> XdOperator:
    return a.inverse()


def op_conjugate(a: XdOperator, b: XdOperator) -> XdOperator:
    return a.conjugate(b)


def commutator_phase(a: XdOperator, b: XdOperator) -> int:
    """Return s with a b a^-1 b^-1 = s I; raise NonScalarCommutator otherwise."""
    comm = a * b * a.inverse() * b.inverse()
    s = comm.scalar()
    if s is None:
        raise NonScalarCommutator(comm)
    return s


def apply_to_basis(a: XdOperator, z: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Image of the basis state ``z`` (a bit sequence indexed by site)."""
    n = len(z)
    if a.support() and max(a.support()) >= n:
        raise ValueError(f"operator acts on site {max(a.support())} but state has {n} sites")
    sign = -1 if a.poly.evaluate(z) else 1
    out = list(z)
    for v in a.xsupport:
        out[v] ^= 1
    return tuple(out), sign


_IDENTITY = XdOperator()


def identity() -> XdOperator:
    return _IDENTITY


def pauli_x(v: int) -> XdOperator:
    return XdOperator(frozenset({v}), PhasePoly())


def pauli_z(v: int) -> XdOperator:
    return XdOperator(frozenset(), PhasePoly([(v,)]))


def cz(u: int, v: int) -> XdOperator:
    if u == v:
        raise ValueError("CZ needs two distinct sites")
    return XdOperator(frozenset(), PhasePoly([(u, v)]))


def ccz(u: int, v: int, w: int) -> XdOperator:
    if len({u, v, w}) != 3:
        raise ValueError("CCZ needs three distinct sites")
    return XdOperator(frozenset(), PhasePoly([(u, v, w)]))


def diagonal(p: PhasePoly | Iterable[Sequence[int]]) -> XdOperator:
    return XdOperator(frozenset(), p if isinstance(p, PhasePoly) else PhasePoly(p))


def x_product(sites: Iterable[int]) -> XdOperator:
    acc: set = set()
    for s in sites:
        acc ^= {s}
    return XdOperator(frozenset(acc), PhasePoly())


def z_product(sites: Iterable[int]) -> XdOperator:
    return diagonal(PhasePoly((s,) for s in sites))


def product(ops: Iterable[XdOperator]) -> XdOperator:
    acc = _IDENTITY
    for op in ops:
        acc = acc * op
    return acc
