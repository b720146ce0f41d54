"""Exact 2-cocycles of finite groups with permutation coefficient modules.

U(1) values are exact rationals ``q`` in [0, 1) standing for ``exp(2 pi i q)``;
the group law is addition mod 1.  A cochain is a dict keyed by group-element
indices (and a label for module-valued cochains).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from math import gcd, lcm
from typing import Mapping, Sequence

import numpy as np

Phase = Fraction


def phase(value) -> Fraction:
    """Normalize to [0, 1).  Accepts Fraction, int, or ``"num/den"``."""
    if isinstance(value, str):
        value = Fraction(value.strip())
    return Fraction(value) % 1


def phase_str(q: Fraction) -> str:
    q = phase(q)
    return f"{q.numerator}/{q.denominator}"


def sign_to_phase(s: int) -> Fraction:
    if s not in (1, -1):
        raise ValueError(f"not a sign: {s}")
    return Fraction(0) if s == 1 else Fraction(1, 2)


class GroupError(ValueError):
    pass


class FiniteGroup:
    """A finite group given by its multiplication table on 0..n-1."""

    def __init__(self, table: Sequence[Sequence[int]], names: Sequence[str] | None = None):
        self.table = [list(map(int, row)) for row in table]
        n = len(self.table)
        self.order = n
        self.names = list(names) if names is not None else [str(i) for i in range(n)]
        if any(len(row) != n for row in self.table):
            raise GroupError("multiplication table is not square")
        for row in self.table:
            if sorted(row) != list(range(n)):
                raise GroupError("table row is not a permutation")
        ids = [e for e in range(n) if all(self.table[e][g] == g == self.table[g][e] for g in range(n))]
        if len(ids) != 1:
            raise GroupError("no unique identity")
        self.identity = ids[0]
        for a, b, c in iproduct(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise GroupError(f"not associative at {(a, b, c)}")
        self.inverse = [next(h for h in range(n) if self.table[g][h] == self.identity) for g in range(n)]

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        return all(self.table[g][h] == self.table[h][g] for g in self.elements() for h in self.elements())

    def index(self, name) -> int:
        if isinstance(name, int):
            return name
        return self.names.index(str(name))

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        if n < 1:
            raise GroupError("cyclic group of order < 1")
        return cls([[(a + b) % n for b in range(n)] for a in range(n)], [str(i) for i in range(n)])

    @classmethod
    def direct_product(cls, g: "FiniteGroup", h: "FiniteGroup") -> "FiniteGroup":
        """Element ``(a, b)`` has index ``a + |g| * b``."""
        n, m = g.order, h.order
        table = [[0] * (n * m) for _ in range(n * m)]
        for a1, b1, a2, b2 in iproduct(range(n), range(m), range(n), range(m)):
            table[a1 + n * b1][a2 + n * b2] = g.mul(a1, a2) + n * h.mul(b1, b2)
        names = [f"({g.names[a]},{h.names[b]})" for b in range(m) for a in range(n)]
        return cls(table, names)

    @classmethod
    def klein(cls) -> "FiniteGroup":
        """Z2 x Z2 ordered (0,0), (1,0), (0,1), (1,1)."""
        return cls.direct_product(cls.cyclic(2), cls.cyclic(2))

    @classmethod
    def named(cls, name: str) -> "FiniteGroup":
        name = name.lower()
        if name in ("z2z2", "klein", "z2xz2"):
            return cls.klein()
        if name.startswith("z") and name[1:].isdigit():
            return cls.cyclic(int(name[1:]))
        raise GroupError(f"unknown group {name!r}")

    def to_dict(self) -> dict:
        return {"table": self.table, "names": self.names}


@dataclass
class GModule:
    """Labels permuted by ``a -> a^(g)``; acts on sum_a U(1) by ``x_a -> x_{a^(g^-1)}``."""

    group: FiniteGroup
    labels: tuple
    act: dict  # (label, g) -> label^(g)

    def __post_init__(self):
        self.labels = tuple(self.labels)
        G = self.group
        for a in self.labels:
            if self.act[(a, G.identity)] != a:
                raise GroupError(f"identity moves label {a}")
            for g in G.elements():
                for h in G.elements():
                    if self.act[(self.act[(a, h)], g)] != self.act[(a, G.mul(g, h))]:
                        raise GroupError(f"(a^(h))^(g) != a^(gh) for a={a}, g={g}, h={h}")

    @classmethod
    def trivial(cls, group: FiniteGroup, labels: Sequence) -> "GModule":
        return cls(group, tuple(labels), {(a, g): a for a in labels for g in group.elements()})

    def image(self, a, g: int):
        return self.act[(a, g)]

    def is_trivial(self) -> bool:
        return all(self.act[(a, g)] == a for a in self.labels for g in self.group.elements())


# -- cochains -------------------------------------------------------------------

def eta_from_omega(omega: Mapping, module: GModule) -> dict:
    """eta_a(g,h) = omega^(a^((gh)^-1))(g,h); ``omega[label][g][h]`` are phases."""
    G = module.group
    eta = {}
    for a in module.labels:
        for g in G.elements():
            for h in G.elements():
                b = module.image(a, G.inverse[G.mul(g, h)])
                if b not in omega:
                    raise KeyError(f"omega missing label {b!r}")
                eta[(a, g, h)] = phase(omega[b][g][h])
    return eta


def cocycle2_check(eta: Mapping, module: GModule):
    """Return ``(True, None)`` or ``(False, (a, g, h, k))`` for the first failure of

    eta_{a^(g^-1)}(h,k) + eta_a(g,hk) = eta_a(gh,k) + eta_a(g,h)  (mod 1).
    """
    G = module.group
    for a in module.labels:
        for g, h, k in iproduct(G.elements(), repeat=3):
            lhs = eta[(module.image(a, G.inverse[g]), h, k)] + eta[(a, g, G.mul(h, k))]
            rhs = eta[(a, G.mul(g, h), k)] + eta[(a, g, h)]
            if (lhs - rhs) % 1 != 0:
                return False, (a, g, h, k)
    return True, None


def coboundary(lam: Mapping, module: GModule) -> dict:
    """Change of eta under ``W_b^(g) -> exp(2 pi i lam[b, g]) W_b^(g)``:

    (d lam)_a(g,h) = lam_{b}(gh) - lam_{a^(g^-1)}(g) - lam_{b}(h),  b = a^((gh)^-1).
    """
    G = module.group
    out = {}
    for a in module.labels:
        for g in G.elements():
            for h in G.elements():
                b = module.image(a, G.inverse[G.mul(g, h)])
                c = module.image(a, G.inverse[g])
                out[(a, g, h)] = phase(lam[(b, G.mul(g, h))] - lam[(c, g)] - lam[(b, h)])
    return out


def coboundary_from_rephasing(lam: Mapping, wt, model, module: GModule | None = None) -> dict:
    """Recompute omega with ``W_b^(g) -> exp(2 pi i lam[b, g]) W_b^(g)`` and
    return ``eta' - eta``.  ``lam`` is keyed by (label, group index)."""
    from .model import KLEIN, omega_table

    module = module or GModule.trivial(FiniteGroup.klein(), tuple(wt.entries))
    shifts = {}
    for (b, g), q in lam.items():
        shifts.setdefault(b, {})[KLEIN[g]] = phase(q)
    before = eta_from_omega(omega_table(model, wt).tables, module)
    after = eta_from_omega(omega_table(model, wt.rephased(shifts)).tables, module)
    return cochain_sub(after, before)


def cochain_add(x: Mapping, y: Mapping) -> dict:
    return {k: phase(x[k] + y[k]) for k in x}


def cochain_sub(x: Mapping, y: Mapping) -> dict:
    return {k: phase(x[k] - y[k]) for k in x}


def trivial_cochain(module: GModule) -> dict:
    G = module.group
    return {(a, g, h): Fraction(0) for a in module.labels for g in G.elements() for h in G.elements()}


def _order_of_values(*cochains: Mapping) -> int:
    n = 1
    for c in cochains:
        for q in c.values():
            n = lcm(n, phase(q).denominator)
    return n


def _coboundary_matrix(module: GModule) -> tuple[np.ndarray, list, list]:
    """Integer matrix of lam -> d lam (rows (a,g,h), columns (b,k))."""
    G = module.group
    cols = [(b, k) for b in module.labels for k in G.elements()]
    col_index = {c: i for i, c in enumerate(cols)}
    rows = [(a, g, h) for a in module.labels for g in G.elements() for h in G.elements()]
    mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for r, (a, g, h) in enumerate(rows):
        b = module.image(a, G.inverse[G.mul(g, h)])
        c = module.image(a, G.inverse[g])
        mat[r, col_index[(b, G.mul(g, h))]] += 1
        mat[r, col_index[(c, g)]] -= 1
        mat[r, col_index[(b, h)]] -= 1
    return mat, rows, cols


@dataclass
class CohomologousResult:
    answer: str  # "yes" | "no"
    method: str  # "exhaustive" | "snf"
    modulus: int
    candidates: int
    witness: dict | None = None


def cohomologous(eta1: Mapping, eta2: Mapping, module: GModule, bound: int = 2 ** 20,
                 modulus: int | None = None, chunk: int = 1 << 14) -> CohomologousResult:
    """Is ``eta2 - eta1 = d lam`` for some ``lam`` valued in Z_n?

    ``n`` defaults to the lcm of all value denominators.  Exhaustive search is
    used when ``n^(labels*|G|) <= bound``; otherwise the linear system is solved
    over Z_n through a Smith normal form.
    """
    n = modulus or _order_of_values(eta1, eta2)
    mat, rows, cols = _coboundary_matrix(module)
    target = np.array([int(phase(eta2[r] - eta1[r]) * n) % n for r in rows], dtype=np.int64)
    if any((phase(eta2[r] - eta1[r]) * n).denominator != 1 for r in rows):
        raise ValueError(f"values do not lie in Z_{n}")
    m = len(cols)
    total = n ** m
    if total <= bound:
        powers = n ** np.arange(m, dtype=np.int64)
        for start in range(0, total, chunk):
            codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
            lam = (codes[:, None] // powers[None, :]) % n
            hit = np.all((lam @ mat.T) % n == target[None, :], axis=1)
            if hit.any():
                best = lam[int(np.argmax(hit))]
                witness = {cols[i]: Fraction(int(best[i]), n) for i in range(m)}
                return CohomologousResult("yes", "exhaustive", n, total, witness)
        return CohomologousResult("no", "exhaustive", n, total)
    sol = solve_mod(mat.tolist(), target.tolist(), n)
    if sol is None:
        return CohomologousResult("no", "snf", n, total)
    return CohomologousResult("yes", "snf", n, total, {cols[i]: Fraction(sol[i] % n, n) for i in range(m)})


def antisymmetric_form(omega_matrix: Sequence[Sequence], group: FiniteGroup) -> list:
    """omega(g,h) - omega(h,g) for abelian ``group``: a U(1) class invariant
    under trivial action (it vanishes on every coboundary)."""
    if not group.is_abelian():
        raise GroupError("antisymmetric form needs an abelian group")
    return [[phase(omega_matrix[g][h] - omega_matrix[h][g]) for h in group.elements()]
            for g in group.elements()]


# -- Smith normal form ----------------------------------------------------------

@dataclass
class SNFResult:
    D: list
    U: list
    V: list
    Vinv: list
    modulus: int | None = None

    @property
    def diagonal(self) -> list:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]


def _identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _matmul(a, b, mod=None):
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    bt = list(zip(*b))
    out = [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]
    if mod:
        out = [[v % mod for v in row] for row in out]
    return out


def smith_normal_form(matrix: Sequence[Sequence[int]], modulus: int | None = None) -> SNFResult:
    """``U M V = D`` with ``D`` diagonal and ``d_1 | d_2 | ...``.

    Over Z when ``modulus`` is None (U, V unimodular).  With a modulus the
    integer form is reduced: each ``d_i`` becomes ``gcd(d_i, n)`` (0 for
    multiples of n) after rescaling U's rows by units, so ``U M V = D (mod n)``.
    """
    A = [list(map(int, row)) for row in matrix]
    m = len(A)
    k = len(A[0]) if m else 0
    U, V, Vi = _identity(m), _identity(k), _identity(k)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        if c:
            A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
            U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, c):  # col_dst += c * col_src
        if c:
            for row in A:
                row[dst] += c * row[src]
            for row in V:
                row[dst] += c * row[src]
            Vi[src] = [x - c * y for x, y in zip(Vi[src], Vi[dst])]

    t = 0
    while t < min(m, k):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, k) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, k):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, k)
                            if A[i][j] % A[t][t]), None)
                if bad is None:
                    break
                add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    if modulus is None:
        return SNFResult(A, U, V, Vi, None)
    n = modulus
    for i in range(min(m, k)):
        d = A[i][i] % n
        g = gcd(d, n)
        if d == 0:
            A[i][i] = 0
            continue
        kq = d // g
        step = n // g
        u = next(kq + s * step for s in range(g + 1) if gcd(kq + s * step, n) == 1)
        uinv = pow(u, -1, n)
        U[i] = [(x * uinv) % n for x in U[i]]
        A[i] = [(x * uinv) % n for x in A[i]]
        A[i][i] = g % n
    A = [[x % n for x in row] for row in A]
    U = [[x % n for x in row] for row in U]
    V = [[x % n for x in row] for row in V]
    Vi = [[x % n for x in row] for row in Vi]
    # a gcd can equal n; normalize those to 0 for display
    for i in range(min(m, k)):
        if A[i][i] == n:
            A[i][i] = 0
    return SNFResult(A, U, V, Vi, n)


def solve_mod(matrix: Sequence[Sequence[int]], rhs: Sequence[int], n: int):
    """A solution x of ``M x = b (mod n)`` or None."""
    snf = smith_normal_form(matrix)
    m = len(matrix)
    k = len(matrix[0]) if m else 0
    ub = [sum(u * b for u, b in zip(row, rhs)) for row in snf.U]
    y = [0] * k
    for i in range(m):
        d = snf.D[i][i] if i < k else 0
        r = ub[i] % n
        if d == 0:
            if r:
                return None
            continue
        g = gcd(d, n)
        if r % g:
            return None
        nn = n // g
        y[i] = ((r // g) * pow((d // g) % nn, -1, nn)) % nn if nn > 1 else 0
    return [sum(v * yy for v, yy in zip(row, y)) % n for row in snf.V]


# -- H^2 with trivial coefficients Z_n ---------------------------------------------

def bar_differentials(group: FiniteGroup) -> tuple[list, list]:
    """Integer matrices d1: C^1 -> C^2 and d2: C^2 -> C^3 (trivial action)."""
    G = group
    n = G.order
    idx2 = lambda g, h: g * n + h  # noqa: E731
    d1 = [[0] * n for _ in range(n * n)]
    for g, h in iproduct(range(n), repeat=2):
        r = idx2(g, h)
        d1[r][h] += 1
        d1[r][G.mul(g, h)] -= 1
        d1[r][g] += 1
    d2 = [[0] * (n * n) for _ in range(n ** 3)]
    for g, h, k in iproduct(range(n), repeat=3):
        r = (g * n + h) * n + k
        d2[r][idx2(h, k)] += 1
        d2[r][idx2(G.mul(g, h), k)] -= 1
        d2[r][idx2(g, G.mul(h, k))] += 1
        d2[r][idx2(g, h)] -= 1
    return d1, d2


@dataclass
class H2Result:
    invariants: list  # invariant factors > 1, divisibility chain
    order: int
    method: str


def h2_trivial_action(group: FiniteGroup, n: int, max_order: int = 8) -> H2Result:
    """H^2(G, Z_n) for trivial action, as ker d2 / im d1 through SNFs."""
    if group.order > max_order:
        raise ValueError(f"group order {group.order} exceeds the bound {max_order}")
    d1, d2 = bar_differentials(group)
    m = group.order ** 2
    snf = smith_normal_form(d2)
    diag = snf.diagonal + [0] * (m - len(snf.diagonal))
    scale = [n // gcd(d, n) for d in diag]  # gcd(0, n) = n gives 1
    # kernel basis: columns V[:, i] * scale[i]; coordinates c = diag(scale)^-1 V^-1 x
    gens = [list(col) for col in zip(*d1)] + [[n * int(i == j) for i in range(m)] for j in range(m)]
    coords = []
    for x in gens:
        y = [sum(v * xx for v, xx in zip(row, x)) for row in snf.Vinv]
        if any(yi % s for yi, s in zip(y, scale)):
            raise ArithmeticError("generator outside the cocycle lattice")
        coords.append([yi // s for yi, s in zip(y, scale)])
    rel = [list(r) for r in zip(*coords)]  # m x (#gens)
    quo = smith_normal_form(rel)
    inv = [d for d in quo.diagonal if d != 1]
    if any(d == 0 for d in inv) or len(quo.diagonal) < m:
        raise ArithmeticError("quotient is not finite")
    order = 1
    for d in inv:
        order *= d
    return H2Result(inv, order, "snf")


def _encode(vals: np.ndarray, n: int) -> np.ndarray:
    powers = n ** np.arange(vals.shape[-1], dtype=np.int64)
    return (vals % n) @ powers


def h2_bruteforce(group: FiniteGroup, n: int, limit: int = 2 ** 20) -> H2Result:
    """Enumerate every 2-cochain valued in Z_n and count classes directly."""
    d1, d2 = bar_differentials(group)
    m = group.order ** 2
    total = n ** m
    if total > limit:
        raise ValueError(f"{total} cochains exceed the enumeration limit")
    D1 = np.array(d1, dtype=np.int64)
    D2 = np.array(d2, dtype=np.int64)
    powers = n ** np.arange(m, dtype=np.int64)
    codes = np.arange(total, dtype=np.int64)
    cochains = (codes[:, None] // powers[None, :]) % n
    cocycles = cochains[np.all((cochains @ D2.T) % n == 0, axis=1)]
    k = group.order
    lam = (np.arange(n ** k, dtype=np.int64)[:, None] // (n ** np.arange(k, dtype=np.int64))[None, :]) % n
    bounds = np.unique(_encode(lam @ D1.T, n))
    nz, nb = len(cocycles), len(bounds)
    if nz % nb:
        raise ArithmeticError("coboundaries do not divide cocycles")
    order = nz // nb
    bset = set(bounds.tolist())

    def torsion_count(d: int) -> int:
        enc = _encode(d * cocycles, n)
        return sum(1 for e in enc.tolist() if e in bset) // nb

    invariants = _invariants_from_torsion(order, torsion_count)
    return H2Result(invariants, order, "bruteforce")


def _prime_factors(x: int) -> list:
    out, p = [], 2
    while p * p <= x:
        while x % p == 0:
            out.append(p)
            x //= p
        p += 1
    if x > 1:
        out.append(x)
    return sorted(set(out))


def _invariants_from_torsion(order: int, torsion_count) -> list:
    """Invariant factors of a finite abelian group from |H[d]| counts."""
    if order == 1:
        return []
    exps_by_p = {}
    for p in _prime_factors(order):
        a_prev, k, parts = 0, 1, []
        total_exp = 0
        x = order
        while x % p == 0:
            x //= p
            total_exp += 1
        counts = []
        while a_prev < total_exp:
            c = torsion_count(p ** k)
            a = 0
            while c > 1:
                c //= p
                a += 1
            counts.append(a - a_prev)  # number of cyclic factors of exponent >= k
            a_prev = a
            k += 1
        counts.append(0)
        for kk in range(len(counts) - 1):
            parts += [kk + 1] * (counts[kk] - counts[kk + 1])
        exps_by_p[p] = sorted(parts, reverse=True)
    width = max(len(v) for v in exps_by_p.values())
    inv = [1] * width
    for p, es in exps_by_p.items():
        for i, e in enumerate(es):
            inv[i] *= p ** e
    return sorted(d for d in inv if d > 1)


# -- cochain files -----------------------------------------------------------------

def cochain_to_json(eta: Mapping, module: GModule) -> dict:
    G = module.group
    return {
        "group": G.to_dict(),
        "labels": list(module.labels),
        "action": {a: [module.image(a, g) for g in G.elements()] for a in module.labels},
        "values": {f"{a},{g},{h}": phase_str(eta[(a, g, h)])
                   for a in module.labels for g in G.elements() for h in G.elements()},
    }


def cochain_from_json(obj: Mapping) -> tuple[dict, GModule]:
    """Parse a cochain file; raise ValueError on anything malformed or partial."""
    try:
        G = FiniteGroup(obj["group"]["table"], obj["group"].get("names"))
        labels = tuple(obj["labels"])
        act = {(a, g): obj["action"][a][g] for a in labels for g in G.elements()}
        module = GModule(G, labels, act)
        eta = {}
        for key, val in obj["values"].items():
            a, g, h = key.split(",")
            eta[(a, int(g), int(h))] = phase(val)
    except (KeyError, IndexError, TypeError, AttributeError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed cochain file: {exc!r}") from exc
    missing = [(a, g, h) for a in labels for g in G.elements() for h in G.elements() if (a, g, h) not in eta]
    if missing:
        raise ValueError(f"cochain is not total, missing {missing[0]}")
    return eta, module
