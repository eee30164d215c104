"""First cohomology of a cyclic group acting on a finitely generated abelian group.

For G = <sigma> of order n acting on M,

    H^1(G, M) = ker(N) / (sigma - 1) M,    N = 1 + sigma + ... + sigma^(n-1).

M is presented as Z^k modulo the relation lattice L spanned by t_i e_(r+i),
so everything reduces to sublattices of Z^k containing L:

    Z = {x : N x in L},    B = (sigma - 1) Z^k + L,    H^1 = Z / B.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import sympy

from .algebra.snf import identity, integer_kernel, matmul, smith_normal_form

__all__ = [
    "GModule",
    "H1Result",
    "StabilityVerdict",
    "InconsistentInputError",
    "h1_cyclic",
    "regular_module",
    "cyclotomic_module",
    "trivial_module",
    "direct_sum",
    "wc_kernel_rank_extremal",
    "coboundary_solve",
    "check_rank_stability",
    "wc_kernel_from_points",
    "lattice_basis",
]


class InconsistentInputError(ValueError):
    """Input contradicts a divisibility constraint (maps to exit code 3)."""


@dataclass(frozen=True)
class GModule:
    """Z^rank + sum Z/torsion[i] with an automorphism sigma of order dividing n.

    ``sigma[i][j]`` is the i-th coordinate of sigma(e_j).
    """

    n: int
    rank: int
    torsion: tuple[int, ...]
    sigma: tuple[tuple[int, ...], ...]

    def __init__(self, n: int, rank: int, torsion: Sequence[int], sigma: Sequence[Sequence[int]]):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "rank", int(rank))
        object.__setattr__(self, "torsion", tuple(int(t) for t in torsion))
        object.__setattr__(self, "sigma", tuple(tuple(int(x) for x in row) for row in sigma))
        self._validate()

    @property
    def k(self) -> int:
        return self.rank + len(self.torsion)

    def relations(self) -> list[list[int]]:
        """Generators of the relation lattice L, as vectors in Z^k."""
        out = []
        for i, t in enumerate(self.torsion):
            v = [0] * self.k
            v[self.rank + i] = t
            out.append(v)
        return out

    def in_relations(self, v: Sequence[int]) -> bool:
        if any(v[: self.rank]):
            return False
        return all(v[self.rank + i] % t == 0 for i, t in enumerate(self.torsion))

    def apply(self, v: Sequence[int]) -> list[int]:
        return [sum(self.sigma[i][j] * v[j] for j in range(self.k)) for i in range(self.k)]

    def _validate(self):
        k = self.k
        if self.n < 1:
            raise ValueError("group order must be positive")
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion invariants must be >= 2")
        if len(self.sigma) != k or any(len(row) != k for row in self.sigma):
            raise ValueError(f"sigma must be {k}x{k}")
        # torsion generators map into the torsion part
        for j in range(self.rank, k):
            if any(self.sigma[i][j] for i in range(self.rank)):
                raise ValueError("sigma does not preserve the torsion subgroup")
        # sigma(L) is inside L
        for rel in self.relations():
            if not self.in_relations(self.apply(rel)):
                raise ValueError("sigma is not compatible with the torsion relations")
        # sigma^n = 1 on M
        for j in range(k):
            e = [int(i == j) for i in range(k)]
            v = e
            for _ in range(self.n):
                v = self.apply(v)
            if not self.in_relations([a - b for a, b in zip(v, e)]):
                raise ValueError("sigma^n is not the identity")

    def norm_matrix(self) -> list[list[int]]:
        acc = identity(self.k)
        power = identity(self.k)
        s = [list(r) for r in self.sigma]
        for _ in range(self.n - 1):
            power = matmul(s, power)
            acc = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(acc, power)]
        return acc

    def to_json(self) -> dict:
        return {"n": self.n, "rank": self.rank, "torsion": list(self.torsion),
                "sigma": [list(r) for r in self.sigma]}

    @classmethod
    def from_json(cls, data: dict) -> "GModule":
        return cls(data["n"], data["rank"], data.get("torsion", []), data["sigma"])


@dataclass(frozen=True)
class H1Result:
    invariant_factors: tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def describe(self) -> str:
        if not self.invariant_factors:
            return "0"
        parts = []
        for d in sorted(set(self.invariant_factors)):
            c = self.invariant_factors.count(d)
            parts.append(f"(Z/{d})^{c}" if c > 1 else f"Z/{d}")
        return " + ".join(parts)

    def __str__(self):
        return self.describe()


def lattice_basis(gens: Sequence[Sequence[int]], k: int) -> list[list[int]]:
    """Echelon basis (rows) of the subgroup of Z^k generated by ``gens``."""
    rows = [list(g) for g in gens if any(g)]
    basis = []
    col = 0
    while rows and col < k:
        nz = [r for r in rows if r[col]]
        zero = [r for r in rows if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            nxt = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    zero.append(r)
            nz = nxt
        if nz:
            piv = nz[0]
            if piv[col] < 0:
                piv = [-a for a in piv]
            basis.append(piv)
        rows = zero
        col += 1
    return basis


def _coordinates(basis: list[list[int]], v: Sequence[int]) -> list[int]:
    """Integer coordinates of v in an echelon basis (v must lie in the span)."""
    v = list(v)
    coords = []
    for b in basis:
        col = next(i for i, x in enumerate(b) if x)
        if v[col] % b[col]:
            raise ArithmeticError("vector is not in the lattice")
        c = v[col] // b[col]
        coords.append(c)
        v = [a - c * x for a, x in zip(v, b)]
    if any(v):
        raise ArithmeticError("vector is not in the lattice")
    return coords


def h1_cyclic(M: GModule) -> H1Result:
    """H^1(Z/n, M) as invariant factors, via Smith normal form."""
    k = M.k
    if k == 0:
        return H1Result(())
    N = M.norm_matrix()
    rels = M.relations()
    # x with N x in L: kernel of [N | -R] projected to the first k coordinates
    wide = [N[i] + [-r[i] for r in rels] for i in range(k)]
    kern = integer_kernel(wide, ncols=k + len(rels))
    z_gens = [v[:k] for v in kern]
    z_basis = lattice_basis(z_gens, k)
    sm1 = [[M.sigma[i][j] - (i == j) for j in range(k)] for i in range(k)]
    b_gens = [[sm1[i][j] for i in range(k)] for j in range(k)] + rels
    coords = [_coordinates(z_basis, b) for b in b_gens if any(b)]
    m = len(z_basis)
    if m == 0:
        return H1Result(())
    if not coords:
        raise ArithmeticError("H^1 has a free part; sigma^n != 1?")
    mat = [[c[i] for c in coords] for i in range(m)]
    sf = smith_normal_form(mat)
    if sf.rank != m:
        raise ArithmeticError("H^1 has a free part; sigma^n != 1?")
    factors = tuple(d for d in sf.d if d > 1)
    for d in factors:
        if M.n % d:
            raise ArithmeticError(f"invariant factor {d} does not divide n = {M.n}")
    return H1Result(factors)


# -- standard modules ---------------------------------------------------------------------

def regular_module(n: int, copies: int = 1) -> GModule:
    """Z[G]^copies with sigma acting by cyclic shift."""
    k = n * copies
    s = [[0] * k for _ in range(k)]
    for c in range(copies):
        for j in range(n):
            s[c * n + (j + 1) % n][c * n + j] = 1
    return GModule(n, k, [], s)


def cyclotomic_module(p: int, copies: int = 1) -> GModule:
    """Z[zeta_p]^copies, sigma = multiplication by zeta_p (companion matrix)."""
    d = p - 1
    k = d * copies
    s = [[0] * k for _ in range(k)]
    for c in range(copies):
        o = c * d
        for j in range(d - 1):
            s[o + j + 1][o + j] = 1
        for i in range(d):
            s[o + i][o + d - 1] = -1
    return GModule(p, k, [], s)


def trivial_module(n: int, rank: int = 1) -> GModule:
    return GModule(n, rank, [], identity(rank))


def direct_sum(*mods: GModule) -> GModule:
    n = mods[0].n
    if any(m.n != n for m in mods):
        raise ValueError("direct sum needs a common group order")
    rank = sum(m.rank for m in mods)
    k = sum(m.k for m in mods)
    s = [[0] * k for _ in range(k)]
    # order: all free parts first, then all torsion parts
    free_off, tors_off = 0, rank
    index_maps = []
    for m in mods:
        idx = list(range(free_off, free_off + m.rank)) + \
            list(range(tors_off, tors_off + len(m.torsion)))
        index_maps.append(idx)
        free_off += m.rank
        tors_off += len(m.torsion)
    torsion = []
    for m, idx in zip(mods, index_maps):
        torsion.extend(m.torsion)
        for i in range(m.k):
            for j in range(m.k):
                s[idx[i]][idx[j]] = m.sigma[i][j]
    return GModule(n, rank, torsion, s)


# -- rank and invariant identities ----------------------------------------------------

_EXTREMAL_PRIMES = (5, 7, 11, 13, 17, 19, 23)


def wc_kernel_rank_extremal(rank_after: int, p: int) -> int:
    """r with kernel (Z/p)^r when rank E(K) = 0; r = rank_after / (p - 1)."""
    if p not in _EXTREMAL_PRIMES:
        raise ValueError(f"p must be one of {_EXTREMAL_PRIMES}")
    if rank_after < 0:
        raise ValueError("rank must be nonnegative")
    if rank_after % (p - 1):
        raise InconsistentInputError(
            f"rank {rank_after} is not divisible by p - 1 = {p - 1}"
        )
    return rank_after // (p - 1)


def coboundary_solve(a: Sequence[int]) -> list[int]:
    """b with b_0 = 0 and b_(l+1) = a_l + b_l.

    The cyclic difference b_(l+1) - b_l equals a_l for every l (indices mod n),
    so applying (sigma^-1 - 1) to sum b_l sigma^l Q gives sum a_l sigma^l Q.
    """
    a = [int(x) for x in a]
    if sum(a):
        raise ValueError(f"coefficients sum to {sum(a)}, not 0")
    n = len(a)
    b = [0] * n
    for ell in range(n - 1):
        b[ell + 1] = a[ell] + b[ell]
    for ell in range(n):
        if b[(ell + 1) % n] - b[ell] != a[ell]:
            raise ArithmeticError("cyclic difference identity failed")
    return b


@dataclass(frozen=True)
class StabilityVerdict:
    rank_before: int
    rank_after: int
    p: int
    rank_stable: bool
    jump: int
    multiple: int | None
    consistent: bool
    kernel_trivial: bool | None

    def describe(self) -> str:
        if self.rank_stable:
            return "rank-stable: restriction on WC is injective (kernel 0)"
        if not self.consistent:
            return f"inconsistent: jump {self.jump} is not divisible by p - 1 = {self.p - 1}"
        return f"rank jump {self.jump} = (p - 1) * {self.multiple}"


def check_rank_stability(rank_before: int, rank_after: int, p: int) -> StabilityVerdict:
    if rank_after < rank_before:
        raise ValueError("rank cannot drop under base change")
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    jump = rank_after - rank_before
    if jump == 0:
        return StabilityVerdict(rank_before, rank_after, p, True, 0, 0, True, True)
    ok = jump % (p - 1) == 0
    return StabilityVerdict(rank_before, rank_after, p, False, jump,
                            jump // (p - 1) if ok else None, ok, None)


@dataclass(frozen=True)
class PointCohomologyReport:
    h1: H1Result
    checked_points: int
    coboundaries: tuple[tuple[int, ...], ...]


def wc_kernel_from_points(m, act, seed, trace_kernel_points: Sequence[Sequence[int]],
                          check_points: bool = True) -> PointCohomologyReport:
    """H^1 of the module spanned by the sigma-orbit of ``seed``.

    Each trace-kernel point is a coefficient vector on sigma^0..sigma^(p-1)
    applied to ``seed``.  Vanishing trace is checked formally (coefficients sum
    to zero) and, with ``check_points``, by the group law.  Each point is then
    written as (sigma^-1 - 1) of an explicit section, and that identity is
    checked with the group law too.
    """
    from .mordell_weil import FFPoint, add_points, apply_sigma, materialize, trace

    p = act.p
    cache: dict = {}
    cobs = []
    for vec in trace_kernel_points:
        if len(vec) != p:
            raise ValueError(f"point vector of length {len(vec)} is not spanned by a {p}-orbit")
        if sum(vec):
            raise ValueError(f"point {list(vec)} has nonzero trace coefficient {sum(vec)}")
        b = coboundary_solve(vec)
        cobs.append(tuple(b))
        if check_points:
            A = materialize(m, act, seed, vec, cache)
            if not trace(act, m, A).is_zero:
                raise ArithmeticError(f"trace of {list(vec)} is not zero")
            R = materialize(m, act, seed, b, cache)
            lhs = add_points(m, apply_sigma(act, R, -1), -R)
            if lhs != A:
                raise ArithmeticError(f"coboundary identity failed for {list(vec)}")
    if check_points:
        orb = [apply_sigma(act, seed, i) for i in range(p)]
        if len(set(orb)) != p or any(P == FFPoint.zero(seed.field) for P in orb):
            raise ValueError("seed orbit has fewer than p distinct points")
    h1 = h1_cyclic(regular_module(p))
    return PointCohomologyReport(h1, len(trace_kernel_points), tuple(cobs))
