"""Skew brace structure carried by a regular subgroup of the holomorph.

A regular subgroup G of Hol(M1) is in bijection with M1 through g -> g . 1
(the n-part).  Pulling the M1 product back through that bijection puts a
second group law on G:

    a (*) b = ab            (the subgroup law: "multiplicative")
    a (+) b = psi^-1(psi(a) psi(b))   (the transported M1 law: "additive")

and the pair is a skew left brace: a (*) (b (+) c) equals
(a (*) b) (+) (-a) (+) (a (*) c).  Everything here is table-driven over
local indices 0..p**3-1 into the sorted code list, so the axiom, the braid
relation, and the socle/annihilator screens are exhaustive sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .subgroups import SubgroupHol
from .tables import hol_codec

__all__ = [
    "SkewBrace",
    "annihilator_indices",
    "brace_from_codes",
    "brace_from_subgroup",
    "is_involutive",
    "lambda_matches_automorphism_action",
    "socle_indices",
    "verify_brace_axiom",
    "verify_braid",
    "verify_ideal",
    "verify_nondegenerate",
    "ybe_tables",
]


@dataclass
class SkewBrace:
    p: int
    codes: np.ndarray      # sorted holomorph codes, one per brace element
    psi: np.ndarray        # local index -> M1 code of the n-part (a bijection)
    inv_psi: np.ndarray    # M1 code -> local index
    MUL: np.ndarray        # subgroup law on local indices
    ADD: np.ndarray        # transported M1 law on local indices
    INV_MUL: np.ndarray
    INV_ADD: np.ndarray
    LAM: np.ndarray        # LAM[a, b] = (-a) (+) (a (*) b)
    id_idx: int

    @property
    def order(self) -> int:
        return len(self.codes)

    @property
    def theta_order(self) -> int:
        N = hol_codec(self.p).N
        return int(len(np.unique(self.codes % N)))

    def mul_abelian(self) -> bool:
        return bool(np.array_equal(self.MUL, self.MUL.T))

    def add_abelian(self) -> bool:
        return bool(np.array_equal(self.ADD, self.ADD.T))


def brace_from_codes(p: int, codes: np.ndarray) -> SkewBrace:
    codec = hol_codec(p)
    codes = np.sort(np.asarray(codes, dtype=np.int64))
    k = len(codes)
    if k != p**3:
        raise ValueError("carrier must have p**3 elements")
    nparts = codes // codec.N
    if len(np.unique(nparts)) != k:
        raise ValueError("subgroup is not regular: repeated n-parts")
    psi = nparts
    inv_psi = np.full(k, -1, dtype=np.int64)
    inv_psi[psi] = np.arange(k)

    prod = codec.mul_codes(codes[:, None], codes[None, :])
    MUL = np.searchsorted(codes, prod)
    if not np.array_equal(codes[MUL], prod):
        raise ValueError("carrier is not closed under the holomorph product")
    ADD = inv_psi[codec.m1.MUL[psi[:, None], psi[None, :]]]

    inv_codes = codec.inv_codes(codes)
    INV_MUL = np.searchsorted(codes, inv_codes)
    INV_ADD = inv_psi[codec.m1.INV[psi]]
    id_idx = int(np.searchsorted(codes, codec.identity))
    if codes[id_idx] != codec.identity:
        raise ValueError("carrier misses the identity")

    LAM = ADD[INV_ADD[:, None], MUL]
    return SkewBrace(
        p=p,
        codes=codes,
        psi=psi,
        inv_psi=inv_psi,
        MUL=MUL,
        ADD=ADD,
        INV_MUL=INV_MUL,
        INV_ADD=INV_ADD,
        LAM=LAM,
        id_idx=id_idx,
    )


def brace_from_subgroup(sub: SubgroupHol) -> SkewBrace:
    codec = hol_codec(sub.p)
    return brace_from_codes(sub.p, codec.subgroup_codes(sub))


def _slabs(k: int) -> int:
    # keep (slab, k, k) work arrays around a few million entries
    return max(1, (1 << 22) // (k * k))


def verify_brace_axiom(brace: SkewBrace) -> tuple[int, int, int] | None:
    """Check a (*) (b (+) c) == (a (*) b) (+) (-a) (+) (a (*) c) on every triple.

    Returns None on success, else the first failing (a, b, c).
    """
    MUL, ADD, INV_ADD = brace.MUL, brace.ADD, brace.INV_ADD
    k = brace.order
    step = _slabs(k)
    for lo in range(0, k, step):
        sl = np.arange(lo, min(lo + step, k))
        lhs = MUL[sl[:, None, None], ADD[None, :, :]]
        head = ADD[MUL[sl], INV_ADD[sl, None]]
        rhs = ADD[head[:, :, None], MUL[sl][:, None, :]]
        if not np.array_equal(lhs, rhs):
            a, b, c = np.argwhere(lhs != rhs)[0]
            return (int(sl[a]), int(b), int(c))
    return None


def lambda_matches_automorphism_action(brace: SkewBrace) -> bool:
    """The brace-defined lambda must be the stored automorphism acting on psi."""
    codec = hol_codec(brace.p)
    aparts = brace.codes % codec.N
    direct = brace.inv_psi[codec.aut.apply_codes(aparts[:, None], brace.psi[None, :])]
    return bool(np.array_equal(brace.LAM, direct))


def socle_indices(brace: SkewBrace) -> np.ndarray:
    """{a : lambda_a = id} intersected with the additive center.

    Computed twice: once from the LAM table, once from the raw definition
    (a (*) b == a (+) b for every b).  The two must agree.
    """
    k = brace.order
    ker_lam = np.all(brace.LAM == np.arange(k)[None, :], axis=1)
    add_central = np.all(brace.ADD == brace.ADD.T, axis=1)
    route_a = ker_lam & add_central
    route_b = np.all(brace.MUL == brace.ADD, axis=1) & add_central
    if not np.array_equal(route_a, route_b):
        raise AssertionError("socle routes disagree")
    return np.flatnonzero(route_a)


def annihilator_indices(brace: SkewBrace) -> np.ndarray:
    mul_central = np.all(brace.MUL == brace.MUL.T, axis=1)
    soc = np.zeros(brace.order, dtype=bool)
    soc[socle_indices(brace)] = True
    return np.flatnonzero(soc & mul_central)


def verify_ideal(brace: SkewBrace, indices: np.ndarray) -> bool:
    """Additive subgroup, lambda-stable, and normal in the circle group."""
    member = np.zeros(brace.order, dtype=bool)
    member[indices] = True
    idx = np.flatnonzero(member)
    if brace.id_idx not in idx:
        return False
    if not member[brace.ADD[idx[:, None], idx[None, :]]].all():
        return False
    if not member[brace.LAM[:, idx]].all():
        return False
    everyone = np.arange(brace.order)
    conj = brace.MUL[brace.MUL[everyone[:, None], idx[None, :]], brace.INV_MUL[everyone, None]]
    return bool(member[conj].all())


# -- Yang-Baxter -----------------------------------------------------------


def ybe_tables(brace: SkewBrace) -> tuple[np.ndarray, np.ndarray]:
    """r(a, b) = (lambda_a(b), lambda_a(b)^-1 (*) a (*) b) as two index tables."""
    R1 = brace.LAM
    R2 = brace.MUL[brace.MUL[brace.INV_MUL[R1], np.arange(brace.order)[:, None]], np.arange(brace.order)[None, :]]
    return R1, R2


def _apply_r12(R1, R2, i, j, l):
    return R1[i, j], R2[i, j], l


def _apply_r23(R1, R2, i, j, l):
    return i, R1[j, l], R2[j, l]


def verify_braid(brace: SkewBrace) -> tuple[int, int, int] | None:
    """r12 r23 r12 == r23 r12 r23 on every triple; None when it holds."""
    R1, R2 = ybe_tables(brace)
    k = brace.order
    step = _slabs(k)
    jj, ll = np.meshgrid(np.arange(k), np.arange(k), indexing="ij")
    for lo in range(0, k, step):
        sl = np.arange(lo, min(lo + step, k))
        i = np.broadcast_to(sl[:, None, None], (len(sl), k, k))
        j = np.broadcast_to(jj[None, :, :], (len(sl), k, k))
        l = np.broadcast_to(ll[None, :, :], (len(sl), k, k))
        a, b, c = _apply_r12(R1, R2, i, j, l)
        a, b, c = _apply_r23(R1, R2, a, b, c)
        a, b, c = _apply_r12(R1, R2, a, b, c)
        x, y, z = _apply_r23(R1, R2, i, j, l)
        x, y, z = _apply_r12(R1, R2, x, y, z)
        x, y, z = _apply_r23(R1, R2, x, y, z)
        ok = (a == x) & (b == y) & (c == z)
        if not ok.all():
            w = np.argwhere(~ok)[0]
            return (int(sl[w[0]]), int(w[1]), int(w[2]))
    return None


def verify_nondegenerate(brace: SkewBrace) -> bool:
    """Every lambda_a and every rho_b must be a bijection of the carrier."""
    R1, R2 = ybe_tables(brace)
    k = brace.order
    ident = np.arange(k)
    rows_ok = bool(np.array_equal(np.sort(R1, axis=1), np.broadcast_to(ident, R1.shape)))
    cols_ok = bool(np.array_equal(np.sort(R2, axis=0), np.broadcast_to(ident[:, None], R2.shape)))
    return rows_ok and cols_ok


def is_involutive(brace: SkewBrace) -> bool:
    """r(r(a, b)) == (a, b) for every pair."""
    R1, R2 = ybe_tables(brace)
    a2 = R1[R1, R2]
    b2 = R2[R1, R2]
    k = brace.order
    ii, jj = np.meshgrid(np.arange(k), np.arange(k), indexing="ij")
    return bool(np.array_equal(a2, ii) and np.array_equal(b2, jj))
