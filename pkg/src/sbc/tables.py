"""Vectorized integer-table layer over the scalar object model.

Everything here is an optimization: elements become dense integer codes and
the group operations become numpy array formulas.  The formulas are the same
residue expressions as the scalar routes in group_core / automorphisms /
holomorph, and the test suite pins the two layers together (samples plus the
exhaustive agreements the acceptance checks demand).

Codes:
  M1 element   (a, b, c)            ->  (a p + b) p + c                in [0, p^3)
  automorphism (b1, b2, a1..a4)     ->  enumeration index              in [0, N)
  holomorph    (n, alpha)           ->  m1code(n) * N + index(alpha)   in [0, p^3 N)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .automorphisms import AutM1Elt, GL2Mat, aut_packed_key, aut_order_total
from .group_core import M1Elt, half_mod, validate_prime
from .holomorph import HolElt
from .subgroups import SubgroupHol, subgroup_from_cosets

__all__ = ["AutTable", "M1Table", "HolCodec", "aut_table", "m1_table", "hol_codec"]


@lru_cache(maxsize=4)
def m1_table(p: int) -> "M1Table":
    return M1Table(p)


@lru_cache(maxsize=4)
def aut_table(p: int) -> "AutTable":
    return AutTable(p)


@lru_cache(maxsize=4)
def hol_codec(p: int) -> "HolCodec":
    return HolCodec(p)


class M1Table:
    """Dense multiplication and inverse tables for the base group."""

    def __init__(self, p: int) -> None:
        validate_prime(p)
        self.p = p
        n = p**3
        codes = np.arange(n, dtype=np.int64)
        a, b, c = self._split(codes)
        xa, ya = a[:, None], a[None, :]
        xb, yb = b[:, None], b[None, :]
        xc, yc = c[:, None], c[None, :]
        self.MUL = self._join(xa + ya + xc * yb, xb + yb, xc + yc).astype(np.int32)
        self.INV = self._join(-a + b * c, -b, -c).astype(np.int32)
        self.CENTER = codes[(b == 0) & (c == 0)].astype(np.int32)

    def _split(self, codes: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        p = self.p
        return codes // (p * p), (codes // p) % p, codes % p

    def _join(self, a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
        p = self.p
        return ((a % p) * p + b % p) * p + c % p

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self.MUL[x, y]

    def inv(self, x: np.ndarray) -> np.ndarray:
        return self.INV[x]


class AutTable:
    """Coordinate arrays for the full automorphism group, in enumeration order."""

    def __init__(self, p: int) -> None:
        validate_prime(p)
        self.p = p
        self.h = half_mod(p)
        grid = np.arange(p**6, dtype=np.int64)
        cols = []
        rest = grid
        for _ in range(6):
            cols.append(rest % p)
            rest = rest // p
        a4, a3, a2, a1, t2, t1 = cols
        det = (a1 * a4 - a2 * a3) % p
        keep = det != 0
        self.T1 = t1[keep]
        self.T2 = t2[keep]
        self.A1 = a1[keep]
        self.A2 = a2[keep]
        self.A3 = a3[keep]
        self.A4 = a4[keep]
        self.DET = det[keep]
        self.N = int(keep.sum())
        if self.N != aut_order_total(p):
            raise AssertionError("automorphism count mismatch")
        self.INDEX = np.full(p**6, -1, dtype=np.int64)
        self.INDEX[grid[keep]] = np.arange(self.N, dtype=np.int64)
        self._inv_mod = np.array([0] + [pow(x, p - 2, p) for x in range(1, p)], dtype=np.int64)
        self.identity = int(self.INDEX[self.pack(0, 0, 1, 0, 0, 1)])
        self.INV = self._build_inverses()

    # -- packing ---------------------------------------------------------

    def pack(self, t1, t2, a1, a2, a3, a4) -> np.ndarray:
        p = self.p
        key = np.asarray(t1, dtype=np.int64) % p
        for v in (t2, a1, a2, a3, a4):
            key = key * p + np.asarray(v, dtype=np.int64) % p
        return key

    def coords(self, idx: np.ndarray) -> tuple[np.ndarray, ...]:
        return (
            self.T1[idx],
            self.T2[idx],
            self.A1[idx],
            self.A2[idx],
            self.A3[idx],
            self.A4[idx],
        )

    def index_of(self, alpha: AutM1Elt) -> int:
        return int(self.INDEX[aut_packed_key(alpha)])

    def aut_at(self, idx: int) -> AutM1Elt:
        return AutM1Elt(
            self.p,
            int(self.T1[idx]),
            int(self.T2[idx]),
            GL2Mat(
                self.p,
                int(self.A1[idx]),
                int(self.A2[idx]),
                int(self.A3[idx]),
                int(self.A4[idx]),
            ),
        )

    # -- group operations --------------------------------------------------

    def compose_coords(self, x: tuple[np.ndarray, ...], y: tuple[np.ndarray, ...]):
        """Triangular-form product with the two correction residues."""
        p, h = self.p, self.h
        t1x, t2x, a1x, a2x, a3x, a4x = x
        t1y, t2y, a1y, a2y, a3y, a4y = y
        detx = (a1x * a4x - a2x * a3x) % p
        c1 = h * a1x * a3x * a1y * (a1y - 1) + h * a2x * a4x * a3y * (a3y - 1) + a3x * a1y * a2x * a3y
        c2 = h * a1x * a3x * a2y * (a2y - 1) + h * a2x * a4x * a4y * (a4y - 1) + a3x * a2y * a2x * a4y
        t1 = (detx * t1y + t1x * a1y + t2x * a3y + c1) % p
        t2 = (detx * t2y + t1x * a2y + t2x * a4y + c2) % p
        a1 = (a1x * a1y + a2x * a3y) % p
        a2 = (a1x * a2y + a2x * a4y) % p
        a3 = (a3x * a1y + a4x * a3y) % p
        a4 = (a3x * a2y + a4x * a4y) % p
        return t1, t2, a1, a2, a3, a4

    def compose_idx(self, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        out = self.compose_coords(self.coords(np.asarray(i)), self.coords(np.asarray(j)))
        return self.INDEX[self.pack(*out)]

    def _build_inverses(self) -> np.ndarray:
        p, h = self.p, self.h
        d = self._inv_mod[self.DET]
        b1 = (d * self.A4) % p
        b2 = (-d * self.A2) % p
        b3 = (-d * self.A3) % p
        b4 = (d * self.A1) % p
        c1 = h * self.A1 * self.A3 * b1 * (b1 - 1) + h * self.A2 * self.A4 * b3 * (b3 - 1) + self.A3 * b1 * self.A2 * b3
        c2 = h * self.A1 * self.A3 * b2 * (b2 - 1) + h * self.A2 * self.A4 * b4 * (b4 - 1) + self.A3 * b2 * self.A2 * b4
        t1 = (-d * (self.T1 * b1 + self.T2 * b3 + c1)) % p
        t2 = (-d * (self.T1 * b2 + self.T2 * b4 + c2)) % p
        inv = self.INDEX[self.pack(t1, t2, b1, b2, b3, b4)]
        check = self.compose_idx(np.arange(self.N), inv)
        if not np.all(check == self.identity):
            raise AssertionError("vectorized inverse failed self-check")
        return inv

    def apply_codes(self, idx: np.ndarray, ncode: np.ndarray) -> np.ndarray:
        """alpha(x) in code space; broadcasts idx against ncode."""
        p, h = self.p, self.h
        idx = np.asarray(idx)
        ncode = np.asarray(ncode)
        a = ncode // (p * p)
        b = (ncode // p) % p
        c = ncode % p
        t1, t2, a1, a2, a3, a4 = self.coords(idx)
        det = (a1 * a4 - a2 * a3) % p
        na = det * a + t1 * b + h * a1 * a3 * b * (b - 1) + t2 * c + h * a2 * a4 * c * (c - 1) + a2 * a3 * b * c
        nb = a1 * b + a2 * c
        nc = a3 * b + a4 * c
        return ((na % p) * p + nb % p) * p + nc % p

    def conj_column(self, beta_idx: int) -> np.ndarray:
        """conj of the fixed automorphism beta by every automorphism."""
        everyone = np.arange(self.N)
        return self.compose_idx(self.compose_idx(everyone, np.int64(beta_idx)), self.INV)


class HolCodec:
    """Holomorph elements as single integers, plus subgroup-level sweeps."""

    def __init__(self, p: int) -> None:
        self.p = p
        self.m1 = m1_table(p)
        self.aut = aut_table(p)
        self.N = self.aut.N
        self.identity = 0 * self.N + self.aut.identity
        self._member_buf: np.ndarray | None = None

    def _member_mark(self, codes: np.ndarray) -> np.ndarray:
        """Reusable membership bitmap over all holomorph codes.

        The caller must call _member_clear with the same codes afterwards.
        """
        if self._member_buf is None:
            self._member_buf = np.zeros(self.p**3 * self.N, dtype=bool)
        self._member_buf[codes] = True
        return self._member_buf

    def _member_clear(self, codes: np.ndarray) -> None:
        self._member_buf[codes] = False

    # -- element codecs ----------------------------------------------------

    def encode(self, g: HolElt) -> int:
        from .group_core import m1_code

        return m1_code(g.n) * self.N + self.aut.index_of(g.alpha)

    def decode(self, code: int) -> HolElt:
        from .group_core import m1_from_code

        ncode, aidx = divmod(int(code), self.N)
        return HolElt(m1_from_code(self.p, ncode), self.aut.aut_at(aidx))

    def subgroup_codes(self, sub: SubgroupHol) -> np.ndarray:
        out = np.array(sorted(self.encode(g) for g in sub.elements), dtype=np.int64)
        return out

    def materialize(self, codes: np.ndarray, generators: list[HolElt] | None = None) -> SubgroupHol:
        els = [self.decode(c) for c in codes]
        gens = generators if generators is not None else els[:]
        return subgroup_from_cosets(gens, els)

    # -- vectorized group law ----------------------------------------------

    def mul_codes(self, c1: np.ndarray, c2: np.ndarray) -> np.ndarray:
        n1, i1 = np.divmod(np.asarray(c1), self.N)
        n2, i2 = np.divmod(np.asarray(c2), self.N)
        n = self.m1.MUL[n1, self.aut.apply_codes(i1, n2)].astype(np.int64)
        return n * self.N + self.aut.compose_idx(i1, i2)

    def inv_codes(self, c: np.ndarray) -> np.ndarray:
        n, i = np.divmod(np.asarray(c), self.N)
        ii = self.aut.INV[i]
        return self.aut.apply_codes(ii, self.m1.INV[n]) * self.N + ii

    # -- conjugation sweeps --------------------------------------------------

    def conj_matrix(self, codes: np.ndarray, aut_rows: np.ndarray | None = None) -> np.ndarray:
        """Row r = the sorted conjugate of the code set under automorphism r.

        Shape (len(aut_rows), len(codes)); aut_rows defaults to every
        automorphism.  Rows are sorted, so equal rows mean equal subgroups.
        """
        if aut_rows is None:
            aut_rows = np.arange(self.N)
        nparts, aparts = np.divmod(np.asarray(codes), self.N)
        new_n = self.aut.apply_codes(aut_rows[:, None], nparts[None, :])
        new_a = self.aut.compose_idx(
            self.aut.compose_idx(aut_rows[:, None], aparts[None, :]),
            self.aut.INV[aut_rows][:, None],
        )
        out = new_n * self.N + new_a
        out.sort(axis=1)
        return out

    def one_element_image(self, codes: np.ndarray) -> np.ndarray:
        """Conjugate of one chosen element of the sorted code set, under every
        automorphism.  Any automorphism carrying the whole set onto a target
        must send this element into the target, so the image array is a cheap
        necessary filter (cacheable: it depends only on the source set)."""
        nparts, aparts = np.divmod(np.asarray(codes), self.N)
        pick = int(np.argmax(aparts != self.aut.identity))
        if aparts[pick] == self.aut.identity:
            pick = len(codes) - 1  # purely inner subgroup: any nontrivial element
        everyone = np.arange(self.N)
        one_n = self.aut.apply_codes(everyone, np.int64(nparts[pick]))
        one_a = self.aut.conj_column(int(aparts[pick]))
        return one_n * self.N + one_a

    def _conj_members_mask(
        self, nparts: np.ndarray, aparts: np.ndarray, rows: np.ndarray,
        cols: np.ndarray, member: np.ndarray,
    ) -> np.ndarray:
        """For each automorphism row, does it conjugate every listed element
        into the marked set?"""
        new_n = self.aut.apply_codes(rows[:, None], nparts[cols][None, :])
        new_a = self.aut.compose_idx(
            self.aut.compose_idx(rows[:, None], aparts[cols][None, :]),
            self.aut.INV[rows][:, None],
        )
        return member[new_n * self.N + new_a].all(axis=1)

    def _matching_auts(
        self, codes_a: np.ndarray, member_b: np.ndarray, candidates: np.ndarray,
        first_only: bool = False, step: int = 4096,
    ) -> np.ndarray:
        """Candidates that conjugate sorted A into the marked set B.

        Conjugation by a fixed automorphism is injective and |A| = |B|, so
        landing inside B means equality.  A few probe columns cut each slab
        before the full sweep.
        """
        k = len(codes_a)
        nparts, aparts = np.divmod(codes_a, self.N)
        probe = np.unique(np.array([k // 4, k // 2, (3 * k) // 4, k - 1]))
        allcols = np.arange(k)
        hits = []
        for lo in range(0, len(candidates), step):
            slab = candidates[lo : lo + step]
            surv = slab[self._conj_members_mask(nparts, aparts, slab, probe, member_b)]
            if not len(surv):
                continue
            found = surv[self._conj_members_mask(nparts, aparts, surv, allcols, member_b)]
            if len(found):
                if first_only:
                    return found[:1]
                hits.append(found)
        if not hits:
            return np.empty(0, dtype=np.int64)
        return np.concatenate(hits)

    def stabilizer(self, codes: np.ndarray) -> np.ndarray:
        """Automorphism indices alpha with alpha . S . alpha^{-1} = S.

        A one-element necessary filter runs over the whole automorphism group
        first; the survivors get the full subgroup comparison.
        """
        codes = np.sort(np.asarray(codes))
        member = self._member_mark(codes)
        try:
            candidates = np.flatnonzero(member[self.one_element_image(codes)])
            return self._matching_auts(codes, member, candidates)
        finally:
            self._member_clear(codes)

    def orbit(self, codes: np.ndarray) -> np.ndarray:
        """All distinct conjugates of the code set, one sorted row each."""
        return np.unique(self.conj_matrix(np.sort(np.asarray(codes))), axis=0)

    def transporter_exists(
        self, codes_a: np.ndarray, codes_b: np.ndarray,
        one_image: np.ndarray | None = None,
    ) -> bool:
        """Is some (1, alpha) conjugation carrying subgroup A onto subgroup B?

        one_image may carry a precomputed one_element_image(codes_a) when the
        caller probes the same A against many targets.
        """
        codes_a = np.sort(np.asarray(codes_a))
        codes_b = np.sort(np.asarray(codes_b))
        if codes_a.shape != codes_b.shape:
            return False
        if one_image is None:
            one_image = self.one_element_image(codes_a)
        member = self._member_mark(codes_b)
        try:
            candidates = np.flatnonzero(member[one_image])
            if len(candidates) == 0:
                return False
            return len(self._matching_auts(codes_a, member, candidates, first_only=True)) > 0
        finally:
            self._member_clear(codes_b)
