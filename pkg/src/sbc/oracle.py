"""Brute-force enumeration of regular order-p**3 subgroups of the holomorph.

Independent of the family formulas: every order-p**3 subgroup of Hol(M1) has
its automorphism image inside a Sylow p-subgroup of Aut(M1) (those are the
preimages of the GL2 Sylows, since the inner C_p x C_p is a normal
p-subgroup), so it lies in one of the p + 1 ambients M1 x| A of order p**6.
Each ambient is scanned by a layered lattice walk:

  order p    every non-identity element generates one (the ambient has
             exponent p, which is asserted, not assumed);
  order p**2 spans <s, x> with x in the centralizer of s (such groups are
             abelian, so both generators commute);
  order p**3 spans T<x> with x in the normalizer of T (T is maximal, hence
             normal, in any overgroup of order p**3).

Results are deduplicated globally by the sorted tuple of holomorph codes, so
subgroups shared between ambients are counted once.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .group_core import validate_prime
from .subgroups import GroupType, SubgroupHol
from .tables import aut_table, hol_codec, m1_table

__all__ = [
    "AmbientScan",
    "OracleRecord",
    "OracleResult",
    "bucket_by_theta",
    "enumerate_regular_subgroups",
]

DEFAULT_ORACLE_BUDGET = 5


@dataclass(frozen=True)
class OracleRecord:
    """One regular subgroup found by the scan, in global code form."""

    p: int
    codes: tuple[int, ...]
    gen_codes: tuple[int, ...]
    group_type: GroupType
    theta_order: int

    def to_subgroup(self) -> SubgroupHol:
        codec = hol_codec(self.p)
        gens = [codec.decode(c) for c in self.gen_codes]
        return codec.materialize(np.array(self.codes, dtype=np.int64), gens)


@dataclass
class OracleResult:
    p: int
    records: list[OracleRecord]
    per_ambient_regular: list[int]
    per_ambient_order_p: list[int]
    per_ambient_order_p2: list[int]

    def count_by_type(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for rec in self.records:
            out[rec.group_type.value] = out.get(rec.group_type.value, 0) + 1
        return out

    def count_by_type_and_theta(self) -> dict[str, dict[int, int]]:
        out: dict[str, dict[int, int]] = {}
        for rec in self.records:
            slot = out.setdefault(rec.group_type.value, {})
            slot[rec.theta_order] = slot.get(rec.theta_order, 0) + 1
        return out

    def keys(self) -> set[tuple[int, ...]]:
        return {rec.codes for rec in self.records}


class AmbientScan:
    """Layered subgroup walk inside M1 x| A for one automorphism subgroup A.

    A is given by the global indices of its members; local element codes are
    ncode * |A| + position-in-A.  Passing the one-element identity subgroup
    scans M1 itself, which is the completeness cross-check target.
    """

    def __init__(self, p: int, aut_member_idx: np.ndarray) -> None:
        self.p = p
        self.aut_global = np.sort(np.asarray(aut_member_idx, dtype=np.int64))
        self.AL = len(self.aut_global)
        aut = aut_table(p)
        m1 = m1_table(p)
        pos = np.full(aut.N, -1, dtype=np.int64)
        pos[self.aut_global] = np.arange(self.AL)
        self.LOC_APPLY = aut.apply_codes(
            self.aut_global[:, None], np.arange(p**3, dtype=np.int64)[None, :]
        )
        comp = aut.compose_idx(self.aut_global[:, None], self.aut_global[None, :])
        self.LOC_COMP = pos[comp]
        if np.any(self.LOC_COMP < 0):
            raise AssertionError("automorphism subset is not closed")
        self.LOC_INV = pos[aut.INV[self.aut_global]]
        self.M1MUL = m1.MUL.astype(np.int64)
        self.M1INV = m1.INV.astype(np.int64)
        self.size = p**3 * self.AL
        self.id_code = 0 * self.AL + int(pos[aut.identity])
        self._pows: list[np.ndarray] | None = None

    # -- local group law ----------------------------------------------------

    def mul(self, c1: np.ndarray, c2: np.ndarray) -> np.ndarray:
        n1, a1 = np.divmod(np.asarray(c1), self.AL)
        n2, a2 = np.divmod(np.asarray(c2), self.AL)
        return self.M1MUL[n1, self.LOC_APPLY[a1, n2]] * self.AL + self.LOC_COMP[a1, a2]

    def inv(self, c: np.ndarray) -> np.ndarray:
        n, a = np.divmod(np.asarray(c), self.AL)
        ai = self.LOC_INV[a]
        return self.LOC_APPLY[ai, self.M1INV[n]] * self.AL + ai

    def to_global(self, codes: np.ndarray) -> np.ndarray:
        n, a = np.divmod(np.asarray(codes), self.AL)
        N = aut_table(self.p).N
        return np.sort(n * N + self.aut_global[a])

    # -- layers ---------------------------------------------------------------

    def power_tables(self) -> list[np.ndarray]:
        """pows[k][g] = g^k for k = 0..p-1; asserts the ambient has exponent p."""
        if self._pows is None:
            everyone = np.arange(self.size, dtype=np.int64)
            pows = [np.full(self.size, self.id_code, dtype=np.int64), everyone]
            for _ in range(2, self.p):
                pows.append(self.mul(pows[-1], everyone))
            closing = self.mul(pows[-1], everyone)
            if not np.all(closing == self.id_code):
                raise AssertionError("ambient exponent is not p")
            self._pows = pows
        return self._pows

    def order_p_subgroups(self) -> np.ndarray:
        """(count, p) sorted member rows, one per subgroup of order p."""
        pows = self.power_tables()
        everyone = np.arange(self.size, dtype=np.int64)
        nonid = everyone[everyone != self.id_code]
        reps = nonid.copy()
        for k in range(2, self.p):
            np.minimum(reps, pows[k][nonid], out=reps)
        reps = np.unique(reps)
        rows = np.stack(
            [np.full(len(reps), self.id_code, dtype=np.int64)]
            + [pows[k][reps] for k in range(1, self.p)],
            axis=1,
        )
        rows.sort(axis=1)
        expected = (self.size - 1) // (self.p - 1)
        if len(rows) != expected:
            raise AssertionError("order-p subgroup count off")
        return rows

    def order_p2_subgroups(self, layer1: np.ndarray) -> list[tuple[np.ndarray, int, int]]:
        """List of (sorted member row, generator s, generator x)."""
        pows = self.power_tables()
        everyone = np.arange(self.size, dtype=np.int64)
        seen: dict[bytes, tuple[np.ndarray, int, int]] = {}
        for row in layer1:
            s = int(row[0]) if row[0] != self.id_code else int(row[1])
            commute = self.mul(everyone, np.int64(s)) == self.mul(np.int64(s), everyone)
            cz = everyone[commute]
            covered = np.zeros(self.size, dtype=bool)
            covered[row] = True
            for x in cz:
                if covered[x]:
                    continue
                members = np.concatenate([self.mul(row, pows[k][x]) for k in range(self.p)])
                members.sort()
                covered[members] = True
                seen.setdefault(members.tobytes(), (members, s, int(x)))
        return list(seen.values())


    def order_p3_subgroups(
        self, layer2: list[tuple[np.ndarray, int, int]]
    ) -> list[tuple[np.ndarray, tuple[int, int, int]]]:
        """List of (sorted member row, generating triple)."""
        pows = self.power_tables()
        everyone = np.arange(self.size, dtype=np.int64)
        inv_all = self.inv(everyone)
        seen: dict[bytes, tuple[np.ndarray, tuple[int, int, int]]] = {}
        for row, s, x in layer2:
            conj_s = self.mul(self.mul(everyone, np.int64(s)), inv_all)
            conj_x = self.mul(self.mul(everyone, np.int64(x)), inv_all)
            in_row_s = self._member_mask(row, conj_s)
            in_row_x = self._member_mask(row, conj_x)
            normalizer = everyone[in_row_s & in_row_x]
            covered = np.zeros(self.size, dtype=bool)
            covered[row] = True
            for y in normalizer:
                if covered[y]:
                    continue
                members = np.concatenate([self.mul(row, pows[k][y]) for k in range(self.p)])
                members.sort()
                covered[members] = True
                seen.setdefault(members.tobytes(), (members, (s, x, int(y))))
        return list(seen.values())

    @staticmethod
    def _member_mask(sorted_row: np.ndarray, values: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(sorted_row, values)
        idx[idx >= len(sorted_row)] = len(sorted_row) - 1
        return sorted_row[idx] == values

    # -- classification -------------------------------------------------------

    def is_regular(self, row: np.ndarray) -> bool:
        return len(np.unique(row // self.AL)) == self.p**3

    def theta_order(self, row: np.ndarray) -> int:
        return int(len(np.unique(row % self.AL)))

    def is_abelian(self, gens: tuple[int, ...]) -> bool:
        for i, g in enumerate(gens):
            for h in gens[i + 1 :]:
                if int(self.mul(np.int64(g), np.int64(h))) != int(
                    self.mul(np.int64(h), np.int64(g))
                ):
                    return False
        return True


def _scan_one_ambient(args: tuple[int, tuple[int, ...]]) -> dict:
    """Worker: full three-layer scan of one ambient; returns plain data."""
    p, aut_idx = args
    scan = AmbientScan(p, np.array(aut_idx, dtype=np.int64))
    layer1 = scan.order_p_subgroups()
    layer2 = scan.order_p2_subgroups(layer1)
    layer3 = scan.order_p3_subgroups(layer2)
    found = []
    n_regular = 0
    for row, gens in layer3:
        if not scan.is_regular(row):
            continue
        n_regular += 1
        # Ambient exponent p is asserted in power_tables, so the type is
        # decided by abelianness alone.
        gtype = (
            GroupType.ElemAbelian_p3 if scan.is_abelian(gens) else GroupType.HeisenbergM1
        )
        found.append(
            (
                tuple(scan.to_global(row).tolist()),
                tuple(scan.to_global(np.array(gens, dtype=np.int64)).tolist()),
                gtype.value,
                scan.theta_order(row),
            )
        )
    return {
        "regular": n_regular,
        "order_p": len(layer1),
        "order_p2": len(layer2),
        "found": found,
    }


def _sylow_ambient_indices(p: int) -> list[tuple[int, ...]]:
    from .automorphisms import sylow_p_subgroups_gl2

    aut = aut_table(p)
    out = []
    for mats in sylow_p_subgroups_gl2(p):
        keys = [
            aut.pack(b1, b2, A.a1, A.a2, A.a3, A.a4)
            for b1 in range(p)
            for b2 in range(p)
            for A in mats
        ]
        idx = aut.INDEX[np.array(keys, dtype=np.int64)]
        if np.any(idx < 0):
            raise AssertionError("Sylow member missing from enumeration")
        out.append(tuple(sorted(int(i) for i in idx)))
    return out


_SCAN_MEMO: dict[int, OracleResult] = {}


def enumerate_regular_subgroups(
    p: int, budget: int = DEFAULT_ORACLE_BUDGET, jobs: int = 1
) -> OracleResult:
    """Scan all p + 1 ambients and merge.  Refuses p above the budget.

    The merged result does not depend on the schedule, so it is memoized per
    prime; jobs only affects how fast a cold run finishes.
    """
    validate_prime(p)
    if p > budget:
        raise ValueError(
            f"oracle budget is p <= {budget}; pass a larger budget to override"
        )
    cached = _SCAN_MEMO.get(p)
    if cached is not None:
        return cached
    ambients = _sylow_ambient_indices(p)
    args = [(p, idx) for idx in ambients]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_one_ambient, args))
    else:
        results = [_scan_one_ambient(a) for a in args]
    merged: dict[tuple[int, ...], OracleRecord] = {}
    for res in results:
        for codes, gen_codes, gtype, theta in res["found"]:
            if codes not in merged:
                merged[codes] = OracleRecord(
                    p, codes, gen_codes, GroupType(gtype), theta
                )
    records = [merged[k] for k in sorted(merged)]
    result = OracleResult(
        p=p,
        records=records,
        per_ambient_regular=[r["regular"] for r in results],
        per_ambient_order_p=[r["order_p"] for r in results],
        per_ambient_order_p2=[r["order_p2"] for r in results],
    )
    _SCAN_MEMO[p] = result
    return result


def bucket_by_theta(result: OracleResult) -> dict[int, list[OracleRecord]]:
    out: dict[int, list[OracleRecord]] = {}
    for rec in result.records:
        out.setdefault(rec.theta_order, []).append(rec)
    return out
