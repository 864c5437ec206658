"""Conjugacy classification of the regular subgroups and the derived counts.

Two regular subgroups of Hol(M1) give isomorphic skew braces exactly when an
automorphism of M1, acting as (n, alpha) -> (g(n), g alpha g^-1), carries one
onto the other.  The classification therefore reports, per representative:
the stabilizer order inside Aut(M1) (the automorphism group of the brace),
the orbit size through the orbit-stabilizer identity, and the socle and
annihilator orders of the carried brace.

Counting Hopf-Galois structures: a regular subgroup of Hol(N) isomorphic to
G corresponds to one Hopf-Galois structure of type N on a Galois extension
with group G, after scaling subgroup counts by |Aut(G)| / |Aut(N)|.  For
G elementary abelian of rank 3 that ratio is |GL3(F_p)| / |Aut(M1)| = p^3 - 1.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from .automorphisms import aut_order_total
from .families import Representative, all_representatives
from .group_core import validate_prime
from .skewbrace import annihilator_indices, brace_from_subgroup, socle_indices
from .subgroups import GroupType
from .tables import hol_codec

__all__ = [
    "ClassificationRecord",
    "CountReport",
    "classification_records",
    "closed_form_count_report",
    "count_report",
    "crosscheck_count_report",
    "expected_stabilizer_order",
    "gl3_order",
    "orbit_union_keys",
    "record_to_dict",
    "stabilizer_indices",
    "verify_pairwise_nonconjugate",
]

MUL_TAG = GroupType.HeisenbergM1.value
AB_TAG = GroupType.ElemAbelian_p3.value


@dataclass(frozen=True)
class ClassificationRecord:
    rep_id: str
    p: int
    theta_order: int
    structure: str
    autbr_order: int
    orbit_size: int
    socle_order: int
    ann_order: int


def record_to_dict(rec: ClassificationRecord) -> dict:
    return asdict(rec)


def stabilizer_indices(rep: Representative) -> np.ndarray:
    codec = hol_codec(rep.subgroup.p)
    return codec.stabilizer(codec.subgroup_codes(rep.subgroup))


@lru_cache(maxsize=4)
def classification_records(p: int) -> tuple[ClassificationRecord, ...]:
    validate_prime(p)
    total = aut_order_total(p)
    out = []
    for rep in all_representatives(p):
        stab = len(stabilizer_indices(rep))
        if total % stab:
            raise AssertionError("stabilizer order must divide the group order")
        brace = brace_from_subgroup(rep.subgroup)
        out.append(
            ClassificationRecord(
                rep_id=rep.rep_id,
                p=p,
                theta_order=rep.theta_order,
                structure=rep.group_type.value,
                autbr_order=stab,
                orbit_size=total // stab,
                socle_order=len(socle_indices(brace)),
                ann_order=len(annihilator_indices(brace)),
            )
        )
    return tuple(out)


def expected_stabilizer_order(rep_id: str, p: int) -> int:
    """The closed-form stabilizer order attached to each representative id."""
    parts = rep_id.split("/")
    head = parts[0]
    if head == "r=1":
        return aut_order_total(p)
    if head == "r=p":
        kind = parts[1]
        if kind == "a1":
            return (p - 1) * p**3
        if kind == "a2" or kind == "a2a3":
            return (p - 1) * p**2
        if kind == "a3":
            return (p - 1) ** 2 * p**2
    if head == "r=p2":
        kind = parts[1]
        if kind == "II":
            return (p - 1) * p**2
        if parts[1] == "I" and parts[2].startswith("u5="):
            return aut_order_total(p)
        if parts[1] == "I":
            u3 = int(parts[2].split("=")[1])
            u4 = int(parts[3].split("=")[1])
            disc = (u3 * u3 - 4 * u4) % p
            if disc == 0:
                return (p - 1) * p**3
            if pow(disc, (p - 1) // 2, p) == 1:
                return (p - 1) ** 2 * p**2
            return (p**2 - 1) * p**2
    if head == "r=p3":
        t3 = int(parts[1].split("=")[1])
        return 2 * p if t3 == 1 else 2 * (p - 1) * p
    raise ValueError(f"unknown representative id {rep_id!r}")


# -- counting ----------------------------------------------------------------


def gl3_order(p: int) -> int:
    return (p**3 - 1) * (p**3 - p) * (p**3 - p**2)


@dataclass(frozen=True)
class CountReport:
    p: int
    regular_by_structure: dict
    hgs_by_structure: dict
    class_counts: dict
    total_regular: int
    hgs_totals: dict


def _scale_factor(p: int) -> int:
    num, den = gl3_order(p), aut_order_total(p)
    if num % den:
        raise AssertionError("automorphism order ratio is not integral")
    return num // den


def count_report(p: int) -> CountReport:
    """Counts assembled from the classified orbits."""
    regular: dict[str, dict[int, int]] = {MUL_TAG: {}, AB_TAG: {}}
    classes: dict[str, int] = {MUL_TAG: 0, AB_TAG: 0}
    for rec in classification_records(p):
        slot = regular[rec.structure]
        slot[rec.theta_order] = slot.get(rec.theta_order, 0) + rec.orbit_size
        classes[rec.structure] += 1
    scale = _scale_factor(p)
    hgs = {
        MUL_TAG: dict(regular[MUL_TAG]),
        AB_TAG: {t: n * scale for t, n in regular[AB_TAG].items()},
    }
    return CountReport(
        p=p,
        regular_by_structure=regular,
        hgs_by_structure=hgs,
        class_counts=classes,
        total_regular=sum(n for by in regular.values() for n in by.values()),
        hgs_totals={tag: sum(by.values()) for tag, by in hgs.items()},
    )


def closed_form_count_report(p: int) -> CountReport:
    """The same report from the closed-form polynomials."""
    validate_prime(p)
    regular = {
        MUL_TAG: {
            1: 1,
            p: (p**3 - p**2 - 1) * (p + 1),
            p**2: (p**4 - p**3 - 2 * p**2 + 2 * p + 1) * p,
            p**3: (p**2 - 1) * p**3,
        },
        AB_TAG: {
            p: (p + 1) * p**2,
            p**2: (p**2 - 2) * p**2,
        },
    }
    scale = _scale_factor(p)
    hgs = {
        MUL_TAG: dict(regular[MUL_TAG]),
        AB_TAG: {t: n * scale for t, n in regular[AB_TAG].items()},
    }
    report = CountReport(
        p=p,
        regular_by_structure=regular,
        hgs_by_structure=hgs,
        class_counts={MUL_TAG: 2 * p**2 - p + 3, AB_TAG: 2 * p + 1},
        total_regular=sum(n for by in regular.values() for n in by.values()),
        hgs_totals={tag: sum(by.values()) for tag, by in hgs.items()},
    )
    if report.hgs_totals != {
        MUL_TAG: (2 * p**3 - 3 * p + 1) * p**2,
        AB_TAG: (p**3 - 1) * (p**2 + p - 1) * p**2,
    }:
        raise AssertionError("per-theta forms disagree with the totals")
    return report


def crosscheck_count_report(p: int) -> CountReport:
    """Orbit-derived counts must equal the closed forms; returns the report."""
    computed = count_report(p)
    closed = closed_form_count_report(p)
    if computed != closed:
        raise AssertionError(
            f"count mismatch at p={p}: computed {computed} vs closed {closed}"
        )
    return computed


# -- distinctness ------------------------------------------------------------


def verify_pairwise_nonconjugate(p: int) -> int:
    """No two representatives are conjugate; returns the pair count checked.

    Conjugate subgroups share theta order, structure, and stabilizer order,
    so only pairs agreeing on that invariant triple need a transporter search.
    """
    codec = hol_codec(p)
    recs = classification_records(p)
    reps = {rep.rep_id: rep for rep in all_representatives(p)}
    buckets: dict[tuple, list[np.ndarray]] = {}
    for rec in recs:
        key = (rec.theta_order, rec.structure, rec.autbr_order)
        codes = codec.subgroup_codes(reps[rec.rep_id].subgroup)
        buckets.setdefault(key, []).append(codes)
    pairs = 0
    for members in buckets.values():
        images = [codec.one_element_image(codes) for codes in members]
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                pairs += 1
                if codec.transporter_exists(members[i], members[j], one_image=images[i]):
                    raise AssertionError("representatives are conjugate")
    return pairs


def orbit_union_keys(p: int) -> set[tuple[int, ...]]:
    """Every subgroup in every representative orbit, as sorted code tuples.

    Memory scales with |Aut(M1)| * p**3; meant for desk-scale primes.
    """
    codec = hol_codec(p)
    out: set[tuple[int, ...]] = set()
    for rep in all_representatives(p):
        rows = codec.orbit(codec.subgroup_codes(rep.subgroup))
        out.update(map(tuple, rows.tolist()))
    return out
