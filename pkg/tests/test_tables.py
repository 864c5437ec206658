"""Agreement between the vectorized table layer and the scalar object model."""

from __future__ import annotations

import random

import numpy as np

from sbc.automorphisms import (
    aut_compose,
    aut_inverse,
    enumerate_aut,
    aut_apply,
)
from sbc.group_core import m1_code, m1_elements, m1_from_code, m1_inv, m1_mul
from sbc.holomorph import HolElt, conj_by_aut, hol_inv, hol_mul
from sbc.subgroups import generate
from sbc.tables import aut_table, hol_codec, m1_table

P = 5
RNG = random.Random(7)


def test_m1_table_matches_scalar() -> None:
    t = m1_table(P)
    els = m1_elements(P)
    for _ in range(300):
        x, y = RNG.choice(els), RNG.choice(els)
        assert t.MUL[m1_code(x), m1_code(y)] == m1_code(m1_mul(x, y))
        assert t.INV[m1_code(x)] == m1_code(m1_inv(x))
    assert sorted(t.CENTER.tolist()) == sorted(
        m1_code(z) for z in m1_elements(P) if z.b == 0 and z.c == 0
    )


def test_aut_table_enumeration_matches_scalar() -> None:
    t = aut_table(P)
    auts = enumerate_aut(P)
    assert t.N == len(auts) == 12000
    idxs = RNG.sample(range(t.N), 200)
    for i in idxs:
        assert t.aut_at(i) == auts[i]
        assert t.index_of(auts[i]) == i
    assert t.aut_at(t.identity).is_identity()


def test_aut_table_compose_and_inverse_match_scalar() -> None:
    t = aut_table(P)
    auts = enumerate_aut(P)
    ii = np.array([RNG.randrange(t.N) for _ in range(400)])
    jj = np.array([RNG.randrange(t.N) for _ in range(400)])
    out = t.compose_idx(ii, jj)
    for i, j, k in zip(ii.tolist(), jj.tolist(), out.tolist()):
        assert auts[k] == aut_compose(auts[i], auts[j])
    inv = t.INV[ii]
    for i, k in zip(ii.tolist(), inv.tolist()):
        assert auts[k] == aut_inverse(auts[i])


def test_aut_table_apply_matches_scalar() -> None:
    t = aut_table(P)
    auts = enumerate_aut(P)
    for _ in range(200):
        i = RNG.randrange(t.N)
        n = RNG.randrange(P**3)
        got = int(t.apply_codes(np.int64(i), np.int64(n)))
        assert got == m1_code(aut_apply(auts[i], m1_from_code(P, n)))


def test_apply_codes_broadcasts() -> None:
    t = aut_table(P)
    out = t.apply_codes(np.arange(50)[:, None], np.arange(P**3)[None, :])
    assert out.shape == (50, P**3)
    # Each automorphism is a bijection of the code space.
    for row in out:
        assert len(np.unique(row)) == P**3


def test_conj_column_matches_scalar() -> None:
    t = aut_table(P)
    auts = enumerate_aut(P)
    beta = RNG.randrange(t.N)
    col = t.conj_column(beta)
    for i in RNG.sample(range(t.N), 50):
        expected = aut_compose(aut_compose(auts[i], auts[beta]), aut_inverse(auts[i]))
        assert auts[col[i]] == expected


def test_hol_codec_round_trip_and_ops() -> None:
    codec = hol_codec(P)
    auts = enumerate_aut(P)
    els = m1_elements(P)
    for _ in range(100):
        g = HolElt(RNG.choice(els), RNG.choice(auts))
        h = HolElt(RNG.choice(els), RNG.choice(auts))
        cg, ch = codec.encode(g), codec.encode(h)
        assert codec.decode(cg) == g
        assert codec.decode(codec.mul_codes(np.int64(cg), np.int64(ch))) == hol_mul(g, h)
        assert codec.decode(codec.inv_codes(np.int64(cg))) == hol_inv(g)


def test_conj_matrix_matches_scalar_conjugation() -> None:
    from sbc.automorphisms import alpha3, aut_identity
    from sbc.group_core import rho, sigma, tau

    codec = hol_codec(P)
    auts = enumerate_aut(P)
    e = aut_identity(P)
    sub = generate([HolElt(rho(P), e), HolElt(tau(P), e), HolElt(sigma(P), alpha3(P))])
    codes = codec.subgroup_codes(sub)
    rows = codec.conj_matrix(codes, np.array([0, 17, 4242]))
    for r, aidx in zip(rows, (0, 17, 4242)):
        expected = sorted(codec.encode(conj_by_aut(auts[aidx], g)) for g in sub.elements)
        assert r.tolist() == expected


def test_stabilizer_and_orbit_small_case() -> None:
    from sbc.automorphisms import alpha3, aut_identity
    from sbc.group_core import rho, sigma, tau

    codec = hol_codec(P)
    e = aut_identity(P)
    # <r, t, s alpha3>: printed stabilizer is all diagonal-matrix
    # automorphisms, order (p-1)^2 p^2 = 400, so the orbit has 30 members.
    sub = generate([HolElt(rho(P), e), HolElt(tau(P), e), HolElt(sigma(P), alpha3(P))])
    codes = codec.subgroup_codes(sub)
    stab = codec.stabilizer(codes)
    assert len(stab) == 400
    t = aut_table(P)
    assert np.all(t.A2[stab] == 0) and np.all(t.A3[stab] == 0)
    orb = codec.orbit(codes)
    assert orb.shape == (12000 // 400, len(codes))
    assert any(np.array_equal(row, codes) for row in orb)


def test_transporter_between_conjugates() -> None:
    from sbc.automorphisms import alpha1, alpha3, aut_from_matrix, aut_identity, GL2Mat
    from sbc.group_core import rho, sigma, tau

    codec = hol_codec(P)
    e = aut_identity(P)
    a = generate([HolElt(rho(P), e), HolElt(tau(P), e), HolElt(sigma(P), alpha1(P))])
    b_alpha = aut_from_matrix(GL2Mat(P, 1, 0, 0, 3))
    from sbc.subgroups import conjugate_subgroup

    b = conjugate_subgroup(b_alpha, a)
    ca, cb = codec.subgroup_codes(a), codec.subgroup_codes(b)
    assert codec.transporter_exists(ca, cb)
    assert codec.transporter_exists(cb, ca)
    # <r, t, s alpha1> is never conjugate to <r, t, s alpha3> (different
    # printed stabilizer orders).
    c = generate([HolElt(rho(P), e), HolElt(tau(P), e), HolElt(sigma(P), alpha3(P))])
    assert not codec.transporter_exists(ca, codec.subgroup_codes(c))
