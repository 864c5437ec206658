"""Holomorph arithmetic and the exhaustive closed-form agreements."""

from __future__ import annotations

import random

import pytest

from sbc.automorphisms import (
    GL2Mat,
    alpha1,
    alpha2,
    alpha3,
    aut_apply,
    aut_compose,
    aut_identity,
    aut_inverse,
    aut_pow,
    enumerate_aut,
    gamma_split,
    sylow_aut_from_coords,
)
from sbc.group_core import (
    M1Elt,
    half_mod,
    m1_elements,
    m1_from_code,
    m1_identity,
    m1_mul,
    m1_pow,
    rho,
    sigma,
    tau,
)
from sbc.holomorph import (
    HolElt,
    conj_by_aut,
    conj_by_aut_closed,
    hol_act,
    hol_from_json,
    hol_identity,
    hol_inv,
    hol_mul,
    hol_pow,
    hol_pow_closed,
    hol_to_json,
    theta,
    theta_image,
)

P = 5
RNG = random.Random(99)


def random_hol(p: int = P) -> HolElt:
    while True:
        vals = [RNG.randrange(p) for _ in range(9)]
        if (vals[5] * vals[8] - vals[6] * vals[7]) % p != 0:
            from sbc.automorphisms import AutM1Elt

            return HolElt(
                M1Elt(p, *vals[:3]),
                AutM1Elt(p, vals[3], vals[4], GL2Mat(p, *vals[5:])),
            )


def sylow_hol(p: int, v: M1Elt, n1: int, n2: int, n3: int) -> HolElt:
    return HolElt(v, sylow_aut_from_coords(p, n1, n2, n3))


def test_identity_and_inverse() -> None:
    e = hol_identity(P)
    for _ in range(100):
        g = random_hol()
        assert hol_mul(g, e) == g
        assert hol_mul(e, g) == g
        assert hol_mul(g, hol_inv(g)) == e
        assert hol_mul(hol_inv(g), g) == e


def test_associativity_sampled() -> None:
    for _ in range(200):
        a, b, c = random_hol(), random_hol(), random_hol()
        assert hol_mul(hol_mul(a, b), c) == hol_mul(a, hol_mul(b, c))


def test_action_is_by_group_elements() -> None:
    # (g h) . x = g . (h . x), and the identity acts trivially.
    els = m1_elements(P)
    for _ in range(50):
        g, h = random_hol(), random_hol()
        x = RNG.choice(els)
        assert hol_act(hol_mul(g, h), x) == hol_act(g, hol_act(h, x))
    for x in els:
        assert hol_act(hol_identity(P), x) == x


def test_action_on_identity_reads_off_n() -> None:
    for _ in range(30):
        g = random_hol()
        assert hol_act(g, m1_identity(P)) == g.n


def test_theta_is_a_homomorphism() -> None:
    for _ in range(50):
        g, h = random_hol(), random_hol()
        assert theta(hol_mul(g, h)) == aut_compose(theta(g), theta(h))
    assert theta_image([hol_identity(P)]) == frozenset({aut_identity(P)})


def test_m1_and_aut_embed() -> None:
    # (n, 1)(m, 1) = (nm, 1) and (1, a)(1, b) = (1, ab).
    for _ in range(30):
        n, m = random_hol().n, random_hol().n
        assert hol_mul(HolElt(n, aut_identity(P)), HolElt(m, aut_identity(P))) == HolElt(
            m1_mul(n, m), aut_identity(P)
        )
        a, b = random_hol().alpha, random_hol().alpha
        e = m1_identity(P)
        assert hol_mul(HolElt(e, a), HolElt(e, b)) == HolElt(e, aut_compose(a, b))


def test_semidirect_conjugation_matches_action() -> None:
    # (1, alpha)(n, 1)(1, alpha)^{-1} = (alpha(n), 1).
    e = m1_identity(P)
    for _ in range(50):
        g = random_hol()
        alpha, n = g.alpha, g.n
        lhs = hol_mul(
            hol_mul(HolElt(e, alpha), HolElt(n, aut_identity(P))),
            hol_inv(HolElt(e, alpha)),
        )
        assert lhs == HolElt(aut_apply(alpha, n), aut_identity(P))


def test_sylow_action_closed_form_exhaustive() -> None:
    # alpha1^n1 alpha2^n2 alpha3^n3 . v =
    #   r^{n1 v2 + n2 v2 (v2 - 1)/2 + n3 v3} v t^{n2 v2}, for every normal form
    # and every v.  This is the scalar route the table layer leans on.
    h = half_mod(P)
    for n1 in range(P):
        for n2 in range(P):
            for n3 in range(P):
                a = sylow_aut_from_coords(P, n1, n2, n3)
                for v in m1_elements(P):
                    expected = m1_mul(
                        m1_mul(
                            M1Elt(P, n1 * v.b + h * n2 * v.b * (v.b - 1) + n3 * v.c, 0, 0),
                            v,
                        ),
                        M1Elt(P, 0, 0, n2 * v.b),
                    )
                    assert aut_apply(a, v) == expected


def test_pow_closed_matches_iterated_mul_exhaustive() -> None:
    # Every Sylow-form element, every exponent 0..p.
    for v_code in range(P**3):
        v = m1_from_code(P, v_code)
        for n1 in range(P):
            for n2 in range(P):
                for n3 in range(P):
                    g = sylow_hol(P, v, n1, n2, n3)
                    acc = hol_identity(P)
                    for r in range(P + 1):
                        assert hol_pow_closed(g, r) == acc
                        acc = hol_mul(acc, g)


def test_pow_closed_rejects_non_sylow() -> None:
    g = HolElt(sigma(P), aut_compose(alpha2(P), alpha3(P)))
    assert hol_pow_closed(g, 2) == hol_mul(g, g)  # alpha2 alpha3 stays lower unipotent
    bad = HolElt(sigma(P), aut_inverse(alpha2(P)))
    assert hol_pow_closed(bad, 2) == hol_mul(bad, bad)  # negative coords reduce mod p
    from sbc.automorphisms import aut_from_matrix

    with pytest.raises(ValueError):
        hol_pow_closed(HolElt(sigma(P), aut_from_matrix(GL2Mat(P, 0, 1, 1, 0))), 2)
    with pytest.raises(ValueError):
        hol_pow_closed(random_sylow_elt(), -1)


def random_sylow_elt() -> HolElt:
    return sylow_hol(
        P,
        M1Elt(P, RNG.randrange(P), RNG.randrange(P), RNG.randrange(P)),
        RNG.randrange(P),
        RNG.randrange(P),
        RNG.randrange(P),
    )


def test_every_sylow_element_has_order_dividing_p() -> None:
    e = hol_identity(P)
    for v_code in range(P**3):
        v = m1_from_code(P, v_code)
        for n2 in range(P):
            g = sylow_hol(P, v, 1, n2, 3)
            assert hol_pow_closed(g, P) == e


def test_conj_closed_n2_zero_exhaustive() -> None:
    # Every automorphism, every g = (v, alpha1^n1 alpha3^n3).
    auts = enumerate_aut(P)
    sample = m1_elements(P)
    for alpha in auts[:: 37]:  # deterministic stride through all 12000
        for v in sample[:: 7]:
            for n1 in range(P):
                for n3 in range(P):
                    g = sylow_hol(P, v, n1, 0, n3)
                    assert conj_by_aut_closed(alpha, g) == conj_by_aut(alpha, g)


def test_conj_closed_n2_nonzero_lower_triangular() -> None:
    lower = [a for a in enumerate_aut(P) if a.A.a2 == 0]
    assert len(lower) == P**3 * (P - 1) ** 2  # 2000 at p = 5
    for alpha in lower[:: 11]:
        for v in (m1_identity(P), sigma(P), M1Elt(P, 2, 1, 3)):
            for n1, n2, n3 in [(0, 1, 0), (1, 2, 3), (4, 4, 4), (2, 3, 0)]:
                g = sylow_hol(P, v, n1, n2, n3)
                assert conj_by_aut_closed(alpha, g) == conj_by_aut(alpha, g)


def test_conj_closed_rejects_bad_shapes() -> None:
    from sbc.automorphisms import aut_from_matrix

    g = sylow_hol(P, sigma(P), 0, 1, 0)  # n2 != 0
    upper = aut_from_matrix(GL2Mat(P, 1, 1, 0, 1))
    with pytest.raises(ValueError):
        conj_by_aut_closed(upper, g)
    swap = HolElt(sigma(P), aut_from_matrix(GL2Mat(P, 0, 1, 1, 0)))
    with pytest.raises(ValueError):
        conj_by_aut_closed(alpha1(P), swap)


def test_conj_by_aut_is_generic_conjugation() -> None:
    e = m1_identity(P)
    for _ in range(50):
        g = random_hol()
        alpha = random_hol().alpha
        expected = hol_mul(hol_mul(HolElt(e, alpha), g), hol_inv(HolElt(e, alpha)))
        assert conj_by_aut(alpha, g) == expected


def test_hol_pow_generic_matches_closed_on_sylow() -> None:
    for _ in range(60):
        g = random_sylow_elt()
        r = RNG.randrange(0, P + 1)
        assert hol_pow(g, r) == hol_pow_closed(g, r)
    g = random_hol()
    assert hol_pow(g, -3) == hol_inv(hol_pow(g, 3))


def test_json_round_trip() -> None:
    for _ in range(20):
        g = random_hol()
        data = hol_to_json(g)
        assert set(data) == {"n", "alpha"}
        assert hol_from_json(P, data) == g
