from __future__ import annotations

import numpy as np
import pytest

from sbc.families import all_representatives, trivial_subgroup
from sbc.group_core import M1Elt, m1_mul
from sbc.holomorph import HolElt
from sbc.skewbrace import (
    annihilator_indices,
    brace_from_codes,
    brace_from_subgroup,
    is_involutive,
    lambda_matches_automorphism_action,
    socle_indices,
    verify_brace_axiom,
    verify_braid,
    verify_ideal,
    verify_nondegenerate,
    ybe_tables,
)
from sbc.subgroups import GroupType, generate
from sbc.automorphisms import alpha1, aut_identity
from sbc.tables import hol_codec

P = 5


@pytest.fixture(scope="module")
def rep_braces():
    return [(rep, brace_from_subgroup(rep.subgroup)) for rep in all_representatives(P)]


def test_trivial_brace_has_equal_laws():
    br = brace_from_subgroup(trivial_subgroup(P))
    assert np.array_equal(br.MUL, br.ADD)
    assert br.theta_order == 1
    # the two laws coincide with the M1 law through psi
    x = M1Elt(P, 2, 3, 1)
    y = M1Elt(P, 4, 0, 2)
    from sbc.group_core import m1_code

    i = int(br.inv_psi[m1_code(x)])
    j = int(br.inv_psi[m1_code(y)])
    assert br.psi[br.MUL[i, j]] == m1_code(m1_mul(x, y))


def test_carrier_must_be_regular():
    # <rho, sigma, alpha1> has order 125 but only 25 distinct n-parts.
    gens = [
        HolElt(M1Elt(P, 1, 0, 0), aut_identity(P)),
        HolElt(M1Elt(P, 0, 1, 0), aut_identity(P)),
        HolElt(M1Elt(P, 0, 0, 0), alpha1(P)),
    ]
    sub = generate(gens)
    assert len(sub.elements) == 125
    with pytest.raises(ValueError):
        brace_from_subgroup(sub)


def test_carrier_must_have_cube_size():
    codec = hol_codec(P)
    with pytest.raises(ValueError):
        brace_from_codes(P, np.arange(10, dtype=np.int64) * codec.N)


def test_axiom_holds_for_every_representative(rep_braces):
    for rep, br in rep_braces:
        assert verify_brace_axiom(br) is None, rep.rep_id


def test_lambda_agrees_with_stored_automorphisms(rep_braces):
    for rep, br in rep_braces:
        assert lambda_matches_automorphism_action(br), rep.rep_id


def test_additive_group_is_always_heisenberg(rep_braces):
    for rep, br in rep_braces:
        assert not br.add_abelian(), rep.rep_id
        assert br.theta_order == rep.theta_order, rep.rep_id


def test_multiplicative_abelianness_matches_type(rep_braces):
    for rep, br in rep_braces:
        assert br.mul_abelian() == (rep.group_type is GroupType.ElemAbelian_p3), rep.rep_id


def test_socle_and_annihilator_orders(rep_braces):
    # order p for theta of order 1, p, p**2; trivial for theta of order p**3
    for rep, br in rep_braces:
        soc = socle_indices(br)
        ann = annihilator_indices(br)
        expected = 1 if rep.theta_order == P**3 else P
        assert len(soc) == expected, rep.rep_id
        assert len(ann) == expected, rep.rep_id


def test_socle_elements_are_central_rho_powers(rep_braces):
    codec = hol_codec(P)
    for rep, br in rep_braces:
        soc = socle_indices(br)
        for i in soc:
            g = codec.decode(int(br.codes[i]))
            assert g.alpha.is_identity()
            assert g.n.b == 0 and g.n.c == 0


def test_socle_and_annihilator_are_ideals(rep_braces):
    for rep, br in rep_braces:
        assert verify_ideal(br, socle_indices(br)), rep.rep_id
        assert verify_ideal(br, annihilator_indices(br)), rep.rep_id


def test_full_carrier_is_ideal_and_point_is_not(rep_braces):
    _, br = rep_braces[0]
    assert verify_ideal(br, np.arange(br.order))
    nonid = (br.id_idx + 1) % br.order
    assert not verify_ideal(br, np.array([nonid]))


def test_braid_relation_every_triple(rep_braces):
    for rep, br in rep_braces:
        assert verify_braid(br) is None, rep.rep_id


def test_solutions_nondegenerate_not_involutive(rep_braces):
    # involutivity would force an abelian additive group
    for rep, br in rep_braces:
        assert verify_nondegenerate(br), rep.rep_id
        assert not is_involutive(br), rep.rep_id


def test_trivial_brace_solution_is_conjugation():
    br = brace_from_subgroup(trivial_subgroup(P))
    R1, R2 = ybe_tables(br)
    k = br.order
    assert np.array_equal(R1, np.broadcast_to(np.arange(k), (k, k)))
    # with lambda trivial, R2[i, j] = j^-1 i j in the subgroup law
    i = np.arange(k)[:, None]
    j = np.arange(k)[None, :]
    conj = br.MUL[br.MUL[br.INV_MUL[j], i], j]
    assert np.array_equal(R2, conj)
