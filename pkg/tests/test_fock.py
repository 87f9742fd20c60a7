import pytest

from bkptau.fock import (
    FermionWord,
    Hamiltonian,
    Mode,
    ModeSum,
    Species,
    build_v,
    conjugate_by_H,
    kdv_word,
    oracle_kdv_tau,
    oracle_tau,
    oracle_tau_bkp,
    oracle_tau_kp_square,
    parse_mode,
    phi,
    phihat,
    psi_minus,
    psi_plus,
    two_point,
    wick_vev,
)
from bkptau.ring import Bank, GaussRat, Poly, TimeArgument, qify, t
from bkptau.schur import Partition, elem_schur, schur_lambda


I = GaussRat(0, 1)
HALF = GaussRat("1/2")


# ---------------------------------------------------------------------------
# two-point table


def test_two_point_special_zero_modes():
    assert two_point(phihat(0), phi(0)) == I * HALF
    assert two_point(phi(0), phihat(0)) == -I * HALF
    assert two_point(phi(0), phi(0)) == HALF
    assert two_point(phihat(0), phihat(0)) == HALF


def test_two_point_neutral_pairs():
    assert two_point(phi(1), phi(-1)) == GaussRat(-1)
    assert two_point(phi(2), phi(-2)) == GaussRat(1)
    assert two_point(phi(-1), phi(1)) == GaussRat(0)
    assert two_point(phi(1), phi(2)) == GaussRat(0)
    assert two_point(phi(1), phihat(-1)) == GaussRat(0)


def test_two_point_charged_pairs():
    assert two_point(psi_plus("1/2"), psi_minus("-1/2")) == GaussRat(1)
    assert two_point(psi_minus("3/2"), psi_plus("-3/2")) == GaussRat(1)
    assert two_point(psi_plus("-1/2"), psi_minus("1/2")) == GaussRat(0)
    assert two_point(psi_plus("1/2"), psi_plus("-1/2")) == GaussRat(0)


def test_two_point_mixed_sectors_rejected():
    with pytest.raises(ValueError):
        two_point(phi(0), psi_plus("1/2"))


def test_anticommutators_from_table():
    # <m1 m2> + <m2 m1> must equal the anticommutator constant
    for i in range(-3, 4):
        for j in range(-3, 4):
            for mk in (phi, phihat):
                total = two_point(mk(i), mk(j)) + two_point(mk(j), mk(i))
                expected = GaussRat((-1) ** i) if i == -j else GaussRat(0)
                assert total == expected
            mixed = two_point(phi(i), phihat(j)) + two_point(phihat(j), phi(i))
            assert mixed == GaussRat(0)
    for num in range(-5, 6, 2):
        i = qify(num) / 2
        plus_minus = two_point(psi_plus(i), psi_minus(-i)) + two_point(
            psi_minus(-i), psi_plus(i)
        )
        assert plus_minus == GaussRat(1)


def test_neutral_table_consistent_with_charged_decomposition():
    for i in range(-3, 4):
        for j in range(-3, 4):
            for mk1 in (phi, phihat):
                for mk2 in (phi, phihat):
                    direct = two_point(mk1(i), mk2(j))
                    via = wick_vev(
                        FermionWord(
                            [ModeSum.of(mk1(i)).to_charged(),
                             ModeSum.of(mk2(j)).to_charged()]
                        )
                    )
                    assert via == Poly.const(direct)


def test_mode_validation_and_parse():
    with pytest.raises(ValueError):
        Mode(Species.PHI, "1/2")
    with pytest.raises(ValueError):
        Mode(Species.PSI_PLUS, 1)
    assert parse_mode("phi:-2") == phi(-2)
    assert parse_mode("psi+:3/2") == psi_plus("3/2")
    with pytest.raises(ValueError):
        parse_mode("chi:1")


# ---------------------------------------------------------------------------
# Wick expectation values


def test_wick_four_neutral():
    w = FermionWord([phi(2), phi(1), phi(-1), phi(-2)])
    assert wick_vev(w) == Poly.const(GaussRat(-1))


def test_wick_parity_and_vacuum():
    assert wick_vev(FermionWord([phi(0)])) == Poly.zero()
    assert wick_vev(FermionWord([])) == Poly.one()


def test_wick_multilinearity():
    a = ModeSum([(Poly.const(2), phi(1)), (Poly.const(3), phi(2))])
    b = ModeSum.of(phi(-1))
    direct = wick_vev(FermionWord([a, b]))
    split = (
        wick_vev(FermionWord([ModeSum.of(phi(1)), b])) * 2
        + wick_vev(FermionWord([ModeSum.of(phi(2)), b])) * 3
    )
    assert direct == split


def test_wick_irrational_power_rejected():
    # an odd number of neutral factors mixed into a charged word leaves a
    # stray 1/sqrt(2)
    w = FermionWord([ModeSum.of(phi(0)), ModeSum.of(psi_minus("-1/2"))])
    with pytest.raises(ValueError):
        wick_vev(w)


# ---------------------------------------------------------------------------
# Hamiltonian conjugation


def test_conjugate_phi_bar_odd():
    ms = conjugate_by_H(phi(-1), "bar_odd", Bank.T, 2)
    tbar = TimeArgument.bkp_times(Bank.T)
    expected = [
        (elem_schur(0, tbar), phi(-1)),
        (elem_schur(1, tbar), phi(0)),
        (elem_schur(2, tbar), phi(1)),
    ]
    assert list(ms.terms) == [(c, m) for c, m in expected]


def test_conjugate_cross_flavor_trivial():
    ms = conjugate_by_H(phihat(-1), "bar_odd", Bank.T, 3)
    assert list(ms.terms) == [(Poly.one(), phihat(-1))]


def test_conjugate_psi_minus_sign():
    ms = conjugate_by_H(psi_minus("-1/2"), "charged", Bank.T, 1)
    assert ms.terms[1][0] == -t(1)


def test_conjugate_charged_on_neutral_decomposes():
    ms = conjugate_by_H(phi(0), "charged", Bank.T, 1)
    assert ms.sqrt2_power == -1
    assert all(m.species in (Species.PSI_PLUS, Species.PSI_MINUS) for _, m in ms.terms)


def test_ham_validation():
    with pytest.raises(ValueError):
        oracle_tau(FermionWord([phi(0), phi(0)]),
                   [Hamiltonian("charged"), Hamiltonian("bar_odd")])
    with pytest.raises(ValueError):
        Hamiltonian("weird")
    with pytest.raises(ValueError):
        conjugate_by_H(psi_plus("1/2"), "bar_odd", Bank.T, 1)


# ---------------------------------------------------------------------------
# build_v


def test_build_v_zero_constants():
    ms = build_v(1, (), False, 3)
    assert list(ms.terms) == [(Poly.one(), phi(-1))]


def test_build_v_exponential_constants():
    ms = build_v(0, (1,), False, 3)
    coeffs = {m.index: c for c, m in ms.terms}
    assert coeffs[qify(0)] == Poly.one()
    assert coeffs[qify(1)] == Poly.one()
    assert coeffs[qify(2)] == Poly.const(GaussRat("1/2"))
    assert coeffs[qify(3)] == Poly.const(GaussRat("1/6"))


def test_build_v_hatted_mirror():
    plain = build_v(2, ("1/3",), False, 2)
    hat = build_v(2, ("1/3",), True, 2)
    assert [(c, m.index) for c, m in plain.terms] == [
        (c, m.index) for c, m in hat.terms
    ]
    assert all(m.species == Species.PHIHAT for _, m in hat.terms)


# ---------------------------------------------------------------------------
# oracle tau drivers


def test_oracle_bkp_smallest():
    assert oracle_tau_bkp((1, 0), ((), ())) == t(1) * HALF


def test_oracle_kp_square_smallest():
    expected = t(1) ** 2 * GaussRat("1/4") - t(2) * HALF
    assert oracle_tau_kp_square((1, 0), ((), ())) == expected


def test_oracle_kdv_matches_staircase_schur():
    for k in range(4):
        got = oracle_kdv_tau(k)
        staircase = schur_lambda(Partition.staircase(k))
        assert got == staircase or got == -staircase


def test_oracle_kdv_odd_flow_matches_even_killed():
    got = oracle_kdv_tau(2, parity="odd")
    assert got == schur_lambda(Partition.staircase(2)).restrict_even_zero()


def test_unbalanced_charge_rejected():
    word = FermionWord([psi_plus("-1/2"), psi_plus("-3/2")])
    with pytest.raises(ValueError):
        oracle_tau(word, [Hamiltonian("charged")])


def test_charge_vacuum_normalization():
    # <-k|-k> = 1: the psi+ bra string against the psi- ket string
    for k in (1, 2, 3):
        bra = [psi_plus(qify(2 * j + 1) / 2) for j in range(k)]
        ket = [psi_minus(qify(2 * j + 1) / 2) for j in range(-k, 0)]
        assert wick_vev(FermionWord(bra + ket)) == Poly.one()
    # the staircase word itself needs the Hamiltonian flow to survive
    assert wick_vev(kdv_word(2)) == Poly.zero()


def test_two_factor_vev_equals_chi_entry():
    # <0| e^H v1 v2 e^-H |0> recomputed two ways for a case with constants
    from bkptau.tau import chi_pm

    c1 = tuple(map(qify, ("1/2", "0", "1/3")))
    c2 = tuple(map(qify, ("0", "1")))
    v1 = build_v(1, c1, False, 1)
    v2 = build_v(0, c2, False, 1)
    got = oracle_tau(FermionWord([v1, v2]), [Hamiltonian("charged", Bank.T)])
    times = TimeArgument.times(Bank.T)
    tilde = lambda c: tuple(-v if k % 2 == 1 else v for k, v in enumerate(c, start=1))
    args = (times.plus(c1), times.minus(tilde(c2)), times.minus(tilde(c1)),
            times.plus(c2))
    assert got == chi_pm(1, 1, 0, args, "wick")
