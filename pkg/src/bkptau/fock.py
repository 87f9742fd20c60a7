"""Brute-force free-fermion oracle: Wick contractions and Hamiltonian flows.

Species and mode conventions:

  psi+_j, psi-_j   charged modes, j half-integer;
                   psi^a_i psi^b_j + psi^b_j psi^a_i = delta(a,-b) delta(i,-j),
                   psi+-_j |0> = 0 for j > 0, <0| psi+-_j = 0 for j < 0.
  phi_i, phihat_i  neutral modes, i integer;
                   phi_i = (psi+_{i+1/2} + (-1)^i psi-_{i-1/2}) / sqrt(2),
                   phihat_i = sqrt(-1) (psi+_{i+1/2} - (-1)^i psi-_{i-1/2}) / sqrt(2),
                   so phi_i phi_j + phi_j phi_i = (-1)^i delta(i,-j) and
                   phi_0, phihat_0 act specially on the vacuum.

Every vacuum expectation value reduces to a finite Pfaffian of the mode-level
two-point table below; the table (not any generating-function shortcut) is
authoritative.  Conjugation by a Hamiltonian flow shifts mode indices upward
with elementary-Schur coefficients, and truncating at the largest index that
can still contract is exact, so the oracle is finite and division-free.

Factors of 1/sqrt(2) from the neutral-to-charged change of basis are tracked
as an explicit power; any vacuum expectation value with an odd total power is
irrational and rejected (no such word arises from the tau constructions).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

from .pfaffian import UpperTriMatrix, pfaffian
from .ring import (
    Bank,
    GR_HALF,
    GR_I,
    GR_ONE,
    GR_ZERO,
    GaussRat,
    Poly,
    Q0,
    Q1,
    TimeArgument,
    qify,
)
from .schur import elem_schur_seq


class Species(Enum):
    PHI = "phi"
    PHIHAT = "phihat"
    PSI_PLUS = "psi+"
    PSI_MINUS = "psi-"


_NEUTRAL = (Species.PHI, Species.PHIHAT)
_CHARGED = (Species.PSI_PLUS, Species.PSI_MINUS)
_HALF = Q1 / 2


@dataclass(frozen=True)
class Mode:
    """A single fermion mode; neutral indices integer, charged half-integer."""

    species: Species
    index: object

    def __init__(self, species: Species, index):
        index = qify(index)
        if species in _NEUTRAL:
            if index.denominator != 1:
                raise ValueError(f"{species.value} index must be an integer")
        else:
            if (index - _HALF).denominator != 1:
                raise ValueError(f"{species.value} index must be a half-integer")
        object.__setattr__(self, "species", species)
        object.__setattr__(self, "index", index)

    def __str__(self):
        return f"{self.species.value}:{self.index}"


def phi(i: int) -> Mode:
    return Mode(Species.PHI, i)


def phihat(i: int) -> Mode:
    return Mode(Species.PHIHAT, i)


def psi_plus(index) -> Mode:
    return Mode(Species.PSI_PLUS, index)


def psi_minus(index) -> Mode:
    return Mode(Species.PSI_MINUS, index)


def parse_mode(token: str) -> Mode:
    """Parse "phi:2", "phihat:-1", "psi+:1/2", "psi-:-3/2"."""
    name, _, idx = token.partition(":")
    if not idx:
        raise ValueError(f"mode token {token!r} needs species:index")
    for sp in Species:
        if sp.value == name.strip().lower():
            return Mode(sp, idx.strip())
    raise ValueError(f"unknown species in {token!r}")


def _sign(i) -> int:
    return -1 if int(i) % 2 else 1


def two_point(m1: Mode, m2: Mode) -> GaussRat:
    """<0| m1 m2 |0> from the mode-level table."""
    s1, s2 = m1.species, m2.species
    i, j = m1.index, m2.index
    if s1 in _NEUTRAL and s2 in _NEUTRAL:
        if s1 == s2:
            if i == j == 0:
                return GR_HALF
            if j == -i and i > 0:
                return GaussRat(_sign(i))
            return GR_ZERO
        if i == j == 0:
            # <phihat_0 phi_0> = i/2 = -<phi_0 phihat_0>
            return GR_I * GR_HALF if s1 == Species.PHIHAT else -GR_I * GR_HALF
        return GR_ZERO
    if s1 in _CHARGED and s2 in _CHARGED:
        if s1 != s2 and j == -i and i > 0:
            return GR_ONE
        return GR_ZERO
    raise ValueError(
        "mixed neutral/charged contractions are irrational; "
        "decompose the neutral modes first"
    )


@dataclass(frozen=True)
class ModeSum:
    """Linear combination of modes, times an overall power of sqrt(2).

    The actual operator is sqrt(2)**sqrt2_power * sum(coeff * mode); the
    power stays integral and only even totals can survive a vacuum
    expectation value.
    """

    terms: tuple
    sqrt2_power: int = 0

    def __init__(self, terms: Iterable, sqrt2_power: int = 0):
        clean = []
        for coeff, mode in terms:
            if not isinstance(coeff, Poly):
                coeff = Poly.const(coeff)
            if not coeff.is_zero():
                clean.append((coeff, mode))
        object.__setattr__(self, "terms", tuple(clean))
        object.__setattr__(self, "sqrt2_power", sqrt2_power)

    @staticmethod
    def of(mode: Mode) -> "ModeSum":
        return ModeSum([(Poly.one(), mode)])

    def species_set(self) -> set:
        return {m.species for _, m in self.terms}

    def is_neutral(self) -> bool:
        return all(m.species in _NEUTRAL for _, m in self.terms)

    def is_charged(self) -> bool:
        return all(m.species in _CHARGED for _, m in self.terms)

    def charge(self) -> Optional[int]:
        """+-1 for a pure wedging/contracting factor, else None."""
        kinds = self.species_set()
        if kinds == {Species.PSI_PLUS}:
            return 1
        if kinds == {Species.PSI_MINUS}:
            return -1
        return None

    def truncated(self, max_index) -> "ModeSum":
        max_index = qify(max_index)
        return ModeSum(
            [(c, m) for c, m in self.terms if m.index <= max_index],
            self.sqrt2_power,
        )

    def to_charged(self) -> "ModeSum":
        """Rewrite neutral modes in the charged basis (one factor 1/sqrt 2)."""
        if self.is_charged():
            return self
        if not self.is_neutral():
            raise ValueError("cannot decompose a mode sum mixing neutral and charged")
        out = []
        for c, m in self.terms:
            i = m.index
            up = Mode(Species.PSI_PLUS, i + _HALF)
            dn = Mode(Species.PSI_MINUS, i - _HALF)
            if m.species == Species.PHI:
                out.append((c, up))
                out.append((c * _sign(i), dn))
            else:
                out.append((c * GR_I, up))
                out.append((c * (-GR_I * _sign(i)), dn))
        return ModeSum(out, self.sqrt2_power - 1)


@dataclass(frozen=True)
class FermionWord:
    """Ordered product of mode sums; order is significant."""

    factors: tuple

    def __init__(self, factors: Iterable):
        factors = tuple(
            f if isinstance(f, ModeSum) else ModeSum.of(f) for f in factors
        )
        object.__setattr__(self, "factors", factors)

    def __len__(self):
        return len(self.factors)


@dataclass(frozen=True)
class Hamiltonian:
    """A conjugation flow: charged H(t), or the odd flows on phi / phihat."""

    flavor: str  # "charged" | "bar_odd" | "hat_odd"
    bank: Bank = Bank.T
    parity: str = "all"  # charged flavor only; bar/hat are always odd

    def __post_init__(self):
        if self.flavor not in ("charged", "bar_odd", "hat_odd"):
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if self.parity not in ("all", "odd"):
            raise ValueError("parity must be 'all' or 'odd'")


def conjugate_by_H(mode: Mode, flavor: str, bank: Bank, bound: int,
                   parity: str = "all") -> ModeSum:
    """exp(H) mode exp(-H) as a shifted mode sum, truncated at shift <= bound.

    bar_odd moves phi up with odd-time Schur coefficients and leaves phihat
    alone (hat_odd symmetrically); the charged flow moves psi+- with the
    full-time coefficients of either sign, and acts on neutral modes through
    their charged decomposition.
    """
    if bound < 0:
        raise ValueError("bound must be >= 0")
    sp = mode.species
    if flavor in ("bar_odd", "hat_odd"):
        active = Species.PHI if flavor == "bar_odd" else Species.PHIHAT
        if sp in _CHARGED:
            raise ValueError("odd neutral flows act on psi modes only jointly; "
                             "use the charged flavor")
        if sp != active:
            return ModeSum.of(mode)
        arg = TimeArgument.bkp_times(bank)
        seq = elem_schur_seq(bound, arg)
        return ModeSum(
            [(seq[j], Mode(sp, mode.index + j)) for j in range(bound + 1)]
        )
    # charged flavor
    if sp in _NEUTRAL:
        return conjugate_modesum(
            ModeSum.of(mode).to_charged(), [Hamiltonian("charged", bank, parity)], bound
        )
    base = TimeArgument.times(bank) if parity == "all" else TimeArgument.bkp_times(bank)
    arg = base if sp == Species.PSI_PLUS else base.negated()
    seq = elem_schur_seq(bound, arg)
    return ModeSum([(seq[j], Mode(sp, mode.index + j)) for j in range(bound + 1)])


def _validate_hams(hams: Sequence[Hamiltonian]) -> None:
    flavors = [h.flavor for h in hams]
    if len(set(flavors)) != len(flavors):
        raise ValueError("duplicate Hamiltonian flavors")
    if "charged" in flavors and len(flavors) > 1:
        raise ValueError("the charged flow cannot be combined with neutral flows")


def conjugate_modesum(ms: ModeSum, hams: Sequence[Hamiltonian], bound: int) -> ModeSum:
    """Apply every listed flow to a mode sum (each species sees one flow)."""
    _validate_hams(hams)
    charged = next((h for h in hams if h.flavor == "charged"), None)
    if charged is not None and not ms.is_charged():
        ms = ms.to_charged()
    out = []
    for coeff, mode in ms.terms:
        conj = None
        for h in hams:
            if h.flavor == "charged" and mode.species in _CHARGED:
                conj = conjugate_by_H(mode, h.flavor, h.bank, bound, h.parity)
            elif h.flavor == "bar_odd" and mode.species == Species.PHI:
                conj = conjugate_by_H(mode, h.flavor, h.bank, bound)
            elif h.flavor == "hat_odd" and mode.species == Species.PHIHAT:
                conj = conjugate_by_H(mode, h.flavor, h.bank, bound)
        if conj is None:
            conj = ModeSum.of(mode)
        for c2, m2 in conj.terms:
            out.append((coeff * c2, m2))
    return ModeSum(out, ms.sqrt2_power)


def wick_vev(word: FermionWord) -> Poly:
    """<0| word |0> as the Pfaffian of pairwise contractions in word order."""
    factors = list(word.factors)
    if len(factors) % 2 == 1:
        return Poly.zero()
    if not factors:
        return Poly.one()
    species = set()
    for f in factors:
        species |= f.species_set()
    if species & set(_NEUTRAL) and species & set(_CHARGED):
        factors = [f.to_charged() for f in factors]
    total_pow = sum(f.sqrt2_power for f in factors)
    if total_pow % 2:
        raise ValueError("vacuum expectation value is irrational (odd sqrt-2 power)")
    n = len(factors)
    entries = {}
    for a in range(n):
        for b in range(a + 1, n):
            acc = Poly.zero()
            for c1, m1 in factors[a].terms:
                for c2, m2 in factors[b].terms:
                    tp = two_point(m1, m2)
                    if tp:
                        acc = acc + c1 * c2 * tp
            if not acc.is_zero():
                entries[(a, b)] = acc
    result = pfaffian(UpperTriMatrix(n, entries))
    if total_pow:
        result = result * GaussRat(2) ** (total_pow // 2)
    return result


def oracle_tau(word: FermionWord, hamiltonians: Sequence[Hamiltonian],
               bound: Optional[int] = None) -> Poly:
    """Conjugate every factor by the listed flows, then take the Wick VEV.

    The truncation index is the negated minimum mode index of the word:
    contraction partners can never exceed it, so dropping higher modes is
    exact.
    """
    _validate_hams(hamiltonians)
    factors = list(word.factors)
    if not factors:
        return Poly.one()
    charges = [f.charge() for f in factors]
    if all(c is not None for c in charges) and sum(charges) != 0:
        raise ValueError("word has unbalanced charge; the vacuum VEV vanishes "
                         "identically")
    # The exact cutoff comes from the basis the contractions run in, so any
    # neutral-to-charged rewrite must happen before measuring indices.
    if any(h.flavor == "charged" for h in hamiltonians):
        factors = [f.to_charged() if not f.is_charged() else f for f in factors]
    indices = [m.index for f in factors for _, m in f.terms]
    if not indices:
        return Poly.zero()
    cutoff = -min(indices)
    if bound is None:
        bound = max(0, int(2 * cutoff) + 1)
    conj = [conjugate_modesum(f, hamiltonians, bound).truncated(cutoff)
            for f in factors]
    return wick_vev(FermionWord(conj))


# ---------------------------------------------------------------------------
# Word builders for the tau-function families


def build_v(lambda_part: int, c: Sequence, hatted: bool, bound: int) -> ModeSum:
    """The vector phi_{-lam} + sum_{j > -lam} s_{j+lam}(c) phi_j, truncated.

    Truncation at mode index <= bound is exact inside any VEV whose lowest
    mode index is >= -bound.
    """
    if lambda_part < 0:
        raise ValueError("partition part must be >= 0")
    if bound < lambda_part - 1:
        bound = lambda_part
    carg = TimeArgument.constants(tuple(qify(v) for v in c))
    seq = elem_schur_seq(bound + lambda_part, carg)
    species = Species.PHIHAT if hatted else Species.PHI
    return ModeSum(
        [(seq[j + lambda_part], Mode(species, j)) for j in range(-lambda_part, bound + 1)]
    )


def _spec_words(parts, constants, hatted_too: bool):
    lam_max = max(parts) if parts else 0
    vs = [build_v(p, c, False, lam_max) for p, c in zip(parts, constants)]
    if not hatted_too:
        return FermionWord(vs)
    vhats = [build_v(p, c, True, lam_max) for p, c in zip(parts, constants)]
    return FermionWord(vs + vhats)


def oracle_tau_bkp(parts, constants, bank: Bank = Bank.T) -> Poly:
    """Direct VEV recomputation of the Pfaffian BKP tau-function."""
    word = _spec_words(parts, constants, hatted_too=False)
    return oracle_tau(word, [Hamiltonian("bar_odd", bank)])


def oracle_tau_kp_square(parts, constants) -> Poly:
    """Direct VEV recomputation of the 4n-point KP tau-function."""
    word = _spec_words(parts, constants, hatted_too=True)
    return oracle_tau(word, [Hamiltonian("charged", Bank.T, "all")])


def oracle_two_bank_product(parts, constants) -> Poly:
    """VEV with independent odd flows on phi (bank T) and phihat (bank Y)."""
    word = _spec_words(parts, constants, hatted_too=True)
    return oracle_tau(
        word, [Hamiltonian("bar_odd", Bank.T), Hamiltonian("hat_odd", Bank.Y)]
    )


def kdv_word(k: int) -> FermionWord:
    """The charge-zero word whose VEV is the staircase tau-function.

    psi+ modes at -lam_i + i - 1/2 for the staircase lam = (k, ..., 1),
    followed by the psi- string realizing the charge -k vacuum.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    ups = [Mode(Species.PSI_PLUS, qify(2 * i - k) - _HALF - 1) for i in range(1, k + 1)]
    downs = [Mode(Species.PSI_MINUS, qify(j) + _HALF) for j in range(-k, 0)]
    return FermionWord([ModeSum.of(m) for m in ups + downs])


def oracle_kdv_tau(k: int, parity: str = "all") -> Poly:
    """VEV of the staircase word under the charged flow (all or odd times)."""
    return oracle_tau(kdv_word(k), [Hamiltonian("charged", Bank.T, parity)])
