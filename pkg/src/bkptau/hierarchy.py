"""Exact bilinear-identity verification by formal residues.

Both hierarchies are checked by expanding the shifted tau-functions into
finitely many z-coefficients (polynomial degrees bound everything), pairing
them with the elementary-Schur expansion of the exponential factor, and
collecting the residue by pure index bookkeeping.  The result is the exact
defect polynomial in the two banks t and y: it is identically zero iff the
bilinear identity holds.  Variables of index up to deg(tau_k) + deg(tau_l)
may appear in a defect even when absent from the inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .ring import (
    Bank,
    Monomial,
    Poly,
    TimeArgument,
    miwa_coeffs,
    mono_str,
    poly_from_real_acc,
    real_mul_add_into,
    mul_add_into,
    poly_from_acc,
)
from .schur import elem_schur_seq


@dataclass(frozen=True)
class MiwaExpansion:
    """Coefficients [p_0, p_1, ...] of z^-a in tau(v + scale*[1/z]_parity)."""

    coeffs: tuple
    scale: object
    parity: str

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, a: int) -> Poly:
        return self.coeffs[a] if 0 <= a < len(self.coeffs) else Poly.zero()


def miwa_expand(tau: Poly, scale, parity: str = "all") -> MiwaExpansion:
    """Expand the Miwa-shifted tau; with parity "odd" tau must be odd-only."""
    if parity == "odd" and not tau.is_odd_only():
        raise ValueError("odd-parity Miwa expansion requires an odd-only tau")
    return MiwaExpansion(tuple(miwa_coeffs(tau, scale, parity)), scale, parity)


@dataclass(frozen=True)
class DefectReport:
    """The exact defect polynomial of a bilinear identity check."""

    defect: Poly

    @property
    def is_zero(self) -> bool:
        return self.defect.is_zero()

    @property
    def witness_monomial(self) -> Optional[Monomial]:
        return self.defect.leading_monomial()

    def to_json(self) -> dict:
        witness = self.witness_monomial
        return {
            "is_zero": self.is_zero,
            "defect": self.defect.canonical(),
            "witness": None if witness is None else mono_str(witness),
        }


def _exp_factor_seq(max_j: int, parity: str) -> list:
    """s_j of the two-bank difference argument w_k = t_k - y_k."""
    return elem_schur_seq(max_j, _DiffArg(parity))


class _DiffArg(TimeArgument):
    """Time argument whose k-th component is t_k - y_k (parity-filtered)."""

    def __new__(cls, parity: str):
        self = TimeArgument.__new__(cls)
        object.__setattr__(self, "rho_odd", 1)
        object.__setattr__(self, "rho_even", 0 if parity == "odd" else 1)
        object.__setattr__(self, "shift", ())
        object.__setattr__(self, "bank", Bank.T)
        object.__setattr__(self, "_parity", parity)
        return self

    def __init__(self, parity: str):
        pass

    def component(self, k: int) -> Poly:
        if self._parity == "odd" and k % 2 == 0:
            return Poly.zero()
        return Poly.variable(Bank.T, k) - Poly.variable(Bank.Y, k)

    def __eq__(self, other):
        return isinstance(other, _DiffArg) and other._parity == self._parity

    def __hash__(self):
        return hash(("_DiffArg", self._parity))


def _bilinear_sum(p: MiwaExpansion, q: MiwaExpansion, offset: int, parity: str,
                  subtract: Optional[Poly] = None) -> Poly:
    """sum over a, b of s_{a+b-offset}(t - y) p_a(t) q_b(y) minus subtract."""
    max_j = (len(p) - 1) + (len(q) - 1) - offset
    all_real = all(c.is_real() for c in p.coeffs) and all(
        c.is_real() for c in q.coeffs
    )
    if max_j < 0:
        grouped = []
    else:
        schur = _exp_factor_seq(max_j, parity)
        grouped = [Poly.zero()] * (max_j + 1)
        for a, pa in enumerate(p.coeffs):
            if pa.is_zero():
                continue
            for b, qb in enumerate(q.coeffs):
                j = a + b - offset
                if j < 0 or qb.is_zero():
                    continue
                grouped[j] = grouped[j] + pa * qb
    if all_real and (subtract is None or subtract.is_real()):
        acc: dict = {}
        for j, g in enumerate(grouped):
            if not g.is_zero():
                real_mul_add_into(acc, schur[j], g)
        if subtract is not None:
            real_mul_add_into(acc, Poly.const(-1), subtract)
        return poly_from_real_acc(acc)
    acc = {}
    for j, g in enumerate(grouped):
        if not g.is_zero():
            mul_add_into(acc, schur[j], g)
    if subtract is not None:
        mul_add_into(acc, Poly.const(-1), subtract)
    return poly_from_acc(acc)


def kp_defect(tau_k: Poly, tau_l: Poly, d: int = 0) -> DefectReport:
    """Residue defect of the d-th modified KP bilinear identity (d = 0: KP).

    Res z^d tau_k(t - [1/z]) tau_l(y + [1/z]) exp(sum (t_i - y_i) z^i) dz
    must vanish; the defect is that residue as an exact polynomial.
    """
    if d < 0:
        raise ValueError("d must be >= 0")
    p = miwa_expand(tau_k.with_bank(Bank.T), -1, "all")
    q = miwa_expand(tau_l.with_bank(Bank.Y), 1, "all")
    return DefectReport(_bilinear_sum(p, q, d + 1, "all"))


def bkp_defect(tau: Poly) -> DefectReport:
    """Residue defect of the BKP bilinear identity for an odd-only tau.

    Res tau(t - 2[1/z]_odd) tau(y + 2[1/z]_odd) exp(sum (t - y) z^odd) dz/z
    minus tau(t) tau(y) must vanish.
    """
    if not tau.is_odd_only():
        raise ValueError("BKP verification requires an odd-only tau")
    tau_t = tau.with_bank(Bank.T)
    tau_y = tau.with_bank(Bank.Y)
    p = miwa_expand(tau_t, -2, "odd")
    q = miwa_expand(tau_y, 2, "odd")
    return DefectReport(_bilinear_sum(p, q, 0, "odd", subtract=tau_t * tau_y))
