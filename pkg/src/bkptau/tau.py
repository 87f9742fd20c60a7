"""Pfaffian tau-function constructors for the BKP and KP hierarchies.

A (lambda, constants) pair selects a polynomial tau-function: the BKP one is
a Pfaffian of chi_bar blocks in the odd times, and its KP "square" is a
Pfaffian of chi_plus / chi_minus blocks over all times whose even-killed
restriction is exactly the square of the BKP one.

Sign conventions: chi_bar pairs its first index with its own (first)
argument, and chi_pm carries the parity signs (-1)^M on the first sum and
(-1)^N on the second; both choices are the ones validated against the
free-fermion oracle (fock.oracle_tau_*), which recomputes every tau from raw
Wick contractions.  The transposed readings are kept behind the
``convention`` switch purely so the validation tests can exhibit the
difference.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .pfaffian import UpperTriMatrix, pfaffian
from .ring import Bank, GR_I, GaussRat, Poly, Q0, Q1, TimeArgument, qify
from .schur import ExtendedStrictPartition, Partition, elem_schur_seq, schur_lambda


class InternalInconsistencyError(RuntimeError):
    """A structurally impossible value appeared; signals a convention bug."""


# ---------------------------------------------------------------------------
# Specs


@dataclass(frozen=True)
class TauSpec:
    """The data (lambda, {c_i}) of a polynomial tau-function.

    One finitely-supported rational constant sequence per part; the
    generating-series leading coefficients are normalized to 1, so the
    constants determine the tau-function up to that fixed scale.
    """

    lam: ExtendedStrictPartition
    constants: tuple

    def __init__(self, lam, constants: Optional[Sequence] = None):
        if not isinstance(lam, ExtendedStrictPartition):
            lam = ExtendedStrictPartition(lam)
        if constants is None:
            constants = ((),) * lam.length()
        constants = tuple(tuple(qify(v) for v in c) for c in constants)
        if len(constants) != lam.length():
            raise ValueError("need one constant sequence per part "
                             "(after padding to even length)")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "constants", constants)

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam.parts),
            "constants": [[str(v) for v in c] for c in self.constants],
        }

    @staticmethod
    def from_json(data: dict) -> "TauSpec":
        if not isinstance(data, dict) or "lambda" not in data:
            raise ValueError("tau spec JSON needs a 'lambda' array")
        lam = ExtendedStrictPartition(data["lambda"])
        constants = data.get("constants")
        if constants is not None and len(constants) == len(data["lambda"]) != lam.length():
            # caller gave constants for the unpadded parts; pad with an empty one
            constants = list(constants) + [()]
        return TauSpec(lam, constants)


@dataclass(frozen=True)
class CoeffSeries:
    """A series z^-N * (1 + a_1 z + a_2 z^2 + ...) with finite support."""

    leading: int
    coeffs: tuple

    def __init__(self, leading: int, coeffs: Sequence):
        coeffs = tuple(qify(v) for v in coeffs)
        if leading < 0:
            raise ValueError("leading index must be >= 0")
        if not coeffs or coeffs[0] != 1:
            raise ValueError("the leading coefficient must be normalized to 1")
        object.__setattr__(self, "leading", leading)
        object.__setattr__(self, "coeffs", coeffs)


def series_to_constants(series: CoeffSeries, order: Optional[int] = None) -> tuple:
    """Formal-log coefficients c with sum a_j z^j = exp(sum c_j z^j)."""
    alpha = series.coeffs
    if order is None:
        order = len(alpha) - 1
    a = lambda j: alpha[j] if j < len(alpha) else Q0
    c = [Q0] * (order + 1)  # c[0] unused
    for j in range(1, order + 1):
        total = j * a(j)
        for i in range(1, j):
            total -= i * c[i] * a(j - i)
        c[j] = total / j
    return tuple(c[1:])


def constants_to_series(constants: Sequence, leading: int, order: int) -> CoeffSeries:
    """Formal exponential, inverse of series_to_constants up to the order."""
    c = [Q0] + [qify(v) for v in constants]
    cc = lambda i: c[i] if i < len(c) else Q0
    alpha = [Q1]
    for j in range(1, order + 1):
        total = Q0
        for i in range(1, j + 1):
            total += i * cc(i) * alpha[j - i]
        alpha.append(total / j)
    return CoeffSeries(leading, alpha)


# ---------------------------------------------------------------------------
# The chi building blocks


def chi_bar(n: int, m: int, arg1: TimeArgument, arg2: TimeArgument) -> Poly:
    """(1/2) s_n(arg1) s_m(arg2) + sum_{k=1}^{m} (-1)^k s_{n+k}(arg1) s_{m-k}(arg2).

    The first index raises along its own argument; this is the pairing the
    Wick oracle produces for the two-point function of shifted vectors.
    """
    if n < 0 or m < 0:
        raise ValueError("indices must be >= 0")
    seq1 = elem_schur_seq(n + m, arg1)
    seq2 = elem_schur_seq(m, arg2)
    total = seq1[n] * seq2[m] * GaussRat("1/2")
    for k in range(1, m + 1):
        term = seq1[n + k] * seq2[m - k]
        total = total + (term if k % 2 == 0 else -term)
    return total


def chi_pm(sign: int, n: int, m: int, args, convention: str = "wick") -> Poly:
    """The four-argument block of the KP square.

    args = (s, t, u, v); returns

        (1/2) e1 sum_{k=0}^{m} s_{n+k}(s) s_{m-k}(-t)
        +- (1/2) e2 sum_{k=1}^{m} s_{n+k}(-u) s_{m-k}(v)

    with (e1, e2) = ((-1)^m, (-1)^n) for the oracle-validated "wick"
    convention and the transposed pair for "printed".
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if n < 0 or m < 0:
        raise ValueError("indices must be >= 0")
    if convention == "wick":
        e1, e2 = (-1) ** m, (-1) ** n
    elif convention == "printed":
        e1, e2 = (-1) ** n, (-1) ** m
    else:
        raise ValueError(f"unknown convention {convention!r}")
    s_arg, t_arg, u_arg, v_arg = args
    seq_s = elem_schur_seq(n + m, s_arg)
    seq_nt = elem_schur_seq(m, t_arg.negated())
    seq_nu = elem_schur_seq(n + m, u_arg.negated())
    seq_v = elem_schur_seq(m, v_arg)
    half = GaussRat("1/2")
    first = Poly.zero()
    for k in range(0, m + 1):
        first = first + seq_s[n + k] * seq_nt[m - k]
    second = Poly.zero()
    for k in range(1, m + 1):
        second = second + seq_nu[n + k] * seq_v[m - k]
    return first * (half * e1) + second * (half * e2 * sign)


# ---------------------------------------------------------------------------
# Tau constructors


def tau_bkp(spec: TauSpec, bank: Bank = Bank.T) -> Poly:
    """Pfaffian of chi_bar blocks at shifted odd times; odd-only polynomial."""
    parts = spec.lam.parts
    size = len(parts)
    if size == 0:
        return Poly.one()
    args = [TimeArgument.bkp_times(bank).plus(c) for c in spec.constants]
    entries = {
        (i, j): chi_bar(parts[i], parts[j], args[i], args[j])
        for i in range(size)
        for j in range(i + 1, size)
    }
    result = pfaffian(UpperTriMatrix(size, entries))
    if not result.is_odd_only():
        raise InternalInconsistencyError("BKP tau acquired an even-index variable")
    return result


def tau_kp_square(spec: TauSpec, convention: str = "wick") -> Poly:
    """The 4n-point KP tau whose even-killed restriction is the BKP square.

    Blocks: unhatted-unhatted and hatted-hatted entries are chi_plus,
    unhatted-hatted entries are -sqrt(-1) chi_minus; the result must be
    real, and a nonzero imaginary part signals a convention bug.
    """
    parts = spec.lam.parts
    size = len(parts)
    if size == 0:
        return Poly.one()
    times = TimeArgument.times(Bank.T)
    plus = [times.plus(c) for c in spec.constants]
    minus_tilde = [
        times.minus(tuple(-v if k % 2 == 1 else v for k, v in enumerate(c, start=1)))
        for c in spec.constants
    ]

    def block_args(i, j):
        return (plus[i], minus_tilde[j], minus_tilde[i], plus[j])

    entries = {}
    for i in range(size):
        for j in range(size):
            if i < j:
                a_plus = chi_pm(1, parts[i], parts[j], block_args(i, j), convention)
                entries[(i, j)] = a_plus
                entries[(size + i, size + j)] = a_plus
            a_minus = chi_pm(-1, parts[i], parts[j], block_args(i, j), convention)
            entries[(i, size + j)] = a_minus * (-GR_I)
    result = pfaffian(UpperTriMatrix(2 * size, entries))
    if not result.imag_part().is_zero():
        raise InternalInconsistencyError(
            "KP square tau has a nonzero imaginary part; convention bug"
        )
    return result


def kdv_tau(k: int) -> Poly:
    """The staircase Schur function; independent of all even times."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return schur_lambda(Partition.staircase(k))


def kdv_half(k: int) -> Poly:
    """The staircase tau at halved times (an odd-times-only polynomial)."""
    half = TimeArgument(rho_odd="1/2", rho_even="1/2")
    return kdv_tau(k).substitute(half).restrict_even_zero()
