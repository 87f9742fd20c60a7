"""Partitions, elementary Schur polynomials, Schur and Q-Schur functions.

elem_schur(j, arg) is the coefficient of z^j in exp(sum_k u_k z^k) for the
affine time sequence u described by arg.  Schur functions come from the
Jacobi-Trudi determinant; Q-Schur functions from a Pfaffian of chi-bar
building blocks at even-killed times, normalized so that Q agrees with the
classical combinatorial Q-functions under t_k = 2*p_k/k (p_k power sums).
"""

from __future__ import annotations

from dataclasses import dataclass

from .pfaffian import RectMatrix, UpperTriMatrix, determinant, pfaffian
from .ring import Bank, GaussRat, Poly, Q1, TimeArgument, qify


# ---------------------------------------------------------------------------
# Partition types


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive parts."""

    parts: tuple

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts if int(p) != 0)
        if any(p < 0 for p in parts):
            raise ValueError("partition parts must be nonnegative")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("partition parts must be weakly decreasing")
        object.__setattr__(self, "parts", parts)

    def size(self) -> int:
        return sum(self.parts)

    def length(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition(())
        cols = [0] * self.parts[0]
        for p in self.parts:
            for i in range(p):
                cols[i] += 1
        return Partition(cols)

    @staticmethod
    def staircase(k: int) -> "Partition":
        return Partition(range(k, 0, -1))

    @staticmethod
    def rectangle(width: int, height: int) -> "Partition":
        return Partition((width,) * height)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class FrobeniusCoords:
    """Hook coordinates (arms | legs), both strictly decreasing and >= 0."""

    arms: tuple
    legs: tuple

    def __init__(self, arms, legs):
        arms = tuple(int(a) for a in arms)
        legs = tuple(int(b) for b in legs)
        if len(arms) != len(legs):
            raise ValueError("arms and legs must have equal length")
        for seq in (arms, legs):
            if any(v < 0 for v in seq):
                raise ValueError("Frobenius coordinates must be nonnegative")
            if any(seq[i] <= seq[i + 1] for i in range(len(seq) - 1)):
                raise ValueError("Frobenius coordinates must strictly decrease")
        object.__setattr__(self, "arms", arms)
        object.__setattr__(self, "legs", legs)

    def to_partition(self) -> Partition:
        """Rebuild the partition with alpha_i = lam_i - i, beta_i = lam'_i - i."""
        r = len(self.arms)
        rows = [self.arms[i] + i + 1 for i in range(r)]
        col_lengths = [self.legs[i] + i + 1 for i in range(r)]
        extra = []
        row = r + 1
        while True:
            width = sum(1 for c in col_lengths if c >= row)
            if width == 0:
                break
            extra.append(width)
            row += 1
        return Partition(tuple(rows) + tuple(extra))

    @staticmethod
    def from_partition(lam: Partition) -> "FrobeniusCoords":
        conj = lam.conjugate().parts
        arms = []
        legs = []
        for i, p in enumerate(lam.parts, start=1):
            if p < i:
                break
            arms.append(p - i)
            legs.append(conj[i - 1] - i)
        return FrobeniusCoords(tuple(arms), tuple(legs))


def frobenius_convert(f: FrobeniusCoords) -> Partition:
    return f.to_partition()


def frobenius_coords(lam: Partition) -> FrobeniusCoords:
    return FrobeniusCoords.from_partition(lam)


@dataclass(frozen=True)
class ExtendedStrictPartition:
    """Strictly decreasing parts, padded with one 0 to even length if needed."""

    parts: tuple

    def __init__(self, parts):
        parts = tuple(int(p) for p in parts)
        if len(parts) % 2 == 1:
            parts = parts + (0,)
        if any(p < 0 for p in parts):
            raise ValueError("parts must be nonnegative")
        if any(parts[i] <= parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("parts must strictly decrease")
        object.__setattr__(self, "parts", parts)

    def length(self) -> int:
        return len(self.parts)

    def half_length(self) -> int:
        return len(self.parts) // 2

    def size(self) -> int:
        return sum(self.parts)

    def max_part(self) -> int:
        return self.parts[0] if self.parts else 0

    def __iter__(self):
        return iter(self.parts)

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


# ---------------------------------------------------------------------------
# Elementary Schur polynomials


_SCHUR_CACHE: dict = {}


def elem_schur_seq(n: int, arg: TimeArgument) -> list:
    """[s_0(u), ..., s_n(u)] for the time sequence u; s_0 = 1.

    Uses j*s_j = sum_{k<=j} k*u_k*s_{j-k}, the z-derivative recurrence of
    exp(sum u_k z^k); cached per argument.
    """
    seq = _SCHUR_CACHE.get(arg)
    if seq is None:
        seq = [Poly.one()]
        _SCHUR_CACHE[arg] = seq
    while len(seq) <= n:
        j = len(seq)
        total = Poly.zero()
        for k in range(1, j + 1):
            u_k = arg.component(k)
            if u_k.is_zero():
                continue
            total = total + u_k * seq[j - k] * k
        seq.append(total * GaussRat(Q1 / j))
    return seq[: n + 1]


def elem_schur(j: int, arg: TimeArgument) -> Poly:
    """s_j at the affine argument; 0 for j < 0, 1 for j = 0."""
    if j < 0:
        return Poly.zero()
    return elem_schur_seq(j, arg)[j]


# ---------------------------------------------------------------------------
# Schur and Q-Schur functions


def schur_lambda(lam: Partition, arg: TimeArgument = None) -> Poly:
    """Jacobi-Trudi determinant det(s_{lam_i - i + j}) over the full times."""
    if not isinstance(lam, Partition):
        lam = Partition(lam)
    if arg is None:
        arg = TimeArgument.times(Bank.T)
    ell = lam.length()
    if ell == 0:
        return Poly.one()
    top = lam.parts[0] + ell
    seq = elem_schur_seq(top, arg)

    def entry(i, j):
        d = lam.parts[i] - (i + 1) + (j + 1)
        return seq[d] if 0 <= d <= top else Poly.zero()

    rows = [[entry(i, j) for j in range(ell)] for i in range(ell)]
    return determinant(RectMatrix(rows))


def q_schur(lam: ExtendedStrictPartition) -> Poly:
    """Q_lambda(t/2): 2^n times the Pfaffian of chi-bar blocks at BKP times.

    Matches the classical Q-functions under the substitution t_k = 2*p_k/k.
    """
    if not isinstance(lam, ExtendedStrictPartition):
        lam = ExtendedStrictPartition(lam)
    from .tau import chi_bar

    n = lam.half_length()
    if n == 0:
        return Poly.one()
    tbar = TimeArgument.bkp_times(Bank.T)
    parts = lam.parts
    size = 2 * n
    entries = {
        (i, j): chi_bar(parts[i], parts[j], tbar, tbar)
        for i in range(size)
        for j in range(i + 1, size)
    }
    return pfaffian(UpperTriMatrix(size, entries)) * GaussRat(2) ** n


# ---------------------------------------------------------------------------
# Character series check


def _series_mul(a: list, b: list, order: int) -> list:
    out = [0] * (order + 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if i + j > order:
                break
            out[i + j] += ai * bj
    return out


def _geometric(k: int, order: int, square: bool = False) -> list:
    """(1 - q^k)^-1 truncated (or its square)."""
    out = [0] * (order + 1)
    for m in range(0, order // k + 1):
        out[m * k] = (m + 1) if square else 1
    return out


def character_check(order: int) -> bool:
    """Compare three closed forms of the q-dimension series to given order.

    2*prod(1+q^k)^2 == sum_j q^(j(j-1)/2) / prod(1-q^k)
                    == 2*prod(1-q^(2k-1))^-2
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    one_plus = lambda k: [1 if i in (0, k) else 0 for i in range(order + 1)]

    lhs = [2] + [0] * order
    for k in range(1, order + 1):
        fac = one_plus(k)
        lhs = _series_mul(lhs, fac, order)
        lhs = _series_mul(lhs, fac, order)

    theta = [0] * (order + 1)
    j = 0
    while j * (j - 1) // 2 <= order:
        theta[j * (j - 1) // 2] += 1
        if j > 0:
            neg = (-j) * (-j - 1) // 2
            if neg <= order:
                theta[neg] += 1
        j += 1
    middle = theta
    for k in range(1, order + 1):
        middle = _series_mul(middle, _geometric(k, order), order)

    rhs = [2] + [0] * order
    for k in range(1, order + 1, 2):
        rhs = _series_mul(rhs, _geometric(k, order, square=True), order)

    return lhs == middle == rhs
