"""Exact sparse polynomial ring in weighted time variables.

Coefficients are Gaussian rationals (exact rational real and imaginary
parts).  Variables come in two banks, t1, t2, ... and y1, y2, ...; the
weight of t_k and y_k is k, so the weighted degree of a monomial is
sum(index * exponent).  Every operation is exact; values are treated as
immutable and may be shared freely.

Monomials are stored as tuples of (code, exponent) pairs sorted by code,
where code = 2*index + bank packs a variable into one int.  The zero
polynomial is the empty term dict and prints as "0".
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import IntEnum
from math import comb
from typing import Iterable, Iterator, Optional, Union

try:
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as _mpq

Q0 = _mpq(0)
Q1 = _mpq(1)

QLike = Union[int, str, "_mpq"]


def qify(x: QLike) -> "_mpq":
    """Coerce an int, rational string like "3/4", or rational to exact form."""
    if isinstance(x, int):
        return _mpq(x)
    if isinstance(x, str):
        return _mpq(x.strip())
    return _mpq(x)


class Bank(IntEnum):
    T = 0
    Y = 1


class GaussRat:
    """A Gaussian rational a + b*i with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re: QLike = 0, im: QLike = 0):
        self.re = qify(re)
        self.im = qify(im)

    @staticmethod
    def _new(re, im) -> "GaussRat":
        g = GaussRat.__new__(GaussRat)
        g.re = re
        g.im = im
        return g

    def is_real(self) -> bool:
        return not self.im

    def conjugate(self) -> "GaussRat":
        return GaussRat._new(self.re, -self.im)

    def __add__(self, other):
        other = _coerce(other)
        return GaussRat._new(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return GaussRat._new(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return GaussRat._new(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        a, b = self.re, self.im
        c, d = other.re, other.im
        if not b and not d:
            return GaussRat._new(a * c, Q0)
        return GaussRat._new(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        c, d = other.re, other.im
        n = c * c + d * d
        if not n:
            raise ZeroDivisionError("division by zero GaussRat")
        a, b = self.re, self.im
        return GaussRat._new((a * c + b * d) / n, (b * c - a * d) / n)

    def __pow__(self, n: int):
        if n < 0:
            return GR_ONE / self ** (-n)
        result = GR_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, str)) or type(other) is type(Q0):
            other = GaussRat(other)
        if not isinstance(other, GaussRat):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __str__(self):
        return format_coeff(self)

    __repr__ = __str__


def _coerce(x) -> GaussRat:
    if isinstance(x, GaussRat):
        return x
    return GaussRat(x)


GR_ZERO = GaussRat(0)
GR_ONE = GaussRat(1)
GR_I = GaussRat(0, 1)
GR_HALF = GaussRat("1/2")


def format_q(x) -> str:
    """Print a rational as "p" or "p/q" with positive denominator."""
    s = str(x)
    return s


def format_coeff(c: GaussRat) -> str:
    """Canonical coefficient text: "a/b" if real, "(a/b+c/d*i)" otherwise."""
    if not c.im:
        return format_q(c.re)
    sign = "-" if c.im < 0 else "+"
    return f"({format_q(c.re)}{sign}{format_q(abs(c.im))}*i)"


# ---------------------------------------------------------------------------
# Variables and monomials


@dataclass(frozen=True)
class Var:
    """A single time variable: bank T or Y, positive index; weight = index."""

    bank: Bank
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("variable index must be >= 1")

    @property
    def code(self) -> int:
        return (self.index << 1) | int(self.bank)

    @staticmethod
    def from_code(code: int) -> "Var":
        return Var(Bank(code & 1), code >> 1)

    def __str__(self):
        return ("t" if self.bank == Bank.T else "y") + str(self.index)


# A monomial is a tuple of (code, exponent) pairs, sorted by code, with
# strictly positive exponents.  The empty tuple is the constant monomial.
Monomial = tuple


def mono_degree(mono: Monomial) -> int:
    return sum((code >> 1) * e for code, e in mono)


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        c1, e1 = m1[i]
        c2, e2 = m2[j]
        if c1 == c2:
            out.append((c1, e1 + e2))
            i += 1
            j += 1
        elif c1 < c2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def mono_str(mono: Monomial) -> str:
    if not mono:
        return "1"
    parts = []
    for code, e in mono:
        v = str(Var.from_code(code))
        parts.append(v if e == 1 else f"{v}^{e}")
    return "*".join(parts)


def mono_sort_key(mono: Monomial):
    """Canonical term order: weighted degree desc, then exponent-vector lex."""
    return (-mono_degree(mono), tuple((code, -e) for code, e in mono))


def mono_vars(mono: Monomial) -> tuple:
    """The monomial as ((Var, exponent), ...) pairs."""
    return tuple((Var.from_code(code), e) for code, e in mono)


# ---------------------------------------------------------------------------
# Polynomials


class Poly:
    """Sparse exact polynomial; dict from monomial to nonzero GaussRat."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[dict] = None):
        # Accepts an already-canonical dict; use the factory methods below.
        self._terms = terms if terms is not None else {}

    # -- constructors

    @staticmethod
    def zero() -> "Poly":
        return _P_ZERO

    @staticmethod
    def one() -> "Poly":
        return _P_ONE

    @staticmethod
    def const(c) -> "Poly":
        c = _coerce(c)
        if not c:
            return _P_ZERO
        return Poly({(): c})

    @staticmethod
    def variable(bank: Bank, index: int) -> "Poly":
        code = Var(bank, index).code
        return Poly({((code, 1),): GR_ONE})

    # -- inspection

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Weighted degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(mono_degree(m) for m in self._terms)

    def num_terms(self) -> int:
        return len(self._terms)

    def terms(self) -> Iterator:
        return iter(self._terms.items())

    def coefficient(self, mono: Monomial) -> GaussRat:
        return self._terms.get(mono, GR_ZERO)

    def constant_term(self) -> GaussRat:
        return self._terms.get((), GR_ZERO)

    def variables(self) -> set:
        return {Var.from_code(code) for m in self._terms for code, _ in m}

    def banks(self) -> set:
        return {Bank(code & 1) for m in self._terms for code, _ in m}

    def is_real(self) -> bool:
        return all(not c.im for c in self._terms.values())

    def is_odd_only(self) -> bool:
        """True iff every variable index appearing is odd."""
        return all((code >> 1) % 2 == 1 for m in self._terms for code, _ in m)

    def leading_monomial(self) -> Optional[Monomial]:
        """Canonically first monomial, or None for the zero polynomial."""
        if not self._terms:
            return None
        return min(self._terms, key=mono_sort_key)

    def real_part(self) -> "Poly":
        return Poly({m: GaussRat._new(c.re, Q0) for m, c in self._terms.items() if c.re})

    def imag_part(self) -> "Poly":
        return Poly({m: GaussRat._new(c.im, Q0) for m, c in self._terms.items() if c.im})

    # -- arithmetic

    def __add__(self, other):
        other = _as_poly(other)
        if not self._terms:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for m, c in other._terms.items():
            prev = out.get(m)
            s = c if prev is None else prev + c
            if s:
                out[m] = s
            elif prev is not None:
                del out[m]
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __neg__(self):
        return Poly({m: -c for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Poly):
            acc: dict = {}
            mul_add_into(acc, self, other)
            return poly_from_acc(acc)
        c = _coerce(other)
        if not c:
            return _P_ZERO
        return Poly({m: a * c for m, a in self._terms.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("polynomial powers must be nonnegative")
        result = _P_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, GaussRat)) or type(other) is type(Q0):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    # -- structural maps

    def with_bank(self, bank: Bank) -> "Poly":
        """Rename every variable into the given bank, indices unchanged."""
        out: dict = {}
        for m, c in self._terms.items():
            nm = tuple(sorted((((code >> 1) << 1) | int(bank), e) for code, e in m))
            prev = out.get(nm)
            s = c if prev is None else prev + c
            if s:
                out[nm] = s
            elif prev is not None:
                del out[nm]
        return Poly(out)

    def swap_banks(self) -> "Poly":
        """Exchange the T and Y banks throughout."""
        out: dict = {}
        for m, c in self._terms.items():
            nm = tuple(sorted((code ^ 1, e) for code, e in m))
            out[nm] = c
        return Poly(out)

    def restrict_even_zero(self) -> "Poly":
        """Delete every monomial containing an even-index variable."""
        return Poly(
            {
                m: c
                for m, c in self._terms.items()
                if all((code >> 1) % 2 == 1 for code, _ in m)
            }
        )

    def substitute(self, arg: "TimeArgument") -> "Poly":
        """Apply the affine map v_k -> rho_parity(k)*v_k + shift_k per variable.

        Each variable keeps its own bank; with bank=None the variable part is
        dropped and only the constant shift survives (full evaluation).
        """
        images: dict = {}
        out = _P_ZERO
        for m, c in self._terms.items():
            term = Poly.const(c)
            for code, e in m:
                img = images.get(code)
                if img is None:
                    k = code >> 1
                    rho = arg.rho_odd if k % 2 == 1 else arg.rho_even
                    img = Poly.const(arg.shift_at(k))
                    if arg.bank is not None and rho:
                        img = img + Poly.variable(Bank(code & 1), k) * GaussRat(rho)
                    images[code] = img
                term = term * img ** e
            out = out + term
        return out

    # -- text form

    def canonical(self) -> str:
        """Deterministic canonical text; see format_coeff for coefficients."""
        if not self._terms:
            return "0"
        parts = []
        for mono in sorted(self._terms, key=mono_sort_key):
            c = self._terms[mono]
            if c.im:
                body = format_coeff(c)
                sep = " + "
            else:
                neg = c.re < 0
                body = format_q(-c.re if neg else c.re)
                sep = " - " if neg else " + "
            if mono:
                body = f"{body}*{mono_str(mono)}"
            if not parts:
                parts.append(("-" if sep == " - " else "") + body)
            else:
                parts.append(sep + body)
        return "".join(parts)

    def __str__(self):
        return self.canonical()

    __repr__ = __str__


_P_ZERO = Poly({})
_P_ONE = Poly({(): GR_ONE})


def t(index: int) -> Poly:
    return Poly.variable(Bank.T, index)


def y(index: int) -> Poly:
    return Poly.variable(Bank.Y, index)


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly.const(x)


def canonical_string(p: Poly) -> str:
    return p.canonical()


# ---------------------------------------------------------------------------
# Accumulating products (shared by Poly.__mul__ and the residue machinery)


def mul_add_into(acc: dict, a: Poly, b: Poly) -> None:
    """acc += a*b where acc maps monomials to GaussRat."""
    if not a._terms or not b._terms:
        return
    small, large = a._terms, b._terms
    if len(small) > len(large):
        small, large = large, small
    get = acc.get
    for ma, ca in small.items():
        ra, ia = ca.re, ca.im
        for mb, cb in large.items():
            m = mono_mul(ma, mb)
            rb, ib = cb.re, cb.im
            if ia or ib:
                g = GaussRat._new(ra * rb - ia * ib, ra * ib + ia * rb)
            else:
                g = GaussRat._new(ra * rb, Q0)
            prev = get(m)
            acc[m] = g if prev is None else prev + g


def real_mul_add_into(acc: dict, a: Poly, b: Poly) -> None:
    """acc += a*b on the rational parts only; a and b must be real."""
    if not a._terms or not b._terms:
        return
    small, large = a._terms, b._terms
    if len(small) > len(large):
        small, large = large, small
    get = acc.get
    for ma, ca in small.items():
        ra = ca.re
        for mb, cb in large.items():
            m = mono_mul(ma, mb)
            v = ra * cb.re
            prev = get(m)
            acc[m] = v if prev is None else prev + v


def poly_from_acc(acc: dict) -> Poly:
    return Poly({m: c for m, c in acc.items() if c})


def poly_from_real_acc(acc: dict) -> Poly:
    return Poly({m: GaussRat._new(c, Q0) for m, c in acc.items() if c})


# ---------------------------------------------------------------------------
# Time arguments (affine substitution descriptors)


@dataclass(frozen=True)
class TimeArgument:
    """An affine time sequence u_k = rho_parity(k) * v_k + shift_k.

    bank selects which bank's variables form the linear part (None means the
    sequence is pure constants).  shift is indexed from k = 1; trailing zeros
    are stripped so equal arguments hash equal.
    """

    rho_odd: object = 1
    rho_even: object = 1
    shift: tuple = ()
    bank: Optional[Bank] = Bank.T

    def __post_init__(self):
        object.__setattr__(self, "rho_odd", qify(self.rho_odd))
        object.__setattr__(self, "rho_even", qify(self.rho_even))
        sh = tuple(qify(s) for s in self.shift)
        while sh and not sh[-1]:
            sh = sh[:-1]
        object.__setattr__(self, "shift", sh)

    # -- common sequences

    @staticmethod
    def times(bank: Bank = Bank.T) -> "TimeArgument":
        """The plain sequence (t1, t2, t3, ...)."""
        return TimeArgument(1, 1, (), bank)

    @staticmethod
    def bkp_times(bank: Bank = Bank.T) -> "TimeArgument":
        """The even-killed sequence (t1, 0, t3, 0, ...)."""
        return TimeArgument(1, 0, (), bank)

    @staticmethod
    def constants(shift: Iterable) -> "TimeArgument":
        """A pure-constant sequence (c1, c2, ...)."""
        return TimeArgument(0, 0, tuple(shift), None)

    # -- composition helpers

    def shift_at(self, k: int):
        return self.shift[k - 1] if 0 < k <= len(self.shift) else Q0

    def plus(self, extra: Iterable) -> "TimeArgument":
        extra = tuple(qify(v) for v in extra)
        n = max(len(self.shift), len(extra))
        merged = tuple(
            self.shift_at(k) + (extra[k - 1] if k <= len(extra) else Q0)
            for k in range(1, n + 1)
        )
        return replace(self, shift=merged)

    def minus(self, extra: Iterable) -> "TimeArgument":
        return self.plus(tuple(-qify(v) for v in extra))

    def negated(self) -> "TimeArgument":
        """u -> -u."""
        return replace(
            self,
            rho_odd=-self.rho_odd,
            rho_even=-self.rho_even,
            shift=tuple(-s for s in self.shift),
        )

    def alternated(self) -> "TimeArgument":
        """u -> u~ with u~_k = (-1)^k u_k."""
        return replace(
            self,
            rho_odd=-self.rho_odd,
            shift=tuple(
                -s if k % 2 == 1 else s for k, s in enumerate(self.shift, start=1)
            ),
        )

    def scaled(self, r) -> "TimeArgument":
        r = qify(r)
        return replace(
            self,
            rho_odd=self.rho_odd * r,
            rho_even=self.rho_even * r,
            shift=tuple(s * r for s in self.shift),
        )

    def component(self, k: int) -> Poly:
        """u_k as a polynomial."""
        rho = self.rho_odd if k % 2 == 1 else self.rho_even
        out = Poly.const(self.shift_at(k))
        if self.bank is not None and rho:
            out = out + Poly.variable(self.bank, k) * GaussRat(rho)
        return out


def substitute(p: Poly, arg: TimeArgument) -> Poly:
    return p.substitute(arg)


def restrict_even_zero(p: Poly) -> Poly:
    return p.restrict_even_zero()


# ---------------------------------------------------------------------------
# Miwa shifts and elementary-Schur differential operators


def _single_bank(p: Poly) -> None:
    if len(p.banks()) > 1:
        raise ValueError("operation requires a single-bank polynomial")


def miwa_coeffs(p: Poly, scale, parity: str = "all") -> list:
    """Coefficients [p_0, p_1, ...] of z^-a in p(v + scale*[1/z]_parity).

    [1/z] = (1/z, 1/(2 z^2), 1/(3 z^3), ...); with parity "odd" only the
    odd-index components are shifted.  p_a equals s_a of the scaled
    derivative argument applied to p, and has weighted degree deg(p) - a.
    """
    if parity not in ("all", "odd"):
        raise ValueError("parity must be 'all' or 'odd'")
    _single_bank(p)
    scale = qify(scale)
    if p.is_zero():
        return []
    acc: list = [dict() for _ in range(p.degree() + 1)]
    for mono, coeff in p._terms.items():
        # options: list of (z-weight a, kept monomial pairs, rational factor)
        options = [(0, [], Q1)]
        for code, e in mono:
            k = code >> 1
            if parity == "odd" and k % 2 == 0:
                for opt in options:
                    opt[1].append((code, e))
                continue
            base = scale / k
            new_options = []
            for a, pairs, fac in options:
                power = Q1
                for d in range(e + 1):
                    npairs = pairs + ([(code, e - d)] if e - d else [])
                    new_options.append((a + k * d, npairs, fac * comb(e, d) * power))
                    power = power * base
            options = new_options
        for a, pairs, fac in options:
            m = tuple(pairs)
            c = coeff * GaussRat._new(fac, Q0)
            d_acc = acc[a]
            prev = d_acc.get(m)
            d_acc[m] = c if prev is None else prev + c
    out = [poly_from_acc(d) for d in acc]
    while out and out[-1].is_zero():
        out.pop()
    return out


def apply_schur_diff(p: Poly, j: int, scale, parity: str = "all") -> Poly:
    """s_j of the argument u_k = scale * (d/dv_k) / k (parity class) applied to p.

    Equivalently the z^-j Taylor coefficient of p(v + scale*[1/z]_parity);
    lowers weighted degree by exactly j or returns 0.
    """
    if j < 0:
        return _P_ZERO
    coeffs = miwa_coeffs(p, scale, parity)
    return coeffs[j] if j < len(coeffs) else _P_ZERO


# ---------------------------------------------------------------------------
# Parsing of canonical polynomial text


class _ParseError(ValueError):
    pass


def parse_poly(text: str) -> Poly:
    """Parse canonical polynomial text (the output format of canonical())."""
    tokens = _tokenize(text)
    pos = 0
    result = _P_ZERO
    sign = 1
    pending_sign = False
    first = True
    while pos < len(tokens):
        tok = tokens[pos]
        if tok in ("+", "-"):
            if pending_sign:
                raise _ParseError("consecutive signs")
            sign = 1 if tok == "+" else -1
            pending_sign = True
            pos += 1
            continue
        term, pos = _parse_term(tokens, pos)
        result = result + (term if sign == 1 else -term)
        sign = 1
        pending_sign = False
        first = False
    if first or pending_sign:
        raise _ParseError("empty or dangling polynomial text")
    return result


def _tokenize(text: str) -> list:
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*^()":
            out.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and (text[j].isdigit() or text[j] == "/"):
                j += 1
            out.append(text[i:j])
            i = j
        elif ch in "tyi":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            out.append(text[i:j])
            i = j
        else:
            raise _ParseError(f"unexpected character {ch!r}")
    return out


def _parse_rational(tokens, pos):
    neg = False
    while pos < len(tokens) and tokens[pos] in ("+", "-"):
        if tokens[pos] == "-":
            neg = not neg
        pos += 1
    tok = tokens[pos]
    if not tok[0].isdigit():
        raise _ParseError(f"expected rational, got {tok!r}")
    v = qify(tok)
    return (-v if neg else v), pos + 1


def _parse_factor(tokens, pos):
    tok = tokens[pos]
    if tok == "(":
        re_part, pos = _parse_rational(tokens, pos + 1)
        im_part = Q0
        if tokens[pos] in ("+", "-"):
            im_part, pos = _parse_rational(tokens, pos)
            if tokens[pos] != "*" or tokens[pos + 1] != "i":
                raise _ParseError("expected '*i' in complex coefficient")
            pos += 2
        if tokens[pos] != ")":
            raise _ParseError("unclosed coefficient")
        return Poly.const(GaussRat(re_part, im_part)), pos + 1
    if tok == "i":
        return Poly.const(GR_I), pos + 1
    if tok[0] in "ty" and len(tok) > 1:
        bank = Bank.T if tok[0] == "t" else Bank.Y
        index = int(tok[1:])
        exp = 1
        if pos + 2 < len(tokens) and tokens[pos + 1] == "^":
            exp = int(tokens[pos + 2])
            pos += 2
        return Poly.variable(bank, index) ** exp, pos + 1
    if tok[0].isdigit():
        v, pos = _parse_rational(tokens, pos)
        return Poly.const(GaussRat(v)), pos
    raise _ParseError(f"unexpected token {tok!r}")


def _parse_term(tokens, pos):
    term, pos = _parse_factor(tokens, pos)
    while pos < len(tokens) and tokens[pos] == "*":
        factor, pos = _parse_factor(tokens, pos + 1)
        term = term * factor
    return term, pos
