"""Independent x-variable oracles for the symmetric-function tests.

Small dict-based polynomials in x_1..x_n with Fraction coefficients, kept
deliberately separate from the package's own ring so the comparisons are a
genuine second route: Schur functions by tableau enumeration, Q-functions by
their classical generating function and two-row Pfaffian recursion.
"""

from fractions import Fraction
from itertools import product

# xpoly: dict mapping exponent tuples (one slot per variable) to Fraction.


def xzero():
    return {}


def xconst(nvars, c):
    c = Fraction(c)
    return {(0,) * nvars: c} if c else {}


def xadd(a, b):
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def xmul(a, b):
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(i + j for i, j in zip(ma, mb))
            s = out.get(m, 0) + ca * cb
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def xscale(a, c):
    c = Fraction(c)
    return {m: v * c for m, v in a.items()} if c else {}


def xpow(a, n):
    out = xconst(len(next(iter(a))) if a else 0, 1)
    for _ in range(n):
        out = xmul(out, a)
    return out


def power_sum(nvars, k):
    """p_k = sum_i x_i^k."""
    out = {}
    for i in range(nvars):
        m = [0] * nvars
        m[i] = k
        out[tuple(m)] = Fraction(1)
    return out


def ssyt_schur(parts, nvars):
    """Schur polynomial by direct enumeration of semistandard tableaux."""
    parts = [p for p in parts if p > 0]
    if not parts:
        return xconst(nvars, 1)
    rows = len(parts)
    out = {}

    def fill(row, col, tableau):
        if row == rows:
            weight = [0] * nvars
            for r in tableau:
                for v in r:
                    weight[v] += 1
            key = tuple(weight)
            out[key] = out.get(key, Fraction(0)) + 1
            return
        if col == parts[row]:
            fill(row + 1, 0, tableau + [[]])
            return
        lo = tableau[row][col - 1] if col > 0 else 0
        if row > 0:
            lo = max(lo, tableau[row - 1][col] + 1)
        for v in range(lo, nvars):
            tableau[row].append(v)
            fill(row, col + 1, tableau)
            tableau[row].pop()

    fill(0, 0, [[]])
    return {m: c for m, c in out.items() if c}


def q_onerow(nvars, max_r):
    """[q_0, ..., q_max_r] from prod_i (1 + x_i z)/(1 - x_i z)."""
    series = [xconst(nvars, 1)] + [xzero() for _ in range(max_r)]
    for i in range(nvars):
        xi = power_sum(nvars, 1)
        xi = {m: c for m, c in xi.items() if m[i] == 1}
        # (1 + x z)/(1 - x z) = 1 + 2 sum_{m>=1} x^m z^m
        factor = [xconst(nvars, 1)]
        for m in range(1, max_r + 1):
            factor.append(xscale(xpow(xi, m), 2))
        new = [xzero() for _ in range(max_r + 1)]
        for a in range(max_r + 1):
            if not series[a]:
                continue
            for b in range(max_r + 1 - a):
                new[a + b] = xadd(new[a + b], xmul(series[a], factor[b]))
        series = new
    return series


def q_tworow(q, r, s):
    """Q_(r,s) = q_r q_s + 2 sum_{i>=1} (-1)^i q_{r+i} q_{s-i}."""
    total = xmul(q[r], q[s])
    for i in range(1, s + 1):
        term = xscale(xmul(q[r + i], q[s - i]), 2 * (-1) ** i)
        total = xadd(total, term)
    return total


def _pfaffian_x(entries, size):
    if size == 0:
        return {(): Fraction(1)}
    memo = {}

    def pf(mask):
        if mask == 0:
            return None  # marks the empty product
        if mask in memo:
            return memo[mask]
        i = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << i)
        total = xzero()
        sign = 1
        r = rest
        while r:
            j = (r & -r).bit_length() - 1
            r ^= 1 << j
            sub = pf(rest ^ (1 << j))
            term = entries[(i, j)] if sub is None else xmul(entries[(i, j)], sub)
            total = xadd(total, term if sign > 0 else xscale(term, -1))
            sign = -sign
        memo[mask] = total
        return total

    return pf((1 << size) - 1)


def macdonald_q(parts, nvars):
    """Classical Q_lambda(x) for a strict partition (trailing 0 allowed)."""
    parts = list(parts)
    if len(parts) % 2 == 1:
        parts.append(0)
    if not parts:
        return xconst(nvars, 1)
    q = q_onerow(nvars, max(parts) * 2 + 1)
    entries = {
        (i, j): q_tworow(q, parts[i], parts[j])
        for i in range(len(parts))
        for j in range(i + 1, len(parts))
    }
    return _pfaffian_x(entries, len(parts))


def miwa_substitute(poly, nvars, numerator=1):
    """Map a bank-T polynomial to x-variables via t_k = numerator * p_k / k."""
    out = xzero()
    for mono, coeff in poly.terms():
        if coeff.im:
            raise ValueError("complex coefficient under Miwa substitution")
        term = xconst(nvars, Fraction(str(coeff.re)))
        for code, e in mono:
            k = code >> 1
            pk = xscale(power_sum(nvars, k), Fraction(numerator, k))
            term = xmul(term, xpow(pk, e))
        out = xadd(out, term)
    return out
