"""Division-free Pfaffians and determinants over the polynomial ring.

The Pfaffian here is the combinatorial one: a sum over perfect matchings
with crossing signs, reading only the strict upper triangle.  No skew
symmetry is assumed of any ambient matrix; the Wick matrices this feeds on
are generally not skew below the diagonal.
"""

from __future__ import annotations

from math import comb

from .ring import GaussRat, Poly, qify


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly.const(x)


class UpperTriMatrix:
    """Ordered strict upper triangle of polynomial entries, 0-indexed."""

    __slots__ = ("size", "entries")

    def __init__(self, size: int, entries: dict):
        self.size = size
        self.entries = {}
        for (i, j), v in entries.items():
            if not (0 <= i < j < size):
                raise ValueError(f"entry ({i},{j}) outside the strict upper triangle")
            self.entries[(i, j)] = _as_poly(v)

    @staticmethod
    def from_rows(rows) -> "UpperTriMatrix":
        """Build from [[a01, a02, ...], [a12, ...], ...] row tails."""
        size = len(rows) + 1
        entries = {}
        for i, tail in enumerate(rows):
            if len(tail) != size - 1 - i:
                raise ValueError("ragged upper-triangle rows")
            for k, v in enumerate(tail):
                entries[(i, i + 1 + k)] = v
        return UpperTriMatrix(size, entries)

    def entry(self, i: int, j: int) -> Poly:
        if not (0 <= i < j < self.size):
            raise ValueError("entry() reads the strict upper triangle only")
        return self.entries.get((i, j), Poly.zero())

    def minor(self, keep) -> "UpperTriMatrix":
        """Sub-triangle on the kept indices, order preserved."""
        keep = sorted(keep)
        if any(not 0 <= k < self.size for k in keep):
            raise ValueError("minor index out of range")
        pos = {k: p for p, k in enumerate(keep)}
        entries = {}
        for a in range(len(keep)):
            for b in range(a + 1, len(keep)):
                v = self.entries.get((keep[a], keep[b]))
                if v is not None:
                    entries[(pos[keep[a]], pos[keep[b]])] = v
        return UpperTriMatrix(len(keep), entries)


class RectMatrix:
    """Dense m x k matrix of polynomial entries."""

    __slots__ = ("rows", "_ncols")

    def __init__(self, rows, ncols: int = 0):
        # ncols is only consulted for row-free matrices (0 x k shapes)
        rows = [tuple(_as_poly(v) for v in row) for row in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix rows")
        self.rows = tuple(rows)
        self._ncols = len(rows[0]) if rows else ncols

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    def entry(self, i: int, j: int) -> Poly:
        return self.rows[i][j]


def pfaffian(a: UpperTriMatrix) -> Poly:
    """Sum over perfect matchings with crossing signs; Pf(empty) = 1.

    Subset-memoized expansion along the lowest live index; consumes only
    i < j entries.
    """
    m = a.size
    if m % 2 == 1:
        raise ValueError("Pfaffian needs an even-sized matrix")
    if m == 0:
        return Poly.one()
    entries = a.entries
    memo = {0: Poly.one()}

    def pf(mask: int) -> Poly:
        cached = memo.get(mask)
        if cached is not None:
            return cached
        i = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << i)
        total = Poly.zero()
        sign = 1
        r = rest
        while r:
            j = (r & -r).bit_length() - 1
            r ^= 1 << j
            e = entries.get((i, j))
            if e is not None and not e.is_zero():
                term = e * pf(rest ^ (1 << j))
                total = total + (term if sign > 0 else -term)
            sign = -sign
        memo[mask] = total
        return total

    return pf((1 << m) - 1)


def determinant(m: RectMatrix) -> Poly:
    """Exact division-free determinant (memoized cofactor expansion)."""
    if m.nrows != m.ncols:
        raise ValueError("determinant needs a square matrix")
    n = m.nrows
    if n == 0:
        return Poly.one()
    rows = m.rows
    memo = {0: Poly.one()}

    def det(colmask: int) -> Poly:
        cached = memo.get(colmask)
        if cached is not None:
            return cached
        row = n - bin(colmask).count("1")
        total = Poly.zero()
        sign = 1
        r = colmask
        while r:
            j = (r & -r).bit_length() - 1
            r ^= 1 << j
            e = rows[row][j]
            if not e.is_zero():
                term = e * det(colmask ^ (1 << j))
                total = total + (term if sign > 0 else -term)
            sign = -sign
        memo[colmask] = total
        return total

    return det((1 << n) - 1)


def submatrix(w: RectMatrix, keep_rows, keep_cols) -> RectMatrix:
    """Keep the given rows and columns, order preserved."""
    keep_rows = sorted(keep_rows)
    keep_cols = sorted(keep_cols)
    if any(not 0 <= r < w.nrows for r in keep_rows):
        raise ValueError("row index out of range")
    if any(not 0 <= c < w.ncols for c in keep_cols):
        raise ValueError("column index out of range")
    return RectMatrix([[w.rows[r][c] for c in keep_cols] for r in keep_rows],
                      ncols=len(keep_cols))


def assemble_block(x: UpperTriMatrix, y: UpperTriMatrix, w: RectMatrix) -> UpperTriMatrix:
    """Upper triangle of [[X, W], [., Y]]; the mirrored -W^T is never stored."""
    m, k = x.size, y.size
    if (w.nrows, w.ncols) != (m, k):
        raise ValueError("W must be m x k for blocks of size m and k")
    entries = {}
    entries.update(x.entries)
    for (i, j), v in y.entries.items():
        entries[(m + i, m + j)] = v
    for i in range(m):
        for j in range(k):
            entries[(i, m + j)] = w.rows[i][j]
    return UpperTriMatrix(m + k, entries)


def _even_subsets(n: int):
    for mask in range(1 << n):
        if bin(mask).count("1") % 2 == 0:
            yield mask


def caianiello_expand(x: UpperTriMatrix, y: UpperTriMatrix, w: RectMatrix) -> Poly:
    """Block-Pfaffian expansion into Pfaffian-minor times determinant terms.

    Sum over even subsets I of the X indices and J of the Y indices with
    m - |I| = k - |J| of

        eps(I,J) * Pf(X(I,I)) * Pf(Y(J,J)) * det(W on complements),

    eps(I,J) = (-1)^(sum(I) + sum(J) + C(m,2) + C(k,2) + C(m-|I|,2)) with
    1-based index sums.  Equals pfaffian(assemble_block(X, Y, W)).
    """
    m, k = x.size, y.size
    if (m + k) % 2 == 1:
        raise ValueError("m + k must be even")
    if (w.nrows, w.ncols) != (m, k):
        raise ValueError("W must be m x k")
    base = comb(m, 2) + comb(k, 2)
    total = Poly.zero()
    for imask in _even_subsets(m):
        i_set = [i for i in range(m) if imask >> i & 1]
        rest_rows = [i for i in range(m) if not imask >> i & 1]
        r = m - len(i_set)
        if r > k:
            continue
        pf_x = pfaffian(x.minor(i_set))
        if pf_x.is_zero():
            continue
        for jmask in _even_subsets(k):
            j_set = [j for j in range(k) if jmask >> j & 1]
            if k - len(j_set) != r:
                continue
            pf_y = pfaffian(y.minor(j_set))
            if pf_y.is_zero():
                continue
            rest_cols = [j for j in range(k) if not jmask >> j & 1]
            d = determinant(submatrix(w, rest_rows, rest_cols))
            if d.is_zero():
                continue
            exponent = (
                sum(i + 1 for i in i_set) + sum(j + 1 for j in j_set) + base + comb(r, 2)
            )
            term = pf_x * pf_y * d
            total = total + (term if exponent % 2 == 0 else -term)
    return total


# ---------------------------------------------------------------------------
# Random exact-rational instances (for fuzzing the identities)


def random_rational(rng, max_num: int = 9, max_den: int = 9) -> GaussRat:
    return GaussRat(qify(f"{rng.randint(-max_num, max_num)}/{rng.randint(1, max_den)}"))


def random_upper_tri(rng, size: int, **kw) -> UpperTriMatrix:
    entries = {
        (i, j): Poly.const(random_rational(rng, **kw))
        for i in range(size)
        for j in range(i + 1, size)
    }
    return UpperTriMatrix(size, entries)


def random_rect(rng, nrows: int, ncols: int, **kw) -> RectMatrix:
    return RectMatrix(
        [[Poly.const(random_rational(rng, **kw)) for _ in range(ncols)] for _ in range(nrows)]
    )


def skew_extension(a: UpperTriMatrix) -> RectMatrix:
    """The full skew-symmetric matrix with a's upper triangle."""
    n = a.size
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i < j:
                row.append(a.entry(i, j))
            elif i > j:
                row.append(-a.entry(j, i))
            else:
                row.append(Poly.zero())
        rows.append(row)
    return RectMatrix(rows)
