"""Exact row-vector linear algebra in two flavors.

PackedGF2Backend stores a length-m row over GF(2) as an int with bit j =
column j, so row addition is XOR and elimination is branch-plus-XOR.
GenericBackend stores rows as tuples of scalar payloads over an arbitrary
FieldDescriptor.  Both expose the same operations; everything downstream is
written against that common surface.

All subspace bases are kept in reduced row echelon form: pivot columns
strictly increasing, pivot entries 1, zeros above and below each pivot.  The
RREF matrix is the unique canonical form, so equality of spans is equality
of row tuples.
"""

from __future__ import annotations


class PackedGF2Backend:
    """Rows are ints, bit j = column j; field is GF(2)."""

    packed = True

    def __init__(self, m: int):
        self.m = m

    def zero_row(self):
        return 0

    def unit_row(self, j: int):
        return 1 << j

    def is_zero(self, r) -> bool:
        return r == 0

    def row_from_payloads(self, seq):
        r = 0
        for j, c in enumerate(seq):
            if c & 1:
                r |= 1 << j
        return r

    def row_to_payloads(self, r):
        return tuple((r >> j) & 1 for j in range(self.m))

    def pivot(self, r) -> int:
        return (r & -r).bit_length() - 1

    def add(self, r1, r2):
        return r1 ^ r2

    def scale(self, c, r):
        return r if c & 1 else 0

    def dot(self, r1, r2):
        return (r1 & r2).bit_count() & 1

    def combine(self, coeffs, rows):
        acc = 0
        c = coeffs
        while c:
            low = c & -c
            acc ^= rows[low.bit_length() - 1]
            c ^= low
        return acc

    def rref(self, rows):
        piv = {}
        for r in rows:
            while r:
                c = (r & -r).bit_length() - 1
                other = piv.get(c)
                if other is None:
                    piv[c] = r
                    break
                r ^= other
        cols = sorted(piv)
        for i in range(len(cols) - 1, -1, -1):
            r = piv[cols[i]]
            for c2 in cols[i + 1 :]:
                if (r >> c2) & 1:
                    r ^= piv[c2]
            piv[cols[i]] = r
        return tuple(piv[c] for c in cols)

    def reduce_row(self, r, rref_rows):
        for row in rref_rows:
            c = (row & -row).bit_length() - 1
            if (r >> c) & 1:
                r ^= row
        return r

    def contains(self, rref_rows, r) -> bool:
        return self.reduce_row(r, rref_rows) == 0

    def nullspace(self, rref_rows):
        """RREF basis of {v : M v^T = 0} for an RREF matrix M."""
        m = self.m
        pivots = [(row & -row).bit_length() - 1 for row in rref_rows]
        pivot_set = set(pivots)
        out = []
        for f in range(m):
            if f in pivot_set:
                continue
            v = 1 << f
            for i, row in enumerate(rref_rows):
                if (row >> f) & 1:
                    v |= 1 << pivots[i]
            out.append(v)
        return self.rref(out)

    def left_nullspace(self, rows):
        """Coefficient rows w (width len(rows)) with w . rows = 0."""
        n = len(rows)
        aug = [rows[i] << n | (1 << i) for i in range(n)]
        # eliminate on the original m columns only
        piv = {}
        kept = []
        for a in aug:
            r = a
            while r >> n:
                c = ((r >> n) & -(r >> n)).bit_length() - 1
                other = piv.get(c)
                if other is None:
                    piv[c] = r
                    kept.append(r)
                    break
                r ^= other
            else:
                if r:
                    kept.append(r)  # pure coefficient row: a left-null vector
        mask = (1 << n) - 1
        out = [r & mask for r in kept if (r >> n) == 0]
        return PackedGF2Backend(n).rref(out)

    def solve_right(self, rows, b_entries):
        """One v with rows . v^T = b, or None if inconsistent."""
        m = self.m
        aug = []
        for i, r in enumerate(rows):
            aug.append(r | ((b_entries[i] & 1) << m))
        red = PackedGF2Backend(m + 1).rref(aug)
        v = 0
        for row in red:
            c = (row & -row).bit_length() - 1
            if c == m:
                return None
            if (row >> m) & 1:
                v |= 1 << c
        return v


class GenericBackend:
    """Rows are tuples of scalar payloads over a FieldDescriptor."""

    packed = False

    def __init__(self, field, m: int):
        self.field = field
        self.m = m

    def zero_row(self):
        z = self.field.zero()
        return (z,) * self.m

    def unit_row(self, j: int):
        z = self.field.zero()
        return tuple(self.field.one() if i == j else z for i in range(self.m))

    def is_zero(self, r) -> bool:
        f = self.field
        return all(f.is_zero(c) for c in r)

    def row_from_payloads(self, seq):
        return tuple(seq)

    def row_to_payloads(self, r):
        return tuple(r)

    def pivot(self, r) -> int:
        f = self.field
        for j, c in enumerate(r):
            if not f.is_zero(c):
                return j
        return -1

    def add(self, r1, r2):
        f = self.field
        return tuple(f.add(a, b) for a, b in zip(r1, r2))

    def scale(self, c, r):
        f = self.field
        if f.is_zero(c):
            return (f.zero(),) * len(r)
        return tuple(f.mul(c, a) for a in r)

    def _submul(self, target, c, row):
        f = self.field
        return tuple(f.sub(a, f.mul(c, b)) for a, b in zip(target, row))

    def dot(self, r1, r2):
        f = self.field
        acc = f.zero()
        for a, b in zip(r1, r2):
            if not (f.is_zero(a) or f.is_zero(b)):
                acc = f.add(acc, f.mul(a, b))
        return acc

    def combine(self, coeffs, rows):
        f = self.field
        acc = None
        for c, row in zip(coeffs, rows):
            if f.is_zero(c):
                continue
            part = self.scale(c, row)
            acc = part if acc is None else self.add(acc, part)
        if acc is None:
            width = len(rows[0]) if rows else self.m
            return (f.zero(),) * width
        return acc

    def rref(self, rows):
        if self.field.kind == "rational_function":
            return self._rref_fraction_free(rows)
        f = self.field
        piv = {}
        for r in rows:
            while True:
                j = self.pivot(r)
                if j < 0:
                    break
                other = piv.get(j)
                if other is None:
                    c = r[j]
                    if c != f.one():
                        r = self.scale(f.inv(c), r)
                    piv[j] = r
                    break
                r = self._submul(r, r[j], other)
        cols = sorted(piv)
        for i in range(len(cols) - 1, -1, -1):
            r = piv[cols[i]]
            for c2 in cols[i + 1 :]:
                if not f.is_zero(r[c2]):
                    r = self._submul(r, r[c2], piv[c2])
            piv[cols[i]] = r
        return tuple(piv[c] for c in cols)

    def clear_row_denominators(self, row):
        """Scale a fraction row to a polynomial row (same projective point)."""
        from . import mpoly

        p = self.field.p
        L = None
        for num, den in row:
            if num and not mpoly.is_one(den):
                if L is None:
                    L = den
                else:
                    L = mpoly.mul(L, mpoly.exact_div(den, mpoly.gcd(L, den, p), p), p)
        if L is None:
            return row
        one_den = mpoly.one(self.field.nvars)
        out = []
        for num, den in row:
            if not num:
                out.append((mpoly.ZERO, one_den))
            else:
                out.append((mpoly.mul(num, mpoly.exact_div(L, den, p), p), one_den))
        return tuple(out)

    def cleared_rows(self, rows):
        return tuple(self.clear_row_denominators(r) for r in rows)

    # one-division fraction-free Gauss-Jordan over GF(p)(t1..tk): clear
    # denominators once, cross-multiply and divide by the previous pivot
    # (exact), form canonical fractions only when emitting the rows
    def _rref_fraction_free(self, rows):
        from . import mpoly

        p = self.field.p
        mat = []
        for row in rows:
            cleared = self.clear_row_denominators(row)
            poly_row = [num for num, _ in cleared]
            if any(poly_row):
                mat.append(poly_row)
        if not mat:
            return ()
        n = len(mat)
        width = len(mat[0])
        prev = None
        pivot_cols = []
        r = 0
        for c in range(width):
            pivot_row = next((i for i in range(r, n) if mat[i][c]), None)
            if pivot_row is None:
                continue
            mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
            piv_row = mat[r]
            piv = piv_row[c]
            for i in range(n):
                if i == r:
                    continue
                row_i = mat[i]
                ric = row_i[c]
                if not ric:
                    if prev is not None:
                        new = [
                            mpoly.exact_div(mpoly.mul(piv, e, p), prev, p) if e else e
                            for e in row_i
                        ]
                    else:
                        new = [mpoly.mul(piv, e, p) if e else e for e in row_i]
                else:
                    new = []
                    for e, pe in zip(row_i, piv_row):
                        t = mpoly.sub(mpoly.mul(piv, e, p), mpoly.mul(ric, pe, p), p)
                        if t and prev is not None:
                            t = mpoly.exact_div(t, prev, p)
                        new.append(t)
                mat[i] = new
            prev = piv
            pivot_cols.append(c)
            r += 1
            if r == n:
                break
        zero = self.field.zero()
        out = []
        for k, c in enumerate(pivot_cols):
            pr = mat[k]
            pivot_poly = pr[c]
            out.append(
                tuple(mpoly.frac(e, pivot_poly, p) if e else zero for e in pr)
            )
        return tuple(out)

    def reduce_row(self, r, rref_rows):
        f = self.field
        for row in rref_rows:
            j = self.pivot(row)
            if not f.is_zero(r[j]):
                r = self._submul(r, r[j], row)
        return r

    def contains(self, rref_rows, r) -> bool:
        return self.is_zero(self.reduce_row(r, rref_rows))

    def nullspace(self, rref_rows):
        f = self.field
        m = self.m
        pivots = [self.pivot(row) for row in rref_rows]
        pivot_set = set(pivots)
        out = []
        for free in range(m):
            if free in pivot_set:
                continue
            v = [f.zero()] * m
            v[free] = f.one()
            for i, row in enumerate(rref_rows):
                v[pivots[i]] = f.neg(row[free])
            out.append(tuple(v))
        return self.rref(out)

    def left_nullspace(self, rows):
        n = len(rows)
        cols = len(rows[0]) if rows else 0
        transposed = [tuple(rows[i][j] for i in range(n)) for j in range(cols)]
        helper = GenericBackend(self.field, n)
        return helper.nullspace(helper.rref(transposed))

    def solve_right(self, rows, b_entries):
        f = self.field
        width = len(rows[0]) if rows else self.m
        helper = GenericBackend(f, width + 1)
        aug = [tuple(rows[i]) + (b_entries[i],) for i in range(len(rows))]
        red = helper.rref(aug)
        v = [f.zero()] * width
        for row in red:
            j = helper.pivot(row)
            if j == width:
                return None
            v[j] = row[width]
        return tuple(v)
