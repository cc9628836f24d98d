# Pure-Python echelon kernels.  _kernels.pyx mirrors this file line for line;
# keep the two in sync.
#
# Rows are dicts col -> nonzero scalar.  A reduced echelon basis is a dict
# pivot -> row whose pivot entry is 1 and whose other pivots are absent.
# p == 0 selects exact rationals (int/Fraction), p > 0 selects GF(p).
from fractions import Fraction


def _inv(a, p):
    if p:
        return pow(a, -1, p)
    r = Fraction(1) / a
    return r.numerator if r.denominator == 1 else r


def reduce_vector(vec, rows, p):
    """Return ``vec`` reduced modulo the echelon rows (a new dict)."""
    out = dict(vec)
    hits = [c for c in vec if c in rows]
    for c in hits:
        a = out.pop(c, 0)
        if not a:
            continue
        for j, r in rows[c].items():
            if j == c:
                continue
            x = out.get(j, 0) - a * r
            if p:
                x %= p
            if x:
                out[j] = x
            else:
                out.pop(j, None)
    return out


def insert_row(vec, rows, p):
    """Add ``vec`` to the echelon basis in place; return the new pivot or -1."""
    v = reduce_vector(vec, rows, p)
    if not v:
        return -1
    c = min(v)
    inv = _inv(v[c], p)
    if p:
        v = {j: x * inv % p for j, x in v.items()}
    else:
        v = {j: x * inv for j, x in v.items()}
    v[c] = 1
    for r in rows.values():
        a = r.get(c)
        if not a:
            continue
        for j, x in v.items():
            y = r.get(j, 0) - a * x
            if p:
                y %= p
            if y:
                r[j] = y
            else:
                del r[j]
    rows[c] = v
    return c


def echelonize(vectors, p):
    """Reduced echelon basis (dict pivot -> row) of the span of ``vectors``."""
    rows = {}
    for vec in vectors:
        if vec:
            insert_row(vec, rows, p)
    return rows
