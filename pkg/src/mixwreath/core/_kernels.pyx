# cython: language_level=3, boundscheck=False, wraparound=False
# Compiled twin of _kernels_py.py.  Same contracts; the GF(p) branch keeps
# coefficients in C long longs, the rational branch stays on Python objects.
from fractions import Fraction


cdef object _inv(object a, long long p):
    if p:
        return pow(a, -1, p)
    r = Fraction(1) / a
    return r.numerator if r.denominator == 1 else r


cdef dict _reduce_modp(dict vec, dict rows, long long p):
    cdef dict out = dict(vec)
    cdef long long a, r, x
    cdef object c, j
    cdef dict row
    hits = [c for c in vec if c in rows]
    for c in hits:
        a = out.pop(c, 0)
        if a == 0:
            continue
        row = <dict>rows[c]
        for j, r in row.items():
            if j == c:
                continue
            x = (<long long>out.get(j, 0) - a * r) % p
            if x < 0:
                x += p
            if x:
                out[j] = x
            else:
                out.pop(j, None)
    return out


cdef dict _reduce_qq(dict vec, dict rows):
    cdef dict out = dict(vec)
    cdef object c, j, a, r, x
    cdef dict row
    hits = [c for c in vec if c in rows]
    for c in hits:
        a = out.pop(c, 0)
        if not a:
            continue
        row = <dict>rows[c]
        for j, r in row.items():
            if j == c:
                continue
            x = out.get(j, 0) - a * r
            if x:
                out[j] = x
            else:
                out.pop(j, None)
    return out


def reduce_vector(dict vec, dict rows, long long p):
    if p:
        return _reduce_modp(vec, rows, p)
    return _reduce_qq(vec, rows)


def insert_row(dict vec, dict rows, long long p):
    cdef dict v = reduce_vector(vec, rows, p)
    cdef dict r
    cdef object c, j, x, a, y, inv
    cdef long long ai, xi, yi, invi
    if not v:
        return -1
    c = min(v)
    inv = _inv(v[c], p)
    if p:
        invi = inv
        v = {j: (<long long>x * invi) % p for j, x in v.items()}
    else:
        v = {j: x * inv for j, x in v.items()}
    v[c] = 1
    for r in rows.values():
        a = r.get(c)
        if not a:
            continue
        if p:
            ai = a
            for j, x in v.items():
                xi = x
                yi = (<long long>r.get(j, 0) - ai * xi) % p
                if yi < 0:
                    yi += p
                if yi:
                    r[j] = yi
                else:
                    del r[j]
        else:
            for j, x in v.items():
                y = r.get(j, 0) - a * x
                if y:
                    r[j] = y
                else:
                    del r[j]
    rows[c] = v
    return c


def echelonize(vectors, long long p):
    cdef dict rows = {}
    for vec in vectors:
        if vec:
            insert_row(vec, rows, p)
    return rows
