# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels; mirrors ``_pykernels`` exactly."""
from fractions import Fraction
from math import gcd


cdef list _integer_row(row):
    cdef object den = 1
    cdef object d
    for x in row:
        if x:
            d = x.denominator
            den = den * d // gcd(den, d)
    return [int(x * den) for x in row]


cdef list _primitive(list row):
    cdef object g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def echelon(rows, Py_ssize_t ncols):
    cdef list work = []
    cdef list ir, prow, row, pivots, out
    cdef Py_ssize_t rank = 0, nrows, c, i, p, k
    cdef object pv, f, g, a, b
    for r in rows:
        ir = _primitive(_integer_row(r))
        if any(ir):
            work.append(ir)
    pivots = []
    nrows = len(work)
    for c in range(ncols):
        if rank == nrows:
            break
        p = -1
        for i in range(rank, nrows):
            if (<list>work[i])[c]:
                p = i
                break
        if p < 0:
            continue
        work[rank], work[p] = work[p], work[rank]
        prow = <list>work[rank]
        pv = prow[c]
        for i in range(nrows):
            if i == rank:
                continue
            row = <list>work[i]
            f = row[c]
            if not f:
                continue
            g = gcd(pv, f)
            a = pv // g
            b = f // g
            work[i] = _primitive([a * row[k] - b * prow[k] for k in range(ncols)])
        pivots.append(c)
        rank += 1
    out = []
    for i in range(rank):
        row = <list>work[i]
        pv = row[pivots[i]]
        out.append([Fraction(x, pv) for x in row])
    return out, pivots


def word_product(tuple w1, tuple w2):
    cdef Py_ssize_t i = 0, j = 0, n1 = len(w1), n2 = len(w2)
    cdef long odd_left = 0, swaps = 0
    cdef tuple a, b
    cdef list out
    if n1 == 0:
        return w2, 1
    if n2 == 0:
        return w1, 1
    for f in w1:
        if (<tuple>f)[0] & 1:
            odd_left += 1
    out = []
    while i < n1 and j < n2:
        a = <tuple>w1[i]
        b = <tuple>w2[j]
        if a[0] < b[0] or (a[0] == b[0] and a[1] < b[1]):
            out.append(a)
            if a[0] & 1:
                odd_left -= 1
            i += 1
        elif b[0] < a[0] or b[1] < a[1]:
            out.append(b)
            if b[0] & 1:
                swaps += odd_left
            j += 1
        else:
            if a[0] & 1:
                return None
            out.append((a[0], a[1], a[2] + b[2]))
            i += 1
            j += 1
    if i < n1:
        out.extend(w1[i:])
    if j < n2:
        out.extend(w2[j:])
    return tuple(out), (-1 if swaps & 1 else 1)
