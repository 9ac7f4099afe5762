"""Pure-Python versions of the hot kernels.

Must stay behaviourally identical to ``_ckernels.pyx``; the test-suite runs
both against each other.
"""
from fractions import Fraction
from math import gcd


def _integer_row(row):
    den = 1
    for x in row:
        if x:
            d = x.denominator
            den = den * d // gcd(den, d)
    return [int(x * den) for x in row]


def _primitive(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def echelon(rows, ncols):
    """Reduced row echelon form of a list of rational rows.

    Elimination runs fraction-free on primitive integer rows; only the final
    normalisation divides. Returns ``(rref_rows, pivots)`` with zero rows
    removed and entries as ``Fraction``.
    """
    work = []
    for r in rows:
        ir = _primitive(_integer_row(r))
        if any(ir):
            work.append(ir)
    pivots = []
    rank = 0
    nrows = len(work)
    for c in range(ncols):
        if rank == nrows:
            break
        p = -1
        for i in range(rank, nrows):
            if work[i][c]:
                p = i
                break
        if p < 0:
            continue
        work[rank], work[p] = work[p], work[rank]
        prow = work[rank]
        pv = prow[c]
        for i in range(nrows):
            if i == rank:
                continue
            row = work[i]
            f = row[c]
            if not f:
                continue
            g = gcd(pv, f)
            a = pv // g
            b = f // g
            work[i] = _primitive([a * x - b * y for x, y in zip(row, prow)])
        pivots.append(c)
        rank += 1
    out = []
    for i, c in enumerate(pivots):
        row = work[i]
        pv = row[c]
        out.append([Fraction(x, pv) for x in row])
    return out, pivots


def word_product(w1, w2):
    """Product of two canonical words with its Koszul sign.

    A word is a tuple of ``(degree, name, exponent)`` triples sorted by
    ``(degree, name)``. Returns ``(word, sign)`` or ``None`` when an odd
    generator would repeat.
    """
    if not w1:
        return w2, 1
    if not w2:
        return w1, 1
    out = []
    i = j = 0
    n1 = len(w1)
    n2 = len(w2)
    # odd factors of w1 not yet emitted; each odd factor of w2 passes them all
    odd_left = 0
    for f in w1:
        if f[0] & 1:
            odd_left += 1
    swaps = 0
    while i < n1 and j < n2:
        a = w1[i]
        b = w2[j]
        ka = (a[0], a[1])
        kb = (b[0], b[1])
        if ka < kb:
            out.append(a)
            if a[0] & 1:
                odd_left -= 1
            i += 1
        elif kb < ka:
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
