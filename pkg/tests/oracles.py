"""Independent reference computations used by the tests.

Nothing in here imports the package's linear algebra; ranks are done with
plain Fraction Gaussian elimination and gcds of minors are brute force.
"""
import itertools
import math
from fractions import Fraction


def dense_rank(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    r = 0
    ncols = len(a[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def det(m):
    n = len(m)
    if n == 0:
        return 1
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        p = 1
        for i in range(n):
            p *= m[i][perm[i]]
        total += -p if inv % 2 else p
    return total


def determinantal_divisors(m):
    """d_k = gcd of all k x k minors, for k = 1..min(rows, cols)."""
    rows, cols = len(m), len(m[0]) if m else 0
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                g = math.gcd(g, det([[m[i][j] for j in ci] for i in ri]))
        out.append(g)
    return out


def poincare_counts(degrees, k_max):
    """Dimension of the free graded-commutative algebra in each degree <= k_max."""
    series = [0] * (k_max + 1)
    series[0] = 1
    for d in degrees:
        if d % 2:
            series = [series[i] + (series[i - d] if i >= d else 0) for i in range(k_max + 1)]
        else:
            new = list(series)
            for i in range(d, k_max + 1):
                new[i] += new[i - d]
            series = new
    return series


def necklace_count(n_gens, length):
    """Classical Witt formula for n generators all of equal even degree."""
    total = 0
    for d in range(1, length + 1):
        if length % d == 0:
            total += _mobius(d) * n_gens ** (length // d)
    return total // length


def _mobius(n):
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result
