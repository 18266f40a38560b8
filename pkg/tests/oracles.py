"""Independent reference computations for the tests.

Nothing here imports the library's linear algebra: matrices are nested lists
of Fractions and elimination is the textbook dense algorithm.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

F0, F1 = Fraction(0), Fraction(1)


def rref(rows, ncols):
    """Dense reduced row-echelon form with zero rows removed."""
    m = [[Fraction(x) for x in r] for r in rows]
    out = []
    col = 0
    r = 0
    while r < len(m) and col < ncols:
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                c = m[i][col]
                m[i] = [a - c * b for a, b in zip(m[i], m[r])]
        r += 1
        col += 1
    out = [row for row in m[:r] if any(row)]
    return out


def nullspace(rows, ncols):
    red = rref(rows, ncols)
    pivots = [next(j for j, x in enumerate(row) if x != 0) for row in red]
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = [F0] * ncols
        v[f] = F1
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def rank(rows, ncols):
    return len(rref(rows, ncols))


def unit(n, i, j):
    m = [[F0] * n for _ in range(n)]
    m[i - 1][j - 1] = F1
    return m


def mat_mul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), F0) for j in range(n)] for i in range(n)]


def mat_add(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in r] for r in a]


def flat(m):
    return [x for r in m for x in r]


def unflat(v, n):
    return [list(v[i * n:(i + 1) * n]) for i in range(n)]


def sum_units(n, pairs):
    m = [[F0] * n for _ in range(n)]
    for i, j in pairs:
        m[i - 1][j - 1] += F1
    return m


def parse_support(n, text):
    """``"e11+e33"`` -> matrix; indices are single digits (n <= 9)."""
    m = [[F0] * n for _ in range(n)]
    for term in text.split("+"):
        term = term.strip()
        m[int(term[1]) - 1][int(term[2]) - 1] += F1
    return m


def canonical(matrices, n):
    """RREF of the flattened matrices: a canonical basis for their span."""
    return rref([flat(m) for m in matrices], n * n)


def commutant(n, w_basis, x_basis):
    """``{w in span(w_basis) : w x = x w}`` by brute force, returned canonically."""
    k = len(w_basis)
    eqs = []
    for x in x_basis:
        diffs = [flat(mat_add(mat_mul(w, x), mat_scale(-F1, mat_mul(x, w)))) for w in w_basis]
        for c in range(n * n):
            eqs.append([d[c] for d in diffs])
    sols = nullspace(eqs, k) if eqs else [[F1 if i == j else F0 for j in range(k)] for i in range(k)]
    elems = []
    for coeffs in sols:
        acc = [[F0] * n for _ in range(n)]
        for c, w in zip(coeffs, w_basis):
            acc = mat_add(acc, mat_scale(c, w))
        elems.append(acc)
    return canonical(elems, n)


def conjugation(pairs, x):
    """``sum x_i x y_i`` for matrices."""
    n = len(x)
    acc = [[F0] * n for _ in range(n)]
    for a, b in pairs:
        acc = mat_add(acc, mat_mul(mat_mul(a, x), b))
    return acc


def fixed_points(n, space, maps):
    """Elements of ``span(space)`` fixed by every ``map`` (matrix -> matrix functions)."""
    k = len(space)
    eqs = []
    for f in maps:
        diffs = [flat(mat_add(f(w), mat_scale(-F1, w))) for w in space]
        for c in range(n * n):
            eqs.append([d[c] for d in diffs])
    sols = nullspace(eqs, k)
    elems = []
    for coeffs in sols:
        acc = [[F0] * n for _ in range(n)]
        for c, w in zip(coeffs, space):
            acc = mat_add(acc, mat_scale(c, w))
        elems.append(acc)
    return canonical(elems, n)


def brute_subgroupoids(g):
    """All nonempty morphism subsets closed under composition, inverses and touched identities."""
    ids = list(g.ids())
    found = []
    for k in range(1, len(ids) + 1):
        for sub in combinations(ids, k):
            h = set(sub)
            ok = all(g.inv(s) in h for s in h)
            ok = ok and all(g.identity[g.dom(s)] in h and g.identity[g.cod(s)] in h for s in h)
            ok = ok and all(
                g.compose(s, t) in h for s in h for t in h if g.compose(s, t) is not None
            )
            if ok:
                found.append(frozenset(h))
    return found


def first_broken_triple(objects, morphisms, table):
    """Exhaustive associativity scan over a raw table; returns a triple or None."""
    for (s, t), st in table.items():
        for u in morphisms:
            if (t, u) not in table:
                continue
            lhs = table.get((st, u))
            rhs = table.get((s, table[(t, u)]))
            if lhs != rhs:
                return s, t, u
    return None
