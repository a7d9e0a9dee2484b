# tests/oracles.py
# Brute-force reference computations that share no code with the library.

from fractions import Fraction
from itertools import combinations


def _eliminate(rows):
    rows = [[Fraction(x) for x in r] for r in rows]
    width = len(rows[0]) if rows else 0
    rank = 0
    for col in range(width):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rows, rank


def oracle_rank(rows):
    return _eliminate(rows)[1] if rows else 0


def oracle_consistent(a_rows, b):
    """Whether a·x = b has a solution."""
    if not a_rows:
        return all(x == 0 for x in b)
    return oracle_rank(a_rows) == oracle_rank([list(r) + [y] for r, y in zip(a_rows, b)])


def _bracket(structure, x, y):
    n = len(x)
    out = [Fraction(0)] * n
    for i in range(n):
        for j in range(n):
            if x[i] and y[j]:
                for k in range(n):
                    out[k] += x[i] * y[j] * structure[i][j][k]
    return out


def _apply(d, v):
    n = len(v)
    return [sum(d[r][c] * v[c] for c in range(n)) for r in range(n)]


def _unit(n, i):
    return [Fraction(1 if k == i else 0) for k in range(n)]


def leibniz_defect(structure, d):
    """D[ei,ej] − [Dei,ej] − [ei,Dej] for all i < j, concatenated; d is a list of rows."""
    n = len(structure)
    out = []
    for i, j in combinations(range(n), 2):
        ei, ej = _unit(n, i), _unit(n, j)
        lhs = _apply(d, _bracket(structure, ei, ej))
        a = _bracket(structure, _apply(d, ei), ej)
        b = _bracket(structure, ei, _apply(d, ej))
        out.extend(x - y - z for x, y, z in zip(lhs, a, b))
    return out


def _matrix_units(n):
    for a in range(n):
        for b in range(n):
            yield a, b, [[Fraction(1 if (r, c) == (a, b) else 0) for c in range(n)] for r in range(n)]


def der_dimension(structure):
    """n² minus the rank of the Leibniz map evaluated on matrix units."""
    n = len(structure)
    if n < 2:
        return n * n
    columns = [leibniz_defect(structure, e) for _, _, e in _matrix_units(n)]
    rows = [list(r) for r in zip(*columns)]
    return n * n - oracle_rank(rows)


def inner_dimension(structure):
    n = len(structure)
    return oracle_rank([[x for row in structure[i] for x in row] for i in range(n)])


def extension_derivation_exists(total_structure, inj, proj, k, d):
    """Whether some D̂ is a derivation of the total algebra with D̂·inj = inj·K and proj·D̂ = D·proj.

    Unknowns are the n² entries of D̂ in row-major order; all matrices are lists of rows.
    """
    n = len(total_structure)
    p = len(k)
    m = len(d)
    units = list(_matrix_units(n))
    rows, rhs = [], []

    # Leibniz is linear and homogeneous in D̂
    if n >= 2:
        columns = [leibniz_defect(total_structure, e) for _, _, e in units]
        for r in zip(*columns):
            rows.append(list(r))
            rhs.append(Fraction(0))

    # (D̂·inj)[r][a] = (inj·K)[r][a]
    for r in range(n):
        for a in range(p):
            row = [Fraction(0)] * (n * n)
            for c in range(n):
                row[r * n + c] += inj[c][a]
            rows.append(row)
            rhs.append(sum(inj[r][b] * k[b][a] for b in range(p)))

    # (proj·D̂)[i][c] = (D·proj)[i][c]
    for i in range(m):
        for c in range(n):
            row = [Fraction(0)] * (n * n)
            for r in range(n):
                row[r * n + c] += proj[i][r]
            rows.append(row)
            rhs.append(sum(d[i][j] * proj[j][c] for j in range(m)))

    return oracle_consistent(rows, rhs)
