"""Shared test helpers: independent reference arithmetic and random matrices.

The reference polynomial arithmetic here deliberately uses a different data
structure (term dicts keyed by (degree, a-exponent)) and different code
paths from the library's series engine, so that comparisons between the two
are genuine cross-checks rather than tautologies.
"""

from __future__ import annotations

import random

from toroidal.snf import IntMatrix

# -- reference ring Z[a]/(a^2-1)[x] as term dicts ----------------------------
# keys are (x-degree, a-exponent in {0, 1}); values are int coefficients


def ref_const(c):
    return {(0, 0): c} if c else {}


def ref_monomial(c, deg, alpha=False):
    return {(deg, 1 if alpha else 0): c} if c else {}


def ref_add(a, b):
    out = dict(a)
    for key, v in b.items():
        out[key] = out.get(key, 0) + v
        if not out[key]:
            del out[key]
    return out


def ref_scale(a, c):
    return {k: c * v for k, v in a.items()} if c else {}


def ref_mul(a, b, max_degree):
    out = {}
    for (d1, e1), v1 in a.items():
        for (d2, e2), v2 in b.items():
            d = d1 + d2
            if d > max_degree:
                continue
            key = (d, (e1 + e2) % 2)  # a^2 = 1
            out[key] = out.get(key, 0) + v1 * v2
            if not out[key]:
                del out[key]
    return out


def ref_pow(a, e, max_degree):
    out = ref_const(1)
    for _ in range(e):
        out = ref_mul(out, a, max_degree)
    return out


def ref_geometric(a, max_degree):
    """Multiply by 1 + x^2 + x^4 + ... up to max_degree."""
    geom = {(2 * i, 0): 1 for i in range(max_degree // 2 + 1)}
    return ref_mul(a, geom, max_degree)


def ref_split(a, max_degree):
    f = [a.get((k, 0), 0) for k in range(max_degree + 1)]
    g = [a.get((k, 1), 0) for k in range(max_degree + 1)]
    return f, g


def ref_cyclotomic(p):
    """1 + (a x) + ... + (a x)^(p-1)."""
    out = {}
    for i in range(p):
        out[(i, i % 2)] = 1
    return out


def ref_epsilon_factor(p):
    """1 + e_p x^p with e_2 = a."""
    return ref_add(ref_const(1), ref_monomial(1, p, alpha=(p == 2)))


def ref_f_series(p, r, s, t, max_degree):
    out = ref_pow(ref_cyclotomic(p), r, max_degree)
    out = ref_mul(out, ref_pow(ref_epsilon_factor(p), s, max_degree), max_degree)
    one_plus_x = ref_add(ref_const(1), ref_monomial(1, 1))
    return ref_mul(out, ref_pow(one_plus_x, t, max_degree), max_degree)


def ref_torsion_coeffs(p, r, s, t, max_degree):
    """(f, g) split of the torsion series, via the reference arithmetic."""
    one_plus_x = ref_add(ref_const(1), ref_monomial(1, 1))
    bracket = ref_scale(
        ref_mul(ref_monomial(1, 2), ref_pow(one_plus_x, s, max_degree), max_degree),
        p**r,
    )
    bracket = ref_add(bracket, ref_monomial(-1, 2))
    bracket = ref_add(bracket, ref_const(1))
    w = ref_mul(
        ref_add(ref_const(1), ref_monomial(1, 1, alpha=True)),
        ref_pow(ref_epsilon_factor(p), s, max_degree),
        max_degree,
    )
    w = ref_mul(w, ref_pow(ref_cyclotomic(p), r, max_degree), max_degree)
    bracket = ref_add(bracket, ref_scale(w, -1))
    numerator = ref_mul(
        ref_mul(ref_monomial(1, 1), ref_pow(one_plus_x, t, max_degree), max_degree),
        bracket,
        max_degree,
    )
    return ref_split(ref_geometric(numerator, max_degree), max_degree)


# -- random unimodular matrices ----------------------------------------------


def random_unimodular(n: int, rng: random.Random, steps: int = 12):
    """(U, U^-1) built from elementary operations, both exact."""
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    inv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        kind = rng.randrange(3)
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if kind == 0 and i != j:
            c = rng.choice([-2, -1, 1, 2])
            # row_i += c * row_j on U; inverse column op on U^-1
            for k in range(n):
                u[i][k] += c * u[j][k]
            for k in range(n):
                inv[k][j] -= c * inv[k][i]
        elif kind == 1 and i != j:
            u[i], u[j] = u[j], u[i]
            for row in inv:
                row[i], row[j] = row[j], row[i]
        else:
            u[i] = [-v for v in u[i]]
            for row in inv:
                row[i] = -row[i]
    return IntMatrix.from_rows(u), IntMatrix.from_rows(inv)


def conjugate(A: IntMatrix, rng: random.Random) -> IntMatrix:
    u, inv = random_unimodular(A.rows, rng)
    assert u @ inv == IntMatrix.identity(A.rows)
    return u @ A @ inv
