"""Classification of integer matrices of prime order into lattice types.

Given a square integer matrix A with A^p = I, the induced Z/p-lattice has a
type (r, s, t) that the rest of the package consumes.  The multiplicities
are read off the periodic group cohomology of the lattice, realized as two
kernel/image quotients of the maps A - I and the norm I + A + ... + A^(p-1):
the odd-degree quotient counts ideal-class summands, the even-degree
quotient counts trivial summands, and the projective multiplicity follows
from the rank.  Two matrices with the same type are deliberately
indistinguishable here: everything downstream depends only on the type.
"""

from __future__ import annotations

from .cohomology import CohomologyTable, quotient_cohomology
from .errors import ConsistencyError
from .lattice import LatticeType, is_prime
from .snf import IntMatrix, cohomology_of_cochain_pair, rank_over_q


def verify_order(A: IntMatrix, p: int) -> bool:
    """Whether A^p is the identity (so A has order p, or order 1 if A = I)."""
    if not A.is_square():
        raise ValueError("representation matrix must be square")
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    return A ** p == IntMatrix.identity(A.rows)


def is_trivial_action(A: IntMatrix) -> bool:
    return A.is_square() and A == IntMatrix.identity(A.rows)


def norm_matrix(A: IntMatrix, p: int) -> IntMatrix:
    """I + A + A^2 + ... + A^(p-1)."""
    acc = IntMatrix.identity(A.rows)
    total = acc
    for _ in range(p - 1):
        acc = acc @ A
        total = total + acc
    return total


def classify(A: IntMatrix, p: int) -> LatticeType:
    """The lattice type (r, s, t) of the representation generated by A.

    r is the F_p-dimension of ker(N)/im(A - I) and t that of
    ker(A - I)/im(N), with N the norm matrix; both quotients are elementary
    abelian p-groups for any honest order-p matrix, and s is forced by the
    rank.  Anything else means the input failed the order check or the
    arithmetic is broken, and raises.
    """
    if not verify_order(A, p):
        raise ValueError(f"matrix does not satisfy A^{p} = I; not an order-{p} action")
    n = A.rows
    a_minus_one = A - IntMatrix.identity(n)
    norm = norm_matrix(A, p)
    odd = cohomology_of_cochain_pair(a_minus_one, norm)
    even = cohomology_of_cochain_pair(norm, a_minus_one)
    for label, group in (("odd", odd), ("even", even)):
        if not group.is_elementary_abelian(p):
            raise ConsistencyError(
                f"{label}-degree cohomology {group} of an order-{p} matrix is "
                f"not elementary abelian p-torsion"
            )
    r = len(odd.torsion)
    t = len(even.torsion)
    s, rem = divmod(n - r * (p - 1) - t, p)
    if rem or s < 0:
        raise ConsistencyError(
            f"rank bookkeeping failed: n={n}, r={r}, t={t} leave no valid s"
        )
    return LatticeType(p, r, s, t)


def cohomology_from_matrix(
    A: IntMatrix, p: int, max_degree: int | None = None
) -> CohomologyTable:
    """Cohomology table of the torus quotient defined by the matrix."""
    return quotient_cohomology(classify(A, p), max_degree)


def fixed_subspace_rank(A: IntMatrix) -> int:
    """dim over Q of the fixed subspace of A, i.e. the corank of A - I."""
    if not A.is_square():
        raise ValueError("matrix must be square")
    return A.rows - rank_over_q(A - IntMatrix.identity(A.rows))


# -- canonical representations -----------------------------------------------


def sign_matrix(n: int) -> IntMatrix:
    """-I, the direct sum of n sign representations (order 2)."""
    return -IntMatrix.identity(n)


def cyclic_permutation_matrix(m: int) -> IntMatrix:
    """The m-cycle permutation matrix e_i -> e_(i+1 mod m)."""
    if m < 1:
        raise ValueError("cycle length must be positive")
    return IntMatrix(
        m, m, [1 if i == (j + 1) % m else 0 for i in range(m) for j in range(m)]
    )


def cyclotomic_companion_matrix(p: int) -> IntMatrix:
    """Companion matrix of 1 + x + ... + x^(p-1); has order p and rank p-1."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    n = p - 1
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -1
    return IntMatrix.from_rows(rows)


def block_diag(*blocks: IntMatrix) -> IntMatrix:
    """Block-diagonal sum of square matrices."""
    if not blocks:
        return IntMatrix.zeros(0, 0)
    if any(not b.is_square() for b in blocks):
        raise ValueError("blocks must be square")
    n = sum(b.rows for b in blocks)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                rows[off + i][off + j] = b.entry(i, j)
        off += b.rows
    return IntMatrix.from_rows(rows)
