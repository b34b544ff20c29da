"""Shared helpers: random exact scalars and an independent elimination
oracle used to cross-check the production linear algebra."""

from fractions import Fraction

from liederiv.exactfield import FIELD_Q, GaussianRational


def rand_fraction(rng, lo=-9, hi=9, den=4):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def rand_gauss(rng, lo=-9, hi=9, den=4):
    return GaussianRational(rand_fraction(rng, lo, hi, den), rand_fraction(rng, lo, hi, den))


def rand_scalar(rng, field=FIELD_Q):
    return rand_fraction(rng) if field == FIELD_Q else rand_gauss(rng)


def naive_rank(rows):
    """Textbook forward elimination over exact scalars, kept independent
    of the production echelon code."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                factor = rows[r][col] / pv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def back_multiply(rows, vec):
    """Exact products row . vec for every row (the nullspace oracle)."""
    return [sum((a * b for a, b in zip(row, vec) if a and b), 0 * vec[0]) for row in rows]
