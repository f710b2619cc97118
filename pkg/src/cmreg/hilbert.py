"""Hilbert series, dimension, degree, and Hilbert functions.

The Hilbert series of A/I is read off the lead-term ideal of a Groebner
basis: HS(t) = N(t) / (1-t)^n with N the numerator computed by a pivot
recursion on the monomial generators (split on the most frequent variable).
Dimension is the pole order at t = 1 and the degree (multiplicity) is the
value of the cancelled numerator there.

finite_length compares two ideals through the exact series identity: the
difference of their series is a polynomial exactly when the quotient
I_big/I_small has finite length, and then its coefficients are the graded
pieces.  No truncation is involved anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .groebner import Ideal
from .ring import mono_divides


def _minimalize(gens):
    """Minimal generating monomials: drop anything a kept one divides."""
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    kept = []
    for g in gens:
        if not any(mono_divides(h, g) for h in kept):
            kept.append(g)
    return kept


def _poly_add(a, b):
    n = max(len(a), len(b))
    return tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def _poly_shift(a, k):
    return (0,) * k + tuple(a)


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return tuple(out)


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _pairwise_coprime(gens):
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if any(x and y for x, y in zip(gens[i], gens[j])):
                return False
    return True


def _split(gens):
    """Children of the pivot recursion: (gens + (x), gens : x)."""
    counts = [0] * len(gens[0])
    for g in gens:
        for i, x in enumerate(g):
            if x:
                counts[i] += 1
    piv = max(range(len(counts)), key=lambda i: (counts[i], -i))
    xg = tuple(1 if i == piv else 0 for i in range(len(counts)))
    plus = tuple(_minimalize([xg] + [g for g in gens if g[piv] == 0]))
    colon = tuple(_minimalize(
        [tuple(x - 1 if i == piv and x else x for i, x in enumerate(g)) for g in gens]))
    return plus, colon


def monomial_numerator(lead_exps, nvars):
    """Numerator of HS of A/(monomial ideal) over (1-t)^nvars, as coefficients."""
    root = tuple(_minimalize(list(lead_exps)))
    memo = {}
    stack = [root]
    while stack:
        gens = stack[-1]
        if gens in memo:
            stack.pop()
            continue
        if not gens:
            memo[gens] = (1,)
            stack.pop()
            continue
        if _pairwise_coprime(gens):
            val = (1,)
            for g in gens:
                d = sum(g)
                val = _poly_mul(val, (1,) + (0,) * (d - 1) + (-1,)) if d else (0,)
            memo[gens] = _trim(val) if val != (0,) else ()
            stack.pop()
            continue
        plus, colon = _split(gens)
        pending = [c for c in (plus, colon) if c not in memo]
        if pending:
            stack.extend(pending)
            continue
        memo[gens] = _trim(_poly_add(memo[plus], _poly_shift(memo[colon], 1)))
        stack.pop()
    return memo[root]


def _divide_by_one_minus_t(coeffs):
    """Exact quotient by (1-t), or None if not divisible."""
    run = 0
    out = []
    for c in coeffs:
        run += c
        out.append(run)
    if run != 0:
        return None
    return _trim(out[:-1])


@dataclass(frozen=True)
class HilbertData:
    """Numerator coefficients of HS(A/I), Krull dimension, and multiplicity.

    dimension is -1 for the unit ideal (empty scheme).  degree is the
    normalized leading coefficient: for dimension 0 it is the length of A/I.
    """

    numerator: tuple
    dimension: int
    degree: int
    nvars: int


def hilbert_series(ideal):
    """HilbertData of A/I, cached on the ideal."""
    cached = ideal._cache.get("hilbert")
    if cached is not None:
        return cached
    gb = ideal.groebner()
    num = monomial_numerator(gb.leading_exps(), ideal.ring.nvars)
    data = _analyze(num, ideal.ring.nvars)
    ideal._cache["hilbert"] = data
    return data


def _analyze(num, nvars):
    if not num:
        return HilbertData(num, -1, 0, nvars)
    reduced = num
    cancelled = 0
    while cancelled < nvars:
        q = _divide_by_one_minus_t(reduced)
        if q is None:
            break
        reduced = q
        cancelled += 1
    dim = nvars - cancelled
    deg = sum(reduced)
    return HilbertData(num, dim, deg, nvars)


def dim_deg(ideal):
    """(Krull dimension of A/I, degree); dimension -1 flags the unit ideal."""
    data = hilbert_series(ideal)
    return data.dimension, data.degree


def hilbert_function(ideal, mu):
    """dim_k (A/I)_mu, exactly, via the numerator."""
    if mu < 0:
        return 0
    data = hilbert_series(ideal)
    n = data.nvars
    total = 0
    for k, c in enumerate(data.numerator):
        if k > mu:
            break
        if c:
            total += c * math.comb(mu - k + n - 1, n - 1)
    return total


def indeg(ideal):
    """Smallest degree of a nonzero element; +inf for the zero ideal."""
    gb = ideal.groebner()
    if not gb.polys:
        return math.inf
    return min(g.degree() for g in gb.polys)


@dataclass(frozen=True)
class FiniteLengthData:
    length: int
    top_degree: object  # int, or -inf for the zero quotient
    coefficients: tuple  # graded dimensions of I_big/I_small by degree


def finite_length(ideal_small, ideal_big):
    """Length data of I_big/I_small when it is finite; error otherwise.

    Requires I_small contained in I_big (checked on generators).  The graded
    dimensions are the coefficients of HS(A/I_small) - HS(A/I_big), which must
    be a polynomial; if it is not, the quotient has infinite length and a
    ValueError is raised.
    """
    if ideal_small.ring != ideal_big.ring:
        raise ValueError("ideals from different rings")
    if not ideal_big.contains_ideal(ideal_small):
        raise ValueError("finite_length requires I_small contained in I_big")
    n = ideal_small.ring.nvars
    ns = hilbert_series(ideal_small).numerator
    nb = hilbert_series(ideal_big).numerator
    diff = _trim(_poly_add(ns, tuple(-c for c in nb)))
    for _ in range(n):
        if not diff:
            break
        q = _divide_by_one_minus_t(diff)
        if q is None:
            raise ValueError("quotient is not finite length")
        diff = q
    coeffs = _trim(diff)
    if any(c < 0 for c in coeffs):
        raise ValueError("series difference has negative coefficients; containment is not proper")
    if not coeffs:
        return FiniteLengthData(0, -math.inf, ())
    return FiniteLengthData(sum(coeffs), len(coeffs) - 1, coeffs)
