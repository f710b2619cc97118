"""General hyperplane sections of surface cones and the derived point counts.

A dimension-2 graded quotient A/I defines a curve-like projective scheme; a
general linear form cuts it down to a finite group of points Z.  This module
draws seeded random linear forms, performs the cut inside the hyperplane ring
(one variable eliminated by substitution), saturates, and extracts the two
numbers the regularity bound consumes: the degree of Z (Hilbert multiplicity
of the saturated section) and the initial degree of its ideal (the least
degree of a hypersurface of the hyperplane through Z).

Genericity is realized as randomization plus validation: the dimension must
drop by exactly one and a second, independently seeded form must reproduce
the same numeric invariants (in fact the whole Hilbert numerator); on
disagreement new seeds are drawn, with a bounded number of retries.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import hilbert
from .groebner import Ideal
from .idealops import saturate_irrelevant
from .ring import GREVLEX, PolyRing, Polynomial, transport


class GenericityFailure(RuntimeError):
    """Raised when repeated random draws fail the section validation."""


def random_linear_form(ring, seed):
    """A seeded degree-1 form with every coefficient nonzero.

    Over F_p the coefficients are uniform in [1, p-1] and p > 1000 is
    required; over the rationals they are integers in [1, 10^6].
    """
    p = getattr(ring.field, "p", None)
    if p is not None and p <= 1000:
        raise ValueError(f"coefficient field F_{p} too small for random sections (need p > 1000)")
    rng = random.Random(seed * 1_000_003 + ring.nvars)
    data = {}
    for i in range(ring.nvars):
        e = [0] * ring.nvars
        e[i] = 1
        if p is not None:
            c = rng.randrange(1, p)
        else:
            c = rng.randrange(1, 10 ** 6)
        data[tuple(e)] = ring.field(c)
    return Polynomial(ring, data)


def substitute_linear(I, l):
    """Image of I in the hyperplane ring A/(l), as an ideal in one fewer variable.

    Solves l for the last variable (possible since every coefficient is
    nonzero) and substitutes into each generator.
    """
    ring = I.ring
    n = ring.nvars
    if n < 2:
        raise ValueError("need at least two variables to take a hyperplane section")
    coeffs = [ring.field(0)] * n
    for e, c in l.terms:
        if sum(e) != 1:
            raise ValueError("section form must be linear")
        coeffs[e.index(1)] = c
    if coeffs[-1] == 0:
        raise ValueError("section form must involve the last variable")
    S = PolyRing(ring.names[:-1], ring.field, GREVLEX)
    scale = ring.field.neg(ring.field.inv(coeffs[-1]))
    repl_data = {}
    for i in range(n - 1):
        if coeffs[i] != 0:
            e = [0] * (n - 1)
            e[i] = 1
            repl_data[tuple(e)] = ring.field.mul(scale, coeffs[i])
    repl = Polynomial(S, repl_data)
    powers = {0: S.const(1), 1: repl}

    def power(k):
        got = powers.get(k)
        if got is None:
            got = power(k - 1) * repl
            powers[k] = got
        return got

    images = []
    for g in I.gens:
        acc = S.zero
        for e, c in g.terms:
            acc = acc + S.monomial(e[:-1], c) * power(e[-1])
        if not acc.is_zero():
            images.append(acc)
    return S, Ideal(S, images)


@dataclass
class SectionData:
    """One validated general section: the form, the saturated section ideal
    (in the hyperplane ring), its lift back to the ambient ring, and the two
    numeric invariants."""

    seed: int
    attempted_seeds: tuple
    linear_form: Polynomial
    hyperplane_ring: PolyRing
    section_ideal: Ideal
    lifted_ideal: Ideal
    deg_section: int
    indeg_section: int
    validation: dict = field(default_factory=dict)


def _section_invariants(I, l):
    """(hyperplane ring, saturated section, deg, indeg, numerator) for one form,
    or None when the cut is not generic (dimension fails to drop to 1)."""
    S, J = substitute_linear(I, l)
    dim, _ = hilbert.dim_deg(J)
    if dim != 1:
        return None
    Jsat = saturate_irrelevant(J)
    dim_s, deg = hilbert.dim_deg(Jsat)
    if dim_s != 1 or deg < 1:
        return None
    ideg = hilbert.indeg(Jsat)
    numer = hilbert.hilbert_series(Jsat).numerator
    return S, Jsat, deg, ideg, numer


def general_section(I, seed):
    """Cut Proj(A/I) (required dimension 2) by a validated general linear form.

    Validation per attempt: the substituted ideal has dimension 1, and a
    second independently seeded form reproduces (deg, indeg) and the whole
    Hilbert numerator of the saturated section.  Up to five attempts, then
    GenericityFailure listing every seed tried.
    """
    dim, _ = hilbert.dim_deg(I)
    if dim != 2:
        raise ValueError(f"general_section needs dim(A/I) = 2, got {dim}")
    ring = I.ring
    attempted = []
    notes = []
    for round_no in range(5):
        sa = seed + 104729 * round_no
        sb = sa + 52361
        la = random_linear_form(ring, sa)
        lb = random_linear_form(ring, sb)
        if la == lb:
            notes.append(f"seed collision between {sa} and {sb}; redrew")
            sb += 1
            lb = random_linear_form(ring, sb)
        attempted.extend([sa, sb])
        va = _section_invariants(I, la)
        vb = _section_invariants(I, lb)
        if va is None or vb is None:
            notes.append(f"round {round_no}: dimension drop failed "
                         f"(seeds {sa}, {sb})")
            continue
        Sa, Jsat_a, deg_a, ideg_a, num_a = va
        _, _, deg_b, ideg_b, num_b = vb
        if (deg_a, ideg_a, num_a) != (deg_b, ideg_b, num_b):
            notes.append(f"round {round_no}: invariants disagree "
                         f"({deg_a},{ideg_a}) vs ({deg_b},{ideg_b})")
            continue
        lift_map = list(range(ring.nvars - 1))
        lifted = Ideal(ring, [transport(g, ring, lift_map) for g in Jsat_a.gens] + [la])
        return SectionData(
            seed=sa, attempted_seeds=tuple(attempted), linear_form=la,
            hyperplane_ring=Sa, section_ideal=Jsat_a, lifted_ideal=lifted,
            deg_section=deg_a, indeg_section=ideg_a,
            validation={
                "agreeing_seeds": (sa, sb),
                "hilbert_numerator": list(num_a),
                "notes": list(notes),
            })
    raise GenericityFailure(
        f"no stable general section after 5 rounds; seeds tried: {attempted}; "
        f"notes: {notes}")


def thm11_rhs(degrees, m, deg_z, i_z):
    """The two-factor regularity bound from the generator degrees and the
    section invariants: (d1...dm - degZ + 1)(d1+...+d(m+1) - m - iZ) + iZ."""
    degrees = list(degrees)
    if degrees != sorted(degrees, reverse=True):
        raise ValueError("degrees must be sorted in decreasing order")
    if len(degrees) <= m:
        raise ValueError("need more generators than the codimension")
    if m < 1:
        raise ValueError("codimension must be at least 1")
    if deg_z < 1 or i_z < 1:
        raise ValueError("section invariants must be positive")
    prod = 1
    for d in degrees[:m]:
        prod *= d
    top = sum(degrees[: m + 1])
    return (prod - deg_z + 1) * (top - m - i_z) + i_z


def cor13_rhs(m, d, dim):
    """The closed-form bounds for ideals generated in degrees at most d in
    m+2 variables: the dim <= 1 bound and both dim-2 variants."""
    if d < 1:
        raise ValueError("need d >= 1")
    if dim not in (0, 1, 2):
        raise ValueError("dim must be 0, 1 or 2")
    dim1 = (m + 2) * (d - 1)
    body = (m + 2) * d ** m * (d - 1)
    abstract = (m + 1) * d ** m * (d - 1)
    return dim1, body, abstract
