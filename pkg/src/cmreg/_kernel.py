"""Packed-key computational kernel behind the Groebner and resolution layers.

Polynomials enter as {packed_key: coeff} dicts under a bound monomial order
(see ring.py): key addition is monomial multiplication and integer comparison
is the order comparison, so the hot loops touch only ints and dicts.  Free
modules use (component, packed_key) term keys with Schreyer-style component
comparison data supplied by the caller.

Everything here is internal; the public API wraps it in ring.py, groebner.py
and resolution.py.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

_DIV_THRESHOLDS = (1, 2, 4, 8)


class Context:
    """A bound order plus field, with divisibility-mask helpers."""

    __slots__ = ("bound", "field", "p", "n", "pack", "unpack")

    def __init__(self, bound, field):
        self.bound = bound
        self.field = field
        self.p = getattr(field, "p", None)
        self.n = bound.n
        self.pack = bound.pack
        self.unpack = bound.unpack

    def divmask(self, exps):
        m = 0
        bit = 1
        for x in exps:
            if x:
                m |= bit
                if x >= 2:
                    m |= bit << 1
                    if x >= 4:
                        m |= bit << 2
                        if x >= 8:
                            m |= bit << 3
            bit <<= 4
        return m

    def deg(self, key):
        return sum(self.unpack(key))


def to_packed(ctx, poly):
    pack = ctx.pack
    return {pack(e): c for e, c in poly.terms}


def from_packed(ctx, pdict, ring):
    unpack = ctx.unpack
    return ring.poly({unpack(k): c for k, c in pdict.items()})


class Reducer:
    """A monic reducer: lead data plus tail terms, ready for the NF loop."""

    __slots__ = ("index", "leadkey", "leadexps", "mask", "tail", "sugar")

    def __init__(self, index, leadkey, leadexps, mask, tail, sugar=0):
        self.index = index
        self.leadkey = leadkey
        self.leadexps = leadexps
        self.mask = mask
        self.tail = tail
        self.sugar = sugar

    @classmethod
    def from_packed(cls, ctx, pdict, index=0, sugar=None):
        if not pdict:
            raise ValueError("zero polynomial cannot reduce")
        leadkey = max(pdict)
        lc = pdict[leadkey]
        field = ctx.field
        if lc != field(1):
            inv = field.inv(lc)
            if ctx.p is not None:
                pdict = {k: c * inv % ctx.p for k, c in pdict.items()}
            else:
                pdict = {k: c * inv for k, c in pdict.items()}
        leadexps = ctx.unpack(leadkey)
        tail = tuple((k, c) for k, c in pdict.items() if k != leadkey)
        if sugar is None:
            sugar = max(sum(ctx.unpack(k)) for k in pdict)
        return cls(index, leadkey, leadexps, mask=ctx.divmask(leadexps), tail=tail, sugar=sugar)

def reducer_dict(red):
    """The reducer's full packed dict (monic lead plus tail)."""
    d = {red.leadkey: 1}
    for k, c in red.tail:
        d[k] = c
    if red.tail and isinstance(red.tail[0][1], Fraction):
        d[red.leadkey] = Fraction(1)
    return d


def _find_reducer(reducers, exps, mask):
    for r in reducers:
        if r.mask & ~mask:
            continue
        re = r.leadexps
        for a, b in zip(re, exps):
            if a > b:
                break
        else:
            return r
    return None


def normal_form(ctx, f, reducers, track=False):
    """Full normal form of packed f against monic reducers.

    Returns (remainder, quotients); quotients maps reducer.index to a packed
    quotient dict with f == sum(q * reducer) + remainder.  The highest term is
    rewritten first and the first reducer in list order wins, so the result is
    deterministic in the given reducer order.
    """
    p = ctx.p
    unpack = ctx.unpack
    divmask = ctx.divmask
    h = dict(f)
    heap = [-k for k in h]
    heapq.heapify(heap)
    rem = {}
    quots = {} if track else None
    pop = heapq.heappop
    push = heapq.heappush
    while heap:
        k = -pop(heap)
        c = h.pop(k, None)
        if c is None:
            continue
        exps = unpack(k)
        red = _find_reducer(reducers, exps, divmask(exps))
        if red is None:
            rem[k] = c
            continue
        shift = k - red.leadkey
        if track:
            qd = quots.setdefault(red.index, {})
            prev = qd.get(shift)
            qd[shift] = c if prev is None else (prev + c) % p if p is not None else prev + c
        if p is not None:
            for tk, tc in red.tail:
                nk = tk + shift
                prev = h.get(nk)
                if prev is None:
                    v = -c * tc % p
                    if v:
                        h[nk] = v
                        push(heap, -nk)
                else:
                    v = (prev - c * tc) % p
                    if v:
                        h[nk] = v
                    else:
                        del h[nk]
        else:
            for tk, tc in red.tail:
                nk = tk + shift
                prev = h.get(nk)
                if prev is None:
                    v = -c * tc
                    if v:
                        h[nk] = v
                        push(heap, -nk)
                else:
                    v = prev - c * tc
                    if v:
                        h[nk] = v
                    else:
                        del h[nk]
    return rem, quots


def _monic(ctx, pdict):
    leadkey = max(pdict)
    lc = pdict[leadkey]
    if lc == ctx.field(1):
        return pdict
    inv = ctx.field.inv(lc)
    if ctx.p is not None:
        return {k: c * inv % ctx.p for k, c in pdict.items()}
    return {k: c * inv for k, c in pdict.items()}


def interreduce(ctx, pdicts):
    """Mutually reduce a list of packed polys; returns monic survivors."""
    polys = [_monic(ctx, dict(d)) for d in pdicts if d]
    changed = True
    while changed:
        changed = False
        for i in range(len(polys)):
            if polys[i] is None:
                continue
            reducers = [Reducer.from_packed(ctx, polys[j], index=j)
                        for j in range(len(polys)) if j != i and polys[j] is not None]
            if not reducers:
                continue
            rem, _ = normal_form(ctx, polys[i], reducers)
            if rem != polys[i]:
                changed = True
                polys[i] = _monic(ctx, rem) if rem else None
    return [d for d in polys if d is not None]


def _mono_lcm_exps(a, b):
    return tuple(x if x >= y else y for x, y in zip(a, b))


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _spair(gi, gj, lcmkey):
    h = {}
    si = lcmkey - gi.leadkey
    for k, c in gi.tail:
        h[k + si] = c
    sj = lcmkey - gj.leadkey
    for k, c in gj.tail:
        nk = k + sj
        prev = h.get(nk)
        if prev is None:
            h[nk] = -c
        else:
            v = prev - c
            if v:
                h[nk] = v
            else:
                del h[nk]
    return h


def buchberger(ctx, pdicts, max_pairs=2_000_000):
    """Reduced Groebner basis of the ideal generated by packed polys.

    Uses Gebauer-Moeller pair elimination, normal (min lcm degree) selection
    with sugar tiebreak, and a final minimalize-and-interreduce pass.  Returns
    (basis, stats) with the basis monic and sorted descending by lead.
    """
    field = ctx.field
    p = ctx.p
    stats = {"pairs_processed": 0, "zero_reductions": 0}
    start = interreduce(ctx, pdicts)
    if not start:
        return [], stats
    start.sort(key=max)
    if any(max(d) == 0 for d in start):
        one = 1 if p is not None else Fraction(1)
        return [{0: one}], stats

    G = []
    pairs = {}

    def update(newred):
        # Gebauer-Moeller update of the pair set for a newly appended element.
        t = newred.index
        lmf = newred.leadexps
        lme = [g.leadexps for g in G]
        drop = []
        for (i, j), data in pairs.items():
            gam = data[3]
            if (_divides(lmf, gam) and gam != _mono_lcm_exps(lme[i], lmf)
                    and gam != _mono_lcm_exps(lme[j], lmf)):
                drop.append((i, j))
        for ij in drop:
            del pairs[ij]
        groups = {}
        for i in range(t):
            gam = _mono_lcm_exps(lme[i], lmf)
            groups.setdefault(gam, []).append(i)
        kept = []
        for gam in sorted(groups, key=lambda g: (sum(g), ctx.pack(g))):
            if any(_divides(k, gam) for k in kept):
                continue
            kept.append(gam)
            # Product criterion: a coprime member retires the whole lcm class.
            if any(tuple(a + b for a, b in zip(lme[i], lmf)) == gam for i in groups[gam]):
                continue
            i = groups[gam][0]
            sug = max(G[i].sugar + sum(gam) - sum(lme[i]), newred.sugar + sum(gam) - sum(lmf))
            pairs[(i, t)] = (sum(gam), sug, ctx.pack(gam), gam)

    for d in start:
        red = Reducer.from_packed(ctx, d, index=len(G))
        G.append(red)
        update(red)

    while pairs:
        (i, j) = min(pairs, key=lambda ij: (pairs[ij][0], pairs[ij][1], pairs[ij][2], ij))
        deg, sug, lcmkey, gam = pairs.pop((i, j))
        stats["pairs_processed"] += 1
        if stats["pairs_processed"] > max_pairs:
            raise RuntimeError("Groebner basis computation exceeded the pair budget")
        s = _spair(G[i], G[j], lcmkey)
        rem, _ = normal_form(ctx, s, G)
        if not rem:
            stats["zero_reductions"] += 1
            continue
        red = Reducer.from_packed(ctx, _monic(ctx, rem), index=len(G), sugar=sug)
        G.append(red)
        update(red)

    # Minimalize leads, then one tail-reduction pass gives the reduced basis.
    order_idx = sorted(range(len(G)), key=lambda i: G[i].leadkey)
    kept = []
    for i in order_idx:
        if not any(_divides(G[j].leadexps, G[i].leadexps) for j in kept):
            kept.append(i)
    final = []
    for i in kept:
        others = [G[j] for j in kept if j != i]
        rem, _ = normal_form(ctx, reducer_dict(G[i]), others)
        final.append(_monic(ctx, rem))
    final.sort(key=max, reverse=True)
    stats["basis_size"] = len(final)
    return final, stats


# --- free modules with Schreyer comparison ----------------------------------

class ModBasis:
    """Comparison data for a free module basis over a ring Context.

    imgkeys[c] is the packed ring key of the basis element's composite image,
    chains[c] the position chain used as tiebreak (smaller chain means larger
    module monomial), degs[c] the internal degree of the basis element.
    """

    __slots__ = ("imgkeys", "chains", "degs")

    def __init__(self, imgkeys, chains, degs):
        self.imgkeys = imgkeys
        self.chains = chains
        self.degs = degs

    @property
    def rank(self):
        return len(self.imgkeys)

    def sortkey(self, term):
        c, k = term
        return (-(k + self.imgkeys[c]), self.chains[c])


def mod_lead(basis, el):
    """Lead term (comp, key) of a packed module element under the basis order."""
    return min(el, key=basis.sortkey)


class ModReducer:
    __slots__ = ("index", "comp", "leadkey", "leadexps", "mask", "tail")

    def __init__(self, ctx, index, el, lead):
        self.index = index
        self.comp, self.leadkey = lead
        self.leadexps = ctx.unpack(self.leadkey)
        self.mask = ctx.divmask(self.leadexps)
        self.tail = tuple((t, c) for t, c in el.items() if t != lead)


def mod_normal_form(ctx, basis, f, reducers_by_comp, track=False):
    """Full normal form in a free module with Schreyer comparison.

    f maps (comp, key) to coeff; reducers are monic ModReducers grouped by
    lead component.  Returns (remainder, quotients) with quotients keyed by
    reducer index holding packed ring-polynomial factors.
    """
    p = ctx.p
    unpack = ctx.unpack
    divmask = ctx.divmask
    imgkeys = basis.imgkeys
    chains = basis.chains
    h = dict(f)
    heap = [(-(k + imgkeys[c]), chains[c], c, k) for (c, k) in h]
    heapq.heapify(heap)
    rem = {}
    quots = {} if track else None
    pop = heapq.heappop
    push = heapq.heappush
    while heap:
        _, _, c, k = pop(heap)
        cc = h.pop((c, k), None)
        if cc is None:
            continue
        exps = unpack(k)
        red = _find_reducer(reducers_by_comp.get(c, ()), exps, divmask(exps))
        if red is None:
            rem[(c, k)] = cc
            continue
        shift = k - red.leadkey
        if track:
            qd = quots.setdefault(red.index, {})
            prev = qd.get(shift)
            qd[shift] = cc if prev is None else (prev + cc) % p if p is not None else prev + cc
        if p is not None:
            for (tc_comp, tk), tcoef in red.tail:
                nt = (tc_comp, tk + shift)
                prev = h.get(nt)
                if prev is None:
                    v = -cc * tcoef % p
                    if v:
                        h[nt] = v
                        push(heap, (-(nt[1] + imgkeys[tc_comp]), chains[tc_comp], tc_comp, nt[1]))
                else:
                    v = (prev - cc * tcoef) % p
                    if v:
                        h[nt] = v
                    else:
                        del h[nt]
        else:
            for (tc_comp, tk), tcoef in red.tail:
                nt = (tc_comp, tk + shift)
                prev = h.get(nt)
                if prev is None:
                    v = -cc * tcoef
                    if v:
                        h[nt] = v
                        push(heap, (-(nt[1] + imgkeys[tc_comp]), chains[tc_comp], tc_comp, nt[1]))
                else:
                    v = prev - cc * tcoef
                    if v:
                        h[nt] = v
                    else:
                        del h[nt]
    return rem, quots


# --- packed polynomial helpers (used by resolution minimization) ------------

def pdict_add_scaled(ctx, target, scale, other):
    """target += scale * other on packed dicts; scale is a field element."""
    p = ctx.p
    if p is not None:
        for k, c in other.items():
            prev = target.get(k)
            v = (scale * c if prev is None else prev + scale * c) % p
            if v:
                target[k] = v
            else:
                target.pop(k, None)
    else:
        for k, c in other.items():
            prev = target.get(k)
            v = scale * c if prev is None else prev + scale * c
            if v:
                target[k] = v
            else:
                target.pop(k, None)
    return target


def pdict_mul(ctx, a, b):
    """Product of packed dicts (key addition is monomial multiplication)."""
    p = ctx.p
    out = {}
    if p is not None:
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                k = k1 + k2
                prev = out.get(k)
                v = (c1 * c2 if prev is None else prev + c1 * c2) % p
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
    else:
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                k = k1 + k2
                prev = out.get(k)
                v = c1 * c2 if prev is None else prev + c1 * c2
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
    return out


def pdict_scale(ctx, a, scale):
    p = ctx.p
    if p is not None:
        return {k: c * scale % p for k, c in a.items() if c * scale % p}
    out = {}
    for k, c in a.items():
        v = c * scale
        if v:
            out[k] = v
    return out
