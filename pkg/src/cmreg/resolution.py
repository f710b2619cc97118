"""Minimal graded free resolutions, Betti tables, and regularity.

The resolution of A/I is built by iterated syzygies in the Schreyer order:
the reduced Groebner basis gives the first matrix, and at each level the
surviving S-pairs (after lead-divisibility pruning inside each component)
reduce to zero with tracked quotients, which are exactly the next level's
syzygies.  The result is then minimized over the field by cancelling
degree-zero unit entries with exact column operations.

Certification is part of the construction: compositions of consecutive
minimized matrices must vanish, no unit entries may remain, the length must
not exceed the number of variables, and the alternating sum of the Betti
numbers must reproduce the Hilbert numerator computed independently from
lead terms.  Any failure is a hard error, not a warning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _kernel, hilbert
from ._kernel import Context, ModBasis, ModReducer, mod_lead, mod_normal_form
from .groebner import Ideal
from .ring import GREVLEX, Polynomial

NEG_INF = float("-inf")


@dataclass(frozen=True)
class GradedMatrix:
    """A graded matrix between free modules, with sparse polynomial entries."""

    ring: object
    row_degrees: tuple
    col_degrees: tuple
    entries: dict  # (row, col) -> Polynomial

    def entry(self, r, c):
        e = self.entries.get((r, c))
        if e is None:
            return self.ring.zero
        return e

    def check_graded(self):
        for (r, c), p in self.entries.items():
            if p.is_zero():
                continue
            if not p.is_homogeneous() or p.degree() != self.col_degrees[c] - self.row_degrees[r]:
                raise AssertionError("matrix entry degree disagrees with the grading")

    def has_unit_entry(self):
        return any(not p.is_zero() and p.degree() == 0 for p in self.entries.values())


class BettiTable:
    """Graded Betti numbers beta_{i,j} of a module, with renderers."""

    def __init__(self, module_label, entries):
        self.module_label = module_label
        self.entries = {k: v for k, v in entries.items() if v}

    def beta(self, i, j):
        return self.entries.get((i, j), 0)

    def pdim(self):
        if not self.entries:
            return 0
        return max(i for i, _ in self.entries)

    def regularity(self):
        if not self.entries:
            return 0
        return max(j - i for i, j in self.entries)

    def total(self, i):
        return sum(b for (ii, _), b in self.entries.items() if ii == i)

    def to_json_obj(self):
        rows = [{"i": i, "j": j, "b": b}
                for (i, j), b in sorted(self.entries.items())]
        return {"module": self.module_label, "betti": rows}

    def to_text(self):
        if not self.entries:
            return "empty Betti table\n"
        imax = self.pdim()
        rmin = min(j - i for i, j in self.entries)
        rmax = max(j - i for i, j in self.entries)
        cols = list(range(imax + 1))
        totals = [self.total(i) for i in cols]
        grid = []
        for r in range(rmin, rmax + 1):
            grid.append([self.beta(i, i + r) for i in cols])
        width = max(len(str(v)) for v in totals + [b for row in grid for b in row]) + 2
        head_label = max(len(f"{r}:" ) for r in range(rmin, rmax + 1))
        head_label = max(head_label, len("total:"))
        lines = []
        lines.append(" " * head_label + "".join(str(i).rjust(width) for i in cols))
        lines.append("total:".ljust(head_label)
                     + "".join(str(t).rjust(width) for t in totals))
        for r, row in zip(range(rmin, rmax + 1), grid):
            cells = "".join((str(b) if b else ".").rjust(width) for b in row)
            lines.append(f"{r}:".ljust(head_label) + cells)
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __repr__(self):
        return f"BettiTable({self.module_label}, pdim={self.pdim()}, reg={self.regularity()})"


@dataclass
class Resolution:
    """A minimal graded free resolution of A/I with its Betti table."""

    ring: object
    matrices: list
    betti: BettiTable
    stats: dict


def _schreyer_levels(ctx, gb_packed, nvars):
    """Iterated Schreyer syzygies; returns (levels of module elements, metas)."""
    metas = [ModBasis([0], [()], [0])]
    current = []
    for d in sorted(gb_packed, key=max, reverse=True):
        current.append({(0, k): c for k, c in d.items()})
    levels = []
    while current:
        meta_prev = metas[-1]
        leads = [mod_lead(meta_prev, el) for el in current]
        levels.append(current)
        imgkeys, chains, degs = [], [], []
        for i, (c, k) in enumerate(leads):
            imgkeys.append(k + meta_prev.imgkeys[c])
            chains.append(meta_prev.chains[c] + (i,))
            degs.append(sum(ctx.unpack(k)) + meta_prev.degs[c])
        meta_new = ModBasis(imgkeys, chains, degs)
        metas.append(meta_new)
        current = _syzygies(ctx, meta_prev, meta_new, current, leads)
        current.sort(key=lambda el: meta_new.sortkey(mod_lead(meta_new, el)))
        if len(levels) > nvars + 5:
            raise RuntimeError("resolution exceeded the level budget before terminating")
    return levels, metas


def _syzygies(ctx, meta_prev, meta_new, elems, leads):
    field = ctx.field
    p = ctx.p
    by_comp = {}
    for i, (c, k) in enumerate(leads):
        by_comp.setdefault(c, []).append(i)
    reducers_by_comp = {}
    for i, el in enumerate(elems):
        c = leads[i][0]
        reducers_by_comp.setdefault(c, []).append(ModReducer(ctx, i, el, leads[i]))
    lead_exps = [ctx.unpack(k) for _, k in leads]
    out = []
    for c, idxs in sorted(by_comp.items()):
        for i in idxs:
            cands = []
            for j in idxs:
                if j <= i:
                    continue
                T = tuple(max(a, b) - a for a, b in zip(lead_exps[i], lead_exps[j]))
                cands.append((sum(T), T, j))
            cands.sort()
            kept = []
            for _, T, j in cands:
                if any(all(x <= y for x, y in zip(Tk, T)) for Tk, _ in kept):
                    continue
                kept.append((T, j))
            for T, j in kept:
                lcm_exps = tuple(a + b for a, b in zip(T, lead_exps[i]))
                lcmkey = ctx.pack(lcm_exps)
                si = lcmkey - leads[i][1]
                sj = lcmkey - leads[j][1]
                v = {}
                for (cc, kk), coef in elems[i].items():
                    v[(cc, kk + si)] = coef
                for (cc, kk), coef in elems[j].items():
                    t = (cc, kk + sj)
                    prev = v.get(t)
                    val = -coef if prev is None else (prev - coef) % p if p is not None else prev - coef
                    if val:
                        v[t] = val
                    else:
                        v.pop(t, None)
                rem, quots = mod_normal_form(ctx, meta_prev, v, reducers_by_comp, track=True)
                if rem:
                    raise AssertionError("S-pair of a Schreyer basis failed to reduce to zero")
                syz = {(i, si): field(1), (j, sj): field.neg(field(1))}
                for t, qd in quots.items():
                    for kk, coef in qd.items():
                        key = (t, kk)
                        prev = syz.get(key)
                        val = (field.neg(coef) if prev is None
                               else field.sub(prev, coef))
                        if val != 0:
                            syz[key] = val
                        else:
                            syz.pop(key, None)
                lead = mod_lead(meta_new, syz)
                if lead != (i, si):
                    raise AssertionError("Schreyer syzygy lead differs from its predicted value")
                lc = syz[lead]
                if lc != field(1):
                    inv = field.inv(lc)
                    syz = {t: field.mul(cf, inv) for t, cf in syz.items()}
                out.append(syz)
    return out


def _column_form(levels):
    """Per level: {col_id: {row_id: packed poly dict}}."""
    cols_by_level = {}
    for lvl, elems in enumerate(levels, start=1):
        cols = {}
        for ci, el in enumerate(elems):
            col = {}
            for (c, k), coef in el.items():
                col.setdefault(c, {})[k] = coef
            cols[ci] = col
        cols_by_level[lvl] = cols
    return cols_by_level


def _is_unit_entry(pd):
    return len(pd) == 1 and 0 in pd


def _minimize(ctx, cols_by_level, top_level):
    """Cancel unit entries with exact column operations; mutates in place."""
    field = ctx.field
    cancelled = 0
    while True:
        found = None
        for lvl in range(1, top_level + 1):
            cols = cols_by_level.get(lvl)
            if not cols:
                continue
            for ci in sorted(cols):
                for ri in sorted(cols[ci]):
                    if _is_unit_entry(cols[ci][ri]):
                        found = (lvl, ci, ri)
                        break
                if found:
                    break
            if found:
                break
        if found is None:
            return cancelled
        lvl, ci, ri = found
        cols = cols_by_level[lvl]
        pivot_col = cols.pop(ci)
        u = pivot_col[ri][0]
        uinv = field.inv(u)
        for cj, col in cols.items():
            v = col.get(ri)
            if v is None:
                continue
            factor = _kernel.pdict_scale(ctx, v, field.neg(uinv))
            for r2, pd in pivot_col.items():
                prod = _kernel.pdict_mul(ctx, factor, pd)
                tgt = col.setdefault(r2, {})
                _kernel.pdict_add_scaled(ctx, tgt, field(1), prod)
                if not tgt:
                    del col[r2]
        above = cols_by_level.get(lvl + 1)
        if above:
            for col in above.values():
                col.pop(ci, None)
        if lvl >= 2:
            cols_by_level[lvl - 1].pop(ri, None)
        cancelled += 1


def _compose_is_zero(ctx, lower_cols, upper_cols):
    """Whether M_l composed with M_{l+1} vanishes, on packed columns."""
    for col in upper_cols.values():
        acc = {}
        for s, pd in col.items():
            lower = lower_cols.get(s)
            if lower is None:
                if pd:
                    return False
                continue
            for r, pdl in lower.items():
                prod = _kernel.pdict_mul(ctx, pd, pdl)
                tgt = acc.setdefault(r, {})
                _kernel.pdict_add_scaled(ctx, tgt, ctx.field(1), prod)
                if not tgt:
                    del acc[r]
        if any(acc.values()):
            return False
    return True


def minimal_resolution(I):
    """The minimal graded free resolution of A/I, certified as it is built.

    Requires homogeneous generators and a proper ideal.  Cached on the ideal.
    """
    cached = I._cache.get("resolution")
    if cached is not None:
        return cached
    ring = I.ring
    if not I.is_homogeneous():
        raise ValueError("resolutions need homogeneous generators")
    gb = I.groebner(GREVLEX)
    if gb.polys and gb.polys[-1].degree() == 0:
        raise ValueError("the unit ideal has no minimal free resolution of A/I")
    if not gb.polys:
        res = Resolution(ring, [], BettiTable("A/I", {(0, 0): 1}),
                         {"levels": 0, "cancelled": 0})
        I._cache["resolution"] = res
        return res
    ctx = Context(GREVLEX.bind(ring.nvars), ring.field)
    gb_packed = [_kernel.to_packed(ctx, g) for g in gb.polys]
    levels, metas = _schreyer_levels(ctx, gb_packed, ring.nvars)
    cols_by_level = _column_form(levels)
    top = len(levels)
    cancelled = _minimize(ctx, cols_by_level, top)
    while top >= 1 and not cols_by_level.get(top):
        cols_by_level.pop(top, None)
        top -= 1

    live = {0: [0]}
    for lvl in range(1, top + 1):
        live[lvl] = sorted(cols_by_level[lvl])
    degs = {0: {0: 0}}
    for lvl in range(1, top + 1):
        degs[lvl] = {ci: metas[lvl].degs[ci] for ci in live[lvl]}

    matrices = []
    betti_entries = {(0, 0): 1}
    for lvl in range(1, top + 1):
        rows = live[lvl - 1]
        cols = live[lvl]
        rpos = {r: idx for idx, r in enumerate(rows)}
        cpos = {c: idx for idx, c in enumerate(cols)}
        entries = {}
        for ci in cols:
            for ri, pd in cols_by_level[lvl][ci].items():
                if ri not in rpos:
                    raise AssertionError("matrix entry on a cancelled row")
                poly = _kernel.from_packed(ctx, pd, ring)
                if not poly.is_zero():
                    entries[(rpos[ri], cpos[ci])] = poly
        row_degrees = tuple(degs[lvl - 1][r] for r in rows)
        col_degrees = tuple(degs[lvl][c] for c in cols)
        gm = GradedMatrix(ring, row_degrees, col_degrees, entries)
        gm.check_graded()
        if gm.has_unit_entry():
            raise AssertionError("minimized resolution still has a unit entry")
        matrices.append(gm)
        for d in col_degrees:
            betti_entries[(lvl, d)] = betti_entries.get((lvl, d), 0) + 1

    for lvl in range(1, top):
        if not _compose_is_zero(ctx, cols_by_level[lvl], cols_by_level[lvl + 1]):
            raise AssertionError("consecutive resolution matrices do not compose to zero")

    table = BettiTable("A/I", betti_entries)
    if table.pdim() > ring.nvars:
        raise AssertionError("resolution length exceeds the number of variables")
    _check_euler(I, table)
    res = Resolution(ring, matrices, table,
                     {"levels": len(levels), "cancelled": cancelled,
                      "nonminimal_ranks": [len(l) for l in levels]})
    I._cache["resolution"] = res
    return res


def _check_euler(I, table):
    """Alternating Betti sum must equal the Hilbert numerator from lead terms."""
    num = dict(enumerate(hilbert.hilbert_series(I).numerator))
    alt = {}
    for (i, j), b in table.entries.items():
        alt[j] = alt.get(j, 0) + (-1) ** i * b
    alt = {j: v for j, v in alt.items() if v}
    num = {j: v for j, v in num.items() if v}
    if alt != num:
        raise AssertionError("Betti numbers contradict the Hilbert numerator")


def betti(I):
    return minimal_resolution(I).betti


def regularity(I):
    """Castelnuovo-Mumford regularity of A/I."""
    return minimal_resolution(I).betti.regularity()


def regularity_ideal(I):
    """Regularity of the ideal itself: reg(I) = reg(A/I) + 1 for proper nonzero I."""
    table = minimal_resolution(I).betti
    if table.pdim() == 0:
        raise ValueError("regularity of the zero ideal is undefined here")
    return table.regularity() + 1


def pdim(I):
    """Projective dimension of A/I."""
    return minimal_resolution(I).betti.pdim()


def a0(I):
    """Top degree of the finite-length quotient I^sat / I; -inf when saturated."""
    from .idealops import saturate_irrelevant

    S = saturate_irrelevant(I)
    data = hilbert.finite_length(I, S)
    return data.top_degree


def a1_via_sequence(m, n, primed=False, char=32003):
    """a1 of the curve coordinate ring, read off the almost complete
    intersection through the twist exact sequence: a0(A/J) - d."""
    from .families import build_family

    fam = build_family(m, n, primed=primed, char=char)
    val = a0(fam.almost_complete_intersection)
    if val == NEG_INF:
        raise AssertionError("almost complete intersection is saturated; sequence degenerates")
    return val - fam.extra_degree
