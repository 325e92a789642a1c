"""Normal-form engine for the cyclotomic BMW algebra.

Elements are finite maps from basis indices (see basis.py) to exact ring
values.  The one primitive is lmul: left multiplication of a basis index
by a single generator token, memoized per tower level.  Everything else
(word normalization, products, the anti-involution, representations) is a
fold of lmul.

The rewriting follows the identity bank of the defining presentation:
the braid/tangle relations, the quadratic relation X^2 = 1 + dX - dLe,
the Y'-commutation family, the crossing-vs-winding exchange identities
(and their starred forms), and the e-sandwich collapses, organized by the
case analysis that proves the spanning theorem.  Correctness is certified
by the relation/dimension/trace test suites, not by the derivation.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .basis import (P_range, Token, ak_index, chain_index, desc_perm,
                    enumerate_basis, left_top, level, num_chains, perm_embed,
                    perm_id, perm_join, perm_len, perm_mul, perm_right_s,
                    perm_strip, perm_word, right_chain_word, right_top,
                    star_word, word_of, y_word)
from .linalg import UnitSolver
from .params import ParameterSet, check_admissible
from .ring import RingValue

Element = Dict[tuple, RingValue]


def _add(dst: Element, idx, c: RingValue) -> None:
    cur = dst.get(idx)
    new = c if cur is None else cur + c
    if new.is_zero():
        dst.pop(idx, None)
    else:
        dst[idx] = new


def _extend(dst: Element, src: Element, c: Optional[RingValue] = None) -> None:
    for idx, v in src.items():
        _add(dst, idx, v if c is None else v * c)


class OrderingError(NotImplementedError):
    """Chain reordering (needed only for products at n >= 4) is out of the
    implemented rewriting scope; see the package notes."""


class Engine:
    def __init__(self, n: int, k: int, params: ParameterSet,
                 require_admissible: bool = True,
                 weak_horizon: Optional[int] = None):
        if params.k != k:
            raise ValueError("parameter family has the wrong k")
        self.n = n
        self.k = k
        self.params = params
        self.P = P_range(k)
        self.Pmin, self.Pmax = self.P[0], self.P[-1]
        if require_admissible and params.ring.mode != "omega":
            rep = check_admissible(params, weak_horizon=weak_horizon or 2 * k)
            if not rep.admissible:
                raise ValueError(
                    "rewriting over non-admissible parameters is refused; "
                    "pass require_admissible=False to override")
        self._lmul_memo: Dict[tuple, Element] = {}
        self._star_memo: Dict[tuple, Element] = {}
        self._rsplit: Dict[int, tuple] = {}
        self._inprog: set = set()
        self._eYe_memo: Dict[tuple, list] = {}

    # -- scalars --------------------------------------------------------

    @property
    def one(self) -> RingValue:
        return self.params.one()

    @property
    def zero(self) -> RingValue:
        return self.params.zero()

    @property
    def delta(self) -> RingValue:
        return self.params.delta

    def unit_elem(self, l: int) -> Element:
        return {ak_index((0,) * l, perm_id(l)): self.one}

    # -- folds ----------------------------------------------------------

    def nf(self, l: int, word: Sequence[Token]) -> Element:
        return self.nf_onto(l, word, self.unit_elem(l))

    def nf_onto(self, l: int, word: Sequence[Token], elem: Element) -> Element:
        cur = elem
        for tok in reversed(list(word)):
            nxt: Element = {}
            for idx, c in cur.items():
                _extend(nxt, self.lmul(l, tok, idx), c)
            cur = nxt
        return cur

    # -- the primitive ----------------------------------------------------

    def lmul(self, l: int, tok: Token, idx) -> Element:
        key = (l, tok, idx)
        hit = self._lmul_memo.get(key)
        if hit is not None:
            return hit
        if key in self._inprog:
            raise RuntimeError(f"rewriting cycle at {key}")
        self._inprog.add(key)
        try:
            out = self._lmul(l, tok, idx)
        finally:
            self._inprog.discard(key)
        self._lmul_memo[key] = out
        return out

    def _lmul(self, l: int, tok: Token, idx) -> Element:
        kind = tok[0]
        if kind == "X" and tok[2] == -1:
            # X_m^{-1} = X_m - delta + delta e_m
            m = tok[1]
            out: Element = {}
            _extend(out, self.lmul(l, ("X", m, 1), idx))
            _add(out, idx, -self.delta)
            _extend(out, self.lmul(l, ("E", m), idx), self.delta)
            return out
        if kind == "Y":
            return self._lmul_y(l, tok[1], idx)
        m = tok[1]
        if not 1 <= m <= l - 1:
            raise ValueError(f"generator index {m} out of range at level {l}")
        if idx[0] == "c":
            return self._lmul_chain(l, tok, idx)
        return self._lmul_ak(l, tok, idx)

    # -- Y multiplications ------------------------------------------------

    def _lmul_y(self, l: int, e: int, idx) -> Element:
        if idx[0] == "a":
            c, w = idx[1], idx[2]
            out: Element = {}
            for coeff, c0 in self._window_shift(c[0] + e, 0, self.k - 1):
                _add(out, ak_index((c0,) + c[1:], w), coeff)
            return out
        (i, j, s), inner, right = idx[1], idx[2], idx[3]
        if i == 1:
            out = {}
            for coeff, s0 in self._window_shift(s + e, self.Pmin, self.Pmax):
                _add(out, chain_index((i, j, s0), inner, right), coeff)
            return out
        sub = self.lmul(l - 2, ("Y", e), inner)
        return self._reattach(l, (i, j, s), sub, right)

    def _window_shift(self, v: int, lo: int, hi: int):
        """Rewrite Y^v as a combination of Y^{v'} with lo <= v' <= hi using
        the order-k relation on Y (valid at position 1 only)."""
        if lo <= v <= hi:
            return [(self.one, v)]
        out = []
        if v > hi:
            # Y^v = sum_{i=0}^{k-1} q_i Y^{v-k+i}
            for i in range(self.k):
                for c2, v2 in self._window_shift(v - self.k + i, lo, hi):
                    out.append((self.params.qs[i] * c2, v2))
        else:
            # Y^v = -q_0^{-1} sum_{j=1}^{k} q_j Y^{v+j}
            for jj in range(1, self.k + 1):
                base = -(self.params.q0_inv * self.params.q_coeff(jj))
                for c2, v2 in self._window_shift(v + jj, lo, hi):
                    out.append((base * c2, v2))
        merged: Dict[int, RingValue] = {}
        for c2, v2 in out:
            merged[v2] = merged.get(v2, self.zero) + c2
        return [(c2, v2) for v2, c2 in merged.items() if not c2.is_zero()]

    # -- reattach / assemble ------------------------------------------------

    def _reattach(self, l: int, left, sub: Element, right) -> Element:
        out: Element = {}
        for ix, c in sub.items():
            _extend(out, self.assemble(l, left, ix, right), c)
        return out

    def assemble(self, l: int, left, inner_idx, right) -> Element:
        """Form the basis element left * inner * right^*, fixing chain
        exponent windows; raises OrderingError when chain reordering
        (an n >= 4 phenomenon) would be required."""
        i, j, s = left
        g, h, t = right
        if not (self.Pmin <= s <= self.Pmax):
            # peel surplus winding as a word at position i (i >= 2 here;
            # i = 1 windows are shifted by the cyclotomic relation upstream)
            if i == 1:
                out: Element = {}
                for coeff, s0 in self._window_shift(s, self.Pmin, self.Pmax):
                    _extend(out, self.assemble(l, (i, j, s0), inner_idx, right),
                            coeff)
                return out
            s0 = self.Pmax if s > self.Pmax else self.Pmin
            base = self.assemble(l, (i, j, s0), inner_idx, right)
            return self.nf_onto(l, y_word(i, s - s0), base)
        if not (self.Pmin <= t <= self.Pmax):
            raise AssertionError("right chain exponents are windowed upstream")
        if left_top(inner_idx) >= i or right_top(inner_idx) >= g:
            raise OrderingError(
                f"chain reordering needed at level {l} "
                f"(left {left}, inner tops {left_top(inner_idx)}/"
                f"{right_top(inner_idx)}, right {right})")
        return {chain_index((i, j, s), inner_idx, (g, h, t)): self.one}

    # -- chain cases --------------------------------------------------------

    def _lmul_chain(self, l: int, tok: Token, idx) -> Element:
        m = tok[1]
        (i, j, s), inner, right = idx[1], idx[2], idx[3]
        if m <= i - 2:
            sub = self.lmul(l - 2, tok, inner)
            return self._reattach(l, (i, j, s), sub, right)
        cases = (self._e_cases(l, m, (i, j, s)) if tok[0] == "E"
                 else self._x_cases(l, m, (i, j, s)))
        out: Element = {}
        for coeff, chain2, residue in cases:
            sub = self.nf_onto(l - 2, residue, {inner: self.one})
            _extend(out, self._reattach(l, chain2, sub, right), coeff)
        return out

    # each case function returns [(coeff, (i', j', s'), residue_word)]
    # with the residue acting on the inner part (level l-2 tokens only).

    def _e_cases(self, l: int, m: int, chain) -> list:
        i, j, s = chain
        L = l - 1
        if m == i - 1:
            # e_m alpha_{m+1,j,L}^s = alpha_{m,m,L}^0 (Xinv-run, Y_m'^{-s})
            res = [("X", a, -1) for a in range(j - 2, m - 1, -1)] \
                + y_word(m, -s)
            return [(self.one, (m, m, 0), res)]
        if m == i and i == j:
            # e_m y_m^s e_m .. e_L: sandwich collapse
            out = []
            for coeff, mono in self.eYe(m, s):
                out.append((coeff, (m, m, 0), self._mono_word(mono)))
            return out
        if m == i and i < j:
            # e_m y_m^s X_m (X-run) e-run: crossing absorbed by eype-III
            out = []
            xinv = [("X", a, -1) for a in range(j - 2, m - 1, -1)]
            for coeff, r, mono in self.eypeIII(m, s):
                out.append((coeff, (m, m, 0),
                            xinv + y_word(m, r) + self._mono_word(mono)))
            return out
        # m > i
        if m < j:
            res = (y_word(i, s) + [("X", a, 1) for a in range(i, m - 1)]
                   + [("X", a, -1) for a in range(j - 2, m - 1, -1)]
                   + [("E", m - 1)])
            return [(self.one, (m, m, 0), res)]
        if m == j:
            res = y_word(i, s) + [("X", a, 1) for a in range(i, m - 1)]
            return [(self.params.lam_inv, (m, m, 0), res)]
        # m > j: e-run contains e_{m-1} e_m; eee eats them
        res = (y_word(i, s) + [("X", a, 1) for a in range(i, j)]
               + [("E", a) for a in range(j, m - 1)])
        return [(self.one, (m, m, 0), res)]

    def _x_cases(self, l: int, m: int, chain) -> list:
        i, j, s = chain
        L = l - 1
        if m == i - 1:
            return self._case_A(l, m, j, s)
        if m == i and i == j:
            # X_m y_m^s e_m .. e_L
            out = []
            for coeff, r, mono in self.eypeII(m, s):
                out.append((coeff, (m, m, r), self._mono_word(mono)))
            return out
        if m == i and i < j:
            return self._case_C(l, m, j, s)
        # m > i
        if m < j:
            return [(self.one, (i, j, s), [("X", m - 1, 1)])]
        if m == j:
            return [(self.one, (i, m - 1, s), [])]
        # m > j
        out = [(self.delta, (i, j, s), [])]
        res2 = (y_word(i, s) + [("X", a, 1) for a in range(i, j)]
                + [("E", a) for a in range(j, m - 1)])
        out.append((-self.delta, (m, m, 0), res2))
        if m - 1 == j:
            out.append((self.one, (i, m, s), []))
        else:
            out.append((self.one, (i, j, s), [("X", m - 2, -1)]))
        return out

    def _case_A(self, l: int, m: int, j: int, s: int) -> list:
        """X_m alpha_{m+1,j,L}^s via the crossing/winding exchange."""
        out = [(self.one, (m, j, s), [])]
        if s >= 0:
            for sp in range(1, s + 1):
                out.append((self.delta, (m + 1, j, sp), y_word(m, s - sp)))
                xinv = [("X", a, -1) for a in range(j - 2, m - 1, -1)]
                out.append((-self.delta, (m, m, s - sp),
                            xinv + y_word(m, -sp)))
        else:
            r = -s
            for sp in range(1, r + 1):
                out.append((-self.delta, (m + 1, j, sp - r), y_word(m, -sp)))
                xinv = [("X", a, -1) for a in range(j - 2, m - 1, -1)]
                out.append((self.delta, (m, m, -sp),
                            xinv + y_word(m, r - sp)))
        return out

    def _case_C(self, l: int, m: int, j: int, s: int) -> list:
        """X_m y_m^s X_m (X-run) e-run, m = i < j."""
        if s == 0:
            # X_m^2 = 1 + delta X_m - delta lam e_m on the remaining chain
            out = [(self.one, (m + 1, j, 0), []), (self.delta, (m, j, 0), [])]
            xinv = [("X", a, -1) for a in range(j - 2, m - 1, -1)]
            out.append((-self.delta * self.params.lam, (m, m, 0), xinv))
            return out
        out = [(self.one, (m + 1, j, s), [])]
        xinv = [("X", a, -1) for a in range(j - 2, m - 1, -1)]
        if s > 0:
            for sp in range(1, s):
                for coeff, chain2, res in self._case_A(l, m, j, s - sp):
                    out.append((-self.delta * coeff, chain2,
                                res + y_word(m, sp)))
                for coeff, r, mono in self.eypeII(m, sp):
                    out.append((self.delta * coeff, (m, m, r),
                                self._mono_word(mono) + xinv
                                + y_word(m, sp - s)))
        else:
            rr = -s
            for sp in range(0, rr + 1):
                for coeff, chain2, res in self._case_A(l, m, j, sp - rr):
                    out.append((self.delta * coeff, chain2,
                                res + y_word(m, -sp)))
                for coeff, r, mono in self.eypeII(m, -sp):
                    out.append((-self.delta * coeff, (m, m, r),
                                self._mono_word(mono) + xinv
                                + y_word(m, rr - sp)))
        return out

    @staticmethod
    def _mono_word(mono: Dict[int, int]) -> List[Token]:
        out: List[Token] = []
        for pos in sorted(mono):
            out.extend(y_word(pos, mono[pos]))
        return out

    # -- e-sandwich collapses ------------------------------------------------

    def eYe(self, m: int, q: int) -> list:
        """e_m Y_m'^q e_m = sum coeff * mono * e_m with mono over positions
        < m; returns [(coeff, mono_dict)]."""
        key = ("eYe", m, q)
        hit = self._eYe_memo.get(key)
        if hit is not None:
            return hit
        if m == 1:
            out = [(self.params.A(q), {})]
        elif q == 0:
            out = [(self.params.A(0), {})]
        elif q > 0:
            out = self._eYe_pos(m, q)
        else:
            out = self._eYe_neg(m, -q)
        merged: Dict[tuple, RingValue] = {}
        for c, mono in out:
            keym = tuple(sorted((p, e) for p, e in mono.items() if e))
            merged[keym] = merged.get(keym, self.zero) + c
        out = [(c, dict(keym)) for keym, c in merged.items() if not c.is_zero()]
        self._eYe_memo[key] = out
        return out

    @staticmethod
    def _mono_mul(a: Dict[int, int], b: Dict[int, int]) -> Dict[int, int]:
        out = dict(a)
        for p, e in b.items():
            out[p] = out.get(p, 0) + e
            if out[p] == 0:
                del out[p]
        return out

    def _eYe_pos(self, m: int, q: int) -> list:
        d = self.delta
        out: list = []
        # through-strand term: e_m e_{m-1} y_{m-1}^q e_{m-1} e_m
        for c, mono in self.eYe(m - 1, q):
            out.append((c, mono))
        for s in range(0, q):
            # B_s = e_m X_{m-1} y_m^s e_m y_{m-1}^{q-s}
            #     = e_m e_{m-1} X_m y_m^s e_m y^{q-s}  - d e_m e_{m-1} y_m^s e_m y^{q-s}
            #       + d e_m e_{m-1} e_m y_m^s e_m y^{q-s}
            for c, r, mono in self.eypeII(m, s):
                low = {p: e for p, e in mono.items() if p < m - 1}
                b = mono.get(m - 1, 0)
                out.append((d * c, self._mono_mul(low, {m - 1: b - r + q - s})))
            out.append((-d * d, {m - 1: q - 2 * s}))
            for c, mono in self.eYe(m, s):
                out.append((d * d * c, self._mono_mul(mono, {m - 1: q - s})))
            # C_s = e_m X_{m-1} y_{m-1}^{q-s} e_{m-1} y_m^s e_m
            for c, r, mono in self.eypeII(m - 1, q - s):
                out.append((-d * c, self._mono_mul(mono, {m - 1: r - s})))
        return out

    def _eYe_neg(self, m: int, r: int) -> list:
        """e_m y_m^{-r} e_m for r > 0, via the mirror exchange identity."""
        d = self.delta
        out: list = []
        # e_m e_{m-1} y_{m-1}^{-r} e_{m-1} e_m collapses by eee
        for c, mono in self.eYe(m - 1, -r):
            out.append((c, mono))
        for s in range(1, r + 1):
            # -d e_m e_{m-1} y_{m-1}^{-s} [X_m y_m^{s-r} e_m]
            for c, rt, mono in self.eypeII(m, s - r):
                low = {p: e for p, e in mono.items() if p < m - 1}
                b = mono.get(m - 1, 0)
                out.append((-d * c, self._mono_mul(low, {m - 1: b - rt - s})))
            # +d e_m [X_{m-1}^{-1} y_{m-1}^{-s} e_{m-1}] y_{m-1}^{r-s} e_m
            for c, rx, mono in self.eypeII_inv(m - 1, -s):
                out.append((d * c, self._mono_mul(mono, {m - 1: rx + r - s})))
        return out

    def eypeII(self, m: int, s: int) -> list:
        """X_m y_m^s e_m = sum coeff * mono * y_m^r e_m;
        returns [(coeff, r, mono_dict_over_positions_<m)]."""
        lam = self.params.lam
        d = self.delta
        if s == 0:
            return [(lam, 0, {})]
        out: list = []
        if s > 0:
            out.append((lam, -s, {}))
            for sp in range(1, s + 1):
                out.append((-d, s - 2 * sp, {}))
                for c, mono in self.eYe(m, s - sp):
                    out.append((d * c, -sp, mono))
        else:
            r = -s
            out.append((lam, r, {}))
            for sp in range(1, r + 1):
                out.append((d, r - 2 * sp, {}))
                for c, mono in self.eYe(m, -sp):
                    out.append((-d * c, r - sp, mono))
        return out

    def eypeIII(self, m: int, s: int) -> list:
        """e_m y_m^s X_m = star of eypeII: sum coeff * mono * e_m y_m^r,
        same output format (the mono commutes to either side)."""
        return self.eypeII(m, s)

    def eypeII_inv(self, m: int, s: int) -> list:
        """X_m^{-1} y_m^s e_m = (X_m - delta + delta e_m) y_m^s e_m."""
        out = list(self.eypeII(m, s))
        out.append((-self.delta, s, {}))
        for c, mono in self.eYe(m, s):
            out.append((self.delta * c, 0, mono))
        return out

    # -- AK-core multiplications ----------------------------------------------

    def _lmul_ak(self, l: int, tok: Token, idx) -> Element:
        m = tok[1]
        c, w = idx[1], idx[2]
        if m <= l - 2:
            u, jj = perm_strip(w)
            chi = ak_index(c[:-1], u)
            kappa = self.lmul(l - 1, tok, chi)
            return self._extend_tail(l, kappa, (c[-1], jj))
        # m = l - 1
        if tok[0] == "E":
            u, jj = perm_strip(w)
            chi = ak_index(c[:-1], u)
            kappa = self._emul_top(l, chi)  # level-l, all in the e-ideal
            return self._rmul_tail(l, kappa, (c[-1], jj))
        return self._xmul_top(l, idx)

    def _rmul_tail(self, l: int, elem: Element, tail) -> Element:
        """elem * Y_l'^b X_{l-1}..X_j for a level-l element supported on
        the e-ideal (m >= 1), via the anti-involution: x t = (t* x*)*."""
        b, j = tail
        if b == 0 and j == l:
            return elem
        tword = y_word(l, b) + [("X", a, 1) for a in range(l - 1, j - 1, -1)]
        starred: Element = {}
        for ix, c in elem.items():
            _extend(starred, self.star(l, ix), c)
        mid = self.nf_onto(l, star_word(tword), starred)
        out: Element = {}
        for ix, c in mid.items():
            _extend(out, self.star(l, ix), c)
        return out

    def _extend_tail(self, l: int, elem: Element, tail) -> Element:
        """elem (level l-1) * Y_l'^b X_{l-1}..X_j, b in 0..k-1."""
        b, j = tail
        out: Element = {}
        for nu, coeff in elem.items():
            if nu[0] == "a":
                _add(out, ak_index(nu[1] + (b,), perm_join(nu[2], j, l)), coeff)
            else:
                base = {ak_index((0,) * (l - 1) + (b,), desc_perm(l, j)):
                        self.one}
                _extend(out, self.nf_onto(l, word_of(nu, l - 1), base), coeff)
        return out

    # the top e-multiplication: e_{l-1} * nu for nu a basis index of the
    # subalgebra one strand down, via e_{l-1} nu = (nu* e_{l-1})*.

    def _emul_top(self, l: int, chi) -> Element:
        out: Element = {}
        for sigma, c in self.star(l - 1, chi).items():
            app = self._eappend_top(l, sigma)
            for mu, c2 in app.items():
                _extend(out, self.star(l, mu), c * c2)
        return out

    def _eappend_top(self, l: int, sigma) -> Element:
        """sigma * e_{l-1} for sigma a basis index at level l-1; every
        output index has at least one chain pair."""
        if sigma[0] == "c":
            (i, j, s), inner, right = sigma[1], sigma[2], sigma[3]
            # the chain's e-run extends by e_{l-1}; the tail re-splits
            tail = self.nf(l - 1, word_of(inner, l - 3)
                           + right_chain_word(*right, l - 3))
            out: Element = {}
            for (sub, rch), coeff in self.rsplit(l - 1, tail):
                _extend(out, self.assemble(l, (i, j, s), sub, rch), coeff)
            return out
        c, u = sigma[1], sigma[2]
        cc, jj = c[-1], None
        u2, jj = perm_strip(u)
        chi_low = ak_index(c[:-1], u2)
        low_word = word_of(chi_low, l - 2)
        if jj == l - 1:  # no descent in the top stage
            s0 = cc if self.Pmin <= cc <= self.Pmax else self.Pmax
            base_idx = chain_index((l - 1, l - 1, s0),
                                   ak_index((0,) * (l - 2), perm_id(l - 2)),
                                   (l - 1, l - 1, 0))
            base: Element = {base_idx: self.one}
            if s0 != cc:
                base = self.nf_onto(l, y_word(l - 1, cc - s0), base)
            return self.nf_onto(l, low_word, base)
        # with a descent: X-run eats into e_{l-2} e_{l-1} via the braid moves
        inner0 = ak_index((0,) * (l - 2), desc_perm(l - 2, jj))
        base_idx = chain_index((l - 2, l - 2, 0), inner0, (l - 1, l - 1, 0))
        base = {base_idx: self.one}
        base = self.nf_onto(l, [("X", l - 1, -1)], base)
        base = self.nf_onto(l, y_word(l - 1, cc), base)
        return self.nf_onto(l, low_word, base)

    # the top X-multiplication (the crossing/winding cascade)

    def _xmul_top(self, l: int, idx) -> Element:
        c, w = idx[1], idx[2]
        chi1, jl = perm_strip(w)
        b = c[-1]
        chi2, jl1 = perm_strip(chi1)
        a = c[-2]
        low_word = word_of(ak_index(c[:-2], chi2), l - 2)
        v0 = perm_mul(perm_embed(desc_perm(l - 1, jl1), l), desc_perm(l, jl))
        core = self._xmul_core(l, a, b, v0)
        return self.nf_onto(l, low_word, core)

    def _xmul_core(self, l: int, a: int, b: int, v0) -> Element:
        """X_{l-1} y_{l-1}^a y_l^b X_{v0} in basis coordinates."""
        d = self.delta
        out: Element = {}
        # T1: y_l^a X_{l-1} y_l^b X_{v0}
        #   T1a: y_l^a y_{l-1}^b (X_{l-1} X_{v0})
        _extend(out, self._hecke_top_mono(l, a, b, v0))
        #   T1b_r / T1c_r over r = 1..b
        for r in range(1, b + 1):
            _extend(out, self.mono_desc(l, a + r, b - r, v0), d)
            base = self._mono_low_desc(l, -r, v0)
            emul = self._emul_elem(l, base)
            _extend(out, self.nf_onto(l, y_word(l - 1, b - r - a), emul), -d)
        # T2_s / T3_s over s = 1..a
        for s in range(1, a + 1):
            _extend(out, self.mono_desc(l, s + b, a - s, v0), -d)
            base = self._mono_low_desc(l, a - s - b, v0)
            emul = self._emul_elem(l, base)
            _extend(out, self.nf_onto(l, y_word(l - 1, -s), emul), d)
        return out

    def _hecke_top_mono(self, l: int, a: int, b: int, v0) -> Element:
        """y_l^a y_{l-1}^b (X_{l-1} X_{v0}) with the quadratic relation."""
        d = self.delta
        lam = self.params.lam
        up = perm_left_s_len(v0, l - 1)
        if up > 0:
            v = _left_s(v0, l - 1)
            return self.mono_desc(l, a, b, v)
        v1 = _left_s(v0, l - 1)  # v0 = s_{l-1} v1
        out: Element = {}
        _extend(out, self.mono_desc(l, a, b, v1))
        _extend(out, self.mono_desc(l, a, b, v0), d)
        emul = self._emul_elem(l, {ak_index((0,) * l, v1): self.one})
        _extend(out, self.nf_onto(l, y_word(l - 1, b - a), emul), -d * lam)
        return out

    def mono_desc(self, l: int, A: int, B: int, v) -> Element:
        """y_l^A y_{l-1}^B X_v normalized; A >= 0 may exceed the window."""
        if A <= self.k - 1:
            base = {ak_index((0,) * (l - 1) + (A,), v): self.one}
            return self.nf_onto(l, y_word(l - 1, B), base)
        key = ("mono_desc", l, A, B, v)
        hit = self._lmul_memo.get(key)
        if hit is not None:
            return hit
        if key in self._inprog:
            raise RuntimeError(f"rewriting cycle at {key}")
        self._inprog.add(key)
        try:
            d = self.delta
            base = self.nf_onto(l, y_word(l - 1, B),
                                {ak_index((0,) * l, v): self.one})
            acc: Element = {}
            # y_l^A = X_{l-1} y_{l-1}^A X_{l-1}
            #   + d sum_s X_{l-1} y_{l-1}^s y_l^{A-s}
            #   - d sum_s X_{l-1} y_{l-1}^s e_{l-1} y_l^{A-s}
            step = self._xmul_elem(l, base)
            step = self.nf_onto(l, y_word(l - 1, A), step)
            _extend(acc, self._xmul_elem(l, step))
            for s in range(1, A):
                lower = self.mono_desc2(l, A - s, B, v)
                term = self.nf_onto(l, y_word(l - 1, s), lower)
                _extend(acc, self._xmul_elem(l, term), d)
                term2 = self._emul_elem(l, lower)
                term2 = self.nf_onto(l, y_word(l - 1, s), term2)
                _extend(acc, self._xmul_elem(l, term2), -d)
            out = acc
        finally:
            self._inprog.discard(key)
        self._lmul_memo[key] = out
        return out

    def mono_desc2(self, l: int, A: int, B: int, v) -> Element:
        return self.mono_desc(l, A, B, v)

    def _mono_low_desc(self, l: int, B: int, v) -> Element:
        """y_{l-1}^B X_v normalized (no y_l power)."""
        return self.nf_onto(l, y_word(l - 1, B),
                            {ak_index((0,) * l, v): self.one})

    def _emul_elem(self, l: int, elem: Element) -> Element:
        out: Element = {}
        for ix, c in elem.items():
            _extend(out, self.lmul(l, ("E", l - 1), ix), c)
        return out

    def _xmul_elem(self, l: int, elem: Element) -> Element:
        out: Element = {}
        for ix, c in elem.items():
            _extend(out, self.lmul(l, ("X", l - 1, 1), ix), c)
        return out

    # -- star -----------------------------------------------------------------

    def star(self, l: int, idx) -> Element:
        key = (l, idx)
        hit = self._star_memo.get(key)
        if hit is not None:
            return hit
        if idx[0] == "c" and idx[1][0] == idx[1][1] == l - 1:
            # star(alpha_{l-1,l-1,l-1}^s inner R) folds onto the mirror
            # basis element e_{l-1} Y_{l-1}'^s directly (avoids the top
            # e-multiplication entirely).
            (i, j, s), inner, right = idx[1], idx[2], idx[3]
            base_idx = chain_index((l - 1, l - 1, 0),
                                   ak_index((0,) * (l - 2), perm_id(l - 2)),
                                   (l - 1, l - 1, s))
            # star(idx) = star(right^*) star(inner) star(left); the last
            # factor is the base element e_{l-1} Y_{l-1}'^s itself.
            g, h, t = right
            word: List[Token] = (
                y_word(g, t) + [("X", aa, 1) for aa in range(g, h)]
                + [("E", aa) for aa in range(h, l - 1)]
                + star_word(word_of(inner, l - 2)))
            out = self.nf_onto(l, word, {base_idx: self.one})
        elif idx[0] == "c" and idx[1][1] == l - 1:
            # left chain with j = l-1: rewrite the trailing crossing so the
            # lone e_{l-1} lands on an element already in the chain sector
            (i, j, s), inner, right = idx[1], idx[2], idx[3]
            w = star_word(word_of(idx, l))
            w = _rewrite_top_e_entry(w, l)
            out = self.nf(l, w)
        else:
            out = self.nf(l, star_word(word_of(idx, l)))
        self._star_memo[key] = out
        return out

    # -- right split ------------------------------------------------------------

    def rsplit(self, lam: int, elem: Element) -> list:
        """Express a level-lam element as sum (SUB, right-chain) with SUB a
        basis index one strand down and the chain at l-value lam-1; returns
        [((sub_idx, (g,h,t)), coeff)]."""
        pairs, solver, basis_order = self._rsplit_data(lam)
        vec = [self.zero] * len(basis_order)
        pos = {ix: p for p, ix in enumerate(basis_order)}
        for ix, c in elem.items():
            vec[pos[ix]] = c
        sol = solver.solve(vec)
        return [(pairs[p], c) for p, c in enumerate(sol) if not c.is_zero()]

    def _rsplit_data(self, lam: int):
        hit = self._rsplit.get(lam)
        if hit is not None:
            return hit
        basis_order = enumerate_basis(lam, self.k)
        pos = {ix: p for p, ix in enumerate(basis_order)}
        pairs = []
        for sub in enumerate_basis(lam - 1, self.k):
            rt = right_top(sub)
            for g in range(rt + 1, lam + 1):
                for h in range(g, lam + 1):
                    for t in self.P:
                        pairs.append((sub, (g, h, t)))
        if len(pairs) != len(basis_order):
            raise AssertionError("right-split pair count mismatch")
        cols = []
        for sub, (g, h, t) in pairs:
            word = word_of(sub, lam - 1) + right_chain_word(g, h, t, lam - 1)
            e = self.nf(lam, word)
            col = [self.zero] * len(basis_order)
            for ix, c in e.items():
                col[pos[ix]] = c
            cols.append(col)
        solver = UnitSolver(cols, self.params.ring)
        data = (pairs, solver, basis_order)
        self._rsplit[lam] = data
        return data

    # -- public element operations -----------------------------------------------

    def normalize(self, word: Sequence[Token]) -> Element:
        return self.nf(self.n, word)

    def multiply(self, x: Element, y: Element) -> Element:
        out: Element = {}
        for ix, cx in x.items():
            wx = word_of(ix, self.n)
            for iy, cy in y.items():
                _extend(out, self.nf_onto(self.n, wx, {iy: self.one}),
                        cx * cy)
        return out

    def star_elem(self, x: Element) -> Element:
        out: Element = {}
        for ix, c in x.items():
            _extend(out, self.star(self.n, ix), c)
        return out

    def lmul_elem(self, tok: Token, x: Element) -> Element:
        out: Element = {}
        for ix, c in x.items():
            _extend(out, self.lmul(self.n, tok, ix), c)
        return out

    def project_ak(self, x: Element) -> Element:
        return {ix: c for ix, c in x.items() if ix[0] == "a"}


def _left_s(w, j: int):
    from .basis import perm_left_s
    return perm_left_s(w, j)


def perm_left_s_len(w, j: int) -> int:
    """+1 if left multiplication by s_j increases length, else -1."""
    wi = tuple(w)
    from .basis import perm_inv
    inv = perm_inv(wi)
    return 1 if inv[j - 1] < inv[j] else -1


def _rewrite_top_e_entry(word: List[Token], l: int) -> List[Token]:
    """In a star word whose first e-token is e_{l-1} immediately following
    X_{l-2}, use e_{l-1} X_{l-2} ... pattern rewriting:
    the processing-order pair (X_{l-2} then e_{l-1}) is replaced via
    e_{l-1} X_{l-2} = e_{l-1} e_{l-2} X_{l-1}^{-1}, keeping the product."""
    out = list(word)
    for p, tok in enumerate(out):
        if tok == ("E", l - 1):
            if p + 1 < len(out) and out[p + 1] == ("X", l - 2, 1):
                # the product segment e_{l-1} X_{l-2} equals
                # e_{l-1} e_{l-2} X_{l-1}^{-1} (braid/tangle move), which
                # keeps the lone top e off the e-free partial products
                out[p:p + 2] = [("E", l - 1), ("E", l - 2),
                                ("X", l - 1, -1)]
            break
    return out
