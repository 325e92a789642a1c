"""Parameter families and admissibility.

A parameter family is (q, lam, q_0..q_{k-1}, A_0..A_{k-1}) in a commutative
ring subject to lam - lam^{-1} = delta*(1 - A_0).  This module builds the
admissibility polynomials beta, h_l, B_l, h_l', checks (weak) admissibility,
constructs the generic admissible rings (sigma = + or -), the classical
Brauer specialization, and random rational admissible points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from .ring import LaurentPoly, RingSpec, RingValue, apply_hom


class ParameterSet:
    """Concrete parameter values over a RingSpec ring.

    k = 2z - eps with z = ceil(k/2), eps in {0, 1}.  The derived family
    A_j (j in Z) is generated from A_0..A_{k-1} by the linear recurrence
    sum_{i=0}^{k} q_i A_{i+j} = 0 with q_k := -1, memoized in both
    directions (q_0 must be a unit for the backward direction).
    """

    def __init__(self, ring: RingSpec, q: RingValue, lam: RingValue,
                 qs: List[RingValue], As: List[RingValue],
                 label: str = ""):
        k = ring.k
        if len(qs) != k or len(As) != k:
            raise ValueError("need q_0..q_{k-1} and A_0..A_{k-1}")
        self.ring = ring
        self.k = k
        self.z = (k + 1) // 2
        self.eps = 2 * self.z - k
        self.q = q
        self.lam = lam
        self.qs = list(qs)
        self.label = label
        self.q_inv = q.inverse()
        self.lam_inv = lam.inverse()
        self.q0_inv = qs[0].inverse()
        self.delta = q - self.q_inv
        self._A: Dict[int, RingValue] = {j: a for j, a in enumerate(As)}
        h0 = lam - self.lam_inv + self.delta * (As[0] - ring.one())
        if not h0.is_zero():
            raise ValueError("parameters violate lam - lam^{-1} = delta(1-A_0)")

    def q_coeff(self, i: int) -> RingValue:
        """q_i for 0 <= i <= k, with the convention q_k = -1."""
        if i == self.k:
            return -self.ring.one()
        return self.qs[i]

    def A(self, j: int) -> RingValue:
        """A_j for any integer j (derived family, memoized)."""
        if j in self._A:
            return self._A[j]
        if j >= self.k:
            # A_{j} = sum_{i=0}^{k-1} q_i A_{i+j-k}
            acc = self.ring.zero()
            for i in range(self.k):
                acc = acc + self.qs[i] * self.A(i + j - self.k)
            self._A[j] = acc
        else:
            # j < 0: q_0 A_j = A_{j+k} - sum_{i=1}^{k-1} q_i A_{i+j}
            acc = self.A(j + self.k)
            for i in range(1, self.k):
                acc = acc - self.qs[i] * self.A(i + j)
            self._A[j] = self.q0_inv * acc
        return self._A[j]

    def one(self) -> RingValue:
        return self.ring.one()

    def zero(self) -> RingValue:
        return self.ring.zero()

    def __repr__(self) -> str:
        return f"ParameterSet(k={self.k}, ring={self.ring.mode}, {self.label})"


# ---------------------------------------------------------------------------
# admissibility polynomials
# ---------------------------------------------------------------------------

def beta_values(p: ParameterSet):
    """(beta, beta_plus, beta_minus); beta = beta_plus * beta_minus."""
    one = p.one()
    beta = p.qs[0] * p.lam - p.q0_inv * p.lam_inv
    if p.eps == 0:
        beta = beta + p.delta
    if p.k % 2 == 1:
        bp = p.qs[0] * p.lam - one
        bm = p.q0_inv * p.lam_inv + one
    else:
        bp = p.qs[0] * p.lam - p.q_inv
        bm = p.q * p.q0_inv * p.lam_inv + one
    return beta, bp, bm


def B_value(p: ParameterSet, l: int) -> RingValue:
    """B_l for 1 <= l <= k-1 (the delta-part of h_l)."""
    k, z = p.k, p.z
    acc = p.zero()
    for r in range(1, k - l + 1):
        acc = acc + p.q_coeff(r + l) * p.A(r)
    for i in range(max(l + 1, z), (l + k) // 2 + 1):
        acc = acc - p.q_coeff(2 * i - l)
    for i in range((l + 1) // 2, min(l, z - 1) + 1):
        acc = acc + p.q_coeff(2 * i - l)
    return acc


def h_values(p: ParameterSet):
    """(h_0, [h_1..h_{k-1}], [B_1..B_{k-1}])."""
    h0 = p.lam - p.lam_inv + p.delta * (p.A(0) - p.one())
    hs, Bs = [], []
    for l in range(1, p.k):
        Bl = B_value(p, l)
        hl = p.lam_inv * (p.q_coeff(l) + p.q0_inv * p.q_coeff(p.k - l)) \
            + p.delta * Bl
        hs.append(hl)
        Bs.append(Bl)
    return h0, hs, Bs


def h_prime_values(p: ParameterSet) -> List[RingValue]:
    """[h_1'..h_{z-eps}']."""
    k, z = p.k, p.z
    out = []
    for l in range(1, z - p.eps + 1):
        acc = p.zero()
        for r in range(1, l + 1):
            acc = acc + p.q0_inv * p.q_coeff(r + k - l) * p.A(r)
        for r in range(0, k - l + 1):
            acc = acc - p.q_coeff(r + l) * p.A(r)
        for i in range((l + 1) // 2, l):
            acc = acc - (p.q0_inv * p.q_coeff(k - 2 * i + l) + p.q_coeff(2 * i - l))
        for i in range(z, (l + k) // 2 + 1):
            acc = acc + (p.q0_inv * p.q_coeff(k - 2 * i + l) + p.q_coeff(2 * i - l))
        out.append(acc)
    return out


@dataclass
class AdmissibilityReport:
    beta: RingValue
    beta_plus: RingValue
    beta_minus: RingValue
    h: List[RingValue]          # h_0 .. h_{k-1}
    h_prime: List[RingValue]    # h_1' .. h_{z-eps}'
    B: List[RingValue]          # B_1 .. B_{k-1}
    admissible: bool
    weakly_admissible: bool
    weak_horizon: int

    def to_json(self):
        return {
            "beta": self.beta.to_json(),
            "betaPlus": self.beta_plus.to_json(),
            "betaMinus": self.beta_minus.to_json(),
            "h": [v.to_json() for v in self.h],
            "hPrime": [v.to_json() for v in self.h_prime],
            "B": [v.to_json() for v in self.B],
            "admissible": self.admissible,
            "weaklyAdmissible": self.weakly_admissible,
            "weakHorizon": self.weak_horizon,
        }


def weak_admissibility_holds(p: ParameterSet, horizon: Optional[int] = None) -> bool:
    """h_0 = 0 and lam*A_p = lam*A_{-p} - delta*sum_{s=1}^{p}(A_{p-2s} - A_{-s}A_{p-s})
    for 1 <= p <= horizon (default 2k; the full condition is an infinite family).
    """
    horizon = 2 * p.k if horizon is None else horizon
    h0 = p.lam - p.lam_inv + p.delta * (p.A(0) - p.one())
    if not h0.is_zero():
        return False
    for m in range(1, horizon + 1):
        lhs = p.lam * p.A(m)
        rhs = p.lam * p.A(-m)
        for s in range(1, m + 1):
            rhs = rhs - p.delta * (p.A(m - 2 * s) - p.A(-s) * p.A(m - s))
        if not (lhs - rhs).is_zero():
            return False
    return True


def check_admissible(p: ParameterSet, weak_horizon: Optional[int] = None) -> AdmissibilityReport:
    beta, bp, bm = beta_values(p)
    h0, hs, Bs = h_values(p)
    hp = h_prime_values(p)
    bound = p.z - p.eps
    adm = beta.is_zero() and h0.is_zero()
    for l in range(1, bound + 1):
        adm = adm and hs[l - 1].is_zero()
    for v in hp:
        adm = adm and v.is_zero()
    weak = weak_admissibility_holds(p, weak_horizon)
    return AdmissibilityReport(
        beta=beta, beta_plus=bp, beta_minus=bm,
        h=[h0] + hs, h_prime=hp, B=Bs,
        admissible=adm, weakly_admissible=weak,
        weak_horizon=2 * p.k if weak_horizon is None else weak_horizon,
    )


# ---------------------------------------------------------------------------
# symbolic identity checks over the full polynomial ring
# ---------------------------------------------------------------------------

def omega_parameters(k: int) -> ParameterSet:
    """All parameters as free indeterminates, except A_0 which is eliminated
    by h_0 = 0 ... that is not possible polynomially; instead we keep A_0
    free and do NOT construct a ParameterSet (its invariant would fail).
    """
    raise NotImplementedError  # see OmegaSymbols


class OmegaSymbols:
    """Raw symbols of Omega = Z[q^{±1}, lam^{±1}, q_0^{±1},
    q_1..q_{k-1}, A_0..A_{k-1}] for identity verification; no h_0 constraint.
    Provides the same accessors as ParameterSet (duck-typed) so the
    admissibility polynomials can be evaluated symbolically.
    """

    def __init__(self, k: int):
        self.ring = RingSpec("omega", k)
        self.k = k
        self.z = (k + 1) // 2
        self.eps = 2 * self.z - k
        self.q = self.ring.var("q")
        self.lam = self.ring.var("lam")
        self.qs = [self.ring.var(f"q{i}") for i in range(k)]
        self.q_inv = self.ring.var("q", -1)
        self.lam_inv = self.ring.var("lam", -1)
        self.q0_inv = self.ring.var("q0", -1)
        self.delta = self.q - self.q_inv
        self._A = {j: self.ring.var(f"A{j}") for j in range(k)}

    def q_coeff(self, i: int) -> RingValue:
        if i == self.k:
            return -self.ring.one()
        return self.qs[i]

    def A(self, j: int) -> RingValue:
        if j not in self._A:
            raise ValueError("symbolic A_j only for 0 <= j < k")
        return self._A[j]

    def one(self) -> RingValue:
        return self.ring.one()

    def zero(self) -> RingValue:
        return self.ring.zero()


def verify_beta_factorization(k: int) -> bool:
    """beta = beta_plus * beta_minus as polynomials over Omega."""
    s = OmegaSymbols(k)
    beta, bp, bm = beta_values(s)
    return (beta - bp * bm).is_zero()


def verify_divisibility_identity(k: int) -> bool:
    """q_0^{-1} h_{k-l} - h_l + beta q_0^{-1} q_l - h_0 q_l = delta h_l'
    over Omega for all 1 <= l <= z - eps.
    """
    s = OmegaSymbols(k)
    beta, _, _ = beta_values(s)
    h0, hs, _ = h_values(s)

    def h_at(l: int) -> RingValue:
        return h0 if l == 0 else hs[l - 1]

    hp = h_prime_values(s)
    for l in range(1, s.z - s.eps + 1):
        lhs = s.q0_inv * h_at(k - l) - h_at(l) \
            + beta * s.q0_inv * s.qs[l] - h0 * s.qs[l]
        rhs = s.delta * hp[l - 1]
        if not (lhs - rhs).is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# concrete admissible families
# ---------------------------------------------------------------------------

def _solved_q0(spec_or_none, k: int, sigma: str, q: RingValue,
               lam_inv: RingValue, q_inv: RingValue, one: RingValue) -> RingValue:
    if sigma not in ("+", "-"):
        raise ValueError("sigma must be '+' or '-'")
    if k % 2 == 1:
        return lam_inv if sigma == "+" else -lam_inv
    return q_inv * lam_inv if sigma == "+" else -(q * lam_inv)


def _solve_A_from_B(p_like, Bs: List[RingValue]) -> List[RingValue]:
    """Invert the triangular system B_l = sum_{r=1}^{k-l} q_{r+l} A_r - S1_l + S2_l,
    iterating l = k-1 down to 1 and isolating A_{k-l} via the diagonal q_k = -1.
    Returns [A_1 .. A_{k-1}].  p_like must provide q_coeff, z, k, zero().
    """
    k, z = p_like.k, p_like.z
    A: Dict[int, RingValue] = {}
    for l in range(k - 1, 0, -1):
        s1 = p_like.zero()
        for i in range(max(l + 1, z), (l + k) // 2 + 1):
            s1 = s1 + p_like.q_coeff(2 * i - l)
        s2 = p_like.zero()
        for i in range((l + 1) // 2, min(l, z - 1) + 1):
            s2 = s2 + p_like.q_coeff(2 * i - l)
        rhs = Bs[l - 1] + s1 - s2  # = sum_{r=1}^{k-l} q_{r+l} A_r
        acc = p_like.zero()
        for r in range(1, k - l):
            acc = acc + p_like.q_coeff(r + l) * A[r]
        # q_k A_{k-l} = rhs - acc, with q_k = -1
        A[k - l] = acc - rhs
    return [A[r] for r in range(1, k)]


class _GenericScaffold:
    """Duck-typed helper carrying q_coeff/z/k/zero during generic_ring solve."""

    def __init__(self, ring: RingSpec, qs: List[RingValue]):
        self.ring = ring
        self.k = ring.k
        self.z = (self.k + 1) // 2
        self.qs = qs

    def q_coeff(self, i: int) -> RingValue:
        if i == self.k:
            return -self.ring.one()
        return self.qs[i]

    def zero(self) -> RingValue:
        return self.ring.zero()


def generic_ring(k: int, sigma: str) -> ParameterSet:
    """Admissible parameters over Z[q^{±1}, lam^{±1}, q_1..q_{k-1}][delta^{-1}],
    with q_0 solved from beta_sigma = 0 and A_0, A_1..A_{k-1} solved from
    h_0 = 0, h_l = 0.
    """
    spec = RingSpec("generic-plus" if sigma == "+" else "generic-minus", k)
    q = spec.var("q")
    lam = spec.var("lam")
    q_inv = spec.var("q", -1)
    lam_inv = spec.var("lam", -1)
    one = spec.one()
    delta_inv = RingValue(spec, poly=LaurentPoly.constant(spec.vars, 1),
                          delta_power=1)
    q0 = _solved_q0(spec, k, sigma, q, lam_inv, q_inv, one)
    q0_inv = q0.inverse()
    qs = [q0] + [spec.var(f"q{i}") for i in range(1, k)]
    # h_0 = 0  =>  A_0 = delta^{-1} lam^{-1} - delta^{-1} lam + 1
    A0 = delta_inv * lam_inv - delta_inv * lam + one
    # h_l = 0  =>  B_l = -delta^{-1} lam^{-1} (q_l + q_0^{-1} q_{k-l})
    scaffold = _GenericScaffold(spec, qs)
    Bs = []
    for l in range(1, k):
        Bs.append(-(delta_inv * lam_inv) * (scaffold.q_coeff(l)
                                            + q0_inv * scaffold.q_coeff(k - l)))
    As = [A0] + (_solve_A_from_B(scaffold, Bs) if k > 1 else [])
    return ParameterSet(spec, q, lam, qs, As, label=f"generic{sigma}")


def brauer_specialization(k: int, sigma: str) -> ParameterSet:
    """Classical-limit parameters over R_c = Z[A_0^{±1}, A_1..A_{floor(k/2)}]:
    q = 1 (so delta = 0), lam = sigma 1, q_0 = 1, q_i = 0, and the loop
    labels fold as A_{-m} = A_m, A_{m+k} = A_m.
    """
    if sigma not in ("+", "-"):
        raise ValueError("sigma must be '+' or '-'")
    spec = RingSpec("brauer", k)
    one = spec.one()
    q = one
    lam = one if sigma == "+" else -one
    qs = [one] + [spec.zero() for _ in range(1, k)]
    As = [brauer_A(spec, j) for j in range(k)]
    return ParameterSet(spec, q, lam, qs, As, label=f"brauer{sigma}")


def fold_label(k: int, j: int) -> int:
    """Canonical representative min(j mod k, k - (j mod k)) in 0..floor(k/2)."""
    m = j % k
    return min(m, k - m)


def brauer_A(spec: RingSpec, j: int) -> RingValue:
    if spec.mode != "brauer":
        raise ValueError("brauer_A needs the brauer ring")
    return spec.var(f"A{fold_label(spec.k, j)}")


_RATIONAL_POOL = [Fraction(n, d) for n in range(-9, 10) for d in (1, 2, 3)
                  if n != 0 and Fraction(n, d) not in (1, -1)]


def random_rational_point(k: int, sigma: str, seed: int) -> ParameterSet:
    """Deterministic rational admissible point: draw q, lam, q_1..q_{k-1}
    and evaluate the generic_ring formulas.  Retries internally on any
    degenerate draw (delta = 0 or a required unit vanishing).
    """
    rng = random.Random(seed)
    spec = RingSpec("point", k)
    for _ in range(1000):
        try:
            vals = rng.sample(_RATIONAL_POOL, k + 1)
            qv, lamv, rest = vals[0], vals[1], vals[2:]
            q = spec.rational(qv)
            if (q - q.inverse()).is_zero():
                continue
            lam = spec.rational(lamv)
            lam_inv = lam.inverse()
            q_inv = q.inverse()
            one = spec.one()
            delta = q - q_inv
            delta_inv = delta.inverse()
            q0 = _solved_q0(spec, k, sigma, q, lam_inv, q_inv, one)
            q0_inv = q0.inverse()
            qs = [q0] + [spec.rational(v) for v in rest]
            scaffold = _GenericScaffold(spec, qs)
            scaffold.z = (k + 1) // 2
            A0 = delta_inv * lam_inv - delta_inv * lam + one
            Bs = [-(delta_inv * lam_inv) * (scaffold.q_coeff(l)
                                            + q0_inv * scaffold.q_coeff(k - l))
                  for l in range(1, k)]
            As = [A0] + (_solve_A_from_B(scaffold, Bs) if k > 1 else [])
            return ParameterSet(spec, q, lam, qs, As,
                                label=f"point{sigma}/seed{seed}")
        except (ZeroDivisionError, ValueError):
            continue
    raise RuntimeError("could not draw a non-degenerate rational point")


# ---------------------------------------------------------------------------
# the classical-limit ring map on Omega and the generic-to-Brauer check
# ---------------------------------------------------------------------------

def classical_assignment(k: int, sigma: str):
    """The map Omega -> R_c: q -> 1, lam -> sigma 1, q_0 -> 1, q_i -> 0,
    A_j -> A_j (folded); returned as (assignment dict, target spec).
    """
    target = RingSpec("brauer", k)
    one = target.one()
    asg = {
        "q": one,
        "lam": one if sigma == "+" else -one,
        "q0": one,
    }
    for i in range(1, k):
        asg[f"q{i}"] = target.zero()
    for j in range(k):
        asg[f"A{j}"] = brauer_A(target, j)
    return asg, target


def classical_map_kills_ideal(k: int, sigma: str) -> bool:
    """The generators of I_sigma (beta_sigma, h_0..h_{z-eps}, h'_1..h'_{z-eps})
    all map to zero in R_c, which is what makes R_c admissible.
    """
    s = OmegaSymbols(k)
    asg, target = classical_assignment(k, sigma)
    _, bp, bm = beta_values(s)
    beta_sigma = bp if sigma == "+" else bm
    h0, hs, _ = h_values(s)
    gens = [beta_sigma, h0] + hs[: s.z - s.eps] + h_prime_values(s)
    return all(apply_hom(g, asg, target).is_zero() for g in gens)


def generic_matches_brauer(k: int, sigma: str) -> bool:
    """The classical map carries the generic-ring parameters onto the Brauer
    ones.  delta-free parameter expressions must map exactly; an expression
    P/delta^m with m > 0 represents an element congruent to delta^{-m} P,
    so its numerator P must map to 0 (the image being absorbed by the free
    A-variables of R_c).
    """
    gen = generic_ring(k, sigma)
    bra = brauer_specialization(k, sigma)
    asg, target = classical_assignment(k, sigma)
    # the generic ring has no q_0/A_j variables: restrict the assignment
    sub = {nm: asg[nm] for nm in gen.ring.vars.names}

    def image(v: RingValue) -> Optional[RingValue]:
        if v.delta_power:
            return None
        return apply_hom(RingValue(gen.ring, poly=v.poly), sub, target)

    pairs = [(gen.q, bra.q), (gen.lam, bra.lam)]
    pairs += list(zip(gen.qs, bra.qs))
    for g, b in pairs:
        img = image(g)
        if img is None or not (img - b).is_zero():
            return False
    for j in range(k):
        g = gen.A(j)
        if g.delta_power:
            num = RingValue(gen.ring, poly=g.poly)
            if not apply_hom(num, sub, target).is_zero():
                return False
        else:
            img = image(g)
            if img is None or not (img - bra.A(j)).is_zero():
                return False
    return True
