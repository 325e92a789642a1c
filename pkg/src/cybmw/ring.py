"""Exact coefficient arithmetic.

Sparse multivariate Laurent polynomials over the integers, optional
localization at delta = q - q^{-1}, and exact rationals.  No floating
point anywhere; integer coefficients are arbitrary precision.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union


class VarSet:
    """An ordered list of indeterminate names with invertibility flags.

    The order is fixed for the lifetime of a ring so exponent vectors are
    comparable.  Variables flagged invertible may carry negative exponents.
    """

    def __init__(self, names: Sequence[str], invertible: Iterable[str] = ()):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self.index = {nm: i for i, nm in enumerate(names)}
        inv = set(invertible)
        unknown = inv - set(names)
        if unknown:
            raise ValueError(f"invertible flags for unknown variables: {unknown}")
        self.invertible = tuple(nm in inv for nm in names)

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VarSet)
            and self.names == other.names
            and self.invertible == other.invertible
        )

    def __hash__(self) -> int:
        return hash((self.names, self.invertible))

    def __repr__(self) -> str:
        return f"VarSet({list(self.names)})"


Expvec = Tuple[int, ...]


class LaurentPoly:
    """Sparse Laurent polynomial: map from exponent vector to nonzero int."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: VarSet, terms: Mapping[Expvec, int]):
        self.vars = vars
        clean: Dict[Expvec, int] = {}
        nvar = len(vars)
        for exp, coef in terms.items():
            if coef == 0:
                continue
            if len(exp) != nvar:
                raise ValueError("exponent vector has wrong length")
            for e, ok in zip(exp, vars.invertible):
                if e < 0 and not ok:
                    raise ValueError("negative exponent on non-invertible variable")
            clean[tuple(exp)] = clean.get(tuple(exp), 0) + coef
        self.terms = {e: c for e, c in clean.items() if c != 0}
        self._hash: Optional[int] = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def constant(vars: VarSet, c: int) -> "LaurentPoly":
        if c == 0:
            return LaurentPoly(vars, {})
        return LaurentPoly(vars, {(0,) * len(vars): c})

    @staticmethod
    def variable(vars: VarSet, name: str, power: int = 1) -> "LaurentPoly":
        i = vars.index[name]
        exp = [0] * len(vars)
        exp[i] = power
        return LaurentPoly(vars, {tuple(exp): 1})

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        zero = (0,) * len(self.vars)
        return all(e == zero for e in self.terms)

    def constant_value(self) -> int:
        zero = (0,) * len(self.vars)
        if not self.terms:
            return 0
        if set(self.terms) == {zero}:
            return self.terms[zero]
        raise ValueError("not a constant polynomial")

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.vars != other.vars:
            raise ValueError("mixed-ring operands")
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        p = LaurentPoly.__new__(LaurentPoly)
        p.vars, p.terms, p._hash = self.vars, out, None
        return p

    def __neg__(self) -> "LaurentPoly":
        p = LaurentPoly.__new__(LaurentPoly)
        p.vars = self.vars
        p.terms = {e: -c for e, c in self.terms.items()}
        p._hash = None
        return p

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.vars != other.vars:
            raise ValueError("mixed-ring operands")
        out: Dict[Expvec, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        p = LaurentPoly.__new__(LaurentPoly)
        p.vars, p.terms, p._hash = self.vars, out, None
        return p

    def scale(self, c: int) -> "LaurentPoly":
        if c == 0:
            return LaurentPoly(self.vars, {})
        p = LaurentPoly.__new__(LaurentPoly)
        p.vars = self.vars
        p.terms = {e: c * v for e, v in self.terms.items()}
        p._hash = None
        return p

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- division by a fixed divisor -----------------------------------

    def divide_exact(self, divisor: "LaurentPoly") -> Optional["LaurentPoly"]:
        """Exact division, or None if the divisor does not divide self.

        Both operands are shifted by monomials to non-negative exponents,
        then divided by lex long division, which terminates because lex on
        N^n is a well-order.  If the quotient exists it is found greedily
        (the lex-leading term is multiplicative over Z).
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly(self.vars, {})
        n = len(self.vars)
        shift_self = tuple(min(e[i] for e in self.terms) for i in range(n))
        shift_div = tuple(min(e[i] for e in divisor.terms) for i in range(n))
        a = {tuple(x - s for x, s in zip(e, shift_self)): c
             for e, c in self.terms.items()}
        b = {tuple(x - s for x, s in zip(e, shift_div)): c
             for e, c in divisor.terms.items()}
        lead = max(b)
        lc = b[lead]
        quot: Dict[Expvec, int] = {}
        while a:
            rl = max(a)
            rc = a[rl]
            if rc % lc != 0:
                return None
            qexp = tuple(x - y for x, y in zip(rl, lead))
            if any(x < 0 for x in qexp):
                return None
            qc = rc // lc
            quot[qexp] = quot.get(qexp, 0) + qc
            for e, c in b.items():
                key = tuple(x + y for x, y in zip(qexp, e))
                v = a.get(key, 0) - qc * c
                if v:
                    a[key] = v
                else:
                    a.pop(key, None)
        # Undo the shifts; reject results illegal in this Laurent ring.
        back = tuple(s - t for s, t in zip(shift_self, shift_div))
        out = {tuple(x + y for x, y in zip(e, back)): c for e, c in quot.items()}
        for e in out:
            for x, ok in zip(e, self.vars.invertible):
                if x < 0 and not ok:
                    return None
        q = LaurentPoly.__new__(LaurentPoly)
        q.vars, q.terms, q._hash = self.vars, out, None
        return q

    # -- display ------------------------------------------------------

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "*".join(
                f"{nm}^{x}" if x != 1 else nm
                for nm, x in zip(self.vars.names, e)
                if x != 0
            )
            if mono:
                bits.append(f"{c}*{mono}" if c != 1 else mono)
            else:
                bits.append(str(c))
        return " + ".join(bits)


class RingSpec:
    """Selects the coefficient ring.

    mode 'generic-plus' / 'generic-minus': Z[q^{±1}, lam^{±1}, q_1..q_{k-1}]
    localized at delta (values carry an explicit delta-denominator power).
    mode 'brauer': R_c = Z[A_0^{±1}, A_1..A_{floor(k/2)}] with q = 1.
    mode 'point': exact rationals.
    mode 'omega': the full polynomial ring of section-4 identities,
    Z[q^{±1}, lam^{±1}, q_0^{±1}, q_1..q_{k-1}, A_0..A_{k-1}].
    """

    MODES = ("generic-plus", "generic-minus", "brauer", "point", "omega")

    def __init__(self, mode: str, k: int):
        if mode not in self.MODES:
            raise ValueError(f"unknown ring mode {mode!r}")
        if k < 1:
            raise ValueError("k must be >= 1")
        self.mode = mode
        self.k = k
        if mode == "point":
            self.vars = None
        elif mode == "brauer":
            names = ["A0"] + [f"A{i}" for i in range(1, k // 2 + 1)]
            self.vars = VarSet(names, invertible=["A0"])
        elif mode == "omega":
            names = (
                ["q", "lam"]
                + [f"q{i}" for i in range(k)]
                + [f"A{i}" for i in range(k)]
            )
            self.vars = VarSet(names, invertible=["q", "lam", "q0"])
        else:  # generic-plus / generic-minus
            names = ["q", "lam"] + [f"q{i}" for i in range(1, k)]
            self.vars = VarSet(names, invertible=["q", "lam"])

    @property
    def localized(self) -> bool:
        return self.mode in ("generic-plus", "generic-minus")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingSpec)
            and self.mode == other.mode
            and self.k == other.k
        )

    def __hash__(self) -> int:
        return hash((self.mode, self.k))

    def __repr__(self) -> str:
        return f"RingSpec({self.mode!r}, k={self.k})"

    # -- element constructors ------------------------------------------

    def zero(self) -> "RingValue":
        return self.integer(0)

    def one(self) -> "RingValue":
        return self.integer(1)

    def integer(self, c: int) -> "RingValue":
        if self.mode == "point":
            return RingValue(self, rational=Fraction(c))
        return RingValue(self, poly=LaurentPoly.constant(self.vars, c))

    def rational(self, num, den: int = 1) -> "RingValue":
        if self.mode != "point":
            raise ValueError("rationals only in point mode")
        return RingValue(self, rational=Fraction(num, den))

    def var(self, name: str, power: int = 1) -> "RingValue":
        if self.vars is None or name not in self.vars.index:
            raise ValueError(f"no variable {name!r} in {self}")
        return RingValue(self, poly=LaurentPoly.variable(self.vars, name, power))

    def delta(self) -> "RingValue":
        """q - q^{-1}; zero in brauer mode (q = 1 there)."""
        if self.mode == "brauer":
            return self.zero()
        if self.mode == "point":
            raise ValueError("point rings derive delta from the q assignment")
        return self.var("q") - self.var("q", -1)


class RingValue:
    """Element of a RingSpec ring.

    Either an exact rational (point mode) or poly/delta^deltaPower with the
    normalization that poly is not divisible by delta when deltaPower > 0.
    """

    __slots__ = ("spec", "rational", "poly", "delta_power", "_hash")

    def __init__(
        self,
        spec: RingSpec,
        rational: Optional[Fraction] = None,
        poly: Optional[LaurentPoly] = None,
        delta_power: int = 0,
    ):
        self.spec = spec
        self.rational = rational
        self.poly = poly
        self.delta_power = delta_power
        self._hash: Optional[int] = None
        if (rational is None) == (poly is None):
            raise ValueError("exactly one of rational/poly required")
        if delta_power and not spec.localized:
            raise ValueError("delta powers only in localized rings")
        if delta_power:
            self._normalize()

    def _normalize(self) -> None:
        if self.poly is None or self.delta_power == 0:
            return
        if self.poly.is_zero():
            self.delta_power = 0
            return
        d = self.spec.delta().poly
        while self.delta_power > 0:
            q = self.poly.divide_exact(d)
            if q is None:
                break
            self.poly = q
            self.delta_power -= 1

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: "RingValue") -> None:
        if self.spec != other.spec:
            raise ValueError("mixed-ring operands")

    def __add__(self, other: "RingValue") -> "RingValue":
        self._check(other)
        if self.rational is not None:
            return RingValue(self.spec, rational=self.rational + other.rational)
        da, db = self.delta_power, other.delta_power
        if da == db:
            return RingValue(
                self.spec, poly=self.poly + other.poly, delta_power=da
            )
        d = self.spec.delta().poly
        if da < db:
            lifted = self.poly
            for _ in range(db - da):
                lifted = lifted * d
            return RingValue(self.spec, poly=lifted + other.poly, delta_power=db)
        lifted = other.poly
        for _ in range(da - db):
            lifted = lifted * d
        return RingValue(self.spec, poly=self.poly + lifted, delta_power=da)

    def __neg__(self) -> "RingValue":
        if self.rational is not None:
            return RingValue(self.spec, rational=-self.rational)
        v = RingValue.__new__(RingValue)
        v.spec, v.rational, v.poly, v.delta_power, v._hash = (
            self.spec,
            None,
            -self.poly,
            self.delta_power,
            None,
        )
        return v

    def __sub__(self, other: "RingValue") -> "RingValue":
        return self + (-other)

    def __mul__(self, other: "RingValue") -> "RingValue":
        self._check(other)
        if self.rational is not None:
            return RingValue(self.spec, rational=self.rational * other.rational)
        return RingValue(
            self.spec,
            poly=self.poly * other.poly,
            delta_power=self.delta_power + other.delta_power,
        )

    def is_zero(self) -> bool:
        if self.rational is not None:
            return self.rational == 0
        return self.poly.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingValue) or self.spec != other.spec:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self) -> int:
        if self._hash is None:
            if self.rational is not None:
                self._hash = hash((self.spec, self.rational))
            else:
                self._hash = hash(
                    (self.spec, self.delta_power, self.poly)
                )
        return self._hash

    # -- units ----------------------------------------------------------

    def inverse(self) -> "RingValue":
        """Invert a unit; raises ValueError if no inverse is found.

        Units recognised: nonzero rationals, and ±monomials in invertible
        variables (times delta powers in localized mode, where delta is a
        unit by construction).
        """
        if self.rational is not None:
            if self.rational == 0:
                raise ZeroDivisionError("inverse of zero")
            return RingValue(self.spec, rational=1 / self.rational)
        # value = p / delta^dp; try p = ±monomial * delta^e.
        p, e = self.poly, 0
        if self.spec.localized:
            d = self.spec.delta().poly
            while True:
                q = p.divide_exact(d)
                if q is None:
                    break
                p, e = q, e + 1
        if p.is_monomial():
            (exp, coef), = p.terms.items()
            if coef in (1, -1) and all(
                x == 0 or ok for x, ok in zip(exp, self.spec.vars.invertible)
            ):
                inv = LaurentPoly(self.spec.vars, {tuple(-x for x in exp): coef})
                net = self.delta_power - e  # inverse = inv * delta^net
                if net == 0:
                    return RingValue(self.spec, poly=inv)
                if net > 0:
                    return RingValue(
                        self.spec,
                        poly=_times_delta(inv, self.spec.delta().poly, net),
                    )
                return RingValue(self.spec, poly=inv, delta_power=-net)
        raise ValueError(f"cannot invert {self!r}")

    def __repr__(self) -> str:
        if self.rational is not None:
            return str(self.rational)
        if self.delta_power:
            return f"({self.poly!r})/delta^{self.delta_power}"
        return repr(self.poly)

    # -- serialization ----------------------------------------------------

    def to_json(self):
        if self.rational is not None:
            return f"{self.rational.numerator}/{self.rational.denominator}"
        obj = {
            "terms": [
                {"exp": list(e), "coef": str(c)}
                for e, c in sorted(self.poly.terms.items())
            ]
        }
        if self.delta_power:
            obj["deltaPower"] = self.delta_power
        return obj


def _times_delta(p: LaurentPoly, d: LaurentPoly, n: int) -> LaurentPoly:
    for _ in range(n):
        p = p * d
    return p


Scalar = Union[int, Fraction]


def apply_hom(value: RingValue, assignment: Mapping[str, RingValue],
              target: RingSpec) -> RingValue:
    """Apply the ring homomorphism sending each variable to its assignment.

    Every variable of the source must be assigned; images of invertible
    variables must be units in the target, and in localized mode the image
    of delta must be invertible (checked by attempting the inversion).
    """
    spec = value.spec
    if value.rational is not None:
        if target.mode != "point":
            raise ValueError("rational values only map to point rings")
        return RingValue(target, rational=value.rational)
    names = spec.vars.names
    for nm, ok in zip(names, spec.vars.invertible):
        if nm not in assignment:
            raise ValueError(f"missing assignment for {nm}")
        if ok:
            assignment[nm].inverse()  # raises if not a unit
    images = {}
    for nm in names:
        img = assignment[nm]
        if img.spec != target:
            raise ValueError("assignment lands in the wrong ring")
        images[nm] = img
    acc = target.zero()
    for exp, coef in value.poly.terms.items():
        term = target.integer(coef)
        for nm, x in zip(names, exp):
            if x == 0:
                continue
            base = images[nm] if x > 0 else images[nm].inverse()
            for _ in range(abs(x)):
                term = term * base
        acc = acc + term
    if value.delta_power:
        qimg = images["q"]
        dimg = qimg - qimg.inverse()
        if dimg.is_zero():
            raise ZeroDivisionError("delta maps to zero")
        try:
            dinv = dimg.inverse()
        except ValueError:
            if target.localized and dimg == target.delta():
                dinv = RingValue(target, poly=LaurentPoly.constant(target.vars, 1),
                                 delta_power=1)
            else:
                raise
        for _ in range(value.delta_power):
            acc = acc * dinv
    return acc
