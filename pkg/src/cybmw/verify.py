"""Relation certification for the rewriting engine.

Every defining relation of the presentation, plus the derived identity
bank (the quadratic relation, e-X-e collapses, Y'-commutation, the
crossing/winding exchange family, and the support identities), is checked
as an exact operator identity: both sides are applied to every basis
element and compared coefficient-wise.  Zero tolerance.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from .basis import Token, enumerate_basis, y_word
from .engine import Element, Engine, _extend


def _apply(eng: Engine, word: Sequence[Token], idx) -> Element:
    return eng.nf_onto(eng.n, word, {idx: eng.params.one()})


def _apply_combo(eng: Engine, combo, idx) -> Element:
    """combo: list of (coeff, word); returns sum coeff * word * idx."""
    out: Element = {}
    for coeff, word in combo:
        _extend(out, _apply(eng, word, idx), coeff)
    return out


def _equal(eng: Engine, a: Element, b: Element) -> bool:
    keys = set(a) | set(b)
    z = eng.params.zero()
    return all((a.get(k2, z) - b.get(k2, z)).is_zero() for k2 in keys)


def relation_bank(eng: Engine) -> List[Tuple[str, list, list]]:
    """[(name, lhs_combo, rhs_combo)] with combos = [(coeff, word)]."""
    n, k, p = eng.n, eng.k, eng.params
    one, d, lam = p.one(), p.delta, p.lam
    X = lambda i, e=1: ("X", i, e)
    Eg = lambda i: ("E", i)
    Y = lambda e=1: ("Y", e)
    rels: List[Tuple[str, list, list]] = []

    def add(name, lhs, rhs):
        rels.append((name, lhs, rhs))

    for i in range(1, n):
        add(f"skein({i})", [(one, [X(i)]), (-one, [X(i, -1)])],
            [(d, []), (-d, [Eg(i)])])
        add(f"untwist.l({i})", [(one, [X(i), Eg(i)])], [(lam, [Eg(i)])])
        add(f"untwist.r({i})", [(one, [Eg(i), X(i)])], [(lam, [Eg(i)])])
        add(f"esq({i})", [(one, [Eg(i), Eg(i)])], [(p.A(0), [Eg(i)])])
        add(f"xi2({i})", [(one, [X(i), X(i)])],
            [(one, []), (d, [X(i)]), (-d * lam, [Eg(i)])])
    for i in range(1, n):
        for j in range(i + 2, n):
            add(f"braid2({i},{j})", [(one, [X(i), X(j)])],
                [(one, [X(j), X(i)])])
            add(f"xecomm({i},{j})", [(one, [X(i), Eg(j)])],
                [(one, [Eg(j), X(i)])])
            add(f"xecomm({j},{i})", [(one, [X(j), Eg(i)])],
                [(one, [Eg(i), X(j)])])
            add(f"eecomm({i},{j})", [(one, [Eg(i), Eg(j)])],
                [(one, [Eg(j), Eg(i)])])
    for i in range(1, n - 1):
        add(f"braid1({i})", [(one, [X(i), X(i + 1), X(i)])],
            [(one, [X(i + 1), X(i), X(i + 1)])])
        add(f"xxe.a({i})", [(one, [X(i), X(i + 1), Eg(i)])],
            [(one, [Eg(i + 1), Eg(i)])])
        add(f"xxe.b({i})", [(one, [X(i + 1), X(i), Eg(i + 1)])],
            [(one, [Eg(i), Eg(i + 1)])])
        add(f"xxe.c({i})", [(one, [Eg(i + 1), X(i), X(i + 1)])],
            [(one, [Eg(i + 1), Eg(i)])])
        add(f"xxe.d({i})", [(one, [Eg(i), X(i + 1), X(i)])],
            [(one, [Eg(i), Eg(i + 1)])])
        add(f"eee.a({i})", [(one, [Eg(i), Eg(i + 1), Eg(i)])],
            [(one, [Eg(i)])])
        add(f"eee.b({i})", [(one, [Eg(i + 1), Eg(i), Eg(i + 1)])],
            [(one, [Eg(i + 1)])])
        add(f"exe.a({i})", [(one, [Eg(i), X(i + 1), Eg(i)])],
            [(p.lam_inv, [Eg(i)])])
        add(f"exe.b({i})", [(one, [Eg(i + 1), X(i), Eg(i + 1)])],
            [(p.lam_inv, [Eg(i + 1)])])
    # the affine generator
    add("ycyclo", [(one, [Y()] * k)],
        [(p.qs[i2], [Y()] * i2) for i2 in range(k)])
    add("yinv", [(one, [Y(), Y(-1)])], [(one, [])])
    if n >= 2:
        add("braidb", [(one, [X(1), Y(), X(1), Y()])],
            [(one, [Y(), X(1), Y(), X(1)])])
        add("eyxy.l", [(one, [Y(), X(1), Y(), Eg(1)])],
            [(p.lam_inv, [Eg(1)])])
        add("eyxy.r", [(one, [Eg(1), Y(), X(1), Y()])],
            [(p.lam_inv, [Eg(1)])])
        for m in range(k):
            add(f"eye({m})", [(one, [Eg(1)] + [Y()] * m + [Eg(1)])],
                [(p.A(m), [Eg(1)])])
    for i in range(2, n):
        add(f"ycommx({i})", [(one, [Y(), X(i)])], [(one, [X(i), Y()])])
        add(f"ycomme({i})", [(one, [Y(), Eg(i)])], [(one, [Eg(i), Y()])])
    return rels


def derived_bank(eng: Engine) -> List[Tuple[str, list, list]]:
    n, k, p = eng.n, eng.k, eng.params
    one, d = p.one(), p.delta
    X = lambda i, e=1: ("X", i, e)
    Eg = lambda i: ("E", i)
    rels: List[Tuple[str, list, list]] = []

    def add(name, lhs, rhs):
        rels.append((name, lhs, rhs))

    def yw(i, pw):
        return y_word(i, pw)

    # prop1b / prop1c / prop1d / m9
    for j in range(1, n + 1):
        for i in range(1, n):
            if i not in (j, j - 1):
                add(f"prop1b.x({i},{j})", [(one, [X(i)] + yw(j, 1))],
                    [(one, yw(j, 1) + [X(i)])])
                add(f"prop1b.e({i},{j})", [(one, [Eg(i)] + yw(j, 1))],
                    [(one, yw(j, 1) + [Eg(i)])])
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            add(f"prop1c({i},{j})", [(one, yw(i, 1) + yw(j, 1))],
                [(one, yw(j, 1) + yw(i, 1))])
    for i in range(1, n):
        add(f"prop1d.l({i})", [(one, yw(i, 1) + [X(i)] + yw(i, 1) + [Eg(i)])],
            [(p.lam_inv, [Eg(i)])])
        add(f"prop1d.r({i})", [(one, [Eg(i)] + yw(i, 1) + [X(i)] + yw(i, 1))],
            [(p.lam_inv, [Eg(i)])])
        for pw in range(-k, k + 1):
            add(f"m9.l({i},{pw})", [(one, [Eg(i)] + yw(i + 1, pw))],
                [(one, [Eg(i)] + yw(i, -pw))])
            add(f"m9.r({i},{pw})", [(one, yw(i + 1, pw) + [Eg(i)])],
                [(one, yw(i, -pw) + [Eg(i)])])
    # ep2 / XXp1
    for i in range(1, n - 2):
        run = [Eg(i), Eg(i + 1), Eg(i + 2)]
        for nm, gl, gr in (("x", [X(i)], [X(i + 2)]),
                           ("e", [Eg(i)], [Eg(i + 2)]),
                           ("y", yw(i, 1), yw(i + 2, 1))):
            add(f"ep2.{nm}({i})", [(one, run + gl)], [(one, gr + run)])
    for i in range(1, n - 1):
        for nm, gl, gr in (("x", [X(i)], [X(i + 1)]),
                           ("e", [Eg(i)], [Eg(i + 1)])):
            add(f"XXp1.{nm}({i})", [(one, [X(i), X(i + 1)] + gl)],
                [(one, gr + [X(i), X(i + 1)])])
    # the exchange identities (magic, m2, m5, m6, m10..m13) for 0 <= p <= k
    for i in range(1, n):
        for pw in range(0, k + 1):
            lhs = [(one, [X(i)] + yw(i, pw))]
            rhs = [(one, yw(i + 1, pw) + [X(i)])]
            for s in range(1, pw + 1):
                rhs.append((-d, yw(i + 1, s) + yw(i, pw - s)))
                rhs.append((d, yw(i + 1, s) + [Eg(i)] + yw(i, pw - s)))
            add(f"magic({i},{pw})", lhs, rhs)
            lhs = [(one, [X(i)] + yw(i, -pw))]
            rhs = [(one, yw(i + 1, -pw) + [X(i)])]
            for s in range(1, pw + 1):
                rhs.append((d, yw(i + 1, s - pw) + yw(i, -s)))
                rhs.append((-d, yw(i + 1, s - pw) + [Eg(i)] + yw(i, -s)))
            add(f"m2({i},{pw})", lhs, rhs)
            lhs = [(one, [X(i)] + yw(i + 1, pw))]
            rhs = [(one, yw(i, pw) + [X(i)])]
            for s in range(1, pw + 1):
                rhs.append((d, yw(i, pw - s) + yw(i + 1, s)))
                rhs.append((-d, yw(i, pw - s) + [Eg(i)] + yw(i + 1, s)))
            add(f"m5({i},{pw})", lhs, rhs)
            lhs = [(one, [X(i)] + yw(i + 1, -pw))]
            rhs = [(one, yw(i, -pw) + [X(i)])]
            for s in range(1, pw + 1):
                rhs.append((-d, yw(i, -s) + yw(i + 1, s - pw)))
                rhs.append((d, yw(i, -s) + [Eg(i)] + yw(i + 1, s - pw)))
            add(f"m6({i},{pw})", lhs, rhs)
            if pw >= 1:
                lhs = [(one, [X(i)] + yw(i, pw) + [X(i)])]
                rhs = [(one, yw(i + 1, pw))]
                for s in range(1, pw):
                    rhs.append((-d, yw(i + 1, s) + yw(i, pw - s) + [X(i)]))
                    rhs.append((d, yw(i + 1, s) + [Eg(i)] + yw(i, pw - s)
                                + [X(i)]))
                add(f"m10({i},{pw})", lhs, rhs)
                lhs = [(one, [X(i)] + yw(i, -pw) + [X(i)])]
                rhs = [(one, yw(i + 1, -pw))]
                for s in range(0, pw + 1):
                    rhs.append((d, yw(i + 1, s - pw) + yw(i, -s) + [X(i)]))
                    rhs.append((-d, yw(i + 1, s - pw) + [Eg(i)] + yw(i, -s)
                                + [X(i)]))
                add(f"m12({i},{pw})", lhs, rhs)
    return rels


def verify_relations(eng: Engine, include_derived: bool = True,
                     progress=None) -> Dict[str, bool]:
    basis = enumerate_basis(eng.n, eng.k)
    rels = relation_bank(eng)
    if include_derived:
        rels += derived_bank(eng)
    report: Dict[str, bool] = {}
    for name, lhs, rhs in rels:
        ok = True
        for idx in basis:
            la = _apply_combo(eng, lhs, idx)
            ra = _apply_combo(eng, rhs, idx)
            if not _equal(eng, la, ra):
                ok = False
                break
        report[name] = ok
        if progress is not None:
            progress(name, ok)
    return report
