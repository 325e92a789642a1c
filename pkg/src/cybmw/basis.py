"""Basis combinatorics for the cyclotomic BMW algebra.

A basis index is either an Ariki-Koike monomial-and-permutation core
('a', c, w) or a nested pair of alpha chains ('c', (i, j, s), inner,
(g, h, t)) where inner is a basis index two strands down.  The left chain
(i, j, s) sits at l-value level-1 and expands to Y_i'^s X_i..X_{j-1}
e_j..e_{level-1}; the right chain is starred, at l-value level-2.
"""

from __future__ import annotations

from typing import Iterator, List, Sequence, Tuple

Token = Tuple  # ('Y', +-1) | ('X', i, +-1) | ('E', i)
Perm = Tuple[int, ...]


def P_range(k: int) -> range:
    """The window of k consecutive chain exponents {floor(k/2)-(k-1), ..,
    floor(k/2)}."""
    top = k // 2
    return range(top - (k - 1), top + 1)


# ---------------------------------------------------------------------------
# permutations (tuples w with w[i-1] = w(i); product u*v applies v first)
# ---------------------------------------------------------------------------

def perm_id(n: int) -> Perm:
    return tuple(range(1, n + 1))


def perm_mul(u: Perm, v: Perm) -> Perm:
    return tuple(u[v[i] - 1] for i in range(len(v)))


def perm_inv(w: Perm) -> Perm:
    out = [0] * len(w)
    for i, x in enumerate(w):
        out[x - 1] = i + 1
    return tuple(out)


def perm_len(w: Perm) -> int:
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def perm_right_s(w: Perm, j: int) -> Perm:
    """w * s_j (swap the values at positions j, j+1)."""
    out = list(w)
    out[j - 1], out[j] = out[j], out[j - 1]
    return tuple(out)


def perm_left_s(w: Perm, j: int) -> Perm:
    """s_j * w (swap the values j, j+1 wherever they appear)."""
    out = [j + 1 if x == j else (j if x == j + 1 else x) for x in w]
    return tuple(out)


def desc_perm(l: int, j: int) -> Perm:
    """The descent coset leader c_j = s_{l-1} s_{l-2} .. s_j of S_l
    (identity when j = l): sends j to l and x to x-1 for j < x <= l."""
    return tuple(l if x == j else (x - 1 if j < x <= l else x)
                 for x in range(1, l + 1))


def perm_strip(w: Perm) -> Tuple[Perm, int]:
    """Factor w = u * c_j with u fixing l; returns (u truncated to l-1, j)."""
    l = len(w)
    j = perm_inv(w)[l - 1]
    if j == l:
        return w[: l - 1], l
    cinv = tuple(j if x == l else (x + 1 if j <= x < l else x)
                 for x in range(1, l + 1))
    u = perm_mul(w, cinv)
    return u[: l - 1], j


def perm_embed(u: Perm, l: int) -> Perm:
    return tuple(u) + tuple(range(len(u) + 1, l + 1))


def perm_join(u: Perm, j: int, l: int) -> Perm:
    """Inverse of perm_strip: w = embed(u) * c_j."""
    return perm_mul(perm_embed(u, l), desc_perm(l, j))


def perm_word(w: Perm) -> List[int]:
    """Canonical reduced word via descent staging (indices of s_i)."""
    if len(w) <= 1:
        return []
    u, j = perm_strip(w)
    return perm_word(u) + list(range(len(w) - 1, j - 1, -1))


def perm_all(n: int) -> Iterator[Perm]:
    import itertools
    for w in itertools.permutations(range(1, n + 1)):
        yield w


# ---------------------------------------------------------------------------
# words
# ---------------------------------------------------------------------------

def y_word(i: int, p: int) -> List[Token]:
    """Tokens of Y_i'^p = (X_{i-1}..X_1 Y X_1..X_{i-1})^p (inverses for p<0)."""
    if p == 0:
        return []
    sgn = 1 if p > 0 else -1
    if sgn > 0:
        unit = ([("X", a, 1) for a in range(i - 1, 0, -1)] + [("Y", 1)]
                + [("X", a, 1) for a in range(1, i)])
    else:
        unit = ([("X", a, -1) for a in range(i - 1, 0, -1)] + [("Y", -1)]
                + [("X", a, -1) for a in range(1, i)])
    return unit * abs(p)


def left_chain_word(i: int, j: int, s: int, lval: int) -> List[Token]:
    """alpha_{i,j,lval}^s = Y_i'^s X_i..X_{j-1} e_j..e_lval."""
    return (y_word(i, s)
            + [("X", a, 1) for a in range(i, j)]
            + [("E", a) for a in range(j, lval + 1)])


def right_chain_word(g: int, h: int, t: int, lval: int) -> List[Token]:
    """(alpha_{g,h,lval}^t)^* = e_lval..e_h X_{h-1}..X_g Y_g'^t."""
    return ([("E", a) for a in range(lval, h - 1, -1)]
            + [("X", a, 1) for a in range(h - 1, g - 1, -1)]
            + y_word(g, t))


def star_token(tok: Token) -> Token:
    return tok  # the anti-involution fixes Y, X_i, e_i (inverses to inverses)


def star_word(word: Sequence[Token]) -> List[Token]:
    return [star_token(t) for t in reversed(word)]


# ---------------------------------------------------------------------------
# basis indices
# ---------------------------------------------------------------------------

def ak_index(c: Sequence[int], w: Perm):
    return ("a", tuple(c), tuple(w))


def chain_index(left, inner, right):
    return ("c", tuple(left), inner, tuple(right))


def level(idx) -> int:
    if idx[0] == "a":
        return len(idx[1])
    return level(idx[2]) + 2


def left_top(idx) -> int:
    """Top left-chain position (0 if no chains)."""
    return 0 if idx[0] == "a" else idx[1][0]


def right_top(idx) -> int:
    return 0 if idx[0] == "a" else idx[3][0]


def num_chains(idx) -> int:
    return 0 if idx[0] == "a" else 1 + num_chains(idx[2])


def validate(idx, l: int, k: int) -> None:
    P = P_range(k)
    if idx[0] == "a":
        c, w = idx[1], idx[2]
        assert len(c) == l and len(w) == l, (idx, l)
        assert all(0 <= x < k for x in c), idx
        assert sorted(w) == list(range(1, l + 1)), idx
        return
    (i, j, s), inner, (g, h, t) = idx[1], idx[2], idx[3]
    assert l >= 2, idx
    assert 1 <= i <= j <= l - 1, (idx, l)
    assert 1 <= g <= h <= l - 1, (idx, l)
    assert s in P and t in P, (idx, k)
    assert i > left_top(inner) and g > right_top(inner), idx
    validate(inner, l - 2, k)


def word_of(idx, l: int) -> List[Token]:
    if idx[0] == "a":
        c, w = idx[1], idx[2]
        if l == 0:
            return []
        u, j = perm_strip(w)
        return (word_of(ak_index(c[:-1], u), l - 1)
                + y_word(l, c[-1])
                + [("X", a, 1) for a in range(l - 1, j - 1, -1)])
    (i, j, s), inner, (g, h, t) = idx[1], idx[2], idx[3]
    return (left_chain_word(i, j, s, l - 1)
            + word_of(inner, l - 2)
            + right_chain_word(g, h, t, l - 2))


def enumerate_basis(n: int, k: int, guard: int = 10 ** 6) -> List:
    """All basis indices, m ascending, deterministic order; the count is
    k^n (2n-1)!!."""
    expect = k ** n
    for m in range(2 * n - 1, 0, -2):
        expect *= m
    if expect > guard:
        raise ValueError(f"basis size {expect} exceeds guard {guard}")
    out = list(_enum(n, k))
    if len(out) != expect:
        raise AssertionError(
            f"basis enumeration produced {len(out)}, expected {expect}")
    return out


def _enum(l: int, k: int) -> Iterator:
    from itertools import product
    # m = 0 sector
    for c in product(range(k), repeat=l):
        for w in perm_all(l):
            yield ak_index(c, w)
    if l < 2:
        return
    P = list(P_range(k))
    for inner in _enum(l - 2, k):
        lt, rt = left_top(inner), right_top(inner)
        for i in range(lt + 1, l):
            for j in range(i, l):
                for g in range(rt + 1, l):
                    for h in range(g, l):
                        for s in P:
                            for t in P:
                                yield chain_index((i, j, s), inner, (g, h, t))


# ---------------------------------------------------------------------------
# the CLI word grammar: "Y", "Y^-1", "Xi", "Xi^-1", "ei"
# ---------------------------------------------------------------------------

def parse_word(text: str) -> List[Token]:
    toks: List[Token] = []
    for part in text.split():
        inv = part.endswith("^-1")
        core = part[:-3] if inv else part
        if core == "Y":
            toks.append(("Y", -1 if inv else 1))
        elif core.startswith("X"):
            toks.append(("X", int(core[1:]), -1 if inv else 1))
        elif core.startswith("e"):
            if inv:
                raise ValueError("e generators are not invertible")
            toks.append(("E", int(core[1:])))
        else:
            raise ValueError(f"bad token {part!r}")
    return toks


def format_word(word: Sequence[Token]) -> str:
    bits = []
    for t in word:
        if t[0] == "Y":
            bits.append("Y" if t[1] == 1 else "Y^-1")
        elif t[0] == "X":
            bits.append(f"X{t[1]}" + ("" if t[2] == 1 else "^-1"))
        else:
            bits.append(f"e{t[1]}")
    return " ".join(bits)


def format_index(idx) -> str:
    if idx[0] == "a":
        return f"ak(c={list(idx[1])}, w={list(idx[2])})"
    (i, j, s), inner, (g, h, t) = idx[1], idx[2], idx[3]
    return f"chain({i},{j};{s})*{format_index(inner)}*chain({g},{h};{t})^*"
