"""GroupSpec: a small grammar naming every group family used in the bounds.

Grammar (whitespace separated; ``×``, ``x`` and ``*`` all mean direct product)::

    expr    := term (('×' | 'x' | '*') term)*
    term    := 'C' m (':' | '⋊') 'C' n '@' b        semidirect, generator acts by x -> x^b
             | 'MAT' q (':' | '⋊') 'C' p ['@' f]    C_q x C_q with C_p acting by companion(f)
             | atom
    atom    := 'C' n | 'GL2' p | 'Sym' k | 'Alt' k | 'Q8' | 'Fermat' n | '(' expr ')'

``f`` is a monic quadratic such as ``x^2+x+1``; when omitted the least
irreducible quadratic factor of the p-th cyclotomic polynomial mod q is used.
``Fermat n`` is ``(C_n)^3 / diagonal ⋊ Sym 3`` (coordinates permuted), of
order ``6 n^2``; ``Fermat 4`` is the order-96 group acting in genus 3.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

from .errors import InvalidTwist, NotIrreducible, SizeCap, SpecSyntaxError
from .groups import FiniteGroup, default_cap
from .numtheory import is_prime

# ---------------------------------------------------------------------------
# builders


def from_elements(
    elements: Sequence[Hashable],
    mul: Callable,
    identity: Hashable,
    label: Callable[[Hashable], str] = str,
    name: str | None = None,
    cap: int | None = None,
) -> FiniteGroup:
    """Tabulate a group from an explicit element list (identity moved to index 0)."""
    elements = [identity] + [x for x in elements if x != identity]
    index = {x: i for i, x in enumerate(elements)}
    if len(index) != len(elements):
        raise ValueError("duplicate elements")
    cap = default_cap() if cap is None else cap
    if len(elements) > cap:
        raise SizeCap(f"group of order {len(elements)} exceeds cap {cap}")
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    return FiniteGroup(table, [label(x) for x in elements], name=name, cap=cap)


def from_generators(gens, mul, identity, label=str, name=None, cap=None) -> FiniteGroup:
    cap = default_cap() if cap is None else cap
    elems = [identity]
    seen = {identity}
    for a in elems:
        for g in gens:
            b = mul(a, g)
            if b not in seen:
                seen.add(b)
                elems.append(b)
                if len(elems) > cap:
                    raise SizeCap(f"generated group exceeds cap {cap}")
    return from_elements(elems, mul, identity, label, name, cap)


def cyclic(n: int, cap: int | None = None) -> FiniteGroup:
    if n < 1:
        raise SpecSyntaxError("C n needs n >= 1")
    return from_elements(range(n), lambda a, b: (a + b) % n, 0, name=f"C{n}", cap=cap)


def direct_product(G: FiniteGroup, H: FiniteGroup, cap: int | None = None) -> FiniteGroup:
    cap = default_cap() if cap is None else cap
    if G.n * H.n > cap:
        raise SizeCap(f"group of order {G.n * H.n} exceeds cap {cap}")
    elems = [(a, b) for a in range(G.n) for b in range(H.n)]
    return from_elements(
        elems,
        lambda x, y: (G.table[x[0]][y[0]], H.table[x[1]][y[1]]),
        (G.identity, H.identity),
        lambda x: f"({G.labels[x[0]]},{H.labels[x[1]]})",
        name=f"{G.name} x {H.name}",
        cap=cap,
    )


def cyclic_semidirect(m: int, n: int, b: int, cap: int | None = None) -> FiniteGroup:
    """``C_m ⋊ C_n`` with the generator of ``C_n`` acting by ``x -> x^b``."""
    if m < 1 or n < 1:
        raise SpecSyntaxError("semidirect factors must be positive")
    if math.gcd(b, m) != 1 or pow(b, n, m) != 1 % m:
        raise InvalidTwist(f"{b}^{n} is not 1 mod {m} (or {b} is not a unit)")
    cap = default_cap() if cap is None else cap
    if m * n > cap:
        raise SizeCap(f"group of order {m * n} exceeds cap {cap}")
    powers = [pow(b, k, m) for k in range(n)]
    elems = [(x, y) for y in range(n) for x in range(m)]
    return from_elements(
        elems,
        lambda u, v: ((u[0] + powers[u[1]] * v[0]) % m, (u[1] + v[1]) % n),
        (0, 0),
        lambda u: f"a^{u[0]}b^{u[1]}",
        name=f"C{m}:C{n}@{b}",
        cap=cap,
    )


def _mat_mul(A, B, p):
    return (
        (A[0][0] * B[0][0] + A[0][1] * B[1][0]) % p,
        (A[0][0] * B[0][1] + A[0][1] * B[1][1]) % p,
    ), (
        (A[1][0] * B[0][0] + A[1][1] * B[1][0]) % p,
        (A[1][0] * B[0][1] + A[1][1] * B[1][1]) % p,
    )


def general_linear_2(p: int, cap: int | None = None) -> FiniteGroup:
    if not is_prime(p) or p > 7:
        raise SpecSyntaxError("GL2 p needs a prime p <= 7")
    cap = default_cap() if cap is None else cap
    size = (p * p - 1) * (p * p - p)
    if size > cap:
        raise SizeCap(f"GL2({p}) has order {size} > cap {cap}")
    elems = [
        ((a, b), (c, d))
        for a, b, c, d in itertools.product(range(p), repeat=4)
        if (a * d - b * c) % p
    ]
    return from_elements(
        elems,
        lambda A, B: _mat_mul(A, B, p),
        ((1, 0), (0, 1)),
        lambda A: f"[{A[0][0]} {A[0][1]};{A[1][0]} {A[1][1]}]",
        name=f"GL2({p})",
        cap=cap,
    )


def _perm_mul(p, q):
    # apply p, then q
    return tuple(q[i] for i in p)


def _is_even(p) -> bool:
    inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inversions % 2 == 0


def symmetric(k: int, alternating: bool = False, cap: int | None = None) -> FiniteGroup:
    if not 1 <= k <= 5:
        raise SpecSyntaxError("Sym/Alt k needs 1 <= k <= 5")
    elems = [p for p in itertools.permutations(range(k)) if not alternating or _is_even(p)]
    return from_elements(
        elems,
        _perm_mul,
        tuple(range(k)),
        lambda p: "".join(str(i + 1) for i in p),
        name=f"{'Alt' if alternating else 'Sym'}{k}",
        cap=cap,
    )


def _quat_mul(x, y):
    a1, b1, c1, d1 = x
    a2, b2, c2, d2 = y
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def quaternion(cap: int | None = None) -> FiniteGroup:
    names = {(1, 0, 0, 0): "1", (0, 1, 0, 0): "i", (0, 0, 1, 0): "j", (0, 0, 0, 1): "k"}

    def label(q):
        if q in names:
            return names[q]
        return "-" + names[tuple(-c for c in q)]

    return from_generators(
        [(0, 1, 0, 0), (0, 0, 1, 0)], _quat_mul, (1, 0, 0, 0), label, name="Q8", cap=cap
    )


# -- C_q x C_q ⋊ C_p via a companion matrix -----------------------------------


def parse_quadratic(text: str) -> tuple[int, int]:
    """``x^2+a*x+b`` (any term order) -> ``(a, b)``; only monic quadratics."""
    s = text.replace(" ", "").replace("*", "")
    if not s:
        raise SpecSyntaxError("empty polynomial")
    coeffs = {0: 0, 1: 0, 2: 0}
    for sign, coef, var, power in re.findall(r"([+-]?)(\d*)(x?)(?:\^(\d+))?", s):
        if not coef and not var:
            continue
        c = int(coef) if coef else 1
        if sign == "-":
            c = -c
        deg = (int(power) if power else 1) if var else 0
        if deg not in coeffs:
            raise SpecSyntaxError(f"degree {deg} term in {text!r}")
        coeffs[deg] += c
    if coeffs[2] != 1:
        raise SpecSyntaxError(f"{text!r} is not a monic quadratic")
    return coeffs[1], coeffs[0]


def _poly_divides(divisor: list[int], poly: list[int], q: int) -> bool:
    """Coefficient lists are low-to-high; divisor must be monic."""
    rem = [c % q for c in poly]
    d = len(divisor) - 1
    for i in range(len(rem) - 1, d - 1, -1):
        c = rem[i]
        if c:
            for j in range(d + 1):
                rem[i - d + j] = (rem[i - d + j] - c * divisor[j]) % q
    return not any(rem[:d])


def check_cyclotomic_factor(a: int, b: int, q: int, p: int) -> None:
    """Raise unless ``x^2 + a x + b`` is irreducible mod q and divides Phi_p mod q."""
    if any((x * x + a * x + b) % q == 0 for x in range(q)):
        raise NotIrreducible(f"x^2+{a}x+{b} has a root mod {q}")
    if not _poly_divides([b % q, a % q, 1], [1] * p, q):
        raise NotIrreducible(f"x^2+{a}x+{b} does not divide the {p}-th cyclotomic polynomial mod {q}")


def default_quadratic(q: int, p: int) -> tuple[int, int]:
    for a in range(q):
        for b in range(q):
            try:
                check_cyclotomic_factor(a, b, q, p)
            except NotIrreducible:
                continue
            return a, b
    raise NotIrreducible(f"the {p}-th cyclotomic polynomial has no irreducible quadratic factor mod {q}")


def matrix_semidirect(q: int, p: int, poly: tuple[int, int] | None = None, cap: int | None = None) -> FiniteGroup:
    """``(C_q x C_q) ⋊ C_p`` with ``C_p`` acting by the companion matrix of ``poly``."""
    if not (is_prime(q) and is_prime(p)):
        raise SpecSyntaxError("MAT q : C p needs primes q and p")
    a, b = poly if poly is not None else default_quadratic(q, p)
    check_cyclotomic_factor(a, b, q, p)
    cap = default_cap() if cap is None else cap
    if q * q * p > cap:
        raise SizeCap(f"group of order {q * q * p} exceeds cap {cap}")
    # companion matrix of x^2 + a x + b acting on column vectors
    mats = [((1, 0), (0, 1))]
    A = ((0, (-b) % q), (1, (-a) % q))
    for _ in range(1, p):
        mats.append(_mat_mul(A, mats[-1], q))

    def act(k, v):
        M = mats[k]
        return ((M[0][0] * v[0] + M[0][1] * v[1]) % q, (M[1][0] * v[0] + M[1][1] * v[1]) % q)

    def mul(u, w):
        v = act(u[1], w[0])
        return (((u[0][0] + v[0]) % q, (u[0][1] + v[1]) % q), (u[1] + w[1]) % p)

    elems = [((x, y), k) for k in range(p) for x in range(q) for y in range(q)]
    return from_elements(
        elems, mul, ((0, 0), 0), lambda u: f"({u[0][0]},{u[0][1]};{u[1]})",
        name=f"(C{q}xC{q}):C{p}", cap=cap,
    )


def fermat(n: int, cap: int | None = None) -> FiniteGroup:
    """``(C_n)^3 / diagonal ⋊ Sym 3``; elements stored with last coordinate 0."""
    if n < 1:
        raise SpecSyntaxError("Fermat n needs n >= 1")
    cap = default_cap() if cap is None else cap
    if 6 * n * n > cap:
        raise SizeCap(f"group of order {6 * n * n} exceeds cap {cap}")
    perms = list(itertools.permutations(range(3)))

    def norm(v):
        return ((v[0] - v[2]) % n, (v[1] - v[2]) % n, 0)

    def act(s, v):
        # coordinate i moves to position s[i]
        w = [0, 0, 0]
        for i in range(3):
            w[s[i]] = v[i]
        return w

    def mul(x, y):
        v, s = x
        w, t = y
        moved = act(s, w)
        # compose: first t then s on positions
        st = tuple(s[t[i]] for i in range(3))
        return norm([a + b for a, b in zip(v, moved)]), st

    elems = [((a, b, 0), s) for s in perms for a in range(n) for b in range(n)]
    return from_elements(
        elems, mul, ((0, 0, 0), (0, 1, 2)),
        lambda x: f"({x[0][0]},{x[0][1]};{''.join(str(i + 1) for i in x[1])})",
        name=f"Fermat{n}", cap=cap,
    )


# ---------------------------------------------------------------------------
# parser


@dataclass
class _Tok:
    kind: str  # 'word', 'num', 'op', 'arg'
    text: str


_ATOMS = ("GL2", "Sym", "Alt", "Q8", "MAT", "Fermat", "C")


def _tokenize(spec: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i = 0
    want_arg = False
    while i < len(spec):
        c = spec[i]
        if c.isspace():
            i += 1
            continue
        if c in "()×⋊:@*":
            toks.append(_Tok("op", c))
            want_arg = c == "@"
            i += 1
            continue
        j = i
        while j < len(spec) and not spec[j].isspace() and spec[j] not in "()×⋊:@":
            j += 1
        run = spec[i:j]
        i = j
        if want_arg:
            toks.append(_Tok("arg", run))
            want_arg = False
            continue
        # "C3xC3" is a product; the x only splits between a digit and an atom name
        for k, piece in enumerate(_GLUED_PRODUCT.split(run)):
            if k:
                toks.append(_Tok("op", "×"))
            toks.extend(_word_tokens(piece, spec))
    return toks


_GLUED_PRODUCT = re.compile(r"(?<=\d)x(?=[A-Z])")


def _word_tokens(run: str, spec: str) -> list[_Tok]:
    if run == "x":
        return [_Tok("op", "×")]
    if run.isdigit():
        return [_Tok("num", run)]
    for name in _ATOMS:
        if run.startswith(name) and (run == name or run[len(name):].isdigit()):
            return [_Tok("word", name)] + ([_Tok("num", run[len(name):])] if run != name else [])
    raise SpecSyntaxError(f"unknown token {run!r} in {spec!r}")


class _Parser:
    def __init__(self, spec: str, cap: int | None):
        self.spec = spec
        self.toks = _tokenize(spec)
        self.pos = 0
        self.cap = cap

    def peek(self) -> _Tok | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, kind: str, text: str | None = None) -> _Tok:
        tok = self.peek()
        if tok is None or tok.kind != kind or (text is not None and tok.text != text):
            want = text or kind
            raise SpecSyntaxError(f"expected {want} at token {self.pos} of {self.spec!r}")
        self.pos += 1
        return tok

    def number(self) -> int:
        return int(self.take("num").text)

    def parse(self) -> FiniteGroup:
        G = self.expr()
        if self.peek() is not None:
            raise SpecSyntaxError(f"trailing input in {self.spec!r}")
        return G

    def expr(self) -> FiniteGroup:
        G = self.term()
        while (tok := self.peek()) is not None and tok.kind == "op" and tok.text in "×*":
            self.pos += 1
            G = direct_product(G, self.term(), cap=self.cap)
        return G

    def _is_semidirect(self) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == "op" and tok.text in ":⋊"

    def term(self) -> FiniteGroup:
        tok = self.peek()
        if tok is not None and tok.kind == "word" and tok.text in ("C", "MAT"):
            word = self.take("word").text
            m = self.number()
            if self._is_semidirect():
                self.pos += 1
                self.take("word", "C")
                n = self.number()
                if word == "C":
                    self.take("op", "@")
                    arg = self.take("arg").text
                    try:
                        b = int(arg)
                    except ValueError:
                        raise SpecSyntaxError(f"twist must be an integer, got {arg!r}") from None
                    return cyclic_semidirect(m, n, b, cap=self.cap)
                poly = None
                if (nxt := self.peek()) is not None and nxt.kind == "op" and nxt.text == "@":
                    self.pos += 1
                    poly = parse_quadratic(self.take("arg").text)
                return matrix_semidirect(m, n, poly, cap=self.cap)
            if word == "MAT":
                raise SpecSyntaxError("MAT q must be followed by ': C p'")
            return cyclic(m, cap=self.cap)
        return self.atom()

    def atom(self) -> FiniteGroup:
        tok = self.peek()
        if tok is None:
            raise SpecSyntaxError(f"unexpected end of {self.spec!r}")
        if tok.kind == "op" and tok.text == "(":
            self.pos += 1
            G = self.expr()
            self.take("op", ")")
            return G
        word = self.take("word").text
        if word == "Q8":
            return quaternion(cap=self.cap)
        k = self.number()
        if word == "GL2":
            return general_linear_2(k, cap=self.cap)
        if word == "Sym":
            return symmetric(k, cap=self.cap)
        if word == "Alt":
            return symmetric(k, alternating=True, cap=self.cap)
        if word == "Fermat":
            return fermat(k, cap=self.cap)
        raise SpecSyntaxError(f"unexpected {word!r} in {self.spec!r}")


def construct(spec: str, cap: int | None = None) -> FiniteGroup:
    """Build and verify the group named by a GroupSpec string."""
    G = _Parser(spec, cap).parse()
    G.name = spec.strip()
    return G


def load_group(source: str, cap: int | None = None) -> FiniteGroup:
    """A GroupSpec string, or a path to a table file."""
    from pathlib import Path

    path = Path(source)
    if path.suffix in (".txt", ".grp", ".tbl") or path.is_file():
        return FiniteGroup.from_file(path)
    return construct(source, cap=cap)
