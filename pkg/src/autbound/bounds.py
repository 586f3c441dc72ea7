"""Queryable registry of order bounds, attainability predicates and witness recipes.

The registry itself lives in ``data/registry.yaml``; this module parses it,
matches queries against it and evaluates the arithmetic predicates the
records name.  A query ``(class, context, g)`` collects every record whose
class contains the queried class and whose context is implied by the query,
and reports the least value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any, Callable

import yaml

from .errors import InvalidContext, NoRecipe, NoRule
from .numtheory import (
    factorize,
    iroot,
    is_power_of,
    is_prime,
    only_primes,
    prime_divisors,
    smallest_prime,
    solve_b,
    valuation,
)
from .signature import Signature

# Each class lists the classes that contain it.  Bounds for a container class
# are valid for every member, so queries inherit them.
CLASS_PARENTS: dict[str, tuple[str, ...]] = {
    "general": (),
    "solvable": ("general",),
    "supersolvable": ("clt", "nilpotent_commutator", "odd_elements_subgroup"),
    "nilpotent": ("supersolvable",),
    "metabelian": ("solvable", "nilpotent_commutator"),
    "metacyclic": ("metabelian",),
    "z_group": ("metacyclic",),
    "square_free": ("z_group",),
    "abelian": ("nilpotent", "metabelian"),
    "cyclic": ("abelian", "z_group"),
    "clt": ("solvable",),
    "nilpotent_commutator": ("solvable",),
    "odd_elements_subgroup": ("solvable",),
    "odd_commutator": ("odd_elements_subgroup",),
    "order_2_mod_4": ("odd_elements_subgroup",),
    "exponent": (),
}

CLASSES = tuple(CLASS_PARENTS)

YES, NO, NECESSARY, UNKNOWN = "yes", "no", "necessary_conditions_hold", "unknown"


@lru_cache(maxsize=None)
def ancestors(cls: str) -> frozenset[str]:
    """``cls`` together with every class containing it."""
    if cls not in CLASS_PARENTS:
        raise NoRule(f"unknown class {cls!r}; known: {', '.join(CLASSES)}")
    out = {cls}
    for parent in CLASS_PARENTS[cls]:
        out |= ancestors(parent)
    return frozenset(out)


# ---------------------------------------------------------------------------
# context


@dataclass(frozen=True)
class ClassContext:
    """Side conditions on ``|G|``: parity, smallest prime, two-prime or prime-power order."""

    parity: str = "any"
    min_prime: int | None = None
    pq: tuple[int | None, int | None] | None = None
    p_group: int | None = None
    not_divisible_by_8: bool = False

    def __post_init__(self):
        if self.parity not in ("any", "odd"):
            raise InvalidContext(f"parity must be 'any' or 'odd', got {self.parity!r}")
        for label, p in (("min_prime", self.min_prime), ("p_group", self.p_group)):
            if p is not None and not is_prime(p):
                raise InvalidContext(f"{label} must be prime, got {p}")
        if self.pq is not None:
            p, q = self.pq
            for x in (p, q):
                if x is not None and not is_prime(x):
                    raise InvalidContext(f"pq entries must be primes, got {self.pq}")
            if p is not None and q is not None and not p < q:
                raise InvalidContext(f"pq needs p < q, got {self.pq}")
            if self.p_group is not None:
                raise InvalidContext("an order cannot be both a prime power and of type (p,q)")
        if self.parity == "odd" and self.effective_min_prime == 2:
            raise InvalidContext("odd parity contradicts smallest prime 2")
        if self.min_prime is not None:
            implied = self.pq[0] if self.pq and self.pq[0] is not None else self.p_group
            if implied is not None and implied != self.min_prime:
                raise InvalidContext("min_prime disagrees with the prime-power or (p,q) data")

    @property
    def effective_min_prime(self) -> int | None:
        for p in (self.min_prime, self.p_group, self.pq[0] if self.pq else None):
            if p is not None:
                return p
        return 3 if self.parity == "odd" else None

    @property
    def is_odd(self) -> bool:
        p = self.effective_min_prime
        return self.parity == "odd" or (p is not None and p >= 3)

    def as_dict(self) -> dict[str, Any]:
        return {
            "parity": "odd" if self.is_odd else "any",
            "min_prime": self.min_prime,
            "pq": list(self.pq) if self.pq else None,
            "p_group": self.p_group,
            "not_divisible_by_8": self.not_divisible_by_8,
        }


def parse_pq(text: str) -> tuple[int | None, int | None]:
    """``"2,7"``, ``"3,."`` or ``".,11"``; a dot (or ``_``/``·``) leaves the prime free."""
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 2:
        raise InvalidContext(f"pq must look like 'p,q', got {text!r}")
    out = []
    for s in parts:
        if s in (".", "_", "·", "*", ""):
            out.append(None)
        else:
            try:
                out.append(int(s))
            except ValueError:
                raise InvalidContext(f"pq entry {s!r} is not an integer") from None
    if out == [None, None]:
        return (None, None)
    return out[0], out[1]


# ---------------------------------------------------------------------------
# rules


@dataclass(frozen=True)
class BoundRule:
    id: str
    cls: str
    context: dict[str, Any]
    formula: Any
    valid_from: int
    exceptions: Any
    attain: dict[str, Any]
    witness: str | None
    anchor: str

    # -- applicability ---------------------------------------------------------

    def primes_for(self, ctx: ClassContext) -> list[int | None] | None:
        """Values of the prime parameter this rule can be evaluated at, or None if it does not apply."""
        c = self.context
        if c.get("parity") == "odd" and not ctx.is_odd:
            return None
        if c.get("not_divisible_by_8") and not ctx.not_divisible_by_8:
            return None
        if "pq" in c:
            if ctx.pq is None:
                return None
            want = c["pq"] or {}
            p, q = ctx.pq
            if "p" in want and p != want["p"]:
                return None
            if "q" in want and q != want["q"]:
                return None
            if "q_at_least" in want and (q is None or q < want["q_at_least"]):
                return None
        if "p_group" in c:
            want = c["p_group"]
            if ctx.p_group is None:
                return None
            if isinstance(want, dict):
                return [ctx.p_group] if ctx.p_group >= want["at_least"] else None
            return [None] if ctx.p_group == want else None
        if "min_prime" in c:
            p = ctx.effective_min_prime
            lo = c["min_prime"]["at_least"]
            if p is None or p < lo:
                return None
            # membership with smallest prime >= p implies membership for every smaller prime
            return [x for x in range(lo, p + 1) if is_prime(x)]
        return [None]

    def narrowing(self, ctx: ClassContext, p: int | None) -> str | None:
        """Why ``ctx`` asks about fewer groups than this rule's attainment family, or None.

        Attainment families live in the rule's own context; they say nothing
        about a strictly narrower query.
        """
        c = self.context
        family_q = None
        if self.attain.get("kind") == "pq_tower":
            implied, family_q = PQ_SHAPES[self.attain["shape"]]
        elif p is not None:
            implied = p
        elif isinstance(c.get("p_group"), int):
            implied = c["p_group"]
        else:
            implied = 3 if c.get("parity") == "odd" else 2
        if (ctx.effective_min_prime or 2) > implied:
            return f"family has smallest prime {implied}, query needs at least {ctx.effective_min_prime}"
        if ctx.pq is not None:
            qp, qq = ctx.pq
            if "pq" not in c:
                return "query restricts to two-prime orders"
            if self.attain.get("kind") == "pq_tower":
                if (qp is not None and qp != implied) or (qq is not None and family_q not in (None, qq)):
                    return f"family is made of ({implied},{family_q or 'q'})-groups"
            else:
                want = c["pq"] or {}
                if (qp is not None and "p" not in want) or (qq is not None and "q" not in want):
                    return "query fixes a prime the rule leaves free"
        if ctx.p_group is not None and "p_group" not in c:
            return "query restricts to prime-power orders"
        if ctx.not_divisible_by_8 and not c.get("not_divisible_by_8"):
            return "query excludes orders divisible by 8"
        return None

    # -- evaluation --------------------------------------------------------------

    def formula_value(self, g: int, p: int | None) -> Fraction:
        f = self.formula
        if f == "prime_coefficient":
            return Fraction(2 * p, p - 3) * (g - 1)
        if "coefficient" in f:
            return Fraction(f["coefficient"]) * (g - 1)
        if "affine" in f:
            a, b = f["affine"]
            return Fraction(a) * g + Fraction(b)
        if "prime_affine" in f:
            return Fraction(2 * p, p - 1) * g + f["prime_affine"] * p
        raise ValueError(f"bad formula in rule {self.id}")  # pragma: no cover

    def exception_at(self, g: int, p: int | None) -> dict[str, Any] | None:
        exc = self.exceptions
        if g < self.valid_from:
            return {"genus": g, "value": "unknown"}
        if isinstance(exc, dict) and exc.get("family") == "prime_squares":
            for q in range(p + 1, 2 * p):
                if is_prime(q) and (q - 1) * (q - 2) // 2 == g:
                    return {"genus": g, "value": str(q * q), "group": f"C {q} x C {q}", "signature": f"(0;{q},{q},{q})"}
            return None
        for rec in exc or ():
            if rec["genus"] == g:
                return rec
        return None

    def formula_text(self, p: int | None = None) -> str:
        f = self.formula
        if f == "prime_coefficient":
            return f"2p/(p-3)*(g-1)" + (f" with p={p}" if p else "")
        if "coefficient" in f:
            return f"{f['coefficient']}*(g-1)"
        if "affine" in f:
            return f"{f['affine'][0]}*g+{f['affine'][1]}"
        k = f["prime_affine"]
        return f"2p/(p-1)*g+{k}p" + (f" with p={p}" if p else "")


def _load_rules() -> tuple[BoundRule, ...]:
    text = resources.files("autbound").joinpath("data/registry.yaml").read_text(encoding="utf-8")
    rules = []
    for rec in yaml.safe_load(text):
        if rec["class"] not in CLASS_PARENTS:
            raise ValueError(f"registry record {rec['id']} names unknown class {rec['class']}")
        rules.append(
            BoundRule(
                id=rec["id"],
                cls=rec["class"],
                context=rec.get("context") or {},
                formula=rec["formula"],
                valid_from=rec.get("valid_from", 2),
                exceptions=rec.get("exceptions"),
                attain=rec.get("attain") or {"kind": "unknown"},
                witness=rec.get("witness"),
                anchor=rec["anchor"],
            )
        )
    ids = [r.id for r in rules]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate registry ids")
    return tuple(rules)


@lru_cache(maxsize=1)
def registry() -> tuple[BoundRule, ...]:
    return _load_rules()


# ---------------------------------------------------------------------------
# attainability predicates: (g, p, ctx, params) -> (status, condition)


def _is_power(n: int, base: int) -> int | None:
    """k with ``n = base**k``, else None."""
    if n < 1 or not is_power_of(n, base):
        return None
    return valuation(n, base)


def _two_prime_exponents(n: int, p: int, q: int) -> tuple[int, int] | None:
    if n < 1 or not only_primes(n, {p, q}):
        return None
    return valuation(n, p), valuation(n, q)


def _attain_unknown(g, p, ctx, a):
    return UNKNOWN, "no attainability statement recorded"


def _attain_solvable_towers(g, p, ctx, a):
    n4 = iroot(g - 1, 4)
    if n4:
        return YES, f"g-1 = {n4}^4"
    if (g - 1) % 2 == 0 and (n6 := iroot((g - 1) // 2, 6)):
        return YES, f"g-1 = 2*{n6}^6"
    return UNKNOWN, "g-1 is neither n^4 nor 2n^6"


def _attain_supersolvable_eighteen(g, p, ctx, a):
    bad = [q for q in prime_divisors(g - 1) if q % 3 == 2] if g > 2 else []
    ok = (g - 1) % 9 == 0 and not bad
    cond = f"9 | g-1: {(g - 1) % 9 == 0}; primes = 2 mod 3 dividing g-1: {bad}"
    if ok:
        return YES, cond
    return (UNKNOWN if a.get("sufficient_only") else NO), cond


def _attain_power_of(g, p, ctx, a):
    base = a["base"]
    k = _is_power(g - 1, base)
    if k is not None:
        return YES, f"g-1 = {base}^{k}"
    return a.get("otherwise", UNKNOWN), f"g-1 = {g - 1} is not a power of {base}"


def _attain_metabelian_sixteen(g, p, ctx, a):
    n = g - 1
    e2 = valuation(n, 2)
    odd = n >> e2
    primes = prime_divisors(odd) if odd > 1 else []
    if e2 >= 1 and len(primes) <= 1:
        return YES, f"g-1 = 2^{e2} * {odd}"
    return UNKNOWN, "g-1 is not 2^(a+1) times an odd prime power"


def _attain_nilpotent_commutator_towers(g, p, ctx, a):
    k = _is_power(g - 1, 2)
    if k is not None and (k % 6 == 1 or k % 4 == 0):
        return YES, f"g-1 = 2^{k}"
    return UNKNOWN, "g-1 is not 2^(6n+1) or 2^(4n)"


def _five_n_twelve_odd(g) -> int | None:
    if (g - 1) % 5:
        return None
    n = iroot((g - 1) // 5, 12)
    return n if n and n % 2 else None


def _attain_odd_elements_thirty(g, p, ctx, a):
    if g % 10 != 6:
        return NO, f"g = {g % 10} mod 10, extremal actions need g = 6 mod 10"
    if n := _five_n_twelve_odd(g):
        return YES, f"g = 5*{n}^12 + 1 with {n} odd"
    return NECESSARY, "g = 6 mod 10"


def _attain_clt_forty_eight(g, p, ctx, a):
    if not only_primes(g - 1, {2, 3}):
        return NO, "48(g-1) would not be a (2,3)-number"
    if g in (2, 3):
        return YES, "GL2(F_3) at g=2, (C4 x C4) : Sym3 at g=3"
    return UNKNOWN, "g-1 = 2^a 3^b; sharpness open"


def _attain_three_groups(g, p, ctx, a):
    k = _is_power(g - 1, 3)
    if k is None:
        return NO, "g-1 is not a power of 3"
    if k >= 2:
        return YES, f"g-1 = 3^{k}"
    return NECESSARY, f"g-1 = 3^{k}; only orders 3^n with n >= 4 are recorded"


def _attain_p_group_family(g, p, ctx, a):
    p = ctx.p_group
    N = Fraction(2 * p, p - 3) * (g - 1)
    if N.denominator == 1 and _is_power(N.numerator, p):
        return YES, f"2p(g-1)/(p-3) = {N} is a power of {p}"
    return NO, f"2p(g-1)/(p-3) = {N} is not a power of {p}"


def _attain_odd_fifteen(g, p, ctx, a):
    if (g - 1) % 2 == 0:
        return NO, "15(g-1) is even"
    if n := _five_n_twelve_odd(g):
        return YES, f"g = 5*{n}^12 + 1 with {n} odd"
    return NECESSARY, "15(g-1) is odd"


def _attain_seven_tower(g, p, ctx, a):
    if (g - 1) % 2 == 0 and (k := _is_power((g - 1) // 2, 7)) is not None:
        return YES, f"g = 2*7^{k} + 1, order 3*7^{k + 1}"
    return NO, "g is not 2*7^(n-1) + 1"


def _attain_metabelian_nine(g, p, ctx, a):
    if (g - 1) % 9 == 0 and all(q % 3 == 1 for q in prime_divisors((g - 1) // 9)):
        return YES, f"g = 9m + 1 with m = {(g - 1) // 9}, primes 1 mod 3"
    return UNKNOWN, "g is not 9m + 1 with every prime of m = 1 mod 3"


def _attain_metacyclic_odd(g, p, ctx, a):
    t = 2 * g + 1
    bad = [q for q in prime_divisors(t) if q % 3 == 2]
    if t % 9 == 0 or bad:
        return NO, f"2g+1 = {t}: divisible by 9: {t % 9 == 0}; primes = 2 mod 3: {bad}"
    return YES, f"2g+1 = {t}: not divisible by 9 and no prime = 2 mod 3"


def _attain_primes_one_mod_three(g, p, ctx, a):
    t = 2 * g + 1
    fac = factorize(t)
    ok = all(q % 3 == 1 for q, _ in fac)
    if a.get("distinct"):
        ok = ok and all(e == 1 for _, e in fac)
    cond = f"2g+1 = {t} = " + " * ".join(f"{q}^{e}" if e > 1 else str(q) for q, e in fac)
    return (YES if ok else NO), cond


def _attain_odd_abelian(g, p, ctx, a):
    if g % 6 == 1 and g >= 7:
        return YES, f"g = 6k + 1 with k = {(g - 1) // 6}"
    return UNKNOWN, "g is not 6k + 1"


def _attain_odd_cyclic(g, p, ctx, a):
    if g % 6 in (0, 4):
        return YES, f"g = {g % 6} mod 6"
    return UNKNOWN, "g is not 0 or 4 mod 6"


def _attain_five_tower(g, p, ctx, a):
    k = _is_power(g - 1, 5)
    if k is None:
        return NO, "g-1 is not a power of 5"
    if k % 12 == 1:
        return YES, f"g-1 = 5^{k}"
    return NECESSARY, f"g-1 = 5^{k}"


def _gp_cyclic_m(g, p):
    m = Fraction(2 * g, p - 1) + 1
    return m.numerator if m.denominator == 1 else None


def _attain_gp_cyclic(g, p, ctx, a):
    m = _gp_cyclic_m(g, p)
    if m and m > 1 and all(q > p for q in prime_divisors(m)):
        return YES, f"m = 2g/(p-1) + 1 = {m} has all primes > {p}"
    return UNKNOWN, "2g/(p-1) + 1 is not an integer > 1 with all primes > p"


def _gp_abelian_m(g, p):
    m = Fraction(2 * g, p - 1) + 2
    return m.numerator if m.denominator == 1 else None


def _attain_gp_abelian(g, p, ctx, a):
    m = _gp_abelian_m(g, p)
    if m and smallest_prime(m) == p:
        return YES, f"m = 2g/(p-1) + 2 = {m} has smallest prime {p}"
    return UNKNOWN, "2g/(p-1) + 2 is not an integer with smallest prime p"


@dataclass(frozen=True)
class _FamilyShape:
    order: int
    p_power: int | None  # n when order = p^n
    pq_prime: int | None  # q when order = p*q with q = 1 mod p
    macbeath_q: int | None  # q for the (C_q^e)^(p-1) : C_p family
    macbeath_sq_q: int | None  # q for the (C_q^e)^(2h) : (C_p x C_p) family


def _gp_shape(g: int, p: int) -> _FamilyShape | None:
    N = Fraction(2 * p, p - 3) * (g - 1)
    if N.denominator != 1:
        return None
    n = N.numerator
    if n % p or smallest_prime(n) < p:
        return None
    k = _is_power(n, p)
    rest = n // p
    pq = rest if is_prime(rest) and rest % p == 1 else None
    mac = mac_sq = None
    fac = factorize(rest)
    if len(fac) == 1 and fac[0][0] > p and fac[0][1] % (p - 1) == 0:
        mac = fac[0][0]
    h = p * (p - 3) // 2 + 1
    if rest % p == 0:
        fac2 = factorize(rest // p)
        if len(fac2) == 1 and fac2[0][0] > p and fac2[0][1] % (2 * h) == 0:
            mac_sq = fac2[0][0]
    return _FamilyShape(n, k, pq, mac, mac_sq)


def _attain_gp_family(g, p, ctx, a):
    s = _gp_shape(g, p)
    if s is None:
        return NO, f"2p(g-1)/(p-3) is not an integer divisible by {p} with all primes >= {p}"
    prof = a["profile"]
    order = s.order
    desc = f"|G| = {order}"
    others = [q for q in prime_divisors(order) if q != p]
    if prof == "nilpotent":
        return (YES, desc + " is a power of p") if s.p_power else (NO, desc + " is not a power of p")
    if prof == "square_free" and any(e > 1 for _, e in factorize(order)):
        return NO, desc + " is not square-free"
    if prof == "supersolvable" and any(q % p != 1 for q in others):
        return NO, desc + f" has a prime not = 1 mod {p}"
    small_p = s.p_power is not None and s.p_power <= 2
    hits = {
        "general": s.p_power is not None or s.pq_prime or s.macbeath_q or s.macbeath_sq_q,
        "supersolvable": s.p_power is not None
        or s.pq_prime
        or (s.macbeath_q and s.macbeath_q % p == 1)
        or (s.macbeath_sq_q and s.macbeath_sq_q % (p * p) == 1),
        "metabelian": small_p or s.pq_prime or s.macbeath_q or s.macbeath_sq_q,
        "metacyclic": small_p or s.pq_prime,
        "z_group": s.p_power == 1 or s.pq_prime,
        "square_free": s.p_power == 1 or s.pq_prime,
    }
    if hits[prof]:
        return YES, desc + " lies in a recorded extremal family"
    fallback = NECESSARY if prof in ("general", "supersolvable") else UNKNOWN
    return fallback, desc + " passes the divisibility conditions"


# primes of each (p,q) attainment family; None takes q from the query
PQ_SHAPES = {
    "two_three": (2, 3),
    "three_five": (3, 5),
    "two_five": (2, 5),
    "two_seven": (2, 7),
    "two_large": (2, None),
    "three_seven": (3, 7),
    "three_large": (3, None),
}


def _attain_pq_tower(g, p, ctx, a):
    n = g - 1
    shape = a["shape"]
    q = ctx.pq[1] if ctx.pq else None
    if shape == "two_three":
        ex = _two_prime_exponents(n, 2, 3)
        if ex is None:
            return NO, "g-1 is not 2^a 3^b, so 48(g-1) is not a (2,3)-number"
        a2, b3 = ex
        if (a2 % 6 == 1 and b3 % 6 == 0) or (a2 % 4 == 0 and b3 % 4 == 0):
            return YES, f"g-1 = 2^{a2} 3^{b3}"
        return NECESSARY, f"g-1 = 2^{a2} 3^{b3}"
    if shape == "three_five":
        ex = _two_prime_exponents(n, 3, 5)
        if ex is None:
            return NO, "g-1 is not 3^a 5^b"
        a3, b5 = ex
        if a3 % 12 == 0 and b5 % 12 == 1:
            return YES, f"g-1 = 3^{a3} 5^{b5}"
        return NECESSARY, f"g-1 = 3^{a3} 5^{b5}"
    if shape == "two_five":
        ex = _two_prime_exponents(n, 2, 5)
        if ex is None:
            return NO, "g-1 is not 2^a 5^b"
        a2, b5 = ex
        if a2 >= 2 and (a2 - 2) % 10 == 0 and b5 % 10 == 0:
            return YES, f"g-1 = 4 * (2^{(a2 - 2) // 10} 5^{b5 // 10})^10"
        return NECESSARY, f"g-1 = 2^{a2} 5^{b5}"
    if shape == "two_seven":
        if n % 3 or (ex := _two_prime_exponents(n // 3, 2, 7)) is None:
            return NO, "(g-1)/3 is not 2^a 7^b"
        a2, b7 = ex
        if a2 >= 4 and (a2 - 4) % 98 == 0 and b7 % 98 == 0:
            return YES, f"g-1 = 48 * (2^{(a2 - 4) // 98} 7^{b7 // 98})^98"
        return NECESSARY, f"g-1 = 3 * 2^{a2} 7^{b7}"
    if shape == "two_large":
        ex = _two_prime_exponents(n, 2, q)
        if ex is None:
            return NO, f"g-1 is not 2^a {q}^b"
        if ex[0] >= 1:
            return YES, f"g-1 = 2^{ex[0]} {q}^{ex[1]}"
        return NECESSARY, f"g-1 = {q}^{ex[1]}"
    if shape == "three_seven":
        if n % 2 or (ex := _two_prime_exponents(n // 2, 3, 7)) is None:
            return NO, "(g-1)/2 is not 3^a 7^b"
        if ex[0] == 0:
            return YES, f"g = 2*7^{ex[1]} + 1"
        return NECESSARY, f"g-1 = 2 * 3^{ex[0]} 7^{ex[1]}"
    if shape == "three_large":
        ex = _two_prime_exponents(n, 3, q)
        if ex is None:
            return NO, f"g-1 is not 3^a {q}^b"
        if ex[0] == 2 and ex[1] >= 1 and q % 3 == 1:
            return YES, f"g-1 = 9 * {q}^{ex[1]}"
        return NECESSARY, f"g-1 = 3^{ex[0]} {q}^{ex[1]}"
    raise ValueError(f"unknown pq shape {shape}")  # pragma: no cover


ATTAIN: dict[str, Callable] = {
    "unknown": _attain_unknown,
    "solvable_towers": _attain_solvable_towers,
    "supersolvable_eighteen": _attain_supersolvable_eighteen,
    "power_of": _attain_power_of,
    "metabelian_sixteen": _attain_metabelian_sixteen,
    "nilpotent_commutator_towers": _attain_nilpotent_commutator_towers,
    "odd_elements_thirty": _attain_odd_elements_thirty,
    "clt_forty_eight": _attain_clt_forty_eight,
    "three_groups": _attain_three_groups,
    "p_group_family": _attain_p_group_family,
    "odd_fifteen": _attain_odd_fifteen,
    "seven_tower": _attain_seven_tower,
    "metabelian_nine": _attain_metabelian_nine,
    "metacyclic_odd": _attain_metacyclic_odd,
    "primes_one_mod_three": _attain_primes_one_mod_three,
    "odd_abelian": _attain_odd_abelian,
    "odd_cyclic": _attain_odd_cyclic,
    "five_tower": _attain_five_tower,
    "gp_cyclic": _attain_gp_cyclic,
    "gp_abelian": _attain_gp_abelian,
    "gp_family": _attain_gp_family,
    "pq_tower": _attain_pq_tower,
}


# ---------------------------------------------------------------------------
# witness recipes: (g, p, ctx) -> (spec, signature, order)


def _least_root_of_unity(p: int, q: int) -> int:
    return next(b for b in range(2, q) if pow(b, p, q) == 1)


def _recipe_solvable_towers(g, p, ctx):
    if g == 2:
        return "GL2 3", "(0;2,3,8)", 48
    if g == 3:
        return "Fermat 4", "(0;2,3,8)", 96
    raise NoRecipe("only the genus 2 and genus 3 base surfaces have table-sized groups")


def _recipe_odd_fifteen(g, p, ctx):
    if g == 6:
        return "MAT 5 : C 3", "(0;3,3,5)", 75
    raise NoRecipe("only the genus 6 member is small enough to tabulate")


def _recipe_seven_tower(g, p, ctx):
    if g == 3:
        return "C 7 : C 3 @ 2", "(0;3,3,7)", 21
    raise NoRecipe("orders 3*7^n with n >= 2 have no recorded construction")


def _recipe_cyclic_by_three(g, p, ctx):
    t = 2 * g + 1
    b = solve_b(t)
    if b is None:
        raise NoRecipe(f"1 + b + b^2 = 0 mod {t} has no solution")
    return f"C {t} : C 3 @ {b}", f"(0;3,3,{t})", 3 * t


def _recipe_three_by_cyclic(g, p, ctx):
    m = g + 2
    return f"C 3 x C {m}", f"(0;3,{m},{m})", 3 * m


def _recipe_odd_cyclic(g, p, ctx):
    m = g + 1
    return f"C {3 * m}", f"(0;3,{m},{3 * m})", 3 * m


def _recipe_gp_cyclic(g, p, ctx):
    m = _gp_cyclic_m(g, p)
    return f"C {p * m}", f"(0;{p},{m},{p * m})", p * m


def _recipe_gp_abelian(g, p, ctx):
    m = _gp_abelian_m(g, p)
    return f"C {p} x C {m}", f"(0;{p},{m},{m})", p * m


def _recipe_gp_family(g, p, ctx):
    s = _gp_shape(g, p)
    sig = f"(0;{p},{p},{p})"
    if s is not None and s.p_power == 1:
        return f"C {p}", sig, p
    if s is not None and s.p_power == 2:
        return f"C {p} x C {p}", sig, p * p
    if s is not None and s.pq_prime:
        q = s.pq_prime
        return f"C {q} : C {p} @ {_least_root_of_unity(p, q)}", sig, p * q
    raise NoRecipe("no table-sized group recorded for this member of the family")


RECIPES: dict[str, Callable] = {
    "solvable_towers": _recipe_solvable_towers,
    "odd_fifteen": _recipe_odd_fifteen,
    "seven_tower": _recipe_seven_tower,
    "cyclic_by_three": _recipe_cyclic_by_three,
    "three_by_cyclic": _recipe_three_by_cyclic,
    "odd_cyclic": _recipe_odd_cyclic,
    "gp_cyclic": _recipe_gp_cyclic,
    "gp_abelian": _recipe_gp_abelian,
    "gp_family": _recipe_gp_family,
}


# ---------------------------------------------------------------------------
# queries


@dataclass(frozen=True)
class RuleHit:
    rule: BoundRule
    p: int | None
    value: Fraction | None  # None: exceptional genus with unstated value
    exception: dict[str, Any] | None
    inherited: bool

    def as_dict(self) -> dict[str, Any]:
        return {
            "rule": self.rule.id,
            "class": self.rule.cls,
            "anchor": self.rule.anchor,
            "formula": self.rule.formula_text(self.p),
            "p": self.p,
            "value": None if self.value is None else str(self.value),
            "exception": self.exception is not None,
            "inherited": self.inherited,
        }


@dataclass
class BoundResult:
    cls: str
    context: ClassContext
    genus: int
    value: Fraction
    winners: list[RuleHit]
    hits: list[RuleHit] = field(default_factory=list)

    @property
    def max_order(self) -> int:
        return self.value.numerator // self.value.denominator

    @property
    def exception(self) -> bool:
        return any(h.exception is not None for h in self.hits)

    @property
    def rule(self) -> RuleHit:
        return self.winners[0]

    def as_dict(self) -> dict[str, Any]:
        return {
            "class": self.cls,
            "context": self.context.as_dict(),
            "genus": self.genus,
            "value": str(self.value),
            "max_order": self.max_order,
            "rule": self.rule.rule.id,
            "anchor": self.rule.rule.anchor,
            "exception": self.exception,
            "contributing": [h.as_dict() for h in self.hits],
        }


def _collect(cls: str, ctx: ClassContext, g: int) -> list[RuleHit]:
    if g < 2:
        raise ValueError("genus must be at least 2")
    wanted = ancestors(cls)
    hits = []
    for rule in registry():
        if rule.cls not in wanted:
            continue
        primes = rule.primes_for(ctx)
        if primes is None:
            continue
        for p in primes:
            exc = rule.exception_at(g, p)
            if exc is not None:
                value = None if exc["value"] == "unknown" else Fraction(exc["value"])
            else:
                value = rule.formula_value(g, p)
            hits.append(RuleHit(rule, p, value, exc, rule.cls != cls))
    return hits


def bound(cls: str, ctx: ClassContext | None = None, g: int = 2) -> BoundResult:
    """Least registry value for ``|G|`` (or ``exp(G)`` for class ``exponent``)."""
    ctx = ctx or ClassContext()
    hits = _collect(cls, ctx, g)
    valued = [h for h in hits if h.value is not None]
    if not valued:
        raise NoRule(f"no registry record covers class {cls!r} with context {ctx.as_dict()} at g={g}")
    best = min(h.value for h in valued)
    winners = [h for h in valued if h.value == best]
    winners.sort(key=lambda h: h.inherited)  # stable: own class first, then registry order
    return BoundResult(cls, ctx, g, best, winners, hits)


@dataclass
class AttainResult:
    status: str
    condition: str
    bound: BoundResult
    rule: RuleHit
    witness_rule: RuleHit | None

    def as_dict(self) -> dict[str, Any]:
        return {
            "status": self.status,
            "condition": self.condition,
            "rule": self.rule.rule.id,
            "anchor": self.rule.rule.anchor,
            "value": str(self.bound.value),
            "genus": self.bound.genus,
        }


def _hit_status(hit: RuleHit, g: int, ctx: ClassContext) -> tuple[str, str]:
    if hit.exception is not None:
        status, cond = YES, f"exceptional action at g={g} with |G| = {hit.exception['value']}"
    else:
        status, cond = ATTAIN[hit.rule.attain["kind"]](g, hit.p, ctx, hit.rule.attain)
    if status == YES and hit.inherited:
        return UNKNOWN, f"{cond} (sufficient for class {hit.rule.cls} only)"
    if status == YES and (why := hit.rule.narrowing(ctx, hit.p)):
        return UNKNOWN, f"{cond} ({why})"
    return status, cond


def attainable(cls: str, ctx: ClassContext | None = None, g: int = 2) -> AttainResult:
    """Whether the bound value at ``g`` is reached within the queried class."""
    ctx = ctx or ClassContext()
    b = bound(cls, ctx, g)
    evaluated = [(h, *_hit_status(h, g, ctx)) for h in b.winners]
    for wanted in (NO, YES, NECESSARY):
        for h, status, cond in evaluated:
            if status == wanted:
                witness = h if status == YES else None
                return AttainResult(status, cond, b, h, witness)
    h, status, cond = evaluated[0]
    return AttainResult(status, cond, b, h, None)


@dataclass(frozen=True)
class Witness:
    spec: str
    signature: Signature
    order: int

    def as_dict(self) -> dict[str, Any]:
        return {"group": self.spec, "signature": str(self.signature), "order": self.order}


def witness(cls: str, ctx: ClassContext | None = None, g: int = 2) -> Witness:
    """A GroupSpec, signature and order realising the bound, when a recipe is recorded."""
    from .signature import parse_signature

    ctx = ctx or ClassContext()
    att = attainable(cls, ctx, g)
    if att.status != YES:
        raise NoRecipe(f"bound not known to be attained ({att.status}: {att.condition})")
    hit = att.witness_rule
    if hit.exception is not None:
        exc = hit.exception
        if "group" not in exc:
            raise NoRecipe("exceptional action has no recorded group")
        spec, sig, order = exc["group"], exc["signature"], int(exc["value"])
    else:
        name = hit.rule.witness
        if name is None:
            raise NoRecipe(f"rule {hit.rule.id} records no construction")
        spec, sig, order = RECIPES[name](g, hit.p, ctx)
    # exponent-class recipes are Z-groups, where exp(G) = |G|, so one check covers both
    if Fraction(order) != att.bound.value:
        raise NoRecipe(f"recipe order {order} differs from the bound {att.bound.value}")
    return Witness(spec, parse_signature(sig), order)
