"""Smooth actions: generating-vector search, genera of actions, bounded minimum genus."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import NonIntegralGenus, SizeCap, UnsupportedSignature
from .groups import FiniteGroup, conjugacy_classes, default_cap, generate
from .signature import Signature, enumerate_signatures, genus_from_order, measure

DEFAULT_MAX_R = 6


@dataclass(frozen=True)
class GeneratingVector:
    """Images ``x_1, ..., x_r`` of the elliptic generators of an orbit-genus-0 signature."""

    group: FiniteGroup
    signature: Signature
    elements: tuple[int, ...]

    @property
    def labels(self) -> list[str]:
        return [self.group.labels[x] for x in self.elements]

    def verify(self) -> bool:
        """Orders equal the periods, the product is the identity, and the elements generate."""
        G = self.group
        if self.signature.orbit_genus != 0 or len(self.elements) != len(self.signature.periods):
            return False
        if any(G.orders[x] != m for x, m in zip(self.elements, self.signature.periods)):
            return False
        if reduce(G.mul, self.elements, G.identity) != G.identity:
            return False
        return len(generate(G, self.elements)) == G.n


def find_generating_vector(
    G: FiniteGroup,
    sig: Signature,
    max_r: int = DEFAULT_MAX_R,
    cap: int | None = None,
) -> GeneratingVector | None:
    """The lexicographically least generating vector of ``G`` for ``sig``, or None.

    The first slot only ranges over least representatives of conjugacy
    classes; conjugating a vector keeps it valid, so the least vector overall
    always starts with a representative.
    """
    cap = default_cap() if cap is None else cap
    if G.n > cap:
        raise SizeCap(f"action search refused for order {G.n} > cap {cap}")
    if sig.orbit_genus != 0:
        raise UnsupportedSignature("only orbit genus 0 signatures are searched")
    periods = sig.periods
    r = len(periods)
    if r > max_r:
        raise UnsupportedSignature(f"{r} periods exceeds the search limit {max_r}")
    by_order: dict[int, list[int]] = {}
    for x in range(G.n):
        by_order.setdefault(G.orders[x], []).append(x)
    if any(m not in by_order for m in periods):
        return None

    reps = sorted(min(c) for c in conjugacy_classes(G))
    first = [x for x in reps if G.orders[x] == periods[0]]
    t, inv, orders = G.table, G.inverse, G.orders
    last = periods[-1]

    def search(prefix: list[int], prod: int) -> tuple[int, ...] | None:
        k = len(prefix)
        if k == r - 1:
            x = inv[prod]
            if orders[x] != last:
                return None
            vec = (*prefix, x)
            return vec if len(generate(G, vec)) == G.n else None
        for x in (first if k == 0 else by_order[periods[k]]):
            prefix.append(x)
            found = search(prefix, t[prod][x])
            prefix.pop()
            if found:
                return found
        return None

    if r == 1:
        vec = (G.identity,)
        ok = orders[G.identity] == periods[0] and G.n == 1
        return GeneratingVector(G, sig, vec) if ok else None
    found = search([], G.identity)
    return GeneratingVector(G, sig, found) if found else None


def genus_of_action(G: FiniteGroup, sig: Signature) -> int:
    """Riemann-Hurwitz genus ``1 + |G| mu / 2``; may be 0 or 1 for non-hyperbolic signatures."""
    if sig.hyperbolic:
        return genus_from_order(sig, G.n)
    twice = G.n * measure(sig)
    if twice.denominator != 1 or twice.numerator % 2:
        raise NonIntegralGenus(f"order {G.n} with {sig} gives g - 1 = {twice / 2}")
    return 1 + twice.numerator // 2


@dataclass(frozen=True)
class MinGenusResult:
    genus: int
    signature: Signature
    vector: GeneratingVector
    note: str = "bounded search: minimum within explored space"


def min_genus_bounded(
    G: FiniteGroup,
    measure_cap,
    orbit_genus_max: int = 0,
    max_r: int = DEFAULT_MAX_R,
) -> MinGenusResult | None:
    """Least genus ``>= 2`` over orbit-genus-0 signatures with ``mu <= measure_cap``.

    Periods are restricted to element orders of ``G``.  The answer is only the
    minimum inside this window; a larger window can lower it.
    """
    if orbit_genus_max != 0:
        raise UnsupportedSignature("minimum genus search covers orbit genus 0 only")
    orders = {o for o in G.orders if o > 1}
    if not orders:
        return None
    least = Fraction(2, G.n)  # genus >= 2 needs n * mu / 2 >= 1
    for sig in enumerate_signatures(Fraction(measure_cap), orbit_genus_max=0, allowed_periods=orders):
        mu = measure(sig)
        if mu < least or len(sig.periods) > max_r:
            continue
        if (G.n * mu) % 2 != 0:
            continue
        vec = find_generating_vector(G, sig, max_r=max_r)
        if vec is not None:
            return MinGenusResult(genus_of_action(G, sig), sig, vec)
    return None


def macbeath_genus(g: int, n: int) -> int:
    """Genus of the unramified cover with deck group ``(C_n)^(2g)``."""
    if g < 2 or n < 1:
        raise ValueError("macbeath_genus needs g >= 2 and n >= 1")
    return n ** (2 * g) * (g - 1) + 1
