"""Fuchsian signatures: measure, Riemann-Hurwitz conversions, enumeration,
abelianization and signatures of subgroups computed from coset actions.

All arithmetic is exact (``fractions.Fraction``); no floats are used here.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    GenusTooSmall,
    InconsistentGenus,
    InfiniteAbelianization,
    InfiniteEnumeration,
    InvalidSignature,
    NonIntegralGenus,
    NotTransitive,
    OrderMismatch,
    ProductNotIdentity,
    TrivialAbelianization,
)
from .numtheory import factorize
from .snf import smith_decomposition

Rational = Fraction
Permutation = tuple[int, ...]


@dataclass(frozen=True, order=True)
class Signature:
    """Signature ``(h; m_1, ..., m_r)`` of a cocompact Fuchsian group.

    Periods are stored sorted ascending; construction rejects spherical and
    euclidean data unless ``hyperbolic=False`` is passed, which only
    generating-vector searches on small groups use.
    """

    orbit_genus: int
    periods: tuple[int, ...] = ()
    hyperbolic: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if self.orbit_genus < 0:
            raise InvalidSignature(f"orbit genus must be >= 0, got {self.orbit_genus}")
        periods = tuple(sorted(int(m) for m in self.periods))
        if any(m < 2 for m in periods):
            raise InvalidSignature(f"periods must be >= 2, got {periods}")
        object.__setattr__(self, "periods", periods)
        if self.hyperbolic and _measure(self.orbit_genus, periods) <= 0:
            raise InvalidSignature(f"{self} is not hyperbolic")

    @classmethod
    def parse(cls, text: str) -> "Signature":
        return parse_signature(text)

    @property
    def r(self) -> int:
        return len(self.periods)

    def __str__(self) -> str:
        body = ",".join(map(str, self.periods)) if self.periods else "-"
        return f"({self.orbit_genus};{body})"

    def __repr__(self) -> str:
        return f"Signature{self}"


_SIG_RE = re.compile(r"^\s*\(\s*(\d+)\s*;\s*(-|−|\d+(?:\s*,\s*\d+)*)?\s*\)\s*$")


def parse_signature(text: str, hyperbolic: bool = True) -> Signature:
    """Parse ``(h;m1,...,mr)``; ``(h;-)`` denotes an empty period list."""
    m = _SIG_RE.match(text)
    if not m:
        raise InvalidSignature(f"cannot parse signature {text!r}; expected (h;m1,...,mr) or (h;-)")
    h = int(m.group(1))
    body = m.group(2)
    if body is None:
        raise InvalidSignature(f"empty period list must be written (h;-): {text!r}")
    periods = () if body in ("-", "−") else tuple(int(x) for x in body.split(","))
    return Signature(h, periods, hyperbolic)


def _measure(h: int, periods: Iterable[int]) -> Fraction:
    return Fraction(2 * h - 2) + sum((1 - Fraction(1, m) for m in periods), Fraction(0))


def measure(sig: Signature) -> Fraction:
    """Hyperbolic area over ``2*pi``: ``2h - 2 + sum(1 - 1/m_i)``."""
    return _measure(sig.orbit_genus, sig.periods)


def order_from_genus(sig: Signature, g: int) -> Fraction:
    """Group order ``2(g-1)/mu`` forced by Riemann-Hurwitz at genus ``g``."""
    if g < 2:
        raise GenusTooSmall(f"genus must be >= 2, got {g}")
    return Fraction(2 * (g - 1)) / measure(sig)


def genus_from_order(sig: Signature, n: int) -> int:
    if n < 2:
        raise ValueError(f"group order must be >= 2, got {n}")
    twice = n * measure(sig)
    if twice.denominator != 1 or twice.numerator % 2:
        raise NonIntegralGenus(f"order {n} with {sig} gives g - 1 = {twice / 2}")
    g = 1 + twice.numerator // 2
    if g < 2:
        raise GenusTooSmall(f"order {n} with {sig} gives genus {g}")
    return g


# ---------------------------------------------------------------------------
# abelian groups


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z^free_rank x C_{d_1} x ... x C_{d_k}`` with ``d_1 | d_2 | ...``."""

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        if any(d < 2 for d in factors):
            raise ValueError(f"invariant factors must be >= 2, got {factors}")
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain, got {factors}")
        object.__setattr__(self, "invariant_factors", factors)

    @classmethod
    def from_diagonal(cls, diagonal: Iterable[int], free_rank: int = 0) -> "FiniteAbelianGroup":
        """Build from any SNF diagonal (ones dropped, zeros counted as free rank)."""
        # split into prime powers, then regroup: the k-th largest power of each prime
        # goes into the k-th largest invariant factor
        powers: dict[int, list[int]] = {}
        for d in diagonal:
            d = abs(d)
            if d == 0:
                free_rank += 1
            for p, e in factorize(d) if d > 1 else ():
                powers.setdefault(p, []).append(p**e)
        width = max((len(v) for v in powers.values()), default=0)
        factors = [1] * width
        for v in powers.values():
            for k, q in enumerate(sorted(v, reverse=True)):
                factors[k] *= q
        return cls(free_rank, tuple(sorted(factors)))

    @classmethod
    def parse(cls, text: str) -> "FiniteAbelianGroup":
        """Parse ``1``, ``C6``, ``C2 x C2``, ``(C2)^6``, ``Z^2 x C3 x C3``."""
        text = text.strip().replace("×", "x")
        if text in ("1", "trivial", ""):
            return cls()
        rank = 0
        factors: list[int] = []
        for part in re.split(r"\s*x\s*", text):
            m = re.fullmatch(r"\(?C_?(\d+)\)?(?:\^(\d+))?", part)
            z = re.fullmatch(r"Z(?:\^(\d+))?", part)
            if m:
                factors += [int(m.group(1))] * int(m.group(2) or 1)
            elif z:
                rank += int(z.group(1) or 1)
            else:
                raise ValueError(f"cannot parse abelian group {text!r}")
        return cls.from_diagonal(factors, rank)

    @property
    def torsion_order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        for d, grp in itertools.groupby(self.invariant_factors):
            k = len(list(grp))
            parts.append(f"C{d}" if k == 1 else " x ".join([f"C{d}"] * k) if k <= 3 else f"(C{d})^{k}")
        return " x ".join(parts) if parts else "1"


def relation_matrix(sig: Signature) -> list[list[int]]:
    """Abelianized relations on the elliptic generators: ``m_i e_i`` and ``sum e_i``."""
    r = sig.r
    rows = [[sig.periods[i] if j == i else 0 for j in range(r)] for i in range(r)]
    if r:
        rows.append([1] * r)
    return rows


def _abelianization_data(sig: Signature):
    """SNF data: (group, diagonal, V) where row i of V is the image of x_i."""
    rows = relation_matrix(sig)
    if not rows:
        return FiniteAbelianGroup(2 * sig.orbit_genus), [], []
    diag, _, V = smith_decomposition(rows)
    group = FiniteAbelianGroup.from_diagonal(diag, 2 * sig.orbit_genus)
    return group, diag, V


def abelianization(sig: Signature) -> FiniteAbelianGroup:
    """``Gamma / Gamma'``: free rank ``2h`` plus the cokernel of the relation matrix."""
    return _abelianization_data(sig)[0]


def abelianization_images(sig: Signature) -> tuple[FiniteAbelianGroup, list[tuple[int, ...]]]:
    """Abelianization together with the image of each elliptic generator.

    Images are coordinate vectors in ``C_{d_1} x ... x C_{d_k}`` (the factors
    of the returned group, in order).  Only meaningful for finite torsion.
    """
    group, diag, V = _abelianization_data(sig)
    keep = [j for j, d in enumerate(diag) if d > 1]
    images = [tuple(V[i][j] % diag[j] for j in keep) for i in range(sig.r)]
    return group, images


# ---------------------------------------------------------------------------
# enumeration


def enumerate_signatures(
    max_measure,
    *,
    orbit_genus_max: int | None = None,
    all_periods_odd: bool = False,
    min_period: int = 2,
    max_period: int | None = None,
    allowed_periods: Iterable[int] | None = None,
) -> list[Signature]:
    """All signatures with ``0 < mu <= max_measure`` passing the filters.

    Sorted by measure, then orbit genus, then periods.  Raises
    ``InfiniteEnumeration`` when the window holds infinitely many signatures
    and no period cap (``max_period`` or ``allowed_periods``) is given.
    """
    M = Fraction(max_measure)
    if M <= 0:
        raise ValueError("max_measure must be positive")
    allowed = None
    if allowed_periods is not None:
        allowed = sorted({int(m) for m in allowed_periods if int(m) >= max(2, min_period)})
        if all_periods_odd:
            allowed = [m for m in allowed if m % 2]
        if max_period is not None:
            allowed = [m for m in allowed if m <= max_period]
    lo = max(2, min_period)
    if all_periods_odd and lo % 2 == 0:
        lo += 1
    step = 2 if all_periods_odd else 1
    least_gain = 1 - Fraction(1, lo)

    # 2h - 2 <= M bounds h; each period adds at least least_gain, bounding r.
    h_cap = (M + 2) // 2
    if orbit_genus_max is not None:
        h_cap = min(h_cap, orbit_genus_max)
    out: list[Signature] = []

    def candidates(start: int, s: Fraction):
        # Each period adds < 1, so at least k more periods (all >= m) are needed
        # to make the measure positive; they add at least k(1 - 1/m).
        k = max(1, math.floor(-s) + 1)
        excess = s + k - M
        upper = math.floor(k / excess) if excess > 0 else None
        if allowed is not None:
            return [m for m in allowed if m >= start and (upper is None or m <= upper)]
        if upper is None:
            if max_period is None:
                raise InfiniteEnumeration(
                    f"infinitely many signatures with measure <= {M}; pass max_period"
                )
            upper = max_period
        elif max_period is not None:
            upper = min(upper, max_period)
        return range(start, upper + 1, step) if start <= upper else ()

    def extend(h: int, prefix: list[int], s: Fraction):
        if s > 0:
            out.append(Signature(h, tuple(prefix)))
        if s + least_gain > M:
            return
        start = prefix[-1] if prefix else lo
        for m in candidates(start, s):
            nxt = s + 1 - Fraction(1, m)
            if nxt > M:
                continue
            prefix.append(m)
            extend(h, prefix, nxt)
            prefix.pop()

    for h in range(0, int(h_cap) + 1):
        extend(h, [], Fraction(2 * h - 2))
    out.sort(key=lambda sg: (measure(sg), sg.orbit_genus, sg.periods))
    return out


# ---------------------------------------------------------------------------
# subgroup signatures


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Right action product: apply ``p`` first, then ``q``."""
    return tuple(q[i] for i in p)


def perm_order(p: Permutation) -> int:
    return math.lcm(*cycle_type(p)) if p else 1


def cycle_type(p: Permutation) -> list[int]:
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                k += 1
            lengths.append(k)
    return lengths


def _is_transitive(images: Sequence[Permutation], n: int) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for p in images:
            j = p[i]
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def coset_action_signature(sig: Signature, images: Sequence[Permutation], n: int) -> Signature:
    """Signature of the index-``n`` subgroup given by a transitive coset action.

    ``images[i]`` is the permutation of ``{0..n-1}`` induced by the i-th
    elliptic generator; permutations compose left to right.  A cycle of length
    ``l`` in ``images[i]`` contributes the period ``m_i / l`` (dropped when 1).
    """
    if sig.orbit_genus != 0:
        raise InvalidSignature("coset_action_signature needs orbit genus 0")
    if len(images) != sig.r:
        raise InvalidSignature(f"expected {sig.r} permutations, got {len(images)}")
    images = [tuple(p) for p in images]
    for p in images:
        if sorted(p) != list(range(n)):
            raise InvalidSignature(f"not a permutation of {n} points: {p}")
    if n < 1 or not _is_transitive(images, n):
        raise NotTransitive("generator images do not act transitively")
    product = tuple(range(n))
    for m, p in zip(sig.periods, images):
        if m % perm_order(p):
            raise OrderMismatch(f"permutation of order {perm_order(p)} does not divide period {m}")
        product = compose(product, p)
    if product != tuple(range(n)):
        raise ProductNotIdentity("product of generator images is not the identity")
    periods = []
    for m, p in zip(sig.periods, images):
        periods += [m // length for length in cycle_type(p) if m // length > 1]
    target = n * measure(sig)
    twice_h = target + 2 - sum((1 - Fraction(1, m) for m in periods), Fraction(0))
    if twice_h.denominator != 1 or twice_h.numerator % 2 or twice_h < 0:
        raise InconsistentGenus(f"solved 2h = {twice_h} is not a non-negative even integer")
    return Signature(twice_h.numerator // 2, tuple(periods))


def _elements(factors: Sequence[int]) -> list[tuple[int, ...]]:
    return list(itertools.product(*(range(d) for d in factors)))


def regular_action(factors: Sequence[int], shifts: Sequence[Sequence[int]]) -> list[Permutation]:
    """Translation action of ``C_{d_1} x ... x C_{d_k}`` on itself."""
    elems = _elements(factors)
    index = {e: i for i, e in enumerate(elems)}
    perms = []
    for v in shifts:
        perms.append(tuple(index[tuple((a + b) % d for a, b, d in zip(e, v, factors))] for e in elems))
    return perms


def derived_subgroup_signature(sig: Signature) -> tuple[Signature, FiniteAbelianGroup]:
    """Signature of ``Gamma'`` together with ``Gamma / Gamma'``."""
    if sig.orbit_genus > 0:
        raise InfiniteAbelianization(f"{sig} has free abelianization rank {2 * sig.orbit_genus}")
    group, images = abelianization_images(sig)
    if not group.is_finite:
        raise InfiniteAbelianization(f"{sig} has infinite abelianization {group}")
    if group.is_trivial:
        raise TrivialAbelianization(f"{sig} is perfect")
    perms = regular_action(group.invariant_factors, images)
    return coset_action_signature(sig, perms, group.torsion_order), group


@dataclass
class DerivedChain:
    steps: list[tuple[Signature, FiniteAbelianGroup]] = field(default_factory=list)
    status: str = "depth_reached"

    @property
    def signatures(self) -> list[Signature]:
        return [s for s, _ in self.steps]

    @property
    def quotients(self) -> list[FiniteAbelianGroup]:
        return [a for _, a in self.steps]


def _terminal_status(sig: Signature) -> str | None:
    try:
        derived_subgroup_signature(sig)
    except InfiniteAbelianization:
        return "infinite_abelianization"
    except TrivialAbelianization:
        return "trivial_abelianization"
    return None


def derived_chain(sig: Signature, depth: int) -> DerivedChain:
    """Iterate ``derived_subgroup_signature`` up to ``depth`` times.

    The status describes why the chain stopped, or for a full-depth chain,
    what the next step would hit (``depth_reached`` if it could continue).
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    chain = DerivedChain()
    current = sig
    for _ in range(depth):
        status = _terminal_status(current)
        if status:
            chain.status = status
            return chain
        sub, quotient = derived_subgroup_signature(current)
        chain.steps.append((sub, quotient))
        current = sub
    chain.status = _terminal_status(current) or "depth_reached"
    return chain
