"""Class membership predicates for concrete finite groups, with certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .errors import PrimeDoesNotDivide, SizeCap
from .groups import (
    FiniteGroup,
    Subgroup,
    all_subgroups,
    commutator_subgroup,
    cyclic_subgroups,
    default_cap,
    derived_series,
    generate,
    quotient,
    subgroup_closure,
    sylow_subgroup,
)
from .numtheory import divisors, factorize, is_prime, prime_divisors, smallest_prime


def smallest_prime_divisor(n: int) -> int:
    if n < 2:
        raise ValueError("smallest_prime_divisor needs n >= 2")
    return smallest_prime(n)


# ---------------------------------------------------------------------------
# individual predicates


def is_nilpotent(G: FiniteGroup) -> bool:
    # nilpotent iff every Sylow subgroup is normal
    return all(sylow_subgroup(G, p).is_normal() for p in prime_divisors(G.n))


def is_solvable(G: FiniteGroup) -> bool:
    return derived_series(G)[-1].order == 1


def is_metabelian(G: FiniteGroup) -> bool:
    series = derived_series(G)
    return series[-1].order == 1 and len(series) <= 3


def is_z_group(G: FiniteGroup) -> bool:
    return all(sylow_subgroup(G, p).is_cyclic for p in prime_divisors(G.n))


def _prime_order_normal(G: FiniteGroup) -> Subgroup | None:
    """The prime-order normal subgroup with the lexicographically least elements."""
    best = None
    for x in range(G.n):
        if is_prime(G.orders[x]):
            H = subgroup_closure(G, [x])
            if (best is None or H.elements < best.elements) and H.is_normal():
                best = H
    return best


def is_supersolvable(G: FiniteGroup) -> bool:
    # quotients of supersolvable groups are supersolvable, so any prime-order
    # normal subgroup can be peeled off
    while G.n > 1:
        N = _prime_order_normal(G)
        if N is None:
            return False
        G = quotient(G, N)
    return True


def zappa_chain(G: FiniteGroup) -> list[Subgroup] | None:
    """Normal series ``G = G_0 > G_1 > ... > 1`` with prime indices ascending top-down.

    Built bottom-up: each step adjoins the least element giving a ``G``-normal
    subgroup whose index over the previous one is the largest prime still
    dividing ``[G : M]``.
    """
    M = G.trivial
    chain = [M]
    while M.order < G.n:
        q = max(prime_divisors(G.n // M.order))
        for x in range(G.n):
            if x in M.members or G.power(x, q) not in M.members:
                continue
            K = Subgroup(G, tuple(generate(G, M.generators + (x,))))
            if K.order == q * M.order and K.is_normal():
                M = K
                chain.append(M)
                break
        else:
            return None
    return chain[::-1]


def chain_indices(chain: list[Subgroup]) -> tuple[int, ...]:
    return tuple(chain[i].order // chain[i + 1].order for i in range(len(chain) - 1))


def metacyclic_witness(G: FiniteGroup) -> tuple[Subgroup, int] | None:
    """``(N, g)`` with ``N`` cyclic normal and ``G/N`` generated by the coset of ``g``."""
    for N in cyclic_subgroups(G):
        if not N.is_normal():
            continue
        index = G.n // N.order
        for g in range(G.n):
            if len(generate(G, N.generators + (g,))) == G.n:
                return N, g
            if index == 1:
                break
    return None


def clt_missing_divisors(G: FiniteGroup, cap: int | None = None) -> list[int]:
    orders = {H.order for H in all_subgroups(G, cap)}
    return [d for d in divisors(G.n) if d not in orders]


def odd_elements_subgroup(G: FiniteGroup) -> Subgroup | None:
    odd = [x for x in range(G.n) if G.orders[x] % 2]
    members = set(odd)
    t = G.table
    if all(t[a][b] in members for a in odd for b in odd):
        return Subgroup(G, tuple(odd))
    return None


def strictly_q_closed_check(G: FiniteGroup, q: int) -> bool:
    """Sylow ``q`` is normal and ``G/Q`` is abelian of exponent dividing ``q - 1``."""
    if not is_prime(q) or G.n % q:
        raise PrimeDoesNotDivide(f"{q} is not a prime dividing {G.n}")
    Q = sylow_subgroup(G, q)
    if not Q.is_normal():
        return False
    H = quotient(G, Q)
    return H.is_abelian and (q - 1) % H.exponent == 0


# ---------------------------------------------------------------------------
# profile


@dataclass
class ClassProfile:
    """All class flags of a group.  ``None`` means undecided because of the size cap."""

    order: int
    abelian: bool
    cyclic: bool
    nilpotent: bool
    solvable: bool
    supersolvable: bool
    metabelian: bool
    metacyclic: bool | None
    z_group: bool
    clt: bool | None
    square_free_order: bool
    odd_order: bool
    odd_elements_subgroup: bool
    nilpotent_commutator: bool
    odd_commutator: bool
    smallest_prime: int | None
    pq_signature: tuple[int, int] | None
    p_group: int | None
    exponent: int
    zappa_indices: tuple[int, ...] | None = None
    metacyclic_witness: dict[str, Any] | None = None
    clt_missing: list[int] | None = None
    odd_subgroup_order: int | None = None
    undecided: list[str] = field(default_factory=list)

    def as_dict(self) -> dict[str, Any]:
        out = dict(self.__dict__)
        for key in ("pq_signature", "zappa_indices"):
            if out[key] is not None:
                out[key] = list(out[key])
        return out

    def member_classes(self) -> list[str]:
        """Registry class names this group belongs to."""
        names = ["general"]
        for name in (
            "solvable", "supersolvable", "nilpotent", "metabelian", "metacyclic", "z_group",
            "abelian", "cyclic", "clt", "nilpotent_commutator", "odd_elements_subgroup",
            "odd_commutator",
        ):
            if getattr(self, name):
                names.append(name)
        if self.square_free_order:
            names.append("square_free")
        if self.order % 4 == 2:
            names.append("order_2_mod_4")
        if self.p_group:
            names.append("p_group")
        if self.pq_signature:
            names.append("pq_group")
        return names


def classify(G: FiniteGroup, cap: int | None = None) -> ClassProfile:
    cap = default_cap() if cap is None else cap
    n = G.n
    fac = factorize(n) if n > 1 else ()
    primes = [p for p, _ in fac]
    undecided: list[str] = []

    commutator = commutator_subgroup(G)
    G1 = commutator.as_group()
    series = derived_series(G)
    solvable = series[-1].order == 1
    supersolvable = is_supersolvable(G)
    chain = zappa_chain(G) if supersolvable else None

    try:
        missing = clt_missing_divisors(G, cap)
        clt = not missing
    except SizeCap:
        missing, clt = None, None
        undecided.append("clt")

    if n <= cap:
        mw = metacyclic_witness(G)
        metacyclic = mw is not None
        witness = {"normal_cyclic": list(mw[0].elements), "quotient_generator": mw[1]} if mw else None
    else:
        metacyclic, witness = None, None
        undecided.append("metacyclic")

    odd_sub = odd_elements_subgroup(G)
    return ClassProfile(
        order=n,
        abelian=G.is_abelian,
        cyclic=n in G.orders,
        nilpotent=is_nilpotent(G),
        solvable=solvable,
        supersolvable=supersolvable,
        metabelian=solvable and len(series) <= 3,
        metacyclic=metacyclic,
        z_group=is_z_group(G),
        clt=clt,
        square_free_order=all(e == 1 for _, e in fac),
        odd_order=n % 2 == 1,
        odd_elements_subgroup=odd_sub is not None,
        nilpotent_commutator=is_nilpotent(G1),
        odd_commutator=commutator.order % 2 == 1,
        smallest_prime=primes[0] if primes else None,
        pq_signature=(primes[0], primes[1]) if len(primes) == 2 else None,
        p_group=primes[0] if len(primes) == 1 else None,
        exponent=G.exponent,
        zappa_indices=chain_indices(chain) if chain else None,
        metacyclic_witness=witness,
        clt_missing=missing,
        odd_subgroup_order=odd_sub.order if odd_sub else None,
        undecided=undecided,
    )
