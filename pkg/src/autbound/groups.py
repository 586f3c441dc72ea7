"""Finite groups as verified multiplication tables, and subgroup machinery."""

from __future__ import annotations

import math
import os
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidGroup, NotNormal, PrimeDoesNotDivide, SizeCap
from .numtheory import factorize, is_prime, valuation
from .signature import FiniteAbelianGroup


def default_cap() -> int:
    """Largest order for which construction and subgroup enumeration are allowed."""
    return int(os.environ.get("AUTBOUND_GROUP_CAP", "256"))


class FiniteGroup:
    """A finite group given by its Cayley table on indices ``0..n-1``.

    ``table[i][j]`` is the index of ``i * j``.  Construction verifies the group
    axioms exhaustively and refuses tables larger than ``cap``.
    """

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        labels: Sequence[str] | None = None,
        name: str | None = None,
        *,
        cap: int | None = None,
        verify: bool = True,
    ):
        n = len(table)
        cap = default_cap() if cap is None else cap
        if n > cap:
            raise SizeCap(f"group of order {n} exceeds cap {cap}")
        self.table: tuple[tuple[int, ...], ...] = tuple(tuple(int(x) for x in row) for row in table)
        self.n = n
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise InvalidGroup("label count does not match table size")
        self.name = name
        if verify:
            self._verify()
        self.identity = self._find_identity()
        self.inverse = self._inverses()

    # -- construction checks -------------------------------------------------

    def _verify(self) -> None:
        n = self.n
        if n == 0:
            raise InvalidGroup("empty table")
        T = np.asarray(self.table, dtype=np.int32)
        if T.shape != (n, n) or T.min() < 0 or T.max() >= n:
            raise InvalidGroup("table must be n x n with entries in 0..n-1")
        full = np.arange(n)
        if not (np.sort(T, axis=1) == full).all() or not (np.sort(T, axis=0) == full[:, None]).all():
            raise InvalidGroup("table is not a Latin square")
        # (ab)c == a(bc) for every triple
        if not np.array_equal(T[T], T[:, T]):
            raise InvalidGroup("table is not associative")
        e = self._find_identity()
        if e is None:
            raise InvalidGroup("no two-sided identity")

    def _find_identity(self) -> int | None:
        for e in range(self.n):
            if all(self.table[e][j] == j and self.table[j][e] == j for j in range(self.n)):
                return e
        return None

    def _inverses(self) -> tuple[int, ...]:
        e = self.identity
        inv = []
        for a in range(self.n):
            row = self.table[a]
            b = row.index(e)
            if self.table[b][a] != e:
                raise InvalidGroup(f"element {a} has no two-sided inverse")
            inv.append(b)
        return tuple(inv)

    # -- basic arithmetic ----------------------------------------------------

    def __len__(self) -> int:
        return self.n

    @property
    def order(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name or '?'} of order {self.n}>"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def power(self, a: int, k: int) -> int:
        k %= self.element_order(a)
        result = self.identity
        for _ in range(k):
            result = self.table[result][a]
        return result

    def conj(self, a: int, g: int) -> int:
        """``g^-1 a g``."""
        return self.table[self.table[self.inverse[g]][a]][g]

    def commutator(self, a: int, b: int) -> int:
        """``a^-1 b^-1 a b``."""
        t = self.table
        return t[t[t[self.inverse[a]][self.inverse[b]]][a]][b]

    @cached_property
    def orders(self) -> tuple[int, ...]:
        out = []
        for a in range(self.n):
            k, x = 1, a
            while x != self.identity:
                x = self.table[x][a]
                k += 1
            out.append(k)
        return tuple(out)

    def element_order(self, a: int) -> int:
        return self.orders[a]

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.orders)

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.n) for b in range(a + 1, self.n))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily in index order."""
        gens: list[int] = []
        have = {self.identity}
        for x in range(self.n):
            if x not in have:
                gens.append(x)
                have = set(generate(self, gens))
        return tuple(gens)

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.n)))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, (self.identity,))

    # -- file format ---------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"order {self.n}"]
        lines += [" ".join(map(str, row)) for row in self.table]
        lines += [f"label {i} {lab}" for i, lab in enumerate(self.labels)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, name: str | None = None) -> "FiniteGroup":
        """Parse ``order n`` then n table rows, then optional ``label i text`` lines."""
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not lines or not lines[0].startswith("order"):
            raise InvalidGroup("group file must start with 'order n'")
        try:
            n = int(lines[0].split()[1])
            rows = [[int(x) for x in ln.split()] for ln in lines[1 : n + 1]]
        except (IndexError, ValueError) as exc:
            raise InvalidGroup(f"malformed group file: {exc}") from None
        if len(rows) != n or any(len(r) != n for r in rows):
            raise InvalidGroup("table rows do not match the declared order")
        labels = [str(i) for i in range(n)]
        for ln in lines[n + 1 :]:
            parts = ln.split(maxsplit=2)
            if parts[0] != "label" or len(parts) < 3:
                raise InvalidGroup(f"unexpected line {ln!r}")
            labels[int(parts[1])] = parts[2]
        return cls(rows, labels, name=name)

    @classmethod
    def from_file(cls, path: str | os.PathLike) -> "FiniteGroup":
        path = Path(path)
        return cls.from_text(path.read_text(), name=path.name)

    def relabeled(self, perm: Sequence[int]) -> "FiniteGroup":
        """Isomorphic copy in which old element ``i`` becomes ``perm[i]``."""
        n = self.n
        table = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                table[perm[a]][perm[b]] = perm[self.table[a][b]]
        labels = [""] * n
        for i, lab in enumerate(self.labels):
            labels[perm[i]] = lab
        return FiniteGroup(table, labels, name=self.name)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``group`` given by its sorted element indices."""

    group: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(self.elements)))

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, a: int) -> bool:
        return a in self.members

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and self.group is other.group and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    @cached_property
    def members(self) -> frozenset[int]:
        return frozenset(self.elements)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        gens: list[int] = []
        have = {self.group.identity}
        for x in self.elements:
            if x not in have:
                gens.append(x)
                have = set(generate(self.group, gens))
        return tuple(gens)

    def is_normal(self) -> bool:
        G = self.group
        return all(G.conj(h, g) in self.members for g in G.generators for h in self.generators)

    @cached_property
    def is_cyclic(self) -> bool:
        return any(self.group.orders[x] == self.order for x in self.elements)

    def as_group(self, name: str | None = None) -> FiniteGroup:
        index = {x: i for i, x in enumerate(self.elements)}
        t = self.group.table
        table = [[index[t[a][b]] for b in self.elements] for a in self.elements]
        labels = [self.group.labels[x] for x in self.elements]
        return FiniteGroup(table, labels, name=name, verify=False)

    def verify(self) -> bool:
        """Closed under products and inverses and contains the identity."""
        G = self.group
        m = self.members
        return (
            G.identity in m
            and all(G.inverse[a] in m for a in m)
            and all(G.table[a][b] in m for a in m for b in m)
        )

    def __repr__(self) -> str:
        return f"<Subgroup of order {self.order} in {self.group!r}>"


# ---------------------------------------------------------------------------
# closure and subgroup lattice


def generate(G: FiniteGroup, gens: Iterable[int]) -> list[int]:
    """Elements of the subgroup generated by ``gens`` (closure under right multiplication)."""
    gens = [g for g in dict.fromkeys(gens) if g != G.identity]
    elems = [G.identity]
    seen = {G.identity}
    t = G.table
    for a in elems:
        row = t[a]
        for g in gens:
            b = row[g]
            if b not in seen:
                seen.add(b)
                elems.append(b)
    return elems


def subgroup_closure(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    seed = list(seed)
    if any(not 0 <= s < G.n for s in seed):
        raise ValueError("seed element outside the group")
    return Subgroup(G, tuple(generate(G, seed)))


def element_orders(G: FiniteGroup) -> list[int]:
    return list(G.orders)


def cyclic_subgroups(G: FiniteGroup) -> list[Subgroup]:
    seen: dict[tuple[int, ...], Subgroup] = {}
    for x in range(G.n):
        H = subgroup_closure(G, [x])
        seen.setdefault(H.elements, H)
    return sorted(seen.values(), key=lambda H: (H.order, H.elements))


def all_subgroups(G: FiniteGroup, cap: int | None = None) -> list[Subgroup]:
    """Every subgroup of ``G``, ascending by order then by element list.

    Starts from the cyclic subgroups and joins single generators until no new
    subgroup appears.
    """
    cap = default_cap() if cap is None else cap
    if G.n > cap:
        raise SizeCap(f"subgroup enumeration refused for order {G.n} > cap {cap}")
    cyclic = cyclic_subgroups(G)
    # one generator per cyclic subgroup; the greedy generating set need not contain one
    cyc_gens = [next(x for x in H.elements if G.orders[x] == H.order) for H in cyclic]
    found: dict[tuple[int, ...], Subgroup] = {H.elements: H for H in cyclic}
    frontier = [H for H in cyclic if H.order > 1]
    while frontier:
        nxt = []
        for H in frontier:
            if H.order == G.n:
                continue
            for x in cyc_gens:
                if x in H.members:
                    continue
                K = Subgroup(G, tuple(generate(G, H.generators + (x,))))
                if K.elements not in found:
                    found[K.elements] = K
                    nxt.append(K)
        frontier = nxt
    return sorted(found.values(), key=lambda H: (H.order, H.elements))


def commutator_of(G: FiniteGroup, H: Subgroup, K: Subgroup) -> Subgroup:
    comms = {G.commutator(h, k) for h in H.elements for k in K.elements}
    return subgroup_closure(G, sorted(comms))


def commutator_subgroup(G: FiniteGroup) -> Subgroup:
    return commutator_of(G, G.whole, G.whole)


def derived_series(G: FiniteGroup) -> list[Subgroup]:
    """``G >= G' >= G'' >= ...`` until it stabilises (last entry repeated once removed)."""
    series = [G.whole]
    while True:
        nxt = commutator_of(G, series[-1], series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def lower_central_series(G: FiniteGroup) -> list[Subgroup]:
    series = [G.whole]
    while True:
        nxt = commutator_of(G, series[-1], G.whole)
        if nxt == series[-1]:
            return series
        series.append(nxt)


def center(G: FiniteGroup) -> Subgroup:
    t = G.table
    return Subgroup(G, tuple(z for z in range(G.n) if all(t[z][g] == t[g][z] for g in G.generators)))


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    m = H.members
    return Subgroup(G, tuple(g for g in range(G.n) if all(G.conj(h, g) in m for h in H.generators)))


def conjugacy_classes(G: FiniteGroup) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    classes = []
    for a in range(G.n):
        if a in seen:
            continue
        cls = sorted({G.conj(a, g) for g in range(G.n)})
        seen.update(cls)
        classes.append(tuple(cls))
    return classes


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    return H.is_normal()


def quotient(G: FiniteGroup, N: Subgroup, cap: int | None = None) -> FiniteGroup:
    """``G / N`` as a table on cosets (each coset labelled by its least element)."""
    if not N.is_normal():
        raise NotNormal("subgroup is not normal")
    coset_of = [-1] * G.n
    reps = []
    t = G.table
    for g in range(G.n):
        if coset_of[g] < 0:
            c = len(reps)
            reps.append(g)
            for x in N.elements:
                coset_of[t[g][x]] = c
    table = [[coset_of[t[a][b]] for b in reps] for a in reps]
    labels = [f"{G.labels[r]}N" for r in reps]
    return FiniteGroup(table, labels, name=f"{G.name}/N" if G.name else None, cap=cap, verify=False)


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """One Sylow ``p``-subgroup, grown inside successive normalizers.

    Each step adjoins the least element ``x`` of ``N_G(P) \\ P`` with ``x^p`` in
    ``P``; such an element exists while ``P`` is not Sylow.
    """
    if not is_prime(p) or G.n % p:
        raise PrimeDoesNotDivide(f"{p} is not a prime dividing {G.n}")
    target = p ** dict(factorize(G.n))[p]
    P = G.trivial
    while P.order < target:
        N = normalizer(G, P)
        for x in N.elements:
            if x not in P.members and G.power(x, p) in P.members:
                P = subgroup_closure(G, P.generators + (x,))
                break
        else:  # pragma: no cover - Sylow theory guarantees an element
            raise AssertionError("normalizer growth stalled")
    return P


def abelian_invariants(G: FiniteGroup) -> FiniteAbelianGroup:
    """Invariant factors of ``G / G'``."""
    A = quotient(G, commutator_subgroup(G))
    counts = Counter(A.orders)
    by_prime: dict[int, list[int]] = {}
    for p, _ in factorize(A.n) if A.n > 1 else ():
        # |A[p^k]| / |A[p^(k-1)]| = p^(number of cyclic factors of order >= p^k)
        sizes = [1]
        while True:
            k = len(sizes)
            sizes.append(sum(c for o, c in counts.items() if (p**k) % o == 0))
            if sizes[-1] == sizes[-2]:
                break
        at_least = [valuation(sizes[k] // sizes[k - 1], p) for k in range(1, len(sizes))]
        for k in range(len(at_least) - 1):
            by_prime.setdefault(p, []).extend([p ** (k + 1)] * (at_least[k] - at_least[k + 1]))
    width = max((len(v) for v in by_prime.values()), default=0)
    inv = [1] * width
    for powers in by_prime.values():
        powers.sort(reverse=True)
        for i, q in enumerate(powers):
            inv[width - 1 - i] *= q
    return FiniteAbelianGroup.from_diagonal(inv)


def probably_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    """Heuristic only: equal order, abelianization and element-order multiset.

    Non-isomorphic groups can agree on all three; a False answer is certain.
    """
    return (
        G.n == H.n
        and Counter(G.orders) == Counter(H.orders)
        and abelian_invariants(G) == abelian_invariants(H)
    )
