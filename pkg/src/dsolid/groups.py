"""Monomial symmetries of a weighted projective space and finite groups of them.

A monomial symmetry combines a permutation of the weight-1 coordinates with
multiplication of every coordinate by a root of unity.  On the weighted
projective space P(1,...,1,2) the rescaling x_i -> z^s x_i, y -> z^(2s) y acts
trivially, so symmetries are classes modulo that rescaling; the canonical
representative shifts all exponents so the first x-exponent is zero.

Composition matches multiplication of the associated generalized permutation
matrices: ``(a * b)`` acts on polynomials by substituting b first, then a.

``GroupTable`` enumerates a finite group once and answers every structural
query (center, derived subgroup, Sylow subgroups, the full subgroup lattice,
quotients, centralizers) by exhaustive computation over the table, which is
the right tool at order 160.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    BoundExceeded,
    DivisibilityError,
    NormalityError,
    SignatureError,
    SubgroupError,
)


@dataclass(frozen=True)
class AmbientSignature:
    """Weighted projective space P(1^x_count, 2) with a fixed root modulus."""

    x_count: int = 4
    modulus: int = 40

    def __post_init__(self):
        if self.x_count < 1:
            raise ValueError("need at least one weight-1 coordinate")
        if self.modulus < 2 or self.modulus % 2 != 0:
            raise ValueError("root modulus must be even (the sign -1 must exist)")

    @property
    def weights(self) -> tuple[int, ...]:
        return (1,) * self.x_count + (2,)


@dataclass(frozen=True)
class MonomialSymmetry:
    """Canonical representative of a monomial transformation modulo rescaling.

    ``perm[i]`` is the index of the coordinate that x_i is sent to, and
    ``x_exponents[i]`` the exponent of the root multiplying x_i, i.e. the map
    is x_i -> zeta^e_i * x_perm[i], y -> zeta^y_exponent * y.
    """

    signature: AmbientSignature
    perm: tuple[int, ...]
    x_exponents: tuple[int, ...]
    y_exponent: int

    def __post_init__(self):
        r, n = self.signature.x_count, self.signature.modulus
        if len(self.perm) != r or sorted(self.perm) != list(range(r)):
            raise ValueError(f"perm must be a bijection of 0..{r - 1}, got {self.perm}")
        if len(self.x_exponents) != r:
            raise ValueError("one x-exponent per weight-1 coordinate required")
        shift = self.x_exponents[0]
        object.__setattr__(self, "perm", tuple(self.perm))
        object.__setattr__(
            self, "x_exponents", tuple((e - shift) % n for e in self.x_exponents)
        )
        object.__setattr__(self, "y_exponent", (self.y_exponent - 2 * shift) % n)

    @classmethod
    def identity(cls, signature: AmbientSignature) -> "MonomialSymmetry":
        r = signature.x_count
        return cls(signature, tuple(range(r)), (0,) * r, 0)

    @classmethod
    def diagonal(cls, signature: AmbientSignature, x_exponents, y_exponent) -> "MonomialSymmetry":
        return cls(signature, tuple(range(signature.x_count)), tuple(x_exponents), y_exponent)

    def _check(self, other: "MonomialSymmetry"):
        if self.signature != other.signature:
            raise SignatureError("cannot combine symmetries of different ambient spaces")

    def __mul__(self, other: "MonomialSymmetry") -> "MonomialSymmetry":
        """Matrix product: apply ``other`` to coordinates first, then ``self``."""
        self._check(other)
        r = self.signature.x_count
        perm = tuple(self.perm[other.perm[i]] for i in range(r))
        exps = tuple(other.x_exponents[i] + self.x_exponents[other.perm[i]] for i in range(r))
        return MonomialSymmetry(self.signature, perm, exps, other.y_exponent + self.y_exponent)

    def inverse(self) -> "MonomialSymmetry":
        r = self.signature.x_count
        inv_perm = [0] * r
        for i, p in enumerate(self.perm):
            inv_perm[p] = i
        exps = tuple(-self.x_exponents[inv_perm[i]] for i in range(r))
        return MonomialSymmetry(self.signature, tuple(inv_perm), exps, -self.y_exponent)

    def __pow__(self, k: int) -> "MonomialSymmetry":
        if k < 0:
            return self.inverse() ** (-k)
        out = MonomialSymmetry.identity(self.signature)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_identity(self) -> bool:
        return (
            self.perm == tuple(range(self.signature.x_count))
            and not any(self.x_exponents)
            and self.y_exponent == 0
        )

    def permutation_sign(self) -> int:
        sign, seen = 1, [False] * len(self.perm)
        for i in range(len(self.perm)):
            if not seen[i]:
                length, j = 0, i
                while not seen[j]:
                    seen[j] = True
                    j = self.perm[j]
                    length += 1
                if length % 2 == 0:
                    sign = -sign
        return sign


def compose(a: MonomialSymmetry, b: MonomialSymmetry) -> MonomialSymmetry:
    return a * b


def conjugation_power(b: MonomialSymmetry, a: MonomialSymmetry, max_power: int | None = None) -> int | None:
    """The k with b a b^-1 == a^k, or None if the conjugate leaves <a>."""
    conj = b * a * b.inverse()
    power = MonomialSymmetry.identity(a.signature)
    limit = max_power if max_power is not None else a.signature.modulus * 4
    for k in range(limit + 1):
        if power == conj:
            return k
        power = power * a
    return None


class GroupTable:
    """A finite group enumerated as elements plus a Cayley table on indices.

    The identity always sits at index 0.  Element order is the deterministic
    breadth-first discovery order of ``close``, so downstream certificates are
    byte-reproducible.  Tables obtained through ``subgroup`` remember their
    parent and the positions of their elements inside it.
    """

    def __init__(self, elements, table, words=None, parent=None, parent_positions=None):
        self.elements = tuple(elements)
        self.table = [list(row) for row in table]
        n = len(self.elements)
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError("square table required")
        self.words = tuple(words) if words is not None else None
        self.parent = parent
        self.parent_positions = tuple(parent_positions) if parent_positions is not None else None
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != n:
            raise ValueError("duplicate elements")
        self.inverse_table = [row.index(0) for row in self.table]
        if any(self.table[0][j] != j or self.table[j][0] != j for j in range(n)):
            raise ValueError("identity must be at index 0")

    # -- construction -----------------------------------------------------

    @classmethod
    def close(cls, generators, names=None, bound: int = 10**6) -> "GroupTable":
        """Breadth-first closure of the generators under composition."""
        generators = list(generators)
        if names is None:
            names = [f"g{i}" for i in range(len(generators))]
        if generators:
            identity = MonomialSymmetry.identity(generators[0].signature)
        else:
            identity = MonomialSymmetry.identity(AmbientSignature())
        elements = [identity]
        words = ["1"]
        index = {identity: 0}
        cursor = 0
        while cursor < len(elements):
            current = elements[cursor]
            for gen, name in zip(generators, names):
                new = current * gen
                if new not in index:
                    index[new] = len(elements)
                    elements.append(new)
                    words.append(_append_word(words[cursor], name))
                    if len(elements) > bound:
                        raise BoundExceeded(f"closure exceeded {bound} elements")
            cursor += 1
        n = len(elements)
        table = [[index[elements[i] * elements[j]] for j in range(n)] for i in range(n)]
        return cls(elements, table, words=words)

    @classmethod
    def from_table(cls, table, elements=None, words=None) -> "GroupTable":
        n = len(table)
        if elements is None:
            elements = tuple(range(n))
        return cls(elements, table, words=words)

    def subgroup(self, positions) -> "GroupTable":
        """The subgroup on the given sorted parent positions."""
        positions = sorted(set(positions))
        if not positions or positions[0] != 0:
            positions = sorted(set(positions) | {0})
        local = {p: i for i, p in enumerate(positions)}
        try:
            table = [[local[self.table[i][j]] for j in positions] for i in positions]
        except KeyError:
            raise SubgroupError("positions are not closed under composition") from None
        return GroupTable(
            [self.elements[p] for p in positions],
            table,
            words=[self.words[p] for p in positions] if self.words else None,
            parent=self,
            parent_positions=positions,
        )

    # -- basic queries -----------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, element):
        return element in self._index

    def index(self, element) -> int:
        return self._index[element]

    def word(self, position: int) -> str:
        return self.words[position] if self.words else str(self.elements[position])

    def compose_positions(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inverse_position(self, i: int) -> int:
        return self.inverse_table[i]

    def element_order(self, i: int) -> int:
        order, x = 1, i
        while x != 0:
            x = self.table[x][i]
            order += 1
        return order

    def element_orders(self) -> tuple[int, ...]:
        """Multiset of element orders, sorted ascending."""
        return tuple(sorted(self.element_order(i) for i in range(self.order)))

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(i + 1, n))

    def is_cyclic(self) -> bool:
        return any(self.element_order(i) == self.order for i in range(self.order))

    def is_klein_four(self) -> bool:
        return self.order == 4 and all(self.element_order(i) <= 2 for i in range(4))

    def exponent_of_prime(self, p: int) -> int:
        k, m = 0, self.order
        while m % p == 0:
            k, m = k + 1, m // p
        return k

    # -- closures over positions -------------------------------------------

    def close_positions(self, seed) -> frozenset[int]:
        """Positions of the subgroup generated by the seed positions."""
        members = {0} | set(seed)
        gens = sorted(set(seed))
        boundary = sorted(members)
        table = self.table
        while boundary:
            fresh = []
            for x in boundary:
                row = table[x]
                for g in gens:
                    y = row[g]
                    if y not in members:
                        members.add(y)
                        fresh.append(y)
            boundary = fresh
        return frozenset(members)

    # -- named subgroups ----------------------------------------------------

    def center(self) -> "GroupTable":
        n = self.order
        central = [
            i for i in range(n) if all(self.table[i][j] == self.table[j][i] for j in range(n))
        ]
        return self.subgroup(central)

    def derived_subgroup(self) -> "GroupTable":
        """Closure of all commutators x y x^-1 y^-1."""
        n = self.order
        commutators = set()
        for i in range(n):
            for j in range(n):
                ij = self.table[i][j]
                ji_inv = self.table[self.inverse_table[i]][self.inverse_table[j]]
                commutators.add(self.table[ij][ji_inv])
        return self.subgroup(self.close_positions(commutators))

    def sylow(self, p: int) -> "GroupTable":
        """Some Sylow p-subgroup (the first in the deterministic lattice order)."""
        if p < 2 or any(p % q == 0 for q in range(2, p)):
            raise ValueError(f"{p} is not prime")
        target = p ** self.exponent_of_prime(p)
        return self.subgroups_of_order(target)[0]

    def is_normal(self, sub: "GroupTable") -> bool:
        positions = self._positions_of(sub)
        members = frozenset(positions)
        for i in range(self.order):
            inv = self.inverse_table[i]
            for h in positions:
                if self.table[self.table[i][h]][inv] not in members:
                    return False
        return True

    def centralizer(self, element) -> "GroupTable":
        i = element if isinstance(element, int) else self._index[element]
        n = self.order
        return self.subgroup([j for j in range(n) if self.table[j][i] == self.table[i][j]])

    def centralizer_of_set(self, positions) -> "GroupTable":
        n = self.order
        keep = [
            j
            for j in range(n)
            if all(self.table[j][i] == self.table[i][j] for i in positions)
        ]
        return self.subgroup(keep)

    # -- the subgroup lattice -----------------------------------------------

    @cached_property
    def _lattice(self) -> dict[frozenset[int], tuple[int, ...]]:
        """Every subgroup, as position sets mapped to a small generating tuple.

        Seeded by closures of all subsets of at most three cyclic-subgroup
        representatives (closures of arbitrary <=3-element subsets reduce to
        exactly these), then extended to a fixed point so exhaustiveness does
        not depend on a generation bound.  On this group the fixed point adds
        nothing, which the test-side oracle confirms independently.
        """
        cyclic: dict[frozenset[int], int] = {}
        for i in range(1, self.order):
            members = self.close_positions([i])
            if members not in cyclic:
                cyclic[members] = i
        reps = sorted(cyclic.values())
        lattice: dict[frozenset[int], tuple[int, ...]] = {frozenset([0]): ()}
        for members, g in sorted(cyclic.items(), key=lambda kv: kv[1]):
            lattice.setdefault(members, (g,))
        pair_level = dict(lattice)
        for g1, g2 in itertools.combinations(reps, 2):
            members = self.close_positions([g1, g2])
            if members not in lattice:
                lattice[members] = (g1, g2)
            pair_level.setdefault(members, lattice[members])
        frontier = list(lattice.items())
        while frontier:
            fresh = []
            for members, gens in frontier:
                for g in reps:
                    if g in members:
                        continue
                    bigger = self.close_positions(list(gens) + [g])
                    if bigger not in lattice:
                        lattice[bigger] = tuple(gens) + (g,)
                        fresh.append((bigger, lattice[bigger]))
            frontier = fresh
        return lattice

    def subgroups(self) -> list["GroupTable"]:
        """All subgroups, sorted by (order, position tuple)."""
        keys = sorted(self._lattice, key=lambda s: (len(s), tuple(sorted(s))))
        return [self.subgroup(k) for k in keys]

    def subgroup_position_sets(self) -> list[frozenset[int]]:
        return sorted(self._lattice, key=lambda s: (len(s), tuple(sorted(s))))

    def subgroups_of_order(self, k: int) -> list["GroupTable"]:
        if k < 1 or self.order % k != 0:
            raise DivisibilityError(f"{k} does not divide the group order {self.order}")
        keys = sorted(
            (s for s in self._lattice if len(s) == k), key=lambda s: tuple(sorted(s))
        )
        return [self.subgroup(key) for key in keys]

    def normal_subgroups_of_order(self, k: int) -> list["GroupTable"]:
        return [h for h in self.subgroups_of_order(k) if self.is_normal(h)]

    def direct_product_complements(self, z: "GroupTable") -> list["GroupTable"]:
        """All H with Z∩H trivial, ZH = G and Z, H commuting elementwise."""
        z_positions = self._positions_of(z)
        if self.order % len(z_positions) != 0:
            raise SubgroupError("complement factor must be a subgroup")
        out = []
        target = self.order // len(z_positions)
        z_set = frozenset(z_positions)
        for h in self.subgroups_of_order(target):
            h_positions = h.parent_positions
            if len(z_set & frozenset(h_positions)) != 1:
                continue
            if not all(
                self.table[a][b] == self.table[b][a] for a in z_positions for b in h_positions
            ):
                continue
            product = {self.table[a][b] for a in z_positions for b in h_positions}
            if len(product) == self.order:
                out.append(h)
        return out

    # -- quotients ------------------------------------------------------------

    def quotient(self, normal: "GroupTable") -> "GroupTable":
        """Coset group; each coset is labeled by its sorted member positions."""
        positions = self._positions_of(normal)
        sub = self.subgroup(positions)
        if not self.is_normal(sub):
            raise NormalityError("quotient requires a normal subgroup")
        coset_of: dict[int, int] = {}
        cosets: list[tuple[int, ...]] = []
        reps: list[int] = []
        for i in range(self.order):
            if i in coset_of:
                continue
            members = tuple(sorted(self.table[i][k] for k in positions))
            idx = len(cosets)
            cosets.append(members)
            reps.append(members[0])
            for m in members:
                coset_of[m] = idx
        order = sorted(range(len(cosets)), key=lambda c: reps[c])
        relabel = {old: new for new, old in enumerate(order)}
        cosets = [cosets[old] for old in order]
        reps = [reps[old] for old in order]
        table = [
            [relabel[coset_of[self.table[reps[i]][reps[j]]]] for j in range(len(cosets))]
            for i in range(len(cosets))
        ]
        words = [self.word(r) for r in reps] if self.words else None
        return GroupTable(cosets, table, words=words)

    # -- abelian structure ------------------------------------------------------

    def abelian_invariants(self) -> tuple[int, ...]:
        """Prime-power invariants of an abelian group, largest first.

        Derived from the counts of solutions of x^(p^j) = e, which determine
        the partition of each primary component.
        """
        if not self.is_abelian():
            raise ValueError("abelian_invariants needs an abelian group")
        invariants: list[int] = []
        n = self.order
        orders = [self.element_order(i) for i in range(n)]
        for p in _prime_factors(n):
            max_j = 0
            while n % (p ** (max_j + 1)) == 0:
                max_j += 1
            counts = []
            for j in range(max_j + 1):
                pj = p**j
                counts.append(sum(1 for o in orders if pj % o == 0))
            exponents = [_integer_log(c, p) for c in counts]
            # parts[j-1] = number of cyclic p-factors of order >= p^j
            parts = [exponents[j] - exponents[j - 1] for j in range(1, len(exponents))]
            for rank_index in range(parts[0] if parts else 0):
                size = max(j for j, count in enumerate(parts, start=1) if count > rank_index)
                invariants.append(p**size)
        return tuple(sorted(invariants, reverse=True))

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        seen = set()
        classes = []
        for i in range(self.order):
            if i in seen:
                continue
            members = {
                self.table[self.table[g][i]][self.inverse_table[g]] for g in range(self.order)
            }
            classes.append(tuple(sorted(members)))
            seen |= members
        return classes

    # -- helpers -----------------------------------------------------------------

    def _positions_of(self, sub: "GroupTable") -> list[int]:
        if sub.parent is self and sub.parent_positions is not None:
            return list(sub.parent_positions)
        try:
            return sorted(self._index[e] for e in sub.elements)
        except KeyError:
            raise SubgroupError("argument is not a subgroup of this group") from None

    def __repr__(self):
        return f"GroupTable(order={self.order})"


def closure(generators, names=None, bound: int = 10**6) -> GroupTable:
    """Enumerate the group generated by the given monomial symmetries."""
    return GroupTable.close(generators, names=names, bound=bound)


def _append_word(word: str, name: str) -> str:
    if word == "1":
        return name
    head, sep, tail = word.rpartition("*")
    base, caret, count = tail.partition("^")
    if base == name:
        exponent = int(count) + 1 if caret else 2
        tail = f"{name}^{exponent}"
        return f"{head}{sep}{tail}"
    return f"{word}*{name}"


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _integer_log(value: int, base: int) -> int:
    k = 0
    while value > 1:
        if value % base:
            raise ValueError(f"{value} is not a power of {base}")
        value //= base
        k += 1
    return k
