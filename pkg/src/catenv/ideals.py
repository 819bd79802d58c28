"""Constructible right ideals, characters, the spectrum and its boundary.

Ideals are canonical finite unions of principal ideals. On a finite meet
semilattice every character is a principal filter ↑X, so the spectrum is indexed
by nonzero ideals; the interesting content is the union condition (membership in
Ω), covers, tightness, and the closure of the maximal part.
"""

from __future__ import annotations

from dataclasses import dataclass

from .categories import CategoryPresentation, Morphism
from .hull import HullClosure, InverseHull, PiecewiseBijection


class PreconditionViolated(ValueError):
    pass


class InfiniteSemilattice(RuntimeError):
    pass


@dataclass(frozen=True)
class Ideal:
    parts: tuple[Morphism, ...]

    @property
    def is_empty(self):
        return not self.parts

    def __repr__(self):
        if self.is_empty:
            return "∅"
        return "∪".join(f"{b}𝔠" for b in self.parts)


class Semilattice:
    """The meet semilattice 𝒥 of constructible right ideals, with its meet table."""

    def __init__(self, hull_ctx: InverseHull, closure: HullClosure):
        self.hull = hull_ctx
        self.p: CategoryPresentation = hull_ctx.p
        self.closure = closure
        self.complete = closure.complete
        seen = {}
        for s in closure.elements:
            if not isinstance(s, PiecewiseBijection):
                continue
            for parts in (hull_ctx.domain_parts(s), hull_ctx.image_parts(s)):
                seen[Ideal(parts)] = True
        self.ideals: list[Ideal] = sorted(
            seen, key=lambda X: [self.p.sort_key(b) for b in X.parts])
        self.index = {X: i for i, X in enumerate(self.ideals)}
        self._meet_cache: dict[tuple[int, int], int] = {}

    # -- basic structure -----------------------------------------------------

    @property
    def has_zero(self):
        return Ideal(()) in self.index

    def nonzero_indices(self):
        return [i for i, X in enumerate(self.ideals) if not X.is_empty]

    def canonical(self, gens) -> Ideal:
        return Ideal(self.hull._ideal_parts(list(gens)))

    def contains(self, i: int, j: int) -> bool:
        """ideals[j] ⊆ ideals[i]."""
        big, small = self.ideals[i], self.ideals[j]
        return all(any(self.p.in_ideal(b, c) for b in big.parts)
                   for c in small.parts)

    def meet(self, i: int, j: int) -> int:
        key = (min(i, j), max(i, j))
        if key not in self._meet_cache:
            gens = []
            for b in self.ideals[i].parts:
                for c in self.ideals[j].parts:
                    for x, _ in self.p.align(b, c):
                        gens.append(self.p.compose(b, x))
            X = self.canonical(gens)
            if X not in self.index:
                raise InfiniteSemilattice(
                    f"meet {self.ideals[i]} ∧ {self.ideals[j]} escapes the table; "
                    "the hull closure is not meet-complete")
            self._meet_cache[key] = self.index[X]
        return self._meet_cache[key]

    def members(self, i: int):
        """Member morphisms (finite categories only)."""
        if not self.p.is_finite:
            raise InfiniteSemilattice("member enumeration needs a finite category")
        return [m for m in self.p.ball(None)
                if any(self.p.in_ideal(b, m) for b in self.ideals[i].parts)]

    def is_union(self, i: int, subset) -> bool:
        """ideals[i] == ⋃_{j ∈ subset} ideals[j], assuming each ideals[j] ⊆ ideals[i]."""
        for b in self.ideals[i].parts:
            if not any(any(self.p.in_ideal(c, b) for c in self.ideals[j].parts)
                       for j in subset):
                return False
        return True

    # -- covers ---------------------------------------------------------------

    def is_cover(self, F, i: int) -> bool:
        """F (ideal indices) covers ideals[i]: every nonzero sub-ideal meets some member."""
        for j in F:
            if not self.contains(i, j):
                raise PreconditionViolated(f"{self.ideals[j]} ⊄ {self.ideals[i]}")
        for j in self.nonzero_indices():
            if not self.contains(i, j):
                continue
            if not any(not self.ideals[self.meet(j, z)].is_empty for z in F):
                return False
        return True


class Character:
    """The principal-filter character χ_X: Z ↦ [Z ⊇ X]."""

    def __init__(self, lattice: Semilattice, min_index: int):
        self.lattice = lattice
        self.min_index = min_index

    def value(self, j: int) -> int:
        return 1 if self.lattice.contains(j, self.min_index) else 0

    def filter_indices(self):
        return [j for j in range(len(self.lattice.ideals)) if self.value(j)]

    def min_ideal(self) -> Ideal:
        return self.lattice.ideals[self.min_index]

    def __eq__(self, other):
        return isinstance(other, Character) and self.min_index == other.min_index \
            and self.lattice is other.lattice

    def __hash__(self):
        return hash(("chr", self.min_index))

    def __repr__(self):
        return f"χ[{self.lattice.ideals[self.min_index]}]"


def enumerate_characters(lat: Semilattice):
    """All characters in Ω, deterministically ordered.

    On a finite semilattice the characters are exactly the principal filters; the
    Ω condition rules out X that decompose into proper sub-ideal unions anywhere
    in the filter.
    """
    if not lat.complete:
        raise InfiniteSemilattice("Ω enumeration needs a complete (finite) semilattice")
    out = []
    for x in lat.nonzero_indices():
        chi = Character(lat, x)
        if _omega_condition(lat, chi):
            out.append(chi)
    return out


def _omega_condition(lat: Semilattice, chi: Character) -> bool:
    for z in lat.nonzero_indices():
        if not chi.value(z):
            continue
        zeros = [y for y in lat.nonzero_indices()
                 if lat.contains(z, y) and not chi.value(y)]
        if zeros and lat.is_union(z, zeros):
            return False
    return True


def maximal_characters(omega):
    """Characters whose filters are inclusion-maximal (⟺ minimal generating ideal)."""
    out = []
    for chi in omega:
        dominated = any(other is not chi
                        and chi.lattice.contains(chi.min_index, other.min_index)
                        and not chi.lattice.contains(other.min_index, chi.min_index)
                        for other in omega)
        if not dominated:
            out.append(chi)
    return out


def basic_set(lat: Semilattice, omega, x: int, f_indices):
    """Ω(X; 𝔣) = {χ : χ(X) = 1, χ(Y) = 0 for Y ∈ 𝔣}."""
    for y in f_indices:
        if lat.ideals[y].is_empty or not lat.contains(x, y):
            raise PreconditionViolated("𝔣 must consist of nonzero sub-ideals of X")
    return [chi for chi in omega
            if chi.value(x) == 1 and all(chi.value(y) == 0 for y in f_indices)]


def minimal_basic_neighborhood(lat: Semilattice, chi: Character):
    """The smallest basic set around χ: X = min of the filter, 𝔣 = its zero sub-ideals."""
    x = chi.min_index
    f = [y for y in lat.nonzero_indices()
         if lat.contains(x, y) and not chi.value(y)]
    return x, f


def closure(lat: Semilattice, omega, subset):
    """Topological closure inside Ω, computed through basic neighborhoods."""
    sub = set(subset)
    out = []
    for chi in omega:
        x, f = minimal_basic_neighborhood(lat, chi)
        if any(o in sub for o in basic_set(lat, omega, x, f)):
            out.append(chi)
    return out


def boundary(lat: Semilattice, omega):
    """∂Ω as the closure of the maximal characters."""
    return closure(lat, omega, maximal_characters(omega))


def is_tight(lat: Semilattice, chi: Character) -> bool:
    """Exel tightness: every cover of every filter member meets the filter.

    Equivalent single test per member Z: the sub-ideals with χ = 0 must not cover Z.
    """
    for z in chi.filter_indices():
        if lat.ideals[z].is_empty:
            continue
        zeros = [y for y in lat.nonzero_indices()
                 if lat.contains(z, y) and not chi.value(y)]
        if zeros and lat.is_cover(zeros, z):
            return False
    return True


def tight_characters(lat: Semilattice, omega):
    return [chi for chi in omega if is_tight(lat, chi)]


# -- lazy characters for truncated infinite fixtures ---------------------------


def boundary_sample(pres, count: int = 5):
    """Lazy boundary characters for the supported infinite monoid classes.

    Lattice monoids have the single full character; free monoids get a
    deterministic family of eventually periodic words.
    """
    from .categories import FreeMonoid, NkMonoid

    if isinstance(pres, NkMonoid):
        return [ChiInfinity()]
    if isinstance(pres, FreeMonoid):
        letters = pres.letters
        cycles = [l for l in letters]
        cycles += ["".join(pair) for pair in
                   zip(letters, letters[1:] + letters[:1]) if len(letters) > 1]
        out = [PeriodicWordCharacter("", c) for c in cycles]
        out += [PeriodicWordCharacter(letters[0], c) for c in cycles[1:]]
        return out[:count]
    raise InfiniteSemilattice(f"no lazy boundary model for {pres.class_name}")


class ChiInfinity:
    """The unique maximal character when 0 ∉ I_l: value 1 on every nonzero ideal."""

    def value_on_parts(self, parts) -> int:
        return 1 if parts else 0

    def __repr__(self):
        return "χ∞"


class PeriodicWordCharacter:
    """Boundary character of a free monoid given by the infinite word u·v^∞."""

    def __init__(self, head: str, cycle: str):
        if not cycle:
            raise PreconditionViolated("cycle must be nonempty")
        self.head = head
        self.cycle = cycle

    def prefix(self, n: int) -> str:
        reps = max(0, -(-(n - len(self.head)) // len(self.cycle)))
        return (self.head + self.cycle * reps)[:n]

    def value_on_parts(self, parts) -> int:
        for b in parts:
            word = "".join(b.word)
            if self.prefix(len(word)) == word:
                return 1
        return 0

    def __repr__(self):
        return f"χ[{self.head}({self.cycle})^∞]"
