"""Decomposition of odd primes along the cyclotomic 2-tower over Q.

Layer n of the tower (n >= 1) is the real subfield of the 2^(n+2)-th
cyclotomic field, of degree 2^n over Q.  An odd prime q is unramified
there and its residue degree equals the order of q in (Z/2^(n+2))*
modulo {+-1}; the split/inert pattern along the tower is what the
primitivity classification captures:

* primitive: inert at every layer, equivalently q = +-3 (mod 8);
* semi-primitive: splits at layer 1, inert beyond, equivalently
  q = +-7 (mod 16);
* imprimitive otherwise, recorded with the exact depth through which
  q keeps splitting.

The whole profile is rigid: once the residue degree starts doubling it
doubles at every deeper layer, so a finite profile plus the congruence
determines the infinite behavior.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .arith import (
    OddPrime,
    check_odd_prime,
    field_discriminant,
    kronecker,
    squarefree_decompose,
    v2,
)

DEFAULT_DEPTH = 6

SPLIT = "split"
INERT = "inert"
RAMIFIED = "ramified"

PRIMITIVE = "primitive"
SEMI_PRIMITIVE = "semi-primitive"
IMPRIMITIVE = "imprimitive"


class TowerLevel(NamedTuple):
    n: int  # layer index, degree 2^n over Q
    f: int  # residue degree
    g: int  # number of places, f * g = 2^n


@dataclass(frozen=True)
class TowerProfile:
    """Residue degrees and place counts of a prime along the tower."""

    prime: int
    levels: tuple[TowerLevel, ...]

    def __post_init__(self) -> None:
        prev_f, prev_g = 1, 1
        for lvl in self.levels:
            if lvl.f * lvl.g != 1 << lvl.n:
                raise ValueError(f"f*g != 2^n at level {lvl}")
            if lvl.f < prev_f or lvl.g < prev_g:
                raise ValueError(f"profile not monotone at level {lvl}")
            if lvl.f > 2 * prev_f or lvl.g > 2 * prev_g:
                raise ValueError(f"profile jumps by more than 2 at level {lvl}")
            prev_f, prev_g = lvl.f, lvl.g

    @property
    def residue_degrees(self) -> tuple[int, ...]:
        return tuple(lvl.f for lvl in self.levels)

    @property
    def place_counts(self) -> tuple[int, ...]:
        return tuple(lvl.g for lvl in self.levels)


@dataclass(frozen=True)
class PrimitivityClass:
    """How long a place keeps splitting along the tower.

    split_depth is the largest layer through which the place is totally
    split: 0 for primitive, 1 for semi-primitive, >= 2 for imprimitive.
    """

    kind: str
    split_depth: int

    def __post_init__(self) -> None:
        expected = {PRIMITIVE: 0, SEMI_PRIMITIVE: 1}.get(self.kind)
        if expected is not None:
            if self.split_depth != expected:
                raise ValueError(f"{self.kind} requires split_depth {expected}")
        elif self.kind != IMPRIMITIVE:
            raise ValueError(f"unknown primitivity kind {self.kind!r}")
        elif self.split_depth < 2:
            raise ValueError("imprimitive requires split_depth >= 2")

    @classmethod
    def primitive(cls) -> "PrimitivityClass":
        return cls(PRIMITIVE, 0)

    @classmethod
    def semi_primitive(cls) -> "PrimitivityClass":
        return cls(SEMI_PRIMITIVE, 1)

    @classmethod
    def imprimitive(cls, split_depth: int) -> "PrimitivityClass":
        return cls(IMPRIMITIVE, split_depth)

    @property
    def is_primitive(self) -> bool:
        return self.kind == PRIMITIVE

    @property
    def is_semi_primitive(self) -> bool:
        return self.kind == SEMI_PRIMITIVE

    def __str__(self) -> str:
        if self.kind == IMPRIMITIVE:
            return f"{self.kind}(split_depth={self.split_depth})"
        return self.kind


@dataclass(frozen=True)
class PrimePlace:
    """An odd prime with its tower profile and primitivity class over Q."""

    prime: int
    profile: TowerProfile
    primitivity: PrimitivityClass


def _order_mod_2power_up_to_sign(q: int, n: int) -> int:
    # Order of q in (Z/2^(n+2))*/{+-1}; always a power of 2, so repeated
    # squaring until the image hits +-1 finds it.
    M = 1 << (n + 2)
    x = q % M
    f = 1
    while x != 1 and x != M - 1:
        x = x * x % M
        f *= 2
    return f


def _sign_level(q: int) -> int:
    # Largest k with q = +-1 (mod 2^k); always >= 2 for odd q.
    return max(v2(q - 1), v2(q + 1))


def decomposition_profile(q: int | OddPrime, depth: int = DEFAULT_DEPTH) -> TowerProfile:
    """Residue degree f and place count g of q at tower layers 1..depth."""
    q = check_odd_prime(q)
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    levels = []
    for n in range(1, depth + 1):
        f = _order_mod_2power_up_to_sign(q, n)
        levels.append(TowerLevel(n, f, (1 << n) // f))
    return TowerProfile(q, tuple(levels))


def primitivity_over_Q(q: int | OddPrime) -> PrimitivityClass:
    """Primitivity of the place q of Q: primitive iff q = +-3 (mod 8),
    semi-primitive iff q = +-7 (mod 16), imprimitive otherwise."""
    q = check_odd_prime(q)
    depth = _sign_level(q) - 2
    if depth == 0:
        return PrimitivityClass.primitive()
    if depth == 1:
        return PrimitivityClass.semi_primitive()
    return PrimitivityClass.imprimitive(depth)


def prime_place(q: int | OddPrime, depth: int = DEFAULT_DEPTH) -> PrimePlace:
    q = check_odd_prime(q)
    return PrimePlace(q, decomposition_profile(q, depth), primitivity_over_Q(q))


def place_primitivity_in_quadratic(
    m: int, q: int | OddPrime, depth: int = DEFAULT_DEPTH
) -> tuple[str, PrimitivityClass | None]:
    """Splitting of q in K = Q(sqrt(m)) and primitivity of the places above it.

    The places of K above an unramified q are classified through the
    compositum of K with each tower layer: the Frobenius there is the pair
    (Frobenius in K, image of q in (Z/2^(n+2))*/{+-1}), of order
    lcm(f_K, f_n).  Ramified q gets no primitivity class (None); only the
    splitting is returned for it.
    """
    q = check_odd_prime(q)
    m = int(m)
    if m in (0, 1):
        raise ValueError(f"m={m} does not label a quadratic field")
    s, f = squarefree_decompose(m)
    if f != 1:
        raise ValueError(f"m={m} is not squarefree")
    symbol = kronecker(field_discriminant(m), q)
    if symbol == 0:
        return RAMIFIED, None
    f_K = 1 if symbol == 1 else 2

    # Relative profile over K, used to double-check the congruence shortcut.
    rel_f = []
    for n in range(1, depth + 1):
        f_n = _order_mod_2power_up_to_sign(q, n)
        pair_order = max(f_K, f_n)  # lcm of powers of 2
        rel_f.append(pair_order // f_K)

    # Exact split depth over K from the congruence level of q.
    t = _sign_level(q)
    split_depth = (t - 2) if f_K == 1 else (t - 1)
    for n, fr in enumerate(rel_f, start=1):
        expected = 1 if n <= split_depth else 1 << (n - split_depth)
        if fr != expected:
            raise AssertionError(
                f"profile/congruence mismatch for m={m}, q={q} at layer {n}"
            )

    if split_depth == 0:
        cls = PrimitivityClass.primitive()
    elif split_depth == 1:
        cls = PrimitivityClass.semi_primitive()
    else:
        cls = PrimitivityClass.imprimitive(split_depth)
    return (SPLIT if symbol == 1 else INERT), cls
