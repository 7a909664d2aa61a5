"""Narrow class groups of quadratic fields via binary quadratic forms.

This module is the computational oracle for the congruence classifiers and
is deliberately independent of them: everything is derived from reduced
forms, Gauss composition, continued fractions and genus theory.

Conventions:

* For D < 0 the group is the classes of primitive positive definite forms
  under proper equivalence (narrow = ordinary class group).
* For D > 0 it is the classes of primitive indefinite forms, computed by
  partitioning the reduced forms into reduction cycles; two forms are
  equivalent iff their cycles coincide.  This is the narrow class group.
* The restricted quotient Cl' divides the 2-Sylow subgroup by the 2-parts
  of the dyadic prime classes (the classes of norm-2 forms): both classes
  when 2 splits, the single one when 2 ramifies, none when 2 is inert.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .arith import (
    SquarefreeInt,
    factorize,
    field_discriminant,
    kronecker,
    odd_part,
    squarefree_decompose,
    v2,
)
from .errors import EffortBoundExceeded
from .rayclass import AbelianGroupStructure

# Enumeration bounds; exhaustive form listing is quadratic-ish in sqrt(|D|).
MAX_NEGATIVE_DISC = 4_000_000
MAX_POSITIVE_DISC = 100_000

CONTINUED_FRACTION_STEPS = 100_000


@dataclass(frozen=True)
class QuadForm:
    """The binary quadratic form a x^2 + b xy + c y^2."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def content(self) -> int:
        return math.gcd(math.gcd(self.a, self.b), self.c)

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def inverse(self) -> "QuadForm":
        return QuadForm(self.a, -self.b, self.c)

    def key(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return all(e == 1 for _, e in factorize(D))
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and all(e == 1 for _, e in factorize(m))
    return False


def _require_fundamental(D: int) -> None:
    if not is_fundamental_discriminant(D):
        raise ValueError(
            f"D={D} is not a fundamental discriminant; for a squarefree label m "
            "use field_discriminant(m) = m or 4m"
        )


def principal_form(D: int) -> QuadForm:
    b = D % 2
    return QuadForm(1, b, (b * b - D) // 4)


def reduce_definite(f: QuadForm) -> QuadForm:
    """The unique reduced representative of a positive definite class."""
    D = f.discriminant
    a, b, c = f.a, f.b, f.c
    assert a > 0 and D < 0
    while True:
        if b > a or b <= -a:
            k = (b + a) // (2 * a)  # shift b into (-a, a]
            b -= 2 * a * k
            c = (b * b - D) // (4 * a)
        if a > c:
            a, b, c = c, -b, a
            continue
        break
    if b < 0 and (a == c or b == -a):
        b = -b
    return QuadForm(a, b, c)


def _is_reduced_indefinite(f: QuadForm, sq: int) -> bool:
    D = f.discriminant
    b = f.b
    if b <= 0 or b * b >= D:
        return False
    t = 2 * abs(f.a)
    # |sqrt(D) - 2|a|| < b < sqrt(D)
    if t > b and (t - b) * (t - b) >= D:
        return False
    return D < (t + b) * (t + b)


def _rho(f: QuadForm, sq: int) -> QuadForm:
    # Reduction operator for indefinite forms: (a, b, c) -> (c, r, *) with
    # r = -b (mod 2|c|) chosen in the standard window.
    D = f.discriminant
    c = f.c
    ac = abs(c)
    if ac * ac > D:
        r = (-f.b) % (2 * ac)
        if r > ac:
            r -= 2 * ac
    else:
        r = sq - ((sq + f.b) % (2 * ac))
    return QuadForm(c, r, (r * r - D) // (4 * c))


def reduce_indefinite(f: QuadForm) -> QuadForm:
    D = f.discriminant
    sq = math.isqrt(D)
    for _ in range(10_000):
        if _is_reduced_indefinite(f, sq):
            return f
        f = _rho(f, sq)
    raise AssertionError(f"indefinite reduction did not terminate for {f}")


def reduction_cycle(f: QuadForm) -> list[QuadForm]:
    """The cycle of reduced forms properly equivalent to f (D > 0)."""
    D = f.discriminant
    sq = math.isqrt(D)
    start = reduce_indefinite(f)
    cycle = [start]
    g = _rho(start, sq)
    while g != start:
        cycle.append(g)
        g = _rho(g, sq)
    return cycle


def canonical_rep(f: QuadForm) -> QuadForm:
    """Canonical representative of the proper equivalence class of f."""
    if f.discriminant < 0:
        g = f if f.a > 0 else QuadForm(-f.a, f.b, -f.c)  # definite: work with positive
        return reduce_definite(g)
    return min(reduction_cycle(f), key=QuadForm.key)


def _crt(r1: int, m1: int, r2: int, m2: int) -> int:
    m1, m2 = abs(m1), abs(m2)
    g = math.gcd(m1, m2)
    if (r2 - r1) % g:
        raise ValueError("incompatible congruences")
    l = m1 // g * m2
    if m2 == g:
        return r1 % l
    t = ((r2 - r1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g)
    return (r1 + m1 * t) % l


def _with_leading_coprime_to(f: QuadForm, N: int) -> QuadForm:
    """A properly equivalent form whose leading coefficient is coprime to N."""
    if math.gcd(f.a, N) == 1:
        return f
    assert f.content == 1
    # pick (x, y) mod each prime of N so that f(x, y) is a unit mod p
    primes = [p for p, _ in factorize(N)]
    rad = 1
    for p in primes:
        rad *= p
    x0 = y0 = 0
    mod = 1
    for p in primes:
        if f.a % p:
            xp, yp = 1, 0
        elif f.c % p:
            xp, yp = 0, 1
        else:
            xp, yp = 1, 1  # then f(1,1) = b (mod p), nonzero by primitivity
        x0, y0 = _crt(x0, mod, xp, p), _crt(y0, mod, yp, p)
        mod *= p
    # make (x0, y0) primitive without disturbing the residues mod rad
    if math.gcd(x0, y0) != 1:
        extra = 1
        for q, _ in factorize(x0 if x0 else 1):
            if rad % q:
                extra *= q
        if extra > 1:
            k = (1 - y0) * pow(rad, -1, extra) % extra
            y0 += k * rad
    assert math.gcd(x0, y0) == 1
    # complete to a determinant-1 matrix [[x0, u], [y0, v]]
    g, s, t = _egcd(x0, y0)
    v, u = s, -t
    a2 = f(x0, y0)
    b2 = 2 * f.a * x0 * u + f.b * (x0 * v + y0 * u) + 2 * f.c * y0 * v
    c2 = f(u, v)
    out = QuadForm(a2, b2, c2)
    assert out.discriminant == f.discriminant
    assert math.gcd(a2, N) == 1
    return out


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def compose(f1: QuadForm, f2: QuadForm) -> QuadForm:
    """Gauss composition of primitive forms of equal discriminant."""
    D = f1.discriminant
    if f2.discriminant != D:
        raise ValueError("forms must share a discriminant")
    g2 = _with_leading_coprime_to(f2, f1.a)
    a1, a2 = f1.a, g2.a
    b = _crt(f1.b, 2 * a1, g2.b, 2 * a2)
    A = a1 * a2
    c = (b * b - D) // (4 * A)
    return QuadForm(A, b, c)


def _enumerate_definite(D: int) -> list[QuadForm]:
    forms = []
    for b in range(D % 2, math.isqrt(-D // 3) + 1, 2):
        n = (b * b - D) // 4
        for a in range(max(b, 1), math.isqrt(n) + 1):
            if n % a:
                continue
            c = n // a
            f = QuadForm(a, b, c)
            if f.content != 1:
                continue
            forms.append(f)
            if 0 < b < a < c:
                forms.append(QuadForm(a, -b, c))
    return sorted(forms, key=QuadForm.key)


def _enumerate_indefinite_reduced(D: int) -> list[QuadForm]:
    sq = math.isqrt(D)
    forms = []
    start = 1 if D % 2 else 2
    for b in range(start, sq + 1, 2):
        n = (D - b * b) // 4
        if n <= 0:
            continue
        for d in range(1, math.isqrt(n) + 1):
            if n % d:
                continue
            for a in {d, n // d, -d, -(n // d)}:
                c = -n // a
                f = QuadForm(a, b, c)
                if f.content == 1 and _is_reduced_indefinite(f, sq):
                    forms.append(f)
    return sorted(set(forms), key=QuadForm.key)


def _dyadic_forms(D: int) -> list[QuadForm]:
    # norm-2 forms: both prime ideals above a split 2, the single ramified one
    if D % 2 == 1:
        if D % 8 != 1:
            return []
        c = (1 - D) // 8
        return [QuadForm(2, 1, c), QuadForm(2, -1, c)]
    if D % 8 == 0:
        return [QuadForm(2, 0, -D // 8)]
    return [QuadForm(2, 2, (4 - D) // 8)]


@dataclass(frozen=True)
class ClassGroup:
    """Narrow class group of a fundamental discriminant, as a full table.

    ``elements`` are canonical class representatives, ``invariant_factors``
    the structure d1 | d2 | ..., ``dyadic_classes`` the classes of the
    prime ideals above 2 (when 2 is not inert), ``two_sylow`` the invariant
    factors of the 2-Sylow subgroup.
    """

    D: int
    elements: tuple[QuadForm, ...]
    invariant_factors: tuple[int, ...]
    dyadic_classes: tuple[QuadForm, ...]
    two_sylow: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> QuadForm:
        return canonical_rep(principal_form(self.D))

    def mul(self, x: QuadForm, y: QuadForm) -> QuadForm:
        return canonical_rep(compose(x, y))

    def inv(self, x: QuadForm) -> QuadForm:
        return canonical_rep(x.inverse())

    def pow(self, x: QuadForm, n: int) -> QuadForm:
        if n < 0:
            return self.pow(self.inv(x), -n)
        out = self.identity
        while n:
            if n & 1:
                out = self.mul(out, x)
            x = self.mul(x, x)
            n >>= 1
        return out

    def element_order(self, x: QuadForm) -> int:
        t = self.order
        for p, _ in factorize(t) if t > 1 else []:
            while t % p == 0 and self.pow(x, t // p) == self.identity:
                t //= p
        return t

    def subgroup(self, gens: list[QuadForm]) -> frozenset[QuadForm]:
        closure = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in closure:
                    closure.add(y)
                    frontier.append(y)
        return frozenset(closure)

    def two_sylow_elements(self) -> list[QuadForm]:
        e = v2(self.order) if self.order > 1 else 0
        full = 1 << e
        return [x for x in self.elements if self.pow(x, full) == self.identity]


def _p_partition_from_counts(counts: list[int], p: int) -> list[int]:
    # counts[k] = number of solutions of x^(p^k) = 1 for k = 0..; returns the
    # exponent partition e_1 >= e_2 >= ... of the p-group
    vs = []
    for c in counts:
        val = 0
        while c > 1:
            assert c % p == 0
            c //= p
            val += 1
        vs.append(val)
    ms = [vs[k] - vs[k - 1] for k in range(1, len(vs))]
    if not ms or ms[0] == 0:
        return []
    return [sum(1 for mk in ms if mk >= j) for j in range(1, ms[0] + 1)]


def _structure(elements, mul, identity, h) -> tuple[int, ...]:
    # invariant factors d1 | d2 | ... from torsion counting per prime
    if h == 1:
        return ()
    parts: dict[int, list[int]] = {}
    for p, e in factorize(h):
        cur = {x: x for x in elements}
        counts = [1]
        for _ in range(e):
            nxt = {}
            for x, y in cur.items():
                yk = y
                out = identity
                n = p
                while n:
                    if n & 1:
                        out = mul(out, yk)
                    yk = mul(yk, yk)
                    n >>= 1
                nxt[x] = out
            cur = nxt
            counts.append(sum(1 for y in cur.values() if y == identity))
        parts[p] = _p_partition_from_counts(counts, p)
    rank = max(len(v) for v in parts.values())
    factors = []
    for i in range(rank):
        d = 1
        for p, exps in parts.items():
            if i < len(exps):
                d *= p ** exps[i]
        factors.append(d)
    factors.reverse()  # ascending divisibility
    return tuple(factors)


@lru_cache(maxsize=None)
def narrow_class_group(D: int) -> ClassGroup:
    """Narrow class group of the fundamental discriminant D, fully enumerated."""
    _require_fundamental(D)
    if D < -MAX_NEGATIVE_DISC or D > MAX_POSITIVE_DISC:
        raise ValueError(
            f"|D|={abs(D)} exceeds the enumeration bound "
            f"({MAX_NEGATIVE_DISC} for D<0, {MAX_POSITIVE_DISC} for D>0)"
        )
    if D < 0:
        elements = tuple(_enumerate_definite(D))
    else:
        reduced = _enumerate_indefinite_reduced(D)
        seen: set[QuadForm] = set()
        reps = []
        for f in reduced:
            if f in seen:
                continue
            cyc = reduction_cycle(f)
            seen.update(cyc)
            reps.append(min(cyc, key=QuadForm.key))
        elements = tuple(sorted(reps, key=QuadForm.key))

    identity = canonical_rep(principal_form(D))
    assert identity in elements

    def mul(x: QuadForm, y: QuadForm) -> QuadForm:
        return canonical_rep(compose(x, y))

    h = len(elements)
    factors = _structure(elements, mul, identity, h)
    prod = 1
    for d in factors:
        prod *= d
    assert prod == h

    dyadic = tuple(canonical_rep(f) for f in _dyadic_forms(D))
    for f in dyadic:
        assert f in elements

    two = tuple(d for d in ((1 << v2(d)) for d in factors if d % 2 == 0))
    group = ClassGroup(D, elements, factors, dyadic, two)

    # light self-checks: identity and inverses on the full element list
    for x in elements:
        assert group.mul(identity, x) == x
        assert group.mul(x, group.inv(x)) == identity
    return group


@dataclass(frozen=True)
class FundamentalUnit:
    """Fundamental unit (x + y sqrt(m))/2 of the real field Q(sqrt(m)).

    x, y > 0 are minimal with x^2 - m y^2 = +-4; norm_sign is that sign.
    """

    m: int
    x: int
    y: int
    norm_sign: int


def fundamental_unit(m: int) -> FundamentalUnit:
    """Fundamental unit via the continued fraction of sqrt(m) or (1+sqrt(m))/2.

    The expansion of the generator of the maximal order is followed until
    the complete quotient repeats; the matrix spanning one period fixes the
    generator and reads off the unit.
    """
    m = int(m)
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    s, f = squarefree_decompose(m)
    if f != 1 or s.value != m:
        raise ValueError(f"m={m} is not squarefree")
    half = m % 4 == 1  # maximal order generated by (1 + sqrt(m))/2
    P, Q = (1, 2) if half else (0, 1)
    sq = math.isqrt(m)
    # convergent matrix M_k = [[p_{k-1}, p_{k-2}], [q_{k-1}, q_{k-2}]]
    pm1, pm2, qm1, qm2 = 1, 0, 0, 1
    seen: dict[tuple[int, int], tuple[int, int, int, int]] = {}
    for _ in range(CONTINUED_FRACTION_STEPS):
        state = (P, Q)
        if state in seen:
            a11, a12, a21, a22 = seen[state]
            det = a11 * a22 - a12 * a21  # +-1
            # B = M_now * M_then^{-1}
            i11, i12, i21, i22 = det * a22, -det * a12, -det * a21, det * a11
            r = pm1 * i11 + pm2 * i21
            sco = pm1 * i12 + pm2 * i22
            t = qm1 * i11 + qm2 * i21
            u = qm1 * i12 + qm2 * i22
            # B fixes the expanded irrational; check it in the basis (1, w)
            if half:
                assert t + u - r == 0 and t * (m - 1) // 4 == sco
                x, y = 2 * u + t, t
            else:
                assert u == r and sco == t * m
                x, y = 2 * u, 2 * t
            if x < 0:
                x, y = -x, -y
            norm = (x * x - m * y * y) // 4
            assert norm in (1, -1)
            if y < 0:
                x, y = norm * x, -norm * y
                if x < 0:
                    x, y = -x, -y
            assert x > 0 and y > 0 and x * x - m * y * y == 4 * norm
            return FundamentalUnit(m, x, y, norm)
        seen[state] = (pm1, pm2, qm1, qm2)
        a = (P + sq) // Q
        P = a * Q - P
        Q = (m - P * P) // Q
        pm1, pm2 = a * pm1 + pm2, pm1
        qm1, qm2 = a * qm1 + qm2, qm1
    raise EffortBoundExceeded(
        f"continued fraction of sqrt({m}) exceeded {CONTINUED_FRACTION_STEPS} steps"
    )


def restricted_2class_quotient(D: int) -> tuple[AbelianGroupStructure, bool]:
    """The quotient Cl' and whether the field has a unique dyadic place.

    Cl' is the 2-Sylow of the narrow class group modulo the subgroup
    generated by the 2-parts of the dyadic prime classes.  The field has a
    unique dyadic place iff 2 does not split, i.e. kronecker(D, 2) != 1.
    """
    group = narrow_class_group(D)
    unique_dyadic = kronecker(D, 2) != 1
    sylow = group.two_sylow_elements()
    gens = [
        group.pow(c, odd_part(group.element_order(c))) for c in group.dyadic_classes
    ]
    H = group.subgroup(gens)
    quotient_size = len(sylow) // len(H)
    counts = [1]
    cur = {x: x for x in sylow}
    while counts[-1] < quotient_size:
        nxt = {x: group.mul(y, y) for x, y in cur.items()}
        cur = nxt
        counts.append(sum(1 for y in cur.values() if y in H) // len(H))
    exps = _p_partition_from_counts(counts, 2)
    factors = tuple(sorted(1 << e for e in exps))
    return AbelianGroupStructure(factors), unique_dyadic


def verify_2rational_quadratic(m: int | SquarefreeInt) -> bool:
    """Oracle for 2-rationality of Q(sqrt(m)): unique dyadic place and Cl' = 1."""
    m = int(m)
    if m in (0, 1):
        raise ValueError(f"m={m} does not label a quadratic field")
    structure, unique_dyadic = restricted_2class_quotient(field_discriminant(m))
    return structure.is_trivial and unique_dyadic


def verify_2birational_quadratic_oracle(d: int | SquarefreeInt) -> tuple[bool, bool]:
    """Oracle conditions for 2-birationality of Q(sqrt(-d)).

    Returns (two dyadic places, 2-Sylow generated by the dyadic classes).
    These are necessary conditions; the unit-index condition is not checked
    here, so oracle agreement is asserted only for classifier positives.
    """
    d = int(d)
    if d < 1:
        raise ValueError(f"expected positive squarefree d, got {d}")
    two_dyadic = (-d) % 8 == 1
    structure, _ = restricted_2class_quotient(field_discriminant(-d))
    return two_dyadic, structure.is_trivial


def genus_2rank(D: int) -> int:
    """2-rank of the narrow class group by genus theory: one less than the
    number of prime discriminants dividing D."""
    _require_fundamental(D)
    t = len([p for p, _ in factorize(D) if p != 2])
    if D % 2 == 0:
        t += 1
    return t - 1
