import math

import pytest

from birat2 import (
    AbelianGroupStructure,
    field_discriminant,
    find_propagation_field,
    kronecker,
    mirror_group_trivial,
    primes_up_to,
    ray_quotient_report,
    reflection_ranks,
    units_mod,
)
from birat2.rayclass import smith_invariant_factors


def test_abelian_structure_validation():
    s = AbelianGroupStructure((2, 4))
    assert s.order == 8 and s.two_rank == 2 and not s.is_cyclic
    assert AbelianGroupStructure(()).is_trivial
    assert AbelianGroupStructure((4,)).is_cyclic
    with pytest.raises(ValueError):
        AbelianGroupStructure((4, 2))
    with pytest.raises(ValueError):
        AbelianGroupStructure((1,))


def test_units_mod_examples():
    u = units_mod(8)
    assert [(g % 8, n) for g, n in u.generators] == [(7, 2), (5, 2)]
    u = units_mod(9)
    assert u.generators == ((2, 6),)
    u = units_mod(24)
    gens = u.generators
    assert [n for _, n in gens] == [2, 2, 2]
    # the lifts reduce to (-1, 5) mod 8 and a primitive root mod 3
    assert gens[0][0] % 8 == 7 and gens[0][0] % 3 == 1
    assert gens[1][0] % 8 == 5 and gens[1][0] % 3 == 1
    assert gens[2][0] % 8 == 1 and gens[2][0] % 3 == 2


def test_units_mod_rejects_bad_shapes():
    with pytest.raises(ValueError):
        units_mod(15)  # 3 * 5: two odd primes
    with pytest.raises(ValueError):
        units_mod(2)


def test_units_mod_dlog_roundtrip():
    for M in (8, 9, 16, 24, 40, 48, 27, 96, 11, 22):
        u = units_mod(M)
        for x in range(1, M):
            if math.gcd(x, M) != 1:
                continue
            exps = u.dlog(x)
            value = 1
            for (g, n), e in zip(u.generators, exps):
                assert 0 <= e < n
                value = value * pow(g, e, M) % M
            assert value == x % M, (M, x)


def test_smith_invariant_factors_known_cases():
    # diagonal relations
    assert smith_invariant_factors([[2, 0], [0, 8]], 2) == (2, 8)
    # gcd/lcm fix-up: Z/2 x Z/3 = Z/6
    assert smith_invariant_factors([[2, 0], [0, 3]], 2) == (6,)
    # quotient of Z^3 by <e1 + e3, e2 + e3, 2e1, 8e2, 2e3> is Z/2
    rows = [[1, 0, 1], [0, 1, 1], [2, 0, 0], [0, 8, 0], [0, 0, 2]]
    assert smith_invariant_factors(rows, 3) == (2,)
    # infinite quotient rejected
    with pytest.raises(ValueError):
        smith_invariant_factors([[2, 0]], 2)


def brute_two_part_of_quotient(p, q, k):
    """Independent oracle: enumerate (Z/2^k p)*, close <-1, q>, and read the
    2-part of the quotient off coset torsion counts."""
    M = (1 << k) * p
    units = [x for x in range(1, M) if math.gcd(x, M) == 1]
    H = {1}
    frontier = [1]
    while frontier:
        x = frontier.pop()
        for g in (M - 1, q % M):
            y = x * g % M
            if y not in H:
                H.add(y)
                frontier.append(y)
    seen, reps = set(), []
    for x in units:
        if x in seen:
            continue
        coset = {x * h % M for h in H}
        seen |= coset
        reps.append(min(coset))
    n = len(reps)
    size = 1
    while n % 2 == 0:
        n //= 2
        size *= 2
    # count solutions of x^2 in H among the 2-Sylow cosets
    sylow = [r for r in reps if pow(r, size, M) in H]
    sq = sum(1 for r in sylow if pow(r, 2, M) in H)
    return size, sq


def test_ray_quotient_matches_brute_force():
    for p, q in [(3, 5), (5, 3), (11, 3), (13, 5), (19, 29)]:
        report = ray_quotient_report(p, q, k_max=6)
        for k, structure in report.per_level:
            size, sq = brute_two_part_of_quotient(p, q, k)
            assert structure.order == size, (p, q, k)
            if size > 1:
                assert structure.is_cyclic == (sq == 2), (p, q, k)
            else:
                assert structure.is_trivial


def test_ray_quotient_examples():
    r = ray_quotient_report(3, 5, 8)
    assert r.stabilized_order == 2
    assert all(s.is_cyclic for _, s in r.per_level)
    r = ray_quotient_report(5, 3, 8)
    assert r.stabilized_order == 4
    r = ray_quotient_report(11, 3, 8)
    assert r.stabilized_order == 2


def test_ray_quotient_rejects_bad_inputs():
    with pytest.raises(ValueError):
        ray_quotient_report(7, 3)  # 7 is semi-primitive
    with pytest.raises(ValueError):
        ray_quotient_report(3, 17)  # 17 is imprimitive
    with pytest.raises(ValueError):
        ray_quotient_report(3, 3)
    with pytest.raises(ValueError):
        ray_quotient_report(3, 5, k_max=4)


def test_find_propagation_field_examples():
    assert find_propagation_field(3, 5).value == 6
    assert find_propagation_field(5, 3).value == 10
    assert find_propagation_field(3, 11).value == 3


def test_find_propagation_field_uniqueness():
    primitive = [p for p in primes_up_to(100) if p % 8 in (3, 5)]
    for p in primitive:
        for q in primitive:
            if p == q:
                continue
            m = find_propagation_field(p, q).value
            assert m in (p, 2 * p)
            other = 2 * p if m == p else p
            assert kronecker(field_discriminant(m), q) == 1
            assert kronecker(field_discriminant(other), q) == -1
            assert kronecker(field_discriminant(m), 2) != 1


def quadratic_characters_mod(M):
    """All quadratic characters of (Z/M)* as dicts unit -> +-1."""
    u = units_mod(M)
    gens = u.generators
    options = []
    for _, order in gens:
        options.append([1] if order % 2 else [1, -1])
    chars = []

    def build(i, signs):
        if i == len(gens):
            chars.append(tuple(signs))
            return
        for s in options[i]:
            build(i + 1, signs + [s])

    build(0, [])
    out = []
    for signs in chars:
        table = {}
        for x in range(1, M):
            if math.gcd(x, M) != 1:
                continue
            val = 1
            for s, e in zip(signs, u.dlog(x)):
                if e % 2:
                    val *= s
            table[x] = val
        out.append(table)
    return out


def test_find_propagation_field_matches_character_enumeration():
    # the found field must be cut out by the unique even quadratic character
    # of conductor dividing 8p that is ramified at p and trivial at q
    for p, q in [(3, 5), (5, 3), (3, 11), (11, 3), (13, 3), (19, 5)]:
        M = 8 * p
        matching = []
        for chi in quadratic_characters_mod(M):
            if chi[M - 1] != 1:  # odd character
                continue
            # ramified at p: nontrivial on some unit = 1 mod 8
            ramified = any(
                chi[x] == -1 for x in range(1, M) if math.gcd(x, M) == 1 and x % 8 == 1
            )
            if not ramified:
                continue
            if chi[q % M] != 1:
                continue
            matching.append(chi)
        assert len(matching) == 1, (p, q)
        chi = matching[0]
        D = field_discriminant(find_propagation_field(p, q).value)
        for x in range(1, M):
            if math.gcd(x, M) == 1:
                assert chi[x] == kronecker(D, x), (p, q, x)


def test_mirror_examples():
    assert mirror_group_trivial(5, 3) is True
    assert mirror_group_trivial(3, 5) is True
    assert mirror_group_trivial(13, 3) is True
    with pytest.raises(ValueError):
        mirror_group_trivial(7, 3)
    with pytest.raises(ValueError):
        mirror_group_trivial(5, 5)


def test_reflection_examples():
    assert reflection_ranks(3, 5) == (1, 0)
    assert reflection_ranks(5, 3) == (1, 0)
    assert reflection_ranks(11, 13) == (1, 0)


def test_stabilization_across_levels():
    primitive = [p for p in primes_up_to(200) if p % 8 in (3, 5)]
    for p in primitive:
        for q in primitive:
            if p == q:
                continue
            structures = set()
            for k_max in (8, 10, 12):
                r = ray_quotient_report(p, q, k_max=k_max)
                structures.add(r.per_level[-1][1].invariant_factors)
            assert len(structures) == 1, (p, q)
