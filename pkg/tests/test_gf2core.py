"""Field and bit-word primitives checked against from-scratch oracles."""

import random
from fractions import Fraction

import pytest

from widewalk.gf2core import (
    IRREDUCIBLE_MODULI,
    BitWord,
    FieldElem,
    add,
    all_words,
    character_sum,
    character_sum_exact,
    field_add,
    field_mul,
    field_pow,
    hex_decode,
    hex_encode,
    inner_product,
    is_irreducible,
    parity,
    poly_degree,
    poly_mod,
    poly_mul,
)


def oracle_mul(a, b):
    # schoolbook carryless multiply
    out = 0
    i = 0
    while b >> i:
        if (b >> i) & 1:
            out ^= a << i
        i += 1
    return out


def oracle_mod(a, m):
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm and a:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def oracle_irreducible(p):
    d = p.bit_length() - 1
    if d <= 0:
        return False
    for q in range(2, 1 << (d // 2 + 1)):
        if q.bit_length() - 1 >= 1 and oracle_mod(p, q) == 0:
            return False
    return True


def test_poly_mul_matches_oracle():
    rng = random.Random(7)
    for _ in range(500):
        a = rng.randrange(0, 1 << 12)
        b = rng.randrange(0, 1 << 12)
        assert poly_mul(a, b) == oracle_mul(a, b)
    assert poly_mul(0, 0b1011) == 0
    assert poly_mul(1, 0b1011) == 0b1011
    # (x + 1)^2 = x^2 + 1 in characteristic 2
    assert poly_mul(0b11, 0b11) == 0b101


def test_poly_mod_matches_oracle():
    rng = random.Random(8)
    for _ in range(500):
        a = rng.randrange(0, 1 << 14)
        m = rng.randrange(2, 1 << 7)
        assert poly_mod(a, m) == oracle_mod(a, m)


def test_poly_degree():
    assert poly_degree(1) == 0
    assert poly_degree(0b1011) == 3
    assert poly_degree(0) < 0


def test_is_irreducible_matches_oracle():
    for p in range(2, 1 << 9):
        assert is_irreducible(p) == oracle_irreducible(p), bin(p)


def test_moduli_table_is_lex_minimal():
    # each baked-in modulus must be the smallest irreducible of its degree
    for ell in range(1, 9):
        candidates = [
            p for p in range(1 << ell, 1 << (ell + 1)) if oracle_irreducible(p)
        ]
        assert IRREDUCIBLE_MODULI[ell] == min(candidates)


def test_moduli_table_covers_degrees_up_to_16():
    for ell in range(1, 17):
        m = IRREDUCIBLE_MODULI[ell]
        assert poly_degree(m) == ell
        assert is_irreducible(m)


def test_bitword_validation():
    with pytest.raises(ValueError):
        BitWord(4, 2)
    with pytest.raises(ValueError):
        BitWord(-1, 2)
    with pytest.raises(ValueError):
        BitWord(0, 0)
    w = BitWord(0b101, 3)
    assert w.bits() == (1, 0, 1)


def test_add_and_inner_product():
    x = BitWord(0b1100, 4)
    y = BitWord(0b1010, 4)
    assert add(x, y).value == 0b0110
    assert inner_product(x, y) == 1  # overlap is the single bit 3
    assert inner_product(x, x) == 0
    with pytest.raises(ValueError):
        add(x, BitWord(1, 3))
    with pytest.raises(ValueError):
        inner_product(x, BitWord(1, 3))


def test_hex_round_trip():
    for length in (1, 3, 4, 7, 8, 10):
        width = (length + 3) // 4
        for w in all_words(length):
            text = hex_encode(w.value, length)
            assert len(text) == width
            assert hex_decode(text, length) == w.value
            assert BitWord.from_hex(w.to_hex(), length) == w


def test_hex_is_lsb_nibble_first():
    assert hex_encode(1, 8) == "10"
    assert hex_encode(0x2f, 8) == "f2"
    assert hex_decode("f2", 8) == 0x2F
    with pytest.raises(ValueError):
        hex_decode("100", 8)
    with pytest.raises(ValueError):
        hex_decode("f", 1)  # decodes to 15, out of range for 1 bit


def test_character_sum_hand_values():
    # single generator u: the character at alpha is (-1)^<alpha, u>
    u = BitWord(0b011, 3)
    for alpha in all_words(3):
        expect = -1 if inner_product(alpha, u) else 1
        assert character_sum_exact([u], alpha) == expect
    # full group as generators: 1 at alpha = 0, exactly 0 elsewhere
    gens = list(all_words(3))
    assert character_sum_exact(gens, BitWord(0, 3)) == 1
    for alpha in all_words(3):
        if alpha.value:
            assert character_sum_exact(gens, alpha) == 0
    assert character_sum(gens, BitWord(5, 3)) == 0.0
    with pytest.raises(ValueError):
        character_sum_exact([], BitWord(0, 3))


def test_character_sum_is_exact_fraction():
    gens = [BitWord(1, 2), BitWord(2, 2), BitWord(3, 2)]
    assert character_sum_exact(gens, BitWord(1, 2)) == Fraction(-1, 3)


def test_gf4_multiplication_table():
    # GF(4) with modulus x^2 + x + 1: elements 0, 1, x, x+1
    x = FieldElem(0b10, 2)
    x1 = FieldElem(0b11, 2)
    assert field_mul(x, x) == x1  # x^2 = x + 1
    assert field_mul(x, x1) == FieldElem(1, 2)  # x * (x+1) = 1
    assert field_mul(x1, x1) == x
    assert field_add(x, x1) == FieldElem(1, 2)


def test_gf8_cube_identity():
    # modulus x^3 + x + 1, so x^3 = x + 1
    assert IRREDUCIBLE_MODULI[3] == 0b1011
    x = FieldElem(0b010, 3)
    assert field_pow(x, 3) == FieldElem(0b011, 3)


def test_field_axioms_exhaustive_small():
    for ell in (1, 2, 3):
        q = 1 << ell
        elems = [FieldElem(v, ell) for v in range(q)]
        one = FieldElem(1, ell)
        for a in elems:
            assert field_mul(a, one) == a
            for b in elems:
                assert field_mul(a, b) == field_mul(b, a)
                for c in elems:
                    assert field_mul(field_mul(a, b), c) == field_mul(a, field_mul(b, c))
                    lhs = field_mul(a, field_add(b, c))
                    rhs = field_add(field_mul(a, b), field_mul(a, c))
                    assert lhs == rhs


def test_field_inverses_exist():
    for ell in (1, 2, 3, 4):
        q = 1 << ell
        one = FieldElem(1, ell)
        for v in range(1, q):
            a = FieldElem(v, ell)
            inverses = [u for u in range(1, q) if field_mul(a, FieldElem(u, ell)) == one]
            assert len(inverses) == 1


def test_field_pow_conventions():
    zero = FieldElem(0, 4)
    one = FieldElem(1, 4)
    assert field_pow(zero, 0) == one
    assert field_pow(zero, 5) == zero
    for v in range(1, 16):
        a = FieldElem(v, 4)
        assert field_pow(a, 15) == one  # multiplicative group has order 15
        assert field_pow(a, 16) == a
    with pytest.raises(ValueError):
        field_pow(one, -1)


def test_multiplicative_group_is_cyclic():
    for ell in (2, 3, 4):
        q = 1 << ell
        orders = []
        for v in range(1, q):
            a = FieldElem(v, ell)
            k = 1
            p = a
            while p != FieldElem(1, ell):
                p = field_mul(p, a)
                k += 1
            orders.append(k)
        assert max(orders) == q - 1


def test_field_mismatch_rejected():
    with pytest.raises(ValueError):
        field_mul(FieldElem(1, 2), FieldElem(1, 3))
    # same degree, different modulus
    a = FieldElem(1, 3, 0b1011)
    b = FieldElem(1, 3, 0b1101)
    with pytest.raises(ValueError):
        field_add(a, b)


def test_field_elem_validation():
    with pytest.raises(ValueError):
        FieldElem(8, 3)
    with pytest.raises(ValueError):
        FieldElem(0, 3, 0b1001)  # x^3 + 1 = (x + 1)(x^2 + x + 1) is reducible
    with pytest.raises(ValueError):
        FieldElem(0, 40)  # no baked-in modulus that large


def test_parity():
    assert parity(0) == 0
    assert parity(0b1011) == 1
    assert parity(0b1111) == 0


def test_all_words_order():
    ws = list(all_words(2))
    assert [w.value for w in ws] == [0, 1, 2, 3]
    assert all(w.length == 2 for w in ws)
