"""Bit-vector arithmetic over F_2^r and field arithmetic over GF(2^ell).

Words of F_2^r are held as nonnegative integers below 2**r together with an
explicit length r.  Bit 0 is the least significant position.  Serialization
is lowercase hex with the least significant nibble first, so the wire format
is bit-exact and independent of word length padding.

Field elements of GF(2^ell) are polynomials over F_2 encoded the same way
(bit i is the coefficient of x^i), reduced modulo a fixed irreducible
polynomial of degree ell.  The moduli for ell = 1..16 are baked in and
re-validated by brute force when the module is imported.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

# Lexicographically smallest irreducible polynomial of each degree.  Keeping
# a fixed table (rather than searching at run time) pins the field, and with
# it every derived generator set, across versions and platforms.
IRREDUCIBLE_MODULI: dict[int, int] = {
    1: 0b10,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
    9: 0b1000000011,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000000001001,
    13: 0b10000000011011,
    14: 0b100000000100001,
    15: 0b1000000000000011,
    16: 0b10000000000101011,
}


def poly_degree(p: int) -> int:
    """Degree of a polynomial over F_2; the zero polynomial has degree -1."""
    return p.bit_length() - 1


def poly_mul(a: int, b: int) -> int:
    """Carry-less product of two polynomials over F_2.

    Parameters
    ----------
    a, b : int
        Bit-encoded polynomials (bit i = coefficient of x^i).

    Returns
    -------
    int
        The unreduced product polynomial.
    """
    if a < 0 or b < 0:
        raise ValueError("polynomials must be encoded as nonnegative integers")
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        a <<= 1
        b >>= 1
    return acc


def poly_mod(a: int, m: int) -> int:
    """Remainder of a modulo m, both bit-encoded polynomials over F_2."""
    if m <= 0:
        raise ValueError("modulus must be a nonzero polynomial")
    dm = poly_degree(m)
    while a and poly_degree(a) >= dm:
        a ^= m << (poly_degree(a) - dm)
    return a


def is_irreducible(p: int) -> bool:
    """Brute-force irreducibility test by trial division.

    A polynomial of degree d is reducible iff it has a divisor of degree
    between 1 and d // 2; we try every candidate in that range.  Intended
    for the small degrees used here (d <= 16).
    """
    d = poly_degree(p)
    if d <= 0:
        return False
    for q in range(2, 1 << (d // 2 + 1)):
        if poly_mod(p, q) == 0:
            return False
    return True


def _validate_moduli() -> None:
    for ell, p in IRREDUCIBLE_MODULI.items():
        if poly_degree(p) != ell:
            raise AssertionError(f"modulus table entry for ell={ell} has wrong degree")
        if not is_irreducible(p):
            raise AssertionError(f"modulus table entry for ell={ell} is reducible")


_validate_moduli()


@dataclass(frozen=True)
class BitWord:
    """An element of F_2^length, encoded as an integer with bit 0 = LSB.

    Parameters
    ----------
    value : int
        Integer in [0, 2**length).
    length : int
        The fixed word length r; operations on mismatched lengths raise.
    """

    value: int
    length: int

    def __post_init__(self) -> None:
        if self.length <= 0:
            raise ValueError(f"word length must be positive, got {self.length}")
        if not 0 <= self.value < (1 << self.length):
            raise ValueError(
                f"value {self.value} out of range for {self.length}-bit word"
            )

    def bits(self) -> tuple[int, ...]:
        """The bits (b_0, ..., b_{length-1}), least significant first."""
        return tuple((self.value >> i) & 1 for i in range(self.length))

    def to_hex(self) -> str:
        return hex_encode(self.value, self.length)

    @classmethod
    def from_hex(cls, text: str, length: int) -> "BitWord":
        return cls(hex_decode(text, length), length)


def _check_lengths(x: BitWord, y: BitWord) -> None:
    if x.length != y.length:
        raise ValueError(f"length mismatch: {x.length} vs {y.length}")


def add(x: BitWord, y: BitWord) -> BitWord:
    """Coordinatewise sum mod 2 (bitwise xor) of two equal-length words."""
    _check_lengths(x, y)
    return BitWord(x.value ^ y.value, x.length)


def inner_product(x: BitWord, y: BitWord) -> int:
    """Mod-2 inner product: parity of the AND of the two words."""
    _check_lengths(x, y)
    return (x.value & y.value).bit_count() & 1


def character_sum(gens: Sequence[BitWord], alpha: BitWord) -> float:
    """Average of (-1)^<alpha, u> over the generator multiset.

    This realizes the character value of the generator multiset at alpha;
    for a Cayley graph over F_2^r these values are exactly the eigenvalues
    of the normalized adjacency operator.

    Parameters
    ----------
    gens : sequence of BitWord
        Generator multiset; must be nonempty and match alpha's length.
    alpha : BitWord
        Character index.

    Returns
    -------
    float
        Value in [-1, 1].
    """
    return float(character_sum_exact(gens, alpha))


def character_sum_exact(gens: Sequence[BitWord], alpha: BitWord) -> Fraction:
    """Exact rational version of :func:`character_sum`."""
    if len(gens) == 0:
        raise ValueError("empty generator list")
    total = 0
    for u in gens:
        _check_lengths(u, alpha)
        total += -1 if inner_product(u, alpha) else 1
    return Fraction(total, len(gens))


@dataclass(frozen=True)
class FieldElem:
    """An element of GF(2^ell): ell coefficient bits plus the field modulus.

    Parameters
    ----------
    value : int
        Bit-encoded polynomial of degree < ell.
    ell : int
        Field degree; the modulus defaults to the baked-in table entry.
    modulus : int, optional
        Override modulus; must be irreducible of degree ell.
    """

    value: int
    ell: int
    modulus: int = 0

    def __post_init__(self) -> None:
        if self.ell not in IRREDUCIBLE_MODULI and self.modulus == 0:
            raise ValueError(f"no baked-in modulus for ell={self.ell}")
        if self.modulus == 0:
            object.__setattr__(self, "modulus", IRREDUCIBLE_MODULI[self.ell])
        if poly_degree(self.modulus) != self.ell or not is_irreducible(self.modulus):
            raise ValueError(
                f"modulus {bin(self.modulus)} is not irreducible of degree {self.ell}"
            )
        if not 0 <= self.value < (1 << self.ell):
            raise ValueError(f"field element {self.value} not reduced mod degree {self.ell}")

    def is_zero(self) -> bool:
        return self.value == 0


def _check_field(x: FieldElem, y: FieldElem) -> None:
    if x.ell != y.ell or x.modulus != y.modulus:
        raise ValueError("field mismatch: operands use different moduli")


def field_add(x: FieldElem, y: FieldElem) -> FieldElem:
    """Sum in GF(2^ell) (coefficientwise xor)."""
    _check_field(x, y)
    return FieldElem(x.value ^ y.value, x.ell, x.modulus)


def field_mul(x: FieldElem, y: FieldElem) -> FieldElem:
    """Product in GF(2^ell), reduced modulo the field's irreducible modulus."""
    _check_field(x, y)
    return FieldElem(poly_mod(poly_mul(x.value, y.value), x.modulus), x.ell, x.modulus)


def field_pow(x: FieldElem, i: int) -> FieldElem:
    """x**i in GF(2^ell) by square and multiply; x**0 = 1 for every x.

    The 0**0 = 1 convention makes power-indexed bit formulas total at the
    zero element.
    """
    if i < 0:
        raise ValueError("exponent must be nonnegative")
    result = FieldElem(1, x.ell, x.modulus)
    base = x
    while i:
        if i & 1:
            result = field_mul(result, base)
        base = field_mul(base, base)
        i >>= 1
    return result


def hex_encode(value: int, length: int) -> str:
    """Lowercase hex, least significant nibble first.

    Nibble j of the output covers bits 4j..4j+3.  The number of hex digits
    is ceil(length / 4), so the encoding is fixed width for a fixed length.
    """
    if not 0 <= value < (1 << length):
        raise ValueError(f"value {value} out of range for {length}-bit word")
    ndigits = (length + 3) // 4
    return "".join("0123456789abcdef"[(value >> (4 * j)) & 0xF] for j in range(ndigits))


def hex_decode(text: str, length: int) -> int:
    """Inverse of :func:`hex_encode`."""
    ndigits = (length + 3) // 4
    if len(text) != ndigits:
        raise ValueError(f"expected {ndigits} hex digits for a {length}-bit word, got {len(text)}")
    value = 0
    for j, ch in enumerate(text.lower()):
        value |= int(ch, 16) << (4 * j)
    if value >= (1 << length):
        raise ValueError(f"decoded value {value} out of range for {length}-bit word")
    return value


def parity(x: int) -> int:
    """Parity of the set bits of a nonnegative integer."""
    return x.bit_count() & 1


def all_words(length: int) -> Iterable[BitWord]:
    """All 2**length words of F_2^length in increasing integer order."""
    for v in range(1 << length):
        yield BitWord(v, length)
