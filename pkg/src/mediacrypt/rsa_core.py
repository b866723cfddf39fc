"""Textbook RSA over small moduli: prime search, key generation, per-value
modular encryption.

Key material comes from a short password: the sum of its ASCII codes seeds a
search for two primes (p immediately above the sum, q immediately above p),
and the product fixes the modulus.  Password sums stay below ~10^4, so every
field of a key pair fits comfortably in 64-bit unsigned arithmetic and
intermediate products in modular multiplication fit in 128 bits.

This is deliberately *not* secure RSA -- no padding, tiny moduli, one
plaintext value per byte.  It scrambles media payloads reproducibly; it does
not resist cryptanalysis.
"""

from dataclasses import dataclass
from math import gcd

__all__ = [
    "KeyPair",
    "next_prime",
    "is_prime",
    "seed_primes_from_password",
    "generate_keypair",
    "mod_pow",
    "mod_inverse",
    "encrypt_value",
    "decrypt_value",
    "text_to_codes",
    "codes_to_text",
]

_U64_CEILING = 1 << 64


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * limit
    flags[0:2] = b"\x00\x00"
    for i in range(2, int(limit**0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = bytes(len(range(i * i, limit, i)))
    return [i for i in range(limit) if flags[i]]

# Trial division by these covers every n < 1024^2 (all password-derived moduli).
_SMALL_PRIMES = _sieve(1024)

# Deterministic Miller-Rabin witness sets, tiered by magnitude.
_MR_TIERS = (
    (2_047, (2,)),
    (1_373_653, (2, 3)),
    (3_215_031_751, (2, 3, 5, 7)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (_U64_CEILING, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
)


def is_prime(n: int) -> bool:
    """Deterministic primality test for n < 2^64."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < 1024 * 1024:
        return True  # no prime factor below sqrt(n)

    # Miller-Rabin with witness sets proven exact for each range.
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for bound, witnesses in _MR_TIERS:
        if n < bound:
            break
    for a in witnesses:
        x = mod_pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = (x * x) % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(x: int) -> int:
    """Smallest prime strictly greater than x.

    Raises OverflowError if that prime would not fit in 64 bits (a sign the
    seed is wildly out of range) and ValueError for x < 1.
    """
    if x < 1:
        raise ValueError(f"next_prime requires x >= 1, got {x}")
    candidate = x + 1
    if candidate <= 2:
        return 2
    if candidate % 2 == 0:
        candidate += 1
    while True:
        if candidate >= _U64_CEILING:
            raise OverflowError(f"no prime above {x} fits in 64 bits")
        if is_prime(candidate):
            return candidate
        candidate += 2


def seed_primes_from_password(password: str) -> tuple[int, int]:
    """Derive the two key primes from a password string.

    Sums the ASCII codes of the password, then takes the first prime above
    the sum as p and the next prime above p as q.
    """
    if not password:
        raise ValueError("password must be non-empty")
    for i, ch in enumerate(password):
        code = ord(ch)
        if not 0x20 <= code <= 0x7E:
            raise ValueError(
                f"password character at position {i} is outside printable ASCII"
            )
    x = sum(ord(ch) for ch in password)
    p = next_prime(x)
    q = next_prime(p)
    return p, q


@dataclass(frozen=True)
class KeyPair:
    """RSA key material: primes p, q; modulus n = p*q; totient phi;
    encryption exponent e; decryption exponent d with e*d = 1 (mod phi)."""

    p: int
    q: int
    n: int
    phi: int
    e: int
    d: int


def generate_keypair(p: int, q: int, e: int | None = None) -> KeyPair:
    """Build a key pair from two distinct primes.

    When e is omitted it defaults to the smallest integer >= 3 coprime with
    phi, which makes key generation deterministic.  A supplied e must satisfy
    1 < e < phi and gcd(e, phi) = 1.
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if not is_prime(q):
        raise ValueError(f"q = {q} is not prime")
    if p == q:
        raise ValueError("p and q must be distinct")
    n = p * q
    if n >= _U64_CEILING:
        raise OverflowError("modulus p*q exceeds 64 bits")
    phi = (p - 1) * (q - 1)
    if e is None:
        e = 3
        while e < phi and gcd(e, phi) != 1:
            e += 1
        if e >= phi:
            raise ValueError(f"no encryption exponent exists for phi = {phi}")
    else:
        if not 1 < e < phi:
            raise ValueError(f"e must satisfy 1 < e < phi = {phi}, got {e}")
        if gcd(e, phi) != 1:
            raise ValueError(f"e = {e} is not coprime with phi = {phi}")
    d = mod_inverse(e, phi)
    return KeyPair(p=p, q=q, n=n, phi=phi, e=e, d=d)


def mod_pow(base: int, exp: int, modulus: int) -> int:
    """base^exp mod modulus by right-to-left square-and-multiply."""
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if exp < 0:
        raise ValueError(f"exponent must be non-negative, got {exp}")
    result = 1
    base %= modulus
    while exp:
        if exp & 1:
            result = (result * base) % modulus
        base = (base * base) % modulus
        exp >>= 1
    return result


def mod_inverse(a: int, m: int) -> int:
    """Inverse of a mod m via the iterative extended Euclidean algorithm."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    old_r, r = a % m, m
    old_s, s = 1, 0
    while r:
        quotient = old_r // r
        old_r, r = r, old_r - quotient * r
        old_s, s = s, old_s - quotient * s
    if old_r != 1:
        raise ValueError(f"{a} has no inverse modulo {m} (gcd = {old_r})")
    return old_s % m


def encrypt_value(m: int, key: KeyPair) -> int:
    """c = m^e mod n.  The plaintext must lie in [0, n)."""
    if not 0 <= m < key.n:
        raise ValueError(f"plaintext {m} outside [0, {key.n})")
    return mod_pow(m, key.e, key.n)


def decrypt_value(c: int, key: KeyPair) -> int:
    """m = c^d mod n.  The cipher value must lie in [0, n)."""
    if not 0 <= c < key.n:
        raise ValueError(f"cipher value {c} outside [0, {key.n})")
    return mod_pow(c, key.d, key.n)


def text_to_codes(text: str) -> list[int]:
    """ASCII codes of a demo string, one plaintext value per character
    (rendered as 3-digit zero-padded decimals in printouts)."""
    return [ord(ch) for ch in text]


def codes_to_text(codes: list[int]) -> str:
    return "".join(chr(c) for c in codes)
