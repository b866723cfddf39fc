import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mediacrypt.rsa_core import (
    KeyPair,
    codes_to_text,
    decrypt_value,
    encrypt_value,
    generate_keypair,
    is_prime,
    mod_inverse,
    mod_pow,
    next_prime,
    seed_primes_from_password,
    text_to_codes,
)

DEMO_CODES = [114, 97, 118, 115, 117, 115, 104, 97, 109, 97, 110]
DEMO_CIPHER = [6369, 6208, 3903, 3077, 3040, 3077, 5756, 6208, 3926, 6208, 1330]


class TestWorkedExample:
    def test_keypair_fields(self):
        key = generate_keypair(73, 89, e=113)
        assert key == KeyPair(p=73, q=89, n=6497, phi=6336, e=113, d=785)

    def test_demo_string_encrypts_to_known_cipher(self):
        key = generate_keypair(73, 89, e=113)
        assert text_to_codes("ravsushaman") == DEMO_CODES
        assert [encrypt_value(m, key) for m in DEMO_CODES] == DEMO_CIPHER

    def test_demo_cipher_decrypts_back(self):
        key = generate_keypair(73, 89, e=113)
        codes = [decrypt_value(c, key) for c in DEMO_CIPHER]
        assert codes_to_text(codes) == "ravsushaman"


class TestNextPrime:
    @pytest.mark.parametrize(
        "x,expected",
        [(1, 2), (2, 3), (65, 67), (67, 71), (89, 97), (195, 197), (197, 199),
         (305, 307), (1000, 1009), (603, 607), (607, 613)],
    )
    def test_known_values(self, x, expected):
        assert next_prime(x) == expected

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            next_prime(0)
        with pytest.raises(ValueError):
            next_prime(-5)

    def test_overflow_near_64_bit_ceiling(self):
        # 2^64 - 1 is composite and the next candidate leaves 64 bits
        with pytest.raises(OverflowError):
            next_prime(2**64 - 2)

    def test_result_above_a_large_prime(self):
        assert next_prime(2**61 - 2) == 2**61 - 1  # Mersenne prime


class TestIsPrime:
    def test_small_cases(self):
        assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]

    def test_carmichael_and_pseudoprimes(self):
        # 561 fools Fermat; 2047 fools Miller-Rabin with witness 2 alone
        assert not is_prime(561)
        assert not is_prime(2047)
        assert not is_prime(1373653)

    def test_large_values(self):
        assert is_prime(2**61 - 1)
        assert not is_prime(2**61 + 1)
        assert is_prime(1_000_003)
        assert not is_prime(1_000_001)  # 101 * 9901

    def test_square_of_prime_above_trial_division_range(self):
        p = next_prime(1024)
        assert not is_prime(p * p)


class TestSeedPrimes:
    def test_sum_195(self):
        assert seed_primes_from_password("ab") == (197, 199)  # 97 + 98

    def test_full_password(self):
        # ASCII sum of "Pass@12!" is 603
        assert seed_primes_from_password("Pass@12!") == (607, 613)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            seed_primes_from_password("")

    def test_rejects_non_ascii_with_position(self):
        with pytest.raises(ValueError, match="position 1"):
            seed_primes_from_password("p\xe4ss")


class TestGenerateKeypair:
    def test_default_exponent_is_smallest_coprime(self):
        key = generate_keypair(73, 89)
        assert key.e == 5  # phi = 6336 = 2^6 * 3^2 * 11; 3 and 4 divide it
        assert key.d == 5069
        assert (key.e * key.d) % key.phi == 1

    def test_explicit_exponent_checked(self):
        with pytest.raises(ValueError):
            generate_keypair(73, 89, e=2)  # shares factor 2 with phi
        with pytest.raises(ValueError):
            generate_keypair(73, 89, e=1)
        with pytest.raises(ValueError):
            generate_keypair(73, 89, e=6336)

    def test_rejects_bad_primes(self):
        with pytest.raises(ValueError):
            generate_keypair(72, 89)
        with pytest.raises(ValueError):
            generate_keypair(73, 91)  # 7 * 13
        with pytest.raises(ValueError):
            generate_keypair(73, 73)

    def test_ed_identity(self):
        key = generate_keypair(607, 613)
        assert (key.e * key.d) % key.phi == 1


class TestModularOps:
    def test_mod_pow_matches_builtin(self):
        for base, exp, mod in [(2, 10, 1000), (114, 113, 6497), (0, 0, 7), (5, 0, 13)]:
            assert mod_pow(base, exp, mod) == pow(base, exp, mod)

    def test_mod_pow_rejects_bad_args(self):
        with pytest.raises(ValueError):
            mod_pow(2, 3, 1)
        with pytest.raises(ValueError):
            mod_pow(2, -1, 7)

    def test_mod_inverse_paper_value(self):
        assert mod_inverse(113, 6336) == 785

    def test_mod_inverse_rejects_non_coprime(self):
        with pytest.raises(ValueError):
            mod_inverse(4, 6336)

    def test_mod_inverse_rejects_small_modulus(self):
        with pytest.raises(ValueError):
            mod_inverse(3, 1)


class TestValueRoundTrip:
    def test_range_checks(self):
        key = generate_keypair(73, 89, e=113)
        with pytest.raises(ValueError):
            encrypt_value(6497, key)
        with pytest.raises(ValueError):
            encrypt_value(-1, key)
        with pytest.raises(ValueError):
            decrypt_value(6497, key)

    @settings(max_examples=60, deadline=None)
    @given(
        pq=st.sampled_from([(73, 89), (101, 103), (607, 613), (17, 31)]),
        m=st.integers(min_value=0, max_value=10**6),
    )
    def test_round_trip_random(self, pq, m):
        key = generate_keypair(*pq)
        m %= key.n
        assert decrypt_value(encrypt_value(m, key), key) == m
