#pragma once

// Integer helpers shared by the field, counting and bound code.

#include <cstdint>
#include <optional>
#include <vector>

namespace fermat {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

bool is_prime(u64 n);

/// Distinct prime factors of n in increasing order (trial division).
std::vector<u64> prime_factors(u64 n);

/// Positive divisors of n in increasing order.
std::vector<u64> divisors(u64 n);

u64 pow_mod(u64 base, u64 exp, u64 mod);

/// base^exp, or nullopt when the result would exceed `limit`.
std::optional<u64> checked_pow(u64 base, u64 exp, u64 limit = UINT64_MAX);

/// If q = p^k for a prime p, returns (p, k).
std::optional<std::pair<u32, unsigned>> prime_power(u64 q);

/// floor(sqrt(x)).
u64 isqrt(u128 x);

/// binom(n, k) mod p by Lucas' theorem.
u32 binom_mod_p(u64 n, u64 k, u32 p);

/// Exponent of p in x; x must be nonzero.
unsigned p_adic_valuation(u64 x, u64 p);

/// Inverse of a modulo m, or nullopt when gcd(a, m) != 1.
std::optional<u64> inverse_mod(u64 a, u64 m);

}  // namespace fermat
