#include "fermat/arith.hpp"

#include <cmath>
#include <numeric>

namespace fermat {

bool is_prime(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (u64 d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d <= n / d; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> small, large;
  for (u64 d = 1; d <= n / d; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

u64 pow_mod(u64 base, u64 exp, u64 mod) {
  u128 result = 1 % mod;
  u128 b = base % mod;
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<u64>(result);
}

std::optional<u64> checked_pow(u64 base, u64 exp, u64 limit) {
  u64 result = 1;
  for (u64 i = 0; i < exp; ++i) {
    if (base != 0 && result > limit / base) return std::nullopt;
    result *= base;
  }
  if (result > limit) return std::nullopt;
  return result;
}

std::optional<std::pair<u32, unsigned>> prime_power(u64 q) {
  if (q < 2) return std::nullopt;
  auto factors = prime_factors(q);
  if (factors.size() != 1 || factors[0] > UINT32_MAX) return std::nullopt;
  unsigned k = 0;
  while (q > 1) {
    q /= factors[0];
    ++k;
  }
  return std::make_pair(static_cast<u32>(factors[0]), k);
}

u64 isqrt(u128 x) {
  if (x == 0) return 0;
  u128 r = static_cast<u128>(std::sqrt(static_cast<long double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return static_cast<u64>(r);
}

u32 binom_mod_p(u64 n, u64 k, u32 p) {
  if (k > n) return 0;
  u64 result = 1;
  while (n > 0 || k > 0) {
    u64 ni = n % p, ki = k % p;
    if (ki > ni) return 0;
    // small binomial via multiplicative formula with inverses mod p
    u64 num = 1, den = 1;
    for (u64 i = 0; i < ki; ++i) {
      num = num * ((ni - i) % p) % p;
      den = den * ((i + 1) % p) % p;
    }
    result = result * num % p * pow_mod(den, p - 2, p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<u32>(result);
}

unsigned p_adic_valuation(u64 x, u64 p) {
  unsigned v = 0;
  while (x != 0 && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

std::optional<u64> inverse_mod(u64 a, u64 m) {
  if (m == 1) return 0;
  i128 t = 0, new_t = 1;
  i128 r = m, new_r = a % m;
  while (new_r != 0) {
    i128 quotient = r / new_r;
    i128 tmp = t - quotient * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quotient * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) return std::nullopt;
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

}  // namespace fermat
