#pragma once

// Self-checks run by `fermat verify`: the worked examples, the osculation
// fixtures, and property sweeps over small fields.

#include <string>
#include <vector>

#include "fermat/arith.hpp"

namespace fermat {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  u64 checked = 0;     // instances examined
  u64 violations = 0;  // instances that failed
  double seconds = 0;
};

std::vector<CheckResult> verify_examples();
std::vector<CheckResult> verify_fixtures();

/// N = d mod n^2 and Hasse-Weil containment for every n | q-1, q <= max_q,
/// a = b = 1, plus `random_pairs` seeded coefficient pairs per field.
CheckResult check_congruence(u64 max_q, u64 random_pairs, u64 seed);
/// Generic order sequences for p in `primes`, h <= 2, n <= max_n, a = b = 1,
/// s = 1..3: first orders 0 and 1, p-adic closure, and the classicality
/// certificate agreeing with the classification. Axis points give (0, 1, n).
CheckResult check_orders(const std::vector<u32>& primes, u64 max_n, u64 seed);
/// Frobenius nonclassical implies nonclassical, and the ring identities agree
/// with the classification, over all prime-field coefficient pairs.
CheckResult check_classification(const std::vector<u32>& primes, u64 max_n);
/// Closed-form and Korchmaros-Szonyi counts against enumeration for q <= max_q.
CheckResult check_formulas(u64 max_q, u64 seed);

/// All property sweeps at their default sizes.
std::vector<CheckResult> verify_invariants(u64 seed);

/// scope in {examples, invariants, fixtures, all}; throws ValidationError otherwise.
std::vector<CheckResult> verify(const std::string& scope, u64 seed);

}  // namespace fermat
