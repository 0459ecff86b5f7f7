#include "fermat/verify.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "fermat/bounds.hpp"
#include "fermat/classify.hpp"
#include "fermat/counting.hpp"
#include "fermat/error.hpp"
#include "fermat/fixtures.hpp"
#include "fermat/localgeo.hpp"

namespace fermat {

namespace {

// Runs `body`, which fills detail/checked/violations and returns pass/fail.
CheckResult timed(const std::string& name, const std::function<bool(CheckResult&)>& body) {
  CheckResult r;
  r.name = name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.passed = body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail += std::string(r.detail.empty() ? "" : "; ") + "exception: " + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string join(const std::vector<u64>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

bool in_prime_list(u64 p) { return is_prime(p) && p != 2; }

}  // namespace

std::vector<CheckResult> verify_examples() {
  std::vector<CheckResult> out;
  out.push_back(timed("example (13,2,8,-1,-1): N = 512 attains the cubic floor bound", [](CheckResult& r) {
    const auto c = make_curve(13, 2, 8, -1, -1);
    const u64 N = count_points(c).value, d = coordinate_zero_count(c), f = sv_floor_bound(c, 3);
    r.detail = "N=" + std::to_string(N) + " d=" + std::to_string(d) + " floor3=" + std::to_string(f);
    return N == 512 && d == 0 && f == 512;
  }));
  out.push_back(timed("example (97,2,294,1,1): N = 1038114 exceeds floor 951678", [](CheckResult& r) {
    const auto c = make_curve(97, 2, 294, 1, 1);
    const auto cs = cubic_subcount(1, 1, 97, 1);
    const auto cf = closed_form_count(c);
    const u64 N = count_points(c).value, f = sv_floor_bound(c, 3);
    r.detail = "cubic=" + std::to_string(cs.cubic_points) + " k=" + std::to_string(cs.k) +
               " closed=" + std::to_string(cf.value) + " N=" + std::to_string(N) + " floor3=" + std::to_string(f);
    return cs.cubic_points == 117 && cf.value == 1038114 && N == 1038114 && f == 951678 && N > f;
  }));
  out.push_back(timed("example (23,2,8,1,1): N = 1496 exceeds floor 1432", [](CheckResult& r) {
    const auto c = make_curve(23, 2, 8, 1, 1);
    const auto cf = closed_form_count(c);
    const auto [ks, kp] = ks_count(8, 23, 2);
    const u64 N = count_points(c).value, d = coordinate_zero_count(c), f = sv_floor_bound(c, 3);
    r.detail = "closed=" + std::to_string(cf.value) + " ks=" + std::to_string(ks.value) + " t=" +
               std::to_string(kp.t) + " l=" + std::to_string(kp.l) + " N=" + std::to_string(N) +
               " d=" + std::to_string(d) + " floor3=" + std::to_string(f);
    return cf.value == 1496 && ks.value == 1496 && kp.t == 2 && kp.l == 3 && N == 1496 && d == 24 &&
           f == 1432;
  }));
  out.push_back(timed("classification of the three examples agrees with the ring identities", [](CheckResult& r) {
    const auto c1 = make_curve(97, 2, 294, 1, 1), c2 = make_curve(23, 2, 8, 1, 1),
               c3 = make_curve(13, 2, 8, -1, -1);
    const auto v1 = frobenius_classification(c1, 3), v2 = frobenius_classification(c2, 3),
               v3 = frobenius_classification(c3, 3);
    const bool i1 = frobenius_identity(c1, 3), i2 = frobenius_identity(c2, 3);
    bool i3_applies = true;
    try {
      frobenius_identity(c3, 3);
    } catch (const PreconditionError&) {
      i3_applies = false;
    }
    r.detail = v1.frobenius_case + "/" + v2.frobenius_case + "/" + v3.frobenius_case;
    return v1.frobenius_case == "sigma3-triple-norm" && v1.witness_r == 1u &&
           v2.frobenius_case == "sigma3-third-norm" && v2.witness_r == 1u &&
           v3.frobenius_nonclassical == false && i1 && i2 && !i3_applies;
  }));
  out.push_back(timed("order sequences: (0,1,n) at (u:0:1), (0..8,97) at a generic point", [](CheckResult& r) {
    bool ok = true;
    for (auto c : {make_curve(13, 2, 8, -1, -1), make_curve(23, 2, 8, 1, 1), make_curve(17, 1, 5, 2, 3)}) {
      const auto o = order_sequence(c, axis_point(c), 1);
      ok = ok && o.orders == std::vector<u64>{0, 1, c.degree()};
      ++r.checked;
    }
    const auto c = make_curve(97, 2, 294, 1, 1);
    const auto o = order_sequence(c, sample_generic_point(c, 1), 3, 128);
    r.detail = "generic orders " + join(o.orders);
    return ok && o.orders == std::vector<u64>{0, 1, 2, 3, 4, 5, 6, 7, 8, 97};
  }));
  out.push_back(timed("example (13,3,61,1,1): N = 41114 by formula, KS and enumeration", [](CheckResult& r) {
    const auto c = make_curve(13, 3, 61, 1, 1);
    const auto cf = closed_form_count(c);
    const auto [ks, kp] = ks_count(61, 13, 3);
    const u64 N = count_points(c).value;
    r.detail = "closed=" + std::to_string(cf.value) + " ks=" + std::to_string(ks.value) + " N=" + std::to_string(N);
    return cf.value == 41114 && ks.value == 41114 && kp.t == 1 && kp.l == 1 && N == 41114;
  }));
  return out;
}

std::vector<CheckResult> verify_fixtures() {
  std::vector<CheckResult> out;
  for (u32 p : {13u, 17u}) {
    for (int i = 1; i <= 4; ++i) {
      out.push_back(timed("fixture i=" + std::to_string(i) + " p=" + std::to_string(p) + ": multiplicity in {10,12}",
                          [&](CheckResult& r) {
                            const auto fx = osculation_fixture(i, p);
                            const auto m = intersection_multiplicity(fx.G, fx.C, fx.P, 64);
                            r.detail = "GF(" + std::to_string(p) + "^" + std::to_string(fx.field.degree()) +
                                       ") s=" + fx.field.serialize(fx.P.x) + " I=" + to_string(m);
                            r.checked = 1;
                            return !m.at_least && (m.value == 10 || m.value == 12);
                          }));
    }
  }
  return out;
}

CheckResult check_congruence(u64 max_q, u64 random_pairs, u64 seed) {
  return timed("N = d mod n^2 and Hasse-Weil for n | q-1, q <= " + std::to_string(max_q), [&](CheckResult& r) {
    std::mt19937_64 rng(seed);
    auto check = [&](const FermatCurve& c) {
      const u64 N = count_points(c).value, d = coordinate_zero_count(c), n = c.degree();
      ++r.checked;
      if (N % (n * n) != d % (n * n) || !within_hasse_weil(n, c.q(), N)) {
        ++r.violations;
        if (r.detail.empty()) r.detail = "first failure " + c.descriptor();
      }
    };
    for (u64 p = 3; p <= max_q; ++p) {
      if (!in_prime_list(p)) continue;
      for (unsigned h = 1;; ++h) {
        const auto q = checked_pow(p, h, max_q);
        if (!q) break;
        const Field f = build_field(static_cast<u32>(p), h);
        const auto ns = divisors(*q - 1);
        for (u64 n : ns) check(FermatCurve(f, n, f.one(), f.one()));
        std::uniform_int_distribution<u64> pick(0, *q - 2);
        for (u64 k = 0; k < random_pairs; ++k) {
          const u64 n = ns[k % ns.size()];
          check(FermatCurve(f, n, f.exp(pick(rng)), f.exp(pick(rng))));
        }
      }
    }
    return r.violations == 0;
  });
}

CheckResult check_orders(const std::vector<u32>& primes, u64 max_n, u64 seed) {
  return timed("order sequences: p-adic closure and classicality certificate", [&](CheckResult& r) {
    auto fail = [&](const std::string& what) {
      ++r.violations;
      if (r.detail.empty()) r.detail = "first failure " + what;
    };
    for (u32 p : primes) {
      for (unsigned h = 1; h <= 2; ++h) {
        for (u64 n = 2; n <= max_n; ++n) {
          if (n % p == 0) continue;
          const auto c = make_curve(p, h, n, 1, 1);
          const auto axis = order_sequence(c, axis_point(c), 1);
          ++r.checked;
          if (axis.orders != std::vector<u64>{0, 1, n}) fail(c.descriptor() + " axis");
          const auto P = sample_generic_point(c, seed + n);
          for (int s = 1; s <= 3; ++s) {
            if (n <= static_cast<u64>(s)) continue;
            const auto o = order_sequence(c, P, s);
            ++r.checked;
            const auto& j = o.orders;
            if (j.size() < 2 || j[0] != 0 || j[1] != 1 || !padic_closed(j, p)) {
              fail(c.descriptor() + " s=" + std::to_string(s) + " orders " + join(j));
              continue;
            }
            const auto v = nonclassicality(c, s);
            if (v.nonclassical && *v.nonclassical == classicality_certificate(j, p)) {
              fail(c.descriptor() + " s=" + std::to_string(s) + " certificate vs classification");
            }
          }
        }
      }
    }
    return r.violations == 0;
  });
}

CheckResult check_classification(const std::vector<u32>& primes, u64 max_n) {
  return timed("Frobenius nonclassical implies nonclassical; identities match", [&](CheckResult& r) {
    for (u32 p : primes) {
      for (unsigned h = 1; h <= 2; ++h) {
        const Field f = build_field(p, h);
        for (u64 n = 1; n <= max_n; ++n) {
          if (n % p == 0) continue;
          for (u32 a = 1; a < p; ++a) {
            for (u32 b = 1; b < p; ++b) {
              const FermatCurve c(f, n, f.from_int(a), f.from_int(b));
              for (int s = 1; s <= 3; ++s) {
                const auto v = frobenius_classification(c, s);
                ++r.checked;
                bool bad = v.frobenius_nonclassical.value_or(false) && v.nonclassical == false;
                if (!bad && v.frobenius_nonclassical && v.guards.empty()) {
                  try {
                    bad = frobenius_identity(c, s) != *v.frobenius_nonclassical;
                  } catch (const PreconditionError&) {
                  }
                }
                if (bad) {
                  ++r.violations;
                  if (r.detail.empty()) r.detail = "first failure " + c.descriptor() + " s=" + std::to_string(s);
                }
              }
            }
          }
        }
      }
    }
    return r.violations == 0;
  });
}

CheckResult check_formulas(u64 max_q, u64 seed) {
  return timed("closed-form and KS counts equal enumeration, q <= " + std::to_string(max_q), [&](CheckResult& r) {
    std::mt19937_64 rng(seed);
    u64 uncertified = 0;
    auto compare = [&](const FermatCurve& c, u64 formula, const char* what) {
      const u64 N = count_points(c).value;
      ++r.checked;
      if (N != formula || !within_hasse_weil(c.degree(), c.q(), N)) {
        ++r.violations;
        if (r.detail.empty()) r.detail = std::string("first failure ") + what + " " + c.descriptor();
      }
    };
    for (u64 p = 5; p <= max_q; ++p) {
      if (!in_prime_list(p)) continue;
      for (unsigned h = 2;; ++h) {
        const auto q = checked_pow(p, h, max_q);
        if (!q) break;
        const Field f = build_field(static_cast<u32>(p), h);
        for (u64 rr : divisors(h)) {
          if (rr == h) continue;
          const unsigned r_deg = static_cast<unsigned>(rr);
          const u64 pr = *checked_pow(p, r_deg);
          // Cubic families: sample coefficient pairs satisfying each hypothesis.
          std::uniform_int_distribution<u64> pick(0, *q - 2);
          for (u64 n : {3 * (*q - 1) / (pr - 1), (*q - 1) % (3 * (pr - 1)) == 0 ? (*q - 1) / (3 * (pr - 1)) : 0}) {
            if (n == 0 || n % p == 0 || n > kMaxCurveDegree) continue;
            int found = 0;
            for (int attempt = 0; attempt < 4000 && found < 8; ++attempt) {
              FieldElement a = f.exp(pick(rng)), b = f.exp(pick(rng));
              if (attempt == 0) a = b = f.one();
              const FermatCurve c(f, n, a, b);
              PointCount cf;
              try {
                cf = closed_form_count(c);
              } catch (const PreconditionError&) {
                continue;
              }
              ++found;
              compare(c, cf.value, to_string(cf.method).c_str());
            }
          }
          // X^n + Y^n + Z^n = 0 over GF(pr^m).
          const u64 m = h / r_deg, big = (*q - 1) / (pr - 1);
          for (u64 n : divisors(big)) {
            if (big / n < 2) continue;
            const auto [ks, kp] = ks_count(n, pr, m);
            if (kp.applicable != Applicability::yes) {
              ++uncertified;
              continue;
            }
            compare(FermatCurve(f, n, f.neg(f.one()), f.neg(f.one())), ks.value, "korchmaros-szonyi");
          }
        }
      }
    }
    r.detail += (r.detail.empty() ? "" : "; ") + std::to_string(uncertified) + " KS instances not certified";
    return r.violations == 0;
  });
}

std::vector<CheckResult> verify_invariants(u64 seed) {
  const std::vector<u32> primes{13, 17, 19, 23};
  return {check_congruence(2000, 100, seed), check_orders(primes, 60, seed),
          check_classification(primes, 60), check_formulas(10000, seed)};
}

std::vector<CheckResult> verify(const std::string& scope, u64 seed) {
  std::vector<CheckResult> out;
  auto add = [&](std::vector<CheckResult> v) { out.insert(out.end(), v.begin(), v.end()); };
  if (scope == "examples" || scope == "all") add(verify_examples());
  if (scope == "fixtures" || scope == "all") add(verify_fixtures());
  if (scope == "invariants" || scope == "all") add(verify_invariants(seed));
  if (out.empty()) throw ValidationError("unknown verify scope '" + scope + "'");
  return out;
}

}  // namespace fermat
