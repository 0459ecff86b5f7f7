#include "fermat/report.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>
#include <thread>

#include "fermat/error.hpp"
#include "fermat/localgeo.hpp"

namespace fermat {

using nlohmann::ordered_json;

Task parse_task(const std::string& s) {
  if (s == "classify") return Task::classify;
  if (s == "count") return Task::count;
  if (s == "bounds") return Task::bounds;
  throw ValidationError("unknown task '" + s + "'");
}

std::string to_string(Task t) {
  switch (t) {
    case Task::classify:
      return "classify";
    case Task::count:
      return "count";
    case Task::bounds:
      return "bounds";
  }
  return "classify";
}

namespace {

void check_classification(const FermatCurve& curve, ResultRecord& r) {
  for (int s = 1; s <= 3; ++s) r.verdicts.push_back(frobenius_classification(curve, s));
  for (int s = 1; s <= 3; ++s) {
    try {
      r.identities.emplace_back(s, frobenius_identity(curve, s));
    } catch (const PreconditionError&) {
    }
  }
  for (const auto& v : r.verdicts) {
    if (v.frobenius_nonclassical.value_or(false) && v.nonclassical == false) {
      r.violations.push_back("sigma" + std::to_string(v.system) +
                             ": Frobenius nonclassical but classical");
    }
  }
  for (const auto& [s, holds] : r.identities) {
    const auto& v = r.verdicts[s - 1];
    if (!v.frobenius_nonclassical || !v.guards.empty()) continue;
    if (*v.frobenius_nonclassical != holds) {
      r.violations.push_back("sigma" + std::to_string(s) + ": identity " + (holds ? "holds" : "fails") +
                             " but classification says " + v.frobenius_case);
    }
  }
}

void check_counts(const FermatCurve& curve, unsigned threads, ResultRecord& r) {
  r.counts.push_back(count_points(curve, threads));
  const u64 N = r.counts.front().value;
  try {
    r.counts.push_back(closed_form_count(curve));
  } catch (const PreconditionError&) {
  }
  for (const auto& [count, params] : ks_counts_for_curve(curve)) {
    if (params.applicable == Applicability::yes) {
      r.counts.push_back(count);
    } else {
      r.notes.push_back("korchmaros-szonyi over GF(q^(1/" + std::to_string(params.m) +
                        ")) not certified: applicability " + to_string(params.applicable));
    }
  }
  for (const auto& c : r.counts) {
    if (c.value != N) {
      r.mismatch = true;
      r.violations.push_back("count mismatch: " + to_string(c.method) + " gives " +
                             std::to_string(c.value) + ", enumeration " + std::to_string(N));
    }
  }
  if (!within_hasse_weil(curve.degree(), curve.q(), N)) r.violations.push_back("outside Hasse-Weil interval");
  const FermatCurve reduced = reduce_degree(curve);
  const u64 m = reduced.degree();
  if (N % (m * m) != coordinate_zero_count(reduced) % (m * m)) {
    r.violations.push_back("N != d mod n^2 on the reduced curve");
  }
}

}  // namespace

ResultRecord analyze(const FermatCurve& curve, const std::set<Task>& tasks, unsigned threads) {
  ResultRecord r;
  r.descriptor = curve.descriptor();
  r.p = curve.p();
  r.h = curve.h();
  r.n = curve.degree();
  r.q = curve.q();
  r.a = curve.a();
  r.b = curve.b();
  if (tasks.count(Task::classify)) check_classification(curve, r);
  if (tasks.count(Task::count)) check_counts(curve, threads, r);
  if (tasks.count(Task::bounds)) {
    std::optional<u64> N;
    if (!r.counts.empty()) N = r.counts.front().value;
    r.bounds = bound_report(curve, N);
    if (N && r.bounds->guards.at(3).empty() && *N > r.bounds->sv_floor.at(3)) {
      r.violations.push_back("Frobenius classical curve exceeds the cubic floor bound");
    }
  }
  return r;
}

ordered_json to_json(const ClassificationVerdict& v) {
  ordered_json j;
  j["system"] = v.system;
  j["nonclassical"] = v.nonclassical ? ordered_json(*v.nonclassical) : ordered_json(nullptr);
  j["reason"] = v.reason;
  j["frobenius_nonclassical"] =
      v.frobenius_nonclassical ? ordered_json(*v.frobenius_nonclassical) : ordered_json(nullptr);
  j["case"] = v.frobenius_case;
  j["witness_r"] = v.witness_r ? ordered_json(*v.witness_r) : ordered_json(nullptr);
  j["guards"] = v.guards;
  return j;
}

ordered_json to_json(const PointCount& c) {
  ordered_json j;
  j["value"] = c.value;
  j["method"] = to_string(c.method);
  ordered_json w = ordered_json::object();
  const auto& x = c.witnesses;
  if (x.r) w["r"] = *x.r;
  if (x.cubic_points) w["cubic_points"] = *x.cubic_points;
  if (x.k) w["k"] = *x.k;
  if (x.subfield_mod3) w["subfield_mod3"] = *x.subfield_mod3;
  if (x.m) w["m"] = *x.m;
  if (x.t) w["t"] = *x.t;
  if (x.l) w["l"] = *x.l;
  if (x.applicable) w["applicable"] = *x.applicable;
  if (x.normalized) w["normalized"] = true;
  j["witnesses"] = w;
  return j;
}

ordered_json to_json(const BoundReport& r) {
  ordered_json j;
  j["n"] = r.n;
  j["original_n"] = r.original_n;
  j["q"] = r.q;
  j["d"] = r.d;
  j["hasse_weil"] = {{"lower", r.hasse_weil.lower},
                     {"lower_clamped", r.hasse_weil.lower_clamped()},
                     {"upper", r.hasse_weil.upper}};
  ordered_json closed, floor, guards;
  for (const auto& [s, v] : r.sv_closed) closed[std::to_string(s)] = v.to_string();
  for (const auto& [s, v] : r.sv_floor) floor[std::to_string(s)] = v;
  for (const auto& [s, v] : r.guards) guards[std::to_string(s)] = v;
  j["sv_closed"] = closed;
  j["sv_floor"] = floor;
  j["guards"] = guards;
  j["count"] = r.count ? ordered_json(*r.count) : ordered_json(nullptr);
  ordered_json cmp = ordered_json::object();
  for (const auto& [name, f] : r.comparisons) cmp[name] = {{"attained", f.attained}, {"violated", f.violated}};
  j["comparisons"] = cmp;
  j["crossover"] = {{"regime", r.crossover_regime}, {"cubic_smallest", r.crossover_holds}};
  return j;
}

ordered_json to_json(const OrderSequence& o) {
  return ordered_json{{"s", o.s}, {"orders", o.orders}, {"precision_used", o.precision_used}};
}

ordered_json to_json(const ResultRecord& r) {
  ordered_json j;
  j["schema"] = kAnalysisSchema;
  j["curve"] = r.descriptor;
  j["p"] = r.p;
  j["h"] = r.h;
  j["n"] = r.n;
  j["q"] = r.q;
  if (!r.verdicts.empty()) {
    ordered_json v = ordered_json::array();
    for (const auto& x : r.verdicts) v.push_back(to_json(x));
    j["classification"] = v;
    ordered_json ids = ordered_json::object();
    for (const auto& [s, holds] : r.identities) ids[std::to_string(s)] = holds;
    j["frobenius_identity"] = ids;
  }
  if (!r.counts.empty()) {
    ordered_json c = ordered_json::array();
    for (const auto& x : r.counts) c.push_back(to_json(x));
    j["counts"] = c;
  }
  if (r.bounds) j["bounds"] = to_json(*r.bounds);
  std::vector<std::string> attained, violated;
  if (r.bounds) {
    for (const auto& [name, f] : r.bounds->comparisons) {
      if (f.attained) attained.push_back(name);
      if (f.violated) violated.push_back(name);
    }
  }
  j["flags"] = {{"attained", attained}, {"violated", violated}, {"mismatch", r.mismatch}};
  j["notes"] = r.notes;
  j["violations"] = r.violations;
  return j;
}

std::pair<i64, i64> parse_pattern(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  const size_t pos = s.find('n');
  if (pos == std::string::npos || s.find('n', pos + 1) != std::string::npos) {
    throw ValidationError("pattern must look like 'n-3' or '3n-1': '" + text + "'");
  }
  auto to_int = [&](const std::string& t, i64 empty) -> i64 {
    if (t.empty()) return empty;
    if (t == "+" || t == "-") return t == "-" ? -empty : empty;
    size_t used = 0;
    i64 v = 0;
    try {
      v = std::stoll(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size()) throw ValidationError("malformed pattern '" + text + "'");
    return v;
  };
  const i64 mult = to_int(s.substr(0, pos), 1);
  const std::string tail = s.substr(pos + 1);
  if (!tail.empty() && tail[0] != '+' && tail[0] != '-') throw ValidationError("malformed pattern '" + text + "'");
  const i64 off = to_int(tail, 0);
  return {mult, off};
}

namespace {

struct Job {
  u32 p;
  unsigned h;
  u64 n;
  FieldElement a, b;
};

u64 estimate_work(const SweepSpec& spec, u64 q, u64 n) {
  u64 w = 16;
  if (spec.tasks.count(Task::count)) w += 2 * q;
  if (spec.tasks.count(Task::classify)) w += 6 * q + n;
  return w;
}

std::vector<std::pair<FieldElement, FieldElement>> coefficient_pairs(const SweepSpec& spec, const Field& f, u64 n) {
  std::vector<std::pair<FieldElement, FieldElement>> out;
  switch (spec.policy) {
    case CoefficientPolicy::one:
      out.emplace_back(f.one(), f.one());
      break;
    case CoefficientPolicy::subfield:
      for (u32 a = 1; a < f.characteristic(); ++a) {
        for (u32 b = 1; b < f.characteristic(); ++b) out.emplace_back(f.from_int(a), f.from_int(b));
      }
      break;
    case CoefficientPolicy::random: {
      std::seed_seq seq{spec.seed, u64{f.characteristic()}, u64{f.degree()}, n};
      std::mt19937_64 rng(seq);
      std::uniform_int_distribution<u64> pick(1, f.order() - 1);
      for (u64 k = 0; k < spec.random_pairs; ++k) {
        out.emplace_back(f.exp(pick(rng) % (f.order() - 1)), f.exp(pick(rng) % (f.order() - 1)));
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.tasks.empty()) throw ValidationError("sweep needs at least one task");
  if (spec.h_min == 0 || spec.n_min == 0) throw ValidationError("sweep ranges start at 1");
  std::vector<u32> primes = spec.primes;
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

  SweepResult result;
  std::vector<Job> jobs;
  u64 work = 0;
  for (u32 p : primes) {
    if (result.truncated) break;
    for (unsigned h = spec.h_min; h <= spec.h_max && !result.truncated; ++h) {
      const auto q = checked_pow(p, h, Field::kMaxOrder);
      if (!q) break;
      const Field f = build_field(p, h);
      for (u64 n = spec.n_min; n <= spec.n_max && !result.truncated; ++n) {
        if (n % p == 0) continue;
        if (spec.require_divides && (*q - 1) % n != 0) continue;
        if (!spec.patterns.empty()) {
          const bool hit = std::any_of(spec.patterns.begin(), spec.patterns.end(), [&](const auto& pat) {
            return (static_cast<i128>(n) * pat.first + pat.second) % p == 0;
          });
          if (!hit) continue;
        }
        for (const auto& [a, b] : coefficient_pairs(spec, f, n)) {
          work += estimate_work(spec, *q, n);
          if (work > spec.budget) {
            result.truncated = true;
            break;
          }
          jobs.push_back(Job{p, h, n, a, b});
        }
      }
    }
  }

  result.rows.resize(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      const Job& j = jobs[i];
      const Field f = build_field(j.p, j.h);
      result.rows[i] = analyze(FermatCurve(f, j.n, j.a, j.b), spec.tasks, 1);
    }
  };
  const unsigned threads = std::max(1u, spec.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (const auto& r : result.rows) {
    if (r.mismatch) ++result.mismatches;
    result.invariant_violations += r.violations.size();
    if (r.bounds && r.bounds->crossover_regime) {
      ++result.crossover_regime;
      if (r.bounds->crossover_holds) ++result.crossover_holds;
    }
  }
  return result;
}

namespace {

std::string opt_bool(const std::optional<bool>& b) { return b ? (*b ? "1" : "0") : ""; }

std::string count_by(const ResultRecord& r, std::initializer_list<CountMethod> methods) {
  for (const auto& c : r.counts) {
    if (std::find(methods.begin(), methods.end(), c.method) != methods.end()) return std::to_string(c.value);
  }
  return "";
}

}  // namespace

std::string csv_header() {
  return "descriptor,p,h,n,q,a,b,"
         "sigma1_nonclassical,sigma1_frobenius_nonclassical,"
         "sigma2_nonclassical,sigma2_frobenius_nonclassical,"
         "sigma3_nonclassical,sigma3_frobenius_nonclassical,sigma3_case,"
         "count_enumeration,count_closed_form,count_korchmaros_szonyi,"
         "reduced_n,d,hw_lower,hw_upper,sv1_floor,sv2_floor,sv3_floor,sv3_closed,"
         "sv3_floor_attained,sv3_floor_violated,mismatch,violations";
}

std::string csv_row(const ResultRecord& r) {
  std::ostringstream out;
  const Field f = build_field(r.p, r.h);
  out << '"' << r.descriptor << "\"," << r.p << ',' << r.h << ',' << r.n << ',' << r.q << ",\""
      << f.serialize(r.a) << "\",\"" << f.serialize(r.b) << "\",";
  for (int s = 1; s <= 3; ++s) {
    if (r.verdicts.empty()) {
      out << ",,";
    } else {
      const auto& v = r.verdicts[s - 1];
      out << opt_bool(v.nonclassical) << ',' << opt_bool(v.frobenius_nonclassical) << ',';
    }
  }
  out << (r.verdicts.empty() ? "" : r.verdicts[2].frobenius_case) << ',';
  out << count_by(r, {CountMethod::enumeration}) << ','
      << count_by(r, {CountMethod::norm_cubic, CountMethod::third_norm}) << ','
      << count_by(r, {CountMethod::korchmaros_szonyi}) << ',';
  if (r.bounds) {
    const auto& b = *r.bounds;
    out << b.n << ',' << b.d << ',' << b.hasse_weil.lower << ',' << b.hasse_weil.upper << ','
        << b.sv_floor.at(1) << ',' << b.sv_floor.at(2) << ',' << b.sv_floor.at(3) << ','
        << b.sv_closed.at(3).to_string() << ',';
    const auto it = b.comparisons.find("sv-floor-3");
    if (it != b.comparisons.end()) {
      out << (it->second.attained ? 1 : 0) << ',' << (it->second.violated ? 1 : 0) << ',';
    } else {
      out << ",,";
    }
  } else {
    out << ",,,,,,,,,,";
  }
  out << (r.mismatch ? 1 : 0) << ',' << r.violations.size();
  return out.str();
}

std::string sweep_csv(const SweepResult& s) {
  std::string out = std::string("# ") + kSweepCsvVersion + "\n" + csv_header() + "\n";
  for (const auto& r : s.rows) out += csv_row(r) + "\n";
  if (s.truncated) out += "# TRUNCATED: work budget exhausted; later rows omitted\n";
  out += "# rows=" + std::to_string(s.rows.size()) + " mismatches=" + std::to_string(s.mismatches) +
         " invariant_violations=" + std::to_string(s.invariant_violations) +
         " crossover_regime=" + std::to_string(s.crossover_regime) +
         " crossover_cubic_smallest=" + std::to_string(s.crossover_holds) + "\n";
  return out;
}

}  // namespace fermat
