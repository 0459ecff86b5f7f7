#pragma once

// Composed analyses of single curves and of parameter sweeps, with JSON and
// CSV renderings.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "fermat/bounds.hpp"
#include "fermat/classify.hpp"
#include "fermat/counting.hpp"
#include "fermat/localgeo.hpp"

namespace fermat {

inline constexpr const char* kAnalysisSchema = "fermat.analysis/1";
inline constexpr const char* kSweepCsvVersion = "fermat.sweep.csv/1";

enum class Task { classify, count, bounds };
Task parse_task(const std::string& s);
std::string to_string(Task t);

struct ResultRecord {
  std::string descriptor;
  u32 p = 0;
  unsigned h = 0;
  u64 n = 0, q = 0;
  FieldElement a{}, b{};
  std::vector<ClassificationVerdict> verdicts;  // s = 1, 2, 3 when classified
  /// Frobenius identity per s where its hypothesis holds.
  std::vector<std::pair<int, bool>> identities;
  std::vector<PointCount> counts;               // enumeration first
  std::vector<std::string> notes;
  std::optional<BoundReport> bounds;
  bool mismatch = false;
  /// Descriptions of failed invariants; a mismatch is one of them.
  std::vector<std::string> violations;
};

/// Classifies, counts by every applicable method and computes bounds. A
/// disagreement between counts sets `mismatch`; every other failed invariant
/// (congruence mod n^2, Hasse-Weil, identity vs classification, ...) is
/// listed in `violations`.
ResultRecord analyze(const FermatCurve& curve, const std::set<Task>& tasks, unsigned threads = 1);

nlohmann::ordered_json to_json(const ClassificationVerdict& v);
nlohmann::ordered_json to_json(const PointCount& c);
nlohmann::ordered_json to_json(const BoundReport& r);
nlohmann::ordered_json to_json(const OrderSequence& o);
nlohmann::ordered_json to_json(const ResultRecord& r);

enum class CoefficientPolicy { one, subfield, random };

struct SweepSpec {
  std::vector<u32> primes;
  unsigned h_min = 1, h_max = 1;
  u64 n_min = 1, n_max = 12;
  /// Keep only n | q - 1.
  bool require_divides = false;
  /// Keep only p | (m n + c) for one of these (m, c), e.g. {1, -3} for p | n-3.
  std::vector<std::pair<i64, i64>> patterns;
  CoefficientPolicy policy = CoefficientPolicy::one;
  /// Pairs per (p, h, n) under the random policy.
  u64 random_pairs = 4;
  u64 seed = 1;
  std::set<Task> tasks{Task::classify, Task::count, Task::bounds};
  /// Upper limit on estimated field operations; rows beyond it are dropped.
  u64 budget = u64{1} << 34;
  unsigned threads = 1;
};

/// "n-3" -> (1, -3), "3n-1" -> (3, -1), "2n+1" -> (2, 1), ...
std::pair<i64, i64> parse_pattern(const std::string& s);

struct SweepResult {
  std::vector<ResultRecord> rows;
  bool truncated = false;
  u64 mismatches = 0;
  u64 invariant_violations = 0;
  u64 crossover_regime = 0;  // rows with d = 0 and 13n < q - 1
  u64 crossover_holds = 0;   // of those, rows where the cubic floor bound is smallest
};

/// Rows in lexicographic order of (p, h, n, a, b); independent of `threads`.
SweepResult run_sweep(const SweepSpec& spec);

std::string csv_header();
std::string csv_row(const ResultRecord& r);
/// Version comment, header, rows, then footer comments.
std::string sweep_csv(const SweepResult& s);

}  // namespace fermat
