// fermat: command-line front end for the Fermat curve library.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "fermat/bounds.hpp"
#include "fermat/classify.hpp"
#include "fermat/counting.hpp"
#include "fermat/error.hpp"
#include "fermat/localgeo.hpp"
#include "fermat/report.hpp"
#include "fermat/verify.hpp"

using namespace fermat;
using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kMismatch = 3 };

struct Globals {
  u64 seed = 1;
  std::optional<u64> precision;
  unsigned threads = 1;
  std::string format = "json";
  std::string output_dir;
};

// Writes to <output-dir>/<name> when an output directory is set, else stdout.
void emit(const Globals& g, const std::string& name, const std::string& text) {
  if (g.output_dir.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::create_directories(g.output_dir);
  const auto path = std::filesystem::path(g.output_dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << text;
}

std::string pad(const std::string& s, size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

std::string bounds_table(const BoundReport& r) {
  std::ostringstream out;
  out << r.curve << "  (bounds for n = " << r.n << ", q = " << r.q << ", d = " << r.d << ")\n";
  out << pad("bound", 14) << pad("value", 22) << "status\n";
  auto row = [&](const std::string& name, const std::string& value) {
    std::string status = "-";
    if (auto it = r.comparisons.find(name); it != r.comparisons.end()) {
      status = it->second.violated ? "violated" : it->second.attained ? "attained" : "holds";
    }
    out << pad(name, 14) << pad(value, 22) << status;
    if (name.size() > 2 && name.back() >= '1' && name.back() <= '3') {
      const auto& guards = r.guards.at(name.back() - '0');
      if (!guards.empty()) out << "  (not a valid bound: " << guards.front() << ")";
    }
    out << "\n";
  };
  row("hasse-weil", "[" + std::to_string(r.hasse_weil.lower) + ", " + std::to_string(r.hasse_weil.upper) + "]");
  for (const auto& [s, v] : r.sv_closed) row("sv-closed-" + std::to_string(s), v.to_string());
  for (const auto& [s, v] : r.sv_floor) row("sv-floor-" + std::to_string(s), std::to_string(v));
  if (r.count) out << "count N = " << *r.count << "\n";
  return out.str();
}

std::string record_table(const ResultRecord& r) {
  std::ostringstream out;
  out << r.descriptor << "\n";
  for (const auto& v : r.verdicts) {
    auto tri = [](const std::optional<bool>& b, const char* yes, const char* no) {
      return b ? std::string(*b ? yes : no) : std::string("undetermined");
    };
    out << "  sigma" << v.system << ": " << tri(v.nonclassical, "nonclassical", "classical") << ", "
        << tri(v.frobenius_nonclassical, "Frobenius nonclassical", "Frobenius classical") << " [" << v.frobenius_case;
    if (v.witness_r) out << ", r = " << *v.witness_r;
    out << "]\n";
  }
  for (const auto& c : r.counts) out << "  N = " << c.value << " by " << to_string(c.method) << "\n";
  for (const auto& n : r.notes) out << "  note: " << n << "\n";
  if (r.bounds) {
    std::istringstream lines(bounds_table(*r.bounds));
    for (std::string line; std::getline(lines, line);) out << "  " << line << "\n";
  }
  for (const auto& v : r.violations) out << "  VIOLATION: " << v << "\n";
  return out.str();
}

std::set<Task> parse_tasks(const std::vector<std::string>& names) {
  std::set<Task> tasks;
  for (const auto& n : names) tasks.insert(parse_task(n));
  if (tasks.empty()) throw ValidationError("no tasks selected");
  return tasks;
}

int run_analyze(const Globals& g, const std::string& descriptor, const std::vector<std::string>& task_names) {
  const FermatCurve curve = parse_curve(descriptor);
  const ResultRecord r = analyze(curve, parse_tasks(task_names), g.threads);
  if (g.format == "csv") {
    emit(g, "analyze.csv", csv_header() + "\n" + csv_row(r) + "\n");
  } else if (g.format == "table") {
    emit(g, "analyze.txt", record_table(r));
  } else {
    emit(g, "analyze.json", to_json(r).dump(2) + "\n");
  }
  return r.mismatch ? kMismatch : kOk;
}

int run_count(const Globals& g, const std::string& descriptor) {
  const FermatCurve curve = parse_curve(descriptor);
  const ResultRecord r = analyze(curve, {Task::count}, g.threads);
  if (g.format == "table") {
    emit(g, "count.txt", record_table(r));
  } else if (g.format == "csv") {
    std::string text = "method,value\n";
    for (const auto& c : r.counts) text += to_string(c.method) + "," + std::to_string(c.value) + "\n";
    emit(g, "count.csv", text);
  } else {
    ordered_json j;
    j["schema"] = kAnalysisSchema;
    j["curve"] = r.descriptor;
    j["counts"] = ordered_json::array();
    for (const auto& c : r.counts) j["counts"].push_back(to_json(c));
    j["d"] = coordinate_zero_count(curve);
    j["notes"] = r.notes;
    j["mismatch"] = r.mismatch;
    emit(g, "count.json", j.dump(2) + "\n");
  }
  return r.mismatch ? kMismatch : kOk;
}

int run_bounds(const Globals& g, const std::string& descriptor, bool with_count) {
  const FermatCurve curve = parse_curve(descriptor);
  std::optional<u64> N;
  if (with_count) N = count_points(curve, g.threads).value;
  const BoundReport r = bound_report(curve, N);
  if (g.format == "table") {
    emit(g, "bounds.txt", bounds_table(r));
  } else if (g.format == "csv") {
    std::string text = "bound,value,attained,violated\n";
    auto add = [&](const std::string& name, const std::string& value) {
      const auto it = r.comparisons.find(name);
      text += name + "," + value + ",";
      text += it == r.comparisons.end() ? "," : std::string(it->second.attained ? "1" : "0") + "," +
                                                    (it->second.violated ? "1" : "0");
      text += "\n";
    };
    add("hasse-weil", std::to_string(r.hasse_weil.lower) + ".." + std::to_string(r.hasse_weil.upper));
    for (const auto& [s, v] : r.sv_closed) add("sv-closed-" + std::to_string(s), v.to_string());
    for (const auto& [s, v] : r.sv_floor) add("sv-floor-" + std::to_string(s), std::to_string(v));
    emit(g, "bounds.csv", text);
  } else {
    ordered_json j{{"schema", kAnalysisSchema}, {"curve", r.curve}};
    j.update(to_json(r));
    emit(g, "bounds.json", j.dump(2) + "\n");
  }
  return kOk;
}

// Splits "x,y" on the comma outside brackets.
std::pair<std::string, std::string> split_point(const std::string& text) {
  int depth = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '[') ++depth;
    if (text[i] == ']') --depth;
    if (text[i] == ',' && depth == 0) return {text.substr(0, i), text.substr(i + 1)};
  }
  throw ValidationError("point must be 'x,y', got '" + text + "'");
}

struct OrdersArgs {
  std::string descriptor;
  std::string point;
  bool generic = false;
  bool axis = false;
  int s = 1;
  unsigned extension = 0;
  u64 ceiling = kDefaultPrecisionCeiling;
};

int run_orders(const Globals& g, const OrdersArgs& o) {
  const FermatCurve curve = parse_curve(o.descriptor);
  if (o.s < 1 || o.s > 3) throw ValidationError("s must be 1, 2 or 3");
  if (int(o.generic) + int(o.axis) + int(!o.point.empty()) != 1) {
    throw ValidationError("give exactly one of --point, --generic, --axis");
  }
  LocalPoint P = [&] {
    if (o.generic) return sample_generic_point(curve, g.seed);
    if (o.axis) return axis_point(curve);
    const unsigned K = o.extension ? o.extension : curve.h();
    if (K % curve.h() != 0) throw ValidationError("--extension must be a multiple of h");
    const Field E = build_field(curve.p(), K);
    const auto [xs, ys] = split_point(o.point);
    return LocalPoint{E, AffinePoint{E.parse_element(xs), E.parse_element(ys)}};
  }();
  const OrderSequence seq = order_sequence(curve, P, o.s, g.precision, o.ceiling);
  if (g.format == "table") {
    std::string text = "orders:";
    for (u64 e : seq.orders) text += " " + std::to_string(e);
    text += "\nprecision_used: " + std::to_string(seq.precision_used) + "\n";
    emit(g, "orders.txt", text);
  } else if (g.format == "csv") {
    std::string text = "index,order\n";
    for (size_t i = 0; i < seq.orders.size(); ++i) {
      text += std::to_string(i) + "," + std::to_string(seq.orders[i]) + "\n";
    }
    emit(g, "orders.csv", text);
  } else {
    ordered_json j;
    j["schema"] = kAnalysisSchema;
    j["curve"] = curve.descriptor();
    j["s"] = o.s;
    j["orders"] = seq.orders;
    j["precision_used"] = seq.precision_used;
    j["point"] = {{"x", P.field.serialize(P.point.x)}, {"y", P.field.serialize(P.point.y)}, {"z", "[1]"}};
    j["field_extension_degree"] = P.field.degree();
    j["field"] = P.field.descriptor();
    if (o.generic) j["seed"] = g.seed;
    emit(g, "orders.json", j.dump(2) + "\n");
  }
  return kOk;
}

struct SweepArgs {
  std::vector<u32> primes;
  unsigned h_min = 1, h_max = 1;
  u64 n_min = 1, n_max = 12;
  bool divides = false;
  std::vector<std::string> patterns;
  std::string policy = "one";
  u64 pairs = 4;
  std::vector<std::string> tasks{"classify", "count", "bounds"};
  u64 budget = u64{1} << 34;
};

int run_sweep_cmd(const Globals& g, const SweepArgs& a) {
  SweepSpec spec;
  spec.primes = a.primes;
  spec.h_min = a.h_min;
  spec.h_max = a.h_max;
  spec.n_min = a.n_min;
  spec.n_max = a.n_max;
  spec.require_divides = a.divides;
  for (const auto& p : a.patterns) spec.patterns.push_back(parse_pattern(p));
  if (a.policy == "one") {
    spec.policy = CoefficientPolicy::one;
  } else if (a.policy == "subfield") {
    spec.policy = CoefficientPolicy::subfield;
  } else if (a.policy == "random") {
    spec.policy = CoefficientPolicy::random;
  } else {
    throw ValidationError("unknown coefficient policy '" + a.policy + "'");
  }
  spec.random_pairs = a.pairs;
  spec.seed = g.seed;
  spec.tasks = parse_tasks(a.tasks);
  spec.budget = a.budget;
  spec.threads = g.threads;
  const SweepResult res = run_sweep(spec);
  if (g.format == "json") {
    ordered_json j;
    j["schema"] = kAnalysisSchema;
    j["rows"] = ordered_json::array();
    for (const auto& r : res.rows) j["rows"].push_back(to_json(r));
    j["truncated"] = res.truncated;
    j["summary"] = {{"rows", res.rows.size()},
                    {"mismatches", res.mismatches},
                    {"invariant_violations", res.invariant_violations},
                    {"crossover_regime", res.crossover_regime},
                    {"crossover_cubic_smallest", res.crossover_holds}};
    emit(g, "sweep.json", j.dump(2) + "\n");
  } else if (g.format == "table") {
    std::string text;
    for (const auto& r : res.rows) text += record_table(r);
    if (res.truncated) text += "TRUNCATED: work budget exhausted\n";
    text += "rows=" + std::to_string(res.rows.size()) + " mismatches=" + std::to_string(res.mismatches) +
            " invariant_violations=" + std::to_string(res.invariant_violations) + "\n";
    emit(g, "sweep.txt", text);
  } else {
    emit(g, "sweep.csv", sweep_csv(res));
  }
  if (res.mismatches || res.invariant_violations) {
    std::cerr << "sweep: " << res.mismatches << " mismatches, " << res.invariant_violations
              << " invariant violations\n";
    return kMismatch;
  }
  return kOk;
}

int run_verify(const Globals& g, const std::string& scope, bool timings) {
  const auto results = verify(scope, g.seed);
  bool ok = true;
  std::string text;
  if (g.format == "json") {
    ordered_json j = ordered_json::array();
    for (const auto& r : results) {
      ordered_json x{{"name", r.name}, {"passed", r.passed}, {"checked", r.checked}, {"violations", r.violations},
                     {"detail", r.detail}};
      if (timings) x["seconds"] = r.seconds;
      j.push_back(x);
      ok = ok && r.passed;
    }
    text = j.dump(2) + "\n";
  } else {
    for (const auto& r : results) {
      std::ostringstream line;
      line << (r.passed ? "PASS " : "FAIL ") << r.name;
      if (r.checked) line << " [" << r.violations << "/" << r.checked << " violations]";
      if (timings) line << " " << std::fixed << std::setprecision(2) << r.seconds << "s";
      if (!r.detail.empty()) line << " " << r.detail;
      text += line.str() + "\n";
      ok = ok && r.passed;
    }
  }
  emit(g, "verify." + std::string(g.format == "json" ? "json" : "txt"), text);
  return ok ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify Fermat curves aX^n + bY^n = Z^n over finite fields, count their points and compare bounds."};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "PRNG seed for generic points and random coefficients");
  app.add_option("--precision", g.precision, "series precision T for order sequences (disables doubling)");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1u, 256u));
  auto* format_opt = app.add_option("--format", g.format, "output format (default json; csv for sweep, table for verify)")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--output-dir", g.output_dir, "write output to a file in this directory instead of stdout");

  std::string descriptor;
  std::vector<std::string> tasks{"classify", "count", "bounds"};
  auto* analyze_cmd = app.add_subcommand("analyze", "classify, count and bound one curve");
  analyze_cmd->add_option("curve", descriptor, "e.g. p=97,h=2,n=294,a=1,b=1")->required();
  analyze_cmd->add_option("--tasks", tasks, "subset of classify,count,bounds")->delimiter(',');

  auto* count_cmd = app.add_subcommand("count", "count rational points by every applicable method");
  count_cmd->add_option("curve", descriptor)->required();

  bool no_count = false;
  auto* bounds_cmd = app.add_subcommand("bounds", "Hasse-Weil and Stohr-Voloch bounds");
  bounds_cmd->add_option("curve", descriptor)->required();
  bounds_cmd->add_flag("--no-count", no_count, "skip enumeration");

  OrdersArgs oa;
  auto* orders_cmd = app.add_subcommand("orders", "order sequence at a point");
  orders_cmd->add_option("curve", oa.descriptor)->required();
  orders_cmd->add_option("--point", oa.point, "affine point x,y; elements as integers or [c0,c1,...]");
  orders_cmd->add_option("--extension", oa.extension, "degree K of the field GF(p^K) the point lies in");
  orders_cmd->add_flag("--generic", oa.generic, "sample a generic point from --seed");
  orders_cmd->add_flag("--axis", oa.axis, "use a point (u:0:1)");
  orders_cmd->add_option("-s,--system", oa.s, "degree of the linear system (1, 2 or 3)")->required();
  orders_cmd->add_option("--ceiling", oa.ceiling, "largest precision reached by doubling");

  SweepArgs sa;
  auto* sweep_cmd = app.add_subcommand("sweep", "analyze a range of curves");
  sweep_cmd->add_option("--primes", sa.primes, "characteristics, comma separated")->delimiter(',')->required();
  sweep_cmd->add_option("--h-min", sa.h_min);
  sweep_cmd->add_option("--h-max", sa.h_max);
  sweep_cmd->add_option("--n-min", sa.n_min);
  sweep_cmd->add_option("--n-max", sa.n_max);
  sweep_cmd->add_flag("--divides", sa.divides, "keep only n | q-1");
  sweep_cmd->add_option("--pattern", sa.patterns, "keep only p | mn+c, e.g. n-3 or 3n-1")->delimiter(',');
  sweep_cmd->add_option("--policy", sa.policy, "coefficients: one, subfield or random")
      ->check(CLI::IsMember({"one", "subfield", "random"}));
  sweep_cmd->add_option("--pairs", sa.pairs, "coefficient pairs per curve under the random policy");
  sweep_cmd->add_option("--tasks", sa.tasks, "subset of classify,count,bounds")->delimiter(',');
  sweep_cmd->add_option("--budget", sa.budget, "estimated field operations before truncation");

  std::string scope = "all";
  bool timings = false;
  auto* verify_cmd = app.add_subcommand("verify", "run the built-in checks");
  verify_cmd->add_option("scope", scope, "examples, fixtures, invariants or all");
  verify_cmd->add_flag("--timings", timings, "report run times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*sweep_cmd && format_opt->count() == 0) g.format = "csv";
  if (*verify_cmd && format_opt->count() == 0) g.format = "table";

  try {
    if (*analyze_cmd) return run_analyze(g, descriptor, tasks);
    if (*count_cmd) return run_count(g, descriptor);
    if (*bounds_cmd) return run_bounds(g, descriptor, !no_count);
    if (*orders_cmd) return run_orders(g, oa);
    if (*sweep_cmd) return run_sweep_cmd(g, sa);
    if (*verify_cmd) return run_verify(g, scope, timings);
  } catch (const InternalMismatch& e) {
    std::cerr << "internal mismatch: " << e.what() << "\n";
    return kMismatch;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "error: " << e.what() << " (T = " << e.precision() << ")\n";
    return kValidation;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kValidation;
  }
  return kUsage;
}
