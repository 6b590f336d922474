#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lcover/cli.hpp"
#include "lcover/divisor_cover.hpp"
#include "lcover/oracle.hpp"
#include "lcover/segments.hpp"

namespace lcover::cli {
namespace {

using Json = nlohmann::ordered_json;

std::string_view engine_name(GreedyEngine e) {
  switch (e) {
    case GreedyEngine::kFullPool:
      return "full-pool";
    case GreedyEngine::kSampledPool:
      return "sampled-pool";
    case GreedyEngine::kRandomized:
      return "randomized";
    case GreedyEngine::kSingleSegment:
      return "single-segment";
  }
  return "unknown";
}

Factorization checked_factorization(u64 n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  return factorize(n);
}

std::string read_slopes_arg(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg, std::ios::binary);
    if (!in) throw ParseError("cannot read slope file: " + arg);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  return arg;
}

struct ConstructArgs {
  u64 n = 0;
  u64 ell = 0;
  std::string mode = "det";
  u64 seed = 1;
  double c = 1.0;
  bool json = false;
  bool raw = false;
  u64 work_budget = GreedyOptions{}.work_budget;
  std::string case_choice = "auto";
};

ConstructConfig make_config(const std::string& mode, u64 seed, double c, u64 budget,
                            const std::string& case_choice) {
  ConstructConfig cfg;
  cfg.mode = mode == "rand" ? Mode::kRandomized : Mode::kDeterministic;
  cfg.seed = seed;
  cfg.c = c;
  cfg.greedy.work_budget = budget;
  cfg.case_choice = case_choice == "above"     ? CaseChoice::kAboveThreshold
                    : case_choice == "lattice" ? CaseChoice::kDivisorLattice
                                               : CaseChoice::kAuto;
  return cfg;
}

int cmd_construct(const ConstructArgs& a, std::ostream& out) {
  const ConstructConfig cfg = make_config(a.mode, a.seed, a.c, a.work_budget, a.case_choice);
  const CoveringSet cover = construct(a.n, a.ell, cfg);
  if (a.raw) {
    for (u64 x : cover.slopes) out << x << '\n';
  } else {
    out << construct_json(cover) << '\n';
  }
  return kOk;
}

struct VerifyArgs {
  u64 n = 0;
  u64 ell = 0;
  std::string slopes;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.n < 1) throw std::invalid_argument("verify: n must be >= 1");
  const std::vector<u64> slopes = parse_slopes(read_slopes_arg(a.slopes));
  const CoverVerification v = verify_cover(a.n, a.ell, slopes);
  Json j;
  j["n"] = a.n;
  j["ell"] = a.ell;
  j["covered"] = v.covered;
  j["uncovered"] = v.uncovered_count;
  j["witnesses"] = v.witnesses;
  out << j.dump() << '\n';
  return v.covered ? kOk : kNotCovering;
}

struct AnalyzeArgs {
  u64 n = 0;
  u64 ell = 0;
  u64 y = 0;
  double c = 1.0;
  unsigned k = 0;
};

int analyze_phi(const AnalyzeArgs& a, std::ostream& out) {
  const Factorization f = checked_factorization(a.n);
  if (a.ell >= a.n && a.n > 1) throw std::out_of_range("analyze phi: requires ell < n");
  Json j;
  j["phi_rel"] = phi_relative(f, a.ell);
  j["phi"] = euler_phi(f);
  j["n"] = a.n;
  j["ell"] = a.ell;
  j["density_estimate"] = static_cast<double>(a.ell) * static_cast<double>(euler_phi(f)) / static_cast<double>(a.n);
  j["lower_estimate"] = phi_lower_estimate(f, a.ell, a.c);
  out << j.dump() << '\n';
  return kOk;
}

int analyze_coverage(const AnalyzeArgs& a, std::ostream& out) {
  const Factorization f = checked_factorization(a.n);
  if (a.y >= a.n) throw std::out_of_range("analyze coverage: requires y < n");
  if (a.ell >= a.n && a.n > 1) throw std::out_of_range("analyze coverage: requires ell < n");
  Json j;
  j["count"] = coverage_count(f, a.ell, a.y);
  j["n"] = a.n;
  j["ell"] = a.ell;
  j["y"] = a.y;
  j["gcd"] = std::gcd(a.y, a.n);
  j["phi"] = euler_phi(f);
  out << j.dump() << '\n';
  return kOk;
}

int analyze_basis(const AnalyzeArgs& a, std::ostream& out) {
  if (a.n < 2 || a.ell < 1 || a.ell >= a.n) throw std::out_of_range("analyze basis: requires 1 <= ell < n");
  const Factorization f = checked_factorization(a.n);
  const double s = threshold_s(a.n, a.ell, a.c);
  const bool above = use_above_threshold(a.n, a.ell, a.c);
  const DivisorBasis basis = above ? basis_above_threshold(f, s) : basis_divisor_lattice(f, s);
  Json j;
  j["n"] = a.n;
  j["ell"] = a.ell;
  j["c"] = a.c;
  j["s"] = s;
  j["kind"] = std::string(to_string(basis.kind));
  if (basis.kind == BasisKind::kDivisorLatticeOfM) j["m"] = basis.m;
  j["size"] = basis.basis.size();
  j["basis"] = basis.basis;
  j["divisor_count"] = divisors(f).size();
  if (divisors(f).size() <= kDivisorCheckCap) j["verified"] = check_divisor_cover(f, s, basis.basis).covered;
  out << j.dump() << '\n';
  return kOk;
}

int analyze_lowerbound(const AnalyzeArgs& a, std::ostream& out) {
  const LowerBoundInstance inst = lower_bound_instance(a.k);
  Json j;
  j["n"] = inst.n;
  j["ell"] = inst.ell;
  j["phi"] = inst.phi_n;
  if (inst.certificate) {
    j["certificate"] = *inst.certificate;
  } else {
    j["certificate"] = nullptr;
  }
  j["k"] = inst.k;
  j["degenerate"] = inst.degenerate;
  j["min_cover_at_least"] = inst.degenerate ? 1 : inst.phi_n;
  out << j.dump() << '\n';
  return kOk;
}

struct BenchArgs {
  std::string grid;
  std::string modes = "det";
  unsigned repeat = 1;
  unsigned jobs = 1;
  u64 seed = 1;
  double c = 1.0;
  u64 work_budget = GreedyOptions{}.work_budget;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  const std::vector<GridInstance> grid = parse_grid(a.grid, a.seed);
  std::vector<Mode> modes;
  std::string token;
  std::istringstream in(a.modes);
  while (std::getline(in, token, ',')) {
    if (token == "det") {
      modes.push_back(Mode::kDeterministic);
    } else if (token == "rand") {
      modes.push_back(Mode::kRandomized);
    } else {
      throw ParseError("unknown mode: " + token);
    }
  }
  if (modes.empty()) throw ParseError("no modes given");
  if (a.repeat < 1) throw ParseError("repeat must be >= 1");
  const ConstructConfig base = make_config("det", a.seed, a.c, a.work_budget, "auto");
  const std::vector<BenchRecord> rows = run_bench(grid, modes, a.repeat, a.jobs, base);
  out << kCsvHeader << '\n';
  for (const auto& r : rows) out << to_csv_row(r) << '\n';
  return kOk;
}

struct TablesArgs {
  std::string dir;
  std::string scale = "small";
};

int cmd_tables(const TablesArgs& a, std::ostream& out) {
  const oracle::TableScale scale = a.scale == "full" ? oracle::TableScale{} : oracle::small_table_scale();
  for (const auto& p : oracle::generate_tables(a.dir, scale)) out << p.string() << '\n';
  return kOk;
}

}  // namespace

std::string construct_json(const CoveringSet& cover) {
  Json j;
  j["n"] = cover.n;
  j["ell"] = cover.ell;
  j["method"] = std::string(to_string(cover.method));
  j["size"] = cover.slopes.size();
  j["slopes"] = cover.slopes;
  Json stats;
  stats["basis_kind"] = std::string(to_string(cover.stats.basis_kind));
  stats["s"] = cover.stats.s;
  stats["m"] = cover.stats.m;
  stats["basis_size"] = cover.stats.basis_size;
  stats["patch_count"] = cover.stats.patch_count;
  stats["bound_ratio"] = bound_ratio(cover.n, cover.ell, cover.slopes.size());
  Json subs = Json::array();
  for (const auto& r : cover.stats.subproblems) {
    Json sj;
    sj["b"] = r.basis_element;
    sj["modulus"] = r.modulus;
    sj["universe"] = r.universe_size;
    sj["slopes"] = r.slopes;
    sj["engine"] = std::string(engine_name(r.stats.engine));
    sj["pool"] = r.stats.pool_size;
    sj["min_multiplicity"] = r.stats.min_multiplicity;
    subs.push_back(std::move(sj));
  }
  stats["subproblems"] = std::move(subs);
  j["stats"] = std::move(stats);
  return j.dump();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct and check l-covering sets of Z_n", "lcover"};
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct_cmd = app.add_subcommand("construct", "build a verified covering");
  construct_cmd->add_option("--n", ca.n, "modulus")->required();
  construct_cmd->add_option("--ell", ca.ell, "segment length")->required();
  construct_cmd->add_option("--mode", ca.mode, "det or rand")->check(CLI::IsMember({"det", "rand"}));
  construct_cmd->add_option("--seed", ca.seed, "seed for rand mode");
  construct_cmd->add_option("--c", ca.c, "construction constant")->check(CLI::PositiveNumber);
  construct_cmd->add_option("--case", ca.case_choice, "auto, above or lattice")
      ->check(CLI::IsMember({"auto", "above", "lattice"}));
  construct_cmd->add_option("--work-budget", ca.work_budget, "incidences before the sampled pool (0: never)");
  auto* json_flag = construct_cmd->add_flag("--json", ca.json, "JSON output (default)");
  construct_cmd->add_flag("--raw", ca.raw, "slopes one per line")->excludes(json_flag);

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "check a slope set");
  verify_cmd->add_option("--n", va.n)->required();
  verify_cmd->add_option("--ell", va.ell)->required();
  verify_cmd->add_option("--slopes", va.slopes, "file or comma list")->required();

  AnalyzeArgs aa;
  auto* analyze_cmd = app.add_subcommand("analyze", "exact arithmetic quantities");
  analyze_cmd->require_subcommand(1);
  auto* phi_cmd = analyze_cmd->add_subcommand("phi", "relative totient");
  phi_cmd->add_option("--n", aa.n)->required();
  phi_cmd->add_option("--ell", aa.ell)->required();
  phi_cmd->add_option("--c", aa.c)->check(CLI::PositiveNumber);
  auto* coverage_cmd = analyze_cmd->add_subcommand("coverage", "unit slopes reaching y");
  coverage_cmd->add_option("--n", aa.n)->required();
  coverage_cmd->add_option("--ell", aa.ell)->required();
  coverage_cmd->add_option("--y", aa.y)->required();
  auto* basis_cmd = analyze_cmd->add_subcommand("basis", "divisor basis used by construct");
  basis_cmd->add_option("--n", aa.n)->required();
  basis_cmd->add_option("--ell", aa.ell)->required();
  basis_cmd->add_option("--c", aa.c)->check(CLI::PositiveNumber);
  auto* lower_cmd = analyze_cmd->add_subcommand("lowerbound", "primorial instance");
  lower_cmd->add_option("--k", aa.k)->required();

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "CSV over a grid of instances");
  bench_cmd->add_option("--grid", ba.grid)->required();
  bench_cmd->add_option("--modes", ba.modes, "comma list of det,rand");
  bench_cmd->add_option("--repeat", ba.repeat);
  bench_cmd->add_option("--jobs", ba.jobs);
  bench_cmd->add_option("--seed", ba.seed);
  bench_cmd->add_option("--c", ba.c)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--work-budget", ba.work_budget);

  TablesArgs ta;
  auto* tables_cmd = app.add_subcommand("oracle-tables", "write brute-force reference tables");
  tables_cmd->add_option("--out", ta.dir)->required();
  tables_cmd->add_option("--scale", ta.scale, "small or full")->check(CLI::IsMember({"small", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*construct_cmd) return cmd_construct(ca, out);
    if (*verify_cmd) return cmd_verify(va, out);
    if (*phi_cmd) return analyze_phi(aa, out);
    if (*coverage_cmd) return analyze_coverage(aa, out);
    if (*basis_cmd) return analyze_basis(aa, out);
    if (*lower_cmd) return analyze_lowerbound(aa, out);
    if (*bench_cmd) return cmd_bench(ba, out);
    if (*tables_cmd) return cmd_tables(ta, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace lcover::cli
