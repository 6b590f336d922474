#pragma once

// Command-line front end: argument handling, JSON/CSV rendering and the
// benchmark grid.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcover/cover.hpp"

namespace lcover::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kUsage = 2, kNotCovering = 3 };

/// Runs the `lcover` command line. Output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Malformed user input (grid spec, slope list).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decimal integers separated by whitespace and/or commas.
std::vector<u64> parse_slopes(const std::string& text);

struct GridInstance {
  u64 n = 0;
  u64 ell = 0;
  friend bool operator==(const GridInstance&, const GridInstance&) = default;
};

/// Semicolon-separated items; each is an n-family or an ell-rule, and the
/// grid is every family member crossed with every rule:
///   primorial:k      product of the first k primes
///   prime:p          the prime p
///   power:p^e        p to the e
///   random:count:bits  `count` moduli drawn uniformly from [2, 2^bits)
///   ratio:x          ell = floor(n / x)
///   log5             ell = ceil(ln(n)^5)
///   sqrt             ell = floor(sqrt(n))
///   fixed:v          ell = v
/// Pairs with ell outside [1, n) are dropped. Throws ParseError.
std::vector<GridInstance> parse_grid(const std::string& spec, u64 seed);

struct BenchRecord {
  u64 n = 0;
  u64 ell = 0;
  std::string method;
  u64 size = 0;
  double bound_ratio = 0;
  u64 wall_time_ms = 0;
  std::string basis_kind;
  u64 patch_count = 0;
  std::string seed;  // empty for deterministic runs
};

inline constexpr const char* kCsvHeader =
    "n,ell,method,size,bound_ratio,wall_time_ms,basis_kind,patch_count,seed";

/// size / ((n / ell) * max(ln n, 1)).
double bound_ratio(u64 n, u64 ell, u64 size);

BenchRecord bench_record(const CoveringSet& cover, const ConstructConfig& cfg);
std::string to_csv_row(const BenchRecord& r);

/// Runs the grid: one record per (instance, mode, repeat), in that nesting
/// order, executed on `jobs` workers and emitted in order.
std::vector<BenchRecord> run_bench(const std::vector<GridInstance>& grid, const std::vector<Mode>& modes,
                                   unsigned repeat, unsigned jobs, const ConstructConfig& base);

/// The JSON document printed by `construct --json`. Runtime is left out so
/// repeated runs are byte-identical.
std::string construct_json(const CoveringSet& cover);

}  // namespace lcover::cli
