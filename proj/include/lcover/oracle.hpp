#pragma once

// Brute-force reference values computed by direct enumeration. Nothing here
// calls into the main library: the loops and the gcd are local so a bug in
// the formulas cannot leak into the values they are checked against.

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace lcover::oracle {

using u64 = std::uint64_t;

u64 gcd(u64 a, u64 b);

/// phi(n) by counting.
u64 totient_scan(u64 n);

/// |{1 <= x <= ell : gcd(x, n) = 1}|, with 0 counted as the unit of Z_1.
u64 phi_relative_scan(u64 n, u64 ell);

/// prefix[ell] = phi_relative_scan(n, ell) for every 0 <= ell < n.
std::vector<u64> phi_relative_prefix(u64 n);

/// For every y in [0, n): the number of units x of Z_n with x*b == y for
/// some 0 <= b <= ell.
std::vector<u64> coverage_counts(u64 n, u64 ell);
u64 coverage_count_scan(u64 n, u64 ell, u64 y);

/// Number of units x of Z_{dn} with x*b == y (mod n) for some b in `set`.
u64 lemma_tau_scan(u64 n, u64 d, u64 y, const std::vector<u64>& set);

/// All divisors of n, ascending, by trial division.
std::vector<u64> divisors_scan(u64 n);

/// Whether {gcd(a*b, n) : a | n, a <= s, b in basis} contains every divisor
/// of n.
bool divisor_cover_scan(u64 n, double s, const std::vector<u64>& basis);

/// Residues of Z_n missed by the segments of length ell with these slopes.
std::vector<u64> uncovered_scan(u64 n, u64 ell, const std::vector<u64>& slopes);

inline constexpr u64 kMinCoverMaxN = 40;

struct MinCoverResult {
  u64 lower = 0;             // proven lower bound
  u64 upper = 0;             // size of `cover`
  std::vector<u64> cover;    // best cover found, sorted
  bool exact() const { return lower == upper; }
};

/// Minimum ell-covering of Z_n by branch and bound over slope subsets.
/// Slopes with identical segments are merged, dominated segments dropped,
/// and slopes that are the only way to reach some residue taken first.
/// Stops after `time_limit_s` seconds and reports the interval found so far.
/// Requires 2 <= n <= kMinCoverMaxN and ell >= 1.
MinCoverResult min_cover_bruteforce(u64 n, u64 ell, double time_limit_s = 10.0);

// Ground-truth tables.

inline constexpr const char* kTableVersion = "v1";

struct TableScale {
  u64 phi_max_n = 5000;
  u64 phi_samples = 64;       // ell values per n above phi_all_ell_max_n
  u64 phi_all_ell_max_n = 500;
  u64 coverage_max_n = 200;
  u64 lemma_max_n = 100;
  u64 lemma_max_d = 6;
  u64 lemma_sets = 50;
  u64 divisor_max_n = 300;
  u64 min_cover_max_n = 40;
  u64 seed = 20240601;
};

/// The reduced scale of the tables committed under tests/data.
inline TableScale small_table_scale() {
  TableScale s;
  s.phi_max_n = 120;
  s.phi_samples = 16;
  s.phi_all_ell_max_n = 60;
  s.coverage_max_n = 30;
  s.lemma_max_n = 16;
  s.lemma_max_d = 4;
  s.lemma_sets = 4;
  s.divisor_max_n = 72;
  s.min_cover_max_n = 24;
  return s;
}

struct OracleTable {
  std::string kind;
  std::string version = kTableVersion;
  std::string params;
  std::vector<std::pair<std::string, std::string>> rows;
};

inline const std::vector<std::string>& table_kinds() {
  static const std::vector<std::string> kinds = {"phi_relative", "coverage_count", "lemma_tau",
                                                 "divisor_cover", "min_cover"};
  return kinds;
}

/// Throws std::invalid_argument for an unknown kind and std::out_of_range
/// when the scale exceeds the caps (phi 5000, coverage 200, lemma 100/6,
/// divisor 300, min_cover 40).
OracleTable generate_table(const std::string& kind, const TableScale& scale);

/// Header line `#kind version params`, then `tuple<TAB>value` rows.
std::string format_table(const OracleTable& table);
OracleTable parse_table(const std::string& text);

/// Writes <dir>/<kind>.tsv for every kind; returns the paths written.
std::vector<std::filesystem::path> generate_tables(const std::filesystem::path& dir,
                                                   const TableScale& scale);

}  // namespace lcover::oracle
