#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lcover/oracle.hpp"

namespace lcover::oracle {
namespace {

using Rows = std::vector<std::pair<std::string, std::string>>;

std::string join(const std::vector<u64>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

// Per-n rows built independently, concatenated in order of n.
template <typename F>
Rows rows_by_n(u64 lo, u64 hi, F&& make) {
  std::vector<Rows> parts(hi >= lo ? hi - lo + 1 : 0);
  const auto count = static_cast<std::int64_t>(parts.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) parts[static_cast<std::size_t>(i)] = make(lo + static_cast<u64>(i));
  Rows out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<u64> sampled_ells(u64 n, u64 samples) {
  std::set<u64> picks;
  for (u64 i = 0; i < samples; ++i) picks.insert(samples > 1 ? i * (n - 1) / (samples - 1) : 0);
  return {picks.begin(), picks.end()};
}

std::vector<u64> threshold_grid() { return {1, 2, 3, 4, 6, 8, 12, 16, 24, 32}; }

OracleTable phi_table(const TableScale& sc) {
  if (sc.phi_max_n > 5000) throw std::out_of_range("phi_relative table: n cap is 5000");
  OracleTable t{"phi_relative", kTableVersion,
                "max_n=" + std::to_string(sc.phi_max_n) + " samples=" + std::to_string(sc.phi_samples) +
                    " all_ell_max_n=" + std::to_string(sc.phi_all_ell_max_n),
                {}};
  t.rows = rows_by_n(1, sc.phi_max_n, [&](u64 n) {
    Rows r;
    const std::vector<u64> prefix = phi_relative_prefix(n);
    std::vector<u64> ells;
    if (n <= sc.phi_all_ell_max_n) {
      for (u64 ell = 0; ell < n; ++ell) ells.push_back(ell);
    } else {
      ells = sampled_ells(n, sc.phi_samples);
    }
    for (u64 ell : ells) r.emplace_back(std::to_string(n) + "," + std::to_string(ell), std::to_string(prefix[ell]));
    return r;
  });
  return t;
}

OracleTable coverage_table(const TableScale& sc) {
  if (sc.coverage_max_n > 200) throw std::out_of_range("coverage_count table: n cap is 200");
  OracleTable t{"coverage_count", kTableVersion, "max_n=" + std::to_string(sc.coverage_max_n), {}};
  t.rows = rows_by_n(1, sc.coverage_max_n, [&](u64 n) {
    Rows r;
    for (u64 ell = 0; ell < n; ++ell) {
      const std::vector<u64> counts = coverage_counts(n, ell);
      for (u64 y = 0; y < n; ++y) {
        r.emplace_back(std::to_string(n) + "," + std::to_string(ell) + "," + std::to_string(y),
                       std::to_string(counts[y]));
      }
    }
    return r;
  });
  return t;
}

OracleTable lemma_table(const TableScale& sc) {
  if (sc.lemma_max_n > 100 || sc.lemma_max_d > 6) throw std::out_of_range("lemma_tau table: caps are n 100, d 6");
  OracleTable t{"lemma_tau", kTableVersion,
                "max_n=" + std::to_string(sc.lemma_max_n) + " max_d=" + std::to_string(sc.lemma_max_d) +
                    " sets=" + std::to_string(sc.lemma_sets) + " seed=" + std::to_string(sc.seed),
                {}};
  t.rows = rows_by_n(2, sc.lemma_max_n, [&](u64 n) {
    Rows r;
    std::vector<u64> units;
    for (u64 x = 1; x < n; ++x) {
      if (gcd(x, n) == 1) units.push_back(x);
    }
    std::mt19937_64 rng(sc.seed * 1000003 + n);
    for (u64 d = 1; d <= sc.lemma_max_d; ++d) {
      for (u64 k = 0; k < sc.lemma_sets; ++k) {
        // A random nonempty subset of the units, as a partial shuffle.
        std::vector<u64> pool = units;
        const u64 size = 1 + rng() % pool.size();
        for (u64 i = 0; i < size; ++i) std::swap(pool[i], pool[i + rng() % (pool.size() - i)]);
        std::vector<u64> set(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
        std::sort(set.begin(), set.end());
        // For a unit y every x*b with b a unit is itself a unit; count by y.
        std::vector<u64> count(n, 0);
        std::vector<u64> stamp(n, 0);
        const u64 big = d * n;
        for (u64 x = 1; x < big; ++x) {
          if (gcd(x, big) != 1) continue;
          for (u64 b : set) {
            const u64 y = x * b % n;
            if (stamp[y] == x) continue;
            stamp[y] = x;
            ++count[y];
          }
        }
        const std::string tail = "," + join(set, ' ');
        for (u64 y : units) {
          r.emplace_back(std::to_string(n) + "," + std::to_string(d) + "," + std::to_string(y) + tail,
                         std::to_string(count[y]));
        }
      }
    }
    return r;
  });
  return t;
}

OracleTable divisor_table(const TableScale& sc) {
  if (sc.divisor_max_n > 300) throw std::out_of_range("divisor_cover table: n cap is 300");
  OracleTable t{"divisor_cover", kTableVersion, "max_n=" + std::to_string(sc.divisor_max_n) + " s=1,2,3,4,6,8,12,16,24,32", {}};
  t.rows = rows_by_n(1, sc.divisor_max_n, [&](u64 n) {
    Rows r;
    const std::vector<u64> divs = divisors_scan(n);
    for (u64 s : threshold_grid()) {
      // Every divisor m of n whose own divisor set is a basis at threshold s.
      std::vector<u64> good;
      for (u64 m : divs) {
        if (divisor_cover_scan(n, static_cast<double>(s), divisors_scan(m))) good.push_back(m);
      }
      r.emplace_back(std::to_string(n) + "," + std::to_string(s), join(good, ' '));
    }
    return r;
  });
  return t;
}

OracleTable min_cover_table(const TableScale& sc) {
  if (sc.min_cover_max_n > kMinCoverMaxN) throw std::out_of_range("min_cover table: n cap is 40");
  OracleTable t{"min_cover", kTableVersion, "max_n=" + std::to_string(sc.min_cover_max_n) + " time_box_s=10", {}};
  t.rows = rows_by_n(2, sc.min_cover_max_n, [&](u64 n) {
    Rows r;
    for (u64 ell = 1; ell < n; ++ell) {
      const MinCoverResult res = min_cover_bruteforce(n, ell);
      const std::string value = res.exact() ? std::to_string(res.upper)
                                            : std::to_string(res.lower) + ".." + std::to_string(res.upper);
      r.emplace_back(std::to_string(n) + "," + std::to_string(ell), value);
    }
    return r;
  });
  return t;
}

}  // namespace

OracleTable generate_table(const std::string& kind, const TableScale& scale) {
  if (kind == "phi_relative") return phi_table(scale);
  if (kind == "coverage_count") return coverage_table(scale);
  if (kind == "lemma_tau") return lemma_table(scale);
  if (kind == "divisor_cover") return divisor_table(scale);
  if (kind == "min_cover") return min_cover_table(scale);
  throw std::invalid_argument("unknown table kind: " + kind);
}

std::string format_table(const OracleTable& table) {
  std::string out = "#" + table.kind + " " + table.version + " " + table.params + "\n";
  for (const auto& [key, value] : table.rows) out += key + "\t" + value + "\n";
  return out;
}

OracleTable parse_table(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.empty() || line[0] != '#') {
    throw std::invalid_argument("table: missing header line");
  }
  OracleTable t;
  std::istringstream header(line.substr(1));
  header >> t.kind >> t.version;
  std::getline(header >> std::ws, t.params);
  t.rows.clear();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw std::invalid_argument("table: row without tab: " + line);
    t.rows.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return t;
}

std::vector<std::filesystem::path> generate_tables(const std::filesystem::path& dir,
                                                   const TableScale& scale) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const auto& kind : table_kinds()) {
    const auto path = dir / (kind + ".tsv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << format_table(generate_table(kind, scale));
    written.push_back(path);
  }
  return written;
}

}  // namespace lcover::oracle
