#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <random>
#include <sstream>

#include "lcover/cli.hpp"

namespace lcover::cli {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

u64 to_u64(const std::string& s, const std::string& what) {
  u64 v = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end) throw ParseError("bad integer in " + what + ": '" + s + "'");
  return v;
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("bad number in " + what + ": '" + s + "'");
  }
  if (used != s.size() || !(v > 0)) throw ParseError("bad number in " + what + ": '" + s + "'");
  return v;
}

u64 checked_power(u64 p, u64 e) {
  u64 v = 1;
  for (u64 i = 0; i < e; ++i) {
    if (v > kMaxConstructModulus / p) throw ParseError("power family overflows");
    v *= p;
  }
  return v;
}

}  // namespace

std::vector<u64> parse_slopes(const std::string& text) {
  std::vector<u64> out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    out.push_back(to_u64(token, "slope list"));
    token.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
      flush();
    } else if (ch >= '0' && ch <= '9') {
      token += ch;
    } else {
      throw ParseError(std::string("unexpected character in slope list: '") + ch + "'");
    }
  }
  flush();
  return out;
}

std::vector<GridInstance> parse_grid(const std::string& spec, u64 seed) {
  std::vector<u64> moduli;
  struct Rule {
    enum { kRatio, kLog5, kSqrt, kFixed } kind;
    double value;
  };
  std::vector<Rule> rules;
  std::mt19937_64 rng(seed);

  for (const std::string& raw : split(spec, ';')) {
    const std::string item = trim(raw);
    if (item.empty()) continue;
    const std::vector<std::string> parts = split(item, ':');
    const std::string& head = parts[0];
    if (head == "primorial" && parts.size() == 2) {
      const u64 k = to_u64(parts[1], item);
      if (k == 0) throw ParseError("primorial needs k >= 1");
      u64 n = 1;
      u64 found = 0;
      for (u64 p = 2; found < k; ++p) {
        if (!is_prime(p)) continue;
        if (n > kMaxConstructModulus / p) throw ParseError("primorial overflows: " + item);
        n *= p;
        ++found;
      }
      moduli.push_back(n);
    } else if (head == "prime" && parts.size() == 2) {
      const u64 p = to_u64(parts[1], item);
      if (!is_prime(p)) throw ParseError("not a prime: " + item);
      moduli.push_back(p);
    } else if (head == "power" && parts.size() == 2) {
      const auto caret = parts[1].find('^');
      if (caret == std::string::npos) throw ParseError("power needs p^e: " + item);
      const u64 p = to_u64(parts[1].substr(0, caret), item);
      const u64 e = to_u64(parts[1].substr(caret + 1), item);
      if (!is_prime(p) || e == 0) throw ParseError("power needs a prime base and e >= 1: " + item);
      moduli.push_back(checked_power(p, e));
    } else if (head == "random" && parts.size() == 3) {
      const u64 count = to_u64(parts[1], item);
      const u64 bits = to_u64(parts[2], item);
      if (bits < 2 || bits > 32) throw ParseError("random bits must be in [2, 32]: " + item);
      const u64 hi = u64{1} << bits;
      for (u64 i = 0; i < count; ++i) moduli.push_back(2 + rng() % (hi - 2));
    } else if (head == "ratio" && parts.size() == 2) {
      rules.push_back({Rule::kRatio, to_double(parts[1], item)});
    } else if (head == "log5" && parts.size() == 1) {
      rules.push_back({Rule::kLog5, 0});
    } else if (head == "sqrt" && parts.size() == 1) {
      rules.push_back({Rule::kSqrt, 0});
    } else if (head == "fixed" && parts.size() == 2) {
      rules.push_back({Rule::kFixed, static_cast<double>(to_u64(parts[1], item))});
    } else {
      throw ParseError("unknown grid item: " + item);
    }
  }
  if (moduli.empty()) throw ParseError("grid has no n-family");
  if (rules.empty()) throw ParseError("grid has no ell rule");

  std::vector<GridInstance> out;
  for (u64 n : moduli) {
    for (const Rule& r : rules) {
      u64 ell = 0;
      switch (r.kind) {
        case Rule::kRatio:
          ell = static_cast<u64>(std::floor(static_cast<double>(n) / r.value));
          break;
        case Rule::kLog5:
          ell = static_cast<u64>(std::ceil(std::pow(std::log(static_cast<double>(n)), 5)));
          break;
        case Rule::kSqrt:
          ell = static_cast<u64>(std::floor(std::sqrt(static_cast<double>(n))));
          while (ell * ell > n) --ell;
          while ((ell + 1) * (ell + 1) <= n) ++ell;
          break;
        case Rule::kFixed:
          ell = static_cast<u64>(r.value);
          break;
      }
      if (ell >= 1 && ell < n) out.push_back({n, ell});
    }
  }
  return out;
}

double bound_ratio(u64 n, u64 ell, u64 size) {
  return static_cast<double>(size) /
         ((static_cast<double>(n) / static_cast<double>(ell)) * clamped_log(static_cast<double>(n)));
}

BenchRecord bench_record(const CoveringSet& cover, const ConstructConfig& cfg) {
  BenchRecord r;
  r.n = cover.n;
  r.ell = cover.ell;
  r.method = std::string(to_string(cover.method));
  r.size = cover.slopes.size();
  r.bound_ratio = bound_ratio(cover.n, cover.ell, r.size);
  r.wall_time_ms = static_cast<u64>(std::floor(cover.stats.runtime_ms));
  r.basis_kind = std::string(to_string(cover.stats.basis_kind));
  r.patch_count = cover.stats.patch_count;
  if (cfg.mode == Mode::kRandomized) r.seed = std::to_string(cfg.seed);
  return r;
}

std::string to_csv_row(const BenchRecord& r) {
  char ratio[64];
  std::snprintf(ratio, sizeof ratio, "%.6f", r.bound_ratio);
  std::ostringstream os;
  os << r.n << ',' << r.ell << ',' << r.method << ',' << r.size << ',' << ratio << ',' << r.wall_time_ms << ','
     << r.basis_kind << ',' << r.patch_count << ',' << r.seed;
  return os.str();
}

std::vector<BenchRecord> run_bench(const std::vector<GridInstance>& grid, const std::vector<Mode>& modes,
                                   unsigned repeat, unsigned jobs, const ConstructConfig& base) {
  struct Task {
    GridInstance inst;
    ConstructConfig cfg;
  };
  std::vector<Task> tasks;
  for (const auto& inst : grid) {
    for (Mode mode : modes) {
      for (unsigned r = 0; r < repeat; ++r) {
        ConstructConfig cfg = base;
        cfg.mode = mode;
        cfg.seed = base.seed + r;
        tasks.push_back({inst, cfg});
      }
    }
  }
  std::vector<BenchRecord> out(tasks.size());
  std::exception_ptr failure;
  const auto count = static_cast<std::int64_t>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1u, jobs))
  for (std::int64_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      const CoveringSet cover = construct(tasks[idx].inst.n, tasks[idx].inst.ell, tasks[idx].cfg);
      out[idx] = bench_record(cover, tasks[idx].cfg);
    } catch (...) {
#pragma omp critical(lcover_bench_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace lcover::cli
