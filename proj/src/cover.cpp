#include "lcover/cover.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <stdexcept>

#include "lcover/kernels.hpp"
#include "lcover/segments.hpp"

namespace lcover {
namespace {

struct SubResult {
  SubproblemReport report;
  std::vector<u64> lifted;
  bool skipped = true;
};

SubResult solve_subproblem(const Factorization& f, u64 ell, u64 b, u64 max_gcd,
                           const ConstructConfig& cfg) {
  SubResult out;
  const Factorization fq = quotient(f, b);
  if (fq.n < 2) return out;

  const auto start = std::chrono::steady_clock::now();
  GreedySelection sel;
  u64 universe_size = 0;
  if (ell + 1 >= fq.n) {
    // One segment of slope 1 is all of Z_{n'}.
    for (u64 d : divisors(fq)) {
      if (d <= max_gcd && d < fq.n) universe_size += euler_phi(quotient(fq, d));
    }
    sel.chosen_slopes = {1};
    sel.stats.engine = GreedyEngine::kSingleSegment;
    sel.stats.pool_size = 1;
    sel.stats.max_segment = fq.n;
  } else {
    SubproblemInstance inst = make_subproblem(fq, ell, max_gcd);
    universe_size = inst.universe.count();
    if (universe_size == 0) return out;
    if (cfg.mode == Mode::kRandomized) {
      const IncidenceProfile profile = incidence_profile(inst);
      sel = randomized_cover(inst, std::max<u64>(1, profile.min_multiplicity), cfg.rounds_factor,
                             mix_seed(cfg.seed ^ mix_seed(b)));
    } else {
      sel = greedy_cover_budgeted(inst, cfg.greedy);
    }
  }

  out.skipped = false;
  out.report.basis_element = b;
  out.report.modulus = fq.n;
  out.report.universe_size = universe_size;
  out.report.slopes = sel.chosen_slopes.size();
  out.report.stats = sel.stats;
  out.report.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out.lifted.reserve(sel.chosen_slopes.size());
  for (u64 x : sel.chosen_slopes) out.lifted.push_back(x * b % f.n);
  return out;
}

}  // namespace

std::string_view to_string(Mode mode) {
  return mode == Mode::kRandomized ? "randomized" : "deterministic";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kDeterministic:
      return "deterministic";
    case Method::kRandomized:
      return "randomized";
    case Method::kTrivial:
      return "trivial";
    case Method::kExternal:
      return "external";
  }
  return "unknown";
}

double threshold_s(u64 n, u64 ell, double c) {
  if (ell < 1) throw std::invalid_argument("threshold_s: requires ell >= 1");
  if (!(c > 0)) throw std::invalid_argument("threshold_s: c must be positive");
  const double lg = clamped_log(static_cast<double>(n));
  return std::max(1.0, static_cast<double>(ell) / (c * std::pow(lg, 5)));
}

bool use_above_threshold(u64 n, u64 ell, double c) {
  const double lglg = std::max(std::log(std::log(static_cast<double>(n))), 1.0);
  const double limit = std::pow(static_cast<double>(n), 1.0 - c / lglg);
  return static_cast<double>(ell) <= limit;
}

CoveringSet construct(u64 n, u64 ell, const ConstructConfig& cfg) {
  if (n < 2) throw std::invalid_argument("construct: requires n >= 2");
  if (n > kMaxConstructModulus) throw std::out_of_range("construct: n exceeds 2^32 - 1");
  if (ell < 1 || ell >= n) throw std::invalid_argument("construct: requires 1 <= ell < n");
  if (!(cfg.c > 0)) throw std::invalid_argument("construct: c must be positive");
  if (!(cfg.rounds_factor > 0)) throw std::invalid_argument("construct: rounds_factor must be positive");

  const auto start = std::chrono::steady_clock::now();
  CoveringSet out;
  out.n = n;
  out.ell = ell;

  if (static_cast<double>(ell) < cfg.c * std::log(static_cast<double>(n))) {
    out.method = Method::kTrivial;
    out.stats.basis_kind = BasisKind::kTrivial;
    for (u64 y = 1; y < n; ++y) out.slopes.push_back(y);
  } else if (ell + 1 >= n) {
    // One segment of slope 1 is already all of Z_n; the basis would only add
    // a slope per divisor.
    out.method = cfg.mode == Mode::kRandomized ? Method::kRandomized : Method::kDeterministic;
    out.stats.basis_kind = BasisKind::kTrivial;
    out.slopes = {1};
  } else {
    out.method = cfg.mode == Mode::kRandomized ? Method::kRandomized : Method::kDeterministic;
    const Factorization f = factorize(n);
    const double s = threshold_s(n, ell, cfg.c);
    const bool above = cfg.case_choice == CaseChoice::kAuto
                           ? use_above_threshold(n, ell, cfg.c)
                           : cfg.case_choice == CaseChoice::kAboveThreshold;
    const DivisorBasis basis = above ? basis_above_threshold(f, s) : basis_divisor_lattice(f, s);
    out.stats.basis_kind = basis.kind;
    out.stats.s = s;
    out.stats.m = basis.m;
    out.stats.basis_size = basis.basis.size();

    // Classes with gcd above ell cannot be reached by unit slopes; the basis
    // covers them through other elements.
    const u64 max_gcd = std::min<u64>(static_cast<u64>(std::floor(s)), ell);
    std::vector<SubResult> results(basis.basis.size());
    std::exception_ptr failure;
    const auto count = static_cast<std::int64_t>(basis.basis.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        const auto idx = static_cast<std::size_t>(i);
        results[idx] = solve_subproblem(f, ell, basis.basis[idx], max_gcd, cfg);
      } catch (...) {
#pragma omp critical(lcover_construct_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);

    for (auto& r : results) {
      if (r.skipped) continue;
      out.stats.subproblems.push_back(r.report);
      out.slopes.insert(out.slopes.end(), r.lifted.begin(), r.lifted.end());
    }
    std::sort(out.slopes.begin(), out.slopes.end());
    out.slopes.erase(std::unique(out.slopes.begin(), out.slopes.end()), out.slopes.end());

    // Patch pass, then the final check on the bitmap of every chosen slope.
    Bitmap reached(n);
    kernels::mark_segments(n, ell, out.slopes, reached);
    std::vector<u64> patch;
    for (u64 y = 0; y < n; ++y) {
      if (!reached.test(y)) patch.push_back(y);
    }
    out.stats.patch_count = patch.size();
    if (!patch.empty()) {
      kernels::mark_segments(n, ell, patch, reached);
      out.slopes.insert(out.slopes.end(), patch.begin(), patch.end());
      std::sort(out.slopes.begin(), out.slopes.end());
      out.slopes.erase(std::unique(out.slopes.begin(), out.slopes.end()), out.slopes.end());
    }
    if (!reached.all()) {
      throw std::logic_error("construct: result fails verification");
    }
  }
  if (out.slopes.size() == 1 || out.method == Method::kTrivial) {
    const CoverVerification check = verify_cover(n, ell, out.slopes);
    if (!check.covered) {
      throw std::logic_error("construct: result fails verification at residue " +
                             std::to_string(check.witnesses.front()));
    }
  }
  out.stats.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

CoverVerification verify_cover(u64 n, u64 ell, const std::vector<u64>& slopes) {
  if (n < 1) throw std::invalid_argument("verify_cover: requires n >= 1");
  std::vector<u64> reduced;
  reduced.reserve(slopes.size());
  for (u64 x : slopes) reduced.push_back(x % n);
  Bitmap reached(n);
  kernels::mark_segments(n, ell, reduced, reached);
  CoverVerification out;
  for (u64 y = 0; y < n; ++y) {
    if (reached.test(y)) continue;
    ++out.uncovered_count;
    if (out.witnesses.size() < kMaxWitnesses) out.witnesses.push_back(y);
  }
  out.covered = out.uncovered_count == 0;
  return out;
}

LowerBoundInstance lower_bound_instance(unsigned k) {
  if (k == 0) throw std::invalid_argument("lower_bound_instance: requires k >= 1");
  if (k > 15) throw std::overflow_error("lower_bound_instance: primorial exceeds 64 bits");
  LowerBoundInstance out;
  out.k = k;
  std::vector<PrimePower> factors;
  for (u64 p = 2; factors.size() < k; ++p) {
    if (is_prime(p)) factors.push_back({p, 1});
  }
  for (const auto& pp : factors) out.n = checked_mul(out.n, pp.prime);
  out.ell = factors.back().prime;
  const Factorization f = from_factors(factors);
  out.phi_n = euler_phi(f);
  out.degenerate = out.ell >= out.n;
  if (!out.degenerate) out.certificate = phi_relative(f, out.ell);
  return out;
}

}  // namespace lcover
