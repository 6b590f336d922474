#pragma once

// End-to-end construction of l-covering sets of Z_n: case selection, the
// per-basis subproblems, lifting, patching and verification.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lcover/divisor_cover.hpp"
#include "lcover/greedy_cover.hpp"
#include "lcover/numtheory.hpp"

namespace lcover {

enum class Mode { kDeterministic, kRandomized };
enum class CaseChoice { kAuto, kAboveThreshold, kDivisorLattice };
enum class Method { kDeterministic, kRandomized, kTrivial, kExternal };

std::string_view to_string(Mode mode);
std::string_view to_string(Method method);

struct ConstructConfig {
  double c = 1.0;
  CaseChoice case_choice = CaseChoice::kAuto;
  Mode mode = Mode::kDeterministic;
  u64 seed = 1;
  GreedyOptions greedy;
  double rounds_factor = 2.0;  // calibrated on the acceptance grid
};

struct SubproblemReport {
  u64 basis_element = 1;  // b
  u64 modulus = 1;        // n / b
  u64 universe_size = 0;
  u64 slopes = 0;
  GreedyStats stats;
  double runtime_ms = 0.0;
};

struct CoverStats {
  BasisKind basis_kind = BasisKind::kTrivial;
  double s = 1.0;
  u64 m = 0;
  u64 basis_size = 0;
  std::vector<SubproblemReport> subproblems;
  u64 patch_count = 0;
  double runtime_ms = 0.0;
};

struct CoveringSet {
  u64 n = 2;
  u64 ell = 1;
  std::vector<u64> slopes;  // sorted, distinct
  Method method = Method::kDeterministic;
  CoverStats stats;
};

/// Largest modulus construct() accepts.
inline constexpr u64 kMaxConstructModulus = (u64{1} << 32) - 1;

/// max(1, ell / (c * log(n)^5)) with log(x) = max(ln x, 1).
double threshold_s(u64 n, u64 ell, double c);

/// True when ell <= n^(1 - c / max(ln ln n, 1)): the above-threshold basis
/// is used, otherwise the divisor lattice of a large divisor.
bool use_above_threshold(u64 n, u64 ell, double c);

/// Builds and verifies an ell-covering of Z_n. Requires 2 <= n <=
/// kMaxConstructModulus and 1 <= ell < n (std::invalid_argument /
/// std::out_of_range otherwise). Throws std::logic_error if the final
/// verification fails.
CoveringSet construct(u64 n, u64 ell, const ConstructConfig& cfg = {});

struct CoverVerification {
  bool covered = false;
  u64 uncovered_count = 0;
  std::vector<u64> witnesses;  // smallest uncovered residues, at most kMaxWitnesses
};

inline constexpr std::size_t kMaxWitnesses = 32;

/// Checks Z_n^{<=ell} * slopes == Z_n with one bitmap pass. Slopes are
/// reduced mod n. Requires n >= 1.
CoverVerification verify_cover(u64 n, u64 ell, const std::vector<u64>& slopes);

/// Primorial instance: n = product of the first k primes, ell = k-th prime.
/// For these, phi(n, ell) = 1 and every ell-covering has at least phi(n)
/// elements.
struct LowerBoundInstance {
  unsigned k = 0;
  u64 n = 1;
  u64 ell = 0;
  u64 phi_n = 1;
  std::optional<u64> certificate;  // phi(n, ell); absent when degenerate
  bool degenerate = false;         // ell >= n (only k = 1)
};

/// Throws std::invalid_argument for k == 0 and std::overflow_error when the
/// primorial does not fit (k > 15).
LowerBoundInstance lower_bound_instance(unsigned k);

}  // namespace lcover
