#pragma once

// Set-cover engines specialised to families of unit-slope segments in
// Z_{n'}: an exact greedy (smallest slope wins ties) and a Monte Carlo
// sampler with a Las Vegas wrapper.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcover/bitmap.hpp"
#include "lcover/numtheory.hpp"

namespace lcover {

/// Cover `universe` (residues of Z_{modulus}) with segments of the given
/// length whose slopes are units of Z_{modulus}.
struct SubproblemInstance {
  u64 modulus = 1;
  u64 length = 1;
  Bitmap universe;
  /// When non-empty, the universe is exactly the union of the classes
  /// Z_{modulus,d} over these d (0 excluded). Lets callers skip a gcd scan.
  std::vector<u64> class_divisors;
};

/// Residues of Z_{n'} with gcd(y, n') = d for some d | n', 1 <= d <= max_gcd,
/// d < n'. Zero is left out: every segment contains it.
SubproblemInstance make_subproblem(const Factorization& f, u64 length, u64 max_gcd);

enum class GreedyEngine { kFullPool, kSampledPool, kRandomized, kSingleSegment };

struct GreedyStats {
  GreedyEngine engine = GreedyEngine::kFullPool;
  u64 pool_size = 0;          // t: candidate slopes considered
  u64 min_multiplicity = 0;   // b: min number of candidates covering an element
  u64 max_segment = 0;        // a: elements per segment
  u64 incidences = 0;         // (slope, element) pairs touched
  u64 residual_slopes = 0;    // slopes added by a full-pool pass on leftovers
  unsigned attempts = 0;      // randomized: sampling attempts made
  bool fell_back = false;     // randomized: retry cap hit, residual solved greedily
};

struct GreedySelection {
  std::vector<u64> chosen_slopes;  // pick order
  Bitmap covered;                  // universe elements covered by the picks
  std::vector<u64> marginal_gains; // per pick, in pick order
  GreedyStats stats;
};

/// The universe contains an element no candidate slope reaches.
class UncoverableError : public std::runtime_error {
 public:
  UncoverableError(u64 modulus, u64 witness)
      : std::runtime_error("universe element " + std::to_string(witness) +
                           " is not covered by any unit slope mod " + std::to_string(modulus)),
        witness_(witness) {}
  u64 witness() const { return witness_; }

 private:
  u64 witness_;
};

/// Exact greedy over the full slope pool Z*_{n'}: each step takes the
/// smallest slope of maximum marginal gain. Gains are kept exact by
/// decrementing every slope through a newly covered element, so the run costs
/// O(sum of element multiplicities) = O(n' * ell).
GreedySelection greedy_cover(const SubproblemInstance& inst);

/// The same greedy restricted to the given candidate slopes (sorted unit
/// residues). Stops early when no candidate has positive gain; the caller
/// can inspect `covered`.
GreedySelection greedy_cover_pool(const SubproblemInstance& inst, const std::vector<u64>& pool);

struct GreedyOptions {
  /// Incidence count above which the full-pool greedy may be replaced by the
  /// sampled-pool greedy. 0 disables the switch.
  u64 work_budget = u64{1} << 24;
  /// Sampled pool size is oversample * (t / b) * log(n').
  double pool_oversample = 2.0;
  u64 pool_seed = 0x5eed'c0de'0001ULL;
};

/// Exact incidence statistics of the full-pool problem, from the closed-form
/// coverage counts (no enumeration).
struct ClassIncidence {
  u64 divisor = 1;       // gcd class
  u64 size = 0;          // universe elements in the class
  u64 multiplicity = 0;  // unit slopes reaching each of them
};
struct IncidenceProfile {
  u64 units = 0;
  u64 min_multiplicity = 0;
  u64 incidences = 0;
  u64 universe_size = 0;
  std::vector<ClassIncidence> classes;
};
IncidenceProfile incidence_profile(const SubproblemInstance& inst);

/// Deterministic: full-pool greedy, or when its incidence count exceeds the
/// budget and a sampled pool is cheaper, greedy on a seeded pool of units
/// followed by a full-pool pass on anything left.
GreedySelection greedy_cover_budgeted(const SubproblemInstance& inst, const GreedyOptions& opts);

/// Monte Carlo cover: ceil(rounds_factor * log n') rounds, each drawing
/// ceil(t / b_lower) distinct units uniformly. Verified; retried with fresh
/// seeds up to `retry_cap` times, then the residual is solved by greedy_cover.
GreedySelection randomized_cover(const SubproblemInstance& inst, u64 b_lower,
                                 double rounds_factor, u64 rng_seed, unsigned retry_cap = 3);

/// SplitMix64 step; used to derive independent seeds.
u64 mix_seed(u64 x);

}  // namespace lcover
