#include "lcover/greedy_cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>

#include "lcover/kernels.hpp"
#include "lcover/segments.hpp"

namespace lcover {
namespace {

constexpr u64 kMaxEngineModulus = u64{1} << 32;

// a * b mod n for a, b < n < 2^32: the quotient is estimated in double
// precision and corrected.
struct FastMod {
  u64 n;
  double inv;
  explicit FastMod(u64 modulus) : n(modulus), inv(1.0 / static_cast<double>(modulus)) {}
  u64 mul(u64 a, u64 b) const {
    const u64 prod = a * b;
    const auto q = static_cast<u64>(static_cast<double>(a) * static_cast<double>(b) * inv);
    auto r = static_cast<std::int64_t>(prod - q * n);
    while (r < 0) r += static_cast<std::int64_t>(n);
    while (r >= static_cast<std::int64_t>(n)) r -= static_cast<std::int64_t>(n);
    return static_cast<u64>(r);
  }
};

void validate(const SubproblemInstance& inst) {
  if (inst.modulus == 0 || inst.modulus >= kMaxEngineModulus) {
    throw std::out_of_range("greedy: modulus must lie in [1, 2^32)");
  }
  if (inst.universe.size() != inst.modulus) {
    throw std::invalid_argument("greedy: universe bitmap must have one bit per residue");
  }
  if (inst.length < 1) throw std::invalid_argument("greedy: requires length >= 1");
  if (inst.universe.count() == 0) throw std::invalid_argument("greedy: universe is empty");
}

u64 effective_length(const SubproblemInstance& inst) {
  return std::min(inst.length, inst.modulus - 1);
}

u64 first_uncovered(const Bitmap& universe, const Bitmap& covered) {
  u64 found = universe.size();
  universe.for_each_set([&](std::size_t y) {
    if (found == universe.size() && !covered.test(y)) found = y;
  });
  return found;
}

// Z_1 = {0}, and 0 is its only unit.
GreedySelection trivial_modulus_one(GreedyEngine engine) {
  GreedySelection sel;
  sel.covered = Bitmap(1);
  sel.covered.set(0);
  sel.chosen_slopes = {0};
  sel.marginal_gains = {1};
  sel.stats.engine = engine;
  sel.stats.pool_size = 1;
  sel.stats.min_multiplicity = 1;
  sel.stats.max_segment = 1;
  sel.stats.incidences = 1;
  return sel;
}

// Element counts of the universe per gcd class.
std::map<u64, u64> class_sizes(const SubproblemInstance& inst, const Factorization& f) {
  std::map<u64, u64> out;
  if (!inst.class_divisors.empty()) {
    for (u64 d : inst.class_divisors) out[d] = euler_phi(quotient(f, d));
    return out;
  }
  inst.universe.for_each_set([&](std::size_t y) { ++out[std::gcd<u64>(y, inst.modulus)]; });
  return out;
}

// Exact gains of the candidates (indexed by residue) with counts per gain
// level. The scan for the top level walks `order` (ascending candidates) and
// only restarts when the level drops, since gains never increase.
class LevelQueue {
 public:
  LevelQueue(std::vector<std::uint32_t> gains, const std::vector<u64>& order)
      : gains_(std::move(gains)), order_(order) {
    std::uint32_t top = 0;
    for (u64 x : order_) top = std::max(top, gains_[x]);
    at_level_.assign(top + 1, 0);
    for (u64 x : order_) ++at_level_[gains_[x]];
    level_ = top;
  }

  void decrement(u64 x) {
    --at_level_[gains_[x]];
    --gains_[x];
    ++at_level_[gains_[x]];
  }

  /// Smallest candidate with maximal gain, or nullopt when every gain is 0.
  std::optional<u64> pop_best() {
    while (level_ > 0 && at_level_[level_] == 0) {
      --level_;
      cursor_ = 0;
    }
    if (level_ == 0) return std::nullopt;
    while (gains_[order_[cursor_]] != level_) ++cursor_;
    return order_[cursor_];
  }

  std::uint32_t level() const { return level_; }

 private:
  std::vector<std::uint32_t> gains_;
  const std::vector<u64>& order_;
  std::vector<u64> at_level_;
  std::uint32_t level_ = 0;
  std::size_t cursor_ = 0;
};

// Element -> candidate index for the sampled pool: n + 1 offsets and one
// 32-bit entry per incidence, kept under 1 GiB. Worth building only when it
// beats testing every candidate for each element; a scattered index write is
// costed at 8.
bool use_pool_index(u64 n, u64 ell, double pool_size, double entries, double elements) {
  const double fits = 8.0 * static_cast<double>(n + 1) + 4.0 * entries;
  const double build = 2.0 * pool_size * static_cast<double>(ell + 1) + 8.0 * entries;
  return fits <= static_cast<double>(u64{1} << 30) && build < elements * pool_size;
}

// Sample `count` distinct units of Z_n uniformly (count <= phi(n)).
std::vector<u64> sample_units(u64 n, u64 count, u64 phi, const Bitmap& is_unit,
                              std::mt19937_64& rng) {
  std::vector<u64> out;
  out.reserve(count);
  if (count * 4 <= phi) {
    Bitmap taken(n);
    while (out.size() < count) {
      const u64 x = rng() % n;
      if (is_unit.test(x) && !taken.test(x)) {
        taken.set(x);
        out.push_back(x);
      }
    }
    return out;
  }
  std::vector<u64> units = is_unit.to_vector();
  for (u64 i = 0; i < count; ++i) {
    const u64 j = i + rng() % (units.size() - i);
    std::swap(units[i], units[j]);
    out.push_back(units[i]);
  }
  return out;
}

// Enumerates the unit slopes x of Z_n whose segment of length ell contains a
// given residue y. For y != 0 with g = gcd(y, n): x*a = y forces a = g*a'
// with gcd(a', n/g) = 1 and x = (y/g) * a'^-1 (mod n/g); each such residue
// lifts to g candidates mod n, of which the units are kept. y = 0 lies on
// every segment.
class SlopesThrough {
 public:
  SlopesThrough(u64 n, u64 ell) : n_(n), ell_(ell), mod_(n) {
    is_unit_ = kernels::gcd_threshold_mask(n, 1, divisors(factorize(n)));
    units_ = is_unit_.to_vector();
  }

  const std::vector<u64>& units() const { return units_; }

  /// Steps for_each takes on a residue with gcd g (g = n for y = 0).
  u64 cost(u64 g) { return g == n_ ? units_.size() : table(g).size() * g; }

  template <typename F>
  void for_each(u64 y, u64 g, F&& fn) {
    if (y == 0) {
      for (u64 x : units_) fn(x);
      return;
    }
    const u64 m = n_ / g;
    const u64 y_red = y / g;
    if (g == 1) {
      for (u64 inv : table(1)) fn(mod_.mul(y_red, inv));
      return;
    }
    for (u64 inv : table(g)) {
      for (u64 x = y_red * inv % m; x < n_; x += m) {
        if (is_unit_.test(x)) fn(x);
      }
    }
  }

 private:
  // Inverses of a' mod n/g for the a' <= ell/g coprime to n/g.
  const std::vector<u64>& table(u64 g) {
    auto it = tables_.find(g);
    if (it != tables_.end()) return it->second;
    const u64 m = n_ / g;
    std::vector<u64> inv;
    for (u64 a = 1; a <= ell_ / g; ++a) {
      if (std::gcd(a, m) == 1) inv.push_back(inverse_mod(a, m));
    }
    return tables_.emplace(g, std::move(inv)).first->second;
  }

  u64 n_;
  u64 ell_;
  FastMod mod_;
  Bitmap is_unit_;
  std::vector<u64> units_;
  std::unordered_map<u64, std::vector<u64>> tables_;
};

// Marks the segment of slope x: newly covered universe residues are removed
// from `live`, added to `covered` and passed to on_cover.
template <typename F>
void take_segment(u64 n, u64 ell, u64 x, Bitmap& live, Bitmap& covered, u64& remaining, F&& on_cover) {
  u64 y = 0;
  for (u64 a = 0; a <= ell; ++a) {
    if (live.test(y)) {
      live.reset(y);
      covered.set(y);
      --remaining;
      on_cover(y);
    }
    y += x;
    if (y >= n) y -= n;
  }
}

}  // namespace

u64 mix_seed(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SubproblemInstance make_subproblem(const Factorization& f, u64 length, u64 max_gcd) {
  SubproblemInstance inst;
  inst.modulus = f.n;
  inst.length = length;
  const auto divs = divisors(f);
  inst.universe = kernels::gcd_threshold_mask(f.n, max_gcd, divs);
  if (f.n > 1) inst.universe.reset(0);
  for (u64 d : divs) {
    if (d <= max_gcd && d < f.n) inst.class_divisors.push_back(d);
  }
  return inst;
}

IncidenceProfile incidence_profile(const SubproblemInstance& inst) {
  IncidenceProfile out;
  if (inst.modulus == 1) {
    out.units = 1;
    out.universe_size = inst.universe.count();
    out.min_multiplicity = out.universe_size ? 1 : 0;
    out.incidences = out.universe_size;
    if (out.universe_size) out.classes.push_back({1, out.universe_size, 1});
    return out;
  }
  const Factorization f = factorize(inst.modulus);
  const u64 ell = effective_length(inst);
  out.units = euler_phi(f);
  out.min_multiplicity = std::numeric_limits<u64>::max();
  for (const auto& [d, size] : class_sizes(inst, f)) {
    const u64 mult = coverage_count(f, ell, d % inst.modulus);
    out.universe_size += size;
    out.incidences += size * mult;
    out.min_multiplicity = std::min(out.min_multiplicity, mult);
    out.classes.push_back({d, size, mult});
  }
  if (out.universe_size == 0) out.min_multiplicity = 0;
  return out;
}

GreedySelection greedy_cover(const SubproblemInstance& inst) {
  validate(inst);
  if (inst.modulus == 1) return trivial_modulus_one(GreedyEngine::kFullPool);
  const u64 n = inst.modulus;
  const u64 ell = effective_length(inst);
  SlopesThrough through(n, ell);

  GreedySelection sel;
  sel.covered = Bitmap(n);
  sel.stats.engine = GreedyEngine::kFullPool;
  sel.stats.pool_size = through.units().size();
  sel.stats.max_segment = ell + 1;

  std::vector<std::uint32_t> gain(n, 0);
  u64 remaining = 0;
  if (!inst.class_divisors.empty()) {
    // A unit slope keeps gcd(a, n) for every a, so all units start with the
    // same gain and the multiplicities come from the class formula.
    const IncidenceProfile profile = incidence_profile(inst);
    remaining = profile.universe_size;
    sel.stats.incidences = profile.incidences;
    sel.stats.min_multiplicity = profile.min_multiplicity;
    std::vector<u64> classes = inst.class_divisors;
    std::sort(classes.begin(), classes.end());
    std::uint32_t start = 0;
    for (u64 a = 1; a <= ell; ++a) {
      if (std::binary_search(classes.begin(), classes.end(), std::gcd(a, n))) ++start;
    }
    for (u64 x : through.units()) gain[x] = start;
  } else {
    u64 min_mult = std::numeric_limits<u64>::max();
    inst.universe.for_each_set([&](std::size_t y) {
      ++remaining;
      u64 mult = 0;
      through.for_each(y, std::gcd<u64>(y, n), [&](u64 x) {
        ++gain[x];
        ++mult;
      });
      min_mult = std::min(min_mult, mult);
      sel.stats.incidences += mult;
    });
    sel.stats.min_multiplicity = min_mult;
  }

  LevelQueue queue(std::move(gain), through.units());
  Bitmap live = inst.universe;
  while (remaining > 0) {
    const auto best = queue.pop_best();
    if (!best) throw UncoverableError(n, first_uncovered(inst.universe, sel.covered));
    sel.chosen_slopes.push_back(*best);
    sel.marginal_gains.push_back(queue.level());
    take_segment(n, ell, *best, live, sel.covered, remaining, [&](u64 y) {
      through.for_each(y, std::gcd<u64>(y, n), [&](u64 z) { queue.decrement(z); });
    });
  }
  return sel;
}

GreedySelection greedy_cover_pool(const SubproblemInstance& inst, const std::vector<u64>& pool) {
  validate(inst);
  if (inst.modulus == 1) return trivial_modulus_one(GreedyEngine::kSampledPool);
  const u64 n = inst.modulus;
  const u64 ell = effective_length(inst);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (pool[i] >= n || std::gcd(pool[i], n) != 1 || (i > 0 && pool[i - 1] >= pool[i])) {
      throw std::invalid_argument("greedy_cover_pool: pool must be increasing units");
    }
  }

  GreedySelection sel;
  sel.covered = Bitmap(n);
  sel.stats.engine = GreedyEngine::kSampledPool;
  sel.stats.pool_size = pool.size();
  sel.stats.max_segment = ell + 1;

  Bitmap live = inst.universe;
  u64 remaining = live.count();
  std::vector<std::uint32_t> gains = kernels::segment_gains(n, ell, pool, live);
  sel.stats.incidences += pool.size() * (ell + 1);
  u64 entries = 0;
  for (std::uint32_t g : gains) entries += g;

  std::vector<u64> order(pool.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;

  if (use_pool_index(n, ell, static_cast<double>(pool.size()), static_cast<double>(entries),
                     static_cast<double>(remaining))) {
    // Inverted index: element -> pool candidates whose segment holds it.
    std::vector<u64> start(n + 1, 0);
    const auto walk = [&](auto&& visit) {
      for (std::size_t j = 0; j < pool.size(); ++j) {
        u64 y = 0;
        for (u64 a = 0; a <= ell; ++a) {
          if (live.test(y)) visit(y, j);
          y += pool[j];
          if (y >= n) y -= n;
        }
      }
    };
    walk([&](u64 y, std::size_t) { ++start[y + 1]; });
    for (u64 y = 0; y < n; ++y) start[y + 1] += start[y];
    std::vector<std::uint32_t> index(entries);
    walk([&](u64 y, std::size_t j) { index[start[y]++] = static_cast<std::uint32_t>(j); });
    for (u64 y = n; y > 0; --y) start[y] = start[y - 1];
    start[0] = 0;
    sel.stats.incidences += 2 * pool.size() * (ell + 1);

    LevelQueue queue(std::move(gains), order);
    const auto on_cover = [&](u64 y) {
      for (u64 k = start[y]; k < start[y + 1]; ++k) queue.decrement(index[k]);
      sel.stats.incidences += start[y + 1] - start[y];
    };
    while (remaining > 0) {
      const auto best = queue.pop_best();
      if (!best) break;
      sel.chosen_slopes.push_back(pool[*best]);
      sel.marginal_gains.push_back(queue.level());
      take_segment(n, ell, pool[*best], live, sel.covered, remaining, on_cover);
    }
    return sel;
  }

  std::vector<u64> inverse(pool.size());
  for (std::size_t j = 0; j < pool.size(); ++j) inverse[j] = inverse_mod(pool[j], n);
  const FastMod mod(n);
  Bitmap in_pool(n);
  for (u64 x : pool) in_pool.set(x);
  SlopesThrough through(n, ell);
  LevelQueue queue(std::move(gains), order);

  // Gains stay exact: for a newly covered y, either test every candidate
  // (candidate j reaches y iff pool[j]^-1 * y <= ell) or enumerate the unit
  // slopes through y and keep those in the pool, whichever is shorter.
  auto on_cover = [&](u64 y) {
    const u64 g = y == 0 ? n : std::gcd(y, n);
    // Bound the walk by ell / g before asking for its table, which costs
    // ell / g inverses to build.
    if (g != n && (ell / g) * g >= pool.size()) {
      for (std::size_t j = 0; j < pool.size(); ++j) {
        if (mod.mul(inverse[j], y) <= ell) queue.decrement(j);
      }
      sel.stats.incidences += pool.size();
      return;
    }
    const u64 walk = through.cost(g);
    if (walk < pool.size()) {
      through.for_each(y, g, [&](u64 x) {
        if (!in_pool.test(x)) return;
        const auto j = static_cast<u64>(std::lower_bound(pool.begin(), pool.end(), x) - pool.begin());
        queue.decrement(j);
      });
      sel.stats.incidences += walk;
      return;
    }
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if (mod.mul(inverse[j], y) <= ell) queue.decrement(j);
    }
    sel.stats.incidences += pool.size();
  };

  while (remaining > 0) {
    const auto best = queue.pop_best();
    if (!best) break;
    sel.chosen_slopes.push_back(pool[*best]);
    sel.marginal_gains.push_back(queue.level());
    take_segment(n, ell, pool[*best], live, sel.covered, remaining, on_cover);
  }
  return sel;
}

GreedySelection greedy_cover_budgeted(const SubproblemInstance& inst, const GreedyOptions& opts) {
  validate(inst);
  const IncidenceProfile profile = incidence_profile(inst);
  if (inst.modulus == 1 || opts.work_budget == 0 || profile.incidences <= opts.work_budget ||
      profile.min_multiplicity == 0) {
    return greedy_cover(inst);
  }
  const u64 n = inst.modulus;
  const u64 ell = effective_length(inst);
  const double wanted = opts.pool_oversample *
                        (static_cast<double>(profile.units) / static_cast<double>(profile.min_multiplicity)) *
                        clamped_log(static_cast<double>(n));
  const u64 pool_size = std::min<u64>(profile.units, static_cast<u64>(std::ceil(wanted)));
  // Full pool: every incidence is a scattered gain update, costed at 4.
  // Sampled pool: walks over the pool segments plus the gain updates, either
  // through the inverted index (each incidence survives with the pool share)
  // or, per element, the cheaper of enumeration and a pool scan.
  const double walks = static_cast<double>(pool_size) * static_cast<double>(ell + 1);
  const double entries = static_cast<double>(profile.incidences) * static_cast<double>(pool_size) /
                         static_cast<double>(profile.units);
  double pool_cost = walks;
  if (use_pool_index(n, ell, static_cast<double>(pool_size), entries,
                     static_cast<double>(profile.universe_size))) {
    pool_cost += 2 * walks + 8 * entries;
  } else {
    for (const auto& c : profile.classes) {
      pool_cost += static_cast<double>(c.size) * static_cast<double>(std::min(pool_size, c.multiplicity));
    }
  }
  if (pool_size >= profile.units || pool_cost >= 4.0 * static_cast<double>(profile.incidences)) {
    return greedy_cover(inst);
  }

  const Bitmap is_unit = kernels::gcd_threshold_mask(n, 1, divisors(factorize(n)));
  std::mt19937_64 rng(mix_seed(opts.pool_seed ^ mix_seed(n) ^ mix_seed(ell)));
  std::vector<u64> pool = sample_units(n, pool_size, profile.units, is_unit, rng);
  std::sort(pool.begin(), pool.end());

  GreedySelection sel = greedy_cover_pool(inst, pool);
  if (sel.covered.count() < profile.universe_size) {
    SubproblemInstance residual{n, inst.length, inst.universe, {}};
    residual.universe.subtract(sel.covered);
    GreedySelection rest = greedy_cover(residual);
    sel.stats.residual_slopes = rest.chosen_slopes.size();
    sel.stats.incidences += rest.stats.incidences;
    for (std::size_t i = 0; i < rest.chosen_slopes.size(); ++i) {
      sel.chosen_slopes.push_back(rest.chosen_slopes[i]);
      sel.marginal_gains.push_back(rest.marginal_gains[i]);
    }
    sel.covered |= rest.covered;
  }
  return sel;
}

GreedySelection randomized_cover(const SubproblemInstance& inst, u64 b_lower, double rounds_factor,
                                 u64 rng_seed, unsigned retry_cap) {
  validate(inst);
  if (b_lower < 1) throw std::invalid_argument("randomized_cover: b_lower must be >= 1");
  if (!(rounds_factor > 0)) throw std::invalid_argument("randomized_cover: rounds_factor must be positive");
  if (inst.modulus == 1) return trivial_modulus_one(GreedyEngine::kRandomized);
  const u64 n = inst.modulus;
  const u64 ell = effective_length(inst);
  const Factorization f = factorize(n);
  const u64 t = euler_phi(f);
  const Bitmap is_unit = kernels::gcd_threshold_mask(n, 1, divisors(f));
  const u64 per_round = std::min<u64>(t, (t + b_lower - 1) / b_lower);
  const auto rounds = static_cast<u64>(std::ceil(rounds_factor * clamped_log(static_cast<double>(n))));

  GreedySelection sel;
  sel.stats.engine = GreedyEngine::kRandomized;
  sel.stats.pool_size = t;
  sel.stats.min_multiplicity = b_lower;
  sel.stats.max_segment = ell + 1;

  std::vector<u64> chosen;
  Bitmap reached(n);
  for (unsigned attempt = 0; attempt <= retry_cap; ++attempt) {
    sel.stats.attempts = attempt + 1;
    std::mt19937_64 rng(mix_seed(rng_seed + attempt));
    Bitmap picked(n);
    chosen.clear();
    for (u64 r = 0; r < rounds; ++r) {
      for (u64 x : sample_units(n, per_round, t, is_unit, rng)) {
        if (!picked.test(x)) {
          picked.set(x);
          chosen.push_back(x);
        }
      }
    }
    reached = Bitmap(n);
    kernels::mark_segments(n, ell, chosen, reached);
    sel.stats.incidences += chosen.size() * (ell + 1);
    Bitmap missing = inst.universe;
    missing.subtract(reached);
    if (missing.count() == 0) break;
    if (attempt == retry_cap) {
      sel.stats.fell_back = true;
      SubproblemInstance residual{n, inst.length, std::move(missing), {}};
      GreedySelection rest = greedy_cover(residual);
      sel.stats.residual_slopes = rest.chosen_slopes.size();
      for (u64 x : rest.chosen_slopes) {
        if (!picked.test(x)) chosen.push_back(x);
      }
      reached |= rest.covered;
    }
  }
  sel.chosen_slopes = std::move(chosen);
  sel.covered = inst.universe;
  Bitmap outside = inst.universe;
  outside.subtract(reached);
  sel.covered.subtract(outside);
  return sel;
}

}  // namespace lcover
