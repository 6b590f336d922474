#include <algorithm>
#include <bit>
#include <chrono>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "lcover/oracle.hpp"

namespace lcover::oracle {
namespace {

using Mask = std::uint64_t;

class Search {
 public:
  Search(std::vector<Mask> masks, std::vector<u64> slopes, Mask full, double limit_s)
      : masks_(std::move(masks)),
        slopes_(std::move(slopes)),
        full_(full),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(limit_s))) {
    const int n = std::bit_width(full_);
    by_element_.assign(static_cast<std::size_t>(n), 0);
    for (std::size_t c = 0; c < masks_.size(); ++c) {
      for (int y = 0; y < n; ++y) {
        if ((masks_[c] >> y) & 1u) by_element_[static_cast<std::size_t>(y)] |= Mask{1} << c;
      }
    }
  }

  // Counting bound and a packing bound (uncovered residues no two of which
  // share a candidate each need their own slope).
  u64 lower_bound(Mask covered) const {
    const Mask open = full_ & ~covered;
    if (open == 0) return 0;
    int best_gain = 0;
    for (Mask m : masks_) best_gain = std::max(best_gain, std::popcount(m & open));
    if (best_gain == 0) return kInfeasible;
    const u64 counting = static_cast<u64>((std::popcount(open) + best_gain - 1) / best_gain);
    u64 packing = 0;
    Mask used = 0;
    for (Mask rest = open; rest != 0; rest &= rest - 1) {
      const Mask cands = by_element_[static_cast<std::size_t>(std::countr_zero(rest))];
      if ((cands & used) == 0) {
        used |= cands;
        ++packing;
      }
    }
    return std::max(counting, packing);
  }

  void run(Mask covered, std::vector<std::size_t>& chosen, u64 initial_best,
           std::vector<std::size_t> initial_cover) {
    best_ = initial_best;
    best_cover_ = std::move(initial_cover);
    dfs(covered, chosen);
  }

  bool timed_out() const { return timed_out_; }
  u64 best() const { return best_; }
  const std::vector<std::size_t>& best_cover() const { return best_cover_; }

  static constexpr u64 kInfeasible = ~u64{0} >> 1;

 private:
  void dfs(Mask covered, std::vector<std::size_t>& chosen) {
    if (timed_out_) return;
    if ((++nodes_ & 0xfff) == 0 && std::chrono::steady_clock::now() > deadline_) {
      timed_out_ = true;
      return;
    }
    if (covered == full_) {
      if (chosen.size() < best_) {
        best_ = chosen.size();
        best_cover_ = chosen;
      }
      return;
    }
    const u64 lb = lower_bound(covered);
    if (chosen.size() + lb >= best_) return;
    auto [it, fresh] = seen_.try_emplace(covered, chosen.size());
    if (!fresh) {
      if (it->second <= chosen.size()) return;
      it->second = chosen.size();
    }

    // Branch on the open residue with the fewest candidates.
    const Mask open = full_ & ~covered;
    int pick = -1;
    int fewest = 65;
    for (Mask rest = open; rest != 0; rest &= rest - 1) {
      const int y = std::countr_zero(rest);
      const int k = std::popcount(by_element_[static_cast<std::size_t>(y)]);
      if (k < fewest) {
        fewest = k;
        pick = y;
      }
    }
    std::vector<std::size_t> order;
    for (Mask c = by_element_[static_cast<std::size_t>(pick)]; c != 0; c &= c - 1) {
      order.push_back(static_cast<std::size_t>(std::countr_zero(c)));
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::popcount(masks_[a] & open) > std::popcount(masks_[b] & open);
    });
    for (std::size_t c : order) {
      chosen.push_back(c);
      dfs(covered | masks_[c], chosen);
      chosen.pop_back();
      if (timed_out_) return;
    }
  }

  std::vector<Mask> masks_;
  std::vector<u64> slopes_;
  Mask full_;
  std::chrono::steady_clock::time_point deadline_;
  std::vector<Mask> by_element_;
  std::unordered_map<Mask, std::size_t> seen_;
  u64 best_ = kInfeasible;
  std::vector<std::size_t> best_cover_;
  u64 nodes_ = 0;
  bool timed_out_ = false;
};

}  // namespace

MinCoverResult min_cover_bruteforce(u64 n, u64 ell, double time_limit_s) {
  if (n < 2 || n > kMinCoverMaxN) throw std::out_of_range("min_cover_bruteforce: requires 2 <= n <= 40");
  if (ell < 1) throw std::invalid_argument("min_cover_bruteforce: requires ell >= 1");
  const Mask full = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;

  // One candidate per distinct segment, smallest slope kept.
  std::vector<Mask> masks;
  std::vector<u64> slopes;
  for (u64 x = 0; x < n; ++x) {
    Mask m = 0;
    for (u64 b = 0; b <= ell; ++b) m |= Mask{1} << (x * b % n);
    if (std::find(masks.begin(), masks.end(), m) == masks.end()) {
      masks.push_back(m);
      slopes.push_back(x);
    }
  }
  // Drop segments strictly contained in another.
  std::vector<Mask> kept_masks;
  std::vector<u64> kept_slopes;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < masks.size() && !dominated; ++j) {
      dominated = j != i && (masks[i] & ~masks[j]) == 0 && masks[i] != masks[j];
    }
    if (!dominated) {
      kept_masks.push_back(masks[i]);
      kept_slopes.push_back(slopes[i]);
    }
  }

  // Forced picks: residues reached by a single candidate.
  Mask covered = 0;
  std::vector<std::size_t> chosen;
  for (u64 y = 0; y < n; ++y) {
    std::size_t only = 0;
    int hits = 0;
    for (std::size_t c = 0; c < kept_masks.size(); ++c) {
      if ((kept_masks[c] >> y) & 1u) {
        only = c;
        ++hits;
      }
    }
    if (hits == 1 && std::find(chosen.begin(), chosen.end(), only) == chosen.end()) {
      chosen.push_back(only);
      covered |= kept_masks[only];
    }
  }

  // Greedy completion for the initial upper bound.
  std::vector<std::size_t> greedy = chosen;
  for (Mask g = covered; g != full;) {
    std::size_t best = 0;
    int gain = -1;
    for (std::size_t c = 0; c < kept_masks.size(); ++c) {
      const int k = std::popcount(kept_masks[c] & ~g);
      if (k > gain) {
        gain = k;
        best = c;
      }
    }
    greedy.push_back(best);
    g |= kept_masks[best];
  }

  Search search(kept_masks, kept_slopes, full, time_limit_s);
  const u64 root_lb = chosen.size() + search.lower_bound(covered);
  search.run(covered, chosen, greedy.size(), greedy);

  MinCoverResult out;
  for (std::size_t c : search.best_cover()) out.cover.push_back(kept_slopes[c]);
  std::sort(out.cover.begin(), out.cover.end());
  out.upper = out.cover.size();
  out.lower = search.timed_out() ? std::min(root_lb, out.upper) : out.upper;
  return out;
}

}  // namespace lcover::oracle
