#include "rota/oracle.hpp"

#include <chrono>
#include <map>

namespace rota {

namespace {

// Cheap cooperative deadline for the exponential searches.
class Deadline {
 public:
  explicit Deadline(long long cap_ms)
      : end_(std::chrono::steady_clock::now() + std::chrono::milliseconds(cap_ms)) {}
  void tick() {
    if (++count_ % 4096 != 0) return;
    require(std::chrono::steady_clock::now() < end_, Error::Kind::SizeCap,
            "brute force exceeded its time cap");
  }

 private:
  std::chrono::steady_clock::time_point end_;
  long long count_ = 0;
};

}  // namespace

void BruteForceBudget::check_ground(std::size_t size) const {
  if (force) return;
  require(static_cast<int>(size) <= max_ground, Error::Kind::SizeCap,
          "brute force refuses " + std::to_string(size) + " elements (cap " +
              std::to_string(max_ground) + "; use force to override)");
}

void BruteForceBudget::check_n(int n) const {
  if (force) return;
  require(n <= max_n, Error::Kind::SizeCap,
          "brute force refuses rank " + std::to_string(n) + " (cap " +
              std::to_string(max_n) + "; use force to override)");
}

namespace {

IntSet mask_to_set(std::span<const int> u, unsigned mask) {
  IntSet out;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (mask & (1u << i)) out.push_back(u[i]);
  return out;
}

// rank of every subset of u, indexed by bitmask
std::vector<int> all_subset_ranks(const ColouredInstance& inst, std::span<const int> u) {
  std::size_t n = u.size();
  std::vector<int> rk(std::size_t{1} << n, 0);
  for (unsigned mask = 1; mask < (1u << n); ++mask)
    rk[mask] = inst.matroid->rank(mask_to_set(u, mask));
  return rk;
}

bool mask_overcrowded(const std::vector<int>& rk, unsigned mask, int k) {
  // |S \ S'| >= k (rk S - rk S') for all S' subset of S
  int size = __builtin_popcount(mask);
  for (unsigned sub = mask;; sub = (sub - 1) & mask) {
    int sub_size = __builtin_popcount(sub);
    if (size - sub_size < static_cast<long long>(k) * (rk[mask] - rk[sub])) return false;
    if (sub == 0) break;
  }
  return true;
}

}  // namespace

bool bf_is_overcrowded(const ColouredInstance& inst, std::span<const int> s, int k,
                       const BruteForceBudget& budget) {
  require(k >= 1, Error::Kind::Argument, "bf_is_overcrowded: k must be positive");
  budget.check_ground(s.size());
  auto rk = all_subset_ranks(inst, s);
  return mask_overcrowded(rk, (1u << s.size()) - 1, k);
}

IntSet bf_deadlock(const ColouredInstance& inst, std::span<const int> u, int k,
                   const BruteForceBudget& budget) {
  require(k >= 1, Error::Kind::Argument, "bf_deadlock: k must be positive");
  budget.check_ground(u.size());
  require(is_sorted_set(u), Error::Kind::Argument, "bf_deadlock: input is not a set");
  auto rk = all_subset_ranks(inst, u);
  unsigned full = (u.empty() ? 0u : (1u << u.size()) - 1);
  unsigned acc = 0;
  for (unsigned mask = 1; mask <= full && full; ++mask)
    if ((mask | acc) != acc && mask_overcrowded(rk, mask, k)) acc |= mask;
  return mask_to_set(u, acc);
}

// ---------------------------------------------------------------------------
// Exact packing (disjoint transversal bases)

namespace {

struct PackSearch {
  const ColouredInstance& inst;
  int n;
  std::vector<char> used;                       // per element
  std::map<std::vector<char>, int> memo;        // used-state -> best extra count
  std::map<std::vector<char>, IntSet> choice;   // first basis of a best extension
  Deadline deadline;

  PackSearch(const ColouredInstance& i, long long cap_ms)
      : inst(i), n(i.n), used(i.ground_size(), 0), deadline(cap_ms) {}

  // Enumerates transversal bases of the unused elements; returns max count.
  int best_extra() {
    auto it = memo.find(used);
    if (it != memo.end()) return it->second;
    int best = 0;
    IntSet best_first;
    IntSet partial;
    enumerate_basis(0, partial, [&](const IntSet& basis) {
      for (int e : basis) used[e] = 1;
      int sub = 1 + best_extra();
      for (int e : basis) used[e] = 0;
      if (sub > best) {
        best = sub;
        best_first = basis;
      }
      return best >= remaining_upper_bound();
    });
    memo[used] = best;
    choice[used] = best_first;
    return best;
  }

  int remaining_upper_bound() const {
    int ub = n;
    for (int c = 0; c < n; ++c) {
      int avail = 0;
      for (int e : inst.colour_class(c))
        if (!used[e]) ++avail;
      ub = std::min(ub, avail);
    }
    return ub;
  }

  // DFS over one element per colour, independence-pruned; stop() may end
  // the enumeration early.
  template <class F>
  bool enumerate_basis(int c, IntSet& partial, F&& on_basis) {
    deadline.tick();
    if (c == n) return on_basis(partial);
    for (int e : inst.colour_class(c)) {
      if (used[e]) continue;
      IntSet next = set_add(partial, e);
      if (!inst.matroid->is_independent(next)) continue;
      partial = std::move(next);
      bool stop = enumerate_basis(c + 1, partial, on_basis);
      set_erase(partial, e);
      if (stop) return true;
    }
    return false;
  }

  std::vector<IntSet> reconstruct() {
    std::vector<IntSet> out;
    while (true) {
      auto it = choice.find(used);
      if (it == choice.end() || it->second.empty()) break;
      IntSet basis = it->second;
      out.push_back(basis);
      for (int e : basis) used[e] = 1;
    }
    for (auto& b : out)
      for (int e : b) used[e] = 0;
    return out;
  }
};

}  // namespace

BfPackResult bf_max_disjoint_transversal_bases(const ColouredInstance& inst,
                                               const BruteForceBudget& budget) {
  budget.check_n(inst.n);
  PackSearch search(inst, budget.time_cap_ms);
  BfPackResult res;
  res.count = search.best_extra();
  res.bases = search.reconstruct();
  require(static_cast<int>(res.bases.size()) == res.count, Error::Kind::Internal,
          "bf pack reconstruction mismatch");
  return res;
}

// ---------------------------------------------------------------------------
// Exact covering (iterative deepening over multisets of transversal bases)

namespace {

struct CoverSearch {
  const ColouredInstance& inst;
  int n;
  std::vector<IntSet> all_bases;  // transversal bases, lexicographic
  std::vector<IntSet> stack;
  std::vector<int> cover_count;
  Deadline deadline;

  CoverSearch(const ColouredInstance& i, long long cap_ms)
      : inst(i), n(i.n), deadline(cap_ms) {
    IntSet partial;
    collect(0, partial);
    cover_count.assign(inst.ground_size(), 0);
  }

  void collect(int c, IntSet& partial) {
    if (c == n) {
      all_bases.push_back(partial);
      return;
    }
    for (int e : inst.colour_class(c)) {
      IntSet next = set_add(partial, e);
      if (!inst.matroid->is_independent(next)) continue;
      std::swap(partial, next);
      collect(c + 1, partial);
      std::swap(partial, next);
    }
  }

  bool feasible_prune(int depth_left) const {
    // every colour class needs one basis per uncovered element
    for (int c = 0; c < n; ++c) {
      int missing = 0;
      for (int e : inst.colour_class(c))
        if (cover_count[e] == 0) ++missing;
      if (missing > depth_left) return false;
    }
    return true;
  }

  bool covered_all() const {
    for (int e = 0; e < inst.ground_size(); ++e)
      if (cover_count[e] == 0) return false;
    return true;
  }

  bool dfs(std::size_t from, int depth_left) {
    deadline.tick();
    if (covered_all()) return true;
    if (depth_left == 0) return false;
    if (!feasible_prune(depth_left)) return false;
    for (std::size_t i = from; i < all_bases.size(); ++i) {
      const IntSet& b = all_bases[i];
      bool useful = false;
      for (int e : b)
        if (cover_count[e] == 0) useful = true;
      if (!useful) continue;
      for (int e : b) ++cover_count[e];
      stack.push_back(b);
      if (dfs(i, depth_left - 1)) return true;
      stack.pop_back();
      for (int e : b) --cover_count[e];
    }
    return false;
  }
};

}  // namespace

BfCoverResult bf_min_cover(const ColouredInstance& inst, const BruteForceBudget& budget) {
  budget.check_n(inst.n);
  CoverSearch search(inst, budget.time_cap_ms);
  require(!search.all_bases.empty(), Error::Kind::Internal,
          "no transversal basis exists (augmentation would forbid this)");
  BfCoverResult res;
  for (int depth = inst.n;; ++depth) {
    search.stack.clear();
    std::fill(search.cover_count.begin(), search.cover_count.end(), 0);
    if (search.dfs(0, depth)) {
      res.count = static_cast<int>(search.stack.size());
      res.bases = search.stack;
      return res;
    }
  }
}

// ---------------------------------------------------------------------------
// Rainbow decomposition decision

namespace {

struct RainbowDecomp {
  const ColouredInstance& inst;
  std::span<const int> u;
  int m;
  std::vector<IntSet> sets;
  Deadline deadline;

  bool assign(std::size_t idx) {
    deadline.tick();
    if (idx == u.size()) return true;
    int e = u[idx];
    int first_empty = -1;
    for (int j = 0; j < m; ++j) {
      if (sets[j].empty()) {
        if (first_empty < 0) first_empty = j;
        continue;
      }
      if (colour_clash(j, e)) continue;
      IntSet next = set_add(sets[j], e);
      if (!inst.matroid->is_independent(next)) continue;
      sets[j] = std::move(next);
      if (assign(idx + 1)) return true;
      set_erase(sets[j], e);
    }
    if (first_empty >= 0) {
      sets[first_empty] = {e};
      if (assign(idx + 1)) return true;
      sets[first_empty].clear();
    }
    return false;
  }

  bool colour_clash(int j, int e) const {
    for (int x : sets[j])
      if (inst.colour_of(x) == inst.colour_of(e)) return true;
    return false;
  }
};

}  // namespace

std::optional<std::vector<IntSet>> bf_rainbow_decomposition(const ColouredInstance& inst,
                                                            std::span<const int> u, int m,
                                                            const BruteForceBudget& budget) {
  budget.check_ground(u.size());
  require(m >= 0, Error::Kind::Argument, "bf_rainbow_decomposition: negative m");
  require(is_sorted_set(u), Error::Kind::Argument, "input is not a set");
  if (u.empty()) return std::vector<IntSet>(m);
  if (m == 0) return std::nullopt;

  // Most-constrained first: order by colour multiplicity within u.
  std::vector<int> mult(inst.n, 0);
  for (int e : u) ++mult[inst.colour_of(e)];
  IntSet order(u.begin(), u.end());
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return mult[inst.colour_of(a)] > mult[inst.colour_of(b)];
  });

  RainbowDecomp rd{inst, order, m, std::vector<IntSet>(m), Deadline(budget.time_cap_ms)};
  if (!rd.assign(0)) return std::nullopt;
  return rd.sets;
}

}  // namespace rota
