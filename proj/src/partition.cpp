#include "rota/partition.hpp"

#include <deque>

namespace rota {

namespace {

/// Greedy-plus-augmentation engine for unions of k independent sets.
/// Elements live in parts or stay uncovered; insertions shift elements along
/// shortest exchange paths.
class UnionEngine {
 public:
  /// Elements of `contract` are pre-seeded into every part: the engine then
  /// works in the contraction of the matroid by that set.
  UnionEngine(const Matroid& m, std::span<const int> u, int k, IntSet contract = {})
      : m_(m),
        u_(u.begin(), u.end()),
        k_(k),
        contract_(std::move(contract)),
        part_of_(m.ground_size(), -1) {
    parts_.assign(k_, {});
  }

  void run() {
    for (int e : u_)
      if (!try_insert(e)) failed_.push_back(e);
  }

  const std::vector<IntSet>& parts() const { return parts_; }
  const IntSet& failed() const { return failed_; }

  int covered_count() const {
    int c = 0;
    for (const auto& p : parts_) c += static_cast<int>(p.size());
    return c;
  }

  /// Elements of u with no directed path (in the final exchange digraph) to
  /// an element insertable into some other part. This is the unique maximal
  /// surplus maximizer.
  IntSet no_escape_set() const {
    int nu = static_cast<int>(u_.size());
    std::vector<int> index(m_.ground_size(), -1);
    for (int i = 0; i < nu; ++i) index[u_[i]] = i;

    std::vector<std::vector<int>> radj(nu);  // reversed arcs
    std::vector<char> good(nu, 0);           // can reach a sink
    std::deque<int> queue;
    for (int i = 0; i < nu; ++i) {
      int x = u_[i];
      for (int j = 0; j < k_; ++j) {
        if (part_of_[x] == j) continue;
        auto sk = sketch_of_part(j);
        if (sk->can_add(x)) {
          if (!good[i]) {
            good[i] = 1;
            queue.push_back(i);
          }
          continue;
        }
        for (int y : fundamental_circuit(j, x))
          radj[index[y]].push_back(i);
      }
    }
    while (!queue.empty()) {
      int i = queue.front();
      queue.pop_front();
      for (int p : radj[i]) {
        if (!good[p]) {
          good[p] = 1;
          queue.push_back(p);
        }
      }
    }
    IntSet out;
    for (int i = 0; i < nu; ++i)
      if (!good[i]) out.push_back(u_[i]);
    return out;
  }

  /// BFS-visited set of a failed insertion at the current state; witnesses
  /// |X| > k rk(X) whenever e cannot be inserted.
  IntSet violating_set(int e) const {
    std::vector<char> seen(m_.ground_size(), 0);
    std::deque<int> queue{e};
    seen[e] = 1;
    IntSet out{e};
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int j = 0; j < k_; ++j) {
        if (part_of_[x] == j) continue;
        for (int y : fundamental_circuit(j, x)) {
          if (!seen[y]) {
            seen[y] = 1;
            set_insert(out, y);
            queue.push_back(y);
          }
        }
      }
    }
    return out;
  }

 private:
  std::unique_ptr<IndepSketch> sketch_of_part(int j) const {
    auto sk = m_.make_sketch();
    for (int e : contract_) sk->add(e);
    for (int e : parts_[j]) sk->add(e);
    return sk;
  }

  bool part_independent(const IntSet& p) const {
    return m_.is_independent(set_union(p, contract_));
  }

  /// Elements y of part j with (part - y + x) independent; empty when x is
  /// directly addable.
  IntSet fundamental_circuit(int j, int x) const {
    IntSet out;
    for (int y : parts_[j]) {
      IntSet cand = set_add(set_remove(parts_[j], y), x);
      if (part_independent(cand)) out.push_back(y);
    }
    return out;
  }

  bool try_insert(int e) {
    // Shortest shift chain e -> y1 -> ... -> yt -> free slot.
    std::vector<int> pred(m_.ground_size(), -2);  // -2 unvisited, -1 root
    std::deque<int> queue{e};
    pred[e] = -1;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int j = 0; j < k_; ++j) {
        if (part_of_[x] == j) continue;
        auto sk = sketch_of_part(j);
        if (sk->can_add(x)) {
          apply_chain(x, j, pred);
          return true;
        }
      }
      for (int j = 0; j < k_; ++j) {
        if (part_of_[x] == j) continue;
        for (int y : fundamental_circuit(j, x)) {
          if (pred[y] == -2) {
            pred[y] = x;
            queue.push_back(y);
          }
        }
      }
    }
    return false;
  }

  void apply_chain(int x, int j, const std::vector<int>& pred) {
    // x enters part j; its predecessor takes x's old slot, and so on.
    int cur = x;
    int target = j;
    while (cur != -1) {
      int prev = pred[cur];
      int old_part = part_of_[cur];
      if (old_part >= 0) set_erase(parts_[old_part], cur);
      set_insert(parts_[target], cur);
      part_of_[cur] = target;
      target = old_part;
      cur = prev;
    }
    for (const auto& p : parts_)
      require(part_independent(p), Error::Kind::Internal,
              "union engine produced a dependent part");
  }

  const Matroid& m_;
  IntSet u_;
  int k_;
  IntSet contract_;
  std::vector<int> part_of_;
  std::vector<IntSet> parts_;
  IntSet failed_;
};

bool overcrowded_by_unions(const ColouredInstance& inst, std::span<const int> s, int k) {
  return union_rank(inst, s, k) == k * inst.matroid->rank(s);
}

}  // namespace

int union_rank(const ColouredInstance& inst, std::span<const int> u, int k) {
  require(k >= 1, Error::Kind::Argument, "union_rank: k must be positive");
  inst.matroid->check_elements(u);
  require(is_sorted_set(u), Error::Kind::Argument, "union_rank: input is not a set");
  UnionEngine eng(*inst.matroid, u, k);
  eng.run();
  return eng.covered_count();
}

PartitionResult decompose(const ColouredInstance& inst, std::span<const int> u, int k) {
  require(k >= 1, Error::Kind::Argument, "decompose: k must be positive");
  inst.matroid->check_elements(u);
  require(is_sorted_set(u), Error::Kind::Argument, "decompose: input is not a set");
  UnionEngine eng(*inst.matroid, u, k);
  eng.run();
  PartitionResult res;
  res.parts = eng.parts();
  for (const auto& p : res.parts) res.covered = set_union(res.covered, p);
  if (!eng.failed().empty()) {
    IntSet cert = eng.violating_set(eng.failed().front());
    long long kk = k;
    require(static_cast<long long>(cert.size()) > kk * inst.matroid->rank(cert),
            Error::Kind::Internal, "decompose: certificate is not violating");
    res.certificate = std::move(cert);
  }
  return res;
}

bool is_overcrowded(const ColouredInstance& inst, std::span<const int> s, int k) {
  require(k >= 1, Error::Kind::Argument, "is_overcrowded: k must be positive");
  return overcrowded_by_unions(inst, s, k);
}

DeadlockReport deadlock(const ColouredInstance& inst, std::span<const int> u, int k,
                        bool audit) {
  require(k >= 1, Error::Kind::Argument, "deadlock: k must be positive");
  inst.matroid->check_elements(u);
  require(is_sorted_set(u), Error::Kind::Argument, "deadlock: input is not a set");
  UnionEngine eng(*inst.matroid, u, k);
  eng.run();
  IntSet d = eng.no_escape_set();

  if (audit) {
    // Independent recomputation: the deadlock is the unique maximal
    // maximizer of |S| - k rk(S). An element belongs to it exactly when the
    // best surplus over sets containing it matches the overall best, and
    // that quantity reduces to a union rank in the contraction by e.
    long long fmax =
        static_cast<long long>(u.size()) - union_rank(inst, u, k);
    IntSet slow;
    for (int e : u) {
      require(inst.matroid->rank(std::span<const int>(&e, 1)) == 1,
              Error::Kind::Internal, "deadlock audit: loop in ground set");
      IntSet rest = set_remove(u, e);
      UnionEngine contracted(*inst.matroid, rest, k, IntSet{e});
      contracted.run();
      long long through_e = 1 - k + static_cast<long long>(rest.size()) -
                            contracted.covered_count();
      if (through_e == fmax) slow.push_back(e);
    }
    require(slow == d, Error::Kind::Internal,
            "deadlock: contraction recomputation disagrees with digraph extraction");
  }

  DeadlockReport rep;
  rep.k = k;
  rep.rank_of_deadlock = inst.matroid->rank(d);
  rep.surplus = static_cast<long long>(d.size()) -
                static_cast<long long>(k) * rep.rank_of_deadlock;
  rep.deadlock = std::move(d);
  return rep;
}

}  // namespace rota
