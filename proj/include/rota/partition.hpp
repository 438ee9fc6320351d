#pragma once

#include <optional>

#include "rota/instance.hpp"

namespace rota {

struct PartitionResult {
  std::vector<IntSet> parts;             // k disjoint independent sets
  IntSet covered;                        // their union
  std::optional<IntSet> certificate;     // violating set with |S| > k rk(S)
};

struct DeadlockReport {
  int k = 0;
  IntSet deadlock;
  int rank_of_deadlock = 0;
  long long surplus = 0;                 // |D| - k rk(D)
  bool empty() const { return deadlock.empty(); }
};

/// Largest total size of a union of k disjoint independent subsets of u.
int union_rank(const ColouredInstance& inst, std::span<const int> u, int k);

/// Splits u into k independent parts when possible; otherwise also returns
/// a certificate subset with |S| > k rk(S).
PartitionResult decompose(const ColouredInstance& inst, std::span<const int> u, int k);

/// |S \ S'| >= k (rk S - rk S') for every subset S' of s.
bool is_overcrowded(const ColouredInstance& inst, std::span<const int> s, int k);

/// Unique inclusion-wise maximal k-overcrowded subset of u. The slow
/// fixpoint-peeling recomputation runs when audit is set.
DeadlockReport deadlock(const ColouredInstance& inst, std::span<const int> u, int k,
                        bool audit = false);

}  // namespace rota
