#pragma once

#include <optional>

#include "rota/instance.hpp"

namespace rota {

struct BruteForceBudget {
  int max_ground = 14;
  int max_n = 4;
  long long time_cap_ms = 120000;
  bool force = false;

  void check_ground(std::size_t size) const;
  void check_n(int n) const;
};

/// Union of all k-overcrowded subsets of u, each candidate checked against
/// the defining inequality over all of its subsets.
IntSet bf_deadlock(const ColouredInstance& inst, std::span<const int> u, int k,
                   const BruteForceBudget& budget = {});

/// Subset-enumeration test of the overcrowding inequality.
bool bf_is_overcrowded(const ColouredInstance& inst, std::span<const int> s, int k,
                       const BruteForceBudget& budget = {});

struct BfPackResult {
  int count = 0;
  std::vector<IntSet> bases;
};

/// Exact maximum number of pairwise disjoint transversal bases.
BfPackResult bf_max_disjoint_transversal_bases(const ColouredInstance& inst,
                                               const BruteForceBudget& budget = {});

struct BfCoverResult {
  int count = 0;
  std::vector<IntSet> bases;
};

/// Exact minimum number of transversal bases covering the ground set.
BfCoverResult bf_min_cover(const ColouredInstance& inst,
                           const BruteForceBudget& budget = {});

/// Decides whether u splits into m rainbow independent sets.
std::optional<std::vector<IntSet>> bf_rainbow_decomposition(const ColouredInstance& inst,
                                                            std::span<const int> u, int m,
                                                            const BruteForceBudget& budget = {});

}  // namespace rota
