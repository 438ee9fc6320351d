#pragma once

#include "rota/partition.hpp"
#include "rota/rainbow.hpp"

namespace rota {

struct CoverConfig {
  double epsilon = 0.3;
  double lambda = -1;              // < 0: epsilon / 3
  double nu = -1;                  // < 0: lambda^2 / 4
  long long iteration_budget = 5000;
  int ell = 10;
  int r = 2;
  bool audit = false;
  std::uint64_t shuffle_seed = 0;  // nonzero: randomized scan order

  double lambda_eff() const { return lambda > 0 ? lambda : epsilon / 3.0; }
  double nu_eff() const { return nu > 0 ? nu : lambda_eff() * lambda_eff() / 4.0; }
};

struct CoverPhaseStats {
  int members = 0;
  bool member_count_warning = false;  // floor((1+lambda) n) < n+1
  bool k_substituted = false;         // floor(lambda n) == 0, solver used k=1
  int k_main = 0;
  long long initial_uncovered = 0;
  long long final_uncovered = 0;
  int descent_steps = 0;
  int balance_steps = 0;
  bool build_success = false;
  bool balance_done = false;
  bool balance_skipped = false;
  long long residual_deadlock = 0;
  int leftover_sets = 0;
  int merged_sets = 0;
  bool exact_small_fallback = false;
  int colour_hist_max = 0;
  std::vector<long long> descent_tuple_first;        // lead entry per accepted step
  std::vector<std::vector<long long>> descent_tuples;  // full tuple per accepted step
  std::vector<SwitchChain> descent_chains;           // family diff per accepted step
};

struct BuildResult {
  RainbowFamily family;
  bool success = false;
  DeadlockReport residual;
  CoverPhaseStats stats;
};

/// Family of floor((1+lambda) n) disjoint rainbow independent sets whose
/// uncovered set has empty floor(lambda n)-deadlock, found by lexicographic
/// descent over the deadlock-size tuple; best-effort within budget.
BuildResult build_no_deadlock_family(const ColouredInstance& inst, const CoverConfig& cfg);

/// Deadlock parameters tracked by the descent for a given main parameter,
/// largest first (the z, z-2, ..., z/2 ladder when it exists).
std::vector<int> deadlock_ladder(int k_main);

/// Sizes of the tracked deadlocks plus |U|, the descent's potential.
std::vector<long long> deadlock_size_tuple(const ColouredInstance& inst, const IntSet& u,
                                           const std::vector<int>& ks);

/// One first-improvement descent move: finds e in a tracked deadlock and a
/// member T with (T ∩ span(lower deadlock)) + e rainbow independent, rebuilds
/// T as (T + e) minus at most two elements off that span, re-extends, and
/// accepts only a strict lexicographic drop of the tuple.
std::optional<RainbowFamily> attempt_descent_step(const ColouredInstance& inst,
                                                  const RainbowFamily& fam,
                                                  const std::vector<int>& ks,
                                                  const CoverConfig& cfg);

struct BalanceResult {
  RainbowFamily family;
  bool balanced = false;
  bool skipped = false;
  int steps = 0;
  std::vector<int> histogram;  // |B_c ∩ U| at exit
};

/// Greedy descent on sum_c |B_c ∩ U|^2 while keeping the deadlock empty;
/// requires the build phase to have succeeded.
BalanceResult balance_colours(const ColouredInstance& inst, const RainbowFamily& fam,
                              const CoverConfig& cfg);

/// Splits u (empty k-deadlock, colour multiplicity <= k) into rainbow
/// independent sets: Edmonds parts, clash elements peeled off by maximum
/// rainbow independent sets. Exact search backstops small leftovers.
std::vector<IntSet> decompose_leftover(const ColouredInstance& inst, std::span<const int> u,
                                       int k, bool exact_mode = true);

/// Greedy completion of each rainbow independent set to a transversal basis.
std::vector<IntSet> extend_to_bases(const ColouredInstance& inst,
                                    const std::vector<IntSet>& sets);

struct CoverSolution {
  std::vector<IntSet> bases;
  bool covers = false;
  int count = 0;
  bool partial = false;
  CoverPhaseStats stats;
};

CoverSolution cover(const ColouredInstance& inst, const CoverConfig& cfg);

}  // namespace rota
