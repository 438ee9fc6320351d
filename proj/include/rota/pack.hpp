#pragma once

#include <chrono>
#include <cmath>
#include <map>
#include <optional>

#include "rota/rainbow.hpp"

namespace rota {

struct ReservoirConfig {
  double eta = 0.3;
  double gamma = 0.05;
  std::uint64_t seed = 1;
};

struct PackConfig {
  double epsilon = 0.25;
  double sigma = -1;         // < 0: epsilon^3 / 20
  double cost_l = -1;        // < 0: 10^7 / epsilon^5, capped
  int r_max = -1;            // < 0: min(ceil((L/8) ln(n^2/s)) + 2, 3n)
  int ell = 10;
  int r = 2;
  long long improvement_budget = -1;  // < 0: member_count * n
  int seed_retries = 4;
  long long absorb_call_budget = 400;  // single-set absorb calls per cascade
  long long pair_screen_budget = 800;  // bounded |S \ T| <= 2 search
  long long budget_ms = -1;            // wall-clock cap for the whole run
  std::uint64_t shuffle_seed = 0;      // nonzero: randomized scan order
  bool exact_fallback = false;
  bool audit = false;

  double sigma_eff() const { return sigma > 0 ? sigma : epsilon * epsilon * epsilon / 20.0; }
  double cost_l_eff() const {
    if (cost_l > 0) return cost_l;
    double v = 1e7 / std::pow(epsilon, 5.0);
    return std::min(v, 1e12);
  }
};

IntSet sample_reservoir(const ColouredInstance& inst, const ReservoirConfig& rcfg);

struct PropertyCheck {
  std::string name;
  long long checked = 0;
  long long violations = 0;
  std::vector<std::string> examples;
};

struct ReservoirReport {
  PropertyCheck colour_balance;   // per-colour reservoir share
  PropertyCheck extension_out;    // additions avoiding the reservoir
  PropertyCheck extension_in;     // additions inside the reservoir
  PropertyCheck robust_span;      // rank of reservoir colour unions
};

/// Randomized diagnostics; colour balance is exact, the rest sampled.
ReservoirReport check_reservoir(const ColouredInstance& inst, std::span<const int> reservoir,
                                double eta, double gamma, double eps_prime,
                                int samples = 200, std::uint64_t seed = 7);

/// floor((1-eps) n) disjoint rainbow independent sets inside ground \ R,
/// grown to inclusion-maximality there.
RainbowFamily build_avoiding_family(const ColouredInstance& inst, double eps,
                                    std::span<const int> reservoir, int ell, int r,
                                    std::uint64_t shuffle_seed = 0);

struct SwapPair {
  int in1 = -1, out1 = -1;  // first swap (absent when in1 < 0)
  int in2 = -1, out2 = -1;  // second swap (absent when in2 < 0)
};

struct AbsorbSpec {
  bool immediate = false;
  IntSet improved;               // replacement for the member when immediate
  IntSet colours;                // colours whose off-span elements absorb
  std::map<int, SwapPair> swaps; // witness swap data per colour
  IntSet span;                   // span(T) snapshot
};

/// Constructive single-set absorbability: colours C such that every element
/// of B_c off span(T) can join a <=3-churn modification of member t.
/// An outright improvement of the member is returned instead when found.
AbsorbSpec one_absorbable_colours(const RainbowFamily& fam, int member,
                                  std::span<const int> reservoir, const PackConfig& pcfg);

struct CascadeStats {
  int chain_len = 0;
  std::vector<int> chain;
  std::vector<double> growth;     // per-step candidate growth factors
  long long absorb_calls = 0;
  bool precondition_warning = false;
  std::string stop_reason;
};

struct CascadeResult {
  bool improved = false;
  std::optional<RainbowFamily> family;
  SwitchChain chain;
  CascadeStats stats;
};

using PairMemo = std::map<std::pair<int, int>, int>;

/// One +1 improvement of the family total size via absorbable-element
/// cascades drawing on the reservoir.
CascadeResult cascade_improve(const ColouredInstance& inst, const RainbowFamily& fam,
                              std::span<const int> reservoir, const PackConfig& pcfg,
                              PairMemo* memo = nullptr, const IntSet* forbidden_seeds = nullptr);

struct PackStats {
  int target_members = 0;
  long long covered_initial = 0;
  long long covered_final = 0;
  int improvements = 0;
  int max_chain = 0;
  std::vector<double> growth_factors;
  std::vector<long long> reservoir_used;  // |E ∩ R| after each improvement
  std::vector<double> reservoir_bound;    // allowance ledger (report-only)
  std::vector<SwitchChain> improvement_chains;
  bool budget_exhausted = false;
  bool exact_fallback_used = false;
};

struct PackSolution {
  std::vector<IntSet> bases;
  int members_dropped = 0;
  PackStats stats;
};

PackSolution pack(const ColouredInstance& inst, const PackConfig& pcfg,
                  const ReservoirConfig& rcfg);

}  // namespace rota
