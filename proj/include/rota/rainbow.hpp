#pragma once

#include <optional>

#include "rota/instance.hpp"

namespace rota {

/// Ordered family of pairwise disjoint rainbow independent sets with a
/// covered-element index. Value type; operations return fresh families.
/// Holds a pointer to the instance, which must outlive it at a fixed
/// address.
class RainbowFamily {
 public:
  RainbowFamily(const ColouredInstance& inst, int member_count);
  static RainbowFamily from_members(const ColouredInstance& inst,
                                    std::vector<IntSet> members);

  const ColouredInstance& instance() const { return *inst_; }
  int member_count() const { return static_cast<int>(members_.size()); }
  const IntSet& member(int j) const { return members_[j]; }
  const std::vector<IntSet>& members() const { return members_; }

  int owner(int e) const { return owner_[e]; }
  bool covers(int e) const { return owner_[e] >= 0; }
  int covered_count() const { return covered_count_; }
  IntSet covered_set() const;
  IntSet uncovered() const;
  bool member_has_colour(int j, int c) const { return colour_used_[j][c] != 0; }

  /// Rainbow + independence gate for adding e to member j.
  bool can_insert(int j, int e) const;
  /// Reusable independence state seeded with member j (for batched scans).
  std::unique_ptr<IndepSketch> member_sketch(int j) const;
  void insert(int j, int e);
  void erase(int j, int e);
  void replace_member(int j, IntSet s);

  void validate() const;

 private:
  const ColouredInstance* inst_;
  std::vector<IntSet> members_;
  std::vector<int> owner_;
  std::vector<std::vector<char>> colour_used_;
  int covered_count_ = 0;

  void rebuild_cache();
};

struct AvailabilityGraph {
  int members = 0;
  int colours = 0;
  std::vector<IntSet> missing;     // per member: colours absent from it
  std::vector<int> deg_member;     // n - |T|
  std::vector<int> deg_colour;     // |T| count missing colour c
};

AvailabilityGraph availability_graph(const RainbowFamily& fam);

/// Maximum-cardinality rainbow independent subset of `subset`.
IntSet max_rainbow_independent(const ColouredInstance& inst, std::span<const int> subset);

struct BipartiteGraph {
  int nx = 0, ny = 0;
  std::vector<IntSet> adj;  // per x, sorted list of y
  std::vector<int> degx() const;
  std::vector<int> degy() const;
};

struct GoodEdgeParams {
  double alpha = 0;
  double beta = 0;
  double delta = 0;
  double mu = 0;
  double sigma = 0;
  double lambda = 0;
  double rho = 0;
};

/// Edges (x, y) with deg(y) <= beta deg(x), under the density hypotheses
/// |X| <= alpha |Y| and deg(y) >= delta |X|.
std::vector<std::pair<int, int>> good_edges(const BipartiteGraph& g,
                                            const GoodEdgeParams& p);

/// Guaranteed lower bound for the number of good edges.
long long good_edges_bound(const BipartiteGraph& g, const GoodEdgeParams& p);

/// Deletes every covered element that fits into at least ell other members.
std::pair<RainbowFamily, IntSet> ell_reduction(const RainbowFamily& fam, int ell);

struct SwitchStep {
  int member = 0;
  IntSet removed;
  IntSet added;
};

struct SwitchChain {
  std::vector<SwitchStep> steps;
  int total_churn = 0;  // sum over members of |new \ old|
};

/// Iterated ell-reductions T = lev[0], lev[1], ... (levels r deep).
std::vector<RainbowFamily> reduction_levels(const RainbowFamily& fam, int ell, int r);

/// Absorbs uncovered element e into the family by the recursive
/// redistribution bounded by 3^r moved elements. Empty result when no
/// reduction level hosts e.
std::optional<std::pair<RainbowFamily, SwitchChain>> switch_in_element(
    const RainbowFamily& fam, int e, int ell, int r);

struct ClassifyParams {
  double mu = 0.1;
  int ell = 10;
  double gamma = 0.125;        // default 1/(4 r) wired by callers
  double lambda = 0;           // cover mode threshold parameter
  double eps = 0;              // pack mode threshold parameter
  bool pack_mode = false;
  const IntSet* reservoir = nullptr;  // pack mode
};

struct ClassifyOutcome {
  bool small_member = false;
  bool rich_pair = false;
  bool lossy_reduction = false;
  int small_member_index = -1;
  int rich_member = -1, rich_colour = -1, rich_count = 0;
  long long reduction_loss = 0;
  bool none() const { return !small_member && !rich_pair && !lossy_reduction; }
};

ClassifyOutcome classify_family(const RainbowFamily& fam, const ClassifyParams& p);

/// Applies switch_in_element until no uncovered element (within `allowed`,
/// when given) is addable at any reduction level. scan_order overrides the
/// default ascending-id element scan (for shuffled experiment runs).
RainbowFamily inclusion_maximal_extend(const RainbowFamily& fam, int ell, int r,
                                       const std::vector<char>* allowed = nullptr,
                                       SwitchChain* log = nullptr,
                                       const std::vector<int>* scan_order = nullptr);

}  // namespace rota
