#include "rota/cover.hpp"

#include <cmath>

#include "rota/exchange.hpp"
#include "rota/oracle.hpp"

namespace rota {

namespace {

int floor_pos(double v) { return static_cast<int>(std::floor(v + 1e-9)); }

// Deadlock parameters tracked by the descent, largest first. The genuine
// ladder z, z-2, ..., z/2 needs z >= 8; below that it collapses to the pair
// (k, k-2), then (2, 1), then the bare k=1 where no descent move exists.
std::vector<int> ladder_params(int k_main) {
  std::vector<int> ks;
  int z = 4 * (k_main / 4);
  if (z >= 8) {
    for (int k = z; k >= z / 2; k -= 2) ks.push_back(k);
  } else if (k_main >= 3) {
    ks = {k_main, k_main - 2};
  } else if (k_main == 2) {
    ks = {2, 1};
  } else {
    ks = {1};
  }
  return ks;
}

std::vector<long long> deadlock_tuple(const ColouredInstance& inst, const IntSet& u,
                                      const std::vector<int>& ks) {
  std::vector<long long> t;
  for (int k : ks) t.push_back(static_cast<long long>(deadlock(inst, u, k).deadlock.size()));
  t.push_back(static_cast<long long>(u.size()));
  return t;
}

IntSet max_independent_subset(const Matroid& m, const IntSet& s) {
  auto sk = m.make_sketch();
  IntSet out;
  for (int e : s)
    if (sk->can_add(e)) {
      sk->add(e);
      out.push_back(e);
    }
  return out;
}

std::vector<int> colour_histogram(const ColouredInstance& inst, const IntSet& u) {
  std::vector<int> h(inst.n, 0);
  for (int e : u) ++h[inst.colour_of(e)];
  return h;
}

}  // namespace

std::vector<int> deadlock_ladder(int k_main) { return ladder_params(k_main); }

std::vector<long long> deadlock_size_tuple(const ColouredInstance& inst, const IntSet& u,
                                           const std::vector<int>& ks) {
  return deadlock_tuple(inst, u, ks);
}

std::optional<RainbowFamily> attempt_descent_step(const ColouredInstance& inst,
                                                  const RainbowFamily& fam,
                                                  const std::vector<int>& ks,
                                                  const CoverConfig& cfg) {
  std::vector<int> order(inst.ground_size());
  for (int e = 0; e < inst.ground_size(); ++e) order[e] = e;
  if (cfg.shuffle_seed != 0) {
    Rng rng(cfg.shuffle_seed);
    rng.shuffle(order);
  }
  IntSet u = fam.uncovered();
  std::vector<long long> tuple = deadlock_tuple(inst, u, ks);

  for (std::size_t pi = 0; pi + 1 < ks.size(); ++pi) {
    int j = ks[pi], j2 = ks[pi + 1];
    DeadlockReport dj = deadlock(inst, u, j);
    if (dj.empty()) continue;
    IntSet span_low = inst.matroid->closure(deadlock(inst, u, j2).deadlock);
    IntSet w = max_independent_subset(*inst.matroid, dj.deadlock);
    for (int e : w) {
      for (int t = 0; t < fam.member_count(); ++t) {
        IntSet core = set_intersect(fam.member(t), span_low);
        IntSet seed = set_add(core, e);
        if (!inst.matroid->is_independent(seed)) continue;
        bool rainbow = true;
        for (int x : core)
          if (inst.colour_of(x) == inst.colour_of(e)) rainbow = false;
        if (!rainbow) continue;

        // (T + e) minus at most two elements, none inside the lower span.
        IntSet grown = rainbow_augment(inst, seed, fam.member(t));
        RainbowFamily cand = fam;
        cand.replace_member(t, grown);
        cand = inclusion_maximal_extend(cand, cfg.ell, cfg.r, nullptr, nullptr, &order);
        std::vector<long long> cand_tuple = deadlock_tuple(inst, cand.uncovered(), ks);
        if (cand_tuple < tuple) return cand;
      }
    }
  }
  return std::nullopt;
}

BuildResult build_no_deadlock_family(const ColouredInstance& inst, const CoverConfig& cfg) {
  int n = inst.n;
  double lambda = cfg.lambda_eff();
  require(lambda > 0 && lambda < 1, Error::Kind::Argument, "lambda must be in (0,1)");
  int m = std::max(1, floor_pos((1.0 + lambda) * n));

  CoverPhaseStats stats;
  stats.members = m;
  stats.member_count_warning = m < n + 1;
  int k_floor = floor_pos(lambda * n);
  stats.k_substituted = k_floor < 1;
  int k_main = std::max(1, k_floor);
  stats.k_main = k_main;

  std::vector<int> order(inst.ground_size());
  for (int e = 0; e < inst.ground_size(); ++e) order[e] = e;
  if (cfg.shuffle_seed != 0) {
    Rng rng(cfg.shuffle_seed);
    rng.shuffle(order);
  }

  RainbowFamily fam =
      inclusion_maximal_extend(RainbowFamily(inst, m), cfg.ell, cfg.r, nullptr, nullptr,
                               &order);
  stats.initial_uncovered = static_cast<long long>(fam.uncovered().size());

  std::vector<int> ks = ladder_params(k_main);
  long long budget = cfg.iteration_budget;
  bool success = false;
  DeadlockReport residual;

  for (;;) {
    IntSet u = fam.uncovered();
    residual = deadlock(inst, u, k_main, cfg.audit);
    if (residual.empty()) {
      success = true;
      break;
    }
    if (budget-- <= 0) break;

    std::optional<RainbowFamily> next = attempt_descent_step(inst, fam, ks, cfg);
    if (!next) break;
    std::vector<long long> cand_tuple = deadlock_tuple(inst, next->uncovered(), ks);
    ++stats.descent_steps;
    stats.descent_tuple_first.push_back(cand_tuple.front());
    stats.descent_tuples.push_back(cand_tuple);
    SwitchChain chain;
    for (int jj = 0; jj < fam.member_count(); ++jj) {
      IntSet rem = set_minus(fam.member(jj), next->member(jj));
      IntSet add = set_minus(next->member(jj), fam.member(jj));
      chain.total_churn += static_cast<int>(add.size());
      if (!rem.empty() || !add.empty())
        chain.steps.push_back({jj, std::move(rem), std::move(add)});
    }
    stats.descent_chains.push_back(std::move(chain));
    fam = std::move(*next);
  }

  stats.build_success = success;
  stats.final_uncovered = static_cast<long long>(fam.uncovered().size());
  stats.residual_deadlock = static_cast<long long>(residual.deadlock.size());
  return BuildResult{std::move(fam), success, std::move(residual), std::move(stats)};
}

BalanceResult balance_colours(const ColouredInstance& inst, const RainbowFamily& fam,
                              const CoverConfig& cfg) {
  int n = inst.n;
  double lambda = cfg.lambda_eff();
  int k_main = std::max(1, floor_pos(lambda * n));

  BalanceResult res{fam, false, false, 0, {}};
  IntSet u0 = res.family.uncovered();
  require(deadlock(inst, u0, k_main).empty(), Error::Kind::Contract,
          "balance_colours requires an empty deadlock");

  if (k_main < 2) {
    // No smaller deadlock parameter to protect swaps with; nothing to do.
    res.skipped = true;
    res.histogram = colour_histogram(inst, u0);
    res.balanced = *std::max_element(res.histogram.begin(), res.histogram.end()) <=
                   lambda * n + 1e-9;
    return res;
  }

  long long budget = cfg.iteration_budget;
  for (;;) {
    IntSet u = res.family.uncovered();
    std::vector<int> hist = colour_histogram(inst, u);
    int worst = -1;
    for (int c = 0; c < n; ++c)
      if (hist[c] > lambda * n + 1e-9 && (worst < 0 || hist[c] > hist[worst])) worst = c;
    if (worst < 0) {
      res.balanced = true;
      res.histogram = std::move(hist);
      return res;
    }
    if (budget-- <= 0) break;

    IntSet over = set_intersect(inst.colour_class(worst), u);
    IntSet span_low =
        inst.matroid->closure(deadlock(inst, u, k_main - 1).deadlock);

    bool stepped = false;
    for (int t = 0; t < res.family.member_count() && !stepped; ++t) {
      if (res.family.member_has_colour(t, worst)) continue;
      auto inj = inject_between(inst, over, res.family.member(t));
      if (inj.case_a()) {
        // Element absorbed outright; uncovered set shrinks, deadlock stays
        // empty on a subset.
        res.family.insert(t, *inj.added);
        ++res.steps;
        stepped = true;
        break;
      }
      for (auto [x, y] : inj.injection) {
        if (set_contains(span_low, y)) continue;
        if (hist[inst.colour_of(y)] >= lambda * n / 2.0 - 1e-9) continue;
        // potential drop needs |B_c' ∩ U| - 1 > |B_c(y) ∩ U|
        if (hist[worst] - 1 <= hist[inst.colour_of(y)]) continue;
        IntSet next = set_add(set_remove(res.family.member(t), y), x);
        RainbowFamily cand = res.family;
        cand.replace_member(t, next);
        if (cfg.audit) {
          require(deadlock(inst, cand.uncovered(), k_main).empty(), Error::Kind::Internal,
                  "balance step re-created a deadlock");
        }
        res.family = std::move(cand);
        ++res.steps;
        stepped = true;
        break;
      }
    }
    if (!stepped) break;  // partial: histogram attached below
  }
  res.histogram = colour_histogram(inst, res.family.uncovered());
  res.balanced = false;
  return res;
}

std::vector<IntSet> decompose_leftover(const ColouredInstance& inst, std::span<const int> u,
                                       int k, bool exact_mode) {
  require(k >= 1, Error::Kind::Argument, "decompose_leftover: k must be positive");
  IntSet uset(u.begin(), u.end());
  if (uset.empty()) return {};
  std::vector<int> hist = colour_histogram(inst, uset);
  require(*std::max_element(hist.begin(), hist.end()) <= k, Error::Kind::Contract,
          "decompose_leftover requires colour multiplicity at most k");

  // An empty k-deadlock guarantees this split; the weaker decomposability
  // gate is the one the construction genuinely needs.
  PartitionResult pr = decompose(inst, uset, k);
  require(!pr.certificate.has_value(), Error::Kind::Contract,
          "decompose_leftover requires a k-decomposable input");

  std::vector<IntSet> sets;
  IntSet pool;
  for (const IntSet& part : pr.parts) {
    IntSet kept;
    std::vector<char> used(inst.n, 0);
    for (int e : part) {
      int c = inst.colour_of(e);
      if (used[c])
        pool.push_back(e);
      else {
        used[c] = 1;
        kept.push_back(e);
      }
    }
    if (!kept.empty()) sets.push_back(std::move(kept));
  }
  std::sort(pool.begin(), pool.end());
  while (!pool.empty()) {
    IntSet peel = max_rainbow_independent(inst, pool);
    require(!peel.empty(), Error::Kind::Internal, "rainbow peel came back empty");
    sets.push_back(peel);
    pool = set_minus(pool, peel);
  }

  BruteForceBudget bf_budget;
  if (exact_mode && static_cast<int>(uset.size()) <= bf_budget.max_ground &&
      static_cast<int>(sets.size()) > 2 * k) {
    auto exact = bf_rainbow_decomposition(inst, uset, 2 * k, bf_budget);
    require(exact.has_value(), Error::Kind::Internal,
            "preconditioned set admits no 2k rainbow decomposition");
    sets.clear();
    for (auto& s : *exact)
      if (!s.empty()) sets.push_back(std::move(s));
    require(static_cast<int>(sets.size()) <= 2 * k, Error::Kind::Internal,
            "exact decomposition exceeded 2k sets");
  }
  return sets;
}

std::vector<IntSet> extend_to_bases(const ColouredInstance& inst,
                                    const std::vector<IntSet>& sets) {
  std::vector<IntSet> out;
  for (const IntSet& s : sets) {
    std::vector<char> used(inst.n, 0);
    require(inst.matroid->is_independent(s), Error::Kind::Contract,
            "extend_to_bases: input set is dependent");
    for (int e : s) {
      require(!used[inst.colour_of(e)], Error::Kind::Contract,
              "extend_to_bases: input set is not rainbow");
      used[inst.colour_of(e)] = 1;
    }
    IntSet basis = s;
    auto sk = inst.matroid->make_sketch();
    for (int e : basis) sk->add(e);
    for (int c = 0; c < inst.n; ++c) {
      if (used[c]) continue;
      bool extended = false;
      for (int e : inst.colour_class(c)) {
        if (sk->can_add(e)) {
          sk->add(e);
          set_insert(basis, e);
          extended = true;
          break;
        }
      }
      require(extended, Error::Kind::Internal,
              "extension failed against a full colour class");
    }
    require(static_cast<int>(basis.size()) == inst.n, Error::Kind::Internal,
            "extended basis has wrong size");
    out.push_back(std::move(basis));
  }
  return out;
}

CoverSolution cover(const ColouredInstance& inst, const CoverConfig& cfg) {
  int n = inst.n;
  BuildResult build = build_no_deadlock_family(inst, cfg);
  CoverSolution sol;
  sol.stats = build.stats;
  RainbowFamily fam = std::move(build.family);

  if (build.success) {
    BalanceResult bal = balance_colours(inst, fam, cfg);
    fam = std::move(bal.family);
    sol.stats.balance_steps = bal.steps;
    sol.stats.balance_done = bal.balanced;
    sol.stats.balance_skipped = bal.skipped;
    if (!bal.histogram.empty())
      sol.stats.colour_hist_max = *std::max_element(bal.histogram.begin(), bal.histogram.end());
  }

  IntSet u = fam.uncovered();
  int k_main = sol.stats.k_main;
  std::vector<int> hist = colour_histogram(inst, u);
  int mult = u.empty() ? 0 : *std::max_element(hist.begin(), hist.end());

  std::vector<IntSet> leftover;
  if (u.empty()) {
    // nothing to do
  } else if (build.success && deadlock(inst, u, k_main).empty() && mult <= k_main) {
    leftover = decompose_leftover(inst, u, k_main);
  } else {
    // Fallback peeling: repeatedly strip a maximum rainbow independent set.
    IntSet rest = u;
    while (!rest.empty()) {
      IntSet peel = max_rainbow_independent(inst, rest);
      require(!peel.empty(), Error::Kind::Internal, "rainbow peel came back empty");
      leftover.push_back(peel);
      rest = set_minus(rest, peel);
    }
    sol.partial = true;
  }
  sol.stats.leftover_sets = static_cast<int>(leftover.size());

  std::vector<IntSet> sets;
  for (int j = 0; j < fam.member_count(); ++j)
    if (!fam.member(j).empty()) sets.push_back(fam.member(j));
  for (auto& s : leftover) sets.push_back(std::move(s));

  // Cheap count reduction: fuse any pair whose union is still rainbow
  // independent.
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size();) {
      IntSet merged = set_union(sets[i], sets[j]);
      bool rainbow = true;
      std::vector<char> used(inst.n, 0);
      for (int e : merged) {
        if (used[inst.colour_of(e)]) {
          rainbow = false;
          break;
        }
        used[inst.colour_of(e)] = 1;
      }
      if (rainbow && static_cast<int>(merged.size()) ==
                         static_cast<int>(sets[i].size() + sets[j].size()) &&
          inst.matroid->is_independent(merged)) {
        sets[i] = std::move(merged);
        sets.erase(sets.begin() + static_cast<long>(j));
        ++sol.stats.merged_sets;
      } else {
        ++j;
      }
    }
  }

  sol.bases = extend_to_bases(inst, sets);

  // Small ranks admit an exact packing; use it whenever it beats the
  // pipeline (it covers everything by itself).
  if (n >= 2 && n <= 4 && static_cast<int>(sol.bases.size()) > n) {
    auto exact = bf_max_disjoint_transversal_bases(inst);
    if (exact.count == inst.n) {
      sol.bases = exact.bases;
      sol.stats.exact_small_fallback = true;
      sol.partial = false;
    }
  }

  std::vector<char> covered(inst.ground_size(), 0);
  for (const auto& b : sol.bases)
    for (int e : b) covered[e] = 1;
  for (int e = 0; e < inst.ground_size(); ++e)
    require(covered[e], Error::Kind::Internal, "cover output misses an element");
  sol.covers = true;
  sol.count = static_cast<int>(sol.bases.size());
  return sol;
}

}  // namespace rota
