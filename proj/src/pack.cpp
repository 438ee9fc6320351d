#include "rota/pack.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <set>

#include "rota/exchange.hpp"
#include "rota/oracle.hpp"

namespace rota {

IntSet sample_reservoir(const ColouredInstance& inst, const ReservoirConfig& rcfg) {
  require(rcfg.eta >= 0 && rcfg.eta <= 1, Error::Kind::Argument, "eta must lie in [0,1]");
  Rng rng(rcfg.seed);
  IntSet r;
  for (int e = 0; e < inst.ground_size(); ++e)
    if (rng.bernoulli(rcfg.eta)) r.push_back(e);
  return r;
}

// ---------------------------------------------------------------------------
// Reservoir diagnostics

namespace {

IntSet random_independent_set(const ColouredInstance& inst, Rng& rng) {
  int n = inst.n;
  int want = static_cast<int>(rng.below(static_cast<std::uint64_t>(n + 1)));
  std::vector<int> order(inst.ground_size());
  for (int e = 0; e < inst.ground_size(); ++e) order[e] = e;
  rng.shuffle(order);
  auto sk = inst.matroid->make_sketch();
  IntSet t;
  for (int e : order) {
    if (static_cast<int>(t.size()) >= want) break;
    if (sk->can_add(e)) {
      sk->add(e);
      set_insert(t, e);
    }
  }
  return t;
}

IntSet random_colour_subset(int n, Rng& rng, int min_size) {
  IntSet c;
  for (;;) {
    c.clear();
    for (int i = 0; i < n; ++i)
      if (rng.bernoulli(0.5)) c.push_back(i);
    if (static_cast<int>(c.size()) >= min_size) return c;
  }
}

}  // namespace

ReservoirReport check_reservoir(const ColouredInstance& inst, std::span<const int> reservoir,
                                double eta, double gamma, double eps_prime, int samples,
                                std::uint64_t seed) {
  int n = inst.n;
  ReservoirReport rep;
  rep.colour_balance.name = "colour-balance";
  rep.extension_out.name = "extension-outside-reservoir";
  rep.extension_in.name = "extension-inside-reservoir";
  rep.robust_span.name = "robust-reservoir-span";
  Rng rng(seed);

  for (int c = 0; c < n; ++c) {
    ++rep.colour_balance.checked;
    long long in_r = static_cast<long long>(
        set_intersect(inst.colour_class(c), reservoir).size());
    if (in_r < (eta - gamma) * n - 1e-9 || in_r > (eta + gamma) * n + 1e-9) {
      ++rep.colour_balance.violations;
      if (rep.colour_balance.examples.size() < 5)
        rep.colour_balance.examples.push_back(
            "colour " + std::to_string(c + 1) + ": |B_c cap R| = " + std::to_string(in_r));
    }
  }

  double nn = static_cast<double>(n) * n;
  for (int it = 0; it < samples; ++it) {
    IntSet t = random_independent_set(inst, rng);
    IntSet cols = random_colour_subset(n, rng, 0);
    auto sk = inst.matroid->make_sketch();
    for (int e : t) sk->add(e);
    long long out_count = 0, in_count = 0;
    for (int c : cols) {
      for (int e : inst.colour_class(c)) {
        if (set_contains(t, e) || !sk->can_add(e)) continue;
        if (set_contains(reservoir, e))
          ++in_count;
        else
          ++out_count;
      }
    }
    double slack = gamma * nn;
    double base = static_cast<double>(n - static_cast<int>(t.size())) * cols.size();
    ++rep.extension_out.checked;
    if (out_count < (1.0 - eta) * base - slack - 1e-9) {
      ++rep.extension_out.violations;
      if (rep.extension_out.examples.size() < 5)
        rep.extension_out.examples.push_back("|T|=" + std::to_string(t.size()) +
                                             " |C|=" + std::to_string(cols.size()) +
                                             " count=" + std::to_string(out_count));
    }
    ++rep.extension_in.checked;
    if (in_count < eta * base - slack - 1e-9) {
      ++rep.extension_in.violations;
      if (rep.extension_in.examples.size() < 5)
        rep.extension_in.examples.push_back("|T|=" + std::to_string(t.size()) +
                                            " |C|=" + std::to_string(cols.size()) +
                                            " count=" + std::to_string(in_count));
    }
  }

  int min_cols = static_cast<int>(std::ceil(eps_prime * n - 1e-9));
  long long max_del = std::min<long long>(static_cast<long long>(reservoir.size()),
                                          static_cast<long long>(gamma * nn));
  for (int it = 0; it < samples; ++it) {
    IntSet q(reservoir.begin(), reservoir.end());
    long long del = static_cast<long long>(rng.below(static_cast<std::uint64_t>(max_del + 1)));
    for (long long d = 0; d < del && !q.empty(); ++d)
      q.erase(q.begin() + static_cast<long>(rng.below(q.size())));
    IntSet cols = random_colour_subset(n, rng, std::min(min_cols, n));
    IntSet pool;
    for (int c : cols)
      for (int e : inst.colour_class(c))
        if (set_contains(q, e)) pool.push_back(e);
    std::sort(pool.begin(), pool.end());
    ++rep.robust_span.checked;
    if (inst.matroid->rank(pool) < (1.0 - eps_prime) * n - 1e-9) {
      ++rep.robust_span.violations;
      if (rep.robust_span.examples.size() < 5)
        rep.robust_span.examples.push_back("|Q|=" + std::to_string(q.size()) +
                                           " |C|=" + std::to_string(cols.size()) +
                                           " rank=" + std::to_string(inst.matroid->rank(pool)));
    }
  }
  return rep;
}

RainbowFamily build_avoiding_family(const ColouredInstance& inst, double eps,
                                    std::span<const int> reservoir, int ell, int r,
                                    std::uint64_t shuffle_seed) {
  require(eps > 0 && eps < 1, Error::Kind::Argument, "epsilon must lie in (0,1)");
  int n = inst.n;
  int m = static_cast<int>(std::floor((1.0 - eps) * n + 1e-9));
  std::vector<char> allowed(inst.ground_size(), 1);
  for (int e : reservoir) allowed[e] = 0;
  std::vector<int> order(inst.ground_size());
  for (int e = 0; e < inst.ground_size(); ++e) order[e] = e;
  if (shuffle_seed != 0) {
    Rng rng(shuffle_seed);
    rng.shuffle(order);
  }
  RainbowFamily fam =
      inclusion_maximal_extend(RainbowFamily(inst, m), ell, r, &allowed, nullptr, &order);
  for (int j = 0; j < fam.member_count(); ++j)
    require(set_intersect(fam.member(j), reservoir).empty(), Error::Kind::Internal,
            "avoiding family touched the reservoir");
  return fam;
}

// ---------------------------------------------------------------------------
// Absorbable-element machinery

namespace {

bool rainbow_independent(const ColouredInstance& inst, const IntSet& s) {
  std::vector<char> used(inst.n, 0);
  for (int e : s) {
    if (used[inst.colour_of(e)]) return false;
    used[inst.colour_of(e)] = 1;
  }
  return inst.matroid->is_independent(s);
}

}  // namespace

AbsorbSpec one_absorbable_colours(const RainbowFamily& fam, int member,
                                  std::span<const int> reservoir, const PackConfig& pcfg) {
  const ColouredInstance& inst = fam.instance();
  int n = inst.n;
  const IntSet& t = fam.member(member);
  require(static_cast<int>(t.size()) < n, Error::Kind::Argument,
          "one_absorbable_colours: member is already a basis");
  IntSet u = fam.uncovered();
  AbsorbSpec spec;

  // Immediate-improvement screens (the lemma hypothesis, bounded search).
  {
    auto sk = fam.member_sketch(member);
    for (int e : u) {
      if (fam.member_has_colour(member, inst.colour_of(e))) continue;
      if (sk->can_add(e)) {
        spec.immediate = true;
        spec.improved = set_add(t, e);
        return spec;
      }
    }
  }
  if (pcfg.pair_screen_budget > 0) {
    long long budget = pcfg.pair_screen_budget;
    for (std::size_t i = 0; i < u.size() && budget > 0; ++i) {
      for (std::size_t jj = i + 1; jj < u.size() && budget > 0; ++jj) {
        int e1 = u[i], e2 = u[jj];
        if (inst.colour_of(e1) == inst.colour_of(e2)) continue;
        for (int out : t) {
          IntSet cand = set_add(set_add(set_remove(t, out), e1), e2);
          if (--budget <= 0) break;
          if (rainbow_independent(inst, cand)) {
            spec.immediate = true;
            spec.improved = std::move(cand);
            return spec;
          }
        }
      }
    }
  }

  // Missing colour with the largest uncovered supply.
  int cstar = -1, best = -1;
  for (int c = 0; c < n; ++c) {
    if (fam.member_has_colour(member, c)) continue;
    int avail = static_cast<int>(set_intersect(inst.colour_class(c), u).size());
    if (avail > best) {
      best = avail;
      cstar = c;
    }
  }
  spec.span = inst.matroid->closure(t);
  if (cstar < 0 || best == 0) return spec;  // no uncovered supply anywhere

  IntSet s1 = set_intersect(inst.colour_class(cstar), u);
  auto inj1 = inject_between(inst, s1, t);
  if (inj1.case_a()) {
    spec.immediate = true;
    spec.improved = set_add(t, *inj1.added);
    require(rainbow_independent(inst, spec.improved), Error::Kind::Internal,
            "first injection improvement is invalid");
    return spec;
  }
  std::map<int, std::pair<int, int>> first_swap_by_colour;  // c(phi*(x)) -> (x, phi*(x))
  for (auto [x, y] : inj1.injection)
    first_swap_by_colour.emplace(inst.colour_of(y), std::make_pair(x, y));

  IntSet pool;
  for (int e : reservoir) {
    if (fam.covers(e)) continue;
    if (first_swap_by_colour.count(inst.colour_of(e))) pool.push_back(e);
  }
  std::sort(pool.begin(), pool.end());
  IntSet qstar;
  {
    auto sk = inst.matroid->make_sketch();
    for (int e : pool)
      if (sk->can_add(e)) {
        sk->add(e);
        qstar.push_back(e);
      }
  }
  if (qstar.empty()) return spec;

  auto inj2 = inject_between(inst, qstar, t);
  if (inj2.case_a()) {
    int q = *inj2.added;
    auto [x, xout] = first_swap_by_colour.at(inst.colour_of(q));
    spec.immediate = true;
    spec.improved = set_add(set_add(set_remove(t, xout), x), q);
    require(rainbow_independent(inst, spec.improved), Error::Kind::Internal,
            "second injection improvement is invalid");
    return spec;
  }
  for (auto [q, qout] : inj2.injection) {
    int c = inst.colour_of(qout);
    if (spec.swaps.count(c)) continue;
    auto [x, xout] = first_swap_by_colour.at(inst.colour_of(q));
    spec.swaps[c] = SwapPair{x, xout, q, qout};
    spec.colours.push_back(c);
  }
  std::sort(spec.colours.begin(), spec.colours.end());
  return spec;
}

// ---------------------------------------------------------------------------
// Cascade improvement

namespace {

struct AbsorbCert {
  int level = 1;                              // absorbable w.r.t. chain[0..level-1]
  int host = -1;                              // element displaced from chain[level-1]
  bool plain = false;                         // direct insert, no swaps
  SwapPair swaps;
  std::shared_ptr<const AbsorbCert> parent;   // cert of host at level-1
};

using CertPtr = std::shared_ptr<const AbsorbCert>;

void materialize_into(const ColouredInstance& inst, const RainbowFamily& fam,
                      const std::vector<int>& chain, int elem, const AbsorbCert& cert,
                      std::map<int, IntSet>& rep) {
  int mem = chain[static_cast<std::size_t>(cert.level) - 1];
  IntSet base = fam.member(mem);
  if (cert.level >= 2) {
    require(cert.parent != nullptr && cert.host >= 0, Error::Kind::Internal,
            "cascade certificate chain is broken");
    materialize_into(inst, fam, chain, cert.host, *cert.parent, rep);
    base = set_remove(base, cert.host);
  }
  IntSet modified = base;
  if (!cert.plain) {
    auto ds = double_switch(inst, base, cert.swaps.in1, cert.swaps.out1, cert.swaps.in2,
                            cert.swaps.out2);
    modified = std::move(ds.result);
  }
  require(!set_contains(modified, elem), Error::Kind::Internal,
          "cascade witness already holds its element");
  rep[mem] = set_add(modified, elem);
}

RainbowFamily apply_replacements(const RainbowFamily& fam,
                                 const std::map<int, IntSet>& rep) {
  RainbowFamily out = fam;
  for (const auto& [j, s] : rep) out.replace_member(j, {});
  for (const auto& [j, s] : rep) out.replace_member(j, s);
  out.validate();
  return out;
}

SwitchChain family_diff(const RainbowFamily& before, const RainbowFamily& after) {
  SwitchChain chain;
  for (int j = 0; j < before.member_count(); ++j) {
    IntSet rem = set_minus(before.member(j), after.member(j));
    IntSet add = set_minus(after.member(j), before.member(j));
    chain.total_churn += static_cast<int>(add.size());
    if (!rem.empty() || !add.empty())
      chain.steps.push_back({j, std::move(rem), std::move(add)});
  }
  return chain;
}

struct Candidate {
  int elem;
  CertPtr cert;
};

}  // namespace

CascadeResult cascade_improve(const ColouredInstance& inst, const RainbowFamily& fam,
                              std::span<const int> reservoir, const PackConfig& pcfg,
                              PairMemo* memo, const IntSet* forbidden_seeds) {
  int n = inst.n;
  int m = fam.member_count();
  long long target = static_cast<long long>(m) * n;
  require(fam.covered_count() < target, Error::Kind::Argument,
          "cascade_improve: family is already complete");
  CascadeResult res;
  res.stats.precondition_warning = 4 * fam.covered_count() < 3 * n * n;

  auto finish_improved = [&](RainbowFamily next) {
    require(next.covered_count() == fam.covered_count() + 1, Error::Kind::Internal,
            "cascade improvement changed the total size by more than one");
    res.improved = true;
    res.chain = family_diff(fam, next);
    res.family = std::move(next);
    return res;
  };

  // Plain one-element growth anywhere (chain length 0).
  {
    IntSet u = fam.uncovered();
    for (int j = 0; j < m; ++j) {
      if (static_cast<int>(fam.member(j).size()) >= n) continue;
      auto sk = fam.member_sketch(j);
      for (int e : u) {
        if (fam.member_has_colour(j, inst.colour_of(e))) continue;
        if (!sk->can_add(e)) continue;
        RainbowFamily next = fam;
        next.insert(j, e);
        return finish_improved(std::move(next));
      }
    }
  }

  double cost_l = pcfg.cost_l_eff();
  long long s = target - fam.covered_count();
  int r_max = pcfg.r_max;
  if (r_max <= 0) {
    double paper = std::ceil(cost_l / 8.0 * std::log(static_cast<double>(n) * n /
                                                     static_cast<double>(s))) +
                   2.0;
    r_max = static_cast<int>(std::min(paper, 3.0 * n));
    r_max = std::max(r_max, 2);
  }

  // Seed: memoized high-yield pair when available, else the most deficient
  // member.
  std::vector<int> chain;
  int forced_second = -1;
  if (memo) {
    for (const auto& [pr, cnt] : *memo) {
      (void)cnt;
      auto [a, b] = pr;
      if (a >= m || b >= m || a == b) continue;
      if (forbidden_seeds && set_contains(*forbidden_seeds, a)) continue;
      if (static_cast<int>(fam.member(a).size()) >= n) continue;
      chain = {a};
      forced_second = b;
      break;
    }
  }
  if (chain.empty()) {
    int best = -1, best_def = 0;
    for (int j = 0; j < m; ++j) {
      if (forbidden_seeds && set_contains(*forbidden_seeds, j)) continue;
      int def = n - static_cast<int>(fam.member(j).size());
      if (def > best_def) {
        best_def = def;
        best = j;
      }
    }
    if (best < 0) {
      res.stats.stop_reason = "no admissible seed member";
      return res;
    }
    chain = {best};
  }

  long long absorb_budget = pcfg.absorb_call_budget;
  // Entries feeding the next step: sentinel at chain length 1.
  std::vector<Candidate> frontier{{-1, nullptr}};
  long long prev_count = 0;

  for (;;) {
    int r = static_cast<int>(chain.size());
    int t_last = chain.back();
    std::set<int> chain_set(chain.begin(), chain.end());

    std::vector<long long> counts(m, 0);
    std::map<int, Candidate> first_cert;  // per candidate element
    std::set<int> seen_elem;

    for (const Candidate& entry : frontier) {
      if (absorb_budget-- <= 0) {
        res.stats.stop_reason = "absorb-call budget exhausted";
        return res;
      }
      RainbowFamily fam_e = fam;
      if (entry.elem >= 0) {
        std::map<int, IntSet> rep;
        try {
          materialize_into(inst, fam, chain, entry.elem, *entry.cert, rep);
          require(rep.count(t_last) == 0, Error::Kind::Internal, "cert touched the tail");
          RainbowFamily tmp = fam;
          for (const auto& [j, ss] : rep) tmp.replace_member(j, {});
          tmp.erase(t_last, entry.elem);
          for (const auto& [j, ss] : rep) tmp.replace_member(j, ss);
          tmp.validate();
          require(tmp.covered_count() == fam.covered_count(), Error::Kind::Internal,
                  "cert materialization changed the total size");
          fam_e = std::move(tmp);
        } catch (const Error&) {
          continue;  // collision between witness pieces: drop this branch
        }
      }

      AbsorbSpec spec;
      try {
        spec = one_absorbable_colours(fam_e, t_last, reservoir, pcfg);
      } catch (const Error&) {
        continue;
      }
      if (spec.immediate) {
        RainbowFamily next = fam_e;
        next.replace_member(t_last, spec.improved);
        next.validate();
        ++res.stats.absorb_calls;
        res.stats.chain_len = r;
        res.stats.chain = chain;
        return finish_improved(std::move(next));
      }
      ++res.stats.absorb_calls;

      // Candidate absorbable elements grown from this branch.
      auto consider = [&](int ep, bool plain) {
        if (seen_elem.count(ep)) return false;
        auto cert = std::make_shared<AbsorbCert>();
        AbsorbCert& c = *cert;
        c.level = r;
        c.host = entry.elem;
        c.plain = plain;
        if (!plain) c.swaps = spec.swaps.at(inst.colour_of(ep));
        c.parent = entry.cert;

        if (!fam.covers(ep)) {
          // Uncovered element: unwinding the chain is a net +1 improvement.
          if (fam_e.covers(ep)) return false;  // consumed as swap fuel
          std::map<int, IntSet> rep;
          try {
            materialize_into(inst, fam, chain, ep, c, rep);
            RainbowFamily next = apply_replacements(fam, rep);
            res.stats.chain_len = r;
            res.stats.chain = chain;
            finish_improved(std::move(next));
            return true;
          } catch (const Error&) {
            return false;
          }
        }
        int owner = fam.owner(ep);
        if (chain_set.count(owner)) return false;
        seen_elem.insert(ep);
        ++counts[owner];
        first_cert.emplace(ep, Candidate{ep, cert});
        return false;
      };

      const IntSet& tail = fam_e.member(t_last);
      for (int c : spec.colours) {
        for (int ep : inst.colour_class(c)) {
          if (set_contains(spec.span, ep) || set_contains(tail, ep)) continue;
          bool in_witness = false;
          for (int j : chain)
            if (j != t_last && fam_e.owner(ep) == j) in_witness = true;
          if (in_witness) continue;
          if (consider(ep, false)) return res;
        }
      }
      {
        auto sk = fam_e.member_sketch(t_last);
        for (int ep = 0; ep < inst.ground_size(); ++ep) {
          if (fam_e.owner(ep) == t_last) continue;
          bool in_witness = false;
          for (int j : chain)
            if (j != t_last && fam_e.owner(ep) == j) in_witness = true;
          if (in_witness) continue;
          if (fam_e.member_has_colour(t_last, inst.colour_of(ep))) continue;
          if (!sk->can_add(ep)) continue;
          if (consider(ep, true)) return res;
        }
      }
    }

    // Extend the chain by the candidate-richest member.
    int next_member = -1;
    long long best_count = 0;
    if (r == 1 && forced_second >= 0 && counts[forced_second] > 0) {
      next_member = forced_second;
      best_count = counts[forced_second];
    } else {
      for (int j = 0; j < m; ++j) {
        if (chain_set.count(j)) continue;
        if (counts[j] > best_count) {
          best_count = counts[j];
          next_member = j;
        }
      }
    }
    forced_second = -1;
    if (next_member < 0) {
      res.stats.stop_reason = "no absorbable candidates";
      res.stats.chain_len = r;
      res.stats.chain = chain;
      return res;
    }

    double denom = static_cast<double>(prev_count) + n -
                   static_cast<double>(fam.member(t_last).size());
    if (denom > 0) res.stats.growth.push_back(static_cast<double>(best_count) / denom);
    prev_count = best_count;

    chain.push_back(next_member);
    if (memo && chain.size() == 2)
      (*memo)[{chain[0], chain[1]}] = static_cast<int>(best_count);
    frontier.clear();
    for (int ep : fam.member(next_member)) {
      auto it = first_cert.find(ep);
      if (it != first_cert.end()) frontier.push_back(it->second);
    }
    if (static_cast<int>(chain.size()) >= r_max) {
      res.stats.stop_reason = "cascade depth limit";
      res.stats.chain_len = static_cast<int>(chain.size());
      res.stats.chain = chain;
      return res;
    }
  }
}

// ---------------------------------------------------------------------------
// Packing pipeline

PackSolution pack(const ColouredInstance& inst, const PackConfig& pcfg,
                  const ReservoirConfig& rcfg) {
  require(pcfg.epsilon > 0 && pcfg.epsilon < 1, Error::Kind::Argument,
          "epsilon must lie in (0,1)");
  int n = inst.n;
  PackSolution sol;

  if (pcfg.exact_fallback && n <= 4) {
    auto exact = bf_max_disjoint_transversal_bases(inst);
    sol.bases = exact.bases;
    sol.stats.exact_fallback_used = true;
    sol.stats.target_members = exact.count;
    sol.stats.covered_final = static_cast<long long>(exact.count) * n;
    return sol;
  }

  auto t0 = std::chrono::steady_clock::now();
  auto out_of_time = [&]() {
    if (pcfg.budget_ms < 0) return false;
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    return ms > pcfg.budget_ms;
  };
  IntSet reservoir = sample_reservoir(inst, rcfg);
  RainbowFamily fam = build_avoiding_family(inst, pcfg.epsilon, reservoir, pcfg.ell,
                                            pcfg.r, pcfg.shuffle_seed);
  int m = static_cast<int>(std::ceil((1.0 - pcfg.epsilon) * n - 1e-9));
  m = std::max(m, 1);
  while (fam.member_count() < m) {
    std::vector<IntSet> members = fam.members();
    members.push_back({});
    fam = RainbowFamily::from_members(inst, std::move(members));
  }
  sol.stats.target_members = m;
  sol.stats.covered_initial = fam.covered_count();

  long long target = static_cast<long long>(m) * n;
  long long budget = pcfg.improvement_budget > 0 ? pcfg.improvement_budget : target;
  PairMemo memo;
  IntSet forbidden;
  double cost_l = pcfg.cost_l_eff();

  while (fam.covered_count() < target && budget-- > 0 && !out_of_time()) {
    CascadeResult step = cascade_improve(inst, fam, reservoir, pcfg, &memo,
                                         forbidden.empty() ? nullptr : &forbidden);
    if (step.improved) {
      fam = std::move(*step.family);
      forbidden.clear();
      ++sol.stats.improvements;
      sol.stats.max_chain = std::max(sol.stats.max_chain, step.stats.chain_len);
      sol.stats.improvement_chains.push_back(step.chain);
      for (double g : step.stats.growth) sol.stats.growth_factors.push_back(g);
      long long in_r = 0;
      for (int j = 0; j < fam.member_count(); ++j)
        in_r += static_cast<long long>(set_intersect(fam.member(j), reservoir).size());
      sol.stats.reservoir_used.push_back(in_r);
      long long deficit = std::max<long long>(target - fam.covered_count() + 1, 1);
      double prev = sol.stats.reservoir_bound.empty() ? 0.0 : sol.stats.reservoir_bound.back();
      sol.stats.reservoir_bound.push_back(
          prev + cost_l * std::log(static_cast<double>(n) * n / deficit));
    } else {
      if (!step.stats.chain.empty()) set_insert(forbidden, step.stats.chain.front());
      if (static_cast<int>(forbidden.size()) > pcfg.seed_retries) break;
      if (step.stats.chain.empty()) break;
    }
  }
  sol.stats.budget_exhausted = fam.covered_count() < target;
  sol.stats.covered_final = fam.covered_count();

  for (int j = 0; j < fam.member_count(); ++j) {
    if (static_cast<int>(fam.member(j).size()) == n)
      sol.bases.push_back(fam.member(j));
    else
      ++sol.members_dropped;
  }
  return sol;
}

}  // namespace rota
