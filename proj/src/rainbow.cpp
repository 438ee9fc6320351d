#include "rota/rainbow.hpp"

#include <cmath>
#include <deque>

#include "rota/exchange.hpp"

namespace rota {

// ---------------------------------------------------------------------------
// RainbowFamily

RainbowFamily::RainbowFamily(const ColouredInstance& inst, int member_count)
    : inst_(&inst), members_(member_count) {
  require(member_count >= 0, Error::Kind::Argument, "negative member count");
  rebuild_cache();
}

RainbowFamily RainbowFamily::from_members(const ColouredInstance& inst,
                                          std::vector<IntSet> members) {
  RainbowFamily fam(inst, 0);
  for (auto& m : members) {
    require(is_sorted_set(m), Error::Kind::Argument, "family member is not a set");
    fam.members_.push_back(std::move(m));
  }
  fam.rebuild_cache();
  fam.validate();
  return fam;
}

void RainbowFamily::rebuild_cache() {
  owner_.assign(inst_->ground_size(), -1);
  colour_used_.assign(members_.size(), std::vector<char>(inst_->n, 0));
  covered_count_ = 0;
  for (int j = 0; j < member_count(); ++j) {
    for (int e : members_[j]) {
      require(owner_[e] == -1, Error::Kind::Contract, "family members overlap");
      owner_[e] = j;
      colour_used_[j][inst_->colour_of(e)] = 1;
      ++covered_count_;
    }
  }
}

IntSet RainbowFamily::covered_set() const {
  IntSet out;
  for (int e = 0; e < inst_->ground_size(); ++e)
    if (owner_[e] >= 0) out.push_back(e);
  return out;
}

IntSet RainbowFamily::uncovered() const {
  IntSet out;
  for (int e = 0; e < inst_->ground_size(); ++e)
    if (owner_[e] < 0) out.push_back(e);
  return out;
}

bool RainbowFamily::can_insert(int j, int e) const {
  if (owner_[e] == j) return false;
  if (colour_used_[j][inst_->colour_of(e)]) return false;
  auto sk = member_sketch(j);
  return sk->can_add(e);
}

std::unique_ptr<IndepSketch> RainbowFamily::member_sketch(int j) const {
  auto sk = inst_->matroid->make_sketch();
  for (int x : members_[j]) sk->add(x);
  return sk;
}

void RainbowFamily::insert(int j, int e) {
  require(owner_[e] == -1, Error::Kind::Contract, "insert of covered element");
  set_insert(members_[j], e);
  owner_[e] = j;
  colour_used_[j][inst_->colour_of(e)] = 1;
  ++covered_count_;
}

void RainbowFamily::erase(int j, int e) {
  require(owner_[e] == j, Error::Kind::Contract, "erase from wrong member");
  set_erase(members_[j], e);
  owner_[e] = -1;
  colour_used_[j][inst_->colour_of(e)] = 0;
  --covered_count_;
}

void RainbowFamily::replace_member(int j, IntSet s) {
  for (int e : IntSet(members_[j])) erase(j, e);
  for (int e : s) {
    require(owner_[e] == -1, Error::Kind::Contract, "replacement overlaps family");
    insert(j, e);
  }
}

void RainbowFamily::validate() const {
  for (int j = 0; j < member_count(); ++j) {
    const IntSet& m = members_[j];
    require(is_sorted_set(m), Error::Kind::Internal, "member not a sorted set");
    std::vector<char> used(inst_->n, 0);
    for (int e : m) {
      int c = inst_->colour_of(e);
      require(!used[c], Error::Kind::Contract, "member is not rainbow");
      used[c] = 1;
      require(owner_[e] == j, Error::Kind::Internal, "owner cache out of date");
    }
    require(inst_->matroid->is_independent(m), Error::Kind::Contract,
            "member is dependent");
  }
}

// ---------------------------------------------------------------------------
// Availability graph

AvailabilityGraph availability_graph(const RainbowFamily& fam) {
  const ColouredInstance& inst = fam.instance();
  AvailabilityGraph g;
  g.members = fam.member_count();
  g.colours = inst.n;
  g.missing.assign(g.members, {});
  g.deg_member.assign(g.members, 0);
  g.deg_colour.assign(g.colours, 0);
  for (int j = 0; j < g.members; ++j) {
    for (int c = 0; c < inst.n; ++c) {
      if (!fam.member_has_colour(j, c)) {
        g.missing[j].push_back(c);
        ++g.deg_member[j];
        ++g.deg_colour[c];
      }
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Matroid intersection (underlying matroid vs colour partition)

IntSet max_rainbow_independent(const ColouredInstance& inst, std::span<const int> subset) {
  inst.matroid->check_elements(subset);
  require(is_sorted_set(subset), Error::Kind::Argument, "subset is not a set");
  const Matroid& m = *inst.matroid;
  IntSet current;  // common independent set

  auto colour_holder = [&](int c) -> int {
    for (int e : current)
      if (inst.colour_of(e) == c) return e;
    return -1;
  };

  for (;;) {
    // Exchange digraph: source = addable in the matroid, sink = colour-free.
    // Arcs x->y (x in I, y out): I - x + y matroid-independent.
    // Arcs y->x (y out, x in): colour(y) == colour(x).
    std::vector<int> pred(m.ground_size(), -2);
    std::deque<int> queue;
    auto base = m.make_sketch();
    for (int e : current) base->add(e);

    for (int y : subset) {
      if (set_contains(current, y)) continue;
      if (base->can_add(y)) {
        pred[y] = -1;
        queue.push_back(y);
      }
    }
    int reached = -1;
    while (!queue.empty() && reached < 0) {
      int v = queue.front();
      queue.pop_front();
      bool in_current = set_contains(current, v);
      if (!in_current) {
        int holder = colour_holder(inst.colour_of(v));
        if (holder < 0) {
          reached = v;
          break;
        }
        if (pred[holder] == -2) {
          pred[holder] = v;
          queue.push_back(holder);
        }
      } else {
        for (int y : subset) {
          if (pred[y] != -2 || set_contains(current, y)) continue;
          IntSet cand = set_add(set_remove(current, v), y);
          if (m.is_independent(cand)) {
            pred[y] = v;
            queue.push_back(y);
          }
        }
      }
    }
    if (reached < 0) break;
    // Flip along the path.
    IntSet next = current;
    for (int v = reached; v != -1; v = pred[v]) {
      if (set_contains(current, v))
        set_erase(next, v);
      else
        set_insert(next, v);
    }
    require(static_cast<int>(next.size()) == static_cast<int>(current.size()) + 1,
            Error::Kind::Internal, "intersection augmentation did not grow");
    require(m.is_independent(next), Error::Kind::Internal,
            "intersection augmentation broke independence");
    std::vector<char> used(inst.n, 0);
    for (int e : next) {
      require(!used[inst.colour_of(e)], Error::Kind::Internal,
              "intersection augmentation broke rainbowness");
      used[inst.colour_of(e)] = 1;
    }
    current = std::move(next);
  }
  return current;
}

// ---------------------------------------------------------------------------
// Good edges

std::vector<int> BipartiteGraph::degx() const {
  std::vector<int> d(nx, 0);
  for (int x = 0; x < nx; ++x) d[x] = static_cast<int>(adj[x].size());
  return d;
}

std::vector<int> BipartiteGraph::degy() const {
  std::vector<int> d(ny, 0);
  for (int x = 0; x < nx; ++x)
    for (int y : adj[x]) ++d[y];
  return d;
}

std::vector<std::pair<int, int>> good_edges(const BipartiteGraph& g,
                                            const GoodEdgeParams& p) {
  require(p.alpha > 0 && p.beta > p.alpha && p.delta > 0, Error::Kind::Argument,
          "good_edges: need 0 < alpha < beta and delta > 0");
  require(g.nx <= p.alpha * g.ny + 1e-9, Error::Kind::Argument,
          "good_edges: |X| exceeds alpha |Y|");
  std::vector<int> dx = g.degx(), dy = g.degy();
  for (int y = 0; y < g.ny; ++y)
    require(dy[y] >= p.delta * g.nx - 1e-9, Error::Kind::Argument,
            "good_edges: vertex y=" + std::to_string(y) + " violates the degree bound");
  std::vector<std::pair<int, int>> out;
  for (int x = 0; x < g.nx; ++x)
    for (int y : g.adj[x])
      if (dy[y] <= p.beta * dx[x] + 1e-9) out.emplace_back(x, y);
  long long bound = good_edges_bound(g, p);
  require(static_cast<long long>(out.size()) >= bound, Error::Kind::Internal,
          "good_edges: count fell below the guaranteed bound");
  return out;
}

long long good_edges_bound(const BipartiteGraph& g, const GoodEdgeParams& p) {
  double v = p.delta * (p.beta - p.alpha) / p.beta * g.nx * g.ny;
  return static_cast<long long>(std::ceil(v - 1e-9));
}

// ---------------------------------------------------------------------------
// ell-reduction and the switching lemma

std::pair<RainbowFamily, IntSet> ell_reduction(const RainbowFamily& fam, int ell) {
  require(ell >= 1, Error::Kind::Argument, "ell_reduction: ell must be positive");
  const ColouredInstance& inst = fam.instance();
  std::vector<int> hosts(inst.ground_size(), 0);
  for (int j = 0; j < fam.member_count(); ++j) {
    auto sk = fam.member_sketch(j);
    for (int e = 0; e < inst.ground_size(); ++e) {
      if (!fam.covers(e) || fam.owner(e) == j) continue;
      if (fam.member_has_colour(j, inst.colour_of(e))) continue;
      if (sk->can_add(e)) ++hosts[e];
    }
  }
  IntSet removed;
  for (int e = 0; e < inst.ground_size(); ++e)
    if (fam.covers(e) && hosts[e] >= ell) removed.push_back(e);
  RainbowFamily out = fam;
  for (int e : removed) out.erase(out.owner(e), e);
  return {std::move(out), std::move(removed)};
}

std::vector<RainbowFamily> reduction_levels(const RainbowFamily& fam, int ell, int r) {
  std::vector<RainbowFamily> levels{fam};
  for (int i = 1; i <= r; ++i)
    levels.push_back(ell_reduction(levels.back(), ell).first);
  return levels;
}

namespace {

SwitchChain diff_chain(const RainbowFamily& before, const RainbowFamily& after) {
  SwitchChain chain;
  for (int j = 0; j < before.member_count(); ++j) {
    IntSet rem = set_minus(before.member(j), after.member(j));
    IntSet add = set_minus(after.member(j), before.member(j));
    chain.total_churn += static_cast<int>(add.size());
    if (!rem.empty() || !add.empty()) chain.steps.push_back({j, std::move(rem), std::move(add)});
  }
  return chain;
}

// Recursive redistribution: produces a family S with E(S) = E(levels[d]) + e
// and at most 3^(host_level - d) moved elements, given that e fits some
// member of levels[host_level].
RainbowFamily switch_rec(const std::vector<RainbowFamily>& levels, int d, int host_level,
                         int e) {
  const RainbowFamily& base = levels[d];
  if (d == host_level) {
    for (int j = 0; j < base.member_count(); ++j) {
      if (base.can_insert(j, e)) {
        RainbowFamily out = base;
        out.insert(j, e);
        return out;
      }
    }
    fail(Error::Kind::Internal, "switch_rec: promised host vanished");
  }

  RainbowFamily inner = switch_rec(levels, d + 1, host_level, e);
  const ColouredInstance& inst = base.instance();
  const RainbowFamily& reduced = levels[d + 1];

  // Reinstate the elements deleted by the reduction, then redistribute the
  // few that no longer fit.
  std::vector<IntSet> merged(base.member_count());
  int churn_budget = 1;
  for (int lv = d + 1; lv <= host_level; ++lv) churn_budget *= 3;
  for (int j = 0; j < base.member_count(); ++j) {
    IntSet kept = set_intersect(inner.member(j), reduced.member(j));
    IntSet reinstated = set_minus(base.member(j), reduced.member(j));
    merged[j] = rainbow_augment(inst, inner.member(j), set_union(kept, reinstated));
  }
  RainbowFamily star = RainbowFamily::from_members(inst, std::move(merged));

  IntSet lost = set_minus(base.covered_set(), star.covered_set());
  std::vector<char> used_member(star.member_count(), 0);
  for (int x : lost) {
    bool placed = false;
    for (int j = 0; j < star.member_count() && !placed; ++j) {
      if (used_member[j] || !star.can_insert(j, x)) continue;
      star.insert(j, x);
      used_member[j] = 1;
      placed = true;
    }
    require(placed, Error::Kind::Internal, "switch_rec: displaced element has no host");
  }

  IntSet want = set_add(base.covered_set(), e);
  require(star.covered_set() == want, Error::Kind::Internal,
          "switch_rec: covered set mismatch");
  int churn = 0;
  for (int j = 0; j < base.member_count(); ++j)
    churn += static_cast<int>(set_minus(star.member(j), base.member(j)).size());
  require(churn <= churn_budget, Error::Kind::Internal, "switch_rec: churn bound broken");
  return star;
}

}  // namespace

std::optional<std::pair<RainbowFamily, SwitchChain>> switch_in_element(
    const RainbowFamily& fam, int e, int ell, int r) {
  require(r >= 0, Error::Kind::Argument, "switch_in_element: negative depth");
  int pow3 = 1;
  for (int i = 0; i < r; ++i) pow3 *= 3;
  require(ell > pow3, Error::Kind::Argument, "switch_in_element: need ell > 3^r");
  require(!fam.covers(e), Error::Kind::Contract, "switch_in_element: element already covered");

  std::vector<RainbowFamily> levels = reduction_levels(fam, ell, r);
  for (int i = 0; i <= r; ++i) {
    for (int j = 0; j < levels[i].member_count(); ++j) {
      if (levels[i].can_insert(j, e)) {
        RainbowFamily out = switch_rec(levels, 0, i, e);
        SwitchChain chain = diff_chain(fam, out);
        return std::make_pair(std::move(out), std::move(chain));
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Three-outcome classifier

ClassifyOutcome classify_family(const RainbowFamily& fam, const ClassifyParams& p) {
  const ColouredInstance& inst = fam.instance();
  int n = inst.n;
  ClassifyOutcome out;

  for (int j = 0; j < fam.member_count(); ++j) {
    if (static_cast<double>(fam.member(j).size()) <= p.mu * n + 1e-9) {
      out.small_member = true;
      out.small_member_index = j;
      break;
    }
  }

  AvailabilityGraph g = availability_graph(fam);
  for (int j = 0; j < fam.member_count() && !out.rich_pair; ++j) {
    for (int c : g.missing[j]) {
      double threshold;
      if (p.pack_mode) {
        int in_r = 0;
        if (p.reservoir)
          in_r = static_cast<int>(set_intersect(inst.colour_class(c), *p.reservoir).size());
        threshold = g.deg_colour[c] - in_r + std::ceil(p.eps * n - 1e-9);
      } else {
        threshold = g.deg_colour[c] - std::floor(p.lambda * n + 1e-9);
      }
      int count = 0;
      for (int e : inst.colour_class(c)) {
        if (fam.covers(e)) continue;
        if (p.pack_mode && p.reservoir && set_contains(*p.reservoir, e)) continue;
        if (fam.can_insert(j, e)) ++count;
      }
      if (count > threshold + 1e-9) {
        out.rich_pair = true;
        out.rich_member = j;
        out.rich_colour = c;
        out.rich_count = count;
        break;
      }
    }
  }

  auto [reduced, removed] = ell_reduction(fam, p.ell);
  out.reduction_loss = static_cast<long long>(removed.size());
  if (out.reduction_loss >= p.gamma * n * n - 1e-9) out.lossy_reduction = true;
  return out;
}

// ---------------------------------------------------------------------------
// Inclusion-maximal extension

RainbowFamily inclusion_maximal_extend(const RainbowFamily& fam, int ell, int r,
                                       const std::vector<char>* allowed,
                                       SwitchChain* log,
                                       const std::vector<int>* scan_order) {
  RainbowFamily cur = fam;
  const ColouredInstance& inst = fam.instance();
  std::vector<int> order;
  if (scan_order) {
    order = *scan_order;
  } else {
    order.resize(inst.ground_size());
    for (int e = 0; e < inst.ground_size(); ++e) order[e] = e;
  }

  // Direct insertions saturate in one pass per round: members only grow, so
  // a skipped element stays unhostable until a switch shuffles the family.
  // Scan order is element id (or the override), then member index.
  auto direct_pass = [&]() {
    std::vector<std::unique_ptr<IndepSketch>> sk(cur.member_count());
    for (int j = 0; j < cur.member_count(); ++j) sk[j] = cur.member_sketch(j);
    for (int e : order) {
      if (cur.covers(e) || (allowed && !(*allowed)[e])) continue;
      for (int j = 0; j < cur.member_count(); ++j) {
        if (cur.member_has_colour(j, inst.colour_of(e))) continue;
        if (!sk[j]->can_add(e)) continue;
        cur.insert(j, e);
        sk[j]->add(e);
        if (log) {
          log->steps.push_back({j, {}, {e}});
          log->total_churn += 1;
        }
        break;
      }
    }
  };

  for (;;) {
    direct_pass();
    bool progressed = false;
    std::vector<RainbowFamily> levels = reduction_levels(cur, ell, r);
    for (int i = 1; i <= r && !progressed; ++i) {
      for (std::size_t oi = 0; oi < order.size() && !progressed; ++oi) {
        int e = order[oi];
        if (cur.covers(e) || (allowed && !(*allowed)[e])) continue;
        for (int j = 0; j < levels[i].member_count(); ++j) {
          if (levels[i].can_insert(j, e)) {
            RainbowFamily next = switch_rec(levels, 0, i, e);
            if (log) {
              SwitchChain chain = diff_chain(cur, next);
              for (auto& s : chain.steps) log->steps.push_back(std::move(s));
              log->total_churn += chain.total_churn;
            }
            cur = std::move(next);
            progressed = true;
            break;
          }
        }
      }
    }
    if (!progressed) break;
  }
  return cur;
}

}  // namespace rota
