#include "rota/exchange.hpp"

#include <map>

namespace rota {

namespace {

void require_rainbow_independent(const ColouredInstance& inst, std::span<const int> s,
                                 const char* what) {
  require(inst.matroid->is_independent(s), Error::Kind::Contract,
          std::string(what) + ": set is dependent");
  std::vector<char> used(inst.n, 0);
  for (int e : s) {
    int c = inst.colour_of(e);
    require(!used[c], Error::Kind::Contract, std::string(what) + ": set is not rainbow");
    used[c] = 1;
  }
}

}  // namespace

IntSet rainbow_augment(const ColouredInstance& inst, std::span<const int> s,
                       std::span<const int> t) {
  require_rainbow_independent(inst, s, "rainbow_augment");
  require_rainbow_independent(inst, t, "rainbow_augment");
  const Matroid& m = *inst.matroid;

  // Plain augmentation first, then delete newly added elements that clash
  // in colour with something kept from s.
  IntSet grown = m.augment(s, t);
  std::vector<int> first_of_colour(inst.n, -1);
  for (int e : s) first_of_colour[inst.colour_of(e)] = e;
  IntSet out;
  for (int e : grown) {
    if (set_contains(s, e)) {
      out.push_back(e);
      continue;
    }
    int c = inst.colour_of(e);
    if (first_of_colour[c] >= 0) continue;  // clash with an s element: drop
    first_of_colour[c] = e;
    out.push_back(e);
  }
  return out;
}

std::vector<int> max_bipartite_matching(const std::vector<std::vector<int>>& adj, int n_right) {
  int n_left = static_cast<int>(adj.size());
  std::vector<int> match_left(n_left, -1), match_right(n_right, -1);
  std::vector<char> visited(n_right, 0);

  auto try_kuhn = [&](auto&& self, int u) -> bool {
    for (int v : adj[u]) {
      if (visited[v]) continue;
      visited[v] = 1;
      if (match_right[v] == -1 || self(self, match_right[v])) {
        match_left[u] = v;
        match_right[v] = u;
        return true;
      }
    }
    return false;
  };

  for (int u = 0; u < n_left; ++u) {
    std::fill(visited.begin(), visited.end(), 0);
    try_kuhn(try_kuhn, u);
  }
  return match_left;
}

std::vector<std::pair<int, int>> basis_exchange_bijection(const ColouredInstance& inst,
                                                          std::span<const int> b,
                                                          std::span<const int> b2) {
  const Matroid& m = *inst.matroid;
  int n = inst.n;
  require(static_cast<int>(b.size()) == n && m.is_independent(b), Error::Kind::Contract,
          "basis_exchange_bijection: first set is not a basis");
  require(static_cast<int>(b2.size()) == n && m.is_independent(b2), Error::Kind::Contract,
          "basis_exchange_bijection: second set is not a basis");

  // Edge (x, x') iff b2 - x' + x is independent; for x in both bases the only
  // edge is the identity (anything else would repeat x).
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) {
    int x = b[i];
    if (set_contains(b2, x)) {
      for (int j = 0; j < n; ++j)
        if (b2[j] == x) adj[i].push_back(j);
      continue;
    }
    for (int j = 0; j < n; ++j) {
      IntSet cand = set_add(set_remove(b2, b2[j]), x);
      if (m.is_independent(cand)) adj[i].push_back(j);
    }
  }
  std::vector<int> match = max_bipartite_matching(adj, n);
  std::vector<std::pair<int, int>> psi;
  for (int i = 0; i < n; ++i) {
    require(match[i] >= 0, Error::Kind::Internal,
            "basis exchange matching is not perfect (oracle bug?)");
    psi.emplace_back(b[i], b2[match[i]]);
  }
  return psi;
}

IntSet extend_to_basis_greedy(const Matroid& m, std::span<const int> s) {
  auto sk = m.make_sketch();
  IntSet out(s.begin(), s.end());
  for (int e : s) sk->add(e);
  for (int e = 0; e < m.ground_size() && sk->count() < m.full_rank(); ++e) {
    if (sk->can_add(e)) {
      sk->add(e);
      set_insert(out, e);
    }
  }
  require(sk->count() == m.full_rank(), Error::Kind::Internal, "basis extension fell short");
  return out;
}

std::vector<std::pair<int, int>> inject_to_basis(const ColouredInstance& inst,
                                                 std::span<const int> s,
                                                 std::span<const int> basis) {
  const Matroid& m = *inst.matroid;
  require(m.is_independent(s), Error::Kind::Contract, "inject_to_basis: s is dependent");
  require(static_cast<int>(basis.size()) == inst.n && m.is_independent(basis),
          Error::Kind::Contract, "inject_to_basis: second argument is not a basis");

  IntSet host = extend_to_basis_greedy(m, s);
  auto psi = basis_exchange_bijection(inst, basis, host);
  // phi = psi^{-1} restricted to s.
  std::vector<std::pair<int, int>> phi;
  for (auto [x, y] : psi)
    if (set_contains(s, y)) phi.emplace_back(y, x);
  std::sort(phi.begin(), phi.end());
  return phi;
}

InjectResult inject_between(const ColouredInstance& inst, std::span<const int> s,
                            std::span<const int> t) {
  const Matroid& m = *inst.matroid;
  require(m.is_independent(s), Error::Kind::Contract, "inject_between: s is dependent");
  require(m.is_independent(t), Error::Kind::Contract, "inject_between: t is dependent");

  InjectResult res;
  {
    auto sk = m.make_sketch();
    for (int e : t) sk->add(e);
    for (int x : s) {
      if (!set_contains(t, x) && sk->can_add(x)) {
        res.added = x;  // lowest qualifying id
        return res;
      }
    }
  }

  IntSet sb = extend_to_basis_greedy(m, s);
  IntSet tb = extend_to_basis_greedy(m, t);
  auto psi = basis_exchange_bijection(inst, sb, tb);
  std::map<int, int> psi_map(psi.begin(), psi.end());
  for (int x : s) {
    int y = psi_map.at(x);
    require(set_contains(t, y), Error::Kind::Internal,
            "inject_between: image escaped t although no element is addable");
    res.injection.emplace_back(x, y);
  }
  std::sort(res.injection.begin(), res.injection.end());
  return res;
}

DoubleSwitchResult double_switch(const ColouredInstance& inst, std::span<const int> t,
                                 int in1, int out1, int in2, int out2) {
  const Matroid& m = *inst.matroid;
  require(m.is_independent(t), Error::Kind::Contract, "double_switch: t is dependent");
  require(!set_contains(t, in1) && !set_contains(t, in2), Error::Kind::Contract,
          "double_switch: incoming element already in t");
  require(set_contains(t, out1) && set_contains(t, out2), Error::Kind::Contract,
          "double_switch: outgoing element not in t");
  {
    auto sk = m.make_sketch();
    for (int e : t) sk->add(e);
    require(!sk->can_add(in1) && !sk->can_add(in2), Error::Kind::Contract,
            "double_switch: swap is not span-preserving");
  }
  IntSet swap1 = set_add(set_remove(t, out1), in1);
  IntSet swap2 = set_add(set_remove(t, out2), in2);
  require(m.is_independent(swap1) && m.is_independent(swap2), Error::Kind::Contract,
          "double_switch: single swaps are not independent");

  DoubleSwitchResult res;
  IntSet direct = set_add(set_remove(t, out2), in1);
  if (m.is_independent(direct)) {
    res.combined = false;
    res.result = std::move(direct);
    return res;
  }
  // out1 == out2 or in1 == in2 would have made the direct move a plain
  // precondition swap, so all four are distinct here.
  require(out1 != out2 && in1 != in2, Error::Kind::Internal,
          "double_switch: degenerate combination unexpectedly needed");
  IntSet both = set_add(set_add(set_remove(set_remove(t, out1), out2), in1), in2);
  require(m.is_independent(both), Error::Kind::Internal,
          "double_switch: neither combination is independent");
  res.combined = true;
  res.result = std::move(both);
  return res;
}

}  // namespace rota
