#pragma once

#include <optional>
#include <utility>

#include "rota/instance.hpp"

namespace rota {

/// Rainbow independent s* with s <= s* <= s+t and |t \ s*| <= 2|s \ t|.
IntSet rainbow_augment(const ColouredInstance& inst, std::span<const int> s,
                       std::span<const int> t);

/// Bijection psi between bases b and b2 such that b2 - psi(x) + x is
/// independent for every x in b. Pairs are (x, psi(x)), sorted by x.
std::vector<std::pair<int, int>> basis_exchange_bijection(const ColouredInstance& inst,
                                                          std::span<const int> b,
                                                          std::span<const int> b2);

/// Injection phi: s -> basis with s - x + phi(x) independent for all x in s
/// and s + b independent for every unused b. Pairs (x, phi(x)), sorted by x.
std::vector<std::pair<int, int>> inject_to_basis(const ColouredInstance& inst,
                                                 std::span<const int> s,
                                                 std::span<const int> basis);

struct InjectResult {
  std::optional<int> added;  // engaged: some x in s with t + x independent
  std::vector<std::pair<int, int>> injection;  // else phi: s -> t, span-preserving swaps
  bool case_a() const { return added.has_value(); }
};

/// Either an element of s addable to t, or an injection phi: s -> t with
/// t - phi(x) + x independent and spanning span(t). Addable element wins.
InjectResult inject_between(const ColouredInstance& inst, std::span<const int> s,
                            std::span<const int> t);

struct DoubleSwitchResult {
  bool combined;   // false: t - out2 + in1; true: t - out1 - out2 + in1 + in2
  IntSet result;
};

/// Combines two span-preserving single swaps (in1 for out1, in2 for out2)
/// on the independent set t into one valid move.
DoubleSwitchResult double_switch(const ColouredInstance& inst, std::span<const int> t,
                                 int in1, int out1, int in2, int out2);

/// Greedy lowest-id completion of an independent set to a basis.
IntSet extend_to_basis_greedy(const Matroid& m, std::span<const int> s);

/// Left-to-right maximum matching; adj[i] lists right vertices of left i.
/// Returns per-left match index or -1.
std::vector<int> max_bipartite_matching(const std::vector<std::vector<int>>& adj, int n_right);

}  // namespace rota
