#pragma once

#include <functional>

#include "rota/generate.hpp"
#include "rota/instance.hpp"

namespace rota::test {

inline ColouredInstance linear_instance(int n, int p, std::uint64_t seed) {
  return generate_instance(InstanceKind::Linear, n, p, seed);
}

inline ColouredInstance graphic_instance(int n, std::uint64_t seed) {
  return generate_instance(InstanceKind::Graphic, n, n + 1, seed);
}

inline ColouredInstance uniform_instance(int n) {
  return generate_instance(InstanceKind::Uniform, n, 0, 0);
}

/// Mixed-kind instance source for fuzz loops.
inline ColouredInstance any_instance(int n, std::uint64_t seed) {
  switch (seed % 3) {
    case 0: return linear_instance(n, 5, seed);
    case 1: return graphic_instance(n, seed);
    default: return linear_instance(n, 3, seed);
  }
}

/// Random subset of the ground set with inclusion probability num/den.
inline IntSet random_subset(const ColouredInstance& inst, Rng& rng, int num, int den) {
  IntSet out;
  for (int e = 0; e < inst.ground_size(); ++e)
    if (static_cast<int>(rng.below(static_cast<std::uint64_t>(den))) < num) out.push_back(e);
  return out;
}

/// Random subset of fixed maximum size.
inline IntSet random_subset_capped(const ColouredInstance& inst, Rng& rng, int max_size) {
  std::vector<int> order(inst.ground_size());
  for (int e = 0; e < inst.ground_size(); ++e) order[e] = e;
  rng.shuffle(order);
  int take = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_size + 1)));
  IntSet out(order.begin(), order.begin() + std::min<std::size_t>(take, order.size()));
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_rainbow(const ColouredInstance& inst, const IntSet& s) {
  std::vector<char> used(inst.n, 0);
  for (int e : s) {
    if (used[inst.colour_of(e)]) return false;
    used[inst.colour_of(e)] = 1;
  }
  return true;
}

inline IntSet random_independent(const ColouredInstance& inst, Rng& rng, int max_size) {
  std::vector<int> order(inst.ground_size());
  for (int e = 0; e < inst.ground_size(); ++e) order[e] = e;
  rng.shuffle(order);
  auto sk = inst.matroid->make_sketch();
  IntSet out;
  for (int e : order) {
    if (static_cast<int>(out.size()) >= max_size) break;
    if (sk->can_add(e)) {
      sk->add(e);
      set_insert(out, e);
    }
  }
  return out;
}

inline IntSet random_rainbow_independent(const ColouredInstance& inst, Rng& rng,
                                         int max_size) {
  std::vector<int> order(inst.ground_size());
  for (int e = 0; e < inst.ground_size(); ++e) order[e] = e;
  rng.shuffle(order);
  auto sk = inst.matroid->make_sketch();
  std::vector<char> used(inst.n, 0);
  IntSet out;
  for (int e : order) {
    if (static_cast<int>(out.size()) >= max_size) break;
    if (used[inst.colour_of(e)] || !sk->can_add(e)) continue;
    sk->add(e);
    used[inst.colour_of(e)] = 1;
    set_insert(out, e);
  }
  return out;
}

}  // namespace rota::test
