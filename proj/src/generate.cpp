#include "rota/generate.hpp"

namespace rota {

InstanceKind kind_from_string(const std::string& s) {
  if (s == "linear") return InstanceKind::Linear;
  if (s == "graphic") return InstanceKind::Graphic;
  if (s == "uniform") return InstanceKind::Uniform;
  fail(Error::Kind::Argument, "unknown instance kind '" + s + "'");
}

std::string kind_to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::Linear: return "linear";
    case InstanceKind::Graphic: return "graphic";
    default: return "uniform";
  }
}

namespace {

// Rejection-sample an invertible n x n matrix over GF(p); columns become one
// colour class.
std::vector<std::vector<int>> random_basis_gfp(Rng& rng, int n, int p) {
  for (;;) {
    std::vector<std::vector<int>> cols(n, std::vector<int>(n));
    for (auto& col : cols)
      for (int& x : col) x = static_cast<int>(rng.below(static_cast<std::uint64_t>(p)));
    LinearMatroid probe(p, n, cols);
    IntSet all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    if (probe.is_independent(all)) return cols;
  }
}

// Wilson's loop-erased random walk; uniform spanning tree of K_v.
std::vector<std::pair<int, int>> random_spanning_tree(Rng& rng, int v) {
  std::vector<char> in_tree(v, 0);
  std::vector<int> next(v, -1);
  int root = 0;
  in_tree[root] = 1;
  for (int start = 1; start < v; ++start) {
    if (in_tree[start]) continue;
    int u = start;
    while (!in_tree[u]) {
      int step;
      do {
        step = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
      } while (step == u);
      next[u] = step;
      u = step;
    }
    u = start;
    while (!in_tree[u]) {
      in_tree[u] = 1;
      u = next[u];
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (int w = 1; w < v; ++w) edges.emplace_back(w, next[w]);
  return edges;
}

}  // namespace

ColouredInstance generate_instance(InstanceKind kind, int n, int p_or_v, std::uint64_t seed,
                                   int max_n) {
  require(n >= 1, Error::Kind::Argument, "n must be positive");
  require(n <= max_n, Error::Kind::SizeCap,
          "n exceeds cap " + std::to_string(max_n));
  Rng rng(seed);

  ColouredInstance inst;
  inst.n = n;
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < n; ++i) {
      inst.colour.push_back(c);
      inst.external_id.push_back(c * n + i);
    }
  inst.classes.assign(n, {});
  for (int e = 0; e < n * n; ++e) inst.classes[inst.colour[e]].push_back(e);

  if (kind == InstanceKind::Linear) {
    int p = p_or_v;
    require(is_prime(p), Error::Kind::Argument,
            "field modulus " + std::to_string(p) + " is not prime");
    std::vector<std::vector<int>> vecs;
    for (int c = 0; c < n; ++c) {
      auto cols = random_basis_gfp(rng, n, p);
      for (auto& col : cols) vecs.push_back(std::move(col));
    }
    inst.matroid = std::make_shared<LinearMatroid>(p, n, std::move(vecs));
  } else if (kind == InstanceKind::Graphic) {
    int v = (p_or_v > 0 ? p_or_v : n + 1);
    require(v == n + 1, Error::Kind::Argument,
            "graphic generator needs exactly n+1 vertices");
    std::vector<std::pair<int, int>> edges;
    for (int c = 0; c < n; ++c) {
      auto tree = random_spanning_tree(rng, v);
      for (auto& e : tree) edges.push_back(e);
    }
    inst.matroid = std::make_shared<GraphicMatroid>(v, std::move(edges));
  } else {
    inst.matroid = std::make_shared<UniformMatroid>(n, n * n);
  }

  inst.validate(max_n);
  return inst;
}

}  // namespace rota
