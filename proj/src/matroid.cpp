#include "rota/matroid.hpp"

#include <numeric>

namespace rota {

namespace {

std::vector<int> default_groups(int ground) {
  std::vector<int> g(ground);
  std::iota(g.begin(), g.end(), 0);
  return g;
}

// Small sorted scratch sets used by the sketches.
class IdTracker {
 public:
  bool has(int v) const { return set_contains(vals_, v); }
  void put(int v) { set_insert(vals_, v); }
  void clear() { vals_.clear(); }

 private:
  IntSet vals_;
};

long long mod_pow(long long b, long long e, long long p) {
  long long r = 1;
  b %= p;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; (long long)d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void Matroid::check_elements(std::span<const int> s) const {
  for (int e : s)
    require(e >= 0 && e < ground_size_, Error::Kind::Instance,
            "unknown element id " + std::to_string(e));
}

int Matroid::full_rank() const {
  int cached = full_rank_.load(std::memory_order_relaxed);
  if (cached < 0) {
    auto sk = make_sketch();
    for (int e = 0; e < ground_size_; ++e)
      if (sk->can_add(e)) sk->add(e);
    cached = sk->count();
    full_rank_.store(cached, std::memory_order_relaxed);
  }
  return cached;
}

bool Matroid::is_independent(std::span<const int> s) const {
  check_elements(s);
  auto sk = make_sketch();
  for (int e : s) {
    if (!sk->can_add(e)) return false;
    sk->add(e);
  }
  return true;
}

int Matroid::rank(std::span<const int> s) const {
  check_elements(s);
  auto sk = make_sketch();
  for (int e : s)
    if (sk->can_add(e)) sk->add(e);
  return sk->count();
}

IntSet Matroid::closure(std::span<const int> s) const {
  check_elements(s);
  auto sk = make_sketch();
  for (int e : s)
    if (sk->can_add(e)) sk->add(e);
  IntSet out;
  for (int e = 0; e < ground_size_; ++e)
    if (!sk->can_add(e)) out.push_back(e);
  return out;
}

IntSet Matroid::augment(std::span<const int> s, std::span<const int> t) const {
  require(is_independent(s), Error::Kind::Contract, "augment: first set is dependent");
  require(is_independent(t), Error::Kind::Contract, "augment: second set is dependent");
  auto sk = make_sketch();
  IntSet out(s.begin(), s.end());
  for (int e : s) sk->add(e);
  for (int e : t) {
    if (sk->can_add(e)) {
      sk->add(e);
      set_insert(out, e);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Linear matroid

namespace {

class LinearSketch final : public IndepSketch {
 public:
  explicit LinearSketch(const LinearMatroid* m) : m_(m) {}

  bool can_add(int e) const override {
    if (ids_.has(e) || groups_.has(m_->parallel_group(e))) return false;
    std::vector<int> v = reduce(m_->vec(e));
    return !all_zero(v);
  }

  void add(int e) override {
    std::vector<int> v = reduce(m_->vec(e));
    int pc = pivot_col(v);
    require(pc >= 0 && !ids_.has(e) && !groups_.has(m_->parallel_group(e)),
            Error::Kind::Internal, "sketch add on dependent element");
    normalize(v, pc);
    rows_.push_back(std::move(v));
    pivots_.push_back(pc);
    ids_.put(e);
    groups_.put(m_->parallel_group(e));
    ++count_;
  }

  void reset() override {
    rows_.clear();
    pivots_.clear();
    ids_.clear();
    groups_.clear();
    count_ = 0;
  }

 private:
  static bool all_zero(const std::vector<int>& v) {
    for (int x : v)
      if (x != 0) return false;
    return true;
  }

  static int pivot_col(const std::vector<int>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) return static_cast<int>(i);
    return -1;
  }

  void normalize(std::vector<int>& v, int pc) const {
    long long p = m_->prime();
    long long inv = mod_pow(v[pc], p - 2, p);
    for (int& x : v) x = static_cast<int>(x * inv % p);
  }

  std::vector<int> reduce(std::vector<int> v) const {
    long long p = m_->prime();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      long long c = v[pivots_[r]];
      if (c == 0) continue;
      const std::vector<int>& row = rows_[r];
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = static_cast<int>(((v[i] - c * row[i]) % p + p) % p);
    }
    return v;
  }

  const LinearMatroid* m_;
  std::vector<std::vector<int>> rows_;  // reduced, pivot normalized to 1
  std::vector<int> pivots_;
  IdTracker ids_;
  IdTracker groups_;
};

}  // namespace

LinearMatroid::LinearMatroid(int prime, int dim, std::vector<std::vector<int>> vectors,
                             std::vector<int> groups)
    : Matroid(static_cast<int>(vectors.size())),
      prime_(prime),
      dim_(dim),
      vectors_(std::move(vectors)),
      groups_(std::move(groups)) {
  require(is_prime(prime_), Error::Kind::Argument,
          "field modulus " + std::to_string(prime_) + " is not prime");
  require(dim_ >= 0, Error::Kind::Argument, "negative dimension");
  if (groups_.empty()) groups_ = default_groups(ground_size_);
  require(static_cast<int>(groups_.size()) == ground_size_, Error::Kind::Argument,
          "group table size mismatch");
  for (auto& v : vectors_) {
    require(static_cast<int>(v.size()) == dim_, Error::Kind::Argument,
            "vector length mismatch");
    for (int& x : v) x = ((x % prime_) + prime_) % prime_;
  }
}

std::unique_ptr<IndepSketch> LinearMatroid::make_sketch() const {
  return std::make_unique<LinearSketch>(this);
}

std::unique_ptr<Matroid> LinearMatroid::replicate(const std::vector<int>& base_ids) const {
  std::vector<std::vector<int>> vecs;
  std::vector<int> groups;
  vecs.reserve(base_ids.size());
  for (int b : base_ids) {
    check_elements(std::span<const int>(&b, 1));
    vecs.push_back(vectors_[b]);
    groups.push_back(groups_[b]);
  }
  return std::make_unique<LinearMatroid>(prime_, dim_, std::move(vecs), std::move(groups));
}

// ---------------------------------------------------------------------------
// Graphic matroid

namespace {

class GraphicSketch final : public IndepSketch {
 public:
  explicit GraphicSketch(const GraphicMatroid* m) : m_(m), parent_(m->vertices()) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  bool can_add(int e) const override {
    if (ids_.has(e) || groups_.has(m_->parallel_group(e))) return false;
    auto [u, v] = m_->edge(e);
    return root(u) != root(v);
  }

  void add(int e) override {
    auto [u, v] = m_->edge(e);
    int ru = root(u), rv = root(v);
    require(ru != rv && !ids_.has(e), Error::Kind::Internal, "sketch add on cycle edge");
    parent_[ru] = rv;
    ids_.put(e);
    groups_.put(m_->parallel_group(e));
    ++count_;
  }

  void reset() override {
    std::iota(parent_.begin(), parent_.end(), 0);
    ids_.clear();
    groups_.clear();
    count_ = 0;
  }

 private:
  int root(int v) const {
    while (parent_[v] != v) v = parent_[v];
    return v;
  }

  const GraphicMatroid* m_;
  std::vector<int> parent_;
  IdTracker ids_;
  IdTracker groups_;
};

}  // namespace

GraphicMatroid::GraphicMatroid(int vertices, std::vector<std::pair<int, int>> edges,
                               std::vector<int> groups)
    : Matroid(static_cast<int>(edges.size())),
      vertices_(vertices),
      edges_(std::move(edges)),
      groups_(std::move(groups)) {
  require(vertices_ >= 1, Error::Kind::Argument, "graphic matroid needs vertices");
  if (groups_.empty()) groups_ = default_groups(ground_size_);
  require(static_cast<int>(groups_.size()) == ground_size_, Error::Kind::Argument,
          "group table size mismatch");
  for (auto& [u, v] : edges_)
    require(u >= 0 && u < vertices_ && v >= 0 && v < vertices_, Error::Kind::Argument,
            "edge endpoint out of range");
}

std::unique_ptr<IndepSketch> GraphicMatroid::make_sketch() const {
  return std::make_unique<GraphicSketch>(this);
}

std::unique_ptr<Matroid> GraphicMatroid::replicate(const std::vector<int>& base_ids) const {
  std::vector<std::pair<int, int>> edges;
  std::vector<int> groups;
  for (int b : base_ids) {
    check_elements(std::span<const int>(&b, 1));
    edges.push_back(edges_[b]);
    groups.push_back(groups_[b]);
  }
  return std::make_unique<GraphicMatroid>(vertices_, std::move(edges), std::move(groups));
}

// ---------------------------------------------------------------------------
// Uniform matroid

namespace {

class UniformSketch final : public IndepSketch {
 public:
  explicit UniformSketch(const UniformMatroid* m) : m_(m) {}

  bool can_add(int e) const override {
    if (ids_.has(e) || groups_.has(m_->parallel_group(e))) return false;
    return count_ < m_->uniform_rank();
  }

  void add(int e) override {
    require(can_add(e), Error::Kind::Internal, "sketch add beyond uniform rank");
    ids_.put(e);
    groups_.put(m_->parallel_group(e));
    ++count_;
  }

  void reset() override {
    ids_.clear();
    groups_.clear();
    count_ = 0;
  }

 private:
  const UniformMatroid* m_;
  IdTracker ids_;
  IdTracker groups_;
};

}  // namespace

UniformMatroid::UniformMatroid(int rank, int ground, std::vector<int> groups)
    : Matroid(ground), rank_(rank), groups_(std::move(groups)) {
  require(rank_ >= 0, Error::Kind::Argument, "negative uniform rank");
  if (groups_.empty()) groups_ = default_groups(ground_size_);
  require(static_cast<int>(groups_.size()) == ground_size_, Error::Kind::Argument,
          "group table size mismatch");
}

std::unique_ptr<IndepSketch> UniformMatroid::make_sketch() const {
  return std::make_unique<UniformSketch>(this);
}

std::unique_ptr<Matroid> UniformMatroid::replicate(const std::vector<int>& base_ids) const {
  std::vector<int> groups;
  for (int b : base_ids) {
    check_elements(std::span<const int>(&b, 1));
    groups.push_back(groups_[b]);
  }
  return std::make_unique<UniformMatroid>(rank_, static_cast<int>(base_ids.size()),
                                          std::move(groups));
}

}  // namespace rota
