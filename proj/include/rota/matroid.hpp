#pragma once

#include <atomic>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rota/common.hpp"

namespace rota {

/// Incrementally grown independent set. can_add answers whether the set
/// stays independent when e joins; add commits. Repeated ids and elements
/// sharing a parallel group are rejected.
class IndepSketch {
 public:
  virtual ~IndepSketch() = default;
  virtual bool can_add(int e) const = 0;
  virtual void add(int e) = 0;
  virtual void reset() = 0;
  int count() const { return count_; }

 protected:
  int count_ = 0;
};

class Matroid {
 public:
  virtual ~Matroid() = default;

  int ground_size() const { return ground_size_; }
  int full_rank() const;
  virtual std::unique_ptr<IndepSketch> make_sketch() const = 0;
  virtual std::string kind() const = 0;
  virtual int parallel_group(int e) const = 0;

  /// Copy where element i behaves like base_ids[i] of this matroid, and any
  /// two copies of the same base element are pairwise dependent.
  virtual std::unique_ptr<Matroid> replicate(const std::vector<int>& base_ids) const = 0;

  bool is_independent(std::span<const int> s) const;
  int rank(std::span<const int> s) const;
  /// All elements whose addition to s does not raise its rank.
  IntSet closure(std::span<const int> s) const;
  /// Independent s* with s <= s* <= s+t and |s*| >= |t|; s, t must be independent.
  IntSet augment(std::span<const int> s, std::span<const int> t) const;

  void check_elements(std::span<const int> s) const;

 protected:
  explicit Matroid(int ground) : ground_size_(ground) {}
  int ground_size_;
  // lazily cached; atomic so concurrent readers are safe (recomputation is
  // idempotent)
  mutable std::atomic<int> full_rank_{-1};
};

/// Column vectors over GF(p), p prime. Equal vectors are parallel on their
/// own; group ids additionally tie duplicated elements together.
class LinearMatroid final : public Matroid {
 public:
  LinearMatroid(int prime, int dim, std::vector<std::vector<int>> vectors,
                std::vector<int> groups = {});

  int prime() const { return prime_; }
  int dim() const { return dim_; }
  const std::vector<int>& vec(int e) const { return vectors_[e]; }
  int parallel_group(int e) const override { return groups_[e]; }
  std::unique_ptr<IndepSketch> make_sketch() const override;
  std::unique_ptr<Matroid> replicate(const std::vector<int>& base_ids) const override;
  std::string kind() const override { return "linear"; }

 private:
  int prime_;
  int dim_;
  std::vector<std::vector<int>> vectors_;
  std::vector<int> groups_;
};

/// Edges of a multigraph; a set is independent iff it is a forest.
class GraphicMatroid final : public Matroid {
 public:
  GraphicMatroid(int vertices, std::vector<std::pair<int, int>> edges,
                 std::vector<int> groups = {});

  int vertices() const { return vertices_; }
  std::pair<int, int> edge(int e) const { return edges_[e]; }
  int parallel_group(int e) const override { return groups_[e]; }
  std::unique_ptr<IndepSketch> make_sketch() const override;
  std::unique_ptr<Matroid> replicate(const std::vector<int>& base_ids) const override;
  std::string kind() const override { return "graphic"; }

 private:
  int vertices_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> groups_;
};

/// Independent iff at most `rank` elements, all from distinct groups.
class UniformMatroid final : public Matroid {
 public:
  UniformMatroid(int rank, int ground, std::vector<int> groups = {});

  int uniform_rank() const { return rank_; }
  int parallel_group(int e) const override { return groups_[e]; }
  std::unique_ptr<IndepSketch> make_sketch() const override;
  std::unique_ptr<Matroid> replicate(const std::vector<int>& base_ids) const override;
  std::string kind() const override { return "uniform"; }

 private:
  int rank_;
  std::vector<int> groups_;
};

bool is_prime(int p);

}  // namespace rota
