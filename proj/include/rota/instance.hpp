#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "rota/matroid.hpp"

namespace rota {

inline constexpr int kDefaultMaxRank = 64;

/// Rank-n matroid whose ground set is partitioned into n colour classes,
/// each one a basis. Elements are 0..n*n-1, colours 0..n-1; external ids
/// are kept for file round-trips.
struct ColouredInstance {
  int n = 0;
  std::shared_ptr<const Matroid> matroid;
  std::vector<int> colour;                 // per element
  std::vector<std::vector<int>> classes;   // per colour, sorted element ids
  std::vector<long long> external_id;      // per element

  int ground_size() const { return n * n; }
  int colour_of(int e) const { return colour[e]; }
  const std::vector<int>& colour_class(int c) const { return classes[c]; }
  IntSet ground() const;
  void validate(int max_n = kDefaultMaxRank) const;
  long long external(int e) const { return external_id[e]; }
};

/// Builds a coloured instance from n raw bases of `base` (bases may share
/// elements; shared ones are replaced by parallel copies, one per class).
ColouredInstance build_instance(const Matroid& base,
                                const std::vector<std::vector<int>>& raw_bases,
                                int max_n = kDefaultMaxRank);

ColouredInstance parse_instance(std::istream& in, int max_n = kDefaultMaxRank);
ColouredInstance parse_instance_file(const std::string& path, int max_n = kDefaultMaxRank);
std::string serialize_instance(const ColouredInstance& inst);
void write_instance_file(const ColouredInstance& inst, const std::string& path);

/// FNV-1a over the canonical serialization.
std::string instance_digest(const ColouredInstance& inst);

}  // namespace rota
