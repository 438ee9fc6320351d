#pragma once

#include "rota/instance.hpp"

namespace rota {

struct VerifyReport {
  bool pass = true;
  std::vector<std::string> problems;

  void flag(const std::string& msg) {
    pass = false;
    problems.push_back(msg);
  }
};

/// Pack semantics: bases pairwise disjoint, each one element per colour,
/// independent, size n.
VerifyReport verify_pack_solution(const ColouredInstance& inst,
                                  const std::vector<IntSet>& bases);

/// Cover semantics: each basis transversal; union contains the ground set.
VerifyReport verify_cover_solution(const ColouredInstance& inst,
                                   const std::vector<IntSet>& bases);

}  // namespace rota
