#include "rota/verify.hpp"

namespace rota {

namespace {

void check_transversal(const ColouredInstance& inst, const IntSet& basis, int index,
                       VerifyReport& rep) {
  std::string name = "basis " + std::to_string(index);
  if (static_cast<int>(basis.size()) != inst.n) {
    rep.flag(name + ": size " + std::to_string(basis.size()) + " != n");
    return;
  }
  std::vector<char> used(inst.n, 0);
  for (int e : basis) {
    if (e < 0 || e >= inst.ground_size()) {
      rep.flag(name + ": unknown element " + std::to_string(e));
      return;
    }
    int c = inst.colour_of(e);
    if (used[c]) {
      rep.flag(name + ": colour " + std::to_string(c + 1) + " repeated (element " +
               std::to_string(inst.external(e)) + ")");
      return;
    }
    used[c] = 1;
  }
  if (!inst.matroid->is_independent(basis))
    rep.flag(name + ": dependent set (independence violation)");
}

}  // namespace

VerifyReport verify_pack_solution(const ColouredInstance& inst,
                                  const std::vector<IntSet>& bases) {
  VerifyReport rep;
  std::vector<int> owner(inst.ground_size(), -1);
  for (std::size_t i = 0; i < bases.size(); ++i) {
    check_transversal(inst, bases[i], static_cast<int>(i), rep);
    for (int e : bases[i]) {
      if (e < 0 || e >= inst.ground_size()) continue;
      if (owner[e] >= 0)
        rep.flag("element " + std::to_string(inst.external(e)) + " repeated across bases " +
                 std::to_string(owner[e]) + " and " + std::to_string(i));
      owner[e] = static_cast<int>(i);
    }
  }
  return rep;
}

VerifyReport verify_cover_solution(const ColouredInstance& inst,
                                   const std::vector<IntSet>& bases) {
  VerifyReport rep;
  std::vector<char> covered(inst.ground_size(), 0);
  for (std::size_t i = 0; i < bases.size(); ++i) {
    check_transversal(inst, bases[i], static_cast<int>(i), rep);
    for (int e : bases[i])
      if (e >= 0 && e < inst.ground_size()) covered[e] = 1;
  }
  for (int e = 0; e < inst.ground_size(); ++e) {
    if (!covered[e]) {
      rep.flag("element " + std::to_string(inst.external(e)) + " is not covered");
      break;
    }
  }
  return rep;
}

}  // namespace rota
