#include "rota/report.hpp"

#include <map>

namespace rota {

namespace {

nlohmann::json bases_to_json(const ColouredInstance& inst, const std::vector<IntSet>& bases) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& b : bases) {
    nlohmann::json one = nlohmann::json::array();
    for (int e : b) one.push_back(inst.external(e));
    arr.push_back(std::move(one));
  }
  return arr;
}

}  // namespace

std::string version_string() { return "0.1.0"; }

void attach_run_fields(nlohmann::json& j, const ColouredInstance& inst,
                       const std::string& mode, long long timing_ms) {
  j["mode"] = mode;
  j["n"] = inst.n;
  j["instance_digest"] = instance_digest(inst);
  j["timing_ms"] = timing_ms;
  j["version"] = version_string();
}

nlohmann::json pack_report(const ColouredInstance& inst, const PackSolution& sol,
                           const PackConfig& pcfg, const ReservoirConfig& rcfg) {
  nlohmann::json j;
  j["bases_found"] = sol.bases.size();
  j["bases"] = bases_to_json(inst, sol.bases);
  j["members_dropped"] = sol.members_dropped;
  j["reservoir"] = {{"eta", rcfg.eta},
                    {"seed", rcfg.seed},
                    {"size", sample_reservoir(inst, rcfg).size()}};
  j["cascade_stats"] = {{"improvements", sol.stats.improvements},
                        {"max_chain", sol.stats.max_chain},
                        {"growth_factors", sol.stats.growth_factors},
                        {"reservoir_used", sol.stats.reservoir_used},
                        {"reservoir_bound", sol.stats.reservoir_bound},
                        {"covered_initial", sol.stats.covered_initial},
                        {"covered_final", sol.stats.covered_final},
                        {"budget_exhausted", sol.stats.budget_exhausted},
                        {"exact_fallback", sol.stats.exact_fallback_used}};
  j["floors"] = {{"half_n", (inst.n + 1) / 2},
                 {"target", static_cast<int>(std::ceil((1.0 - pcfg.epsilon) * inst.n - 1e-9))}};
  j["config"] = {{"epsilon", pcfg.epsilon},
                 {"sigma", pcfg.sigma_eff()},
                 {"L", pcfg.cost_l_eff()},
                 {"ell", pcfg.ell},
                 {"r", pcfg.r}};
  return j;
}

nlohmann::json cover_report(const ColouredInstance& inst, const CoverSolution& sol,
                            const CoverConfig& cfg) {
  nlohmann::json j;
  j["count"] = sol.count;
  j["covers"] = sol.covers;
  j["partial"] = sol.partial;
  j["bases"] = bases_to_json(inst, sol.bases);
  j["phase_stats"] = {{"members", sol.stats.members},
                      {"k_main", sol.stats.k_main},
                      {"k_substituted", sol.stats.k_substituted},
                      {"member_count_warning", sol.stats.member_count_warning},
                      {"initial_uncovered", sol.stats.initial_uncovered},
                      {"final_uncovered", sol.stats.final_uncovered},
                      {"descent_steps", sol.stats.descent_steps},
                      {"balance_steps", sol.stats.balance_steps},
                      {"build_success", sol.stats.build_success},
                      {"balance_done", sol.stats.balance_done},
                      {"balance_skipped", sol.stats.balance_skipped},
                      {"residual_deadlock", sol.stats.residual_deadlock},
                      {"leftover_sets", sol.stats.leftover_sets},
                      {"merged_sets", sol.stats.merged_sets},
                      {"exact_small_fallback", sol.stats.exact_small_fallback},
                      {"colour_hist_max", sol.stats.colour_hist_max}};
  j["bounds"] = {{"two_n_minus_two", 2 * inst.n - 2},
                 {"one_plus_eps_n", (1.0 + cfg.epsilon) * inst.n}};
  j["config"] = {{"epsilon", cfg.epsilon},
                 {"lambda", cfg.lambda_eff()},
                 {"nu", cfg.nu_eff()},
                 {"ell", cfg.ell},
                 {"r", cfg.r}};
  return j;
}

nlohmann::json deadlock_report_json(const ColouredInstance& inst, const DeadlockReport& rep) {
  nlohmann::json ids = nlohmann::json::array();
  for (int e : rep.deadlock) ids.push_back(inst.external(e));
  return {{"k", rep.k},
          {"deadlock", std::move(ids)},
          {"rank", rep.rank_of_deadlock},
          {"surplus", rep.surplus}};
}

nlohmann::json switch_chain_json(const ColouredInstance& inst, const SwitchChain& chain) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : chain.steps) {
    nlohmann::json rem = nlohmann::json::array(), add = nlohmann::json::array();
    for (int e : s.removed) rem.push_back(inst.external(e));
    for (int e : s.added) add.push_back(inst.external(e));
    steps.push_back({{"member", s.member}, {"removed", rem}, {"added", add}});
  }
  return {{"total_churn", chain.total_churn}, {"steps", std::move(steps)}};
}

std::vector<IntSet> bases_from_json(const ColouredInstance& inst, const nlohmann::json& j) {
  require(j.contains("bases") && j["bases"].is_array(), Error::Kind::Parse,
          "solution json lacks a 'bases' array");
  std::map<long long, int> by_external;
  for (int e = 0; e < inst.ground_size(); ++e) by_external[inst.external(e)] = e;
  std::vector<IntSet> out;
  for (const auto& arr : j["bases"]) {
    require(arr.is_array(), Error::Kind::Parse, "basis entry is not an array");
    IntSet b;
    for (const auto& v : arr) {
      require(v.is_number_integer(), Error::Kind::Parse, "basis entry holds a non-integer");
      auto it = by_external.find(v.get<long long>());
      require(it != by_external.end(), Error::Kind::Parse,
              "solution references unknown element id " + v.dump());
      set_insert(b, it->second);
    }
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace rota
