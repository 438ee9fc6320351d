#pragma once

#include <string>

#include <json.hpp>

#include "rota/cover.hpp"
#include "rota/pack.hpp"
#include "rota/partition.hpp"

namespace rota {

/// Solution payloads carry external element ids.
nlohmann::json pack_report(const ColouredInstance& inst, const PackSolution& sol,
                           const PackConfig& pcfg, const ReservoirConfig& rcfg);
nlohmann::json cover_report(const ColouredInstance& inst, const CoverSolution& sol,
                            const CoverConfig& cfg);
nlohmann::json deadlock_report_json(const ColouredInstance& inst, const DeadlockReport& rep);

/// Envelope fields shared by every run report.
void attach_run_fields(nlohmann::json& j, const ColouredInstance& inst,
                       const std::string& mode, long long timing_ms);

/// Reads "bases" (external ids) back into internal ids.
std::vector<IntSet> bases_from_json(const ColouredInstance& inst, const nlohmann::json& j);

/// Audit-log form of a switch chain (external ids).
nlohmann::json switch_chain_json(const ColouredInstance& inst, const SwitchChain& chain);

std::string version_string();

}  // namespace rota
