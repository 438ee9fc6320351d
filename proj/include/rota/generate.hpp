#pragma once

#include <cstdint>

#include "rota/instance.hpp"

namespace rota {

enum class InstanceKind { Linear, Graphic, Uniform };

InstanceKind kind_from_string(const std::string& s);
std::string kind_to_string(InstanceKind k);

/// Seeded random instance. Linear: n uniform bases of GF(p)^n. Graphic: n
/// uniform spanning trees of the complete graph on n+1 vertices. Uniform:
/// rank-n uniform matroid on n^2 elements.
ColouredInstance generate_instance(InstanceKind kind, int n, int p_or_v, std::uint64_t seed,
                                   int max_n = kDefaultMaxRank);

}  // namespace rota
