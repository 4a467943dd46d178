#pragma once

#include <optional>
#include <string>

#include "prefal/coloring.hpp"
#include "prefal/prefactor.hpp"
#include "prefal/sturmian.hpp"

// Single-header nlohmann json, vendored.
#include <json.hpp>

namespace prefal {

using json = nlohmann::json;

std::string verdict_string(const HierarchyVerdict& v);
std::string sturmian_verdict_string(const SturmianVerdict& v);

json analysis_json(const UPAnalysis& a, std::string_view glyphs);
json chain_json(const DerivedChain& chain);
json frontier_json(const FrontierReport& report);

/// The per-word report: {schema, spec, up_set, N, up_prime, phi,
/// completeness, nu, cycle, verdict, bounds} plus the Sturmian verdict and
/// normal form when the word has one. Deterministic: keys sort, no
/// timestamps.
json word_report(const std::string& spec, const HierarchyResult& result,
                 const ChainOptions& opt,
                 const std::optional<SturmianVerdict>& sturm);

}  // namespace prefal
