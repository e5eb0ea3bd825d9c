#pragma once

// JSON forms of the public value types. ModelParams reads back from
// {"alpha", "j11", "j22", "j12"}; everything else is write-only.

#include <nlohmann/json.hpp>

#include "cbl/exact.hpp"
#include "cbl/limit_law.hpp"
#include "cbl/mc.hpp"
#include "cbl/model.hpp"
#include "cbl/spectral.hpp"

namespace cbl {

void to_json(nlohmann::json& j, const ModelParams& p);
/// Requires all four keys as numbers and calls ModelParams::validate().
void from_json(const nlohmann::json& j, ModelParams& p);

void to_json(nlohmann::json& j, const CriticalityReport& r);
void to_json(nlohmann::json& j, const Hessian& h);
void to_json(nlohmann::json& j, const SpectralData& s);
void to_json(nlohmann::json& j, const GTildeCoefficients& c);
void to_json(nlohmann::json& j, const TransformedModel& tm);
void to_json(nlohmann::json& j, const SystemSize& sz);
void to_json(nlohmann::json& j, const EmpiricalSummary& s);
void to_json(nlohmann::json& j, const LimitMoments& m);
void to_json(nlohmann::json& j, const ChainConfig& c);

}  // namespace cbl
