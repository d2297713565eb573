#pragma once

#include <json.hpp>

#include "phasekit/applications.hpp"
#include "phasekit/cost.hpp"
#include "phasekit/optstate.hpp"
#include "phasekit/povm.hpp"
#include "phasekit/simulate.hpp"
#include "phasekit/spectrum.hpp"

namespace phasekit {

// JSON wire formats.  Networks are plain arrays of positive integers;
// canonical models omit the phase map (phases are absorbed into the basis).

void to_json(nlohmann::json& j, const PhaseNetwork& network);
void from_json(const nlohmann::json& j, PhaseNetwork& network);

void to_json(nlohmann::json& j, const SpectrumTable& table);

void to_json(nlohmann::json& j, const CanonicalModel& model);
void from_json(const nlohmann::json& j, CanonicalModel& model);

void to_json(nlohmann::json& j, const CostSpec& cost);
void from_json(const nlohmann::json& j, CostSpec& cost);

void to_json(nlohmann::json& j, const SeedMatrix& seed);
void from_json(const nlohmann::json& j, SeedMatrix& seed);

void to_json(nlohmann::json& j, const SeedValidation& report);
void to_json(nlohmann::json& j, const DiscreteMeasurement& measurement);
void to_json(nlohmann::json& j, const OptimalStateResult& result);
void to_json(nlohmann::json& j, const TrialReport& report);
void to_json(nlohmann::json& j, const DihedralReport& report);
void to_json(nlohmann::json& j, const PhaseCircuit& circuit);

void from_json(const nlohmann::json& j, PriorSpec& prior);

}  // namespace phasekit
