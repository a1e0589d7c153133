#pragma once

#include "rfmr/analysis.hpp"
#include "rfmr/asep.hpp"
#include "rfmr/consensus.hpp"
#include "rfmr/entrainment.hpp"
#include "rfmr/formation.hpp"

#include <nlohmann/json_fwd.hpp>
#include <string>

namespace rfmr {

using nlohmann::json;

// Time series go to CSV, one row per sample; reports go to JSON. All writers
// format doubles with %.17g so identical runs are byte-identical.

void write_trajectory_csv(const std::string& path, const Trajectory& traj);
void write_limit_cycle_csv(const std::string& path, const PeriodicVerdict& verdict);
void write_lyapunov_csv(const std::string& path, const ConsensusReport& report);
void write_angles_csv(const std::string& path, const FormationRun& run);
void write_positions_csv(const std::string& path, const FormationRun& run, double radius);
void write_density_csv(const std::string& path, const AsepResult& result);

json rates_to_json(const RateSchedule& rates);
RateSchedule rates_from_json(const json& j);

json config_to_json(const IntegrationConfig& cfg);
json trajectory_to_json(const Trajectory& traj, const RateSchedule& rates,
                        const IntegrationConfig& cfg);
json equilibrium_to_json(const EquilibriumPoint& eq, const RateSchedule& rates);
json consensus_to_json(const ConsensusReport& report, double lambda_c);
json entrainment_to_json(const PeriodicVerdict& verdict);
json formation_to_json(const FormationRun& run);
json asep_to_json(const AsepResult& result, const MCConfig& cfg);

void write_json(const std::string& path, const json& j);

}  // namespace rfmr
