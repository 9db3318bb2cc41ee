#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "wattribute/simkit/scenario.hpp"
#include "wattribute/telemetry/types.hpp"

namespace wattribute::simkit {

struct TrueProcessEnergy {
    telemetry::ProcessKey key;
    std::string name;
    double energy_j = 0.0;
};

/// Noiseless energy of interval (index*P, (index+1)*P], measured the same way the
/// power meter sees it: mean over the interval's sampling instants times P.
struct TrueInterval {
    std::int64_t index = 0;
    double baseline_j = 0.0;
    double total_j = 0.0;  // baseline plus processes
    std::vector<TrueProcessEnergy> processes;
};

struct GroundTruth {
    std::chrono::nanoseconds period{0};
    double baseline_w = 0.0;
    std::map<std::string, double> coefficients;
    std::vector<TrueInterval> intervals;
};

struct Simulation {
    std::vector<telemetry::TelemetryEvent> events;
    GroundTruth truth;
};

/// Sweeps happen at k * period for k = 0..duration/period (one closing sweep per
/// interval plus the opening one); power is read power_hz times per second at
/// the end of each sub-slot. Deterministic for a fixed seed.
Simulation generate(const ScenarioSpec& spec);

std::string ground_truth_to_json(const GroundTruth& truth);
void write_ground_truth(const GroundTruth& truth, const std::filesystem::path& path);

}  // namespace wattribute::simkit
