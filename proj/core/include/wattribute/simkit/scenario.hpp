#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "wattribute/aggregation/feature_schema.hpp"

namespace wattribute::simkit {

enum class PhaseKind { compute, idle, transition };

std::string_view to_string(PhaseKind kind);

/// Rates are units per second for cumulative features and levels for gauges.
/// A transition ramps linearly from the preceding non-transition phase to the
/// following one (zero at either end of the schedule). Gauges missing from a
/// phase keep the previous phase's level; missing cumulative rates are zero.
struct Phase {
    PhaseKind kind = PhaseKind::idle;
    double duration_s = 0.0;
    std::map<std::string, double> rates;
};

struct ProcessSpec {
    std::string name;
    std::int64_t pid = 0;
    double start_s = 0.0;  // the process exists for t >= start_s
    std::vector<Phase> phases;
};

/// Ground-truth scenario: node power at time t is
///   baseline_w + sum over live processes of coefficients . rates(t) + noise.
struct ScenarioSpec {
    double duration_s = 60.0;
    double period_s = 1.0;
    double power_hz = 4.0;
    double baseline_w = 50.0;
    double noise_std_w = 0.0;
    double gauge_jitter = 0.0;  // relative std of each gauge snapshot
    std::uint64_t seed = 1;
    std::map<std::string, double> coefficients;  // watts per unit/s (gauge: per unit)
    std::map<std::string, aggregation::FeatureKind> feature_kinds;  // overrides of default_kind
    std::vector<ProcessSpec> processes;

    aggregation::FeatureKind kind_of(const std::string& feature) const;
    /// Every feature named by a coefficient or a phase rate, sorted.
    std::vector<std::string> feature_names() const;

    /// Throws ValidationError, e.g. "schedule gap" when phases end before duration_s.
    void validate() const;
};

/// Documented key set:
///   duration_s, period_s, power_hz, baseline_w, noise_std_w, gauge_jitter, seed,
///   coefficients{feature: w}, feature_kinds{feature: "gauge"|"cumulative"},
///   processes[{name, pid, start_s, phases[{kind, duration_s, rates{feature: r}}]}]
/// Throws ParseError on syntax or unknown keys, ValidationError on bad values.
ScenarioSpec parse_scenario(std::string_view json_text);
ScenarioSpec load_scenario(const std::filesystem::path& path);

}  // namespace wattribute::simkit
