#include "wattribute/simkit/generator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include <json.hpp>

#include "wattribute/error.hpp"
#include "wattribute/telemetry/stream.hpp"

namespace wattribute::simkit {

namespace {

using aggregation::FeatureKind;
using telemetry::PowerReading;
using telemetry::ProcessSample;
using telemetry::TelemetryEvent;
using telemetry::Timestamp;

// Piece of a schedule on which every rate moves linearly from `from` to `to`.
struct Segment {
    double begin = 0.0;  // seconds since process start
    double length = 0.0;
    std::vector<double> from, to;
};

// Rate and integral of one process, feature-major vectors in ScenarioSpec::feature_names() order.
class Profile {
public:
    Profile(const ProcessSpec& p, const std::vector<std::string>& features, const std::vector<FeatureKind>& kinds)
        : start_(p.start_s) {
        const std::size_t m = features.size();
        // Resolve compute/idle levels; gauges inherit the previous level when omitted.
        std::vector<std::vector<double>> level(p.phases.size());
        std::vector<double> gauge_carry(m, 0.0);
        for (std::size_t i = 0; i < p.phases.size(); ++i) {
            if (p.phases[i].kind == PhaseKind::transition) continue;
            level[i].assign(m, 0.0);
            for (std::size_t j = 0; j < m; ++j) {
                auto it = p.phases[i].rates.find(features[j]);
                if (it != p.phases[i].rates.end()) level[i][j] = it->second;
                else if (kinds[j] == FeatureKind::gauge) level[i][j] = gauge_carry[j];
                if (kinds[j] == FeatureKind::gauge) gauge_carry[j] = level[i][j];
            }
        }
        const auto neighbour = [&](std::size_t i, int dir) {
            for (auto k = static_cast<std::ptrdiff_t>(i) + dir; k >= 0 && k < static_cast<std::ptrdiff_t>(p.phases.size());
                 k += dir) {
                if (p.phases[static_cast<std::size_t>(k)].kind != PhaseKind::transition) return level[static_cast<std::size_t>(k)];
            }
            return std::vector<double>(m, 0.0);
        };
        double t = 0.0;
        for (std::size_t i = 0; i < p.phases.size(); ++i) {
            Segment s;
            s.begin = t;
            s.length = p.phases[i].duration_s;
            if (p.phases[i].kind == PhaseKind::transition) {
                s.from = neighbour(i, -1);
                s.to = neighbour(i, +1);
            } else {
                s.from = s.to = level[i];
            }
            t += s.length;
            segments_.push_back(std::move(s));
        }
    }

    double start() const { return start_; }

    std::vector<double> rate(double t_abs) const {
        const double t = t_abs - start_;
        const Segment& s = locate(t);
        const double u = std::clamp((t - s.begin) / s.length, 0.0, 1.0);
        std::vector<double> out(s.from.size());
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = s.from[j] + (s.to[j] - s.from[j]) * u;
        return out;
    }

    // Integral of the rates from process start to t_abs.
    std::vector<double> integral(double t_abs) const {
        const double t = std::max(0.0, t_abs - start_);
        std::vector<double> out(segments_.empty() ? 0 : segments_.front().from.size(), 0.0);
        for (const auto& s : segments_) {
            const double dt = std::min(t - s.begin, s.length);
            if (dt <= 0.0) break;
            for (std::size_t j = 0; j < out.size(); ++j)
                out[j] += dt * (s.from[j] + (s.to[j] - s.from[j]) * dt / (2.0 * s.length));
        }
        return out;
    }

private:
    // Left-continuous: an instant on a boundary belongs to the segment that ends there,
    // matching the interval (kP, (k+1)P] whose counters that segment drives.
    const Segment& locate(double t) const {
        for (const auto& s : segments_)
            if (t <= s.begin + s.length + 1e-9) return s;
        return segments_.back();
    }

    double start_;
    std::vector<Segment> segments_;
};

}  // namespace

Simulation generate(const ScenarioSpec& spec) {
    spec.validate();
    const std::vector<std::string> features = spec.feature_names();
    std::vector<FeatureKind> kinds;
    std::vector<double> coef;
    for (const auto& f : features) {
        kinds.push_back(spec.kind_of(f));
        auto it = spec.coefficients.find(f);
        coef.push_back(it != spec.coefficients.end() ? it->second : 0.0);
    }
    const std::size_t m = features.size();

    const auto intervals = static_cast<std::int64_t>(std::llround(spec.duration_s / spec.period_s));
    const auto per_interval = static_cast<std::int64_t>(std::llround(spec.power_hz * spec.period_s));
    const auto period_ns = static_cast<std::int64_t>(std::llround(spec.period_s * 1e9));
    const auto seconds = [&](std::int64_t ns) { return static_cast<double>(ns) * 1e-9; };
    const auto reading_ns = [&](std::int64_t k, std::int64_t i) { return k * period_ns + i * period_ns / per_interval; };

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> unit_normal(0.0, 1.0);

    std::vector<Profile> profiles;
    std::vector<std::int64_t> start_ns;
    for (const auto& p : spec.processes) {
        profiles.emplace_back(p, features, kinds);
        start_ns.push_back(static_cast<std::int64_t>(std::llround(p.start_s * 1e9)));
    }

    Simulation sim;
    sim.truth.period = std::chrono::nanoseconds(period_ns);
    sim.truth.baseline_w = spec.baseline_w;
    sim.truth.coefficients = spec.coefficients;

    // gauges[r][k]: reported gauge snapshot of process r at sweep k (held over the interval it closes).
    std::vector<std::vector<std::vector<double>>> gauges(profiles.size());
    std::vector<TelemetryEvent> sweeps;
    for (std::int64_t k = 0; k <= intervals; ++k) {
        const std::int64_t t_ns = k * period_ns;
        for (std::size_t r = 0; r < profiles.size(); ++r) {
            const auto& proc = spec.processes[r];
            auto& snaps = gauges[r];
            snaps.emplace_back(m, 0.0);
            if (t_ns < start_ns[r]) continue;
            const auto level = profiles[r].rate(seconds(t_ns));
            const auto cum = profiles[r].integral(seconds(t_ns));
            ProcessSample s;
            s.timestamp = Timestamp(t_ns);
            s.key = {proc.pid, start_ns[r]};
            s.name = proc.name;
            for (std::size_t j = 0; j < m; ++j) {
                if (kinds[j] == FeatureKind::gauge) {
                    double g = level[j];
                    if (spec.gauge_jitter > 0.0) g *= 1.0 + spec.gauge_jitter * unit_normal(rng);
                    g = std::floor(std::max(0.0, g));
                    snaps.back()[j] = g;
                    s.counters[features[j]] = static_cast<std::int64_t>(g);
                } else {
                    s.counters[features[j]] = static_cast<std::int64_t>(std::floor(cum[j]));
                }
            }
            sweeps.emplace_back(std::move(s));
        }
    }

    std::vector<TelemetryEvent> power;
    const double slot_j = spec.period_s / static_cast<double>(per_interval);
    for (std::int64_t k = 0; k < intervals; ++k) {
        TrueInterval truth;
        truth.index = k;
        truth.baseline_j = spec.baseline_w * spec.period_s;
        std::vector<double> proc_j(profiles.size(), 0.0);
        std::vector<bool> present(profiles.size(), false);
        for (std::int64_t i = 1; i <= per_interval; ++i) {
            const std::int64_t t_ns = reading_ns(k, i);
            const double t = seconds(t_ns);
            double watts = spec.baseline_w;
            for (std::size_t r = 0; r < profiles.size(); ++r) {
                if (t_ns <= start_ns[r]) continue;
                const auto rates = profiles[r].rate(t);
                double contrib = 0.0;
                for (std::size_t j = 0; j < m; ++j) {
                    const double x = kinds[j] == FeatureKind::gauge ? gauges[r][static_cast<std::size_t>(k + 1)][j] : rates[j];
                    contrib += coef[j] * x;
                }
                watts += contrib;
                proc_j[r] += contrib * slot_j;
                present[r] = true;
            }
            if (spec.noise_std_w > 0.0) watts += spec.noise_std_w * unit_normal(rng);
            power.emplace_back(PowerReading{Timestamp(t_ns), std::max(0.0, watts)});
        }
        truth.total_j = truth.baseline_j;
        for (std::size_t r = 0; r < profiles.size(); ++r) {
            if (!present[r]) continue;
            const auto& proc = spec.processes[r];
            truth.processes.push_back({{proc.pid, start_ns[r]},
                                       proc.name,
                                       proc_j[r]});
            truth.total_j += proc_j[r];
        }
        sim.truth.intervals.push_back(std::move(truth));
    }

    sim.events = telemetry::merge_ordered(std::move(power), std::move(sweeps));
    return sim;
}

std::string ground_truth_to_json(const GroundTruth& truth) {
    nlohmann::ordered_json j;
    j["period_ns"] = truth.period.count();
    j["baseline_w"] = truth.baseline_w;
    j["coefficients"] = truth.coefficients;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& iv : truth.intervals) {
        auto procs = nlohmann::ordered_json::array();
        for (const auto& p : iv.processes)
            procs.push_back({{"pid", p.key.pid}, {"start_id", p.key.start_id}, {"name", p.name}, {"energy_j", p.energy_j}});
        arr.push_back({{"t", iv.index}, {"baseline_j", iv.baseline_j}, {"total_j", iv.total_j}, {"processes", std::move(procs)}});
    }
    j["intervals"] = std::move(arr);
    return j.dump() + "\n";
}

void write_ground_truth(const GroundTruth& truth, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << ground_truth_to_json(truth);
    if (!out) throw WriteError("cannot write ground truth " + path.string(), 0);
}

}  // namespace wattribute::simkit
