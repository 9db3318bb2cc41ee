#include "wattribute/simkit/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wattribute/error.hpp"

namespace wattribute::simkit {

namespace {

using json = nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) throw ParseError(0, "unknown key '" + key + "' in " + where);
    }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw ParseError(0, std::string("key '") + key + "' has the wrong type");
    }
}

template <typename T>
T get_required(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ParseError(0, std::string("missing key '") + key + "' in " + where);
    return get_or<T>(obj, key, T{});
}

PhaseKind phase_kind_from(const std::string& text) {
    if (text == "compute") return PhaseKind::compute;
    if (text == "idle") return PhaseKind::idle;
    if (text == "transition") return PhaseKind::transition;
    throw ValidationError("unknown phase kind '" + text + "'");
}

bool is_whole(double v) { return std::abs(v - std::round(v)) <= 1e-9 * std::max(1.0, std::abs(v)); }

}  // namespace

std::string_view to_string(PhaseKind kind) {
    switch (kind) {
        case PhaseKind::compute: return "compute";
        case PhaseKind::idle: return "idle";
        case PhaseKind::transition: return "transition";
    }
    return "idle";
}

aggregation::FeatureKind ScenarioSpec::kind_of(const std::string& feature) const {
    auto it = feature_kinds.find(feature);
    return it != feature_kinds.end() ? it->second : aggregation::default_kind(feature);
}

std::vector<std::string> ScenarioSpec::feature_names() const {
    std::set<std::string> names;
    for (const auto& [name, w] : coefficients) names.insert(name);
    for (const auto& p : processes)
        for (const auto& ph : p.phases)
            for (const auto& [name, r] : ph.rates) names.insert(name);
    return {names.begin(), names.end()};
}

void ScenarioSpec::validate() const {
    const auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
    if (!(duration_s > 0.0) || !std::isfinite(duration_s)) throw ValidationError("duration_s must be > 0");
    if (!(period_s > 0.0) || !std::isfinite(period_s)) throw ValidationError("period_s must be > 0");
    if (!(power_hz >= 1.0)) throw ValidationError("power_hz must be >= 1");
    if (!is_whole(duration_s / period_s)) throw ValidationError("duration_s must be a whole number of periods");
    if (!is_whole(power_hz * period_s)) throw ValidationError("power_hz * period_s must be a whole number");
    if (!finite_nonneg(baseline_w)) throw ValidationError("baseline_w must be >= 0");
    if (!finite_nonneg(noise_std_w)) throw ValidationError("noise_std_w must be >= 0");
    if (!finite_nonneg(gauge_jitter)) throw ValidationError("gauge_jitter must be >= 0");
    for (const auto& [name, w] : coefficients)
        if (!std::isfinite(w)) throw ValidationError("coefficient '" + name + "' is not finite");

    std::set<std::int64_t> pids;
    for (const auto& p : processes) {
        if (!pids.insert(p.pid).second) throw ValidationError("duplicate pid " + std::to_string(p.pid));
        if (!finite_nonneg(p.start_s) || p.start_s >= duration_s)
            throw ValidationError("process '" + p.name + "' start_s must lie in [0, duration_s)");
        double covered = p.start_s;
        for (const auto& ph : p.phases) {
            if (!(ph.duration_s > 0.0) || !std::isfinite(ph.duration_s))
                throw ValidationError("process '" + p.name + "' has a phase with non-positive duration");
            for (const auto& [name, r] : ph.rates)
                if (!finite_nonneg(r)) throw ValidationError("rate '" + name + "' of '" + p.name + "' must be >= 0");
            covered += ph.duration_s;
        }
        if (covered + 1e-9 < duration_s)
            throw ValidationError("schedule gap: process '" + p.name + "' phases end at " + std::to_string(covered) +
                                  " s, before duration " + std::to_string(duration_s) + " s");
    }
}

ScenarioSpec parse_scenario(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(0, std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ParseError(0, "scenario must be a JSON object");
    reject_unknown(root,
                   {"duration_s", "period_s", "power_hz", "baseline_w", "noise_std_w", "gauge_jitter", "seed",
                    "coefficients", "feature_kinds", "processes"},
                   "scenario");

    ScenarioSpec spec;
    spec.duration_s = get_required<double>(root, "duration_s", "scenario");
    spec.period_s = get_or(root, "period_s", spec.period_s);
    spec.power_hz = get_or(root, "power_hz", spec.power_hz);
    spec.baseline_w = get_or(root, "baseline_w", spec.baseline_w);
    spec.noise_std_w = get_or(root, "noise_std_w", spec.noise_std_w);
    spec.gauge_jitter = get_or(root, "gauge_jitter", spec.gauge_jitter);
    spec.seed = get_or<std::uint64_t>(root, "seed", spec.seed);
    spec.coefficients = get_or<std::map<std::string, double>>(root, "coefficients", {});
    for (const auto& [name, kind] : get_or<std::map<std::string, std::string>>(root, "feature_kinds", {}))
        spec.feature_kinds[name] = aggregation::feature_kind_from_string(kind);

    for (const auto& p : get_or<json>(root, "processes", json::array())) {
        reject_unknown(p, {"name", "pid", "start_s", "phases"}, "process");
        ProcessSpec ps;
        ps.name = get_required<std::string>(p, "name", "process");
        ps.pid = get_required<std::int64_t>(p, "pid", "process");
        ps.start_s = get_or(p, "start_s", 0.0);
        for (const auto& ph : get_required<json>(p, "phases", "process")) {
            reject_unknown(ph, {"kind", "duration_s", "rates"}, "phase");
            Phase phase;
            phase.kind = phase_kind_from(get_required<std::string>(ph, "kind", "phase"));
            phase.duration_s = get_required<double>(ph, "duration_s", "phase");
            phase.rates = get_or<std::map<std::string, double>>(ph, "rates", {});
            ps.phases.push_back(std::move(phase));
        }
        spec.processes.push_back(std::move(ps));
    }
    spec.validate();
    return spec;
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open scenario " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace wattribute::simkit
