#include "wattribute/run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wattribute/analysis/screening.hpp"
#include "wattribute/error.hpp"
#include "wattribute/estimator/model.hpp"

namespace wattribute::cli {

namespace {

using json = nlohmann::json;

void only_keys(const json& obj, std::initializer_list<std::string_view> keys, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [k, v] : obj.items()) {
        bool known = false;
        for (auto key : keys) known = known || k == key;
        if (!known) throw ConfigError("unknown config key '" + where + "." + k + "'");
    }
}

std::chrono::nanoseconds from_seconds(double s) {
    return std::chrono::nanoseconds(static_cast<std::int64_t>(std::llround(s * 1e9)));
}

telemetry::SourceKind source_kind(const std::string& s) {
    if (s == "live") return telemetry::SourceKind::live;
    if (s == "replay") return telemetry::SourceKind::replay;
    if (s == "synthetic") return telemetry::SourceKind::synthetic;
    throw ConfigError("unknown source kind '" + s + "'");
}

}  // namespace

RunConfig::RunConfig()
    : exclude_features(analysis::default_exclusions()),
      rho_min(analysis::kDefaultRhoMin),
      lambda2(estimator::kDefaultLambda2) {}

void RunConfig::validate() const {
    if (top_k < 1) throw ConfigError("top_k must be >= 1");
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ConfigError("train_fraction must lie in (0, 1)");
    if (!(rho_min >= 0.0 && rho_min <= 1.0)) throw ConfigError("rho_min must lie in [0, 1]");
    if (lambda1 && !(*lambda1 >= 0.0)) throw ConfigError("lambda1 must be >= 0");
    if (!(lambda2 >= 0.0)) throw ConfigError("lambda2 must be >= 0");
    if (!(source.power_hz >= 1.0)) throw ConfigError("power_hz must be >= 1");
    if (source.sample_period.count() <= 0) throw ConfigError("sample_period_s must be > 0");
}

RunConfig parse_run_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    only_keys(root, {"source", "features", "model", "attribution", "out_dir", "seed"}, "config");

    RunConfig cfg;
    try {
        if (auto s = root.find("source"); s != root.end()) {
            only_keys(*s, {"kind", "trace_path", "power_endpoint", "bearer_token", "power_hz", "sample_period_s",
                           "duration_s"},
                      "source");
            if (s->contains("kind")) cfg.source.kind = source_kind(s->at("kind").get<std::string>());
            cfg.source.trace_path = s->value("trace_path", cfg.source.trace_path);
            cfg.source.power_endpoint = s->value("power_endpoint", cfg.source.power_endpoint);
            if (s->contains("bearer_token")) cfg.source.bearer_token = s->at("bearer_token").get<std::string>();
            cfg.source.power_hz = s->value("power_hz", cfg.source.power_hz);
            if (s->contains("sample_period_s")) cfg.source.sample_period = from_seconds(s->at("sample_period_s").get<double>());
            if (s->contains("duration_s")) cfg.source.duration = from_seconds(s->at("duration_s").get<double>());
        }
        if (auto f = root.find("features"); f != root.end()) {
            only_keys(*f, {"disable", "exclude", "rho_min", "centering"}, "features");
            cfg.disable_features = f->value("disable", cfg.disable_features);
            cfg.exclude_features = f->value("exclude", cfg.exclude_features);
            cfg.rho_min = f->value("rho_min", cfg.rho_min);
            if (f->contains("centering")) cfg.centering = aggregation::centering_from_string(f->at("centering").get<std::string>());
        }
        if (auto m = root.find("model"); m != root.end()) {
            only_keys(*m, {"lambda1", "lambda2", "train_fraction"}, "model");
            if (m->contains("lambda1") && !m->at("lambda1").is_null()) cfg.lambda1 = m->at("lambda1").get<double>();
            cfg.lambda2 = m->value("lambda2", cfg.lambda2);
            cfg.train_fraction = m->value("train_fraction", cfg.train_fraction);
        }
        if (auto a = root.find("attribution"); a != root.end()) {
            only_keys(*a, {"top_k", "clamp", "apportion_baseline"}, "attribution");
            cfg.top_k = a->value("top_k", cfg.top_k);
            cfg.clamp = a->value("clamp", cfg.clamp);
            cfg.apportion_baseline = a->value("apportion_baseline", cfg.apportion_baseline);
        }
        if (root.contains("out_dir")) cfg.out_dir = root.at("out_dir").get<std::string>();
        if (root.contains("seed")) cfg.seed = root.at("seed").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config value has the wrong type: ") + e.what());
    } catch (const ValidationError& e) {
        throw ConfigError(e.what());
    }
    cfg.validate();
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str());
}

}  // namespace wattribute::cli
