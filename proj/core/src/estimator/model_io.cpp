#include "wattribute/estimator/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wattribute/error.hpp"

namespace wattribute::estimator {

namespace {

using ordered_json = nlohmann::ordered_json;

template <typename T>
T field(const ordered_json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(0, std::string("model file lacks '") + key + "'");
    try {
        return it->get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError(0, std::string("model field '") + key + "' has the wrong type");
    }
}

}  // namespace

std::string model_to_json(const ModelParams& m) {
    ordered_json j;
    j["format"] = kModelFormat;
    j["version"] = kModelVersion;
    j["period_ns"] = m.period.count();

    ordered_json schema = ordered_json::array();
    for (const auto& f : m.schema.features())
        schema.push_back({{"name", f.name}, {"kind", aggregation::to_string(f.kind)}, {"enabled", f.enabled}});
    j["schema"] = std::move(schema);

    const auto& st = m.standardizer;
    j["standardizer"] = {{"centering", aggregation::to_string(st.centering())},
                         {"input_features", st.input_names()},
                         {"features", st.feature_names()},
                         {"mean", st.mean()},
                         {"stddev", st.stddev()},
                         {"dropped", st.dropped()}};

    j["weights"] = std::vector<double>(m.w.data(), m.w.data() + m.w.size());
    j["baseline_j"] = m.s;
    j["lambda1"] = m.lambda1;
    j["lambda2"] = m.lambda2;
    const auto& d = m.diagnostics;
    j["diagnostics"] = {{"iterations", d.iterations},   {"objective", d.objective},
                        {"step", d.step},               {"kkt_residual", d.kkt_residual},
                        {"converged", d.converged},     {"stop_reason", d.stop_reason}};
    return j.dump(2) + "\n";
}

ModelParams model_from_json(std::string_view text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, std::string("model file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || j.value("format", "") != kModelFormat) throw ParseError(0, "not a wattribute model file");
    if (j.value("version", 0) != kModelVersion) throw ParseError(0, "unsupported model version");

    ModelParams m;
    m.period = std::chrono::nanoseconds(field<std::int64_t>(j, "period_ns"));

    std::vector<aggregation::Feature> features;
    for (const auto& f : field<ordered_json>(j, "schema")) {
        features.push_back({field<std::string>(f, "name"),
                            aggregation::feature_kind_from_string(field<std::string>(f, "kind")),
                            field<bool>(f, "enabled")});
    }
    m.schema = aggregation::FeatureSchema(std::move(features));

    const auto st = field<ordered_json>(j, "standardizer");
    m.standardizer = aggregation::Standardizer::from_stats(
        field<std::vector<std::string>>(st, "input_features"), field<std::vector<std::string>>(st, "features"),
        field<std::vector<double>>(st, "mean"), field<std::vector<double>>(st, "stddev"),
        aggregation::centering_from_string(field<std::string>(st, "centering")));

    const auto w = field<std::vector<double>>(j, "weights");
    if (w.size() != m.standardizer.dimension()) throw ParseError(0, "weight count does not match feature count");
    m.w = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
    m.s = field<double>(j, "baseline_j");
    m.lambda1 = field<double>(j, "lambda1");
    m.lambda2 = field<double>(j, "lambda2");
    if (m.s < 0.0) throw ParseError(0, "baseline must be non-negative");

    const auto d = field<ordered_json>(j, "diagnostics");
    m.diagnostics.iterations = field<int>(d, "iterations");
    m.diagnostics.objective = field<double>(d, "objective");
    m.diagnostics.step = field<double>(d, "step");
    m.diagnostics.kkt_residual = field<double>(d, "kkt_residual");
    m.diagnostics.converged = field<bool>(d, "converged");
    m.diagnostics.stop_reason = field<std::string>(d, "stop_reason");
    return m;
}

void save_model(const ModelParams& params, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << model_to_json(params);
    if (!out) throw WriteError("cannot write model " + path.string(), 0);
}

ModelParams load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open model " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json(buf.str());
}

}  // namespace wattribute::estimator
