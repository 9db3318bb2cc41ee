#include "wattribute/analysis/report_io.hpp"

#include <cstdio>
#include <iomanip>

#include <json.hpp>

#include "wattribute/util/text.hpp"

namespace wattribute::analysis {

namespace {

nlohmann::ordered_json optional_number(const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

void write_correlation_csv(const CorrelationReport& report, std::ostream& out) {
    out << "feature,rho,n\n";
    for (const auto& f : report.features) {
        out << util::csv_field(f.feature) << ',' << (f.rho ? util::format_double(*f.rho) : std::string()) << ','
            << f.n << '\n';
    }
}

std::string correlation_to_json(const CorrelationReport& report) {
    nlohmann::ordered_json j;
    j["samples"] = report.samples;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& f : report.features) arr.push_back({{"feature", f.feature}, {"rho", optional_number(f.rho)}, {"n", f.n}});
    j["features"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::string metrics_to_json(const MetricsReport& m) {
    nlohmann::ordered_json j;
    j["r2"] = optional_number(m.r2);
    j["mae_j"] = m.mae_j;
    j["mae_pct"] = optional_number(m.mae_pct);
    j["t_train"] = m.t_train;
    j["t_test"] = m.t_test;
    return j.dump(2) + "\n";
}

void print_screening_table(const ScreeningResult& result, std::ostream& out) {
    out << std::left << std::setw(20) << "feature" << std::right << std::setw(10) << "rho" << "  " << "status\n";
    for (const auto& e : result.entries) {
        char rho[32] = "n/a";
        if (e.rho) std::snprintf(rho, sizeof rho, "%.3f", *e.rho);
        out << std::left << std::setw(20) << e.feature << std::right << std::setw(10) << rho << "  " << e.reason
            << '\n';
    }
}

}  // namespace wattribute::analysis
