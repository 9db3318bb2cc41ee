#pragma once

#include <ostream>
#include <string>

#include "wattribute/analysis/metrics.hpp"
#include "wattribute/analysis/screening.hpp"

namespace wattribute::analysis {

/// feature,rho,n (rho empty when undefined).
void write_correlation_csv(const CorrelationReport& report, std::ostream& out);
std::string correlation_to_json(const CorrelationReport& report);

std::string metrics_to_json(const MetricsReport& report);

/// Fixed-width text table of a screening result.
void print_screening_table(const ScreeningResult& result, std::ostream& out);

}  // namespace wattribute::analysis
