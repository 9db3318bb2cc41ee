#include "wattribute/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wattribute/aggregation/design.hpp"
#include "wattribute/aggregation/interval_csv.hpp"
#include "wattribute/aggregation/intervals.hpp"
#include "wattribute/analysis/metrics.hpp"
#include "wattribute/analysis/report_io.hpp"
#include "wattribute/analysis/screening.hpp"
#include "wattribute/analysis/split.hpp"
#include "wattribute/csv.hpp"
#include "wattribute/error.hpp"
#include "wattribute/estimator/lasso.hpp"
#include "wattribute/estimator/model.hpp"
#include "wattribute/estimator/model_io.hpp"
#include "wattribute/simkit/generator.hpp"
#include "wattribute/simkit/scenario.hpp"
#include "wattribute/telemetry/stream.hpp"
#include "wattribute/telemetry/trace.hpp"
#include "wattribute/util/text.hpp"

namespace wattribute::cli {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using util::format_double;

namespace {

// Maps an in-flight exception to an exit code and prints it with the stage.
int report_failure(const std::string& stage, std::ostream& err) {
    const bool input_stage = stage == "config" || stage == "scenario";
    try {
        throw;
    } catch (const SchemaMismatchError& e) {
        err << "error [" << stage << "]: " << e.what() << '\n' << e.diff();
        return kExitData;
    } catch (const ConfigError& e) {
        err << "error [" << stage << "]: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error [" << stage << "]: line " << e.line() << ": " << e.what() << '\n';
        return input_stage ? kExitUsage : kExitData;
    } catch (const ValidationError& e) {
        err << "error [" << stage << "]: " << e.what() << '\n';
        return input_stage ? kExitUsage : kExitData;
    } catch (const WriteError& e) {
        err << "error [" << stage << "]: " << e.what() << " (" << e.written() << " events written)\n";
        return kExitData;
    } catch (const std::exception& e) {
        err << "error [" << stage << "]: " << e.what() << '\n';
        return kExitData;
    }
}

void require_file(const fs::path& p, const std::string& what) {
    std::error_code ec;
    if (!fs::is_regular_file(p, ec)) throw ConfigError(what + " not found: " + p.string());
}

void ensure_dir(const fs::path& dir) {
    if (dir.empty()) return;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw WriteError("cannot create directory " + dir.string() + ": " + ec.message(), 0);
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw WriteError("cannot open " + path.string() + " for writing", 0);
    out << text;
    out.flush();
    if (!out) throw WriteError("write failure on " + path.string(), 0);
}

std::vector<telemetry::TelemetryEvent> load_trace(const fs::path& trace) {
    require_file(trace, "trace");
    telemetry::ReplayStream stream(trace);
    return telemetry::collect(stream);
}

ordered_json optional_number(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

fs::path truth_path_for(const fs::path& trace) {
    fs::path p = trace;
    p.replace_extension(".truth.json");
    return p;
}

}  // namespace

std::string_view to_string(PhaseLabel p) {
    switch (p) {
        case PhaseLabel::idle: return "idle";
        case PhaseLabel::compute: return "compute";
        case PhaseLabel::transition: return "transition";
    }
    return "idle";
}

std::vector<PhaseLabel> classify_phases(const std::vector<double>& activity) {
    std::vector<PhaseLabel> out(activity.size(), PhaseLabel::idle);
    double amax = 0.0;
    for (double a : activity) amax = std::max(amax, std::abs(a));
    if (amax <= 0.0) return out;
    const double idle_level = 0.1 * amax;
    const double step = 0.2 * amax;
    for (std::size_t t = 0; t < activity.size(); ++t) {
        const bool jump_in = t > 0 && std::abs(activity[t] - activity[t - 1]) > step;
        const bool jump_out = t + 1 < activity.size() && std::abs(activity[t + 1] - activity[t]) > step;
        if (jump_in || jump_out)
            out[t] = PhaseLabel::transition;
        else
            out[t] = activity[t] <= idle_level ? PhaseLabel::idle : PhaseLabel::compute;
    }
    return out;
}

Decomposition decompose(const estimator::AttributionResult& result, std::size_t top_k) {
    struct Total {
        std::string name;
        double energy = 0.0;
    };
    std::map<telemetry::ProcessKey, Total> totals;
    for (const auto& iv : result.intervals) {
        for (const auto& p : iv.processes) {
            auto& t = totals[p.key];
            t.name = p.name;
            t.energy += p.energy_j;
        }
    }
    std::vector<std::pair<telemetry::ProcessKey, Total>> ranked(totals.begin(), totals.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second.energy > b.second.energy; });
    if (ranked.size() > top_k) ranked.resize(top_k);

    Decomposition d;
    std::map<telemetry::ProcessKey, std::size_t> column;
    std::map<std::string, int> label_uses;
    for (const auto& [key, total] : ranked) label_uses[total.name + "[" + std::to_string(key.pid) + "]"]++;
    for (const auto& [key, total] : ranked) {
        std::string label = total.name + "[" + std::to_string(key.pid) + "]";
        if (label_uses[label] > 1) label += "@" + std::to_string(key.start_id);
        column[key] = d.process_labels.size();
        d.process_labels.push_back(std::move(label));
    }

    d.rows.reserve(result.intervals.size());
    for (const auto& iv : result.intervals) {
        Decomposition::Row row;
        row.index = iv.index;
        row.t_start_ns = iv.t_start.count();
        row.process_j.assign(d.process_labels.size(), 0.0);
        for (const auto& p : iv.processes) {
            if (auto it = column.find(p.key); it != column.end())
                row.process_j[it->second] += p.energy_j;
            else
                row.other_j += p.energy_j;
        }
        row.baseline_j = iv.baseline_j;
        row.predicted_j = iv.node_pred_j;
        row.actual_j = iv.node_actual_j;
        row.residual_j = iv.residual_j;
        d.rows.push_back(std::move(row));
    }
    return d;
}

void write_decomposition_csv(const Decomposition& d, std::ostream& out) {
    out << "t,t_start_ns";
    for (const auto& label : d.process_labels) out << ',' << util::csv_field(label);
    out << ",Other,baseline_j,predicted_j,actual_j,residual_j\n";
    for (const auto& r : d.rows) {
        out << r.index << ',' << r.t_start_ns;
        for (double v : r.process_j) out << ',' << format_double(v);
        out << ',' << format_double(r.other_j) << ',' << format_double(r.baseline_j) << ','
            << format_double(r.predicted_j) << ',' << format_double(r.actual_j) << ','
            << format_double(r.residual_j) << '\n';
    }
}

int cmd_simulate(const fs::path& scenario, fs::path trace_out, const RunConfig& cfg, std::ostream& out,
                 std::ostream& err) {
    std::string stage = "scenario";
    try {
        require_file(scenario, "scenario");
        simkit::ScenarioSpec spec = simkit::load_scenario(scenario);
        if (cfg.seed) spec.seed = *cfg.seed;

        stage = "simulate";
        const simkit::Simulation sim = simkit::generate(spec);

        stage = "write";
        if (trace_out.empty()) trace_out = cfg.out_dir / "trace.jsonl";
        ensure_dir(trace_out.parent_path());
        const std::size_t n = telemetry::write_trace(sim.events, trace_out);
        const fs::path truth = truth_path_for(trace_out);
        simkit::write_ground_truth(sim.truth, truth);

        out << "simulated " << sim.truth.intervals.size() << " intervals, " << spec.processes.size()
            << " processes, seed " << spec.seed << '\n';
        out << "wrote " << trace_out.string() << " (" << n << " events)\n";
        out << "wrote " << truth.string() << '\n';
        return kExitOk;
    } catch (...) {
        return report_failure(stage, err);
    }
}

int cmd_record(const fs::path& trace_out_arg, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::string stage = "config";
    try {
        telemetry::SourceConfig source = cfg.source;
        if (source.kind == telemetry::SourceKind::replay)
            throw ConfigError("record needs a live or synthetic source");
        if (cfg.seed) source.seed = *cfg.seed;
        if (source.kind == telemetry::SourceKind::live && source.duration.count() <= 0)
            throw ConfigError("live recording needs duration_s > 0");
        source.validate();

        stage = "source";
        auto stream = telemetry::open_source(source);

        stage = "write";
        const fs::path trace_out = trace_out_arg.empty() ? cfg.out_dir / "trace.jsonl" : trace_out_arg;
        ensure_dir(trace_out.parent_path());
        telemetry::TraceWriter writer(trace_out);
        stage = "source";
        while (auto ev = stream->next()) {
            stage = "write";
            writer.write(*ev);
            stage = "source";
        }
        stage = "write";
        writer.close();
        out << "wrote " << trace_out.string() << " (" << writer.written() << " events)\n";
        return kExitOk;
    } catch (...) {
        return report_failure(stage, err);
    }
}

int cmd_fit(const fs::path& trace, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::string stage = "config";
    try {
        cfg.validate();

        stage = "load";
        const auto events = load_trace(trace);

        stage = "schema";
        aggregation::FeatureSchema schema = aggregation::FeatureSchema::infer(events);
        if (schema.features().empty()) throw ValidationError("trace has no process counters");
        for (const auto& name : cfg.disable_features) {
            if (!schema.contains(name)) throw ConfigError("cannot disable unknown feature '" + name + "'");
            schema.set_enabled(name, false);
        }
        schema.validate();

        stage = "aggregate";
        const auto period = cfg.source.sample_period;
        const aggregation::IntervalSet full = aggregation::build_intervals(events, period, schema);
        if (full.intervals.size() < 2) throw ValidationError("need at least 2 complete intervals, got " +
                                                             std::to_string(full.intervals.size()));

        stage = "screen";
        const analysis::ScreeningResult screening = analysis::screen_features(full, cfg.rho_min, cfg.exclude_features);
        const aggregation::IntervalSet set = aggregation::build_intervals(events, period, screening.schema);

        stage = "split";
        const analysis::TimeSplit split = analysis::split_time_aware(set.intervals, {cfg.train_fraction});

        stage = "standardize";
        const auto standardizer = aggregation::Standardizer::fit(split.train, set.feature_names, cfg.centering);
        const auto train = aggregation::assemble_design(split.train, set.feature_names, standardizer);
        const auto test = aggregation::assemble_design(split.test, set.feature_names, standardizer);

        stage = "fit";
        const double l1_max = estimator::lambda1_max(train.Z, train.y, cfg.lambda2);
        const double l1 = cfg.lambda1 ? *cfg.lambda1 : estimator::kDefaultLambda1Ratio * l1_max;
        estimator::ModelParams model = estimator::fit(train, standardizer, l1, cfg.lambda2);
        model.schema = screening.schema;
        model.period = period;

        stage = "evaluate";
        const analysis::MetricsReport metrics = analysis::score(model, test, train.intervals());

        stage = "write";
        ensure_dir(cfg.out_dir);
        estimator::save_model(model, cfg.out_dir / "model.json");
        {
            std::ostringstream csv;
            analysis::write_correlation_csv(screening.correlations, csv);
            write_text(cfg.out_dir / "correlation.csv", csv.str());
        }
        write_text(cfg.out_dir / "correlation.json", analysis::correlation_to_json(screening.correlations));
        aggregation::write_interval_csvs(full, cfg.out_dir / "intervals.csv", cfg.out_dir / "intervals_summary.csv");

        const Eigen::VectorXd cost = model.raw_marginal_costs();
        const auto& kept = standardizer.feature_names();
        ordered_json features = ordered_json::array();
        for (const auto& e : screening.entries) {
            ordered_json f;
            f["feature"] = e.feature;
            f["rho"] = optional_number(e.rho);
            auto it = std::find(kept.begin(), kept.end(), e.feature);
            if (it != kept.end()) {
                const auto j = static_cast<Eigen::Index>(it - kept.begin());
                f["status"] = "kept";
                f["weight"] = model.w(j);
                f["marginal_cost_j"] = cost(j);
            } else {
                f["status"] = e.kept ? "constant" : e.reason;
                f["weight"] = nullptr;
                f["marginal_cost_j"] = nullptr;
            }
            features.push_back(std::move(f));
        }

        ordered_json m = ordered_json::parse(analysis::metrics_to_json(metrics));
        m["train_intervals"] = {split.train.front().index, split.train.back().index};
        m["test_intervals"] = {split.test.front().index, split.test.back().index};
        m["lambda1"] = l1;
        m["lambda1_max"] = l1_max;
        m["lambda2"] = cfg.lambda2;
        m["baseline_j"] = model.s;
        m["solver"] = {{"iterations", model.diagnostics.iterations},
                       {"converged", model.diagnostics.converged},
                       {"stop_reason", model.diagnostics.stop_reason},
                       {"kkt_residual", model.diagnostics.kkt_residual},
                       {"objective", model.diagnostics.objective}};
        m["build"] = {{"intervals", full.intervals.size()},
                      {"dropped_no_power", full.report.dropped_no_power},
                      {"dropped_incomplete", full.report.dropped_incomplete},
                      {"counter_regressions", full.report.counter_regressions},
                      {"flagged_rows", full.report.flagged_rows}};
        m["features"] = std::move(features);
        write_text(cfg.out_dir / "metrics.json", m.dump(2) + "\n");

        out << "intervals: " << full.intervals.size() << " (dropped " << full.report.dropped_no_power
            << " without power, " << full.report.dropped_incomplete << " incomplete; " << full.report.counter_regressions
            << " counter regressions)\n\n";
        analysis::print_screening_table(screening, out);
        out << "\nsplit: " << split.train.size() << " train / " << split.test.size() << " test intervals\n";
        out << "lambda1 " << format_double(l1) << " (max " << format_double(l1_max) << "), lambda2 "
            << format_double(cfg.lambda2) << '\n';
        out << "solver: " << model.diagnostics.iterations << " iterations, " << model.diagnostics.stop_reason
            << ", kkt " << format_double(model.diagnostics.kkt_residual) << '\n';
        if (!model.diagnostics.converged) err << "warning: solver did not reach the KKT tolerance\n";
        out << '\n' << std::left << std::setw(20) << "feature" << std::right << std::setw(14) << "weight_j"
            << std::setw(16) << "cost_j_per_unit" << '\n';
        for (std::size_t j = 0; j < kept.size(); ++j) {
            const auto jj = static_cast<Eigen::Index>(j);
            char w[32], c[32];
            std::snprintf(w, sizeof w, "%.4f", model.w(jj));
            std::snprintf(c, sizeof c, "%.4g", cost(jj));
            out << std::left << std::setw(20) << kept[j] << std::right << std::setw(14) << w << std::setw(16) << c
                << '\n';
        }
        out << std::left << std::setw(20) << "baseline" << std::right << std::setw(14) << fixed(model.s, 4) << '\n';
        out << "\ntest R^2 " << (metrics.r2 ? fixed(*metrics.r2, 4) : std::string("n/a")) << ", MAE "
            << fixed(metrics.mae_j, 2) << " J";
        if (metrics.mae_pct) out << " (" << fixed(*metrics.mae_pct, 1) << "%)";
        out << "\nwrote " << (cfg.out_dir / "model.json").string() << '\n';
        return kExitOk;
    } catch (...) {
        return report_failure(stage, err);
    }
}

int cmd_attribute(const fs::path& trace, fs::path model_path, const RunConfig& cfg, std::ostream& out,
                  std::ostream& err) {
    std::string stage = "config";
    try {
        cfg.validate();
        if (model_path.empty()) model_path = cfg.out_dir / "model.json";
        require_file(model_path, "model");

        stage = "load";
        const estimator::ModelParams model = estimator::load_model(model_path);
        const auto events = load_trace(trace);

        stage = "schema";
        const auto present = aggregation::FeatureSchema::infer(events);
        std::vector<std::string> actual;
        for (const auto& f : present.features()) actual.push_back(f.name);
        for (const auto& name : model.standardizer.input_names())
            if (!present.contains(name)) throw SchemaMismatchError(model.standardizer.input_names(), actual);

        stage = "aggregate";
        const auto set = aggregation::build_intervals(events, model.period, model.schema);
        if (set.feature_names != model.standardizer.input_names())
            throw SchemaMismatchError(model.standardizer.input_names(), set.feature_names);
        const auto design = aggregation::assemble_design(set.intervals, set.feature_names, model.standardizer);

        stage = "attribute";
        const auto result = estimator::attribute(model, design, {cfg.clamp, cfg.apportion_baseline});
        const Decomposition d = decompose(result, cfg.top_k);

        stage = "write";
        ensure_dir(cfg.out_dir);
        std::ostringstream csv;
        write_decomposition_csv(d, csv);
        const fs::path dest = cfg.out_dir / "decomposition.csv";
        write_text(dest, csv.str());

        out << "attributed " << d.rows.size() << " intervals";
        if (set.report.flagged_rows) out << " (" << set.report.flagged_rows << " flagged rows)";
        out << "\nwrote " << dest.string() << '\n';
        return kExitOk;
    } catch (...) {
        return report_failure(stage, err);
    }
}

int cmd_report(fs::path metrics_path, fs::path decomposition_path, const RunConfig& cfg, std::ostream& out,
               std::ostream& err) {
    std::string stage = "load";
    try {
        if (metrics_path.empty()) metrics_path = cfg.out_dir / "metrics.json";
        if (decomposition_path.empty()) decomposition_path = cfg.out_dir / "decomposition.csv";
        require_file(metrics_path, "metrics");
        require_file(decomposition_path, "decomposition");

        nlohmann::json m;
        {
            std::ifstream in(metrics_path, std::ios::binary);
            try {
                m = nlohmann::json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw ParseError(0, std::string("metrics is not valid JSON: ") + e.what());
            }
        }
        const CsvTable table = read_csv(decomposition_path);
        if (table.rows.empty()) throw ValidationError("decomposition has no intervals");

        stage = "report";
        const std::size_t c_base = table.column("baseline_j");
        const std::size_t c_pred = table.column("predicted_j");
        const std::size_t c_act = table.column("actual_j");
        std::vector<double> activity, pred, act;
        for (const auto& row : table.rows) {
            try {
                pred.push_back(std::stod(row[c_pred]));
                act.push_back(std::stod(row[c_act]));
                activity.push_back(pred.back() - std::stod(row[c_base]));
            } catch (const std::logic_error&) {
                throw ParseError(0, "non-numeric value in decomposition");
            }
        }
        const auto phases = classify_phases(activity);

        auto num = [&](const char* key) -> std::optional<double> {
            if (!m.contains(key) || m.at(key).is_null()) return std::nullopt;
            return m.at(key).get<double>();
        };
        const auto r2 = num("r2");
        const auto mae = num("mae_j");
        const auto mae_pct = num("mae_pct");
        if (!mae) throw ValidationError("metrics has no mae_j");

        out << "R^2 " << (r2 ? fixed(*r2, 4) : std::string("n/a")) << '\n';
        out << "MAE " << fixed(*mae, 1) << " J (" << (mae_pct ? fixed(*mae_pct, 1) + "%" : std::string("n/a"))
            << ")\n";
        out << "metrics r2=" << (r2 ? format_double(*r2) : "null") << " mae_j=" << format_double(*mae)
            << " mae_pct=" << (mae_pct ? format_double(*mae_pct) : "null") << "\n\n";

        out << std::left << std::setw(12) << "phase" << std::right << std::setw(10) << "intervals" << std::setw(10)
            << "MAE_J" << std::setw(10) << "MAE_%" << '\n';
        for (PhaseLabel p : {PhaseLabel::idle, PhaseLabel::compute, PhaseLabel::transition}) {
            double abs_sum = 0.0, act_sum = 0.0;
            std::size_t n = 0;
            for (std::size_t t = 0; t < phases.size(); ++t) {
                if (phases[t] != p) continue;
                abs_sum += std::abs(act[t] - pred[t]);
                act_sum += act[t];
                ++n;
            }
            out << std::left << std::setw(12) << to_string(p) << std::right << std::setw(10) << n;
            if (n == 0) {
                out << std::setw(10) << "-" << std::setw(10) << "-" << '\n';
                continue;
            }
            const double pm = abs_sum / static_cast<double>(n);
            const double mean_act = act_sum / static_cast<double>(n);
            out << std::setw(10) << fixed(pm, 2) << std::setw(10)
                << (mean_act != 0.0 ? fixed(100.0 * pm / mean_act, 1) : std::string("n/a")) << '\n';
        }

        if (m.contains("features") && m.at("features").is_array()) {
            out << '\n' << std::left << std::setw(20) << "feature" << std::right << std::setw(9) << "rho"
                << std::setw(17) << "status" << std::setw(16) << "cost_j_per_unit" << '\n';
            for (const auto& f : m.at("features")) {
                const std::string rho =
                    f.contains("rho") && !f.at("rho").is_null() ? fixed(f.at("rho").get<double>(), 3) : "n/a";
                std::string cost = "-";
                if (f.contains("marginal_cost_j") && !f.at("marginal_cost_j").is_null()) {
                    char buf[32];
                    std::snprintf(buf, sizeof buf, "%.4g", f.at("marginal_cost_j").get<double>());
                    cost = buf;
                }
                out << std::left << std::setw(20) << f.value("feature", std::string("?")) << std::right
                    << std::setw(9) << rho << std::setw(17) << f.value("status", std::string("?"))
                    << std::setw(16) << cost << '\n';
            }
        }
        return kExitOk;
    } catch (...) {
        return report_failure(stage, err);
    }
}

int cmd_replay_check(const fs::path& trace, const RunConfig&, std::ostream& out, std::ostream& err) {
    std::string stage = "load";
    try {
        require_file(trace, "trace");
        std::string original;
        {
            std::ifstream in(trace, std::ios::binary);
            std::ostringstream buf;
            buf << in.rdbuf();
            original = buf.str();
        }
        const auto first = load_trace(trace);
        const auto second = load_trace(trace);

        stage = "compare";
        if (first != second) throw ValidationError("two replays of the same trace differ");
        std::string rewritten;
        if (!original.empty()) {
            rewritten = telemetry::trace_header_line() + '\n';
            for (const auto& e : first) rewritten += telemetry::to_trace_line(e) + '\n';
        }
        std::size_t procs = 0;
        for (const auto& e : first) procs += std::holds_alternative<telemetry::ProcessSample>(e) ? 1 : 0;
        out << first.size() << " events (" << procs << " process samples, " << first.size() - procs
            << " power readings)\n";
        if (rewritten != original) {
            std::size_t line = 1;
            const std::size_t n = std::min(rewritten.size(), original.size());
            for (std::size_t i = 0; i < n && rewritten[i] == original[i]; ++i)
                if (original[i] == '\n') ++line;
            err << "round trip differs at line " << line << '\n';
            return kExitData;
        }
        out << "round trip identical\n";
        return kExitOk;
    } catch (...) {
        return report_failure(stage, err);
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Per-process energy attribution from node power and process counters", "wattribute"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_dir;
    std::optional<std::uint64_t> seed;
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--out", out_dir, "output directory (default: out)");
    app.add_option("--seed", seed, "RNG seed for simulate and synthetic sources");

    std::string scenario, trace, model_path, metrics_path, decomposition_path, source_kind, centering;
    std::optional<double> lambda1, lambda2, train_fraction, rho_min, duration_s, period_s;
    std::optional<std::size_t> top_k;
    std::vector<std::string> exclude, disable;
    bool clamp = false, apportion = false;

    auto* sim = app.add_subcommand("simulate", "generate a synthetic trace and its ground truth");
    sim->add_option("scenario", scenario, "scenario JSON")->required();
    sim->add_option("--trace", trace, "trace output path (default: <out>/trace.jsonl)");

    auto* rec = app.add_subcommand("record", "capture a live or synthetic source to a trace");
    rec->add_option("--source", source_kind, "live or synthetic")->check(CLI::IsMember({"live", "synthetic"}));
    rec->add_option("--duration-s", duration_s, "recording length in seconds");
    rec->add_option("--trace", trace, "trace output path (default: <out>/trace.jsonl)");

    auto* fit = app.add_subcommand("fit", "fit a model from a trace");
    fit->add_option("trace", trace, "trace file")->required();
    fit->add_option("--lambda1", lambda1, "L1 penalty (default: fraction of lambda1_max)");
    fit->add_option("--lambda2", lambda2, "baseline penalty");
    fit->add_option("--train-fraction", train_fraction, "leading share of intervals used for training");
    fit->add_option("--rho-min", rho_min, "screening threshold on |rho|");
    auto* exclude_opt = fit->add_option("--exclude", exclude, "features excluded before screening")->expected(0, -1);
    auto* disable_opt = fit->add_option("--disable", disable, "features removed from the schema");
    fit->add_option("--centering", centering, "scale or zscore")->check(CLI::IsMember({"scale", "zscore"}));
    fit->add_option("--period-s", period_s, "interval length in seconds");

    auto* attr = app.add_subcommand("attribute", "decompose a trace with a fitted model");
    attr->add_option("trace", trace, "trace file")->required();
    attr->add_option("--model", model_path, "model file (default: <out>/model.json)");
    attr->add_option("--top-k", top_k, "processes shown individually");
    attr->add_flag("--clamp", clamp, "clamp negative process attributions to zero");
    attr->add_flag("--apportion-baseline", apportion, "split the baseline across active processes");

    auto* rep = app.add_subcommand("report", "summarize metrics and a decomposition");
    rep->add_option("--metrics", metrics_path, "metrics file (default: <out>/metrics.json)");
    rep->add_option("--decomposition", decomposition_path, "decomposition file (default: <out>/decomposition.csv)");

    auto* chk = app.add_subcommand("replay-check", "verify a trace round-trips byte for byte");
    chk->add_option("trace", trace, "trace file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = load_run_config(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (seed) cfg.seed = seed;
        if (lambda1) cfg.lambda1 = lambda1;
        if (lambda2) cfg.lambda2 = *lambda2;
        if (train_fraction) cfg.train_fraction = *train_fraction;
        if (rho_min) cfg.rho_min = *rho_min;
        if (exclude_opt->count() > 0) cfg.exclude_features = exclude;
        if (disable_opt->count() > 0) cfg.disable_features = disable;
        if (!centering.empty()) cfg.centering = aggregation::centering_from_string(centering);
        if (period_s) cfg.source.sample_period = std::chrono::nanoseconds(std::llround(*period_s * 1e9));
        if (top_k) cfg.top_k = *top_k;
        if (clamp) cfg.clamp = true;
        if (apportion) cfg.apportion_baseline = true;
        if (source_kind == "live") cfg.source.kind = telemetry::SourceKind::live;
        if (source_kind == "synthetic") cfg.source.kind = telemetry::SourceKind::synthetic;
        if (duration_s) cfg.source.duration = std::chrono::nanoseconds(std::llround(*duration_s * 1e9));
        cfg.validate();
    } catch (...) {
        return report_failure("config", err);
    }

    if (*sim) return cmd_simulate(scenario, trace, cfg, out, err);
    if (*rec) return cmd_record(trace, cfg, out, err);
    if (*fit) return cmd_fit(trace, cfg, out, err);
    if (*attr) return cmd_attribute(trace, model_path, cfg, out, err);
    if (*rep) return cmd_report(metrics_path, decomposition_path, cfg, out, err);
    if (*chk) return cmd_replay_check(trace, cfg, out, err);
    return kExitUsage;
}

}  // namespace wattribute::cli
