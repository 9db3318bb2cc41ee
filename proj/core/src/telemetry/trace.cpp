#include "wattribute/telemetry/trace.hpp"

#include <json.hpp>

#include "wattribute/error.hpp"

namespace wattribute::telemetry {

namespace {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

std::int64_t require_int(const json& obj, const char* key, std::size_t line_no) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(line_no, std::string("missing field '") + key + "'");
    if (!it->is_number_integer()) throw ParseError(line_no, std::string("field '") + key + "' must be an integer");
    return it->get<std::int64_t>();
}

}  // namespace

std::string trace_header_line() {
    ordered_json header;
    header["format"] = kTraceFormat;
    header["version"] = kTraceVersion;
    return header.dump();
}

std::string to_trace_line(const TelemetryEvent& event) {
    ordered_json line;
    line["t"] = timestamp_of(event).count();
    if (const auto* s = std::get_if<ProcessSample>(&event)) {
        line["kind"] = "proc";
        line["pid"] = s->key.pid;
        line["start_id"] = s->key.start_id;
        line["name"] = s->name;
        ordered_json counters = ordered_json::object();
        for (const auto& [name, value] : s->counters) counters[name] = value;
        line["counters"] = std::move(counters);
    } else {
        const auto& p = std::get<PowerReading>(event);
        line["kind"] = "power";
        line["watts"] = p.watts;
    }
    return line.dump();
}

TelemetryEvent parse_trace_line(std::string_view text, std::size_t line_no) {
    json obj;
    try {
        obj = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw ParseError(line_no, "event must be a JSON object");

    const Timestamp t{require_int(obj, "t", line_no)};
    auto kind = obj.find("kind");
    if (kind == obj.end() || !kind->is_string()) throw ParseError(line_no, "missing field 'kind'");

    if (*kind == "power") {
        auto watts = obj.find("watts");
        if (watts == obj.end() || !watts->is_number()) throw ParseError(line_no, "field 'watts' must be a number");
        PowerReading reading{t, watts->get<double>()};
        try {
            validate(reading);
        } catch (const ValidationError& e) {
            throw ParseError(line_no, e.what());
        }
        return reading;
    }
    if (*kind == "proc") {
        ProcessSample sample;
        sample.timestamp = t;
        sample.key.pid = require_int(obj, "pid", line_no);
        sample.key.start_id = require_int(obj, "start_id", line_no);
        auto name = obj.find("name");
        if (name == obj.end() || !name->is_string()) throw ParseError(line_no, "field 'name' must be a string");
        sample.name = name->get<std::string>();
        auto counters = obj.find("counters");
        if (counters == obj.end() || !counters->is_object()) throw ParseError(line_no, "field 'counters' must be an object");
        for (const auto& [key, value] : counters->items()) {
            if (!value.is_number_integer()) throw ParseError(line_no, "counter '" + key + "' must be an integer");
            sample.counters.emplace(key, value.get<std::int64_t>());
        }
        return sample;
    }
    throw ParseError(line_no, "unknown event kind '" + kind->get<std::string>() + "'");
}

ReplayStream::ReplayStream(const std::filesystem::path& path) : in_(path, std::ios::binary) {
    if (!in_) throw SourceError("cannot open trace " + path.string(), false);
}

std::optional<TelemetryEvent> ReplayStream::next() {
    std::string text;
    while (std::getline(in_, text)) {
        ++line_no_;
        if (!text.empty() && text.back() == '\r') throw ParseError(line_no_, "CR line endings are not allowed");
        if (!header_seen_) {
            json header;
            try {
                header = json::parse(text);
            } catch (const json::parse_error&) {
                throw ParseError(line_no_, "invalid trace header");
            }
            if (!header.is_object() || header.value("format", "") != kTraceFormat)
                throw ParseError(line_no_, "not a wattribute trace");
            if (header.value("version", 0) != kTraceVersion)
                throw ParseError(line_no_, "unsupported trace version");
            header_seen_ = true;
            continue;
        }
        if (text.empty()) throw ParseError(line_no_, "empty line");

        TelemetryEvent event = parse_trace_line(text, line_no_);
        const Timestamp t = timestamp_of(event);
        if (t < last_t_) throw ParseError(line_no_, "timestamp decreases");
        last_t_ = t;
        if (const auto* s = std::get_if<ProcessSample>(&event)) {
            auto [it, inserted] = last_seen_.try_emplace(s->key, t);
            if (!inserted) {
                if (t <= it->second) throw ParseError(line_no_, "timestamp must strictly increase per process");
                it->second = t;
            }
        }
        return event;
    }
    if (in_.bad()) throw SourceError("read failure at line " + std::to_string(line_no_), false);
    return std::nullopt;
}

TraceWriter::TraceWriter(const std::filesystem::path& path) : out_(path, std::ios::binary | std::ios::trunc), path_(path) {
    if (!out_) throw WriteError("cannot open " + path.string() + " for writing", 0);
    out_ << trace_header_line() << '\n';
    if (!out_) throw WriteError("write failure on " + path.string(), 0);
}

void TraceWriter::write(const TelemetryEvent& event) {
    out_ << to_trace_line(event) << '\n';
    if (!out_) throw WriteError("write failure on " + path_.string(), written_);
    ++written_;
}

void TraceWriter::close() {
    out_.flush();
    if (!out_) throw WriteError("flush failure on " + path_.string(), written_);
    out_.close();
}

std::size_t write_trace(std::span<const TelemetryEvent> events, const std::filesystem::path& path) {
    TraceWriter writer(path);
    for (const auto& e : events) writer.write(e);
    writer.close();
    return writer.written();
}

}  // namespace wattribute::telemetry
