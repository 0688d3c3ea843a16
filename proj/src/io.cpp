#include "uassoc/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "uassoc/stats.hpp"

namespace uassoc::io {

using nlohmann::json;

namespace {

constexpr int kInstanceFormatVersion = 1;

std::string provenance_line(const Provenance& prov) {
    return "# seed=" + std::to_string(prov.seed) + " config=" + hash_hex(prov.config) + "\n";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (const char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

double parse_double_field(const std::string& field, std::size_t line_no, const char* what) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || end != begin + field.size()) {
        throw IoError("line " + std::to_string(line_no) + ": bad " + what + " value '" + field + "'");
    }
    return value;
}

long long parse_int_field(const std::string& field, std::size_t line_no, const char* what) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw IoError("line " + std::to_string(line_no) + ": bad " + what + " value '" + field + "'");
    }
    return value;
}

// Yields (line_no, fields) for every non-comment data line after validating
// the expected header.
std::vector<std::pair<std::size_t, std::vector<std::string>>> read_csv_rows(
    const std::string& text, const std::string& expected_header) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!header_seen) {
            if (line != expected_header) {
                throw IoError("expected header '" + expected_header + "', found '" + line + "'");
            }
            header_seen = true;
            continue;
        }
        rows.emplace_back(line_no, split_csv_line(line));
    }
    if (!header_seen) {
        throw IoError("missing header '" + expected_header + "'");
    }
    return rows;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const char c : text) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string hash_hex(std::string_view text) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(text)));
    return buf;
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

// --- instance JSON ----------------------------------------------------------

std::string instance_to_json(const model::Instance& inst,
                             const std::optional<instgen::InstanceSpec>& spec,
                             std::uint64_t seed) {
    json doc;
    doc["format"] = "uassoc-instance";
    doc["version"] = kInstanceFormatVersion;
    doc["seed"] = seed;

    std::string config = "manual";
    if (spec.has_value()) {
        json spec_doc;
        spec_doc["type"] = instgen::to_string(spec->type);
        spec_doc["num_users"] = spec->num_users;
        spec_doc["num_stations"] = spec->num_stations;
        spec_doc["demand_range"] = {spec->demand_range.first, spec->demand_range.second};
        spec_doc["handover_range"] = {spec->handover_range.first, spec->handover_range.second};
        doc["spec"] = spec_doc;
        config = spec_doc.dump();
    } else {
        doc["spec"] = nullptr;
    }
    doc["config_hash"] = hash_hex(config + "#" + std::to_string(seed));

    doc["cost_mode"] = model::to_string(inst.cost_mode);
    doc["rsrq"] = {{"theta_min", inst.rsrq_params.theta_min},
                   {"theta_max", inst.rsrq_params.theta_max}};
    json users = json::array();
    for (const auto& u : inst.users) {
        users.push_back({{"id", u.id}, {"x", u.pos.x}, {"y", u.pos.y}});
    }
    doc["users"] = std::move(users);
    json stations = json::array();
    for (const auto& s : inst.stations) {
        stations.push_back({{"id", s.id},
                            {"x", s.pos.x},
                            {"y", s.pos.y},
                            {"radius", s.radius},
                            {"capacity", s.capacity},
                            {"avg_handover", s.avg_handover}});
    }
    doc["stations"] = std::move(stations);
    doc["demand"] = inst.demand;
    if (inst.handover.has_value()) {
        doc["handover"] = *inst.handover;
    } else {
        doc["handover"] = nullptr;
    }
    return doc.dump(2) + "\n";
}

model::Instance instance_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("instance json: ") + e.what());
    }
    try {
        if (doc.at("format").get<std::string>() != "uassoc-instance") {
            throw IoError("instance json: unknown format tag");
        }
        if (doc.at("version").get<int>() != kInstanceFormatVersion) {
            throw IoError("instance json: unsupported version");
        }
        model::Instance inst;
        const std::string mode = doc.at("cost_mode").get<std::string>();
        if (mode == "magnitude") {
            inst.cost_mode = model::CostMode::Magnitude;
        } else if (mode == "raw") {
            inst.cost_mode = model::CostMode::Raw;
        } else {
            throw IoError("instance json: unknown cost_mode '" + mode + "'");
        }
        inst.rsrq_params.theta_min = doc.at("rsrq").at("theta_min").get<double>();
        inst.rsrq_params.theta_max = doc.at("rsrq").at("theta_max").get<double>();
        for (const auto& u : doc.at("users")) {
            inst.users.push_back({u.at("id").get<int>(),
                                  {u.at("x").get<double>(), u.at("y").get<double>()}});
        }
        for (const auto& s : doc.at("stations")) {
            model::BaseStation st;
            st.id = s.at("id").get<int>();
            st.pos = {s.at("x").get<double>(), s.at("y").get<double>()};
            st.radius = s.at("radius").get<double>();
            st.capacity = s.at("capacity").get<double>();
            st.avg_handover = s.at("avg_handover").get<double>();
            inst.stations.push_back(st);
        }
        inst.demand = doc.at("demand").get<model::DemandMatrix>();
        if (!doc.at("handover").is_null()) {
            inst.handover = doc.at("handover").get<model::HandoverMatrix>();
        }
        inst.validate();
        return inst;
    } catch (const json::exception& e) {
        throw IoError(std::string("instance json: ") + e.what());
    }
}

void save_instance(const std::string& path, const model::Instance& inst,
                   const std::optional<instgen::InstanceSpec>& spec, std::uint64_t seed) {
    write_text_file(path, instance_to_json(inst, spec, seed));
}

model::Instance load_instance(const std::string& path) {
    return instance_from_json(read_text_file(path));
}

// --- scenario CSV inputs ----------------------------------------------------

std::vector<model::BaseStation> load_stations_csv(const std::string& path) {
    const auto rows = read_csv_rows(read_text_file(path), "id,x,y,radius,capacity,avg_handover");
    std::vector<model::BaseStation> stations;
    stations.reserve(rows.size());
    for (const auto& [line_no, fields] : rows) {
        if (fields.size() != 6) {
            throw IoError("line " + std::to_string(line_no) + ": expected 6 station fields");
        }
        model::BaseStation s;
        s.id = static_cast<int>(parse_int_field(fields[0], line_no, "id"));
        s.pos.x = parse_double_field(fields[1], line_no, "x");
        s.pos.y = parse_double_field(fields[2], line_no, "y");
        s.radius = parse_double_field(fields[3], line_no, "radius");
        s.capacity = parse_double_field(fields[4], line_no, "capacity");
        s.avg_handover = parse_double_field(fields[5], line_no, "avg_handover");
        stations.push_back(s);
    }
    return stations;
}

mobility::RouteTrace load_route_csv(const std::string& path) {
    const auto rows = read_csv_rows(read_text_file(path), "t,x,y");
    mobility::RouteTrace route;
    route.reserve(rows.size());
    for (const auto& [line_no, fields] : rows) {
        if (fields.size() != 3) {
            throw IoError("line " + std::to_string(line_no) + ": expected 3 route fields");
        }
        mobility::RoutePoint p;
        p.t = parse_double_field(fields[0], line_no, "t");
        p.pos.x = parse_double_field(fields[1], line_no, "x");
        p.pos.y = parse_double_field(fields[2], line_no, "y");
        if (!route.empty() && !(p.t > route.back().t)) {
            throw IoError("line " + std::to_string(line_no) + ": route times must be strictly increasing");
        }
        route.push_back(p);
    }
    return route;
}

// --- result CSV outputs -----------------------------------------------------

std::string result_records_csv(const std::vector<ResultRecord>& rows, const Provenance& prov) {
    std::string out = provenance_line(prov);
    out += "label,solver,cost,status,elapsed_ms,seed\n";
    for (const auto& r : rows) {
        out += r.label + "," + r.solver + "," + format_double(r.cost) + "," + r.status + "," +
               format_double(r.elapsed_ms) + "," + std::to_string(r.seed) + "\n";
    }
    return out;
}

std::vector<ResultRecord> parse_result_records_csv(const std::string& text) {
    const auto rows = read_csv_rows(text, "label,solver,cost,status,elapsed_ms,seed");
    std::vector<ResultRecord> records;
    records.reserve(rows.size());
    for (const auto& [line_no, fields] : rows) {
        if (fields.size() != 6) {
            throw IoError("line " + std::to_string(line_no) + ": expected 6 result fields");
        }
        ResultRecord r;
        r.label = fields[0];
        r.solver = fields[1];
        r.cost = parse_double_field(fields[2], line_no, "cost");
        r.status = fields[3];
        r.elapsed_ms = parse_double_field(fields[4], line_no, "elapsed_ms");
        r.seed = static_cast<std::uint64_t>(parse_int_field(fields[5], line_no, "seed"));
        records.push_back(r);
    }
    return records;
}

std::string rsrq_series_csv(const mobility::SimResult& result, const Provenance& prov) {
    std::string out = provenance_line(prov);
    out += "step,serving,rsrq_db\n";
    for (std::size_t step = 0; step < result.serving.size(); ++step) {
        out += std::to_string(step) + "," + std::to_string(result.serving[step]) + "," +
               format_double(result.rsrq_series[step]) + "\n";
    }
    return out;
}

std::vector<ParsedRsrqRow> parse_rsrq_series_csv(const std::string& text) {
    const auto rows = read_csv_rows(text, "step,serving,rsrq_db");
    std::vector<ParsedRsrqRow> parsed;
    parsed.reserve(rows.size());
    for (const auto& [line_no, fields] : rows) {
        if (fields.size() != 3) {
            throw IoError("line " + std::to_string(line_no) + ": expected 3 rsrq fields");
        }
        ParsedRsrqRow row;
        row.step = static_cast<std::size_t>(parse_int_field(fields[0], line_no, "step"));
        row.serving = static_cast<int>(parse_int_field(fields[1], line_no, "serving"));
        row.rsrq_db = parse_double_field(fields[2], line_no, "rsrq_db");
        parsed.push_back(row);
    }
    return parsed;
}

std::vector<mobility::HandoverEvent> parse_handovers_csv(const std::string& text) {
    const auto rows = read_csv_rows(text, "step,from_station,to_station");
    std::vector<mobility::HandoverEvent> events;
    events.reserve(rows.size());
    for (const auto& [line_no, fields] : rows) {
        if (fields.size() != 3) {
            throw IoError("line " + std::to_string(line_no) + ": expected 3 handover fields");
        }
        events.push_back({static_cast<std::size_t>(parse_int_field(fields[0], line_no, "step")),
                          static_cast<int>(parse_int_field(fields[1], line_no, "from_station")),
                          static_cast<int>(parse_int_field(fields[2], line_no, "to_station"))});
    }
    return events;
}

std::vector<double> parse_shares_csv(const std::string& text) {
    const auto rows = read_csv_rows(text, "station,share");
    std::vector<double> shares;
    shares.reserve(rows.size());
    for (const auto& [line_no, fields] : rows) {
        if (fields.size() != 2 ||
            static_cast<std::size_t>(parse_int_field(fields[0], line_no, "station")) != shares.size()) {
            throw IoError("line " + std::to_string(line_no) + ": bad share row");
        }
        shares.push_back(parse_double_field(fields[1], line_no, "share"));
    }
    return shares;
}

std::string handovers_csv(const mobility::SimResult& result, const Provenance& prov) {
    std::string out = provenance_line(prov);
    out += "step,from_station,to_station\n";
    for (const auto& h : result.handovers) {
        out += std::to_string(h.step) + "," + std::to_string(h.from_station) + "," +
               std::to_string(h.to_station) + "\n";
    }
    return out;
}

std::string shares_csv(const mobility::SimResult& result, const Provenance& prov) {
    std::string out = provenance_line(prov);
    out += "station,share\n";
    for (std::size_t i = 0; i < result.shares.size(); ++i) {
        out += std::to_string(i) + "," + format_double(result.shares[i]) + "\n";
    }
    return out;
}

std::string experiment_report_csv(const std::vector<mobility::PlacementComparison>& rows,
                                  const Provenance& prov) {
    std::vector<double> ils_means;
    std::vector<double> predict_means;
    ils_means.reserve(rows.size());
    predict_means.reserve(rows.size());
    for (const auto& r : rows) {
        ils_means.push_back(r.mean_rsrq_ils);
        predict_means.push_back(r.mean_rsrq_predict);
    }
    const stats::Summary ils_summary = stats::summarize(ils_means);
    const stats::Summary predict_summary = stats::summarize(predict_means);
    const stats::KsResult ks = stats::ks_two_sample(ils_means, predict_means);

    std::string out = provenance_line(prov);
    out += "kind,instance,mean_rsrq_ils,mean_rsrq_predict,ks_d,ks_p\n";
    for (const auto& r : rows) {
        out += "instance," + std::to_string(r.instance) + "," + format_double(r.mean_rsrq_ils) +
               "," + format_double(r.mean_rsrq_predict) + ",,\n";
    }
    out += "summary," + std::to_string(rows.size()) + "," + format_double(ils_summary.mean) + "," +
           format_double(predict_summary.mean) + "," + format_double(ks.d_stat) + "," +
           format_double(ks.p_value) + "\n";
    return out;
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw IoError("short write to '" + path + "'");
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace uassoc::io
