#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uassoc/instgen.hpp"
#include "uassoc/mobility.hpp"
#include "uassoc/model.hpp"

namespace uassoc::io {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Seed and config fingerprint embedded in every emitted file so a result
/// can be regenerated bit-exactly from its own header.
struct Provenance {
    std::uint64_t seed = 0;
    std::string config;  // canonical config string; hashed into the header
};

std::uint64_t fnv1a64(std::string_view text);
std::string hash_hex(std::string_view text);

/// "%.17g" rendering: enough digits for doubles to round-trip exactly.
std::string format_double(double value);

// --- instance JSON ---------------------------------------------------------

std::string instance_to_json(const model::Instance& inst,
                             const std::optional<instgen::InstanceSpec>& spec,
                             std::uint64_t seed);
model::Instance instance_from_json(const std::string& text);

void save_instance(const std::string& path, const model::Instance& inst,
                   const std::optional<instgen::InstanceSpec>& spec, std::uint64_t seed);
model::Instance load_instance(const std::string& path);

// --- scenario CSV inputs ----------------------------------------------------

/// Station CSV: header `id,x,y,radius,capacity,avg_handover`.
std::vector<model::BaseStation> load_stations_csv(const std::string& path);

/// Route CSV: header `t,x,y`, strictly increasing t.
mobility::RouteTrace load_route_csv(const std::string& path);

// --- result CSV outputs (writers return the full file contents) -------------

struct ResultRecord {
    std::string label;
    std::string solver;
    double cost = 0.0;
    std::string status;
    double elapsed_ms = 0.0;
    std::uint64_t seed = 0;
    friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

std::string result_records_csv(const std::vector<ResultRecord>& rows, const Provenance& prov);
std::vector<ResultRecord> parse_result_records_csv(const std::string& text);

std::string rsrq_series_csv(const mobility::SimResult& result, const Provenance& prov);
std::string handovers_csv(const mobility::SimResult& result, const Provenance& prov);
std::string shares_csv(const mobility::SimResult& result, const Provenance& prov);

struct ParsedRsrqRow {
    std::size_t step = 0;
    int serving = 0;
    double rsrq_db = 0.0;
    friend bool operator==(const ParsedRsrqRow&, const ParsedRsrqRow&) = default;
};
std::vector<ParsedRsrqRow> parse_rsrq_series_csv(const std::string& text);
std::vector<mobility::HandoverEvent> parse_handovers_csv(const std::string& text);
std::vector<double> parse_shares_csv(const std::string& text);

std::string experiment_report_csv(const std::vector<mobility::PlacementComparison>& rows,
                                  const Provenance& prov);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace uassoc::io
