#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "ecprime/oracle.hpp"
#include "ecprime/primality.hpp"

namespace ecprime {

inline constexpr const char* kSchema = "ecprime.run/1";
inline constexpr const char* kToolVersion = "0.1.0";

struct RunRecord {
    FormCandidate candidate;
    Verdict verdict;
    std::optional<double> elapsed_ms;
    /// Extra top-level fields, e.g. a Lucas-Lehmer comparison.
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

struct JsonOptions {
    /// Include the full x/S chain of sequence certificates.
    bool include_trace = false;
};

nlohmann::ordered_json certificate_to_json(const Certificate& cert, const JsonOptions& opts = {});
Certificate certificate_from_json(const nlohmann::json& j);

nlohmann::ordered_json record_to_json(const RunRecord& record, const JsonOptions& opts = {});
/// Throws std::invalid_argument (or a json exception) on malformed input.
RunRecord record_from_json(const nlohmann::json& j);

/// Parses a record and replays its certificate.
ReplayResult replay_record(const nlohmann::json& j);

nlohmann::ordered_json report_to_json(const oracle::TheoremReport& report);

}  // namespace ecprime
