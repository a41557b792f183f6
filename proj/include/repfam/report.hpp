#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "repfam/representative.hpp"
#include "repfam/separator.hpp"
#include "repfam/verification.hpp"

namespace repfam {

using Json = nlohmann::ordered_json;

/// One CLI run. Everything but `timings` is deterministic given the
/// arguments, input files and seed.
struct RunReport {
    std::string subcommand;
    std::optional<std::string> input_digest;  // "sha256:<hex>" of the input file
    Json params = Json::object();
    Json answer;
    Json stats = Json::object();
    std::optional<VerificationSummary> verification;
    Json timings = Json::object();

    Json to_json() const;
    /// One "key: value" line per leaf, nested keys joined with dots.
    std::string to_text() const;
};

/// Lowercase hex SHA-256 of a file's bytes. Throws InputError when unreadable.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(const std::string& bytes);

Json to_json(const VerificationSummary& summary);
Json to_json(const FilterStats& stats);
Json to_json(const SeparatorInfo& info);
Json to_json(const SeparatorParams& params);

/// Copy of a report without its timings, for determinism comparisons.
Json without_timings(Json report);

}  // namespace repfam
