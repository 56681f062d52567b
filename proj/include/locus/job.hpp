#pragma once

#include "locus/oracle.hpp"
#include "locus/simulate.hpp"

#include <json.hpp>
#include <string>
#include <vector>

namespace locus::job {

using json = nlohmann::json;

// Checks required keys, types and unknown keys; returns the config with
// defaults filled in. Throws ParameterError naming the offending key.
json validate_config(const json& config);

struct Construction {
    json descriptor;
    json precert; // bounds only, no oracles
};

Construction construct(const json& config);

struct Certification {
    json certificate;
    std::vector<OracleReport> oracles;
    bool refuted = false;
    std::string verdict;
};

// config "budget" < LOCUS_MAX_ENUM < explicit override
Budget resolve_budget(const json& descriptor, std::optional<std::uint64_t> override_max_enum);

Certification certify(const json& descriptor, const Budget& budget);

std::string oracle_csv(const std::vector<OracleReport>& reports);

std::vector<SimRow> simulate(const json& descriptor, const std::string& pattern, std::uint64_t seed, std::uint64_t trials,
                             const Budget& budget);

} // namespace locus::job
