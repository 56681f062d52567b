#pragma once

#include "locus/linalg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace locus {

struct Budget {
    std::uint64_t max_enumerations = 100000000;
    std::uint64_t max_patterns = 10000000;

    // LOCUS_MAX_ENUM overrides the default when set
    static Budget from_env();
};

struct OracleReport {
    std::string instance;
    std::string quantity;
    std::int64_t claimed_lo = 0, claimed_hi = 0;
    std::optional<std::int64_t> verified;
    std::uint64_t enumerations = 0;
    double seconds = 0;
    std::string outcome; // verified | refuted | budget-exceeded

    bool refuted() const { return outcome == "refuted"; }
};

std::string oracle_csv_header();
std::string oracle_csv_row(const OracleReport& r);

struct DistanceResult {
    bool exhaustive = false;
    std::uint64_t value = 0;
    std::uint64_t enumerations = 0;
};

// q^k - 1 nonzero messages (the message-space size checked against budget)
std::uint64_t message_space(const Field& f, std::size_t k);

// Both enumerate a row basis of g, so dependent rows are harmless.
// Lexicographic enumeration of every nonzero message with weight early-exit.
DistanceResult min_distance_serial(const Field& f, const Matrix& g, std::uint64_t budget);

// Projective enumeration (leading coefficient 1) in additive Gray order,
// chunked across OpenMP threads. Chunking is independent of thread count.
DistanceResult min_distance(const Field& f, const Matrix& g, std::uint64_t budget);

OracleReport min_distance_report(const std::string& instance, const Field& f, const Matrix& g, std::int64_t lo,
                                 std::int64_t hi, const Budget& b);

// Exact minimum distance of the row space of g is >= d: deleting any d-1
// coordinates keeps the rank.
bool distance_at_least(const Field& f, const Matrix& g, std::size_t d);

struct LocalityReport {
    bool pass = true;
    std::size_t groups = 0;
    std::vector<std::string> failures;
};

// For every group: punctured rank <= r and punctured distance >= delta;
// groups must cover all coordinates.
LocalityReport locality_verify(const Field& f, const Matrix& g, std::size_t r, std::size_t delta,
                               const std::vector<std::vector<std::uint32_t>>& groups);

// Fill erasures using parity-check matrix h; success iff all are determined.
bool erase_decode(const Field& f, const Matrix& h, std::vector<elem>& word, const std::vector<bool>& erased);

} // namespace locus
