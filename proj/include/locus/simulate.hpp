#pragma once

#include "locus/conv.hpp"
#include "locus/cyclic.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace locus {

struct PatternSpec {
    enum class Kind { random, bernoulli, local, fixed } kind = Kind::random;
    std::uint64_t count = 0;   // random:K, local:E
    double probability = 0;    // bernoulli:P
    std::vector<std::size_t> fixed;

    // "random:K", "bernoulli:P", "local:E"; anything else is read as a JSON
    // pattern file: {"erasures": [[row, col], ...]} or {"erasures": [i, ...]}
    static PatternSpec parse(const std::string& text, std::uint32_t grid_rows);
};

struct SimRow {
    std::uint64_t pattern_id = 0;
    std::size_t erasures = 0;
    bool recovered = false;
    std::uint32_t rounds = 0;
    std::size_t trace_length = 0;
};

std::string simulation_csv_header();
std::string simulation_csv(const std::vector<SimRow>& rows);

// Draws an erasure mask of the given length. groups lists the repair groups
// (coordinate indices) used by local:E.
std::vector<bool> draw_pattern(const PatternSpec& spec, std::size_t length,
                               const std::vector<std::vector<std::size_t>>& groups, std::mt19937_64& rng);

std::vector<SimRow> repair_simulation(const GridCode& code, const PatternSpec& spec, std::uint64_t trials,
                                      std::uint64_t seed);

// Hierarchical repair of a cyclic code: local repair level by level, then a
// global erasure solve.
struct HierarchicalRepair {
    const CyclicCode* code = nullptr;
    std::vector<LocalityCertificate> levels;
};

struct CyclicRepairResult {
    bool success = false;
    std::uint32_t rounds = 0;
    std::size_t filled = 0;
    std::vector<elem> word;
};

CyclicRepairResult hierarchical_repair(const HierarchicalRepair& h, std::vector<elem> word, std::vector<bool> erased);

std::vector<SimRow> repair_simulation(const HierarchicalRepair& h, const PatternSpec& spec, std::uint64_t trials,
                                      std::uint64_t seed);

} // namespace locus
