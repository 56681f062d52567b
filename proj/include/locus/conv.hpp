#pragma once

#include "locus/cyclic.hpp"
#include "locus/linalg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace locus {

struct QuasiCyclicLrc {
    std::uint32_t n = 0, k = 0, j = 0, r = 0, delta = 0;
    std::int64_t delta3 = 0;
    CyclicCode block;

    std::uint32_t local_length() const { return r + delta - 1; }
    std::uint32_t length() const { return n * (j + 1); }
};

QuasiCyclicLrc build_block_code(std::uint32_t n, std::uint32_t k, std::uint32_t j, std::uint32_t r, std::uint32_t delta,
                                const FieldPtr& f);

// k x n polynomial generator; polys[i][l][s] is the coefficient of D^s.
struct ConvGenerator {
    FieldPtr field;
    std::uint32_t k = 0, n = 0;
    std::vector<std::vector<std::vector<elem>>> polys;

    std::uint32_t memory() const;
    Matrix coefficient(std::uint32_t s) const; // G_s, k x n
};

struct GIdentityError : ParameterError {
    std::size_t rank, size;
    GIdentityError(const std::string& what, std::size_t rk, std::size_t sz) : ParameterError(what), rank(rk), size(sz) {}
};

// Reduce a quasicyclic generator (coordinates l + n s) to G_I = I and read
// off g_{i,l}(D). Throws GIdentityError when G_I is singular.
ConvGenerator convolutional_from_block(const FieldPtr& f, const Matrix& g, std::uint32_t n, std::uint32_t k, std::uint32_t j);

ConvGenerator to_convolutional(const QuasiCyclicLrc& b);

// Circulant block matrix (G_{il}) with block columns l and inner index s.
Matrix circulant_blocks(const ConvGenerator& g, std::uint32_t T);

// Generator of the tailbiting code of period T, coordinates l + n s.
Matrix tailbiting_generator(const ConvGenerator& g, std::uint32_t T);

// u[i][s] -> c[l][s], products taken modulo D^T - 1
std::vector<std::vector<elem>> tailbiting_encode(const ConvGenerator& g, const std::vector<std::vector<elem>>& u);

// G_j^c, k(j+1) x n(j+1), coordinates s n + l
Matrix truncated_generator(const ConvGenerator& g, std::uint32_t j);

struct ColumnDistance {
    bool exhaustive = false;
    std::int64_t value = 0; // exact when exhaustive, else the upper bound
    std::uint64_t nodes = 0;
};

ColumnDistance column_distance(const ConvGenerator& g, std::uint32_t j, std::uint64_t budget);
ColumnDistance column_distance_serial(const ConvGenerator& g, std::uint32_t j, std::uint64_t budget);

std::int64_t column_distance_bound(std::int64_t n, std::int64_t k, std::int64_t r, std::int64_t delta, std::int64_t j);
std::int64_t singleton_column_bound(std::int64_t n, std::int64_t k, std::int64_t j);

// d[i] = d_i^c for i = 0..J; returns false if some d_j meets its bound
// while an earlier d_i falls below its own. Where the bound holds at i as
// well, this forces d_i to meet it.
bool propagation_consistent(const std::vector<std::int64_t>& d, std::int64_t n, std::int64_t k, std::int64_t r,
                            std::int64_t delta);

// Two-sided column-span characterization of d_j^c = d on H_j^c.
bool parity_span_oracle(const ConvGenerator& g, std::uint32_t j, std::uint32_t d, std::uint64_t max_subsets = 50000000);

// A linear code on an n x T grid, coordinate (l, s) <-> l + n s, with row
// repair groups given as time-index sets shared by every row.
struct GridCode {
    FieldPtr field;
    std::uint32_t n = 0, T = 0, window = 0;
    bool tailbiting = true;
    Matrix G, H;
    std::uint32_t r = 0, delta = 0;
    std::vector<std::vector<std::uint32_t>> row_groups;
    std::uint64_t d_window = 0;

    std::size_t coord(std::uint32_t l, std::uint32_t s) const { return l + static_cast<std::size_t>(n) * s; }
};

// groups {t + nu s'} of size r + delta - 1 inside each row of length T
std::vector<std::vector<std::uint32_t>> shifted_row_groups(std::uint32_t T, std::uint32_t r, std::uint32_t delta);

GridCode grid_from_block(const QuasiCyclicLrc& b);
GridCode grid_from_tailbiting(const ConvGenerator& g, std::uint32_t T, std::uint32_t r, std::uint32_t delta,
                              std::uint64_t d_window);

struct RowLocality {
    bool pass = true;
    std::vector<std::string> failures;
    std::size_t rows_checked = 0;
};

RowLocality row_locality_verify(const GridCode& c);

struct TraceEntry {
    std::string kind; // local | window
    std::uint32_t row = 0, col = 0;
    std::int64_t window_start = -1;
    std::uint32_t round = 0;
};

struct RepairResult {
    bool success = false;
    std::vector<TraceEntry> trace;
    std::uint32_t rounds = 0;
    std::vector<bool> residual;
    std::vector<elem> word;
};

RepairResult sliding_window_repair(const GridCode& c, const std::vector<elem>& word, const std::vector<bool>& erased);

} // namespace locus
