#pragma once

#include "locus/field.hpp"
#include "locus/linalg.hpp"

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace locus {

struct BiZeroSet {
    std::uint32_t n = 0;
    std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;

    bool contains(std::uint32_t i, std::uint32_t j) const { return pairs.count({i % n, j % n}) > 0; }
    std::size_t size() const { return pairs.size(); }
};

struct BicyclicCode {
    FieldPtr field;
    std::uint32_t n = 0, r1 = 0, r2 = 0, delta = 0;
    elem alpha = 0;
    BiZeroSet zeros;
    std::size_t rows_part = 0, cols_part = 0, hyper_part = 0; // |L21|, |L22|, |D2|

    std::size_t dim() const { return static_cast<std::size_t>(n) * n - zeros.size(); }
    std::size_t coord(std::uint32_t a, std::uint32_t b) const { return static_cast<std::size_t>(a) * n + b; }
};

BicyclicCode build_bicyclic(std::uint32_t n, std::uint32_t r1, std::uint32_t r2, std::uint32_t delta, const FieldPtr& f);

// |L21 u L22 u D2| by inclusion-exclusion over the three component sets
std::size_t zero_count_inclusion_exclusion(std::uint32_t n, std::uint32_t r1, std::uint32_t r2, std::uint32_t delta);

std::uint32_t hyperbolic_designed_distance(const BiZeroSet& z);

// n^2 r1 r2 / ((r1+1)(r2+1)) - delta (1 + ln(delta - 1))
double dimension_lower_bound(std::uint32_t n, std::uint32_t r1, std::uint32_t r2, std::uint32_t delta);

// rows (alpha^{i a + j b}) over (a, b) row-major, one per zero (i, j)
Matrix bicyclic_parity_check(const BicyclicCode& c);
Matrix bicyclic_generator(const BicyclicCode& c);

struct RecoveringSets {
    std::vector<std::size_t> vertical, horizontal;
};

RecoveringSets recovering_sets(const BicyclicCode& c, std::uint32_t a, std::uint32_t b);

struct AvailabilityCertificate {
    std::size_t coordinates = 0;
    std::size_t failures = 0;
    bool disjoint = true;
    bool ranks_ok = true;
    bool distance_ok = true;
    bool ok() const { return failures == 0; }
};

// every coordinate: both groups (target + set) have punctured rank <= r_t,
// distance >= 2, and the two sets are disjoint
AvailabilityCertificate availability_verify(const BicyclicCode& c, const Matrix& g);
AvailabilityCertificate availability_verify_serial(const BicyclicCode& c, const Matrix& g);

// Fill one erasure at (a, b) from the vertical (true) or horizontal set.
elem repair_from_set(const BicyclicCode& c, const std::vector<elem>& word, std::uint32_t a, std::uint32_t b, bool vertical);

// largest k with k + ceil(k/r) <= n - delta + 2 (optimal cyclic LRC with distance delta)
std::int64_t lrc_max_dimension(std::int64_t n, std::int64_t r, std::int64_t delta);

struct ProductBaseline {
    std::int64_t k1 = 0, k2 = 0, k = 0;
};

ProductBaseline product_baseline(std::int64_t n, std::int64_t r1, std::int64_t r2, std::int64_t delta_component);

} // namespace locus
