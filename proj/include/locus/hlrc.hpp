#pragma once

#include "locus/cyclic.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace locus {

// Parameter ledger for a hierarchy of L = r.size() nested levels. Vectors are
// indexed from 1 (slot 0 unused) except delta, where delta[0] = 1, and b0,
// where b0[0] = 0.
struct HlrcProfile {
    std::uint32_t levels = 0; // L; an h-level H-LRC code has L = h + 1
    std::vector<std::int64_t> r, delta, n, nu, a, b;
    std::vector<std::vector<std::int64_t>> u; // u[i][j], 1 <= i < L, 0 <= j < i
    std::vector<std::vector<std::int64_t>> bc; // cascade b^{(i)}_j, 1 <= j <= i
    std::vector<std::int64_t> b0;

    std::uint32_t h() const { return levels - 1; }
};

HlrcProfile derive_profile(const std::vector<std::int64_t>& r, std::int64_t delta1, const std::vector<std::int64_t>& nu);

// Z_1..Z_L, Z_i over Z_{n_i}; result[i-1] = Z_i
std::vector<ZeroSet> build_zero_sets(const HlrcProfile& p);

struct LevelIdentity {
    std::uint32_t level = 0;
    std::size_t zeros = 0;
    std::int64_t expected = 0; // n_i - r_i
    bool card = false;
    bool dmod = false;
};

struct IdentityReport {
    std::vector<LevelIdentity> levels;
    bool ok() const;
    std::string first_failure() const;
};

IdentityReport cardinality_and_congruence_check(const std::vector<ZeroSet>& sets, const HlrcProfile& p);

struct OptCondition {
    std::uint32_t s = 0, l = 1; // l = 1 is the first family
    std::int64_t lhs = 0, rhs = 0;
    bool holds() const { return lhs == rhs; }
};

std::vector<OptCondition> opt_conditions(const HlrcProfile& p);
bool opt_conditions_hold(const HlrcProfile& p);

// delta_{i+1} from the closed form, i = 1..L-1; result[0] = delta_1
std::vector<std::int64_t> closed_form_deltas(const HlrcProfile& p);

std::int64_t ceil_div(std::int64_t a, std::int64_t b);

// d <= n - k - ceil(k/r) + 2
std::int64_t bound_sb1(std::int64_t n, std::int64_t k, std::int64_t r);
// d <= n - k + delta - ceil(k/r)(delta - 1)
std::int64_t bound_delta(std::int64_t n, std::int64_t k, std::int64_t r, std::int64_t delta);
// d <= n - k + delta_h - sum ceil(k/r_i)(delta_i - delta_{i-1}); r, delta 1-indexed, delta[0] = 1
std::int64_t bound_sb(std::int64_t n, std::int64_t k, const std::vector<std::int64_t>& r,
                      const std::vector<std::int64_t>& delta, std::uint32_t h);

struct LevelVerdict {
    std::uint32_t level = 0;
    std::int64_t n = 0, r = 0, delta = 0;
    std::uint32_t bch = 0;
    std::int64_t bound = 0;
    bool optimal = false;
    LocalityCertificate locality;
    bool strong_membership = false;
    bool strong_evaluation = false;
};

struct HlrcCertificate {
    std::size_t dim = 0;
    std::int64_t dim_claimed = 0;
    std::int64_t n = 0;
    std::uint32_t bch = 0;
    std::int64_t sb = 0;
    bool optimal = false; // bch == sb
    std::vector<OptCondition> conditions;
    bool conditions_hold = false;
    bool closed_form_match = false;
    IdentityReport identities;
    std::vector<LevelVerdict> levels; // local levels 1..h
    bool strongly_optimal = false;
    // unbounded construction only
    bool subfield_ok = true;
    std::vector<std::pair<std::int64_t, std::int64_t>> opt_d1; // lhs, rhs per l
    bool opt_d1_hold = false;
    std::vector<std::string> flags;
};

struct HlrcCode {
    HlrcProfile profile;
    std::vector<ZeroSet> zero_sets;
    CyclicCode code;
    HlrcCertificate cert;
};

HlrcCode construct(const HlrcProfile& p, const FieldPtr& f);

// q = p^m of the base field; the code lives in GF(q^m_ext)
HlrcCode unbounded_construct(const HlrcProfile& p, const FieldPtr& base, std::uint32_t m_ext);

} // namespace locus
