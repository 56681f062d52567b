#pragma once

#include "locus/field.hpp"
#include "locus/linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace locus {

struct Poly {
    FieldPtr f;
    std::vector<elem> c; // low to high, canonical: no trailing zeros

    Poly() = default;
    Poly(FieldPtr field, std::vector<elem> coeffs);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    elem eval(elem x) const;
    void normalize();
};

Poly operator*(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
bool operator==(const Poly& a, const Poly& b);
// quotient and remainder; b nonzero
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly x_n_minus_1(const FieldPtr& f, std::uint32_t n);

struct ZeroSet {
    std::uint32_t n = 0;
    std::vector<std::uint32_t> e; // sorted, unique, in [0, n)

    ZeroSet() = default;
    ZeroSet(std::uint32_t len, const std::vector<std::int64_t>& exps);
    static ZeroSet range(std::uint32_t len, std::int64_t lo, std::int64_t hi); // [lo, hi]

    bool contains(std::int64_t t) const;
    std::size_t size() const { return e.size(); }
    ZeroSet unite(const ZeroSet& o) const;
    // union over s < count of (this + s*step), reduced mod len
    ZeroSet replicate(std::uint32_t len, std::uint32_t step, std::uint32_t count) const;
};

struct CyclicCode {
    FieldPtr field;
    std::uint32_t n = 0;
    elem alpha = 0;
    ZeroSet zeros;
    Poly g;

    std::size_t k() const { return n - zeros.size(); }
};

CyclicCode generator_from_zeros(const FieldPtr& f, std::uint32_t n, const FieldElement& alpha, const ZeroSet& z);

// h = (x^n-1)/g and the generator of the reversed dual (h itself).
std::pair<Poly, Poly> check_and_reversed_dual(const CyclicCode& c);

struct LemmaZeros {
    Poly b;
    bool membership = false;   // h | b
    bool containment = false;  // {u + i m} subset of zeros
    bool annihilator = false;  // (x^nu - alpha^{nu u}) b = x^n - 1
};

LemmaZeros lemma_zeros_vector(const CyclicCode& c, std::uint32_t nu, std::uint32_t m, std::uint32_t u);

std::uint32_t bch_designed_distance(const ZeroSet& z);

std::vector<elem> encode(const CyclicCode& c, const std::vector<elem>& msg);
bool is_codeword(const CyclicCode& c, const std::vector<elem>& word);

// rows x^i g(x), i < k
Matrix generator_matrix(const CyclicCode& c);
// rows (alpha^{t s})_s for t in zeros
Matrix parity_check_matrix(const CyclicCode& c);

struct LocalityCertificate {
    std::uint32_t m = 0, nu = 0, delta = 0;
    ZeroSet zloc;
    bool run_ok = false;      // {1..delta-1} in zloc
    bool shifts_ok = false;   // union of zloc + s m inside zeros
    std::size_t dim_bound = 0;        // m - |zloc|
    std::size_t punctured_dim = 0;    // rank on {0, nu, ..., (m-1) nu}
    ZeroSet punctured_zeros;          // zeros of the punctured cyclic code
    std::uint32_t punctured_bch = 0;
    bool exact_dimension = false;     // evaluation test on g
    std::vector<std::vector<std::uint32_t>> groups;
    std::string error;

    bool ok() const
    {
        return error.empty() && run_ok && shifts_ok && punctured_dim <= dim_bound && punctured_bch >= delta;
    }
};

LocalityCertificate local_structure(const CyclicCode& c, std::uint32_t m, const ZeroSet& zloc, std::uint32_t delta);

// Erasure repair inside repair groups via the local parity rows; lowest group
// first. Returns the number of erasures filled; erased flags are cleared.
std::size_t local_repair(const CyclicCode& c, const LocalityCertificate& cert, std::vector<elem>& word,
                         std::vector<bool>& erased);

} // namespace locus
