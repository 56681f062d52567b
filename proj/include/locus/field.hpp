#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace locus {

using elem = std::uint32_t;

struct ParameterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// GF(p^m) with log/antilog tables. Elements are polynomial-basis integers
// sum c_i p^i. Immutable after create().
class Field {
public:
    static FieldPtr create(std::uint32_t p, std::uint32_t m);

    std::uint32_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    std::uint32_t q() const { return q_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    elem generator() const { return gen_; }

    elem add(elem a, elem b) const
    {
        if (p_ == 2) return a ^ b;
        if (m_ == 1) return (a + b) % p_;
        if (!addtab_.empty()) return addtab_[a * q_ + b];
        return add_slow(a, b);
    }
    elem neg(elem a) const
    {
        if (p_ == 2) return a;
        if (m_ == 1) return a ? p_ - a : 0;
        return neg_[a];
    }
    elem sub(elem a, elem b) const { return add(a, neg(b)); }
    elem mul(elem a, elem b) const
    {
        if (!a || !b) return 0;
        return exp_[log_[a] + log_[b]];
    }
    elem inv(elem a) const;
    elem div(elem a, elem b) const { return mul(a, inv(b)); }
    elem pow(elem a, std::int64_t e) const;
    // discrete log base generator(); a != 0
    std::uint32_t log(elem a) const;
    elem exp(std::int64_t e) const;

    // integer multiple k*1 in the prime subfield
    elem from_int(std::int64_t k) const;

    std::string name() const;

private:
    Field() = default;
    elem add_slow(elem a, elem b) const;

    std::uint32_t p_ = 0, m_ = 0, q_ = 0;
    std::vector<std::uint32_t> modulus_;
    elem gen_ = 0;
    std::vector<elem> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<elem> neg_;
    std::vector<std::uint16_t> addtab_;
};

class FieldElement {
public:
    FieldElement(FieldPtr f, elem v);

    const FieldPtr& field() const { return f_; }
    elem value() const { return v_; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inv() const;
    FieldElement pow(std::int64_t e) const;
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

private:
    void same(const FieldElement& o) const;
    FieldPtr f_;
    elem v_;
};

// Primitive n-th root of unity g^((q-1)/n).
FieldElement root_of_unity(const FieldPtr& f, std::uint64_t n);

// Multiplicative order of a nonzero element.
std::uint64_t order(const Field& f, elem a);

bool is_prime(std::uint64_t n);

} // namespace locus
