#include "locus/field.hpp"

#include <numeric>
#include <sstream>

namespace locus {

namespace {

using upoly = std::vector<std::uint32_t>; // coefficients mod p, low to high

void trim(upoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// remainder of a modulo monic b over F_p
upoly pmod(upoly a, const upoly& b, std::uint32_t p)
{
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        std::uint32_t lead = a.back();
        std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i)
            a[i + shift] = (a[i + shift] + (p - lead) * b[i]) % p;
        trim(a);
    }
    return a;
}

upoly from_code(std::uint64_t code, std::uint32_t p, std::uint32_t len)
{
    upoly a(len);
    for (std::uint32_t i = 0; i < len; ++i) {
        a[i] = code % p;
        code /= p;
    }
    return a;
}

bool irreducible(const upoly& f, std::uint32_t p)
{
    const std::uint32_t m = static_cast<std::uint32_t>(f.size() - 1);
    for (std::uint32_t d = 1; d <= m / 2; ++d) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t c = 0; c < count; ++c) {
            upoly g = from_code(c, p, d);
            g.push_back(1);
            if (pmod(f, g, p).empty()) return false;
        }
    }
    return true;
}

} // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldPtr Field::create(std::uint32_t p, std::uint32_t m)
{
    if (!is_prime(p)) throw ParameterError("field characteristic " + std::to_string(p) + " is not prime");
    if (m < 1) throw ParameterError("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        q *= p;
        if (q > 65536) throw ParameterError("field order " + std::to_string(p) + "^" + std::to_string(m) + " exceeds 65536");
    }

    std::shared_ptr<Field> f(new Field());
    f->p_ = p;
    f->m_ = m;
    f->q_ = static_cast<std::uint32_t>(q);
    const std::uint32_t n = f->q_ - 1;
    f->exp_.assign(2 * static_cast<std::size_t>(n) + 1, 0);
    f->log_.assign(f->q_, 0);

    auto build = [&](auto step) {
        elem x = 1;
        for (std::uint32_t e = 0; e < n; ++e) {
            if (e > 0 && x == 1) return false;
            f->exp_[e] = x;
            x = step(x);
        }
        return x == 1;
    };

    if (m == 1) {
        for (std::uint32_t g = 1; g < p; ++g) {
            if (p == 2 || build([&](elem x) { return static_cast<elem>((std::uint64_t(x) * g) % p); })) {
                f->gen_ = g;
                f->modulus_ = {(p - g) % p, 1};
                if (p == 2) f->exp_[0] = 1;
                break;
            }
        }
    } else {
        bool found = false;
        for (std::uint64_t code = 1; code < q && !found; ++code) {
            upoly mod = from_code(code, p, m);
            if (mod[0] == 0) continue;
            mod.push_back(1);
            if (!irreducible(mod, p)) continue;
            auto times_x = [&](elem v) {
                upoly a = from_code(v, p, m);
                std::uint32_t top = a[m - 1];
                for (std::uint32_t i = m - 1; i > 0; --i) a[i] = a[i - 1];
                a[0] = 0;
                for (std::uint32_t i = 0; i < m; ++i) a[i] = (a[i] + (p - top) * mod[i]) % p;
                elem r = 0;
                for (std::uint32_t i = m; i-- > 0;) r = r * p + a[i];
                return r;
            };
            if (build(times_x)) {
                f->modulus_ = mod;
                f->gen_ = p;
                found = true;
            }
        }
        if (!found) throw std::logic_error("no primitive polynomial found");
    }

    for (std::uint32_t e = 0; e < n; ++e) {
        f->log_[f->exp_[e]] = e;
        f->exp_[e + n] = f->exp_[e];
    }
    if (p != 2 && m > 1) {
        f->neg_.resize(f->q_);
        for (elem a = 0; a < f->q_; ++a) {
            elem r = 0, mul = 1, v = a;
            for (std::uint32_t i = 0; i < m; ++i) {
                r += ((p - v % p) % p) * mul;
                v /= p;
                mul *= p;
            }
            f->neg_[a] = r;
        }
        if (f->q_ <= 256) {
            f->addtab_.resize(std::size_t(f->q_) * f->q_);
            for (elem a = 0; a < f->q_; ++a)
                for (elem b = 0; b < f->q_; ++b)
                    f->addtab_[a * f->q_ + b] = static_cast<std::uint16_t>(f->add_slow(a, b));
        }
    }
    return f;
}

elem Field::add_slow(elem a, elem b) const
{
    elem r = 0, mul = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
        r += ((a % p_ + b % p_) % p_) * mul;
        a /= p_;
        b /= p_;
        mul *= p_;
    }
    return r;
}

elem Field::inv(elem a) const
{
    if (a == 0) throw std::domain_error("inverse of zero in " + name());
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

elem Field::pow(elem a, std::int64_t e) const
{
    if (a == 0) {
        if (e == 0) return 1;
        if (e < 0) throw std::domain_error("negative power of zero");
        return 0;
    }
    const std::int64_t n = q_ - 1;
    std::int64_t t = (static_cast<std::int64_t>(log_[a]) * (e % n)) % n;
    if (t < 0) t += n;
    return exp_[t];
}

std::uint32_t Field::log(elem a) const
{
    if (a == 0) throw std::domain_error("log of zero");
    return log_[a];
}

elem Field::exp(std::int64_t e) const
{
    const std::int64_t n = q_ - 1;
    e %= n;
    if (e < 0) e += n;
    return exp_[e];
}

elem Field::from_int(std::int64_t k) const
{
    std::int64_t r = k % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<elem>(r);
}

std::string Field::name() const
{
    std::ostringstream os;
    os << "GF(" << p_;
    if (m_ > 1) os << "^" << m_;
    os << ")";
    return os.str();
}

std::uint64_t order(const Field& f, elem a)
{
    if (a == 0) throw std::domain_error("order of zero");
    const std::uint64_t n = f.q() - 1;
    const std::uint64_t l = f.log(a);
    return n / std::gcd(n, l);
}

FieldElement::FieldElement(FieldPtr f, elem v) : f_(std::move(f)), v_(v)
{
    if (!f_) throw std::invalid_argument("field element without context");
    if (v_ >= f_->q()) throw std::out_of_range("element value out of range for " + f_->name());
}

void FieldElement::same(const FieldElement& o) const
{
    if (f_ != o.f_ && !(f_->p() == o.f_->p() && f_->m() == o.f_->m()))
        throw std::invalid_argument("mixed-field operands: " + f_->name() + " and " + o.f_->name());
}

FieldElement FieldElement::operator+(const FieldElement& o) const
{
    same(o);
    return {f_, f_->add(v_, o.v_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const
{
    same(o);
    return {f_, f_->sub(v_, o.v_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const
{
    same(o);
    return {f_, f_->mul(v_, o.v_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const
{
    same(o);
    return {f_, f_->div(v_, o.v_)};
}
FieldElement FieldElement::operator-() const { return {f_, f_->neg(v_)}; }
FieldElement FieldElement::inv() const { return {f_, f_->inv(v_)}; }
FieldElement FieldElement::pow(std::int64_t e) const { return {f_, f_->pow(v_, e)}; }
bool FieldElement::operator==(const FieldElement& o) const
{
    same(o);
    return v_ == o.v_;
}

FieldElement root_of_unity(const FieldPtr& f, std::uint64_t n)
{
    const std::uint64_t qm1 = f->q() - 1;
    if (n == 0 || qm1 % n != 0)
        throw ParameterError(std::to_string(n) + " does not divide q-1 = " + std::to_string(qm1) + " in " + f->name());
    return {f, f->exp(static_cast<std::int64_t>(qm1 / n))};
}

} // namespace locus
