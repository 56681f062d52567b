#include "locus/cyclic.hpp"

#include <algorithm>

namespace locus {

Poly::Poly(FieldPtr field, std::vector<elem> coeffs) : f(std::move(field)), c(std::move(coeffs)) { normalize(); }

void Poly::normalize()
{
    while (!c.empty() && c.back() == 0) c.pop_back();
}

elem Poly::eval(elem x) const
{
    elem r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = f->add(f->mul(r, x), c[i]);
    return r;
}

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero()) return Poly(a.f, {});
    const Field& f = *a.f;
    std::vector<elem> r(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            if (b.c[j]) r[i + j] = f.add(r[i + j], f.mul(a.c[i], b.c[j]));
    }
    return Poly(a.f, std::move(r));
}

Poly operator-(const Poly& a, const Poly& b)
{
    const Field& f = *a.f;
    std::vector<elem> r(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        elem x = i < a.c.size() ? a.c[i] : 0;
        elem y = i < b.c.size() ? b.c[i] : 0;
        r[i] = f.sub(x, y);
    }
    return Poly(a.f, std::move(r));
}

bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b)
{
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const Field& f = *a.f;
    std::vector<elem> rem = a.c;
    if (rem.size() < b.c.size()) return {Poly(a.f, {}), a};
    std::vector<elem> quo(rem.size() - b.c.size() + 1, 0);
    elem lead_inv = f.inv(b.c.back());
    for (std::size_t i = quo.size(); i-- > 0;) {
        elem t = f.mul(rem[i + b.c.size() - 1], lead_inv);
        quo[i] = t;
        if (!t) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) rem[i + j] = f.sub(rem[i + j], f.mul(t, b.c[j]));
    }
    return {Poly(a.f, std::move(quo)), Poly(a.f, std::move(rem))};
}

Poly x_n_minus_1(const FieldPtr& f, std::uint32_t n)
{
    std::vector<elem> c(n + 1, 0);
    c[0] = f->neg(1);
    c[n] = 1;
    return Poly(f, std::move(c));
}

ZeroSet::ZeroSet(std::uint32_t len, const std::vector<std::int64_t>& exps) : n(len)
{
    for (auto t : exps) {
        std::int64_t r = t % static_cast<std::int64_t>(len);
        if (r < 0) r += len;
        e.push_back(static_cast<std::uint32_t>(r));
    }
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
}

ZeroSet ZeroSet::range(std::uint32_t len, std::int64_t lo, std::int64_t hi)
{
    std::vector<std::int64_t> v;
    for (std::int64_t t = lo; t <= hi; ++t) v.push_back(t);
    return ZeroSet(len, v);
}

bool ZeroSet::contains(std::int64_t t) const
{
    std::int64_t r = t % static_cast<std::int64_t>(n);
    if (r < 0) r += n;
    return std::binary_search(e.begin(), e.end(), static_cast<std::uint32_t>(r));
}

ZeroSet ZeroSet::unite(const ZeroSet& o) const
{
    std::vector<std::int64_t> v(e.begin(), e.end());
    v.insert(v.end(), o.e.begin(), o.e.end());
    return ZeroSet(n, v);
}

ZeroSet ZeroSet::replicate(std::uint32_t len, std::uint32_t step, std::uint32_t count) const
{
    std::vector<std::int64_t> v;
    for (std::uint32_t s = 0; s < count; ++s)
        for (auto t : e) v.push_back(static_cast<std::int64_t>(t) + static_cast<std::int64_t>(s) * step);
    return ZeroSet(len, v);
}

CyclicCode generator_from_zeros(const FieldPtr& f, std::uint32_t n, const FieldElement& alpha, const ZeroSet& z)
{
    if ((f->q() - 1) % n != 0) throw ParameterError("n = " + std::to_string(n) + " does not divide q-1 = " + std::to_string(f->q() - 1));
    if (alpha.value() == 0 || order(*f, alpha.value()) != n)
        throw ParameterError("alpha does not have multiplicative order " + std::to_string(n));
    if (z.n != n) throw ParameterError("zero set length differs from code length");
    CyclicCode c;
    c.field = f;
    c.n = n;
    c.alpha = alpha.value();
    c.zeros = z;
    Poly g(f, {1});
    for (auto t : z.e) g = g * Poly(f, {f->neg(f->pow(c.alpha, t)), 1});
    c.g = g;
    return c;
}

std::pair<Poly, Poly> check_and_reversed_dual(const CyclicCode& c)
{
    auto [h, rem] = divmod(x_n_minus_1(c.field, c.n), c.g);
    if (!rem.is_zero()) throw std::logic_error("generator does not divide x^n - 1");
    return {h, h};
}

LemmaZeros lemma_zeros_vector(const CyclicCode& c, std::uint32_t nu, std::uint32_t m, std::uint32_t u)
{
    if (static_cast<std::uint64_t>(nu) * m != c.n)
        throw ParameterError("n = " + std::to_string(c.n) + " is not nu*m = " + std::to_string(nu) + "*" + std::to_string(m));
    if (u >= m) throw ParameterError("u must lie in [0, m-1]");
    const Field& f = *c.field;
    std::vector<elem> b(c.n, 0);
    for (std::uint32_t i = 0; i < m; ++i)
        b[static_cast<std::size_t>(i) * nu] = f.pow(c.alpha, static_cast<std::int64_t>(m - 1 - i) * nu * u);
    LemmaZeros out;
    out.b = Poly(c.field, b);
    auto h = check_and_reversed_dual(c).first;
    out.membership = divmod(out.b, h).second.is_zero();
    out.containment = true;
    for (std::uint32_t i = 0; i < nu; ++i)
        if (!c.zeros.contains(static_cast<std::int64_t>(u) + static_cast<std::int64_t>(i) * m)) out.containment = false;
    std::vector<elem> ann(nu + 1, 0);
    ann[0] = f.neg(f.pow(c.alpha, static_cast<std::int64_t>(nu) * u));
    ann[nu] = 1;
    out.annihilator = (Poly(c.field, ann) * out.b) == x_n_minus_1(c.field, c.n);
    return out;
}

std::uint32_t bch_designed_distance(const ZeroSet& z)
{
    if (z.e.empty()) return 1;
    if (z.size() == z.n) return z.n + 1;
    std::vector<bool> in(z.n, false);
    for (auto t : z.e) in[t] = true;
    // start scanning just after a non-zero so every run is seen whole
    std::uint32_t start = 0;
    while (in[start]) ++start;
    std::uint32_t best = 0, run = 0;
    for (std::uint32_t k = 1; k <= z.n; ++k) {
        std::uint32_t t = (start + k) % z.n;
        if (in[t]) {
            best = std::max(best, ++run);
        } else {
            run = 0;
        }
    }
    return best + 1;
}

std::vector<elem> encode(const CyclicCode& c, const std::vector<elem>& msg)
{
    if (msg.size() != c.k()) throw ParameterError("message length " + std::to_string(msg.size()) + " != k = " + std::to_string(c.k()));
    Poly p = Poly(c.field, msg) * c.g;
    std::vector<elem> w(c.n, 0);
    std::copy(p.c.begin(), p.c.end(), w.begin());
    return w;
}

bool is_codeword(const CyclicCode& c, const std::vector<elem>& word)
{
    if (word.size() != c.n) return false;
    Poly w(c.field, word);
    for (auto t : c.zeros.e)
        if (w.eval(c.field->pow(c.alpha, t)) != 0) return false;
    return true;
}

Matrix generator_matrix(const CyclicCode& c)
{
    Matrix g(c.k(), c.n);
    for (std::size_t i = 0; i < c.k(); ++i)
        for (std::size_t j = 0; j < c.g.c.size(); ++j) g.at(i, i + j) = c.g.c[j];
    return g;
}

Matrix parity_check_matrix(const CyclicCode& c)
{
    Matrix h(c.zeros.size(), c.n);
    for (std::size_t r = 0; r < c.zeros.size(); ++r) {
        elem b = c.field->pow(c.alpha, c.zeros.e[r]);
        elem x = 1;
        for (std::size_t s = 0; s < c.n; ++s) {
            h.at(r, s) = x;
            x = c.field->mul(x, b);
        }
    }
    return h;
}

LocalityCertificate local_structure(const CyclicCode& c, std::uint32_t m, const ZeroSet& zloc, std::uint32_t delta)
{
    LocalityCertificate cert;
    cert.m = m;
    cert.delta = delta;
    cert.zloc = zloc;
    if (m == 0 || c.n % m != 0) {
        cert.error = "local length " + std::to_string(m) + " does not divide n = " + std::to_string(c.n);
        return cert;
    }
    cert.nu = c.n / m;
    const Field& f = *c.field;
    cert.run_ok = true;
    for (std::uint32_t t = 1; t < delta; ++t)
        if (!zloc.contains(t)) cert.run_ok = false;
    cert.shifts_ok = true;
    for (std::uint32_t s = 0; s < cert.nu; ++s)
        for (auto t : zloc.e)
            if (!c.zeros.contains(static_cast<std::int64_t>(t) + static_cast<std::int64_t>(s) * m)) cert.shifts_ok = false;
    if (!cert.run_ok) cert.error = "{1..delta-1} is not contained in the local zero set";
    else if (!cert.shifts_ok) cert.error = "shifted local zero set is not contained in the code zeros";
    cert.dim_bound = m - zloc.size();

    Matrix g = generator_matrix(c);
    std::vector<std::size_t> cols;
    for (std::uint32_t j = 0; j < m; ++j) cols.push_back(static_cast<std::size_t>(j) * cert.nu);
    Matrix pg = row_basis(f, select_columns(g, cols));
    cert.punctured_dim = pg.rows;

    // the punctured code is cyclic of length m with root beta = alpha^nu
    elem beta = f.pow(c.alpha, cert.nu);
    std::vector<std::int64_t> pz;
    for (std::uint32_t u = 0; u < m; ++u) {
        elem x = f.pow(beta, u);
        bool all = true;
        for (std::size_t i = 0; i < pg.rows && all; ++i) {
            std::vector<elem> row(pg.row(i), pg.row(i) + m);
            if (Poly(c.field, row).eval(x) != 0) all = false;
        }
        if (all) pz.push_back(u);
    }
    cert.punctured_zeros = ZeroSet(m, pz);
    cert.punctured_bch = bch_designed_distance(cert.punctured_zeros);

    cert.exact_dimension = true;
    for (std::uint32_t u = 0; u < m; ++u) {
        if (zloc.contains(u)) continue;
        bool some = false;
        for (std::uint32_t s = 0; s < cert.nu && !some; ++s)
            if (c.g.eval(f.pow(c.alpha, static_cast<std::int64_t>(u) + static_cast<std::int64_t>(s) * m)) != 0) some = true;
        if (!some) cert.exact_dimension = false;
    }

    for (std::uint32_t o = 0; o < cert.nu; ++o) {
        std::vector<std::uint32_t> grp;
        for (std::uint32_t j = 0; j < m; ++j) grp.push_back(o + j * cert.nu);
        cert.groups.push_back(grp);
    }
    return cert;
}

std::size_t local_repair(const CyclicCode& c, const LocalityCertificate& cert, std::vector<elem>& word,
                         std::vector<bool>& erased)
{
    const Field& f = *c.field;
    const std::uint32_t m = cert.m;
    Matrix h(cert.zloc.size(), m);
    for (std::size_t r = 0; r < cert.zloc.size(); ++r) {
        elem b = f.pow(c.alpha, static_cast<std::int64_t>(cert.zloc.e[r]) * cert.nu);
        elem x = 1;
        for (std::uint32_t j = 0; j < m; ++j) {
            h.at(r, j) = x;
            x = f.mul(x, b);
        }
    }
    std::size_t filled = 0;
    for (const auto& grp : cert.groups) {
        std::vector<elem> seg(m);
        std::vector<bool> er(m);
        std::size_t cnt = 0;
        for (std::uint32_t j = 0; j < m; ++j) {
            seg[j] = word[grp[j]];
            er[j] = erased[grp[j]];
            cnt += er[j];
        }
        if (cnt == 0 || cnt >= cert.delta) continue;
        std::vector<bool> det;
        if (!solve_erasures(f, h, seg, er, det)) continue;
        for (std::uint32_t j = 0; j < m; ++j)
            if (er[j] && det[j]) {
                word[grp[j]] = seg[j];
                erased[grp[j]] = false;
                ++filled;
            }
    }
    return filled;
}

} // namespace locus
