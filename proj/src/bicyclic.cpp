#include "locus/bicyclic.hpp"

#include "locus/hlrc.hpp"
#include "locus/oracle.hpp"

#include <cmath>

namespace locus {

BicyclicCode build_bicyclic(std::uint32_t n, std::uint32_t r1, std::uint32_t r2, std::uint32_t delta, const FieldPtr& f)
{
    if (r1 > r2) throw ParameterError("need r1 <= r2");
    if (r1 < 1) throw ParameterError("need r1 >= 1");
    if (n % (r1 + 1) != 0) throw ParameterError("r1+1 = " + std::to_string(r1 + 1) + " does not divide n = " + std::to_string(n));
    if (n % (r2 + 1) != 0) throw ParameterError("r2+1 = " + std::to_string(r2 + 1) + " does not divide n = " + std::to_string(n));
    if ((f->q() - 1) % n != 0) throw ParameterError("n = " + std::to_string(n) + " does not divide q-1 = " + std::to_string(f->q() - 1));
    if (delta < 2) throw ParameterError("delta must be >= 2");

    BicyclicCode c;
    c.field = f;
    c.n = n;
    c.r1 = r1;
    c.r2 = r2;
    c.delta = delta;
    c.alpha = root_of_unity(f, n).value();
    c.zeros.n = n;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            bool row = i % (r1 + 1) == 0;
            bool col = j % (r2 + 1) == 0;
            bool hyp = static_cast<std::uint64_t>(i + 1) * (j + 1) < delta;
            c.rows_part += row;
            c.cols_part += col;
            c.hyper_part += hyp;
            if (row || col || hyp) c.zeros.pairs.insert({i, j});
        }
    return c;
}

std::size_t zero_count_inclusion_exclusion(std::uint32_t n, std::uint32_t r1, std::uint32_t r2, std::uint32_t delta)
{
    const std::int64_t a = static_cast<std::int64_t>(n / (r1 + 1)) * n;
    const std::int64_t b = static_cast<std::int64_t>(n) * (n / (r2 + 1));
    const std::int64_t ab = static_cast<std::int64_t>(n / (r1 + 1)) * (n / (r2 + 1));
    std::int64_t d = 0, ad = 0, bd = 0, abd = 0;
    for (std::uint32_t i = 0; i < n && i + 1 < delta; ++i)
        for (std::uint32_t j = 0; j < n && static_cast<std::uint64_t>(i + 1) * (j + 1) < delta; ++j) {
            bool ia = i % (r1 + 1) == 0, jb = j % (r2 + 1) == 0;
            ++d;
            ad += ia;
            bd += jb;
            abd += ia && jb;
        }
    return static_cast<std::size_t>(a + b + d - ab - ad - bd + abd);
}

std::uint32_t hyperbolic_designed_distance(const BiZeroSet& z)
{
    std::uint32_t d = 1;
    const std::uint64_t top = static_cast<std::uint64_t>(z.n) * z.n;
    while (d <= top) {
        // pairs with (i+1)(j+1) = d join when moving to d+1
        bool ok = true;
        for (std::uint32_t a = 1; a <= z.n && ok; ++a)
            if (d % a == 0) {
                std::uint32_t b = d / a;
                if (b <= z.n && !z.contains(a - 1, b - 1)) ok = false;
            }
        if (!ok) break;
        ++d;
    }
    return d;
}

double dimension_lower_bound(std::uint32_t n, std::uint32_t r1, std::uint32_t r2, std::uint32_t delta)
{
    double main = static_cast<double>(n) * n * r1 * r2 / ((r1 + 1.0) * (r2 + 1.0));
    double tail = delta > 1 ? delta * (1.0 + std::log(delta - 1.0)) : 0.0;
    return main - tail;
}

Matrix bicyclic_parity_check(const BicyclicCode& c)
{
    const Field& f = *c.field;
    Matrix h(c.zeros.size(), static_cast<std::size_t>(c.n) * c.n);
    std::size_t r = 0;
    for (const auto& [i, j] : c.zeros.pairs) {
        for (std::uint32_t a = 0; a < c.n; ++a)
            for (std::uint32_t b = 0; b < c.n; ++b)
                h.at(r, c.coord(a, b)) = f.pow(c.alpha, static_cast<std::int64_t>(i) * a + static_cast<std::int64_t>(j) * b);
        ++r;
    }
    return h;
}

Matrix bicyclic_generator(const BicyclicCode& c) { return nullspace(*c.field, bicyclic_parity_check(c)); }

RecoveringSets recovering_sets(const BicyclicCode& c, std::uint32_t a, std::uint32_t b)
{
    if (a >= c.n || b >= c.n) throw ParameterError("coordinate out of range");
    RecoveringSets s;
    const std::uint32_t nu1 = c.n / (c.r1 + 1), nu2 = c.n / (c.r2 + 1);
    for (std::uint32_t t = 1; t <= c.r1; ++t) s.vertical.push_back(c.coord((a + t * nu1) % c.n, b));
    for (std::uint32_t t = 1; t <= c.r2; ++t) s.horizontal.push_back(c.coord(a, (b + t * nu2) % c.n));
    return s;
}

namespace {

void check_coordinate(const BicyclicCode& c, const Matrix& g, std::uint32_t a, std::uint32_t b, AvailabilityCertificate& cert,
                      std::size_t& fail)
{
    const Field& f = *c.field;
    RecoveringSets s = recovering_sets(c, a, b);
    const std::size_t target = c.coord(a, b);
    bool bad = false;
    for (auto v : s.vertical) {
        if (v == target) bad = true;
        for (auto h : s.horizontal)
            if (v == h || h == target) bad = true;
    }
    if (bad) cert.disjoint = false;
    for (int side = 0; side < 2; ++side) {
        std::vector<std::size_t> cols{target};
        const auto& set = side == 0 ? s.vertical : s.horizontal;
        cols.insert(cols.end(), set.begin(), set.end());
        Matrix pg = select_columns(g, cols);
        std::size_t limit = side == 0 ? c.r1 : c.r2;
        if (rank(f, pg) > limit) {
            cert.ranks_ok = false;
            bad = true;
        }
        if (!distance_at_least(f, pg, 2)) {
            cert.distance_ok = false;
            bad = true;
        }
    }
    if (bad) ++fail;
}

} // namespace

AvailabilityCertificate availability_verify(const BicyclicCode& c, const Matrix& g)
{
    AvailabilityCertificate cert;
    const auto total = static_cast<std::int64_t>(c.n) * c.n;
    cert.coordinates = static_cast<std::size_t>(total);
    bool disjoint = true, ranks = true, dist = true;
    std::size_t fails = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : fails) reduction(&& : disjoint, ranks, dist)
    for (std::int64_t idx = 0; idx < total; ++idx) {
        AvailabilityCertificate local;
        std::size_t f = 0;
        check_coordinate(c, g, static_cast<std::uint32_t>(idx / c.n), static_cast<std::uint32_t>(idx % c.n), local, f);
        fails += f;
        disjoint = disjoint && local.disjoint;
        ranks = ranks && local.ranks_ok;
        dist = dist && local.distance_ok;
    }
    cert.failures = fails;
    cert.disjoint = disjoint;
    cert.ranks_ok = ranks;
    cert.distance_ok = dist;
    return cert;
}

AvailabilityCertificate availability_verify_serial(const BicyclicCode& c, const Matrix& g)
{
    AvailabilityCertificate cert;
    cert.coordinates = static_cast<std::size_t>(c.n) * c.n;
    for (std::uint32_t a = 0; a < c.n; ++a)
        for (std::uint32_t b = 0; b < c.n; ++b) check_coordinate(c, g, a, b, cert, cert.failures);
    return cert;
}

elem repair_from_set(const BicyclicCode& c, const std::vector<elem>& word, std::uint32_t a, std::uint32_t b, bool vertical)
{
    const Field& f = *c.field;
    RecoveringSets s = recovering_sets(c, a, b);
    elem sum = 0;
    for (auto p : vertical ? s.vertical : s.horizontal) sum = f.add(sum, word[p]);
    return f.neg(sum);
}

std::int64_t lrc_max_dimension(std::int64_t n, std::int64_t r, std::int64_t delta)
{
    std::int64_t best = 0;
    for (std::int64_t k = 1; k <= n; ++k)
        if (bound_sb1(n, k, r) >= delta) best = k;
    return best;
}

ProductBaseline product_baseline(std::int64_t n, std::int64_t r1, std::int64_t r2, std::int64_t delta_component)
{
    ProductBaseline p;
    p.k1 = lrc_max_dimension(n, r1, delta_component);
    p.k2 = lrc_max_dimension(n, r2, delta_component);
    p.k = p.k1 * p.k2;
    return p;
}

} // namespace locus
