#include "locus/hlrc.hpp"

#include <sstream>

namespace locus {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

HlrcProfile derive_profile(const std::vector<std::int64_t>& r, std::int64_t delta1, const std::vector<std::int64_t>& nu)
{
    const std::size_t L = r.size();
    if (L == 0) throw ParameterError("r must be nonempty");
    if (nu.size() + 1 != L)
        throw ParameterError("nu must have " + std::to_string(L - 1) + " entries, got " + std::to_string(nu.size()));
    if (delta1 < 2) throw ParameterError("delta1 must be >= 2");
    if (r[0] < 1) throw ParameterError("r_1 must be >= 1");
    for (std::size_t i = 1; i < L; ++i)
        if (r[i] <= r[i - 1])
            throw ParameterError("r must be strictly increasing (r_" + std::to_string(i) + " = " + std::to_string(r[i - 1]) +
                                 ", r_" + std::to_string(i + 1) + " = " + std::to_string(r[i]) + ")");

    HlrcProfile p;
    p.levels = static_cast<std::uint32_t>(L);
    p.r.assign(L + 1, 0);
    p.n.assign(L + 1, 0);
    p.nu.assign(L, 0);
    p.a.assign(L, 0);
    p.b.assign(L, 0);
    p.delta.assign(L + 1, 0);
    p.b0.assign(L, 0);
    p.u.assign(L, {});
    p.bc.assign(L, {});
    for (std::size_t i = 0; i < L; ++i) p.r[i + 1] = r[i];
    p.delta[0] = 1;
    p.delta[1] = delta1;
    p.n[1] = p.r[1] + delta1 - 1;

    for (std::size_t i = 1; i < L; ++i) {
        const std::int64_t ai = ceil_div(p.r[i + 1], p.r[i]);
        if (nu[i - 1] < ai)
            throw ParameterError("nu_" + std::to_string(i) + " = " + std::to_string(nu[i - 1]) + " is below ceil(r_" +
                                 std::to_string(i + 1) + "/r_" + std::to_string(i) + ") = " + std::to_string(ai));
        p.nu[i] = nu[i - 1];
        p.a[i] = ai;
        p.b[i] = ai * p.r[i] - p.r[i + 1];
        p.n[i + 1] = p.nu[i] * p.n[i];

        p.u[i].assign(i, 0);
        p.bc[i].assign(i + 1, 0);
        p.bc[i][i] = p.b[i];
        for (std::size_t j = i; j >= 2; --j) {
            p.u[i][j - 1] = p.bc[i][j] / p.r[j - 1];
            p.bc[i][j - 1] = p.bc[i][j] % p.r[j - 1];
        }
        const std::int64_t t = p.bc[i][1] + p.b0[i - 1];
        p.b0[i] = t % p.r[1];
        p.u[i][0] = t / p.r[1];

        std::int64_t d = (p.nu[i] - p.a[i]) * p.n[i] + p.delta[i];
        for (std::size_t j = 1; j + 1 <= i; ++j) d += p.u[i][j] * p.n[j];
        d += p.u[i][0] * p.n[1] + p.b0[i] - p.b0[i - 1];
        if (d < p.delta[i])
            throw ParameterError("derived delta_" + std::to_string(i + 1) + " = " + std::to_string(d) + " is below delta_" +
                                 std::to_string(i) + " = " + std::to_string(p.delta[i]));
        p.delta[i + 1] = d;
    }
    return p;
}

std::vector<ZeroSet> build_zero_sets(const HlrcProfile& p)
{
    std::vector<ZeroSet> out;
    out.push_back(ZeroSet::range(static_cast<std::uint32_t>(p.n[1]), 1, p.delta[1] - 1));
    for (std::uint32_t i = 1; i < p.levels; ++i) {
        const auto len = static_cast<std::uint32_t>(p.n[i + 1]);
        ZeroSet lset = out.back().replicate(len, static_cast<std::uint32_t>(p.n[i]), static_cast<std::uint32_t>(p.nu[i]));
        out.push_back(lset.unite(ZeroSet::range(len, 1, p.delta[i + 1] - 1)));
    }
    return out;
}

bool IdentityReport::ok() const
{
    for (const auto& l : levels)
        if (!l.card || !l.dmod) return false;
    return true;
}

std::string IdentityReport::first_failure() const
{
    for (const auto& l : levels) {
        std::ostringstream os;
        if (!l.card) {
            os << "level " << l.level << ": |Z| = " << l.zeros << " but n - r = " << l.expected;
            return os.str();
        }
        if (!l.dmod) {
            os << "level " << l.level << ": delta congruence fails";
            return os.str();
        }
    }
    return {};
}

IdentityReport cardinality_and_congruence_check(const std::vector<ZeroSet>& sets, const HlrcProfile& p)
{
    IdentityReport rep;
    for (std::uint32_t i = 1; i <= p.levels; ++i) {
        LevelIdentity l;
        l.level = i;
        l.zeros = sets[i - 1].size();
        l.expected = p.n[i] - p.r[i];
        l.card = static_cast<std::int64_t>(l.zeros) == l.expected;
        const std::int64_t n1 = p.n[1];
        const std::int64_t lhs = p.delta[1] % n1;
        std::int64_t rhs = (p.delta[i] - (i >= 2 ? p.b0[i - 1] : 0)) % n1;
        if (rhs < 0) rhs += n1;
        l.dmod = lhs == rhs;
        rep.levels.push_back(l);
    }
    return rep;
}

std::vector<OptCondition> opt_conditions(const HlrcProfile& p)
{
    auto C = [&](std::size_t x, std::size_t y) { return ceil_div(p.r[x], p.r[y]); };
    std::vector<OptCondition> out;
    for (std::uint32_t s = 2; s + 1 <= p.levels; ++s) {
        OptCondition first;
        first.s = s;
        first.l = 1;
        first.lhs = C(s + 1, s) * C(s, 1) - C(s + 1, 1);
        first.rhs = p.u[s][0] + p.u[s][1];
        for (std::uint32_t j = 2; j + 1 <= s; ++j) first.rhs += p.u[s][j] * C(j, 1);
        out.push_back(first);
        for (std::uint32_t l = 2; l + 1 <= s; ++l) {
            OptCondition c;
            c.s = s;
            c.l = l;
            c.lhs = C(s + 1, s) * C(s, l) - C(s + 1, l);
            c.rhs = p.u[s][l];
            for (std::uint32_t j = l + 1; j + 1 <= s; ++j) c.rhs += p.u[s][j] * C(j, l);
            out.push_back(c);
        }
    }
    return out;
}

bool opt_conditions_hold(const HlrcProfile& p)
{
    for (const auto& c : opt_conditions(p))
        if (!c.holds()) return false;
    return true;
}

std::vector<std::int64_t> closed_form_deltas(const HlrcProfile& p)
{
    std::vector<std::int64_t> d{p.delta[1]};
    std::vector<std::int64_t> dl(p.levels + 1);
    dl[0] = 1;
    dl[1] = p.delta[1];
    for (std::uint32_t i = 1; i < p.levels; ++i) {
        std::int64_t v = p.n[i + 1] - p.r[i + 1] + dl[i];
        for (std::uint32_t l = 1; l <= i; ++l) v -= ceil_div(p.r[i + 1], p.r[l]) * (dl[l] - dl[l - 1]);
        dl[i + 1] = v;
        d.push_back(v);
    }
    return d;
}

std::int64_t bound_sb1(std::int64_t n, std::int64_t k, std::int64_t r) { return n - k - ceil_div(k, r) + 2; }

std::int64_t bound_delta(std::int64_t n, std::int64_t k, std::int64_t r, std::int64_t delta)
{
    return n - k + delta - ceil_div(k, r) * (delta - 1);
}

std::int64_t bound_sb(std::int64_t n, std::int64_t k, const std::vector<std::int64_t>& r,
                      const std::vector<std::int64_t>& delta, std::uint32_t h)
{
    std::int64_t v = n - k + delta[h];
    for (std::uint32_t i = 1; i <= h; ++i) v -= ceil_div(k, r[i]) * (delta[i] - delta[i - 1]);
    return v;
}

namespace {

// Per-level local certificates and strong-optimality tests shared by both constructions.
void certify_levels(HlrcCode& out, std::uint32_t top, bool include_zero)
{
    const HlrcProfile& p = out.profile;
    const CyclicCode& c = out.code;
    const Field& f = *c.field;
    const std::int64_t n = c.n;
    std::vector<LevelVerdict> lv(top);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t ii = 1; ii <= static_cast<std::int64_t>(top); ++ii) {
        const auto i = static_cast<std::uint32_t>(ii);
        LevelVerdict v;
        v.level = i;
        v.n = p.n[i];
        v.r = p.r[i];
        v.delta = p.delta[i];
        const ZeroSet& zi = out.zero_sets[i - 1];
        v.locality = local_structure(c, static_cast<std::uint32_t>(p.n[i]), zi, static_cast<std::uint32_t>(p.delta[i]));
        v.bch = v.locality.punctured_bch;
        v.bound = bound_sb(p.n[i], p.r[i], p.r, p.delta, i - 1);
        v.optimal = v.locality.ok() && v.locality.exact_dimension && static_cast<std::int64_t>(v.locality.punctured_dim) == p.r[i] &&
                    static_cast<std::int64_t>(v.bch) == v.bound;
        v.strong_membership = true;
        v.strong_evaluation = true;
        const std::int64_t lo = include_zero ? 0 : 1;
        for (std::int64_t t = lo; t < lo + p.n[i]; ++t) {
            if (zi.contains(t)) continue;
            const std::int64_t e = ((n - p.n[i] + t) % n + n) % n;
            if (c.zeros.contains(e)) v.strong_membership = false;
            if (c.g.eval(f.pow(c.alpha, e)) == 0) v.strong_evaluation = false;
        }
        lv[i - 1] = std::move(v);
    }
    out.cert.levels = std::move(lv);
}

} // namespace

HlrcCode construct(const HlrcProfile& p, const FieldPtr& f)
{
    const std::int64_t n = p.n[p.levels];
    if (n > 65535 || (f->q() - 1) % n != 0)
        throw ParameterError("n = " + std::to_string(n) + " does not divide q-1 = " + std::to_string(f->q() - 1));
    HlrcCode out;
    out.profile = p;
    out.zero_sets = build_zero_sets(p);
    const auto len = static_cast<std::uint32_t>(n);
    out.code = generator_from_zeros(f, len, root_of_unity(f, len), out.zero_sets.back());

    HlrcCertificate& cert = out.cert;
    cert.n = n;
    cert.dim = out.code.k();
    cert.dim_claimed = p.r[p.levels];
    cert.bch = bch_designed_distance(out.code.zeros);
    cert.sb = bound_sb(n, static_cast<std::int64_t>(cert.dim), p.r, p.delta, p.h());
    cert.optimal = static_cast<std::int64_t>(cert.bch) == cert.sb;
    cert.conditions = opt_conditions(p);
    cert.conditions_hold = opt_conditions_hold(p);
    auto cf = closed_form_deltas(p);
    cert.closed_form_match = true;
    for (std::uint32_t i = 1; i <= p.levels; ++i)
        if (cf[i - 1] != p.delta[i]) cert.closed_form_match = false;
    cert.identities = cardinality_and_congruence_check(out.zero_sets, p);
    if (!cert.identities.ok()) cert.flags.push_back("zero-set identity: " + cert.identities.first_failure());
    if (static_cast<std::int64_t>(cert.dim) != cert.dim_claimed)
        cert.flags.push_back("dimension " + std::to_string(cert.dim) + " differs from r_{h+1} = " + std::to_string(cert.dim_claimed));
    if (cert.bch < p.delta[p.levels])
        cert.flags.push_back("BCH designed distance below delta_{h+1}");

    certify_levels(out, p.h(), false);
    cert.strongly_optimal = cert.optimal;
    for (const auto& v : cert.levels)
        if (!v.optimal || !v.strong_membership || !v.strong_evaluation) cert.strongly_optimal = false;
    return out;
}

HlrcCode unbounded_construct(const HlrcProfile& p, const FieldPtr& base, std::uint32_t m_ext)
{
    const std::uint32_t h = p.levels;
    const std::int64_t q = base->q();
    std::int64_t qm = 1;
    for (std::uint32_t i = 0; i < m_ext; ++i) {
        qm *= q;
        if (qm > 65536) throw ParameterError("q^m_ext exceeds 65536");
    }
    const std::int64_t n = qm - 1;
    const std::int64_t nh = p.n[h];
    if ((q - 1) % nh != 0) throw ParameterError("n_h = " + std::to_string(nh) + " does not divide q-1 = " + std::to_string(q - 1));
    FieldPtr f = m_ext == 1 ? base : Field::create(base->p(), base->m() * m_ext);

    HlrcCode out;
    out.profile = p;
    out.zero_sets = build_zero_sets(p);
    const auto len = static_cast<std::uint32_t>(n);
    ZeroSet lset = out.zero_sets.back().replicate(len, static_cast<std::uint32_t>(nh), static_cast<std::uint32_t>(n / nh));
    ZeroSet z = lset.unite(ZeroSet(len, {0}));
    out.code = generator_from_zeros(f, len, root_of_unity(f, len), z);

    HlrcCertificate& cert = out.cert;
    cert.n = n;
    cert.dim = out.code.k();
    cert.dim_claimed = n * p.r[h] / nh - 1;
    for (auto a : out.code.g.c)
        if (f->pow(a, q) != a) cert.subfield_ok = false;
    if (!cert.subfield_ok) throw std::logic_error("generator coefficient outside the base subfield");
    cert.bch = bch_designed_distance(out.code.zeros);
    const auto k = static_cast<std::int64_t>(cert.dim);
    cert.sb = bound_sb(n, k, p.r, p.delta, h);
    cert.optimal = static_cast<std::int64_t>(cert.bch) == cert.sb;
    cert.conditions = opt_conditions(p);
    cert.conditions_hold = opt_conditions_hold(p);
    auto cf = closed_form_deltas(p);
    cert.closed_form_match = true;
    for (std::uint32_t i = 1; i <= h; ++i)
        if (cf[i - 1] != p.delta[i]) cert.closed_form_match = false;
    cert.identities = cardinality_and_congruence_check(out.zero_sets, p);
    cert.opt_d1_hold = cert.conditions_hold;
    for (std::uint32_t l = 1; l < h; ++l) {
        std::int64_t lhs = (n / nh) * ceil_div(p.r[h], p.r[l]);
        std::int64_t rhs = ceil_div(k, p.r[l]);
        cert.opt_d1.emplace_back(lhs, rhs);
        if (lhs != rhs) cert.opt_d1_hold = false;
    }
    if (k != cert.dim_claimed)
        cert.flags.push_back("dimension " + std::to_string(k) + " differs from n r_h / n_h - 1 = " + std::to_string(cert.dim_claimed));
    if (!cert.identities.ok()) cert.flags.push_back("zero-set identity: " + cert.identities.first_failure());

    certify_levels(out, h, true);
    cert.strongly_optimal = cert.optimal;
    for (const auto& v : cert.levels)
        if (!v.optimal || !v.strong_membership || !v.strong_evaluation) cert.strongly_optimal = false;
    return out;
}

} // namespace locus
