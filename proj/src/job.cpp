#include "locus/job.hpp"

#include "locus/bicyclic.hpp"
#include "locus/conv.hpp"
#include "locus/hlrc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace locus::job {

namespace {

constexpr std::uint64_t kSubsetCap = 1000000; // rank tests per locality or parity-span oracle

// ---------------------------------------------------------------- validation

[[noreturn]] void bad(const std::string& what) { throw ParameterError("config: " + what); }

std::int64_t need_int(const json& c, const std::string& key, std::int64_t lo, std::int64_t hi = INT32_MAX)
{
    if (!c.contains(key)) bad("missing required key '" + key + "'");
    const json& v = c.at(key);
    if (!v.is_number_integer()) bad("'" + key + "' must be an integer");
    auto x = v.get<std::int64_t>();
    if (x < lo || x > hi) bad("'" + key + "' = " + std::to_string(x) + " is out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return x;
}

std::vector<std::int64_t> need_ints(const json& c, const std::string& key, std::size_t min_len, std::int64_t lo)
{
    if (!c.contains(key)) bad("missing required key '" + key + "'");
    const json& v = c.at(key);
    if (!v.is_array()) bad("'" + key + "' must be an array of integers");
    std::vector<std::int64_t> out;
    for (const auto& x : v) {
        if (!x.is_number_integer()) bad("'" + key + "' must be an array of integers");
        auto y = x.get<std::int64_t>();
        if (y < lo || y > INT32_MAX) bad("'" + key + "' entry " + std::to_string(y) + " is out of range");
        out.push_back(y);
    }
    if (out.size() < min_len) bad("'" + key + "' needs at least " + std::to_string(min_len) + " entries");
    return out;
}

void only_keys(const json& c, const std::set<std::string>& allowed, const std::string& where)
{
    for (auto it = c.begin(); it != c.end(); ++it)
        if (!allowed.count(it.key())) bad("unknown key '" + it.key() + "' in " + where);
}

FieldPtr field_of(const json& cfg)
{
    const json& f = cfg.at("field");
    auto p = static_cast<std::uint32_t>(f.at("p").get<std::int64_t>());
    auto m = static_cast<std::uint32_t>(f.at("m").get<std::int64_t>());
    return Field::create(p, m);
}

std::string instance_name(const json& cfg) { return cfg.value("name", cfg.at("kind").get<std::string>()); }

// ---------------------------------------------------------------- descriptors

json poly_json(const Poly& p) { return json(p.c); }

json zeros_json(const ZeroSet& z) { return json(z.e); }

HlrcProfile profile_of(const json& cfg)
{
    std::vector<std::int64_t> nu = cfg.contains("nu") ? need_ints(cfg, "nu", 0, 1) : std::vector<std::int64_t>{};
    return derive_profile(need_ints(cfg, "r", 1, 1), cfg.at("delta1").get<std::int64_t>(), nu);
}

json profile_json(const HlrcProfile& p)
{
    json j;
    j["levels"] = p.levels;
    j["r"] = std::vector<std::int64_t>(p.r.begin() + 1, p.r.end());
    j["delta"] = std::vector<std::int64_t>(p.delta.begin() + 1, p.delta.end());
    j["n"] = std::vector<std::int64_t>(p.n.begin() + 1, p.n.end());
    j["nu"] = std::vector<std::int64_t>(p.nu.begin() + 1, p.nu.end());
    j["a"] = std::vector<std::int64_t>(p.a.begin() + 1, p.a.end());
    j["b"] = std::vector<std::int64_t>(p.b.begin() + 1, p.b.end());
    return j;
}

json code_fields(const CyclicCode& c, std::uint32_t m_ext)
{
    json d;
    d["q"] = c.field->q();
    d["p"] = c.field->p();
    d["m"] = c.field->m();
    d["m_ext"] = m_ext;
    d["n"] = c.n;
    d["alpha"] = c.alpha;
    d["zeros"] = zeros_json(c.zeros);
    d["generator"] = poly_json(c.g);
    return d;
}

json matrix_json(const Matrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) rows.push_back(std::vector<elem>(m.row(i), m.row(i) + m.cols));
    return rows;
}

ConvGenerator explicit_generator(const json& cfg, const FieldPtr& f)
{
    ConvGenerator g;
    g.field = f;
    g.k = static_cast<std::uint32_t>(cfg.at("k").get<std::int64_t>());
    g.n = static_cast<std::uint32_t>(cfg.at("n").get<std::int64_t>());
    const auto T = static_cast<std::size_t>(cfg.at("j").get<std::int64_t>() + 1);
    const json& gj = cfg.at("generator");
    if (!gj.is_array() || gj.size() != g.k) bad("'generator' must list k = " + std::to_string(g.k) + " rows");
    for (const auto& row : gj) {
        if (!row.is_array() || row.size() != g.n) bad("every 'generator' row must hold n = " + std::to_string(g.n) + " polynomials");
        std::vector<std::vector<elem>> polys;
        for (const auto& p : row) {
            if (!p.is_array() || p.empty() || p.size() > T)
                bad("generator polynomials need 1..j+1 = " + std::to_string(T) + " coefficients");
            std::vector<elem> c;
            for (const auto& x : p) {
                if (!x.is_number_integer() || x.get<std::int64_t>() < 0 || x.get<std::int64_t>() >= f->q())
                    bad("generator coefficients must be field elements in [0, " + std::to_string(f->q() - 1) + "]");
                c.push_back(static_cast<elem>(x.get<std::int64_t>()));
            }
            c.resize(T, 0);
            polys.push_back(c);
        }
        g.polys.push_back(polys);
    }
    if (rank(*f, g.coefficient(0)) != g.k) throw ParameterError("G_0 (constant terms) does not have full rank k");
    return g;
}

json build_descriptor(const json& cfg)
{
    const std::string kind = cfg.at("kind");
    json d;
    d["format"] = "locus-descriptor-1";
    d["kind"] = kind;
    d["name"] = instance_name(cfg);
    d["config"] = cfg;
    d["claims"] = cfg.value("claims", json::object());
    FieldPtr f = field_of(cfg);

    if (kind == "hlrc") {
        HlrcProfile p = profile_of(cfg);
        HlrcCode c = construct(p, f);
        d.update(code_fields(c.code, 1));
        d["params"] = profile_json(p);
        d["params"]["k"] = c.code.k();
    } else if (kind == "hlrc-unbounded") {
        HlrcProfile p = profile_of(cfg);
        auto m_ext = static_cast<std::uint32_t>(cfg.at("m_ext").get<std::int64_t>());
        HlrcCode c = unbounded_construct(p, f, m_ext);
        d.update(code_fields(c.code, m_ext));
        d["base_q"] = f->q();
        d["params"] = profile_json(p);
        d["params"]["k"] = c.code.k();
    } else if (kind == "conv" && !cfg.contains("generator")) {
        auto u = [&](const char* k) { return static_cast<std::uint32_t>(cfg.at(k).get<std::int64_t>()); };
        QuasiCyclicLrc b = build_block_code(u("n"), u("k"), u("j"), u("r"), u("delta"), f);
        d.update(code_fields(b.block, 1));
        d["n"] = b.n;
        d["length"] = b.length();
        d["params"] = {{"n", b.n}, {"k", b.k}, {"j", b.j}, {"r", b.r}, {"delta", b.delta}, {"delta3", b.delta3},
                       {"block_dim", b.block.k()}};
        try {
            ConvGenerator g = to_convolutional(b);
            d["transform"] = {{"status", "ok"}, {"memory", g.memory()}, {"polys", g.polys},
                              {"circulant", matrix_json(circulant_blocks(g, b.j + 1))}};
        } catch (const GIdentityError& e) {
            d["transform"] = {{"status", "refused"}, {"rank", e.rank}, {"size", e.size}, {"message", e.what()}};
        }
    } else if (kind == "conv") {
        ConvGenerator g = explicit_generator(cfg, f);
        const auto T = static_cast<std::uint32_t>(cfg.at("j").get<std::int64_t>() + 1);
        const auto r = static_cast<std::uint32_t>(cfg.at("r").get<std::int64_t>());
        const auto delta = static_cast<std::uint32_t>(cfg.at("delta").get<std::int64_t>());
        auto groups = shifted_row_groups(T, r, delta);
        d["q"] = f->q();
        d["p"] = f->p();
        d["m"] = f->m();
        d["m_ext"] = 1;
        d["n"] = g.n;
        d["length"] = g.n * T;
        d["alpha"] = nullptr;
        d["zeros"] = nullptr;
        d["generator"] = nullptr;
        d["generator_polys"] = g.polys;
        d["params"] = {{"n", g.n}, {"k", g.k}, {"j", T - 1}, {"T", T}, {"r", r}, {"delta", delta}, {"memory", g.memory()},
                       {"row_groups", groups}};
        d["transform"] = {{"status", "explicit"}, {"circulant", matrix_json(circulant_blocks(g, T))}};
    } else if (kind == "bicyclic") {
        auto rr = need_ints(cfg, "r", 2, 1);
        BicyclicCode c = build_bicyclic(static_cast<std::uint32_t>(cfg.at("n").get<std::int64_t>()), static_cast<std::uint32_t>(rr[0]),
                                        static_cast<std::uint32_t>(rr[1]), static_cast<std::uint32_t>(cfg.at("delta").get<std::int64_t>()), f);
        d["q"] = f->q();
        d["p"] = f->p();
        d["m"] = f->m();
        d["m_ext"] = 1;
        d["n"] = c.n;
        d["alpha"] = c.alpha;
        json z = json::array();
        for (const auto& pr : c.zeros.pairs) z.push_back({pr.first, pr.second});
        d["zeros"] = z;
        d["generator"] = nullptr;
        d["params"] = {{"n", c.n}, {"r1", c.r1}, {"r2", c.r2}, {"delta", c.delta}, {"k", c.dim()}};
    }
    return d;
}

json build_precert(const json& d)
{
    const std::string kind = d.at("kind");
    const json& cfg = d.at("config");
    json pc;
    pc["kind"] = kind;
    pc["name"] = d.at("name");
    pc["stage"] = "bounds only";
    if (kind == "hlrc" || kind == "hlrc-unbounded") {
        FieldPtr f = field_of(cfg);
        HlrcProfile p = profile_of(cfg);
        HlrcCode c = kind == "hlrc" ? construct(p, f) : unbounded_construct(p, f, static_cast<std::uint32_t>(cfg.at("m_ext").get<std::int64_t>()));
        pc["n"] = c.code.n;
        pc["k"] = c.cert.dim;
        pc["delta_chain"] = std::vector<std::int64_t>(p.delta.begin() + 1, p.delta.end());
        pc["designed_distance"] = c.cert.bch;
        pc["singleton_bound"] = c.cert.sb;
        pc["optimal_by_bounds"] = c.cert.optimal;
    } else if (kind == "conv" && !cfg.contains("generator")) {
        const json& pr = d.at("params");
        auto n = pr.at("n").get<std::int64_t>(), k = pr.at("k").get<std::int64_t>(), j = pr.at("j").get<std::int64_t>();
        auto r = pr.at("r").get<std::int64_t>(), delta = pr.at("delta").get<std::int64_t>();
        pc["block_length"] = n * (j + 1);
        pc["block_dim"] = pr.at("block_dim");
        pc["designed_distance"] = pr.at("delta3");
        pc["distance_bound"] = bound_delta(n * (j + 1), k * (j + 1), r, delta);
        pc["column_distance_bound"] = column_distance_bound(n, k, r, delta, j);
        pc["transform"] = d.at("transform").at("status");
    } else if (kind == "conv") {
        const json& pr = d.at("params");
        auto n = pr.at("n").get<std::int64_t>(), k = pr.at("k").get<std::int64_t>(), j = pr.at("j").get<std::int64_t>();
        auto r = pr.at("r").get<std::int64_t>(), delta = pr.at("delta").get<std::int64_t>();
        json sc = json::array();
        for (std::int64_t i = 0; i <= j; ++i) sc.push_back(singleton_column_bound(n, k, i));
        pc["singleton_column_bounds"] = sc;
        pc["column_distance_bound"] = column_distance_bound(n, k, r, delta, j);
    } else if (kind == "bicyclic") {
        const json& pr = d.at("params");
        auto n = pr.at("n").get<std::uint32_t>(), r1 = pr.at("r1").get<std::uint32_t>(), r2 = pr.at("r2").get<std::uint32_t>();
        auto delta = pr.at("delta").get<std::uint32_t>();
        auto cd = cfg.value("component_delta", static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(delta)) - 1e-9)));
        pc["k"] = pr.at("k");
        pc["designed_distance"] = delta;
        pc["dimension_lower_bound"] = dimension_lower_bound(n, r1, r2, delta);
        pc["product_baseline"] = product_baseline(n, r1, r2, cd).k;
    }
    return pc;
}

// ---------------------------------------------------------------- certification

struct Ledger {
    json checks = json::array();
    std::vector<OracleReport> oracles;
    bool refuted = false;

    void add(const std::string& name, const std::string& status, json claimed, json verified, const std::string& note = "")
    {
        json c = {{"name", name}, {"status", status}, {"claimed", std::move(claimed)}, {"verified", std::move(verified)}};
        if (!note.empty()) c["note"] = note;
        checks.push_back(c);
        if (status == "fail") refuted = true;
    }
    void check(const std::string& name, bool ok, json claimed, json verified, const std::string& note = "")
    {
        add(name, ok ? "pass" : "fail", std::move(claimed), std::move(verified), note);
    }
    void oracle(OracleReport r)
    {
        if (r.refuted()) refuted = true;
        oracles.push_back(std::move(r));
    }
};

OracleReport boolean_oracle(const std::string& instance, const std::string& quantity, bool pass, std::uint64_t work)
{
    OracleReport r;
    r.instance = instance;
    r.quantity = quantity;
    r.claimed_lo = r.claimed_hi = 1;
    r.verified = pass ? 1 : 0;
    r.enumerations = work;
    r.outcome = pass ? "verified" : "refuted";
    return r;
}

OracleReport skipped_oracle(const std::string& instance, const std::string& quantity, std::int64_t lo, std::int64_t hi)
{
    OracleReport r;
    r.instance = instance;
    r.quantity = quantity;
    r.claimed_lo = lo;
    r.claimed_hi = hi;
    r.outcome = "budget-exceeded";
    return r;
}

long double binom(std::size_t a, std::size_t b)
{
    if (b > a) return 0;
    long double v = 1;
    for (std::size_t i = 0; i < b; ++i) v = v * static_cast<long double>(a - i) / static_cast<long double>(i + 1);
    return v;
}

void compare_claims(Ledger& L, const json& claims, const std::map<std::string, std::int64_t>& actual, std::vector<std::string>& flagged)
{
    for (auto it = claims.begin(); it != claims.end(); ++it) {
        auto a = actual.find(it.key());
        if (a == actual.end()) {
            L.add("claim_" + it.key(), "skipped", it.value(), nullptr, "not computed for this kind");
            continue;
        }
        bool same = it.value().get<std::int64_t>() == a->second;
        L.add("claim_" + it.key(), same ? "pass" : "flag", it.value(), a->second, same ? "" : "stated value disagrees with the construction");
        if (!same) flagged.push_back(it.key() + "=" + std::to_string(it.value().get<std::int64_t>()));
    }
}

std::string claim_suffix(const std::vector<std::string>& flagged)
{
    if (flagged.empty()) return "";
    std::string s = " (claimed ";
    for (std::size_t i = 0; i < flagged.size(); ++i) s += (i ? ", " : "") + flagged[i];
    return s + " flagged as inconsistent)";
}

// Map a base-field subfield of ext onto base, if additivity can be matched.
std::optional<std::vector<elem>> subfield_map(const Field& ext, const Field& base)
{
    const std::uint32_t Q = ext.q(), q = base.q();
    if ((Q - 1) % (q - 1) != 0 || q > 256) return std::nullopt;
    const elem beta = ext.exp((Q - 1) / (q - 1));
    for (std::uint32_t c = 1; c < q; ++c) {
        if (std::gcd(c, q - 1) != 1) continue;
        std::vector<elem> to(Q, 0), from(q, 0);
        std::vector<bool> in_sub(Q, false);
        in_sub[0] = true;
        for (std::uint32_t e = 0; e + 1 < q; ++e) {
            elem x = ext.pow(beta, e);
            in_sub[x] = true;
            to[x] = base.pow(base.generator(), static_cast<std::int64_t>(e) * c);
        }
        bool ok = true;
        for (elem a = 0; a < Q && ok; ++a) {
            if (!in_sub[a]) continue;
            for (elem b = 0; b < Q && ok; ++b)
                if (in_sub[b]) ok = to[ext.add(a, b)] == base.add(to[a], to[b]);
        }
        if (ok) {
            for (elem a = 0; a < Q; ++a)
                if (!in_sub[a]) to[a] = static_cast<elem>(-1);
            return to;
        }
    }
    return std::nullopt;
}

// min distance over the subfield view when the generator lives there (the
// distance of a code does not change under field extension)
OracleReport hlrc_distance_oracle(const std::string& name, const CyclicCode& c, const FieldPtr& base, std::int64_t lo,
                                  std::int64_t hi, const Budget& b)
{
    Matrix g = generator_matrix(c);
    const Field& ext = *c.field;
    if (base && base->q() != ext.q() && message_space(ext, g.rows) > b.max_enumerations &&
        message_space(*base, g.rows) <= b.max_enumerations) {
        if (auto to = subfield_map(ext, *base)) {
            Matrix gb(g.rows, g.cols);
            bool ok = true;
            for (std::size_t i = 0; i < g.a.size() && ok; ++i) {
                gb.a[i] = (*to)[g.a[i]];
                ok = gb.a[i] != static_cast<elem>(-1);
            }
            if (ok) {
                auto r = min_distance_report(name, *base, gb, lo, hi, b);
                r.quantity = "min_distance (over " + base->name() + ")";
                return r;
            }
        }
    }
    return min_distance_report(name, ext, g, lo, hi, b);
}

void certify_hlrc(const json& d, const Budget& budget, Ledger& L, std::string& verdict)
{
    const json& cfg = d.at("config");
    const bool unbounded = d.at("kind") == "hlrc-unbounded";
    const std::string name = d.at("name");
    FieldPtr f = field_of(cfg);
    HlrcProfile p = profile_of(cfg);
    HlrcCode c = unbounded ? unbounded_construct(p, f, static_cast<std::uint32_t>(cfg.at("m_ext").get<std::int64_t>())) : construct(p, f);
    const HlrcCertificate& cert = c.cert;

    L.add("delta_chain", "info", nullptr, std::vector<std::int64_t>(p.delta.begin() + 1, p.delta.end()));
    for (const auto& lv : cert.identities.levels) {
        L.check("zero_set_size_level_" + std::to_string(lv.level), lv.card, lv.expected, lv.zeros);
        L.check("zero_set_congruence_level_" + std::to_string(lv.level), lv.dmod, true, lv.dmod);
    }
    json conds = json::array();
    for (const auto& oc : cert.conditions) conds.push_back({{"s", oc.s}, {"l", oc.l}, {"lhs", oc.lhs}, {"rhs", oc.rhs}});
    L.add("optimality_conditions", cert.conditions_hold ? "pass" : "info", true, conds,
          cert.conditions_hold ? "" : "conditions not met; no optimality certificate from them");
    if (cert.conditions_hold)
        L.check("closed_form_distances", cert.closed_form_match, std::vector<std::int64_t>(p.delta.begin() + 1, p.delta.end()),
                closed_form_deltas(p));
    if (unbounded) {
        L.check("subfield_coefficients", cert.subfield_ok, true, cert.subfield_ok);
        json od = json::array();
        for (const auto& [lhs, rhs] : cert.opt_d1) od.push_back({{"lhs", lhs}, {"rhs", rhs}});
        L.add("unbounded_optimality_conditions", cert.opt_d1_hold ? "pass" : "info", true, od);
    }
    L.check("dimension", static_cast<std::int64_t>(cert.dim) == cert.dim_claimed, cert.dim_claimed, cert.dim,
            unbounded ? "n r_h / n_h - 1" : "r_{h+1}");
    const std::int64_t target = unbounded ? p.delta[p.levels] + 1 : p.delta[p.levels];
    L.check("designed_distance", static_cast<std::int64_t>(cert.bch) >= target, target, cert.bch);
    L.check("singleton_bound", static_cast<std::int64_t>(cert.bch) <= cert.sb, cert.sb, cert.bch, "designed distance must not exceed the bound");

    for (const auto& v : cert.levels) {
        const std::string lvl = std::to_string(v.level);
        L.check("locality_level_" + lvl, v.locality.ok(), json{{"r", v.r}, {"delta", v.delta}},
                json{{"punctured_dim", v.locality.punctured_dim}, {"punctured_bch", v.locality.punctured_bch}, {"groups", v.locality.groups.size()}},
                v.locality.error);
        std::size_t len = v.locality.groups.empty() ? 0 : v.locality.groups.front().size();
        long double work = binom(len, static_cast<std::size_t>(v.delta - 1)) * static_cast<long double>(v.locality.groups.size());
        if (work <= static_cast<long double>(kSubsetCap)) {
            auto rep = locality_verify(*c.code.field, generator_matrix(c.code), static_cast<std::size_t>(v.r),
                                       static_cast<std::size_t>(v.delta), v.locality.groups);
            L.oracle(boolean_oracle(name, "locality_level_" + lvl, rep.pass, static_cast<std::uint64_t>(work)));
        } else {
            L.oracle(skipped_oracle(name, "locality_level_" + lvl, 1, 1));
        }
    }
    bool strong = true;
    if (!unbounded) {
        for (const auto& v : cert.levels) strong = strong && v.strong_membership && v.strong_evaluation && v.optimal;
        L.add("strong_optimality", cert.optimal ? (strong ? "pass" : "info") : "skipped", true, cert.strongly_optimal);
    }

    FieldPtr base = unbounded ? f : nullptr;
    OracleReport dist = hlrc_distance_oracle(name, c.code, base, cert.bch, cert.sb, budget);
    const bool verified = dist.outcome == "verified";
    const bool exact = verified && *dist.verified == cert.sb;
    L.oracle(dist);

    std::vector<std::string> flagged;
    compare_claims(L, d.at("claims"), {{"k", static_cast<std::int64_t>(cert.dim)}, {"n", cert.n}, {"d", static_cast<std::int64_t>(cert.bch)}}, flagged);

    std::ostringstream v;
    if (unbounded || !flagged.empty()) v << "dim " << cert.dim << claim_suffix(flagged) << "; ";
    if (static_cast<std::int64_t>(cert.dim) != cert.dim_claimed) v << "dimension differs from " << cert.dim_claimed << " (refuted); ";
    if (cert.optimal) {
        if (exact) v << "optimal, d=" << cert.bch << " verified";
        else v << "optimal by bound equality (BCH = Singleton-type bound), d=" << cert.bch;
    } else if (verified) {
        v << "d=" << *dist.verified << " verified, bound " << cert.sb << " not met";
    } else {
        v << "d in [" << cert.bch << ", " << cert.sb << "]";
    }
    if (!unbounded && p.h() >= 2) v << "; strong optimality: " << (cert.strongly_optimal ? "pass" : "fail");
    verdict = v.str();
}

std::vector<std::int64_t> column_distances(Ledger& L, const std::string& name, const ConvGenerator& g, std::uint32_t upto,
                                           const Budget& budget, std::int64_t r, std::int64_t delta, std::uint32_t locality_from)
{
    std::vector<std::int64_t> d;
    for (std::uint32_t j = 0; j <= upto; ++j) {
        OracleReport rep;
        rep.instance = name;
        rep.quantity = "column_distance_" + std::to_string(j);
        rep.claimed_lo = 1;
        rep.claimed_hi = singleton_column_bound(g.n, g.k, j);
        const bool applies = j >= locality_from;
        if (applies) rep.claimed_hi = std::min(rep.claimed_hi, column_distance_bound(g.n, g.k, r, delta, j));
        ColumnDistance cd = column_distance(g, j, budget.max_enumerations);
        rep.enumerations = cd.nodes;
        if (!cd.exhaustive) {
            rep.outcome = "budget-exceeded";
            L.oracle(rep);
            break;
        }
        rep.verified = cd.value;
        rep.outcome = cd.value >= rep.claimed_lo && cd.value <= rep.claimed_hi ? "verified" : "refuted";
        L.oracle(rep);
        d.push_back(cd.value);
        const auto dv = static_cast<std::uint32_t>(cd.value);
        try {
            bool at = parity_span_oracle(g, j, dv, kSubsetCap);
            bool above = parity_span_oracle(g, j, dv + 1, kSubsetCap);
            L.check("parity_span_agreement_" + std::to_string(j), at && !above, cd.value, at ? json(cd.value) : json(nullptr));
        } catch (const ParameterError&) {
            L.add("parity_span_agreement_" + std::to_string(j), "budget-exceeded", cd.value, nullptr);
        }
    }
    return d;
}

void certify_conv_block(const json& d, const Budget& budget, Ledger& L, std::string& verdict)
{
    const json& cfg = d.at("config");
    const std::string name = d.at("name");
    FieldPtr f = field_of(cfg);
    auto u = [&](const char* k) { return static_cast<std::uint32_t>(cfg.at(k).get<std::int64_t>()); };
    QuasiCyclicLrc b = build_block_code(u("n"), u("k"), u("j"), u("r"), u("delta"), f);
    const std::int64_t N = b.length(), K = static_cast<std::int64_t>(b.k) * (b.j + 1);
    const std::int64_t bound = bound_delta(N, K, b.r, b.delta);

    L.check("dimension", static_cast<std::int64_t>(b.block.k()) == K, K, b.block.k());
    const auto bch = static_cast<std::int64_t>(bch_designed_distance(b.block.zeros));
    L.check("designed_distance", bch >= b.delta3, b.delta3, bch);
    L.check("designed_distance_meets_bound", b.delta3 == bound, bound, b.delta3);
    auto loc = local_structure(b.block, b.local_length(), ZeroSet::range(b.local_length(), 1, b.delta - 1), b.delta);
    L.check("block_locality", loc.ok(), json{{"r", b.r}, {"delta", b.delta}},
            json{{"punctured_dim", loc.punctured_dim}, {"punctured_bch", loc.punctured_bch}}, loc.error);
    GridCode grid = grid_from_block(b);
    RowLocality rl = row_locality_verify(grid);
    L.check("row_locality", rl.pass, json{{"r", b.r}, {"delta", b.delta}}, json{{"rows", rl.rows_checked}, {"failures", rl.failures}});

    OracleReport dist = min_distance_report(name, *f, generator_matrix(b.block), b.delta3, bound, budget);
    const bool dist_ok = dist.outcome == "verified";
    L.oracle(dist);

    const std::int64_t sbl = column_distance_bound(b.n, b.k, b.r, b.delta, b.j);
    L.add("column_distance_bound", "info", nullptr, sbl);

    std::ostringstream v;
    if (dist_ok) v << "block code d=" << *dist.verified << " verified";
    else v << "block code d >= " << b.delta3;
    v << (bch >= bound ? " (meets the locality bound)" : "");

    try {
        ConvGenerator g = to_convolutional(b);
        L.check("transform", true, "G_I invertible", "ok");
        Matrix tb = tailbiting_generator(g, b.j + 1);
        Matrix blockg = generator_matrix(b.block);
        Matrix stack(tb.rows + blockg.rows, tb.cols);
        std::copy(tb.a.begin(), tb.a.end(), stack.a.begin());
        std::copy(blockg.a.begin(), blockg.a.end(), stack.a.begin() + static_cast<std::ptrdiff_t>(tb.a.size()));
        const std::size_t rt = rank(*f, tb), rb = rank(*f, blockg), rs = rank(*f, stack);
        L.check("tailbiting_equals_block", rt == rb && rs == rb, rb, rt);
        auto ds = column_distances(L, name, g, b.j, budget, b.r, b.delta, b.j);
        if (!ds.empty()) L.check("column_distance_propagation", propagation_consistent(ds, b.n, b.k, b.r, b.delta), true, ds);
        v << "; tailbiting transform ok";
        if (ds.size() == b.j + 1) v << ", d_" << b.j << "^c=" << ds.back() << " (bound " << sbl << ")";
    } catch (const GIdentityError& e) {
        L.check("transform", false, "G_I invertible", json{{"rank", e.rank}, {"size", e.size}}, e.what());
        L.add("tailbiting_equals_block", "fail", "equal codeword sets", nullptr, "no identity-form convolutional encoder exists");
        L.add("column_distance_" + std::to_string(b.j), "skipped", json::array({b.delta3, sbl}), nullptr, "needs the convolutional generator");
        v << "; convolutional transform refused: G_I singular (rank " << e.rank << " of " << e.size << ")";
    }
    v << "; row locality (" << b.r << "," << b.delta << "): " << (rl.pass ? "pass" : "fail");

    std::vector<std::string> flagged;
    compare_claims(L, d.at("claims"), {{"k", K}, {"n", N}, {"d", dist_ok ? *dist.verified : b.delta3}}, flagged);
    verdict = v.str() + claim_suffix(flagged);
}

ConvGenerator generator_from_descriptor(const json& d)
{
    return explicit_generator(d.at("config"), field_of(d.at("config")));
}

void certify_conv_explicit(const json& d, const Budget& budget, Ledger& L, std::string& verdict)
{
    const json& cfg = d.at("config");
    const std::string name = d.at("name");
    ConvGenerator g = generator_from_descriptor(d);
    const Field& f = *g.field;
    const auto T = static_cast<std::uint32_t>(cfg.at("j").get<std::int64_t>() + 1);
    const auto r = static_cast<std::uint32_t>(cfg.at("r").get<std::int64_t>());
    const auto delta = static_cast<std::uint32_t>(cfg.at("delta").get<std::int64_t>());

    L.check("leading_coefficient_rank", rank(f, g.coefficient(0)) == g.k, g.k, rank(f, g.coefficient(0)));
    L.check("memory", g.memory() < T, T - 1, g.memory());
    Matrix tb = tailbiting_generator(g, T);
    const std::size_t dim = rank(f, tb);
    L.add("tailbiting_dimension", dim == static_cast<std::size_t>(g.k) * T ? "pass" : "info", g.k * T, dim,
          dim < static_cast<std::size_t>(g.k) * T ? "encoder is not injective on tailbiting inputs" : "");

    OracleReport dist = min_distance_report(name, f, tb, 1, static_cast<std::int64_t>(g.n) * T - static_cast<std::int64_t>(dim) + 1, budget);
    const bool dist_ok = dist.outcome == "verified";
    L.oracle(dist);
    GridCode grid = grid_from_tailbiting(g, T, r, delta, dist_ok ? static_cast<std::uint64_t>(*dist.verified) : 1);
    RowLocality rl = row_locality_verify(grid);
    L.check("row_locality", rl.pass, json{{"r", r}, {"delta", delta}}, json{{"rows", rl.rows_checked}, {"failures", rl.failures}});

    // shifted groups only fit inside [0, j] once the whole period is visible
    auto ds = column_distances(L, name, g, T - 1, budget, r, delta, T - 1);
    if (!ds.empty()) L.check("column_distance_propagation", propagation_consistent(ds, g.n, g.k, r, delta), true, ds);

    std::ostringstream v;
    v << "tailbiting code dim " << dim;
    if (dist_ok) v << ", d=" << *dist.verified << " verified";
    else v << ", d not enumerated";
    v << "; row locality (" << r << "," << delta << "): " << (rl.pass ? "pass" : "fail");
    if (!ds.empty()) {
        v << "; column distances d_0.." << ds.size() - 1 << " = ";
        for (std::size_t i = 0; i < ds.size(); ++i) v << (i ? "," : "") << ds[i];
    }
    std::vector<std::string> flagged;
    compare_claims(L, d.at("claims"), {{"k", static_cast<std::int64_t>(dim)}, {"n", static_cast<std::int64_t>(g.n) * T}}, flagged);
    verdict = v.str() + claim_suffix(flagged);
}

void certify_bicyclic(const json& d, const Budget& budget, Ledger& L, std::string& verdict)
{
    const json& cfg = d.at("config");
    const std::string name = d.at("name");
    FieldPtr f = field_of(cfg);
    auto rr = need_ints(cfg, "r", 2, 1);
    const auto n = static_cast<std::uint32_t>(cfg.at("n").get<std::int64_t>());
    const auto delta = static_cast<std::uint32_t>(cfg.at("delta").get<std::int64_t>());
    BicyclicCode c = build_bicyclic(n, static_cast<std::uint32_t>(rr[0]), static_cast<std::uint32_t>(rr[1]), delta, f);

    std::size_t hyper = 0;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
            if ((i + 1) * (j + 1) < delta) ++hyper;
    L.check("hyperbolic_part", c.hyper_part == hyper, hyper, c.hyper_part);
    const std::size_t ie = zero_count_inclusion_exclusion(n, c.r1, c.r2, delta);
    L.check("zero_count_union_vs_inclusion_exclusion", ie == c.zeros.size(), ie, c.zeros.size());
    L.add("dimension", "info", nullptr, c.dim());
    const std::uint32_t hd = hyperbolic_designed_distance(c.zeros);
    L.check("hyperbolic_designed_distance", hd >= delta, delta, hd);
    const double lb = dimension_lower_bound(n, c.r1, c.r2, delta);
    L.check("dimension_lower_bound", static_cast<double>(c.dim()) >= lb, lb, c.dim());
    auto cd = cfg.value("component_delta", static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(delta)) - 1e-9)));
    ProductBaseline pb = product_baseline(n, c.r1, c.r2, cd);
    L.check("product_baseline", static_cast<std::int64_t>(c.dim()) >= pb.k, json{{"k1", pb.k1}, {"k2", pb.k2}, {"k", pb.k}}, c.dim());
    Matrix g = bicyclic_generator(c);
    L.check("generator_rank", g.rows == c.dim(), c.dim(), g.rows);
    AvailabilityCertificate av = availability_verify(c, g);
    L.check("availability", av.ok(), json{{"t", 2}, {"r", {c.r1, c.r2}}},
            json{{"coordinates", av.coordinates}, {"failures", av.failures}, {"disjoint", av.disjoint}});
    OracleReport dist = min_distance_report(name, *f, g, hd, static_cast<std::int64_t>(n) * n - static_cast<std::int64_t>(c.dim()) + 1, budget);
    const bool dist_ok = dist.outcome == "verified";
    L.oracle(dist);

    std::vector<std::string> flagged;
    compare_claims(L, d.at("claims"), {{"k", static_cast<std::int64_t>(c.dim())}, {"n", static_cast<std::int64_t>(n) * n}}, flagged);
    std::ostringstream v;
    v << "dim " << c.dim() << claim_suffix(flagged) << "; ";
    if (dist_ok) v << "d=" << *dist.verified << " verified";
    else v << "d >= " << hd;
    v << "; availability 2: " << (av.ok() ? "pass" : "fail") << " (" << av.coordinates << " coordinates); product baseline k=" << pb.k;
    verdict = v.str();
}

} // namespace

json validate_config(const json& in)
{
    if (!in.is_object()) bad("top level must be an object");
    if (!in.contains("kind") || !in.at("kind").is_string()) bad("missing required string 'kind'");
    const std::string kind = in.at("kind");
    static const std::set<std::string> common = {"kind", "field", "name", "claims", "budget"};
    std::set<std::string> allowed = common;
    if (kind == "hlrc") allowed.insert({"r", "delta1", "nu"});
    else if (kind == "hlrc-unbounded") allowed.insert({"r", "delta1", "nu", "m_ext"});
    else if (kind == "conv") allowed.insert({"n", "k", "j", "r", "delta", "generator"});
    else if (kind == "bicyclic") allowed.insert({"n", "r", "delta", "component_delta"});
    else bad("'kind' must be one of hlrc, hlrc-unbounded, conv, bicyclic (got '" + kind + "')");
    only_keys(in, allowed, "config");

    json cfg = in;
    if (!cfg.contains("field") || !cfg.at("field").is_object()) bad("missing required object 'field'");
    json& fj = cfg["field"];
    only_keys(fj, {"p", "m"}, "'field'");
    need_int(fj, "p", 2, 65536);
    if (!fj.contains("m")) fj["m"] = 1;
    need_int(fj, "m", 1, 16);
    if (cfg.contains("name") && !cfg.at("name").is_string()) bad("'name' must be a string");
    if (cfg.contains("claims")) {
        const json& cl = cfg.at("claims");
        if (!cl.is_object()) bad("'claims' must be an object");
        only_keys(cl, {"k", "n", "d"}, "'claims'");
        for (auto it = cl.begin(); it != cl.end(); ++it)
            if (!it.value().is_number_integer()) bad("claim '" + it.key() + "' must be an integer");
    }
    if (cfg.contains("budget")) {
        const json& b = cfg.at("budget");
        if (!b.is_object()) bad("'budget' must be an object");
        only_keys(b, {"max_enum"}, "'budget'");
        if (b.contains("max_enum")) need_int(b, "max_enum", 1, INT64_MAX);
    }

    if (kind == "hlrc" || kind == "hlrc-unbounded") {
        auto r = need_ints(cfg, "r", 1, 1);
        need_int(cfg, "delta1", 2);
        if (!cfg.contains("nu")) cfg["nu"] = json::array();
        auto nu = need_ints(cfg, "nu", 0, 1);
        if (nu.size() + 1 != r.size())
            bad("'nu' needs " + std::to_string(r.size() - 1) + " entries for " + std::to_string(r.size()) + " levels");
        if (kind == "hlrc-unbounded") need_int(cfg, "m_ext", 1, 16);
    } else if (kind == "conv") {
        need_int(cfg, "n", 1);
        need_int(cfg, "k", 1);
        need_int(cfg, "j", 0);
        need_int(cfg, "r", 1);
        need_int(cfg, "delta", 2);
        if (cfg.contains("generator") && !cfg.at("generator").is_array()) bad("'generator' must be a k x n array of coefficient lists");
    } else {
        need_int(cfg, "n", 2);
        auto r = need_ints(cfg, "r", 2, 1);
        if (r.size() != 2) bad("'r' must hold exactly two localities");
        need_int(cfg, "delta", 2);
        if (cfg.contains("component_delta")) need_int(cfg, "component_delta", 2);
    }
    return cfg;
}

Construction construct(const json& config)
{
    Construction c;
    json cfg = validate_config(config);
    c.descriptor = build_descriptor(cfg);
    c.precert = build_precert(c.descriptor);
    return c;
}

Budget resolve_budget(const json& descriptor, std::optional<std::uint64_t> override_max_enum)
{
    Budget b;
    if (descriptor.contains("config")) {
        const json& cfg = descriptor.at("config");
        if (cfg.contains("budget") && cfg.at("budget").contains("max_enum"))
            b.max_enumerations = cfg.at("budget").at("max_enum").get<std::uint64_t>();
    }
    if (const char* s = std::getenv("LOCUS_MAX_ENUM")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end == s || *end != '\0' || v == 0) throw ParameterError("LOCUS_MAX_ENUM must be a positive integer");
        b.max_enumerations = v;
    }
    if (override_max_enum) {
        if (*override_max_enum == 0) throw ParameterError("--max-enum must be positive");
        b.max_enumerations = *override_max_enum;
    }
    return b;
}

Certification certify(const json& descriptor, const Budget& budget)
{
    if (!descriptor.is_object() || descriptor.value("format", "") != "locus-descriptor-1")
        throw ParameterError("not a locus descriptor");
    json cfg = validate_config(descriptor.at("config"));
    json rebuilt = build_descriptor(cfg);

    Ledger L;
    L.check("descriptor_roundtrip", rebuilt == descriptor, "descriptor matches a rebuild from its config", rebuilt == descriptor);
    std::string verdict;
    const std::string kind = cfg.at("kind");
    if (kind == "hlrc" || kind == "hlrc-unbounded") certify_hlrc(rebuilt, budget, L, verdict);
    else if (kind == "conv" && cfg.contains("generator")) certify_conv_explicit(rebuilt, budget, L, verdict);
    else if (kind == "conv") certify_conv_block(rebuilt, budget, L, verdict);
    else certify_bicyclic(rebuilt, budget, L, verdict);

    Certification out;
    out.verdict = verdict;
    out.refuted = L.refuted;
    out.oracles = L.oracles;
    json oj = json::array();
    for (const auto& r : L.oracles) {
        json o = {{"instance_id", r.instance}, {"quantity", r.quantity}, {"claimed_lo", r.claimed_lo}, {"claimed_hi", r.claimed_hi},
                  {"enumerations", r.enumerations}, {"outcome", r.outcome}};
        o["verified"] = r.verified ? json(*r.verified) : json(nullptr);
        oj.push_back(o);
    }
    out.certificate = {{"kind", kind}, {"name", descriptor.at("name")}, {"verdict", verdict},
                       {"status", L.refuted ? "refuted" : "consistent"}, {"budget", {{"max_enum", budget.max_enumerations}}},
                       {"checks", L.checks}, {"oracles", oj}};
    return out;
}

std::string oracle_csv(const std::vector<OracleReport>& reports)
{
    std::string s = oracle_csv_header() + "\n";
    for (const auto& r : reports) s += oracle_csv_row(r) + "\n";
    return s;
}

std::vector<SimRow> simulate(const json& descriptor, const std::string& pattern, std::uint64_t seed, std::uint64_t trials,
                             const Budget& budget)
{
    json cfg = validate_config(descriptor.at("config"));
    const std::string kind = cfg.at("kind");
    FieldPtr f = field_of(cfg);
    if (kind == "hlrc" || kind == "hlrc-unbounded") {
        HlrcProfile p = profile_of(cfg);
        HlrcCode c = kind == "hlrc" ? construct(p, f) : unbounded_construct(p, f, static_cast<std::uint32_t>(cfg.at("m_ext").get<std::int64_t>()));
        HierarchicalRepair h;
        h.code = &c.code;
        for (const auto& v : c.cert.levels) h.levels.push_back(v.locality);
        return repair_simulation(h, PatternSpec::parse(pattern, 0), trials, seed);
    }
    if (kind == "conv" && !cfg.contains("generator")) {
        auto u = [&](const char* k) { return static_cast<std::uint32_t>(cfg.at(k).get<std::int64_t>()); };
        QuasiCyclicLrc b = build_block_code(u("n"), u("k"), u("j"), u("r"), u("delta"), f);
        GridCode grid = grid_from_block(b);
        return repair_simulation(grid, PatternSpec::parse(pattern, grid.n), trials, seed);
    }
    if (kind == "conv") {
        ConvGenerator g = explicit_generator(cfg, f);
        const auto T = static_cast<std::uint32_t>(cfg.at("j").get<std::int64_t>() + 1);
        Matrix tb = tailbiting_generator(g, T);
        DistanceResult d = min_distance(*f, tb, budget.max_enumerations);
        if (!d.exhaustive)
            throw ParameterError("window distance of the tailbiting code is not enumerable within the budget of " +
                                 std::to_string(budget.max_enumerations));
        GridCode grid = grid_from_tailbiting(g, T, static_cast<std::uint32_t>(cfg.at("r").get<std::int64_t>()),
                                             static_cast<std::uint32_t>(cfg.at("delta").get<std::int64_t>()), d.value);
        return repair_simulation(grid, PatternSpec::parse(pattern, grid.n), trials, seed);
    }
    throw ParameterError("simulate: repair simulation is not supported for kind '" + kind + "'");
}

} // namespace locus::job
