#include "locus/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace locus {

Budget Budget::from_env()
{
    Budget b;
    if (const char* s = std::getenv("LOCUS_MAX_ENUM")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && v > 0) b.max_enumerations = v;
    }
    return b;
}

std::string oracle_csv_header() { return "instance_id,quantity,claimed_lo,claimed_hi,verified,enumerations,outcome"; }

std::string oracle_csv_row(const OracleReport& r)
{
    std::ostringstream os;
    os << r.instance << ',' << r.quantity << ',' << r.claimed_lo << ',' << r.claimed_hi << ',';
    if (r.verified) os << *r.verified;
    os << ',' << r.enumerations << ',' << r.outcome;
    return os.str();
}

std::uint64_t message_space(const Field& f, std::size_t k)
{
    long double total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= f.q();
    if (total > static_cast<long double>(std::numeric_limits<std::uint64_t>::max() / 2))
        return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(total) - 1;
}

DistanceResult min_distance_serial(const Field& f, const Matrix& g_in, std::uint64_t budget)
{
    const Matrix g = row_basis(f, g_in);
    DistanceResult res;
    const std::size_t k = g.rows, n = g.cols;
    res.value = n + 1;
    if (message_space(f, k) > budget) return res;
    res.exhaustive = true;
    if (k == 0) return res;
    std::vector<elem> msg(k, 0);
    const elem q = f.q();
    while (true) {
        // next message in lexicographic order, last coordinate fastest
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (++msg[i] < q) break;
            msg[i] = 0;
            if (i == 0) return res;
        }
        ++res.enumerations;
        std::uint64_t w = 0;
        for (std::size_t j = 0; j < n && w < res.value; ++j) {
            elem s = 0;
            for (std::size_t t = 0; t < k; ++t)
                if (msg[t] && g.at(t, j)) s = f.add(s, f.mul(msg[t], g.at(t, j)));
            w += s != 0;
        }
        if (w < res.value) res.value = w;
    }
}

DistanceResult min_distance(const Field& f, const Matrix& g_in, std::uint64_t budget)
{
    const Matrix g = row_basis(f, g_in);
    DistanceResult res;
    const std::size_t k = g.rows, n = g.cols;
    res.value = n + 1;
    if (message_space(f, k) > budget) return res;
    res.exhaustive = true;
    const std::uint32_t p = f.p(), m = f.m();

    std::uint64_t best = n + 1, total = 0;
    for (std::size_t lead = 0; lead < k; ++lead) {
        const std::size_t digits = (k - 1 - lead) * m;
        // scaled[d] = p^(d mod m) * g[lead + 1 + d / m]
        std::vector<std::vector<elem>> scaled(digits, std::vector<elem>(n));
        for (std::size_t d = 0; d < digits; ++d) {
            elem s = 1;
            for (std::size_t e = 0; e < d % m; ++e) s *= p;
            const std::size_t row = lead + 1 + d / m;
            for (std::size_t j = 0; j < n; ++j) scaled[d][j] = f.mul(s, g.at(row, j));
        }
        std::uint64_t count = 1;
        for (std::size_t d = 0; d < digits; ++d) count *= p;
        total += count;
        const std::uint64_t chunk = 1u << 14;
        const auto nchunks = static_cast<std::int64_t>((count + chunk - 1) / chunk);
        std::uint64_t lead_best = n + 1;

#pragma omp parallel for schedule(dynamic) reduction(min : lead_best)
        for (std::int64_t ci = 0; ci < nchunks; ++ci) {
            const std::uint64_t start = static_cast<std::uint64_t>(ci) * chunk;
            const std::uint64_t stop = std::min(count, start + chunk);
            std::vector<std::uint32_t> cnt(digits + 1, 0), gray(digits, 0);
            std::uint64_t x = start;
            for (std::size_t d = 0; d < digits; ++d) {
                cnt[d] = static_cast<std::uint32_t>(x % p);
                x /= p;
            }
            for (std::size_t d = 0; d < digits; ++d) gray[d] = (cnt[d] + p - cnt[d + 1]) % p;
            std::vector<elem> cw(g.row(lead), g.row(lead) + n);
            for (std::size_t d = 0; d < digits; ++d)
                if (gray[d]) {
                    elem s = f.from_int(gray[d]);
                    for (std::size_t j = 0; j < n; ++j) cw[j] = f.add(cw[j], f.mul(s, scaled[d][j]));
                }
            std::uint64_t local = n + 1;
            for (std::uint64_t idx = start;;) {
                std::uint64_t w = 0;
                for (std::size_t j = 0; j < n && w < local; ++j) w += cw[j] != 0;
                if (w < local) local = w;
                if (++idx >= stop) break;
                std::size_t d = 0;
                while (cnt[d] == p - 1) cnt[d++] = 0;
                ++cnt[d];
                const elem* sr = scaled[d].data();
                for (std::size_t j = 0; j < n; ++j) cw[j] = f.add(cw[j], sr[j]);
            }
            lead_best = std::min(lead_best, local);
        }
        best = std::min(best, lead_best);
    }
    res.value = best;
    res.enumerations = total;
    return res;
}

OracleReport min_distance_report(const std::string& instance, const Field& f, const Matrix& g, std::int64_t lo,
                                 std::int64_t hi, const Budget& b)
{
    OracleReport r;
    r.instance = instance;
    r.quantity = "min_distance";
    r.claimed_lo = lo;
    r.claimed_hi = hi;
    auto t0 = std::chrono::steady_clock::now();
    DistanceResult d = min_distance(f, g, b.max_enumerations);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.enumerations = d.enumerations;
    if (!d.exhaustive) {
        r.outcome = "budget-exceeded";
        return r;
    }
    r.verified = static_cast<std::int64_t>(d.value);
    r.outcome = (*r.verified >= lo && *r.verified <= hi) ? "verified" : "refuted";
    return r;
}

bool distance_at_least(const Field& f, const Matrix& g, std::size_t d)
{
    if (d <= 1) return true;
    const std::size_t n = g.cols, del = d - 1;
    const std::size_t full = rank(f, g);
    if (full == 0) return true;
    if (del >= n) return false;
    std::vector<std::size_t> comb(del);
    for (std::size_t i = 0; i < del; ++i) comb[i] = i;
    while (true) {
        std::vector<std::size_t> keep;
        std::size_t c = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (c < del && comb[c] == j) {
                ++c;
                continue;
            }
            keep.push_back(j);
        }
        if (rank(f, select_columns(g, keep)) < full) return false;
        std::size_t i = del;
        while (i > 0 && comb[i - 1] == n - del + i - 1) --i;
        if (i == 0) return true;
        ++comb[i - 1];
        for (std::size_t j = i; j < del; ++j) comb[j] = comb[j - 1] + 1;
    }
}

LocalityReport locality_verify(const Field& f, const Matrix& g, std::size_t r, std::size_t delta,
                               const std::vector<std::vector<std::uint32_t>>& groups)
{
    LocalityReport rep;
    rep.groups = groups.size();
    std::vector<int> cover(g.cols, 0);
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        std::vector<std::size_t> cols(groups[gi].begin(), groups[gi].end());
        for (auto c : cols) ++cover[c];
        Matrix pg = select_columns(g, cols);
        std::size_t rk = rank(f, pg);
        if (rk > r) {
            rep.pass = false;
            rep.failures.push_back("group " + std::to_string(gi) + ": punctured rank " + std::to_string(rk) + " > r = " + std::to_string(r));
        }
        if (!distance_at_least(f, pg, delta)) {
            rep.pass = false;
            rep.failures.push_back("group " + std::to_string(gi) + ": punctured distance below " + std::to_string(delta));
        }
    }
    for (std::size_t c = 0; c < g.cols; ++c)
        if (cover[c] == 0) {
            rep.pass = false;
            rep.failures.push_back("coordinate " + std::to_string(c) + " is in no group");
        }
    return rep;
}

bool erase_decode(const Field& f, const Matrix& h, std::vector<elem>& word, const std::vector<bool>& erased)
{
    std::vector<bool> det;
    if (!solve_erasures(f, h, word, erased, det)) return false;
    for (std::size_t i = 0; i < word.size(); ++i)
        if (erased[i] && !det[i]) return false;
    return true;
}

} // namespace locus
