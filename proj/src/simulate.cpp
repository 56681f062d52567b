#include "locus/simulate.hpp"

#include "locus/oracle.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace locus {

namespace {

std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<elem> random_codeword(const Field& f, const Matrix& g, std::mt19937_64& rng)
{
    std::vector<elem> msg(g.rows);
    for (auto& x : msg) x = static_cast<elem>(below(rng, f.q()));
    return vec_mat(f, msg, g);
}

std::uint64_t parse_count(const std::string& s, const std::string& whole)
{
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || s.empty()) throw ParameterError("bad pattern spec '" + whole + "'");
    return v;
}

} // namespace

PatternSpec PatternSpec::parse(const std::string& text, std::uint32_t grid_rows)
{
    PatternSpec p;
    auto colon = text.find(':');
    std::string head = colon == std::string::npos ? "" : text.substr(0, colon);
    std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (head == "random") {
        p.kind = Kind::random;
        p.count = parse_count(tail, text);
        return p;
    }
    if (head == "local") {
        p.kind = Kind::local;
        p.count = parse_count(tail, text);
        return p;
    }
    if (head == "bernoulli") {
        p.kind = Kind::bernoulli;
        std::size_t pos = 0;
        try {
            p.probability = std::stod(tail, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != tail.size() || tail.empty() || p.probability < 0 || p.probability > 1)
            throw ParameterError("bad pattern spec '" + text + "'");
        return p;
    }
    std::ifstream in(text);
    if (!in) throw ParameterError("pattern '" + text + "' is neither random:K, bernoulli:P, local:E nor a readable file");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParameterError("pattern file " + text + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("erasures") || !j["erasures"].is_array())
        throw ParameterError("pattern file " + text + " needs an \"erasures\" array");
    p.kind = Kind::fixed;
    for (const auto& e : j["erasures"]) {
        if (e.is_array() && e.size() == 2 && e[0].is_number_unsigned() && e[1].is_number_unsigned()) {
            if (grid_rows == 0) throw ParameterError("pattern file " + text + ": (row, col) pairs need a grid code");
            std::size_t row = e[0].get<std::size_t>(), col = e[1].get<std::size_t>();
            if (row >= grid_rows) throw ParameterError("pattern file " + text + ": row " + std::to_string(row) + " out of range");
            p.fixed.push_back(row + grid_rows * col);
        } else if (e.is_number_unsigned()) {
            p.fixed.push_back(e.get<std::size_t>());
        } else {
            throw ParameterError("pattern file " + text + ": entries must be indices or [row, col] pairs");
        }
    }
    return p;
}

std::string simulation_csv_header() { return "pattern_id,erasure_count,recovered,rounds,trace_length"; }

std::string simulation_csv(const std::vector<SimRow>& rows)
{
    std::ostringstream os;
    os << simulation_csv_header() << '\n';
    for (const auto& r : rows)
        os << r.pattern_id << ',' << r.erasures << ',' << (r.recovered ? "true" : "false") << ',' << r.rounds << ','
           << r.trace_length << '\n';
    return os.str();
}

std::vector<bool> draw_pattern(const PatternSpec& spec, std::size_t length,
                               const std::vector<std::vector<std::size_t>>& groups, std::mt19937_64& rng)
{
    std::vector<bool> er(length, false);
    switch (spec.kind) {
    case PatternSpec::Kind::random: {
        if (spec.count > length) throw ParameterError("random:" + std::to_string(spec.count) + " exceeds code length");
        std::vector<std::size_t> idx(length);
        for (std::size_t i = 0; i < length; ++i) idx[i] = i;
        for (std::size_t i = 0; i < spec.count; ++i) {
            std::size_t jx = i + below(rng, length - i);
            std::swap(idx[i], idx[jx]);
            er[idx[i]] = true;
        }
        break;
    }
    case PatternSpec::Kind::bernoulli:
        for (std::size_t i = 0; i < length; ++i) er[i] = unit(rng) < spec.probability;
        break;
    case PatternSpec::Kind::local:
        for (const auto& grp : groups) {
            std::vector<std::size_t> idx = grp;
            std::size_t e = std::min<std::size_t>(spec.count, idx.size());
            for (std::size_t i = 0; i < e; ++i) {
                std::size_t jx = i + below(rng, idx.size() - i);
                std::swap(idx[i], idx[jx]);
                er[idx[i]] = true;
            }
        }
        break;
    case PatternSpec::Kind::fixed:
        for (auto p : spec.fixed) {
            if (p >= length) throw ParameterError("fixed pattern position " + std::to_string(p) + " out of range");
            er[p] = true;
        }
        break;
    }
    return er;
}

std::vector<SimRow> repair_simulation(const GridCode& code, const PatternSpec& spec, std::uint64_t trials, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const std::size_t len = static_cast<std::size_t>(code.n) * code.T;
    std::vector<std::vector<std::size_t>> groups;
    for (std::uint32_t l = 0; l < code.n; ++l)
        for (const auto& g : code.row_groups) {
            std::vector<std::size_t> c;
            for (auto s : g) c.push_back(code.coord(l, s));
            groups.push_back(c);
        }
    std::vector<SimRow> rows;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::vector<elem> cw = random_codeword(*code.field, code.G, rng);
        std::vector<bool> er = draw_pattern(spec, len, groups, rng);
        std::vector<elem> damaged = cw;
        for (std::size_t i = 0; i < len; ++i)
            if (er[i]) damaged[i] = 0;
        RepairResult res = sliding_window_repair(code, damaged, er);
        for (std::size_t i = 0; i < len; ++i)
            if (!res.residual[i] && res.word[i] != cw[i]) throw std::logic_error("repair produced a wrong symbol");
        SimRow row;
        row.pattern_id = t;
        row.erasures = static_cast<std::size_t>(std::count(er.begin(), er.end(), true));
        row.recovered = res.success;
        row.rounds = res.rounds;
        row.trace_length = res.trace.size();
        rows.push_back(row);
    }
    return rows;
}

CyclicRepairResult hierarchical_repair(const HierarchicalRepair& h, std::vector<elem> word, std::vector<bool> erased)
{
    CyclicRepairResult out;
    const CyclicCode& c = *h.code;
    auto remaining = [&] { return std::count(erased.begin(), erased.end(), true); };
    while (remaining() > 0) {
        ++out.rounds;
        std::size_t got = 0;
        for (const auto& lv : h.levels) got += local_repair(c, lv, word, erased);
        out.filled += got;
        if (got > 0) continue;
        std::vector<bool> det;
        std::size_t before = static_cast<std::size_t>(remaining());
        if (solve_erasures(*c.field, parity_check_matrix(c), word, erased, det)) {
            for (std::size_t i = 0; i < word.size(); ++i)
                if (erased[i] && det[i]) erased[i] = false;
        }
        std::size_t after = static_cast<std::size_t>(remaining());
        out.filled += before - after;
        break;
    }
    out.success = remaining() == 0;
    out.word = std::move(word);
    return out;
}

std::vector<SimRow> repair_simulation(const HierarchicalRepair& h, const PatternSpec& spec, std::uint64_t trials,
                                      std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const CyclicCode& c = *h.code;
    Matrix g = generator_matrix(c);
    std::vector<std::vector<std::size_t>> groups;
    if (!h.levels.empty())
        for (const auto& grp : h.levels.front().groups) groups.emplace_back(grp.begin(), grp.end());
    std::vector<SimRow> rows;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::vector<elem> cw = random_codeword(*c.field, g, rng);
        std::vector<bool> er = draw_pattern(spec, c.n, groups, rng);
        std::vector<elem> damaged = cw;
        for (std::size_t i = 0; i < c.n; ++i)
            if (er[i]) damaged[i] = 0;
        CyclicRepairResult res = hierarchical_repair(h, damaged, er);
        if (res.success && res.word != cw) throw std::logic_error("repair produced a wrong symbol");
        SimRow row;
        row.pattern_id = t;
        row.erasures = static_cast<std::size_t>(std::count(er.begin(), er.end(), true));
        row.recovered = res.success;
        row.rounds = res.rounds;
        row.trace_length = res.filled;
        rows.push_back(row);
    }
    return rows;
}

} // namespace locus
