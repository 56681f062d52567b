#include "locus/conv.hpp"

#include "locus/hlrc.hpp"
#include "locus/oracle.hpp"

#include <algorithm>
#include <sstream>

namespace locus {

namespace {

std::string params(std::uint32_t n, std::uint32_t k, std::uint32_t j)
{
    std::ostringstream os;
    os << "(n=" << n << ", k=" << k << ", j=" << j << ")";
    return os.str();
}

} // namespace

QuasiCyclicLrc build_block_code(std::uint32_t n, std::uint32_t k, std::uint32_t j, std::uint32_t r, std::uint32_t delta,
                                const FieldPtr& f)
{
    if (r < 1) throw ParameterError("r must be >= 1");
    if (delta < 2) throw ParameterError("delta must be >= 2");
    if (k < 1 || k > j + 1) throw ParameterError("need k <= j+1: k = " + std::to_string(k) + ", j+1 = " + std::to_string(j + 1));
    if (j + 1 > n) throw ParameterError("need j+1 <= n: j+1 = " + std::to_string(j + 1) + ", n = " + std::to_string(n));
    const std::uint32_t m = r + delta - 1;
    if ((j + 1) % m != 0)
        throw ParameterError("r+delta-1 = " + std::to_string(m) + " does not divide j+1 = " + std::to_string(j + 1));
    if (n % k != 0) throw ParameterError("k = " + std::to_string(k) + " does not divide n = " + std::to_string(n));
    const std::uint64_t N = static_cast<std::uint64_t>(n) * (j + 1);
    if (N > 65535 || (f->q() - 1) % N != 0)
        throw ParameterError("n(j+1) = " + std::to_string(N) + " does not divide q-1 = " + std::to_string(f->q() - 1));

    QuasiCyclicLrc b;
    b.n = n;
    b.k = k;
    b.j = j;
    b.r = r;
    b.delta = delta;
    const std::int64_t J = j + 1;
    b.delta3 = (static_cast<std::int64_t>(n) - k) * J + delta - ceil_div(static_cast<std::int64_t>(k) * J, r) * (delta - 1);
    if (b.delta3 < 1) throw ParameterError("designed distance delta_3 = " + std::to_string(b.delta3) + " is below 1");

    const auto len = static_cast<std::uint32_t>(N);
    ZeroSet z1 = ZeroSet::range(m, 1, delta - 1);
    ZeroSet z2 = z1.replicate(j + 1, m, (j + 1) / m);
    ZeroSet l3 = z2.replicate(len, j + 1, n);
    ZeroSet z = l3.unite(ZeroSet::range(len, 1, b.delta3 - 1));
    b.block = generator_from_zeros(f, len, root_of_unity(f, len), z);
    return b;
}

std::uint32_t ConvGenerator::memory() const
{
    std::uint32_t M = 0;
    for (const auto& row : polys)
        for (const auto& p : row) {
            std::size_t d = p.size();
            while (d > 0 && p[d - 1] == 0) --d;
            if (d > 0) M = std::max<std::uint32_t>(M, static_cast<std::uint32_t>(d - 1));
        }
    return M;
}

Matrix ConvGenerator::coefficient(std::uint32_t s) const
{
    Matrix g(k, n);
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t l = 0; l < n; ++l)
            if (s < polys[i][l].size()) g.at(i, l) = polys[i][l][s];
    return g;
}

Matrix circulant_blocks(const ConvGenerator& g, std::uint32_t T)
{
    Matrix m(static_cast<std::size_t>(g.k) * T, static_cast<std::size_t>(g.n) * T);
    const Field& f = *g.field;
    for (std::uint32_t i = 0; i < g.k; ++i)
        for (std::uint32_t l = 0; l < g.n; ++l)
            for (std::size_t e = 0; e < g.polys[i][l].size(); ++e) {
                elem c = g.polys[i][l][e];
                if (!c) continue;
                for (std::uint32_t s0 = 0; s0 < T; ++s0) {
                    std::size_t col = static_cast<std::size_t>(l) * T + (s0 + e) % T;
                    elem& x = m.at(static_cast<std::size_t>(i) * T + s0, col);
                    x = f.add(x, c);
                }
            }
    return m;
}

Matrix tailbiting_generator(const ConvGenerator& g, std::uint32_t T)
{
    Matrix blocks = circulant_blocks(g, T);
    Matrix m(blocks.rows, blocks.cols);
    for (std::size_t row = 0; row < blocks.rows; ++row)
        for (std::uint32_t l = 0; l < g.n; ++l)
            for (std::uint32_t s = 0; s < T; ++s)
                m.at(row, l + static_cast<std::size_t>(g.n) * s) = blocks.at(row, static_cast<std::size_t>(l) * T + s);
    return m;
}

std::vector<std::vector<elem>> tailbiting_encode(const ConvGenerator& g, const std::vector<std::vector<elem>>& u)
{
    if (u.size() != g.k) throw ParameterError("input has " + std::to_string(u.size()) + " streams, expected " + std::to_string(g.k));
    const std::size_t T = u.empty() ? 0 : u[0].size();
    for (const auto& row : u)
        if (row.size() != T) throw ParameterError("input streams differ in length");
    const Field& f = *g.field;
    std::vector<std::vector<elem>> c(g.n, std::vector<elem>(T, 0));
    for (std::uint32_t i = 0; i < g.k; ++i)
        for (std::uint32_t l = 0; l < g.n; ++l)
            for (std::size_t e = 0; e < g.polys[i][l].size(); ++e) {
                elem gc = g.polys[i][l][e];
                if (!gc) continue;
                for (std::size_t s = 0; s < T; ++s)
                    if (u[i][s]) {
                        elem& x = c[l][(s + e) % T];
                        x = f.add(x, f.mul(u[i][s], gc));
                    }
            }
    return c;
}

Matrix truncated_generator(const ConvGenerator& g, std::uint32_t j)
{
    const std::size_t k = g.k, n = g.n;
    Matrix m(k * (j + 1), n * (j + 1));
    for (std::uint32_t a = 0; a <= j; ++a)
        for (std::uint32_t b = a; b <= j; ++b) {
            Matrix gs = g.coefficient(b - a);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t l = 0; l < n; ++l) m.at(a * k + i, b * n + l) = gs.at(i, l);
        }
    return m;
}

ConvGenerator convolutional_from_block(const FieldPtr& f, const Matrix& g, std::uint32_t n, std::uint32_t k, std::uint32_t j)
{
    const std::size_t K = static_cast<std::size_t>(k) * (j + 1);
    const std::size_t N = static_cast<std::size_t>(n) * (j + 1);
    if (n % k != 0) throw ParameterError("k = " + std::to_string(k) + " does not divide n = " + std::to_string(n));
    if (g.rows != K || g.cols != N)
        throw ParameterError("generator is " + std::to_string(g.rows) + "x" + std::to_string(g.cols) + ", expected " +
                             std::to_string(K) + "x" + std::to_string(N));
    std::vector<std::size_t> I;
    for (std::size_t c = 0; c < N; c += n / k) I.push_back(c);
    Matrix gi = select_columns(g, I);
    auto inv = inverse(*f, gi);
    if (!inv) {
        std::size_t rk = rank(*f, gi);
        throw GIdentityError("G_I is singular: rank " + std::to_string(rk) + " of " + std::to_string(K) + " for " + params(n, k, j) +
                                 " over " + f->name(),
                             rk, K);
    }
    Matrix red = multiply(*f, *inv, g);

    ConvGenerator out;
    out.field = f;
    out.k = k;
    out.n = n;
    out.polys.assign(k, std::vector<std::vector<elem>>(n, std::vector<elem>(j + 1, 0)));
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t l = 0; l < n; ++l)
            for (std::uint32_t s = 0; s <= j; ++s) out.polys[i][l][s] = red.at(i, static_cast<std::size_t>(n) * s + l);

    const std::uint32_t step = n / k;
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t l = 0; l < n; l += step) {
            const auto& p = out.polys[i][l];
            bool want_one = l == i * step;
            bool ok = p[0] == (want_one ? 1u : 0u);
            for (std::uint32_t s = 1; s <= j; ++s) ok = ok && p[s] == 0;
            if (!ok) throw std::logic_error("identity/zero block pattern violated at (" + std::to_string(i) + "," + std::to_string(l) + ")");
        }
    if (out.memory() > j) throw std::logic_error("memory exceeds j");
    if (rank(*f, out.coefficient(0)) != k) throw ParameterError("G_0 does not have full rank");

    Matrix tb = tailbiting_generator(out, j + 1);
    Matrix stack(g.rows + tb.rows, N);
    std::copy(g.a.begin(), g.a.end(), stack.a.begin());
    std::copy(tb.a.begin(), tb.a.end(), stack.a.begin() + static_cast<std::ptrdiff_t>(g.a.size()));
    if (rank(*f, stack) != rank(*f, g)) throw ParameterError("circulant rows are not codewords of the block code " + params(n, k, j));
    return out;
}

ConvGenerator to_convolutional(const QuasiCyclicLrc& b)
{
    const Field& f = *b.block.field;
    const std::uint32_t N = b.length();
    std::vector<std::uint32_t> nz;
    for (std::uint32_t t = 0; t < N; ++t)
        if (!b.block.zeros.contains(t)) nz.push_back(t);
    Matrix g(nz.size(), N);
    for (std::size_t r = 0; r < nz.size(); ++r) {
        elem at = f.pow(b.block.alpha, nz[r]);
        for (std::uint32_t s = 0; s < N; ++s) g.at(r, s) = f.pow(at, N - 1 - s);
    }
    return convolutional_from_block(b.block.field, g, b.n, b.k, b.j);
}

namespace {

struct CdSearch {
    const Field& f;
    std::uint32_t k, n, j;
    std::vector<Matrix> gs;
    std::uint64_t nodes = 0;

    CdSearch(const ConvGenerator& g, std::uint32_t jj) : f(*g.field), k(g.k), n(g.n), j(jj)
    {
        for (std::uint32_t s = 0; s <= j; ++s) gs.push_back(g.coefficient(s));
    }

    // weight of c_t for inputs u[0..t]
    std::uint64_t column_weight(const std::vector<std::vector<elem>>& u, std::uint32_t t) const
    {
        std::uint64_t w = 0;
        for (std::uint32_t l = 0; l < n; ++l) {
            elem x = 0;
            for (std::uint32_t s = 0; s <= t; ++s) {
                const Matrix& m = gs[t - s];
                for (std::uint32_t i = 0; i < k; ++i)
                    if (u[s][i] && m.at(i, l)) x = f.add(x, f.mul(u[s][i], m.at(i, l)));
            }
            w += x != 0;
        }
        return w;
    }

    void dfs(std::vector<std::vector<elem>>& u, std::uint32_t t, std::uint64_t partial, std::uint64_t& best)
    {
        ++nodes;
        std::uint64_t w = partial + column_weight(u, t);
        if (w >= best) return;
        if (t == j) {
            best = w;
            return;
        }
        auto& next = u[t + 1];
        std::fill(next.begin(), next.end(), 0);
        while (true) {
            dfs(u, t + 1, w, best);
            std::uint32_t i = k;
            bool done = true;
            while (i > 0) {
                --i;
                if (++next[i] < f.q()) {
                    done = false;
                    break;
                }
                next[i] = 0;
            }
            if (done) break;
        }
    }
};

std::vector<std::vector<elem>> projective_vectors(const Field& f, std::uint32_t k)
{
    std::vector<std::vector<elem>> out;
    for (std::uint32_t lead = 0; lead < k; ++lead) {
        std::vector<elem> v(k, 0);
        v[lead] = 1;
        while (true) {
            out.push_back(v);
            std::uint32_t i = k;
            bool done = true;
            while (i > lead + 1) {
                --i;
                if (++v[i] < f.q()) {
                    done = false;
                    break;
                }
                v[i] = 0;
            }
            if (done) break;
        }
    }
    return out;
}

bool within_budget(const Field& f, std::uint32_t k, std::uint32_t j, std::uint64_t budget)
{
    return message_space(f, static_cast<std::size_t>(k) * (j + 1)) <= budget;
}

void require_full_g0(const ConvGenerator& g)
{
    if (rank(*g.field, g.coefficient(0)) != g.k) throw ParameterError("G_0 does not have full rank; column distance undefined");
}

} // namespace

ColumnDistance column_distance(const ConvGenerator& g, std::uint32_t j, std::uint64_t budget)
{
    require_full_g0(g);
    ColumnDistance res;
    const std::int64_t cap = singleton_column_bound(g.n, g.k, j);
    res.value = cap;
    if (!within_budget(*g.field, g.k, j, budget)) return res;
    res.exhaustive = true;
    auto starts = projective_vectors(*g.field, g.k);
    std::uint64_t best = static_cast<std::uint64_t>(cap) + 1, nodes = 0;
#pragma omp parallel for schedule(dynamic) reduction(min : best) reduction(+ : nodes)
    for (std::int64_t si = 0; si < static_cast<std::int64_t>(starts.size()); ++si) {
        CdSearch s(g, j);
        std::vector<std::vector<elem>> u(j + 1, std::vector<elem>(g.k, 0));
        u[0] = starts[si];
        std::uint64_t local = static_cast<std::uint64_t>(cap) + 1;
        s.dfs(u, 0, 0, local);
        best = std::min(best, local);
        nodes += s.nodes;
    }
    res.value = static_cast<std::int64_t>(best);
    res.nodes = nodes;
    return res;
}

ColumnDistance column_distance_serial(const ConvGenerator& g, std::uint32_t j, std::uint64_t budget)
{
    require_full_g0(g);
    ColumnDistance res;
    const std::int64_t cap = singleton_column_bound(g.n, g.k, j);
    res.value = cap;
    if (!within_budget(*g.field, g.k, j, budget)) return res;
    res.exhaustive = true;
    CdSearch s(g, j);
    std::vector<std::vector<elem>> u(j + 1, std::vector<elem>(g.k, 0));
    std::uint64_t best = static_cast<std::uint64_t>(cap) + 1;
    auto& u0 = u[0];
    while (true) {
        std::uint32_t i = g.k;
        bool done = true;
        while (i > 0) {
            --i;
            if (++u0[i] < g.field->q()) {
                done = false;
                break;
            }
            u0[i] = 0;
        }
        if (done) break;
        s.dfs(u, 0, 0, best);
    }
    res.value = static_cast<std::int64_t>(best);
    res.nodes = s.nodes;
    return res;
}

std::int64_t column_distance_bound(std::int64_t n, std::int64_t k, std::int64_t r, std::int64_t delta, std::int64_t j)
{
    return (n - k) * (j + 1) + delta - ceil_div(k, r) * (delta - 1);
}

std::int64_t singleton_column_bound(std::int64_t n, std::int64_t k, std::int64_t j) { return (n - k) * (j + 1) + 1; }

bool propagation_consistent(const std::vector<std::int64_t>& d, std::int64_t n, std::int64_t k, std::int64_t r,
                            std::int64_t delta)
{
    for (std::size_t j = 0; j < d.size(); ++j) {
        if (d[j] != column_distance_bound(n, k, r, delta, static_cast<std::int64_t>(j))) continue;
        for (std::size_t i = 0; i < j; ++i)
            if (d[i] < column_distance_bound(n, k, r, delta, static_cast<std::int64_t>(i))) return false;
    }
    return true;
}

bool parity_span_oracle(const ConvGenerator& g, std::uint32_t j, std::uint32_t d, std::uint64_t max_subsets)
{
    if (d == 0) return false;
    const Field& f = *g.field;
    Matrix h = nullspace(f, truncated_generator(g, j));
    const std::size_t N = h.cols;

    auto binom = [](std::size_t a, std::size_t b) {
        long double v = 1;
        for (std::size_t i = 0; i < b; ++i) v = v * static_cast<long double>(a - i) / static_cast<long double>(i + 1);
        return v;
    };

    // is column e in the span of some s other columns?
    auto in_span = [&](std::size_t e, std::size_t s) {
        std::vector<std::size_t> others;
        for (std::size_t c = 0; c < N; ++c)
            if (c != e) others.push_back(c);
        if (s > others.size()) return false;
        std::vector<std::size_t> comb(s);
        for (std::size_t i = 0; i < s; ++i) comb[i] = i;
        while (true) {
            std::vector<std::size_t> cols;
            for (auto i : comb) cols.push_back(others[i]);
            std::size_t base = rank(f, select_columns(h, cols));
            cols.push_back(e);
            if (rank(f, select_columns(h, cols)) == base) return true;
            std::size_t i = s;
            while (i > 0 && comb[i - 1] == others.size() - s + i - 1) --i;
            if (i == 0) return false;
            ++comb[i - 1];
            for (std::size_t t = i; t < s; ++t) comb[t] = comb[t - 1] + 1;
        }
    };

    const std::size_t hi = d - 1;
    if (binom(N - 1, std::min<std::size_t>(hi, N - 1)) * g.n > static_cast<long double>(max_subsets))
        throw ParameterError("parity-span oracle exceeds its subset budget");
    if (d >= 2)
        for (std::size_t e = 0; e < g.n; ++e)
            if (in_span(e, d - 2)) return false;
    for (std::size_t e = 0; e < g.n; ++e)
        if (in_span(e, d - 1)) return true;
    return false;
}

std::vector<std::vector<std::uint32_t>> shifted_row_groups(std::uint32_t T, std::uint32_t r, std::uint32_t delta)
{
    const std::uint32_t m = r + delta - 1;
    if (m == 0 || T % m != 0)
        throw ParameterError("repair group size " + std::to_string(m) + " does not divide row length " + std::to_string(T));
    const std::uint32_t nu = T / m;
    std::vector<std::vector<std::uint32_t>> groups;
    for (std::uint32_t t = 0; t < nu; ++t) {
        std::vector<std::uint32_t> grp;
        for (std::uint32_t s = 0; s < m; ++s) grp.push_back(t + nu * s);
        groups.push_back(grp);
    }
    return groups;
}

GridCode grid_from_block(const QuasiCyclicLrc& b)
{
    GridCode c;
    c.field = b.block.field;
    c.n = b.n;
    c.T = b.j + 1;
    c.window = b.j + 1;
    c.tailbiting = true;
    c.G = generator_matrix(b.block);
    c.H = parity_check_matrix(b.block);
    c.r = b.r;
    c.delta = b.delta;
    c.row_groups = shifted_row_groups(c.T, b.r, b.delta);
    c.d_window = bch_designed_distance(b.block.zeros);
    return c;
}

GridCode grid_from_tailbiting(const ConvGenerator& g, std::uint32_t T, std::uint32_t r, std::uint32_t delta,
                              std::uint64_t d_window)
{
    GridCode c;
    c.field = g.field;
    c.n = g.n;
    c.T = T;
    c.window = T;
    c.tailbiting = true;
    c.G = row_basis(*g.field, tailbiting_generator(g, T));
    c.H = dual(*g.field, c.G);
    c.r = r;
    c.delta = delta;
    c.row_groups = shifted_row_groups(T, r, delta);
    c.d_window = d_window;
    return c;
}

RowLocality row_locality_verify(const GridCode& c)
{
    RowLocality out;
    const Field& f = *c.field;
    for (std::uint32_t l = 0; l < c.n; ++l) {
        std::vector<std::size_t> cols;
        for (std::uint32_t s = 0; s < c.T; ++s) cols.push_back(c.coord(l, s));
        Matrix rowcode = select_columns(c.G, cols);
        LocalityReport rep = locality_verify(f, rowcode, c.r, c.delta, c.row_groups);
        ++out.rows_checked;
        if (!rep.pass) {
            out.pass = false;
            for (const auto& msg : rep.failures) out.failures.push_back("row " + std::to_string(l) + ": " + msg);
        }
    }
    return out;
}

RepairResult sliding_window_repair(const GridCode& c, const std::vector<elem>& word, const std::vector<bool>& erased)
{
    const Field& f = *c.field;
    RepairResult res;
    res.word = word;
    res.residual = erased;
    auto& w = res.word;
    auto& er = res.residual;

    // parity of each row group's projected code, shared by all rows
    std::vector<std::vector<Matrix>> local_h(c.n);
    for (std::uint32_t l = 0; l < c.n; ++l)
        for (const auto& grp : c.row_groups) {
            std::vector<std::size_t> cols;
            for (auto s : grp) cols.push_back(c.coord(l, s));
            local_h[l].push_back(dual(f, row_basis(f, select_columns(c.G, cols))));
        }

    auto remaining = [&] { return static_cast<std::size_t>(std::count(er.begin(), er.end(), true)); };
    while (remaining() > 0) {
        ++res.rounds;
        bool progress = false;
        for (std::uint32_t l = 0; l < c.n; ++l)
            for (std::size_t gi = 0; gi < c.row_groups.size(); ++gi) {
                const auto& grp = c.row_groups[gi];
                std::vector<elem> seg;
                std::vector<bool> se;
                std::size_t cnt = 0;
                for (auto s : grp) {
                    seg.push_back(w[c.coord(l, s)]);
                    se.push_back(er[c.coord(l, s)]);
                    cnt += se.back();
                }
                if (cnt == 0 || cnt >= c.delta) continue;
                std::vector<bool> det;
                if (!solve_erasures(f, local_h[l][gi], seg, se, det)) continue;
                for (std::size_t t = 0; t < grp.size(); ++t)
                    if (se[t] && det[t]) {
                        w[c.coord(l, grp[t])] = seg[t];
                        er[c.coord(l, grp[t])] = false;
                        res.trace.push_back({"local", l, grp[t], -1, res.rounds});
                        progress = true;
                    }
            }
        if (remaining() == 0) break;

        const std::uint32_t starts = c.tailbiting ? c.T : c.T - c.window + 1;
        for (std::uint32_t t = 0; t < starts; ++t) {
            std::size_t in_window = 0, leading = 0;
            for (std::uint32_t s = 0; s < c.window; ++s) {
                std::uint32_t col = (t + s) % c.T;
                for (std::uint32_t l = 0; l < c.n; ++l)
                    if (er[c.coord(l, col)]) {
                        ++in_window;
                        if (s == 0) ++leading;
                    }
            }
            if (leading == 0 || in_window >= c.d_window) continue;
            std::vector<elem> trial = w;
            std::vector<bool> det;
            if (!solve_erasures(f, c.H, trial, er, det)) continue;
            bool any = false;
            for (std::uint32_t l = 0; l < c.n; ++l) {
                std::size_t p = c.coord(l, t);
                if (er[p] && det[p]) {
                    w[p] = trial[p];
                    er[p] = false;
                    res.trace.push_back({"window", l, t, t, res.rounds});
                    any = true;
                }
            }
            if (any) {
                progress = true;
                break;
            }
        }
        if (!progress) break;
    }
    res.success = remaining() == 0;
    return res;
}

} // namespace locus
