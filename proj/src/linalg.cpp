#include "locus/linalg.hpp"

namespace locus {

std::vector<std::size_t> rref(const Field& f, Matrix& m)
{
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && m.at(p, c) == 0) ++p;
        if (p == m.rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        elem s = f.inv(m.at(r, c));
        elem* pr = m.row(r);
        for (std::size_t j = c; j < m.cols; ++j) pr[j] = f.mul(pr[j], s);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            elem t = m.at(i, c);
            if (!t) continue;
            elem nt = f.neg(t);
            elem* pi = m.row(i);
            for (std::size_t j = c; j < m.cols; ++j)
                if (pr[j]) pi[j] = f.add(pi[j], f.mul(nt, pr[j]));
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

std::size_t rank(const Field& f, Matrix m) { return rref(f, m).size(); }

Matrix nullspace(const Field& f, const Matrix& m)
{
    Matrix e = m;
    auto piv = rref(f, e);
    std::vector<bool> is_piv(m.cols, false);
    for (auto c : piv) is_piv[c] = true;
    Matrix ns(m.cols - piv.size(), m.cols);
    std::size_t k = 0;
    for (std::size_t fc = 0; fc < m.cols; ++fc) {
        if (is_piv[fc]) continue;
        ns.at(k, fc) = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) ns.at(k, piv[i]) = f.neg(e.at(i, fc));
        ++k;
    }
    return ns;
}

Matrix select_columns(const Matrix& m, const std::vector<std::size_t>& cols)
{
    Matrix s(m.rows, cols.size());
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s.at(i, j) = m.at(i, cols[j]);
    return s;
}

Matrix row_basis(const Field& f, Matrix m)
{
    auto piv = rref(f, m);
    Matrix b(piv.size(), m.cols);
    std::copy(m.a.begin(), m.a.begin() + static_cast<std::ptrdiff_t>(piv.size() * m.cols), b.a.begin());
    return b;
}

std::optional<Matrix> inverse(const Field& f, const Matrix& m)
{
    const std::size_t n = m.rows;
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    auto piv = rref(f, aug);
    if (piv.size() < n || piv[n - 1] >= n) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

Matrix multiply(const Field& f, const Matrix& x, const Matrix& y)
{
    Matrix z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t l = 0; l < x.cols; ++l) {
            elem a = x.at(i, l);
            if (!a) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                if (y.at(l, j)) z.at(i, j) = f.add(z.at(i, j), f.mul(a, y.at(l, j)));
        }
    return z;
}

Matrix dual(const Field& f, const Matrix& g) { return nullspace(f, g); }

bool solve_erasures(const Field& f, const Matrix& h, std::vector<elem>& word,
                    const std::vector<bool>& erased, std::vector<bool>& determined)
{
    std::vector<std::size_t> unk;
    for (std::size_t i = 0; i < word.size(); ++i)
        if (erased[i]) unk.push_back(i);
    determined.assign(word.size(), false);
    // augmented system H_E x = -H_K y
    Matrix sys(h.rows, unk.size() + 1);
    for (std::size_t r = 0; r < h.rows; ++r) {
        elem rhs = 0;
        for (std::size_t c = 0; c < h.cols; ++c)
            if (!erased[c] && word[c] && h.at(r, c)) rhs = f.add(rhs, f.mul(h.at(r, c), word[c]));
        for (std::size_t j = 0; j < unk.size(); ++j) sys.at(r, j) = h.at(r, unk[j]);
        sys.at(r, unk.size()) = f.neg(rhs);
    }
    auto piv = rref(f, sys);
    if (!piv.empty() && piv.back() == unk.size()) return false;
    // a pivot variable is determined iff its row has no free-variable entries
    std::vector<bool> pivcol(unk.size() + 1, false);
    for (auto p : piv) pivcol[p] = true;
    for (std::size_t i = 0; i < piv.size(); ++i) {
        bool clean = true;
        for (std::size_t j = piv[i] + 1; j < unk.size() && clean; ++j)
            if (!pivcol[j] && sys.at(i, j)) clean = false;
        if (clean) {
            determined[unk[piv[i]]] = true;
            word[unk[piv[i]]] = sys.at(i, unk.size());
        }
    }
    return true;
}

std::vector<elem> vec_mat(const Field& f, const std::vector<elem>& v, const Matrix& m)
{
    std::vector<elem> out(m.cols, 0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (!v[i]) continue;
        const elem* r = m.row(i);
        for (std::size_t j = 0; j < m.cols; ++j)
            if (r[j]) out[j] = f.add(out[j], f.mul(v[i], r[j]));
    }
    return out;
}

std::size_t weight(const std::vector<elem>& v)
{
    std::size_t w = 0;
    for (auto x : v) w += x != 0;
    return w;
}

} // namespace locus
