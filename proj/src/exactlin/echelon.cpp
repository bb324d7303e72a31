#include "dsi/exactlin.hpp"

#include <algorithm>
#include <stdexcept>

namespace dsi {

namespace {

using Row = RatMatrix::Row;

Rational entry_at(const Row& row, std::size_t c) {
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const RatMatrix::Entry& e, std::size_t col) { return e.first < col; });
    if (it != row.end() && it->first == c) return it->second;
    return Rational(0);
}

// row <- row - f * other, both sparse.
Row axpy_sparse(const Row& row, const Rational& f, const Row& other) {
    Row out;
    out.reserve(row.size() + other.size());
    auto a = row.begin();
    auto b = other.begin();
    while (a != row.end() || b != other.end()) {
        if (b == other.end() || (a != row.end() && a->first < b->first)) {
            out.push_back(*a++);
        } else if (a == row.end() || b->first < a->first) {
            out.emplace_back(b->first, -f * b->second);
            ++b;
        } else {
            Rational v = a->second - f * b->second;
            if (sgn(v) != 0) out.emplace_back(a->first, std::move(v));
            ++a;
            ++b;
        }
    }
    return out;
}

}  // namespace

Vec Echelon::reduce(std::span<const Rational> v) const {
    if (v.size() != dim_) throw std::invalid_argument("Echelon::reduce dimension");
    Vec w(v.begin(), v.end());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational f = w[pivots_[i]];
        if (sgn(f) == 0) continue;
        for (const auto& [c, x] : rows_[i]) w[c] -= f * x;
    }
    return w;
}

bool Echelon::contains(std::span<const Rational> v) const { return is_zero(reduce(v)); }

bool Echelon::insert(std::span<const Rational> v) {
    Vec w = reduce(v);
    std::size_t p = 0;
    while (p < dim_ && sgn(w[p]) == 0) ++p;
    if (p == dim_) return false;
    const Rational inv = 1 / w[p];
    Row fresh;
    for (std::size_t c = p; c < dim_; ++c)
        if (sgn(w[c]) != 0) fresh.emplace_back(c, w[c] * inv);
    for (auto& row : rows_) {
        const Rational f = entry_at(row, p);
        if (sgn(f) != 0) row = axpy_sparse(row, f, fresh);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    const auto idx = static_cast<std::ptrdiff_t>(pos - pivots_.begin());
    pivots_.insert(pos, p);
    rows_.insert(rows_.begin() + idx, std::move(fresh));
    return true;
}

std::vector<std::size_t> Echelon::free_columns() const {
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t c = 0; c < dim_; ++c) {
        if (k < pivots_.size() && pivots_[k] == c) {
            ++k;
            continue;
        }
        out.push_back(c);
    }
    return out;
}

std::vector<Vec> Echelon::basis() const {
    std::vector<Vec> out;
    out.reserve(rows_.size());
    for (const auto& row : rows_) {
        Vec v = zero_vec(dim_);
        for (const auto& [c, x] : row) v[c] = x;
        out.push_back(std::move(v));
    }
    return out;
}

Vec Echelon::quotient_coords(std::span<const Rational> v) const {
    Vec w = reduce(v);
    Vec out;
    out.reserve(dim_ - rows_.size());
    for (std::size_t c : free_columns()) out.push_back(w[c]);
    return out;
}

namespace {

// Column-order Gauss-Jordan on a dense copy, picking the first nonzero row as pivot.
// Produces the same reduced form as the sparse path since RREF is unique.
void dense_rref(std::vector<Vec>& a, std::size_t cols, std::vector<std::size_t>& pivots) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t piv = r;
        while (piv < a.size() && sgn(a[piv][c]) == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[r], a[piv]);
        const Rational inv = 1 / a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || sgn(a[i][c]) == 0) continue;
            const Rational f = a[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (sgn(a[r][j]) != 0) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    a.resize(r);
}

struct Rref {
    std::vector<Vec> rows;
    std::vector<std::size_t> pivots;
};

Rref rref_of(const RatMatrix& m) {
    Rref out;
    if (m.density() > 0.25) {
        out.rows = m.to_dense();
        dense_rref(out.rows, m.cols(), out.pivots);
        return out;
    }
    Echelon e(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Vec v = zero_vec(m.cols());
        for (const auto& [c, x] : m.row(r)) v[c] = x;
        e.insert(v);
    }
    out.rows = e.basis();
    out.pivots = e.pivots();
    return out;
}

}  // namespace

RankKernel rank_kernel(const RatMatrix& m) {
    Rref rr = rref_of(m);
    RankKernel out;
    out.rank = rr.pivots.size();
    out.pivot_columns = rr.pivots;
    std::vector<char> is_pivot(m.cols(), 0);
    for (std::size_t p : rr.pivots) is_pivot[p] = 1;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec k = zero_vec(m.cols());
        k[f] = 1;
        for (std::size_t i = 0; i < rr.pivots.size(); ++i) k[rr.pivots[i]] = -rr.rows[i][f];
        out.kernel.push_back(std::move(k));
    }
    return out;
}

std::size_t rank(const RatMatrix& m) {
    const std::size_t full = std::min(m.rows(), m.cols());
    if (full >= 48 && m.density() > 0.25) {
        // A mod-p rank equal to the maximum possible is exact over Q as well.
        if (auto r = modp::rank_mod_p(m); r && *r == full) return full;
    }
    return rref_of(m).pivots.size();
}

std::optional<Vec> solve(const RatMatrix& m, std::span<const Rational> b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs length");
    const std::size_t n = m.cols();
    Echelon e(n + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Vec v = zero_vec(n + 1);
        for (const auto& [c, x] : m.row(r)) v[c] = x;
        v[n] = b[r];
        e.insert(v);
    }
    if (!e.pivots().empty() && e.pivots().back() == n) return std::nullopt;
    Vec x = zero_vec(n);
    const auto& rows = e.sparse_rows();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (!row.empty() && row.back().first == n) x[e.pivots()[i]] = row.back().second;
    }
    return x;
}

}  // namespace dsi
