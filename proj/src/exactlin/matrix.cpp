#include "dsi/exactlin.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace dsi {

Vec zero_vec(std::size_t n) { return Vec(n, Rational(0)); }

bool is_zero(std::span<const Rational> v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(i, Rational(1));
    return m;
}

RatMatrix RatMatrix::from_dense(const std::vector<Vec>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    RatMatrix m(rows.size(), c);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != c) throw std::invalid_argument("ragged dense matrix");
        for (std::size_t j = 0; j < c; ++j)
            if (sgn(rows[r][j]) != 0) m.data_[r].emplace_back(j, rows[r][j]);
    }
    return m;
}

RatMatrix RatMatrix::from_columns(std::size_t rows, const std::vector<Vec>& cols) {
    RatMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
        for (std::size_t r = 0; r < rows; ++r)
            if (sgn(cols[j][r]) != 0) m.data_[r].emplace_back(j, cols[j][r]);
    }
    return m;
}

std::size_t RatMatrix::nnz() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
}

double RatMatrix::density() const {
    if (rows_ == 0 || cols_ == 0) return 0.0;
    return static_cast<double>(nnz()) / (static_cast<double>(rows_) * static_cast<double>(cols_));
}

Rational RatMatrix::get(std::size_t r, std::size_t c) const {
    const auto& row = data_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const Entry& e, std::size_t col) { return e.first < col; });
    if (it != row.end() && it->first == c) return it->second;
    return Rational(0);
}

void RatMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("RatMatrix::set");
    auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const Entry& e, std::size_t col) { return e.first < col; });
    const bool present = it != row.end() && it->first == c;
    if (sgn(v) == 0) {
        if (present) row.erase(it);
    } else if (present) {
        it->second = v;
    } else {
        row.insert(it, Entry{c, v});
    }
}

void RatMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
    if (sgn(v) == 0) return;
    set(r, c, get(r, c) + v);
}

Vec RatMatrix::apply(std::span<const Rational> x) const {
    if (x.size() != cols_) throw std::invalid_argument("RatMatrix::apply shape");
    Vec y = zero_vec(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, v] : data_[r]) y[r] += v * x[c];
    return y;
}

RatMatrix RatMatrix::operator*(const RatMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("RatMatrix product shape");
    RatMatrix out(rows_, rhs.cols_);
    Vec acc = zero_vec(rhs.cols_);
    std::vector<char> touched(rhs.cols_, 0);
    std::vector<std::size_t> cols;
    for (std::size_t r = 0; r < rows_; ++r) {
        cols.clear();
        for (const auto& [k, v] : data_[r])
            for (const auto& [c, w] : rhs.data_[k]) {
                if (!touched[c]) {
                    touched[c] = 1;
                    cols.push_back(c);
                }
                acc[c] += v * w;
            }
        std::sort(cols.begin(), cols.end());
        for (std::size_t c : cols) {
            if (sgn(acc[c]) != 0) out.data_[r].emplace_back(c, acc[c]);
            acc[c] = 0;
            touched[c] = 0;
        }
    }
    return out;
}

RatMatrix RatMatrix::operator+(const RatMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("RatMatrix sum shape");
    RatMatrix out = *this;
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, v] : rhs.data_[r]) out.add(r, c, v);
    return out;
}

RatMatrix RatMatrix::operator-(const RatMatrix& rhs) const { return *this + rhs.scaled(Rational(-1)); }

RatMatrix RatMatrix::scaled(const Rational& s) const {
    if (sgn(s) == 0) return RatMatrix(rows_, cols_);
    RatMatrix out = *this;
    for (auto& row : out.data_)
        for (auto& e : row) e.second *= s;
    return out;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, v] : data_[r]) t.data_[c].emplace_back(r, v);
    return t;
}

std::vector<Vec> RatMatrix::to_dense() const {
    std::vector<Vec> d(rows_, zero_vec(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, v] : data_[r]) d[r][c] = v;
    return d;
}

Vec RatMatrix::column(std::size_t c) const {
    Vec v = zero_vec(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = get(r, c);
    return v;
}

bool RatMatrix::operator==(const RatMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::string format_vec(std::span<const Rational> v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << v[i].get_str();
    }
    os << ')';
    return os.str();
}

}  // namespace dsi
