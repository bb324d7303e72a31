#pragma once

// Small independent reference computations used as test oracles. Nothing here calls the
// elimination code under test.

#include <gmpxx.h>

#include <vector>

namespace oracle {

using Dense = std::vector<std::vector<mpq_class>>;

// Rank by fraction-free (Bareiss) elimination after clearing denominators row by row.
inline std::size_t rank(const Dense& m) {
    if (m.empty()) return 0;
    const std::size_t cols = m.front().size();
    std::vector<std::vector<mpz_class>> a(m.size(), std::vector<mpz_class>(cols));
    for (std::size_t i = 0; i < m.size(); ++i) {
        mpz_class l = 1;
        for (const auto& x : m[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = m[i][j].get_num() * (l / m[i][j].get_den());
    }
    std::size_t r = 0;
    mpz_class prev = 1;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < a.size(); ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

inline Dense zeros(std::size_t r, std::size_t c) { return Dense(r, std::vector<mpq_class>(c, 0)); }

inline Dense identity(std::size_t n) {
    Dense m = zeros(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline Dense mul(const Dense& a, const Dense& b) {
    Dense m = zeros(a.size(), b.front().size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            if (a[i][k] != 0)
                for (std::size_t j = 0; j < b[k].size(); ++j) m[i][j] += a[i][k] * b[k][j];
    return m;
}

inline Dense axpy(Dense y, const mpq_class& s, const Dense& x) {
    for (std::size_t i = 0; i < y.size(); ++i)
        for (std::size_t j = 0; j < y[i].size(); ++j) y[i][j] += s * x[i][j];
    return y;
}

// exp and log of strictly upper triangular (resp. unipotent) n x n matrices: the series stop at n terms.
inline Dense exp_nilpotent(const Dense& a) {
    const std::size_t n = a.size();
    Dense out = identity(n), power = identity(n);
    mpq_class f = 1;
    for (std::size_t k = 1; k < n; ++k) {
        power = mul(power, a);
        f /= k;
        out = axpy(out, f, power);
    }
    return out;
}

inline Dense log_unipotent(const Dense& u) {
    const std::size_t n = u.size();
    const Dense x = axpy(u, -1, identity(n));
    Dense out = zeros(n, n), power = identity(n);
    for (std::size_t k = 1; k < n; ++k) {
        power = mul(power, x);
        out = axpy(out, mpq_class(k % 2 ? 1 : -1, k), power);
    }
    return out;
}

}  // namespace oracle
