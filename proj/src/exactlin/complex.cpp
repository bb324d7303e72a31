#include "dsi/exactlin.hpp"

#include <stdexcept>

namespace dsi {

std::size_t SlicedComplex::dim(int n) const {
    if (n < lo || n > hi()) return 0;
    return dims[static_cast<std::size_t>(n - lo)];
}

RatMatrix SlicedComplex::d(int n) const {
    const auto i = n - lo;
    if (i >= 0 && static_cast<std::size_t>(i) < diff.size()) return diff[static_cast<std::size_t>(i)];
    return RatMatrix(dim(n + 1), dim(n));
}

bool SlicedComplex::shapes_ok() const {
    if (!dims.empty() && diff.size() + 1 < dims.size()) return false;
    for (std::size_t i = 0; i < diff.size(); ++i) {
        const int n = lo + static_cast<int>(i);
        if (diff[i].cols() != dim(n) || diff[i].rows() != dim(n + 1)) return false;
    }
    return true;
}

std::optional<int> SlicedComplex::square_defect() const {
    for (int n = lo; n <= hi(); ++n)
        if (!(d(n + 1) * d(n)).is_zero()) return n;
    return std::nullopt;
}

int SlicedComplex::euler_characteristic() const {
    int chi = 0;
    for (int n = lo; n <= hi(); ++n) chi += (n % 2 == 0 ? 1 : -1) * static_cast<int>(dim(n));
    return chi;
}

std::size_t CohomologyResult::dim(int n) const {
    for (const auto& d : degrees)
        if (d.degree == n) return d.dim;
    return 0;
}

CohomologyResult cohomology(const SlicedComplex& c, bool with_representatives) {
    if (!c.shapes_ok()) throw std::invalid_argument("cohomology: differential shapes do not match dims");
    CohomologyResult out;
    if (auto bad = c.square_defect()) {
        out.square_defect = bad;
        return out;
    }
    for (int n = c.lo; n <= c.hi(); ++n) {
        DegreeCohomology h;
        h.degree = n;
        const RatMatrix incoming = c.d(n - 1);
        if (!with_representatives) {
            const std::size_t z = c.dim(n) - rank(c.d(n));
            h.dim = z - rank(incoming);
            out.degrees.push_back(std::move(h));
            continue;
        }
        RankKernel rk = rank_kernel(c.d(n));
        Echelon span(c.dim(n));
        const RatMatrix cols = incoming.transpose();
        for (std::size_t j = 0; j < cols.rows(); ++j) {
            Vec v = zero_vec(c.dim(n));
            for (const auto& [r, x] : cols.row(j)) v[r] = x;
            span.insert(v);
        }
        for (auto& z : rk.kernel)
            if (span.insert(z)) h.representatives.push_back(std::move(z));
        h.dim = h.representatives.size();
        out.degrees.push_back(std::move(h));
    }
    return out;
}

SlicedComplex quotient_complex(const SlicedComplex& c, const std::vector<Echelon>& sub) {
    if (sub.size() != c.dims.size()) throw std::invalid_argument("quotient_complex: one subspace per degree");
    SlicedComplex q;
    q.lo = c.lo;
    std::vector<std::vector<std::size_t>> keep;
    for (std::size_t i = 0; i < c.dims.size(); ++i) {
        if (sub[i].dim() != c.dims[i]) throw std::invalid_argument("quotient_complex: subspace dimension");
        keep.push_back(sub[i].free_columns());
        q.dims.push_back(keep.back().size());
        std::vector<std::string> labels;
        if (i < c.labels.size())
            for (std::size_t k : keep.back()) labels.push_back(c.labels[i][k]);
        q.labels.push_back(std::move(labels));
    }
    for (std::size_t i = 0; i + 1 < c.dims.size(); ++i) {
        const RatMatrix dt = c.d(c.lo + static_cast<int>(i)).transpose();
        RatMatrix m(q.dims[i + 1], q.dims[i]);
        for (std::size_t j = 0; j < keep[i].size(); ++j) {
            Vec img = zero_vec(c.dims[i + 1]);
            for (const auto& [r, x] : dt.row(keep[i][j])) img[r] = x;
            Vec coords = sub[i + 1].quotient_coords(img);
            for (std::size_t r = 0; r < coords.size(); ++r)
                if (sgn(coords[r]) != 0) m.set(r, j, coords[r]);
        }
        q.diff.push_back(std::move(m));
    }
    return q;
}

std::optional<std::vector<RatMatrix>> null_homotopy(const SlicedComplex& c, const std::vector<RatMatrix>& f) {
    const std::size_t len = c.dims.size();
    if (f.size() != len) throw std::invalid_argument("null_homotopy: one map per degree");
    auto coh = cohomology(c, true);
    if (!coh.ok()) return std::nullopt;
    auto dim_at = [&](std::size_t i) { return i < len ? c.dims[i] : std::size_t{0}; };
    auto diff_at = [&](std::size_t i) {
        return i + 1 < len ? c.diff[i] : RatMatrix(dim_at(i + 1), dim_at(i));
    };

    std::vector<RatMatrix> h(len);
    h[0] = RatMatrix(0, c.dims[0]);
    for (std::size_t i = 0; i + 1 < len; ++i) {
        // Build H on degree i+1 in the basis d(L^i), cohomology representatives, L^{i+1}.
        const RatMatrix d = diff_at(i);
        const RatMatrix dnext = diff_at(i + 1);
        const RatMatrix dprev = i > 0 ? diff_at(i - 1) : RatMatrix(c.dims[0], 0);
        std::vector<Vec> basis, images;
        for (std::size_t p : rank_kernel(d).pivot_columns) {
            Vec e = zero_vec(c.dims[i]);
            e[p] = 1;
            basis.push_back(d.apply(e));
            Vec v = f[i].apply(e);
            const Vec hv = i > 0 ? dprev.apply(h[i].apply(e)) : zero_vec(c.dims[i]);
            for (std::size_t r = 0; r < v.size(); ++r) v[r] -= hv[r];
            images.push_back(std::move(v));
        }
        for (const auto& z : coh.degrees[i + 1].representatives) {
            auto x = solve(d, f[i + 1].apply(z));
            if (!x) return std::nullopt;
            basis.push_back(z);
            images.push_back(std::move(*x));
        }
        for (std::size_t p : rank_kernel(dnext).pivot_columns) {
            Vec e = zero_vec(c.dims[i + 1]);
            e[p] = 1;
            basis.push_back(std::move(e));
            images.push_back(zero_vec(c.dims[i]));
        }
        const std::size_t n = c.dims[i + 1];
        if (basis.size() != n) return std::nullopt;
        const RatMatrix b = RatMatrix::from_columns(n, basis);
        std::vector<Vec> inverse_cols;
        for (std::size_t j = 0; j < n; ++j) {
            Vec e = zero_vec(n);
            e[j] = 1;
            auto x = solve(b, e);
            if (!x) return std::nullopt;
            inverse_cols.push_back(std::move(*x));
        }
        h[i + 1] = RatMatrix::from_columns(c.dims[i], images) * RatMatrix::from_columns(n, inverse_cols);
    }

    for (std::size_t i = 0; i < len; ++i) {
        RatMatrix lhs(c.dims[i], c.dims[i]);
        if (i + 1 < len) lhs = h[i + 1] * diff_at(i);
        if (i > 0) lhs = lhs + diff_at(i - 1) * h[i];
        if (!(lhs == f[i])) return std::nullopt;
    }
    return h;
}

}  // namespace dsi
