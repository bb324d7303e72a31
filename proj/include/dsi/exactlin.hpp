#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dsi {

using Rational = mpq_class;
using Vec = std::vector<Rational>;

Vec zero_vec(std::size_t n);
bool is_zero(std::span<const Rational> v);

// Sparse matrix over Q stored as rows of (column, value) pairs sorted by column.
// Absent entries are zero; stored entries are never zero.
class RatMatrix {
public:
    using Entry = std::pair<std::size_t, Rational>;
    using Row = std::vector<Entry>;

    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols);

    static RatMatrix identity(std::size_t n);
    static RatMatrix from_dense(const std::vector<Vec>& rows);
    static RatMatrix from_columns(std::size_t rows, const std::vector<Vec>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const;
    double density() const;
    bool is_zero() const { return nnz() == 0; }

    Rational get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Rational& v);
    void add(std::size_t r, std::size_t c, const Rational& v);
    const Row& row(std::size_t r) const { return data_[r]; }

    Vec apply(std::span<const Rational> x) const;
    RatMatrix operator*(const RatMatrix& rhs) const;
    RatMatrix operator+(const RatMatrix& rhs) const;
    RatMatrix operator-(const RatMatrix& rhs) const;
    RatMatrix scaled(const Rational& s) const;
    RatMatrix transpose() const;
    std::vector<Vec> to_dense() const;
    Vec column(std::size_t c) const;

    bool operator==(const RatMatrix& o) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Row> data_;
};

// Incrementally built reduced row echelon form of a subspace of Q^dim.
// Rows are kept fully reduced, so reduce() returns a canonical representative
// of a vector modulo the span.
class Echelon {
public:
    explicit Echelon(std::size_t dim = 0) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }

    // Returns true when v was independent of the current span (and adds it).
    bool insert(std::span<const Rational> v);
    Vec reduce(std::span<const Rational> v) const;
    bool contains(std::span<const Rational> v) const;

    const std::vector<std::size_t>& pivots() const { return pivots_; }
    std::vector<std::size_t> free_columns() const;
    std::vector<Vec> basis() const;
    const std::vector<RatMatrix::Row>& sparse_rows() const { return rows_; }

    // Coordinates of v mod span in the basis of standard vectors at free columns.
    Vec quotient_coords(std::span<const Rational> v) const;

private:
    std::size_t dim_;
    std::vector<RatMatrix::Row> rows_;  // normalized: entry at pivots_[i] is 1
    std::vector<std::size_t> pivots_;  // kept sorted together with rows_
};

struct RankKernel {
    std::size_t rank = 0;
    std::vector<Vec> kernel;
    std::vector<std::size_t> pivot_columns;
};

RankKernel rank_kernel(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);
std::optional<Vec> solve(const RatMatrix& m, std::span<const Rational> b);

// Bounded cochain complex of finite-dimensional Q-spaces.
// diff[i] maps degree lo+i to lo+i+1; the last degree maps to zero.
struct SlicedComplex {
    int lo = 0;
    std::vector<std::size_t> dims;
    std::vector<RatMatrix> diff;
    std::vector<std::vector<std::string>> labels;

    int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
    std::size_t dim(int n) const;
    // Differential out of degree n, a zero matrix when out of range.
    RatMatrix d(int n) const;
    bool shapes_ok() const;
    // First degree n with d(n+1)*d(n) != 0, if any.
    std::optional<int> square_defect() const;
    int euler_characteristic() const;
};

struct DegreeCohomology {
    int degree = 0;
    std::size_t dim = 0;
    std::vector<Vec> representatives;
};

struct CohomologyResult {
    std::vector<DegreeCohomology> degrees;
    std::optional<int> square_defect;  // set when d*d != 0; degrees left empty

    std::size_t dim(int n) const;
    bool ok() const { return !square_defect; }
};

CohomologyResult cohomology(const SlicedComplex& c, bool with_representatives = true);

// Quotient of a complex by a subcomplex given as spans in each degree.
// The quotient basis in each degree is the set of standard vectors at the
// free columns of the corresponding echelon form.
SlicedComplex quotient_complex(const SlicedComplex& c, const std::vector<Echelon>& sub);

// Homotopy H with dH + Hd = f for a chain endomorphism f of c that is zero in cohomology.
// f[i] acts on degree lo+i and H[i] maps degree lo+i to lo+i-1. Nothing when f is not null-homotopic.
std::optional<std::vector<RatMatrix>> null_homotopy(const SlicedComplex& c, const std::vector<RatMatrix>& f);

std::string format_vec(std::span<const Rational> v);

namespace modp {

inline constexpr std::uint32_t kPrime = 2147483647u;  // 2^31 - 1

// dst[i] = dst[i] + f * src[i] mod kPrime, all inputs reduced.
void axpy_scalar(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t f);
void axpy_avx2(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t f);
bool avx2_available();
const char* active_kernel_name();

using AxpyKernel = void (*)(std::span<std::uint32_t>, std::span<const std::uint32_t>, std::uint32_t);
AxpyKernel active_kernel();

std::uint32_t reduce_rational(const Rational& q, bool& ok);
std::size_t dense_rank(std::vector<std::vector<std::uint32_t>> rows, AxpyKernel kernel);

// Rank of m reduced mod kPrime, or nothing when some denominator vanishes mod kPrime.
std::optional<std::size_t> rank_mod_p(const RatMatrix& m);

}  // namespace modp

}  // namespace dsi
