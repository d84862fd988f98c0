#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace stbc {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Everything in this codebase is tiny
/// (at most 16x16), so there is no sparse or blocked storage.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::initializer_list<cplx> entries);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<cplx>& data() const { return data_; }

    ComplexMatrix operator+(const ComplexMatrix& rhs) const;
    ComplexMatrix operator-(const ComplexMatrix& rhs) const;
    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    ComplexMatrix operator*(cplx s) const;
    ComplexMatrix& operator+=(const ComplexMatrix& rhs);

    bool all_finite() const;
    double max_abs() const;
    double frobenius_norm() const;

    bool operator==(const ComplexMatrix& rhs) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

/// Dense row-major real matrix; carries the real expansions and the
/// equivalent channel.
class RealMatrix {
public:
    RealMatrix() = default;
    RealMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    RealMatrix(std::size_t rows, std::size_t cols, std::initializer_list<double> entries);

    static RealMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const double& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RealMatrix operator+(const RealMatrix& rhs) const;
    RealMatrix operator-(const RealMatrix& rhs) const;
    RealMatrix operator*(const RealMatrix& rhs) const;
    RealMatrix operator*(double s) const;

    RealMatrix transposed() const;
    /// A^T * A without forming the transpose
    RealMatrix gram() const;
    std::vector<double> mul(const std::vector<double>& v) const;
    /// A^T * v
    std::vector<double> tmul(const std::vector<double>& v) const;

    bool all_finite() const;
    double max_abs() const;
    double frobenius_norm() const;

    bool operator==(const RealMatrix& rhs) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

/// conjugate transpose
ComplexMatrix hermitian(const ComplexMatrix& m);

/// max |M[i][j] + M[j][i]| <= tol over all i, j (so |M[i][i]| <= tol/2)
bool is_skew_symmetric(const RealMatrix& m, double tol);

/// [[A^R, -A^I], [A^I, A^R]]  (2T x 2N)
RealMatrix real_expand_a(const ComplexMatrix& a);

/// [[-B^I, -B^R], [B^R, -B^I]]  (2T x 2N)
RealMatrix real_expand_b(const ComplexMatrix& b);

/// det of a square complex matrix, LU with partial pivoting
cplx det_lu(const ComplexMatrix& m);

/// det(D^H D) for a codeword difference D; the imaginary residue of the
/// computed determinant is checked and discarded, tiny negatives clamp to 0
double gram_det(const ComplexMatrix& d);

/// singular values, descending, via one-sided Jacobi (accurate for small
/// values, which a Gram-eigenvalue route would lose)
std::vector<double> singular_values(const ComplexMatrix& m);

/// rank with threshold rel_tol * sigma_max
std::size_t rank(const ComplexMatrix& m, double rel_tol = 1e-9);

// Fixture literal format: one row per line, entries like "a", "bi", "a+bi",
// "a-bi" separated by whitespace.
cplx parse_complex_entry(const std::string& tok);
std::string format_complex_entry(cplx v);
ComplexMatrix parse_matrix(const std::string& text);
std::string format_matrix(const ComplexMatrix& m);

} // namespace stbc
