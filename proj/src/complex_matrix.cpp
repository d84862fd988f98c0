#include "stbc/complex_matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "stbc/errors.hpp"

namespace stbc {

namespace {

void require_same_shape(std::size_t r1, std::size_t c1, std::size_t r2, std::size_t c2,
                        const char* op) {
    if (r1 != r2 || c1 != c2) {
        throw ShapeError(std::string(op) + ": shape mismatch " + std::to_string(r1) + "x" +
                         std::to_string(c1) + " vs " + std::to_string(r2) + "x" +
                         std::to_string(c2));
    }
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::initializer_list<cplx> entries)
    : rows_(rows), cols_(cols), data_(entries) {
    if (data_.size() != rows * cols) {
        throw ShapeError("ComplexMatrix: initializer has " + std::to_string(data_.size()) +
                         " entries, expected " + std::to_string(rows * cols));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
    require_same_shape(rows_, cols_, rhs.rows_, rhs.cols_, "operator+");
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + rhs.data_[i];
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
    require_same_shape(rows_, cols_, rhs.rows_, rhs.cols_, "operator-");
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
    return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_) {
        throw ShapeError("operator*: inner dimensions " + std::to_string(cols_) + " vs " +
                         std::to_string(rhs.rows_));
    }
    ComplexMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const cplx a = (*this)(i, k);
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator*(cplx s) const {
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * s;
    return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_shape(rows_, cols_, rhs.rows_, rhs.cols_, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

bool ComplexMatrix::all_finite() const {
    for (const cplx& v : data_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, std::initializer_list<double> entries)
    : rows_(rows), cols_(cols), data_(entries) {
    if (data_.size() != rows * cols) {
        throw ShapeError("RealMatrix: initializer has " + std::to_string(data_.size()) +
                         " entries, expected " + std::to_string(rows * cols));
    }
}

RealMatrix RealMatrix::identity(std::size_t n) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

RealMatrix RealMatrix::operator+(const RealMatrix& rhs) const {
    require_same_shape(rows_, cols_, rhs.rows_, rhs.cols_, "operator+");
    RealMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + rhs.data_[i];
    return out;
}

RealMatrix RealMatrix::operator-(const RealMatrix& rhs) const {
    require_same_shape(rows_, cols_, rhs.rows_, rhs.cols_, "operator-");
    RealMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
    return out;
}

RealMatrix RealMatrix::operator*(const RealMatrix& rhs) const {
    if (cols_ != rhs.rows_) {
        throw ShapeError("operator*: inner dimensions " + std::to_string(cols_) + " vs " +
                         std::to_string(rhs.rows_));
    }
    RealMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const double a = (*this)(i, k);
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

RealMatrix RealMatrix::operator*(double s) const {
    RealMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * s;
    return out;
}

RealMatrix RealMatrix::transposed() const {
    RealMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

RealMatrix RealMatrix::gram() const {
    RealMatrix out(cols_, cols_);
    for (std::size_t i = 0; i < cols_; ++i) {
        for (std::size_t j = i; j < cols_; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < rows_; ++k) s += (*this)(k, i) * (*this)(k, j);
            out(i, j) = s;
            out(j, i) = s;
        }
    }
    return out;
}

std::vector<double> RealMatrix::mul(const std::vector<double>& v) const {
    if (v.size() != cols_) {
        throw ShapeError("mul: vector length " + std::to_string(v.size()) + " vs cols " +
                         std::to_string(cols_));
    }
    std::vector<double> out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

std::vector<double> RealMatrix::tmul(const std::vector<double>& v) const {
    if (v.size() != rows_) {
        throw ShapeError("tmul: vector length " + std::to_string(v.size()) + " vs rows " +
                         std::to_string(rows_));
    }
    std::vector<double> out(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double a = v[i];
        if (a == 0.0) continue;
        for (std::size_t j = 0; j < cols_; ++j) out[j] += a * (*this)(i, j);
    }
    return out;
}

bool RealMatrix::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

double RealMatrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

double RealMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

ComplexMatrix hermitian(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

bool is_skew_symmetric(const RealMatrix& m, double tol) {
    if (m.rows() != m.cols()) {
        throw ShapeError("is_skew_symmetric: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
    }
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            if (std::abs(m(i, j) + m(j, i)) > tol) return false;
    return true;
}

RealMatrix real_expand_a(const ComplexMatrix& a) {
    const std::size_t t = a.rows(), n = a.cols();
    RealMatrix out(2 * t, 2 * n);
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double re = a(i, j).real(), im = a(i, j).imag();
            out(i, j) = re;
            out(i, n + j) = -im;
            out(t + i, j) = im;
            out(t + i, n + j) = re;
        }
    }
    return out;
}

RealMatrix real_expand_b(const ComplexMatrix& b) {
    const std::size_t t = b.rows(), n = b.cols();
    RealMatrix out(2 * t, 2 * n);
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double re = b(i, j).real(), im = b(i, j).imag();
            out(i, j) = -im;
            out(i, n + j) = -re;
            out(t + i, j) = re;
            out(t + i, n + j) = -im;
        }
    }
    return out;
}

cplx det_lu(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw ShapeError("det_lu: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
    }
    const std::size_t n = m.rows();
    ComplexMatrix a = m;
    cplx det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(a(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = a(i, k) / a(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

double gram_det(const ComplexMatrix& d) {
    const ComplexMatrix g = hermitian(d) * d;
    const cplx det = det_lu(g);
    // Hadamard bound gives the natural magnitude scale for the residue check
    double hadamard = 1.0;
    for (std::size_t i = 0; i < g.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < g.cols(); ++j) row += std::norm(g(i, j));
        hadamard *= std::sqrt(row);
    }
    const double scale = std::max({std::abs(det.real()), hadamard, 1e-300});
    if (std::abs(det.imag()) > 1e-9 * scale) {
        throw std::runtime_error("gram_det: imaginary residue " +
                                 std::to_string(det.imag()) + " exceeds tolerance");
    }
    return std::max(0.0, det.real());
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    // one-sided Jacobi on the tall orientation
    ComplexMatrix a = (m.rows() >= m.cols()) ? m : hermitian(m);
    const std::size_t rows = a.rows(), n = a.cols();
    constexpr double eps = 1e-14;
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                cplx apq = 0.0;
                for (std::size_t i = 0; i < rows; ++i) {
                    app += std::norm(a(i, p));
                    aqq += std::norm(a(i, q));
                    apq += std::conj(a(i, p)) * a(i, q);
                }
                const double mag = std::abs(apq);
                if (mag <= eps * std::sqrt(app * aqq) || mag == 0.0) continue;
                rotated = true;
                const cplx phase = apq / mag;
                // zero p^H q: with t = s/c the condition is t^2 - 2*zeta*t - 1 = 0;
                // the small-magnitude root is -sgn(zeta)/(|zeta| + sqrt(1 + zeta^2))
                const double zeta = (app - aqq) / (2.0 * mag);
                const double t =
                    (zeta >= 0 ? -1.0 : 1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < rows; ++i) {
                    const cplx vq = a(i, q) * std::conj(phase); // absorb the phase
                    const cplx vp = a(i, p);
                    a(i, p) = c * vp - s * vq;
                    a(i, q) = s * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
    }
    std::vector<double> sv(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i) s += std::norm(a(i, j));
        sv[j] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

std::size_t rank(const ComplexMatrix& m, double rel_tol) {
    const std::vector<double> sv = singular_values(m);
    if (sv.empty() || sv[0] == 0.0) return 0;
    const double thresh = rel_tol * sv[0];
    std::size_t r = 0;
    for (double s : sv)
        if (s > thresh) ++r;
    return r;
}

namespace {

double parse_double_strict(const std::string& s) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    if (begin != end && *begin == '+') ++begin; // from_chars rejects a leading '+'
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (begin == end || ec != std::errc() || ptr != end) {
        throw DomainError("bad numeric literal '" + s + "'");
    }
    return v;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

} // namespace

cplx parse_complex_entry(const std::string& tok) {
    if (tok.empty()) throw DomainError("empty complex entry");
    // split at the last '+'/'-' that is neither leading nor an exponent sign
    std::size_t split = std::string::npos;
    for (std::size_t i = tok.size(); i-- > 1;) {
        const char ch = tok[i];
        if ((ch == '+' || ch == '-') && tok[i - 1] != 'e' && tok[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    const bool has_i = tok.back() == 'i';
    if (split == std::string::npos) {
        if (!has_i) return {parse_double_strict(tok), 0.0};
        std::string coef = tok.substr(0, tok.size() - 1);
        if (coef.empty() || coef == "+") return {0.0, 1.0};
        if (coef == "-") return {0.0, -1.0};
        return {0.0, parse_double_strict(coef)};
    }
    if (!has_i) throw DomainError("malformed complex entry '" + tok + "'");
    const double re = parse_double_strict(tok.substr(0, split));
    std::string coef = tok.substr(split, tok.size() - split - 1);
    if (coef == "+") return {re, 1.0};
    if (coef == "-") return {re, -1.0};
    return {re, parse_double_strict(coef)};
}

std::string format_complex_entry(cplx v) {
    if (v.imag() == 0.0) return format_double(v.real());
    const std::string im = format_double(v.imag());
    if (v.real() == 0.0) return im + "i";
    return (v.imag() < 0.0) ? format_double(v.real()) + im + "i"
                            : format_double(v.real()) + "+" + im + "i";
}

ComplexMatrix parse_matrix(const std::string& text) {
    std::vector<std::vector<cplx>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream toks(line);
        std::vector<cplx> row;
        std::string tok;
        while (toks >> tok) row.push_back(parse_complex_entry(tok));
        if (row.empty()) continue;
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ShapeError("parse_matrix: ragged rows (" + std::to_string(row.size()) +
                             " vs " + std::to_string(rows.front().size()) + ")");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ShapeError("parse_matrix: no rows");
    ComplexMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

std::string format_matrix(const ComplexMatrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ' ';
            out += format_complex_entry(m(i, j));
        }
        out += '\n';
    }
    return out;
}

} // namespace stbc
