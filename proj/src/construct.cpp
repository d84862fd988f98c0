#include "stbc/construct.hpp"

#include <algorithm>
#include <cmath>

#include "stbc/errors.hpp"

namespace stbc {

DispersionSet alamouti() {
    const ComplexMatrix a1 = ComplexMatrix::identity(2);
    const ComplexMatrix b1(2, 2, {1, 0, 0, -1});
    const ComplexMatrix a2(2, 2, {0, 1, -1, 0});
    const ComplexMatrix b2(2, 2, {0, 1, 1, 0});
    return DispersionSet(2, 2, {{a1, b1}, {a2, b2}});
}

DispersionSet ostbc_rate34_4tx() {
    // G = [[ x1,     x2,     x3/s2,          x3/s2        ],
    //      [-x2*,    x1*,    x3/s2,         -x3/s2        ],
    //      [ x3*/s2, x3*/s2, -x1^R + j x2^I, -x2^R + j x1^I],
    //      [ x3*/s2, -x3*/s2, x2^R + j x1^I, -x1^R - j x2^I]]
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix a1(4, 4), b1(4, 4), a2(4, 4), b2(4, 4), a3(4, 4), b3(4, 4);
    a1(0, 0) = 1; a1(1, 1) = 1; a1(2, 2) = -1; a1(3, 3) = -1;
    b1(0, 0) = 1; b1(1, 1) = -1; b1(2, 3) = 1; b1(3, 2) = 1;
    a2(0, 1) = 1; a2(1, 0) = -1; a2(2, 3) = -1; a2(3, 2) = 1;
    b2(0, 1) = 1; b2(1, 0) = 1; b2(2, 2) = 1; b2(3, 3) = -1;
    a3(0, 2) = s; a3(0, 3) = s; a3(1, 2) = s; a3(1, 3) = -s;
    a3(2, 0) = s; a3(2, 1) = s; a3(3, 0) = s; a3(3, 1) = -s;
    b3(0, 2) = s; b3(0, 3) = s; b3(1, 2) = s; b3(1, 3) = -s;
    b3(2, 0) = -s; b3(2, 1) = -s; b3(3, 0) = -s; b3(3, 1) = s;
    return DispersionSet(4, 4, {{a1, b1}, {a2, b2}, {a3, b3}});
}

namespace {

ComplexMatrix block_diag(const ComplexMatrix& m) {
    const std::size_t t = m.rows(), n = m.cols();
    ComplexMatrix out(2 * t, 2 * n);
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out(i, j) = m(i, j);
            out(t + i, n + j) = m(i, j);
        }
    }
    return out;
}

ComplexMatrix block_antidiag(const ComplexMatrix& m) {
    const std::size_t t = m.rows(), n = m.cols();
    ComplexMatrix out(2 * t, 2 * n);
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out(i, n + j) = m(i, j);
            out(t + i, j) = m(i, j);
        }
    }
    return out;
}

} // namespace

DispersionSet theorem3_map(const DispersionSet& seed, double seed_tol) {
    const StructureReport gate = check_ostbc(seed, seed_tol);
    if (gate.classification != Classification::orthogonal) {
        const Violation& v = gate.violations.front();
        throw StructureError("theorem3_map: seed is not an orthogonal design: " + v.constraint +
                             " violated for (q=" + std::to_string(v.q) + ", p=" +
                             std::to_string(v.p) + "), residual " + std::to_string(v.residual));
    }
    const std::size_t k = seed.n_symbols();
    const cplx j_unit(0.0, 1.0);
    std::vector<DispersionPair> pairs(2 * k);
    for (std::size_t q = 0; q < k; ++q) {
        const ComplexMatrix& sa = seed.pair(q).a;
        const ComplexMatrix& sb = seed.pair(q).b;
        pairs[q] = {block_diag(sa), block_antidiag(sa * j_unit)};        // rules 1, 2
        pairs[k + q] = {block_diag(sb * j_unit), block_antidiag(sb)};    // rules 3, 4
    }
    return DispersionSet(2 * seed.n_tx(), 2 * seed.span(), std::move(pairs));
}

DispersionSet remove_columns(const DispersionSet& code, const std::vector<std::size_t>& columns) {
    if (columns.empty()) throw DomainError("remove_columns: no columns named");
    std::vector<bool> drop(code.n_tx(), false);
    for (std::size_t c : columns) {
        if (c < 1 || c > code.n_tx()) {
            throw DomainError("remove_columns: column " + std::to_string(c) +
                              " outside 1.." + std::to_string(code.n_tx()));
        }
        drop[c - 1] = true;
    }
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < code.n_tx(); ++c)
        if (!drop[c]) keep.push_back(c);
    if (keep.empty()) throw DomainError("remove_columns: removing every column leaves an empty code");

    std::vector<DispersionPair> pairs;
    pairs.reserve(code.n_symbols());
    const auto strip = [&](const ComplexMatrix& m) {
        ComplexMatrix out(m.rows(), keep.size());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < keep.size(); ++j) out(i, j) = m(i, keep[j]);
        return out;
    };
    for (const auto& pr : code.pairs()) pairs.push_back({strip(pr.a), strip(pr.b)});
    return DispersionSet(keep.size(), code.span(), std::move(pairs));
}

ComplexMatrix codeword(const DispersionSet& code, const SymbolVector& x) {
    if (x.size() != code.n_symbols()) {
        throw ShapeError("codeword: " + std::to_string(x.size()) + " symbols for a K=" +
                         std::to_string(code.n_symbols()) + " code");
    }
    ComplexMatrix g(code.span(), code.n_tx());
    for (std::size_t q = 0; q < x.size(); ++q) {
        const double re = x[q].real(), im = x[q].imag();
        const ComplexMatrix& a = code.pair(q).a;
        const ComplexMatrix& b = code.pair(q).b;
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j)
                g(i, j) += re * a(i, j) + cplx(0.0, im) * b(i, j);
    }
    return g;
}

Rational max_rate(std::size_t n_tx) {
    if (n_tx < 3) {
        throw DomainError("max_rate: defined for n_tx >= 3 (O-STBC already achieves rate 1 below)");
    }
    const long n = static_cast<long>((n_tx + 3) / 4); // ceil(n_tx / 4)
    return make_rational(1 + n, 2 * n);
}

DispersionSet builtin_code(const std::string& family) {
    if (family == "alamouti") return alamouti();
    if (family == "ostbc34") return ostbc_rate34_4tx();
    if (family == "mdc4") return theorem3_map(alamouti());
    if (family == "mdc8") return theorem3_map(ostbc_rate34_4tx());
    throw ConfigError("unknown code family '" + family +
                      "' (expected alamouti|ostbc34|mdc4|mdc8)");
}

} // namespace stbc
