#pragma once

// Small, deliberately naive numeric checks of the roots-of-unity, Cramer and
// Vandermonde facts that the uniqueness argument for the phase-vector
// families rests on.  Nothing here is tuned for speed.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "nlops/error.hpp"
#include "nlops/tensor.hpp"

namespace nlops::oracles {

inline constexpr std::size_t kMaxCofactorOrder = 6;

/// omega^0 .. omega^{d-1}, omega = e^{2 pi i / d}.
inline std::vector<Complex> roots_of_unity(std::size_t d) {
    if (d < 2) throw Error("bad-dimension", "roots_of_unity needs d >= 2");
    std::vector<Complex> out(d);
    for (std::size_t k = 0; k < d; ++k)
        out[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d));
    return out;
}

/// Product over pairs j < t of (y_t - y_j), accumulated left to right.
inline Complex vandermonde_det(const std::vector<Complex>& nodes) {
    Complex p{1.0, 0.0};
    for (std::size_t j = 0; j < nodes.size(); ++j)
        for (std::size_t t = j + 1; t < nodes.size(); ++t) p *= nodes[t] - nodes[j];
    return p;
}

/// Rows (1, y, y^2, ..., y^{n-1}).
inline Eigen::MatrixXcd vandermonde_matrix(const std::vector<Complex>& nodes) {
    const auto n = static_cast<Eigen::Index>(nodes.size());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        Complex p{1.0, 0.0};
        for (Eigen::Index c = 0; c < n; ++c) {
            m(r, c) = p;
            p *= nodes[static_cast<std::size_t>(r)];
        }
    }
    return m;
}

/// Laplace expansion along the first row.  Limited to n <= 6.
inline Complex det_cofactor(const Eigen::MatrixXcd& a) {
    if (a.rows() != a.cols()) throw Error("dim-mismatch", "determinant of a non-square matrix");
    const Eigen::Index n = a.rows();
    if (n > static_cast<Eigen::Index>(kMaxCofactorOrder)) throw Error("too-large", "cofactor expansion capped at n <= 6");
    if (n == 0) return 1.0;
    if (n == 1) return a(0, 0);
    Complex sum{0.0, 0.0};
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::MatrixXcd minor(n - 1, n - 1);
        for (Eigen::Index r = 1; r < n; ++r) {
            Eigen::Index mc = 0;
            for (Eigen::Index cc = 0; cc < n; ++cc)
                if (cc != c) minor(r - 1, mc++) = a(r, cc);
        }
        const double sign = (c % 2 == 0) ? 1.0 : -1.0;
        sum += sign * a(0, c) * det_cofactor(minor);
    }
    return sum;
}

/// |D_1| .. |D_d|, where D_j is the Vandermonde determinant on the d-th roots
/// of unity with omega^{j-1} removed.
inline std::vector<double> proof_determinants_nonzero(std::size_t d) {
    const auto roots = roots_of_unity(d);
    std::vector<double> out;
    out.reserve(d);
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<Complex> nodes;
        for (std::size_t k = 0; k < d; ++k)
            if (k != j) nodes.push_back(roots[k]);
        out.push_back(std::abs(vandermonde_det(nodes)));
    }
    return out;
}

/// x_i = det(A with column i replaced by b) / det(A).  Throws "singular" when
/// |det A| <= 1e-10 times the product of the row norms (Hadamard's bound).
inline std::vector<Complex> cramer_solve(const Eigen::MatrixXcd& a, const std::vector<Complex>& b) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n || static_cast<Eigen::Index>(b.size()) != n)
        throw Error("dim-mismatch", "cramer_solve needs square A and matching b");
    if (n > static_cast<Eigen::Index>(kMaxCofactorOrder)) throw Error("too-large", "cramer_solve capped at n <= 6");
    const Complex det = det_cofactor(a);
    double hadamard = 1.0;
    for (Eigen::Index r = 0; r < n; ++r) hadamard *= a.row(r).norm();
    if (!(std::abs(det) > 1e-10 * hadamard)) throw Error("singular", "coefficient determinant vanishes");

    std::vector<Complex> x(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::MatrixXcd ai = a;
        for (Eigen::Index r = 0; r < n; ++r) ai(r, i) = b[static_cast<std::size_t>(r)];
        x[static_cast<std::size_t>(i)] = det_cofactor(ai) / det;
    }
    return x;
}

}  // namespace nlops::oracles
