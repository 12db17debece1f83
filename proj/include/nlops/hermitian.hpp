#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "nlops/error.hpp"
#include "nlops/tensor.hpp"

namespace nlops {

/// Real coordinates of a Hermitian d x d operator in the basis returned by
/// hermitian_basis(d).  coords has length d*d.
struct HermitianCoords {
    std::size_t dim = 0;
    Eigen::VectorXd coords;
};

/// Hilbert-Schmidt orthonormal basis of the d x d Hermitian matrices.
///
/// Ordering is fixed:
///   [0]               I / sqrt(d)
///   [1 .. d-1]        generalized diagonal elements,
///                     (sum_{j<l} |j><j| - l |l><l|) / sqrt(l (l+1)),  l = 1..d-1
///   next d(d-1)/2     symmetric  (|j><k| + |k><j|) / sqrt(2),   j < k, row-major
///   last d(d-1)/2     antisymmetric (-i|j><k| + i|k><j|) / sqrt(2), j < k, row-major
inline std::vector<Eigen::MatrixXcd> hermitian_basis(std::size_t d) {
    if (d < 1) throw Error("bad-dimension", "hermitian_basis needs d >= 1");
    const auto n = static_cast<Eigen::Index>(d);
    std::vector<Eigen::MatrixXcd> basis;
    basis.reserve(d * d);

    basis.push_back(Eigen::MatrixXcd::Identity(n, n) / std::sqrt(static_cast<double>(d)));

    for (Eigen::Index l = 1; l < n; ++l) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
        const double scale = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
        for (Eigen::Index j = 0; j < l; ++j) m(j, j) = scale;
        m(l, l) = -static_cast<double>(l) * scale;
        basis.push_back(std::move(m));
    }

    const double r = 1.0 / std::sqrt(2.0);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = j + 1; k < n; ++k) {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
            m(j, k) = r;
            m(k, j) = r;
            basis.push_back(std::move(m));
        }
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = j + 1; k < n; ++k) {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
            m(j, k) = Complex{0.0, -r};
            m(k, j) = Complex{0.0, r};
            basis.push_back(std::move(m));
        }
    return basis;
}

/// Hilbert-Schmidt inner product tr(A^dagger B).
inline Complex hs_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a.adjoint() * b).trace();
}

inline Eigen::MatrixXcd coords_to_matrix(const HermitianCoords& h) {
    const std::size_t d = h.dim;
    if (d < 1 || static_cast<std::size_t>(h.coords.size()) != d * d)
        throw Error("dim-mismatch", "coordinate vector length must be d*d");
    const auto basis = hermitian_basis(d);
    const auto n = static_cast<Eigen::Index>(d);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t a = 0; a < basis.size(); ++a) m += h.coords(static_cast<Eigen::Index>(a)) * basis[a];
    return m;
}

/// Inverse of coords_to_matrix.  Rejects inputs whose anti-Hermitian part
/// exceeds tol (relative to max(1, largest entry modulus)).
inline HermitianCoords matrix_to_coords(const Eigen::MatrixXcd& m, double tol = 1e-12) {
    if (m.rows() != m.cols() || m.rows() < 1) throw Error("dim-mismatch", "matrix must be square");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol * scale)
        throw Error("not-hermitian", "matrix differs from its adjoint");
    const auto d = static_cast<std::size_t>(m.rows());
    const auto basis = hermitian_basis(d);
    HermitianCoords h{d, Eigen::VectorXd(static_cast<Eigen::Index>(d * d))};
    for (std::size_t a = 0; a < basis.size(); ++a)
        h.coords(static_cast<Eigen::Index>(a)) = hs_inner(basis[a], m).real();
    return h;
}

inline HermitianCoords identity_coords(std::size_t d) {
    HermitianCoords h{d, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d * d))};
    h.coords(0) = std::sqrt(static_cast<double>(d));
    return h;
}

}  // namespace nlops
