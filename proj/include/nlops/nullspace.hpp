#pragma once

#include <algorithm>

#include <Eigen/Dense>

namespace nlops {

inline constexpr double kDefaultRankTol = 1e-9;

struct NullspaceResult {
    Eigen::MatrixXd basis;           // c x (c - rank), orthonormal columns
    Eigen::Index rank = 0;
    Eigen::VectorXd singular_values;  // descending
};

/// Null space of a real r x c matrix via SVD.  Singular values at or below
/// tol_rank * sigma_max (or tol_rank when A vanishes) count as zero.
inline NullspaceResult nullspace_real_full(const Eigen::MatrixXd& a, double tol_rank = kDefaultRankTol) {
    const Eigen::Index c = a.cols();
    NullspaceResult out;
    if (a.rows() == 0) {
        out.basis = Eigen::MatrixXd::Identity(c, c);
        return out;
    }
    // Thin V is not enough when r < c, the trailing columns span the kernel.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    out.singular_values = svd.singularValues();
    const double smax = out.singular_values.size() > 0 ? out.singular_values(0) : 0.0;
    const double cutoff = tol_rank * (smax > 0.0 ? smax : 1.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < out.singular_values.size(); ++i)
        if (out.singular_values(i) > cutoff) ++rank;
    out.rank = rank;
    out.basis = svd.matrixV().rightCols(c - rank);
    return out;
}

inline Eigen::MatrixXd nullspace_real(const Eigen::MatrixXd& a, double tol_rank = kDefaultRankTol) {
    return nullspace_real_full(a, tol_rank).basis;
}

}  // namespace nlops
