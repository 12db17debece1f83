#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "nlops/error.hpp"
#include "nlops/hermitian.hpp"
#include "nlops/nullspace.hpp"
#include "nlops/tensor.hpp"

namespace nlops {

struct Tolerances {
    double rank = kDefaultRankTol;
    double active = 1e-10;
    double orth = 1e-10;
};

/// Relative tolerance for deciding that a one-dimensional solution space is
/// spanned by the identity.
inline constexpr double kIdentityProportionalityTol = 1e-9;

/// Cap on prod_j d_j for the dense brute-force oracle.
inline constexpr std::size_t kBruteForceMaxDim = 4096;

// ---------------------------------------------------------------------------
// Orthogonality

struct PairResidual {
    std::size_t a = 0;
    std::size_t b = 0;
    double residual = 0.0;
    bool pass = true;
};

struct OrthogonalityReport {
    double max_residual = 0.0;
    bool pass = true;
    std::vector<PairResidual> pairs;  // every unordered pair, a < b
};

/// Residual of (a, b) is |<a|b>| / (|a| |b|).
inline OrthogonalityReport check_pairwise_orthogonality(const StateSet& set, double tol) {
    OrthogonalityReport rep;
    for (std::size_t a = 0; a < set.size(); ++a)
        for (std::size_t b = a + 1; b < set.size(); ++b) {
            const auto& sa = set.states[a];
            const auto& sb = set.states[b];
            const double r = std::abs(product_inner(sa, sb)) / (sa.norm() * sb.norm());
            const bool ok = r <= tol;
            rep.pairs.push_back({a, b, r, ok});
            rep.max_residual = std::max(rep.max_residual, r);
            rep.pass = rep.pass && ok;
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Factorized constraint assembly

/// Real linear constraints on the Hermitian coordinates of a party-k operator
/// E.  Every active pair contributes the real and imaginary part of
/// <u_a|E|u_b> / (|u_a| |u_b|) as two consecutive rows.
struct ConstraintSystem {
    Eigen::MatrixXd matrix;
    std::vector<std::pair<std::size_t, std::size_t>> active_pairs;
};

namespace detail {

inline Eigen::VectorXcd to_eigen(const LocalVector& u) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(u.dim()));
    for (std::size_t j = 0; j < u.dim(); ++j) v(static_cast<Eigen::Index>(j)) = u[j];
    return v;
}

}  // namespace detail

inline ConstraintSystem assemble_constraints(const StateSet& set, std::size_t k, double tol_active) {
    if (k >= set.parties()) throw Error("bad-party", "party index out of range");
    const std::size_t d = set.dims[k];
    const auto basis = hermitian_basis(d);
    const auto cols = static_cast<Eigen::Index>(basis.size());

    ConstraintSystem sys;
    for (std::size_t a = 0; a < set.size(); ++a)
        for (std::size_t b = a + 1; b < set.size(); ++b) {
            const auto& sa = set.states[a];
            const auto& sb = set.states[b];
            const Complex c = partial_inner_excluding(sa, sb, k);
            if (std::abs(c) > tol_active * norm_excluding(sa, k) * norm_excluding(sb, k))
                sys.active_pairs.emplace_back(a, b);
        }

    sys.matrix.resize(static_cast<Eigen::Index>(2 * sys.active_pairs.size()), cols);
    Eigen::Index row = 0;
    for (const auto& [a, b] : sys.active_pairs) {
        const auto& ua = set.states[a].locals[k];
        const auto& ub = set.states[b].locals[k];
        const Eigen::VectorXcd va = detail::to_eigen(ua);
        const Eigen::VectorXcd vb = detail::to_eigen(ub);
        const double scale = 1.0 / (ua.norm() * ub.norm());
        for (Eigen::Index m = 0; m < cols; ++m) {
            const Complex z = va.dot(basis[static_cast<std::size_t>(m)] * vb) * scale;
            sys.matrix(row, m) = z.real();
            sys.matrix(row + 1, m) = z.imag();
        }
        row += 2;
    }
    return sys;
}

/// Orthonormal basis (in Hermitian coordinates) of every party-k operator
/// that keeps all post-measurement states orthogonal.
inline std::vector<HermitianCoords> solution_space(const StateSet& set, std::size_t k, double tol_rank = kDefaultRankTol,
                                                   double tol_active = 1e-10) {
    const auto sys = assemble_constraints(set, k, tol_active);
    const Eigen::MatrixXd ns = nullspace_real(sys.matrix, tol_rank);
    std::vector<HermitianCoords> out;
    for (Eigen::Index j = 0; j < ns.cols(); ++j) out.push_back({set.dims[k], ns.col(j)});
    return out;
}

// ---------------------------------------------------------------------------
// Dense brute-force oracle

/// Same constraints as assemble_constraints, derived without the product
/// factorization: every state is expanded to a full vector in C^{prod d_j} and
/// each basis element B acts as the explicit sparse operator I (x) B (x) I.
/// All unordered pairs contribute rows, active or not.
inline Eigen::MatrixXd brute_force_constraints(const StateSet& set, std::size_t k) {
    if (k >= set.parties()) throw Error("bad-party", "party index out of range");
    const std::size_t total = set.total_dim();
    if (total > kBruteForceMaxDim) throw Error("too-large", "brute-force oracle limited to prod d_j <= 4096");

    std::size_t before = 1, after = 1;
    for (std::size_t j = 0; j < k; ++j) before *= set.dims[j];
    for (std::size_t j = k + 1; j < set.parties(); ++j) after *= set.dims[j];
    const std::size_t d = set.dims[k];

    const auto n_states = static_cast<Eigen::Index>(set.size());
    const auto D = static_cast<Eigen::Index>(total);
    Eigen::MatrixXcd phi(D, n_states);
    Eigen::VectorXd inv_norm(n_states);
    for (Eigen::Index s = 0; s < n_states; ++s) {
        const auto full = dense_vector(set.states[static_cast<std::size_t>(s)]);
        for (Eigen::Index x = 0; x < D; ++x) phi(x, s) = full[static_cast<std::size_t>(x)];
        inv_norm(s) = 1.0 / phi.col(s).norm();
    }

    const auto basis = hermitian_basis(d);
    const auto cols = static_cast<Eigen::Index>(basis.size());
    const std::size_t m_states = set.size();
    const auto n_pairs = static_cast<Eigen::Index>(m_states < 2 ? 0 : m_states * (m_states - 1) / 2);
    Eigen::MatrixXd rows(2 * n_pairs, cols);

    for (Eigen::Index m = 0; m < cols; ++m) {
        const auto& bm = basis[static_cast<std::size_t>(m)];
        std::vector<Eigen::Triplet<Complex>> trips;
        trips.reserve(before * d * d * after);
        for (std::size_t l = 0; l < before; ++l)
            for (std::size_t x = 0; x < d; ++x)
                for (std::size_t y = 0; y < d; ++y) {
                    const Complex v = bm(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
                    if (v == Complex{0.0, 0.0}) continue;
                    for (std::size_t r = 0; r < after; ++r)
                        trips.emplace_back(static_cast<int>((l * d + x) * after + r),
                                           static_cast<int>((l * d + y) * after + r), v);
                }
        Eigen::SparseMatrix<Complex> op(D, D);
        op.setFromTriplets(trips.begin(), trips.end());

        const Eigen::MatrixXcd applied = op * phi;
        const Eigen::MatrixXcd gram = phi.adjoint() * applied;
        Eigen::Index row = 0;
        for (Eigen::Index a = 0; a < n_states; ++a)
            for (Eigen::Index b = a + 1; b < n_states; ++b) {
                const Complex z = gram(a, b) * inv_norm(a) * inv_norm(b);
                rows(row, m) = z.real();
                rows(row + 1, m) = z.imag();
                row += 2;
            }
    }
    return rows;
}

struct OracleComparison {
    Eigen::Index factorized_dim = 0;
    Eigen::Index brute_force_dim = 0;
    double max_cross_residual = 0.0;  // max |A_other x| over basis vectors x of each null space
    bool agree(double tol) const { return factorized_dim == brute_force_dim && max_cross_residual <= tol; }
};

inline OracleComparison compare_with_brute_force(const StateSet& set, std::size_t k, const Tolerances& tol = {}) {
    const auto fact = assemble_constraints(set, k, tol.active).matrix;
    const auto brute = brute_force_constraints(set, k);
    const Eigen::MatrixXd nf = nullspace_real(fact, tol.rank);
    const Eigen::MatrixXd nb = nullspace_real(brute, tol.rank);
    OracleComparison out{nf.cols(), nb.cols(), 0.0};
    auto residual = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& ns) {
        double r = 0.0;
        if (a.rows() == 0) return r;
        for (Eigen::Index j = 0; j < ns.cols(); ++j) r = std::max(r, (a * ns.col(j)).norm());
        return r;
    };
    out.max_cross_residual = std::max(residual(brute, nf), residual(fact, nb));
    return out;
}

// ---------------------------------------------------------------------------
// Certificates

struct PartyReport {
    std::size_t party = 0;
    std::size_t active_pairs = 0;
    std::size_t solution_dim = 0;
    bool trivial = false;
    std::optional<HermitianCoords> witness;
};

enum class Verdict { CertifiedNonlocal, NotCertified, NotOrthogonal };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::CertifiedNonlocal: return "CERTIFIED_NONLOCAL";
        case Verdict::NotCertified: return "NOT_CERTIFIED";
        case Verdict::NotOrthogonal: return "NOT_ORTHOGONAL";
    }
    return "?";
}

/// Records whether every single-party orthogonality-preserving POVM element
/// is forced to be proportional to the identity.  That is a sufficient
/// condition for local indistinguishability; failing it is inconclusive.
struct Certificate {
    std::vector<std::size_t> dims;
    std::string label;
    Tolerances tolerances;
    OrthogonalityReport orthogonality;
    std::vector<PartyReport> parties;
    bool certified_nonlocal = false;

    Verdict verdict() const {
        if (!orthogonality.pass) return Verdict::NotOrthogonal;
        return certified_nonlocal ? Verdict::CertifiedNonlocal : Verdict::NotCertified;
    }
};

namespace detail {

inline bool proportional_to_identity(const Eigen::VectorXd& v) {
    const double sq = v.squaredNorm();
    return sq > 0.0 && v(0) * v(0) >= (1.0 - kIdentityProportionalityTol) * sq;
}

// Projects the solution space onto the HS complement of the identity (in these
// coordinates, coords[0] = 0) and returns the normalized projection of the
// basis element that projection captures best.  Depends only on the subspace,
// not on the SVD basis that represents it.
inline std::optional<Eigen::VectorXd> witness_direction(const Eigen::MatrixXd& ns) {
    if (ns.cols() == 0) return std::nullopt;
    Eigen::MatrixXd projected = ns;
    projected.row(0).setZero();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(projected, Eigen::ComputeThinU);
    Eigen::Index r = 0;
    while (r < svd.singularValues().size() && svd.singularValues()(r) > 1e-8) ++r;
    if (r == 0) return std::nullopt;
    const Eigen::MatrixXd span = svd.matrixU().leftCols(r);

    const Eigen::VectorXd captured = span.rowwise().squaredNorm();
    const double best = captured.maxCoeff();
    Eigen::Index axis = 0;
    while (captured(axis) < best - 1e-9) ++axis;
    Eigen::VectorXd w = span * span.row(axis).transpose();
    return w / w.norm();
}

}  // namespace detail

inline PartyReport certify_party(const StateSet& set, std::size_t k, const Tolerances& tol) {
    const auto sys = assemble_constraints(set, k, tol.active);
    const Eigen::MatrixXd ns = nullspace_real(sys.matrix, tol.rank);
    PartyReport rep;
    rep.party = k;
    rep.active_pairs = sys.active_pairs.size();
    rep.solution_dim = static_cast<std::size_t>(ns.cols());
    rep.trivial = ns.cols() == 1 && detail::proportional_to_identity(ns.col(0));
    if (!rep.trivial)
        if (auto w = detail::witness_direction(ns)) rep.witness = HermitianCoords{set.dims[k], *w};
    return rep;
}

/// Orthogonality check plus one solution-space computation per party.  Parties
/// run concurrently; reports are ordered by party index.
inline Certificate certify_nonlocal(const StateSet& set, const Tolerances& tol = {}) {
    set.validate();
    Certificate cert;
    cert.dims = set.dims;
    cert.label = set.label;
    cert.tolerances = tol;
    cert.orthogonality = check_pairwise_orthogonality(set, tol.orth);

    std::vector<std::future<PartyReport>> jobs;
    for (std::size_t k = 0; k < set.parties(); ++k)
        jobs.push_back(std::async(std::launch::async, [&set, k, &tol] { return certify_party(set, k, tol); }));
    for (auto& j : jobs) cert.parties.push_back(j.get());

    cert.certified_nonlocal = cert.orthogonality.pass &&
                              std::all_of(cert.parties.begin(), cert.parties.end(),
                                          [](const PartyReport& p) { return p.trivial; });
    return cert;
}

}  // namespace nlops
