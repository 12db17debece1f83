#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "nlops/tensor.hpp"

namespace nlops::test {

using Rng = std::mt19937_64;

inline LocalVector random_local(Rng& rng, std::size_t d) {
    std::normal_distribution<double> g;
    std::vector<Complex> amps(d);
    for (auto& a : amps) a = {g(rng), g(rng)};
    return LocalVector(std::move(amps));
}

inline ProductState random_product(Rng& rng, const std::vector<std::size_t>& dims) {
    std::vector<LocalVector> locals;
    for (auto d : dims) locals.push_back(random_local(rng, d));
    return ProductState(std::move(locals));
}

inline std::vector<std::size_t> random_dims(Rng& rng, std::size_t n_min, std::size_t n_max, std::size_t d_min,
                                            std::size_t d_max) {
    std::uniform_int_distribution<std::size_t> nd(n_min, n_max), dd(d_min, d_max);
    std::vector<std::size_t> dims(nd(rng));
    for (auto& d : dims) d = dd(rng);
    return dims;
}

inline Eigen::MatrixXcd random_hermitian(Rng& rng, std::size_t d) {
    std::normal_distribution<double> g;
    const auto n = static_cast<Eigen::Index>(d);
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) m(r, c) = {g(rng), g(rng)};
    return (m + m.adjoint()) / 2.0;
}

/// Dense Kronecker-product inner product, independent of the factorized code
/// path: both states are expanded with explicit nested loops.
inline Complex dense_inner(const ProductState& a, const ProductState& b) {
    auto expand = [](const ProductState& s) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
        for (const auto& u : s.locals) {
            Eigen::VectorXcd next(v.size() * static_cast<Eigen::Index>(u.dim()));
            for (Eigen::Index i = 0; i < v.size(); ++i)
                for (std::size_t j = 0; j < u.dim(); ++j)
                    next(i * static_cast<Eigen::Index>(u.dim()) + static_cast<Eigen::Index>(j)) = v(i) * u[j];
            v = next;
        }
        return v;
    };
    return expand(a).dot(expand(b));
}

}  // namespace nlops::test
