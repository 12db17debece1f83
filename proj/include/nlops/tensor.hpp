#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nlops/error.hpp"

namespace nlops {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// One party's (unnormalized) local vector.  Always nonempty, finite and not
/// identically zero.
class LocalVector {
public:
    LocalVector(std::vector<Complex> amps) : amps_(std::move(amps)) { validate(); }
    LocalVector(std::initializer_list<Complex> amps) : amps_(amps) { validate(); }

    std::size_t dim() const noexcept { return amps_.size(); }
    std::span<const Complex> amps() const noexcept { return amps_; }
    Complex operator[](std::size_t j) const { return amps_[j]; }

    double norm_squared() const noexcept {
        double s = 0.0;
        for (const Complex& a : amps_) s += std::norm(a);
        return s;
    }
    double norm() const noexcept { return std::sqrt(norm_squared()); }

    LocalVector scaled(Complex factor) const {
        std::vector<Complex> out(amps_);
        for (Complex& a : out) a *= factor;
        return LocalVector(std::move(out));
    }

    friend bool operator==(const LocalVector&, const LocalVector&) = default;

private:
    void validate() const {
        if (amps_.empty()) throw Error("bad-dimension", "local vector must have dim >= 1");
        bool nonzero = false;
        for (const Complex& a : amps_) {
            if (!is_finite(a)) throw Error("non-finite", "local vector amplitude is NaN or Inf");
            nonzero = nonzero || std::abs(a) > 0.0;
        }
        if (!nonzero) throw Error("zero-vector", "local vector has no nonzero amplitude");
    }

    std::vector<Complex> amps_;
};

/// Tensor product of one local vector per party.
struct ProductState {
    std::vector<LocalVector> locals;

    ProductState() = default;
    ProductState(std::vector<LocalVector> l) : locals(std::move(l)) {
        if (locals.empty()) throw Error("dim-mismatch", "product state needs at least one party");
    }
    ProductState(std::initializer_list<LocalVector> l) : ProductState(std::vector<LocalVector>(l)) {}

    std::size_t parties() const noexcept { return locals.size(); }

    double norm() const noexcept {
        double p = 1.0;
        for (const auto& u : locals) p *= u.norm();
        return p;
    }

    friend bool operator==(const ProductState&, const ProductState&) = default;
};

/// An ordered list of product states on a fixed n-party system (n >= 2).
struct StateSet {
    std::vector<std::size_t> dims;
    std::vector<ProductState> states;
    std::string label;

    StateSet() = default;
    StateSet(std::vector<std::size_t> d, std::vector<ProductState> s, std::string l = {})
        : dims(std::move(d)), states(std::move(s)), label(std::move(l)) {
        validate();
    }

    std::size_t parties() const noexcept { return dims.size(); }
    std::size_t size() const noexcept { return states.size(); }

    std::size_t total_dim() const noexcept {
        std::size_t p = 1;
        for (auto d : dims) p *= d;
        return p;
    }

    void validate() const {
        if (dims.size() < 2) throw Error("too-few-parties", "a state set needs n >= 2 parties");
        for (auto d : dims)
            if (d < 1) throw Error("bad-dimension", "local dimensions must be positive");
        for (const auto& s : states) {
            if (s.parties() != dims.size())
                throw Error("dim-mismatch", "state party count differs from dims");
            for (std::size_t k = 0; k < dims.size(); ++k)
                if (s.locals[k].dim() != dims[k])
                    throw Error("dim-mismatch", "local dimension differs from dims");
        }
    }
};

/// <u|v>, conjugate-linear in the first argument.
inline Complex inner(const LocalVector& u, const LocalVector& v) {
    if (u.dim() != v.dim()) throw Error("dim-mismatch", "inner product of vectors of different dims");
    Complex s{0.0, 0.0};
    for (std::size_t j = 0; j < u.dim(); ++j) s += std::conj(u[j]) * v[j];
    return s;
}

namespace detail {
inline void check_same_shape(const ProductState& a, const ProductState& b) {
    if (a.parties() != b.parties()) throw Error("dim-mismatch", "party counts differ");
    for (std::size_t k = 0; k < a.parties(); ++k)
        if (a.locals[k].dim() != b.locals[k].dim()) throw Error("dim-mismatch", "local dims differ");
}
}  // namespace detail

inline Complex product_inner(const ProductState& a, const ProductState& b) {
    detail::check_same_shape(a, b);
    Complex p{1.0, 0.0};
    for (std::size_t k = 0; k < a.parties(); ++k) p *= inner(a.locals[k], b.locals[k]);
    return p;
}

/// Product of the per-party inner products over every party except `party`.
/// With a single party the product is empty and equals 1.
inline Complex partial_inner_excluding(const ProductState& a, const ProductState& b, std::size_t party) {
    detail::check_same_shape(a, b);
    if (party >= a.parties()) throw Error("bad-party", "party index out of range");
    Complex p{1.0, 0.0};
    for (std::size_t k = 0; k < a.parties(); ++k)
        if (k != party) p *= inner(a.locals[k], b.locals[k]);
    return p;
}

/// Norm product over every party except `party`.
inline double norm_excluding(const ProductState& a, std::size_t party) {
    double p = 1.0;
    for (std::size_t k = 0; k < a.parties(); ++k)
        if (k != party) p *= a.locals[k].norm();
    return p;
}

/// Expands a product state into its full amplitude vector.  Party 0 is the
/// most significant index.
inline std::vector<Complex> dense_vector(const ProductState& s) {
    std::vector<Complex> out{Complex{1.0, 0.0}};
    for (const auto& u : s.locals) {
        std::vector<Complex> next;
        next.reserve(out.size() * u.dim());
        for (const Complex& x : out)
            for (const Complex& y : u.amps()) next.push_back(x * y);
        out = std::move(next);
    }
    return out;
}

/// Cyclic relabeling: party k of every state moves to position (k + shift) mod n.
inline StateSet rotate_parties(const StateSet& set, std::size_t shift) {
    const std::size_t n = set.parties();
    std::vector<std::size_t> dims(n);
    for (std::size_t k = 0; k < n; ++k) dims[(k + shift) % n] = set.dims[k];
    std::vector<ProductState> states;
    states.reserve(set.size());
    for (const auto& s : set.states) {
        std::vector<LocalVector> locals(s.locals);
        for (std::size_t k = 0; k < n; ++k) locals[(k + shift) % n] = s.locals[k];
        states.emplace_back(std::move(locals));
    }
    return StateSet(std::move(dims), std::move(states), set.label);
}

}  // namespace nlops
