#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nlops/error.hpp"
#include "nlops/tensor.hpp"

namespace nlops {

enum class Theorem { T1 = 1, T2 = 2, T3 = 3, T4 = 4 };

/// sum_j e^{2 pi i t j / d} |j>.  The exponent t*j is reduced mod d before
/// evaluation so every amplitude is an exact d-th root of unity up to rounding.
inline LocalVector phase_vector(std::size_t d, long long t) {
    if (d < 1) throw Error("bad-dimension", "phase_vector needs d >= 1");
    const auto dd = static_cast<long long>(d);
    const long long tm = ((t % dd) + dd) % dd;
    std::vector<Complex> amps(d);
    for (long long j = 0; j < dd; ++j) {
        const long long e = (tm * j) % dd;
        amps[static_cast<std::size_t>(j)] =
            std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(dd));
    }
    return LocalVector(std::move(amps));
}

inline LocalVector basis_vector(std::size_t d, std::size_t j) {
    if (j >= d) throw Error("bad-index", "basis index out of range");
    std::vector<Complex> amps(d, Complex{0.0, 0.0});
    amps[j] = 1.0;
    return LocalVector(std::move(amps));
}

namespace detail {

inline void check_family_dims(const std::vector<std::size_t>& dims) {
    if (dims.size() < 3) throw Error("need-three-parties", "constructions require n >= 3 parties");
    for (auto d : dims)
        if (d < 2) throw Error("bad-dimension", "every local dimension must be >= 2");
}

inline std::string family_label(int theorem, const std::vector<std::size_t>& dims, std::size_t count) {
    std::ostringstream os;
    os << "theorem" << theorem << " dims=";
    for (std::size_t k = 0; k < dims.size(); ++k) os << (k ? "," : "") << dims[k];
    // State indices run 1..count in emitted order.
    os << " states=" << count << " phi-index=position+1";
    return os.str();
}

// Family i (0-based) puts the phase vector on party i and a basis-vector
// marker on its cyclic successor (i+1) mod n; every other party holds |0>.
// The wrap family i = n-1 therefore marks party 0.
inline std::vector<ProductState> cyclic_blocks(const std::vector<std::size_t>& dims, long long t_begin) {
    const std::size_t n = dims.size();
    std::vector<ProductState> out;

    auto make = [&](std::size_t phase_party, LocalVector phase, std::size_t marker_index) {
        const std::size_t succ = (phase_party + 1) % n;
        std::vector<LocalVector> locals;
        locals.reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            if (k == phase_party)
                locals.push_back(phase);
            else if (k == succ)
                locals.push_back(basis_vector(dims[k], marker_index));
            else
                locals.push_back(basis_vector(dims[k], 0));
        }
        return ProductState(std::move(locals));
    };

    // Block A: phase vectors with t = t_begin..d_i-1, marker |d_succ - 1>.
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t succ = (i + 1) % n;
        for (auto t = t_begin; t < static_cast<long long>(dims[i]); ++t)
            out.push_back(make(i, phase_vector(dims[i], t), dims[succ] - 1));
    }
    // Block B: phase vector with t = 1, marker |q>, q = 1..d_succ-2.
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t succ = (i + 1) % n;
        for (std::size_t q = 1; q + 1 < dims[succ]; ++q) out.push_back(make(i, phase_vector(dims[i], 1), q));
    }
    return out;
}

}  // namespace detail

/// Sum_j 2(d_j - 1) orthogonal product states on C^{d_1} x ... x C^{d_n}.
inline StateSet theorem3_set(const std::vector<std::size_t>& dims) {
    detail::check_family_dims(dims);
    auto states = detail::cyclic_blocks(dims, 0);
    const auto count = states.size();
    return StateSet(dims, std::move(states), detail::family_label(3, dims, count));
}

/// Sum_j (2 d_j - 3) + 1 states: block A without t = 0, plus the all-ones
/// stopper state appended last.
inline StateSet theorem4_set(const std::vector<std::size_t>& dims) {
    detail::check_family_dims(dims);
    auto states = detail::cyclic_blocks(dims, 1);
    std::vector<LocalVector> stopper;
    for (auto d : dims) stopper.push_back(phase_vector(d, 0));
    states.emplace_back(std::move(stopper));
    const auto count = states.size();
    return StateSet(dims, std::move(states), detail::family_label(4, dims, count));
}

inline StateSet theorem1_set(std::size_t n, std::size_t d) {
    std::vector<std::size_t> dims(n, d);
    detail::check_family_dims(dims);
    auto states = detail::cyclic_blocks(dims, 0);
    const auto count = states.size();
    return StateSet(dims, std::move(states), detail::family_label(1, dims, count));
}

inline StateSet theorem2_set(std::size_t n, std::size_t d) {
    std::vector<std::size_t> dims(n, d);
    auto set = theorem4_set(dims);
    set.label = detail::family_label(2, dims, set.size());
    return set;
}

inline StateSet generate_family(Theorem theorem, const std::vector<std::size_t>& dims) {
    switch (theorem) {
        case Theorem::T1:
        case Theorem::T2: {
            if (dims.empty()) throw Error("need-three-parties", "no dimensions given");
            for (auto d : dims)
                if (d != dims.front()) throw Error("bad-dimension", "theorems 1 and 2 need equal local dimensions");
            return theorem == Theorem::T1 ? theorem1_set(dims.size(), dims.front())
                                          : theorem2_set(dims.size(), dims.front());
        }
        case Theorem::T3: return theorem3_set(dims);
        case Theorem::T4: return theorem4_set(dims);
    }
    throw Error("bad-theorem", "theorem must be 1, 2, 3 or 4");
}

/// Every |i_1 ... i_n> in lexicographic order, party 0 most significant.
inline StateSet product_basis(const std::vector<std::size_t>& dims) {
    std::vector<ProductState> states;
    std::vector<std::size_t> idx(dims.size(), 0);
    while (true) {
        std::vector<LocalVector> locals;
        for (std::size_t k = 0; k < dims.size(); ++k) locals.push_back(basis_vector(dims[k], idx[k]));
        states.emplace_back(std::move(locals));
        std::size_t k = dims.size();
        while (k > 0) {
            --k;
            if (++idx[k] < dims[k]) break;
            idx[k] = 0;
            if (k == 0) return StateSet(dims, std::move(states), "product basis");
        }
    }
}

/// Expected cardinalities.
inline std::size_t theorem3_count(const std::vector<std::size_t>& dims) {
    std::size_t s = 0;
    for (auto d : dims) s += 2 * (d - 1);
    return s;
}
inline std::size_t theorem4_count(const std::vector<std::size_t>& dims) {
    std::size_t s = 1;
    for (auto d : dims) s += 2 * d - 3;
    return s;
}

/// True iff the two sets have the same dims and there is a bijection pairing
/// each state with a nonzero complex multiple of itself.  States a and b
/// count as proportional when | |<a|b>|^2 / (<a|a><b|b>) - 1 | <= tol.
inline bool canonical_compare(const StateSet& a, const StateSet& b, double tol = 1e-9) {
    if (a.dims != b.dims || a.size() != b.size()) return false;
    const std::size_t m = a.size();
    std::vector<std::vector<char>> adj(m, std::vector<char>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const double overlap = std::norm(product_inner(a.states[i], b.states[j]));
            const double na = product_inner(a.states[i], a.states[i]).real();
            const double nb = product_inner(b.states[j], b.states[j]).real();
            adj[i][j] = std::abs(overlap / (na * nb) - 1.0) <= tol;
        }

    // Bipartite matching by augmenting paths.
    std::vector<std::ptrdiff_t> match_b(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<char> seen(m, 0);
        auto augment = [&](auto&& self, std::size_t u) -> bool {
            for (std::size_t v = 0; v < m; ++v) {
                if (!adj[u][v] || seen[v]) continue;
                seen[v] = 1;
                if (match_b[v] < 0 || self(self, static_cast<std::size_t>(match_b[v]))) {
                    match_b[v] = static_cast<std::ptrdiff_t>(u);
                    return true;
                }
            }
            return false;
        };
        if (!augment(augment, i)) return false;
    }
    return true;
}

}  // namespace nlops
