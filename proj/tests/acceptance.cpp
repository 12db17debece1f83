// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nlops/certifier.hpp"
#include "nlops/cli.hpp"
#include "nlops/constructions.hpp"
#include "nlops/io.hpp"
#include "nlops/nullspace.hpp"
#include "nlops/oracles.hpp"

using namespace nlops;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && pass) detail = what;
        pass = pass && cond;
    }
};

struct Family {
    StateSet set;
    std::size_t expected;
};

std::vector<Family> homogeneous_families() {
    std::vector<Family> out;
    for (std::size_t n = 3; n <= 6; ++n)
        for (std::size_t d = 2; d <= 6; ++d) {
            out.push_back({theorem1_set(n, d), 2 * n * (d - 1)});
            out.push_back({theorem2_set(n, d), n * (2 * d - 3) + 1});
        }
    return out;
}

std::vector<std::vector<std::size_t>> random_dim_tuples() {
    std::mt19937_64 rng(20240531);
    std::uniform_int_distribution<std::size_t> n_dist(3, 5), d_dist(2, 5);
    std::vector<std::vector<std::size_t>> out;
    for (int i = 0; i < 20; ++i) {
        std::vector<std::size_t> dims(n_dist(rng));
        for (auto& d : dims) d = d_dist(rng);
        out.push_back(dims);
    }
    return out;
}

std::vector<Family> heterogeneous_families() {
    std::vector<Family> out;
    for (const auto& dims : random_dim_tuples()) {
        std::size_t s3 = 0, s4 = 1;
        for (auto d : dims) {
            s3 += 2 * (d - 1);
            s4 += 2 * d - 3;
        }
        out.push_back({theorem3_set(dims), s3});
        out.push_back({theorem4_set(dims), s4});
    }
    return out;
}

std::vector<StateSet> all_sets() {
    std::vector<StateSet> out;
    for (auto& f : homogeneous_families()) out.push_back(f.set);
    for (auto& f : heterogeneous_families()) out.push_back(f.set);
    return out;
}

std::vector<StateSet> certifiable_sets() {
    std::vector<StateSet> out;
    for (auto& s : all_sets())
        if (s.total_dim() <= kBruteForceMaxDim) out.push_back(s);
    return out;
}

Outcome cardinality(const std::vector<Family>& fams) {
    Outcome o;
    for (const auto& f : fams)
        o.require(f.set.size() == f.expected, f.set.label + ": got " + std::to_string(f.set.size()) + ", want " +
                                                  std::to_string(f.expected));
    o.detail = o.pass ? std::to_string(fams.size()) + " sets" : o.detail;
    return o;
}

Outcome c1() { return cardinality(homogeneous_families()); }
Outcome c2() { return cardinality(heterogeneous_families()); }

Outcome c3() {
    Outcome o;
    double worst = 0.0;
    const auto sets = all_sets();
    for (const auto& s : sets) {
        const auto r = check_pairwise_orthogonality(s, 1e-10);
        worst = std::max(worst, r.max_residual);
        o.require(r.pass, s.label + " not orthogonal");
    }
    std::ostringstream d;
    d << sets.size() << " sets, max relative residual " << worst;
    if (o.pass) o.detail = d.str();
    return o;
}

Outcome c4() {
    Outcome o;
    const auto sets = certifiable_sets();
    for (const auto& s : sets) {
        const auto cert = certify_nonlocal(s);
        o.require(cert.verdict() == Verdict::CertifiedNonlocal, s.label + " not certified");
        for (const auto& p : cert.parties) {
            o.require(p.solution_dim == 1, s.label + " party " + std::to_string(p.party + 1) + " solution_dim " +
                                               std::to_string(p.solution_dim));
            o.require(p.trivial, s.label + " party " + std::to_string(p.party + 1) + " not identity");
        }
    }
    if (o.pass) o.detail = std::to_string(sets.size()) + " sets certified";
    return o;
}

Outcome c5() {
    Outcome o;
    for (const auto& dims : {std::vector<std::size_t>{2, 2}, std::vector<std::size_t>{2, 2, 2}}) {
        const auto set = product_basis(dims);
        const auto cert = certify_nonlocal(set);
        o.require(cert.verdict() == Verdict::NotCertified, "product basis certified");
        for (const auto& p : cert.parties) {
            o.require(p.solution_dim == 2, "solution_dim " + std::to_string(p.solution_dim));
            o.require(p.witness.has_value(), "missing witness");
            const auto cmp = compare_with_brute_force(set, p.party);
            o.require(cmp.brute_force_dim == 2 && cmp.agree(1e-8), "brute-force oracle disagrees");
            if (p.witness) {
                const auto m = coords_to_matrix(*p.witness);
                o.require(m.isDiagonal(1e-12), "witness not diagonal");
            }
        }
    }
    return o;
}

Outcome c6() {
    Outcome o;
    double worst = 0.0;
    std::size_t checks = 0;
    for (const auto& s : certifiable_sets())
        for (std::size_t k = 0; k < s.parties(); ++k) {
            const auto cmp = compare_with_brute_force(s, k);
            ++checks;
            worst = std::max(worst, cmp.max_cross_residual);
            o.require(cmp.agree(1e-8), s.label + " party " + std::to_string(k + 1) + " dims " +
                                           std::to_string(cmp.factorized_dim) + " vs " +
                                           std::to_string(cmp.brute_force_dim));
        }
    std::ostringstream d;
    d << checks << " (set, party) pairs, max cross residual " << worst;
    if (o.pass) o.detail = d.str();
    return o;
}

// Solves A x = b via the real null space of [A_r | -b_r] (rank-revealing path).
std::vector<Complex> solve_via_nullspace(const Eigen::MatrixXcd& a, const std::vector<Complex>& b, bool& ok) {
    const Eigen::Index n = a.rows();
    Eigen::MatrixXd m(2 * n, 2 * n + 1);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            m(r, c) = a(r, c).real();
            m(r, n + c) = -a(r, c).imag();
            m(n + r, c) = a(r, c).imag();
            m(n + r, n + c) = a(r, c).real();
        }
        m(r, 2 * n) = -b[static_cast<std::size_t>(r)].real();
        m(n + r, 2 * n) = -b[static_cast<std::size_t>(r)].imag();
    }
    const auto ns = nullspace_real(m);
    ok = ns.cols() == 1 && std::abs(ns(2 * n, 0)) > 1e-12;
    std::vector<Complex> x(static_cast<std::size_t>(n));
    if (!ok) return x;
    const Eigen::VectorXd v = ns.col(0) / ns(2 * n, 0);
    for (Eigen::Index i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = {v(i), v(n + i)};
    return x;
}

Outcome c7() {
    Outcome o;
    for (std::size_t d = 2; d <= 16; ++d) {
        const auto r = oracles::roots_of_unity(d);
        for (std::size_t a = 0; a < d; ++a) {
            o.require(std::abs(std::pow(r[a], static_cast<double>(d)) - 1.0) <= 1e-12,
                      "(w^t)^d != 1 for d=" + std::to_string(d));
            for (std::size_t b = a + 1; b < d; ++b)
                o.require(std::abs(r[a] - r[b]) > 0.0, "repeated root for d=" + std::to_string(d));
        }
    }
    for (std::size_t d = 2; d <= 8; ++d) {
        for (double v : oracles::proof_determinants_nonzero(d))
            o.require(v > 1e-8, "|D_j| too small for d=" + std::to_string(d));
        const double expect = std::pow(static_cast<double>(d), static_cast<double>(d) / 2.0);
        const double got = std::abs(oracles::vandermonde_det(oracles::roots_of_unity(d)));
        o.require(std::abs(got - expect) <= 1e-9 * expect, "|V(roots)| != d^(d/2) for d=" + std::to_string(d));
    }
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index n = 1 + trial % 4;
        Eigen::MatrixXcd a(n, n);
        for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = {g(rng), g(rng)};
        a += Eigen::MatrixXcd::Identity(n, n) * static_cast<double>(n);
        std::vector<Complex> b(static_cast<std::size_t>(n));
        for (auto& v : b) v = {g(rng), g(rng)};
        const auto xc = oracles::cramer_solve(a, b);
        bool ok = false;
        const auto xs = solve_via_nullspace(a, b, ok);
        o.require(ok, "general solver failed");
        for (std::size_t i = 0; i < xc.size(); ++i)
            o.require(std::abs(xc[i] - xs[i]) <= 1e-9, "Cramer vs general solver mismatch");
    }
    return o;
}

bool same_reports(const PartyReport& a, const PartyReport& b, bool compare_witness) {
    bool same = a.active_pairs == b.active_pairs && a.solution_dim == b.solution_dim && a.trivial == b.trivial &&
                a.witness.has_value() == b.witness.has_value();
    if (same && compare_witness && a.witness) same = (a.witness->coords - b.witness->coords).norm() <= 1e-9;
    return same;
}

Outcome c8() {
    Outcome o;
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    const std::vector<StateSet> sets = {theorem1_set(3, 3), theorem2_set(4, 3), theorem3_set({2, 3, 4}),
                                        theorem4_set({3, 2, 2, 4}), product_basis({2, 3}), product_basis({2, 2, 2})};
    for (const auto& set : sets) {
        const auto base = certify_nonlocal(set);

        StateSet scaled = set;
        for (auto& s : scaled.states) {
            Complex c{g(rng), g(rng)};
            if (std::abs(c) < 0.1) c += 1.0;
            s.locals[0] = s.locals[0].scaled(c);
        }
        const auto sc = certify_nonlocal(scaled);
        o.require(sc.verdict() == base.verdict(), set.label + ": verdict changed under rescaling");
        for (std::size_t k = 0; k < set.parties(); ++k)
            o.require(same_reports(base.parties[k], sc.parties[k], true), set.label + ": report changed under rescaling");

        const std::size_t n = set.parties();
        for (std::size_t shift = 1; shift < n; ++shift) {
            const auto rot = certify_nonlocal(rotate_parties(set, shift));
            for (std::size_t k = 0; k < n; ++k)
                o.require(same_reports(base.parties[k], rot.parties[(k + shift) % n], false),
                          set.label + ": not equivariant under cyclic relabeling");
        }
    }
    for (std::size_t n = 3; n <= 6; ++n)
        for (std::size_t d = 2; d <= 6; ++d) {
            const std::vector<std::size_t> dims(n, d);
            o.require(canonical_compare(theorem1_set(n, d), theorem3_set(dims)), "theorem1 != theorem3");
            o.require(canonical_compare(theorem2_set(n, d), theorem4_set(dims)), "theorem2 != theorem4");
        }
    return o;
}

Outcome c9() {
    namespace fs = std::filesystem;
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / "nlops_acceptance";
    fs::create_directories(dir);
    auto run = [](std::vector<std::string> args) {
        std::ostringstream out, err;
        return cli::run(args, out, err);
    };
    const std::string t2 = (dir / "t2.json").string();
    o.require(run({"generate", "--theorem", "2", "--n", "3", "--d", "2", "--out", t2}) == 0, "generate failed");
    o.require(run({"certify", t2}) == 0, "theorem 2 (n=3, d=2) did not exit 0");

    const std::string pb = (dir / "pb.json").string();
    io::write_file(pb, io::serialize_state_set(product_basis({2, 2})));
    o.require(run({"certify", pb}) == 1, "product basis did not exit 1");

    const std::string bad = (dir / "bad.json").string();
    io::write_file(bad, "{\"format_version\": \"nlops-1\", \"dims\": [2, 2], \"states\": [[[1, 0]]]}");
    o.require(run({"certify", bad}) == 2, "malformed file did not exit 2");

    const std::string text = io::read_file(t2);
    o.require(io::serialize_state_set(io::load_state_set(t2)) == text, "round trip not byte-identical");
    fs::remove_all(dir);
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double budget_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"1 cardinality (theorems 1, 2; 3<=n<=6, 2<=d<=6)", 1.0, c1},
        {"2 cardinality (theorems 3, 4; 20 random tuples)", 1.0, c2},
        {"3 pairwise orthogonality <= 1e-10", 5.0, c3},
        {"4 nonlocality certificates (prod d_j <= 4096)", 30.0, c4},
        {"5 negative control: product bases not certified", 1.0, c5},
        {"6 factorized vs brute-force null spaces", 60.0, c6},
        {"7 roots of unity, Vandermonde, Cramer", 5.0, c7},
        {"8 rescaling / relabeling invariance, homogeneous reduction", 10.0, c8},
        {"9 CLI contract", 1.0, c9},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.budget_seconds;
        const bool pass = o.pass && in_time;
        failures += pass ? 0 : 1;
        std::cout << (pass ? "PASS  " : "FAIL  ") << "criterion " << c.name << "  [" << secs << " s / "
                  << c.budget_seconds << " s]";
        if (!in_time) std::cout << "  over time budget";
        if (!o.detail.empty()) std::cout << "  " << o.detail;
        std::cout << std::endl;
    }
    std::cout << (failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED") << " (" << criteria.size() - failures << "/"
              << criteria.size() << ")" << std::endl;
    return failures ? 1 : 0;
}
