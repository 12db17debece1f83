#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "nlops/certifier.hpp"
#include "nlops/constructions.hpp"
#include "nlops/error.hpp"
#include "nlops/io.hpp"
#include "nlops/oracles.hpp"

namespace nlops::cli {

enum ExitCode : int { kCertified = 0, kNotCertified = 1, kInvalidInput = 2 };

struct GenerateOptions {
    int theorem = 0;
    std::optional<std::size_t> n;
    std::optional<std::size_t> d;
    std::vector<std::size_t> dims;
    std::string out;
    bool normalize = false;
};

inline int cmd_generate(const GenerateOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        if (opt.theorem < 1 || opt.theorem > 4) throw Error("bad-theorem", "--theorem must be 1, 2, 3 or 4");
        std::vector<std::size_t> dims = opt.dims;
        if (opt.n || opt.d) {
            if (opt.theorem > 2) throw Error("bad-dimension", "--n/--d only apply to theorems 1 and 2; use --dims");
            if (!opt.n || !opt.d) throw Error("bad-dimension", "--n and --d must be given together");
            if (!dims.empty()) throw Error("bad-dimension", "give either --n/--d or --dims, not both");
            dims.assign(*opt.n, *opt.d);
        }
        if (dims.empty()) throw Error("bad-dimension", "no dimensions given");

        StateSet set = generate_family(static_cast<Theorem>(opt.theorem), dims);
        const StateSet exported = opt.normalize ? io::normalized(set) : set;
        const std::string text = io::serialize_state_set(exported);
        if (opt.out.empty()) {
            out << text;
            err << set.size() << " states: " << set.label << "\n";
        } else {
            io::write_file(opt.out, text);
            out << set.size() << " states: " << set.label << "\n";
            out << "wrote " << opt.out << "\n";
        }
        return kCertified;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    }
}

struct CertifyOptions {
    std::string in;
    std::string out;
    Tolerances tol;
};

inline int cmd_certify(const CertifyOptions& opt, std::ostream& out, std::ostream& err) {
    Certificate cert;
    try {
        const StateSet set = io::load_state_set(opt.in);
        cert = certify_nonlocal(set, opt.tol);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    }
    out << io::certificate_report(cert);
    if (!opt.out.empty()) {
        try {
            io::write_file(opt.out, io::certificate_json(cert).dump(2) + "\n");
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return kInvalidInput;
        }
    }
    return cert.verdict() == Verdict::CertifiedNonlocal ? kCertified : kNotCertified;
}

// ---------------------------------------------------------------------------
// selftest

struct SelftestOptions {
    std::size_t max_total_dim = kBruteForceMaxDim;
    Tolerances tol;
};

/// Every family instance the sweeps cover: theorems 1/2 for 3 <= n <= 6 and
/// 2 <= d <= 6, theorems 3/4 on a fixed list of mixed-dimension tuples.
inline std::vector<StateSet> selftest_families() {
    std::vector<StateSet> sets;
    for (std::size_t n = 3; n <= 6; ++n)
        for (std::size_t d = 2; d <= 6; ++d) {
            sets.push_back(theorem1_set(n, d));
            sets.push_back(theorem2_set(n, d));
        }
    std::vector<std::vector<std::size_t>> mixed;
    for (std::size_t a = 2; a <= 4; ++a)
        for (std::size_t b = 2; b <= 4; ++b)
            for (std::size_t c = 2; c <= 4; ++c) mixed.push_back({a, b, c});
    for (auto dims : std::vector<std::vector<std::size_t>>{
             {2, 3, 4, 5}, {5, 4, 3, 2}, {2, 2, 3, 3}, {3, 2, 5, 2}, {6, 2, 2, 2}, {2, 3, 2, 3, 4}, {2, 6, 2}, {6, 2, 5}})
        mixed.push_back(dims);
    for (const auto& dims : mixed) {
        sets.push_back(theorem3_set(dims));
        sets.push_back(theorem4_set(dims));
    }
    return sets;
}

inline int cmd_selftest(const SelftestOptions& opt, std::ostream& out) {
    std::size_t checks = 0, failures = 0;
    auto report = [&](const std::string& name, bool ok, const std::string& detail = {}) {
        ++checks;
        if (!ok) ++failures;
        out << (ok ? "PASS  " : "FAIL  ") << name;
        if (!detail.empty()) out << "  (" << detail << ")";
        out << "\n";
    };

    {
        bool ok = true;
        for (std::size_t d = 2; d <= 16; ++d) {
            const auto roots = oracles::roots_of_unity(d);
            for (std::size_t a = 0; a < d; ++a) {
                ok = ok && std::abs(std::pow(roots[a], static_cast<double>(d)) - 1.0) <= 1e-12;
                for (std::size_t b = a + 1; b < d; ++b) ok = ok && std::abs(roots[a] - roots[b]) > 1e-12;
            }
        }
        report("roots of unity distinct, (w^t)^d = 1, d = 2..16", ok);
    }
    {
        bool ok = true;
        for (std::size_t d = 2; d <= 8; ++d) {
            for (double v : oracles::proof_determinants_nonzero(d)) ok = ok && v > 1e-8;
            const double expect = std::pow(static_cast<double>(d), static_cast<double>(d) / 2.0);
            const double got = std::abs(oracles::vandermonde_det(oracles::roots_of_unity(d)));
            ok = ok && std::abs(got - expect) <= 1e-9 * expect;
        }
        report("Vandermonde determinants nonzero, |V(roots)| = d^(d/2), d = 2..8", ok);
    }

    const auto sets = selftest_families();
    {
        bool ok = true;
        std::string detail;
        for (const auto& s : sets) {
            const bool t13 = s.label.starts_with("theorem1") || s.label.starts_with("theorem3");
            const std::size_t expect = t13 ? theorem3_count(s.dims) : theorem4_count(s.dims);
            if (s.size() != expect) {
                ok = false;
                detail = s.label;
            }
        }
        report("cardinalities over " + std::to_string(sets.size()) + " family instances", ok, detail);
    }
    {
        double worst = 0.0;
        for (const auto& s : sets) worst = std::max(worst, check_pairwise_orthogonality(s, opt.tol.orth).max_residual);
        std::ostringstream d;
        d << "max residual " << worst;
        report("pairwise orthogonality", worst <= opt.tol.orth, d.str());
    }
    {
        std::size_t run = 0;
        std::vector<std::string> bad;
        for (const auto& s : sets) {
            if (s.total_dim() > opt.max_total_dim) continue;
            ++run;
            const auto cert = certify_nonlocal(s, opt.tol);
            for (const auto& p : cert.parties)
                if (!p.trivial) {
                    std::ostringstream m;
                    m << "rank misjudgment: " << s.label << " party " << p.party + 1 << " solution_dim "
                      << p.solution_dim;
                    bad.push_back(m.str());
                }
        }
        report("nonlocality certificates for " + std::to_string(run) + " sets", bad.empty(),
               bad.empty() ? std::string{} : std::to_string(bad.size()) + " nontrivial party reports");
        for (std::size_t i = 0; i < std::min<std::size_t>(bad.size(), 10); ++i) out << "      " << bad[i] << "\n";
    }
    {
        std::size_t run = 0;
        std::vector<std::string> bad;
        const std::size_t cap = std::min(opt.max_total_dim, kBruteForceMaxDim);
        for (const auto& s : sets) {
            if (s.total_dim() > cap) continue;
            ++run;
            for (std::size_t k = 0; k < s.parties(); ++k) {
                const auto cmp = compare_with_brute_force(s, k, opt.tol);
                if (!cmp.agree(1e-8)) {
                    std::ostringstream m;
                    m << s.label << " party " << k + 1 << ": dims " << cmp.factorized_dim << " vs "
                      << cmp.brute_force_dim << ", cross residual " << cmp.max_cross_residual;
                    bad.push_back(m.str());
                }
            }
        }
        report("factorized vs brute-force null spaces for " + std::to_string(run) + " sets", bad.empty());
        for (std::size_t i = 0; i < std::min<std::size_t>(bad.size(), 10); ++i) out << "      " << bad[i] << "\n";
    }
    {
        const auto basis = product_basis({2, 2});
        const auto cert = certify_nonlocal(basis, opt.tol);
        bool ok = cert.verdict() == Verdict::NotCertified;
        for (const auto& p : cert.parties) ok = ok && p.solution_dim == 2 && p.witness.has_value();
        report("negative control: C2 x C2 product basis is not certified", ok);
    }

    out << "selftest: " << (failures ? "FAIL" : "PASS") << " (" << checks - failures << "/" << checks
        << " checks passed)\n";
    return failures ? 1 : 0;
}

// ---------------------------------------------------------------------------

/// Entry point shared by the executable and the tests.  `args` excludes the
/// program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Construct nonlocal orthogonal product-state sets and certify their local indistinguishability",
                 "nlops"};
    app.require_subcommand(1);

    GenerateOptions gen;
    auto* generate = app.add_subcommand("generate", "Generate a state family and write it as a state-set file");
    generate->add_option("--theorem", gen.theorem, "Family: 1, 2 (equal dims) or 3, 4 (mixed dims)")
        ->required()
        ->check(CLI::Range(1, 4));
    generate->add_option_function<std::size_t>("--n", [&](const std::size_t& v) { gen.n = v; }, "Number of parties");
    generate->add_option_function<std::size_t>("--d", [&](const std::size_t& v) { gen.d = v; }, "Local dimension");
    generate->add_option("--dims", gen.dims, "Comma-separated local dimensions")->delimiter(',');
    generate->add_option("--out", gen.out, "Output path (stdout when omitted)");
    generate->add_flag("--normalize", gen.normalize, "Normalize every local vector on export");

    CertifyOptions cer;
    auto* certify = app.add_subcommand("certify", "Certify a state-set file");
    certify->add_option("input", cer.in, "State-set file")->required();
    certify->add_option("--out", cer.out, "Write the machine-readable certificate here");
    certify->add_option("--tol-rank", cer.tol.rank, "Relative singular-value cutoff");
    certify->add_option("--tol-active", cer.tol.active, "Relative threshold for constraint-generating pairs");
    certify->add_option("--tol-orth", cer.tol.orth, "Pairwise orthogonality tolerance");

    SelftestOptions st;
    auto* selftest = app.add_subcommand("selftest", "Run the built-in oracle and sweep checks");
    selftest->add_option("--max-total-dim", st.max_total_dim, "Skip certification of sets above this total dimension");
    selftest->add_option("--tol-rank", st.tol.rank, "Relative singular-value cutoff");
    selftest->add_option("--tol-active", st.tol.active, "Relative threshold for constraint-generating pairs");
    selftest->add_option("--tol-orth", st.tol.orth, "Pairwise orthogonality tolerance");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInvalidInput;
    }

    if (generate->parsed()) return cmd_generate(gen, out, err);
    if (certify->parsed()) return cmd_certify(cer, out, err);
    return cmd_selftest(st, out);
}

}  // namespace nlops::cli
