#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nlops/certifier.hpp"
#include "nlops/error.hpp"
#include "nlops/hermitian.hpp"
#include "nlops/tensor.hpp"

namespace nlops::io {

inline constexpr const char* kFormatVersion = "nlops-1";

/// %.17g, which round-trips every finite double.
inline std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Divides every local vector by its norm.
inline StateSet normalized(const StateSet& set) {
    std::vector<ProductState> states;
    for (const auto& s : set.states) {
        std::vector<LocalVector> locals;
        for (const auto& u : s.locals) locals.push_back(u.scaled(1.0 / u.norm()));
        states.emplace_back(std::move(locals));
    }
    return StateSet(set.dims, std::move(states), set.label);
}

/// StateSetFile text.  Hand-formatted so the layout (one state per line) and
/// the 17-significant-digit numbers are stable across library versions.
inline std::string serialize_state_set(const StateSet& set) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"format_version\": \"" << kFormatVersion << "\",\n";
    os << "  \"dims\": [";
    for (std::size_t k = 0; k < set.dims.size(); ++k) os << (k ? ", " : "") << set.dims[k];
    os << "],\n";
    os << "  \"label\": " << nlohmann::json(set.label).dump() << ",\n";
    os << "  \"states\": [";
    for (std::size_t s = 0; s < set.size(); ++s) {
        os << (s ? ",\n    " : "\n    ") << "[";
        const auto& st = set.states[s];
        for (std::size_t k = 0; k < st.parties(); ++k) {
            os << (k ? ", " : "") << "[";
            const auto amps = st.locals[k].amps();
            for (std::size_t j = 0; j < amps.size(); ++j)
                os << (j ? ", " : "") << "[" << format_number(amps[j].real()) << ", " << format_number(amps[j].imag())
                   << "]";
            os << "]";
        }
        os << "]";
    }
    os << (set.size() ? "\n  ]\n" : "]\n");
    os << "}\n";
    return os.str();
}

/// Parses and validates a StateSetFile.  Any schema or shape problem throws
/// Error("malformed", ...).
inline StateSet parse_state_set(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error("malformed", e.what());
    }
    auto fail = [](const std::string& what) -> void { throw Error("malformed", what); };

    if (!j.is_object()) fail("top level must be an object");
    if (!j.contains("format_version") || j["format_version"] != kFormatVersion) fail("format_version must be nlops-1");
    if (!j.contains("dims") || !j["dims"].is_array()) fail("dims must be an array");
    if (!j.contains("states") || !j["states"].is_array()) fail("states must be an array");

    std::vector<std::size_t> dims;
    for (const auto& d : j["dims"]) {
        if (!d.is_number_integer() || d.get<long long>() < 1) fail("dims must be positive integers");
        dims.push_back(d.get<std::size_t>());
    }
    std::string label;
    if (j.contains("label")) {
        if (!j["label"].is_string()) fail("label must be a string");
        label = j["label"].get<std::string>();
    }

    std::vector<ProductState> states;
    for (const auto& st : j["states"]) {
        if (!st.is_array() || st.size() != dims.size()) fail("each state needs one local vector per party");
        std::vector<LocalVector> locals;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            const auto& loc = st[k];
            if (!loc.is_array() || loc.size() != dims[k]) fail("local vector length must match dims");
            std::vector<Complex> amps;
            for (const auto& a : loc) {
                if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
                    fail("amplitudes must be [re, im] number pairs");
                amps.emplace_back(a[0].get<double>(), a[1].get<double>());
            }
            try {
                locals.emplace_back(std::move(amps));
            } catch (const Error& e) {
                fail(e.what());
            }
        }
        states.emplace_back(std::move(locals));
    }
    try {
        return StateSet(std::move(dims), std::move(states), std::move(label));
    } catch (const Error& e) {
        throw Error("malformed", e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("unreadable", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("unwritable", "cannot open " + path + " for writing");
    out << text;
    if (!out) throw Error("unwritable", "write to " + path + " failed");
}

inline StateSet load_state_set(const std::string& path) { return parse_state_set(read_file(path)); }

// ---------------------------------------------------------------------------
// CertificateFile

inline nlohmann::ordered_json matrix_json(const Eigen::MatrixXcd& m) {
    auto rows = nlohmann::ordered_json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        auto row = nlohmann::ordered_json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

inline nlohmann::ordered_json certificate_json(const Certificate& cert) {
    nlohmann::ordered_json j;
    j["format_version"] = kFormatVersion;
    j["input"] = {{"label", cert.label}, {"dims", cert.dims}};
    j["tolerances"] = {{"tol_rank", cert.tolerances.rank},
                       {"tol_active", cert.tolerances.active},
                       {"tol_orth", cert.tolerances.orth}};
    j["orthogonality"] = {{"pass", cert.orthogonality.pass}, {"max_residual", cert.orthogonality.max_residual}};
    auto parties = nlohmann::ordered_json::array();
    for (const auto& p : cert.parties) {
        nlohmann::ordered_json pj;
        pj["party"] = p.party + 1;
        pj["active_pairs"] = p.active_pairs;
        pj["solution_dim"] = p.solution_dim;
        pj["trivial"] = p.trivial;
        if (p.witness) {
            std::vector<double> coords(p.witness->coords.data(), p.witness->coords.data() + p.witness->coords.size());
            pj["witness"] = {{"dim", p.witness->dim},
                             {"coords", coords},
                             {"matrix", matrix_json(coords_to_matrix(*p.witness))}};
        }
        parties.push_back(std::move(pj));
    }
    j["parties"] = std::move(parties);
    j["verdict"] = to_string(cert.verdict());
    return j;
}

/// Human-readable summary.
inline std::string certificate_report(const Certificate& cert) {
    std::ostringstream os;
    os << "set:           " << cert.label << "\n";
    os << "dims:          ";
    for (std::size_t k = 0; k < cert.dims.size(); ++k) os << (k ? "," : "") << cert.dims[k];
    os << "\n";
    os << "tolerances:    rank=" << cert.tolerances.rank << " active=" << cert.tolerances.active
       << " orth=" << cert.tolerances.orth << "\n";
    os << "orthogonality: " << (cert.orthogonality.pass ? "pass" : "FAIL")
       << " (max residual " << cert.orthogonality.max_residual << ")\n";
    for (const auto& p : cert.parties) {
        os << "party " << p.party + 1 << ": active_pairs=" << p.active_pairs << " solution_dim=" << p.solution_dim
           << (p.trivial ? " trivial" : " NONTRIVIAL");
        if (p.witness) {
            os << "\n  witness:";
            const auto m = coords_to_matrix(*p.witness);
            for (Eigen::Index r = 0; r < m.rows(); ++r) {
                os << "\n   ";
                for (Eigen::Index c = 0; c < m.cols(); ++c) {
                    char buf[64];
                    std::snprintf(buf, sizeof buf, " %+.6f%+.6fi", m(r, c).real(), m(r, c).imag());
                    os << buf;
                }
            }
        }
        os << "\n";
    }
    os << "verdict:       " << to_string(cert.verdict()) << "\n";
    return os.str();
}

}  // namespace nlops::io
