// JSON encodings of matrices, Kraus sets and entropy reports.
//
// Documents are built as nlohmann::ordered_json (insertion order is the field
// order) and written with every double as %.17g, so equal inputs give
// byte-identical text. Non-finite numbers are written as null.

#pragma once

#include "compton/channels.hpp"
#include "compton/density_matrix.hpp"
#include "compton/quantum_info.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <string>

namespace compton {

using Json = nlohmann::ordered_json;

inline std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline void write_json(const Json& j, std::string& out, int indent, int depth) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) { out += "{}"; return; }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += Json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                write_json(it.value(), out, indent, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) { out += "[]"; return; }
            // Arrays of scalars stay on one line; matrices read row by row.
            bool flat = true;
            for (const auto& e : j) flat = flat && !e.is_structured();
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += flat && indent >= 0 ? ", " : ",";
                if (!flat) newline(depth + 1);
                write_json(j[i], out, indent, depth + 1);
            }
            if (!flat) newline(depth);
            out += ']';
            return;
        }
        case Json::value_t::number_float: out += format_double(j.get<double>()); return;
        default: out += j.dump(); return;
    }
}

}  // namespace detail

/// Serialize with fixed 17-digit floats; indent < 0 gives compact output.
inline std::string dump_json(const Json& j, int indent = 2) {
    std::string out;
    detail::write_json(j, out, indent, 0);
    return out;
}

inline Json matrix_to_json(const MatrixXc& m) {
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json rr = Json::array();
        Json ri = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            rr.push_back(m(r, c).real());
            ri.push_back(m(r, c).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ri));
    }
    Json j;
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j;
}

/// {"dim", "basis", "re", "im", "raw_trace"}
inline Json to_json(const DensityMatrix& dm) {
    Json j;
    j["dim"] = dm.dim();
    j["basis"] = dm.basis;
    const Json m = matrix_to_json(dm.entries);
    j["re"] = m["re"];
    j["im"] = m["im"];
    j["raw_trace"] = dm.raw_trace;
    return j;
}

inline DensityMatrix density_matrix_from_json(const Json& j) {
    const int n = j.at("dim").get<int>();
    DensityMatrix dm;
    dm.entries = MatrixXc::Zero(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) dm.entries(r, c) = {j.at("re").at(r).at(c).get<double>(), j.at("im").at(r).at(c).get<double>()};
    }
    dm.basis = j.at("basis").get<std::vector<std::string>>();
    if (j.contains("raw_trace")) dm.raw_trace = j["raw_trace"].get<double>();
    return dm;
}

inline Json to_json(const KrausSet& ks) {
    Json j;
    j["dim"] = ks.dim();
    Json ops = Json::array();
    for (const auto& k : ks.operators()) ops.push_back(matrix_to_json(k));
    j["operators"] = std::move(ops);
    j["completeness_defect"] = ks.completeness_defect();
    return j;
}

/// Entropies are scaled by `unit` (1 for nats, 1/ln 2 for bits).
inline Json to_json(const EntropyReport& rep, double unit = 1.0) {
    Json j;
    j["eigenvalues"] = rep.eigenvalues;
    j["entropy"] = rep.entropy_nats * unit;
    j["expansion"] = rep.expansion_value * unit;
    j["discrepancy"] = rep.discrepancy * unit;
    return j;
}

}  // namespace compton
