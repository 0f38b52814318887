#pragma once

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "upspec/cochain.hpp"
#include "upspec/complex.hpp"

namespace upspec {

using ordered_json = nlohmann::ordered_json;

/// Complex file format: {"n": int, "k": int, "complete_skeleton_dim": int,
/// "top_faces": [[int,...],...]} with stable key order; top_faces lists every
/// face above the complete-skeleton dimension, by dimension then
/// lexicographically, so rewriting a parsed file is byte-stable.
inline ordered_json complex_to_json(const SimplicialComplex& X) {
    ordered_json j;
    j["n"] = X.n();
    j["k"] = X.dim();
    j["complete_skeleton_dim"] = X.complete_skeleton_dim();
    ordered_json faces = ordered_json::array();
    for (int d = X.complete_skeleton_dim() + 1; d <= X.dim(); ++d)
        for (const Face& f : X.faces(d)) faces.push_back(f);
    j["top_faces"] = std::move(faces);
    return j;
}

inline SimplicialComplex complex_from_json(const nlohmann::json& j) {
    if (!j.contains("n") || !j.contains("k") || !j.contains("top_faces"))
        throw std::invalid_argument("complex json: required keys n, k, top_faces");
    int n = j.at("n").get<int>();
    int k = j.at("k").get<int>();
    int csd = j.value("complete_skeleton_dim", -1);
    std::vector<Face> top;
    for (const auto& jf : j.at("top_faces")) top.push_back(jf.get<Face>());
    return SimplicialComplex::build(n, k, top, csd);
}

inline void write_complex(const std::string& path, const SimplicialComplex& X) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << complex_to_json(X).dump(2) << "\n";
}

inline SimplicialComplex read_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    nlohmann::json j;
    in >> j;
    return complex_from_json(j);
}

/// Cochain formats: {"dim": int, "support": [int,...]} over Z2 (sorted face
/// indices), {"dim": int, "values": [float,...]} over the reals.
inline ordered_json z2_cochain_to_json(const Z2Cochain& f) {
    ordered_json j;
    j["dim"] = f.dim;
    j["support"] = f.bits.support();
    return j;
}

inline Z2Cochain z2_cochain_from_json(const nlohmann::json& j, const SimplicialComplex& X) {
    int dim = j.at("dim").get<int>();
    auto support = j.at("support").get<std::vector<std::int64_t>>();
    const std::int64_t m = X.num_faces(dim);
    for (std::int64_t i : support)
        if (i < 0 || i >= m) throw std::invalid_argument("cochain support index out of range");
    return Z2Cochain{dim, gf2::BitVec::from_support(m, support)};
}

inline ordered_json real_cochain_to_json(const RealCochain& f) {
    ordered_json j;
    j["dim"] = f.dim;
    ordered_json vals = ordered_json::array();
    for (std::int64_t i = 0; i < f.values.size(); ++i) vals.push_back(f.values(i));
    j["values"] = std::move(vals);
    return j;
}

inline RealCochain real_cochain_from_json(const nlohmann::json& j, const SimplicialComplex& X) {
    int dim = j.at("dim").get<int>();
    auto vals = j.at("values").get<std::vector<double>>();
    if (static_cast<std::int64_t>(vals.size()) != X.num_faces(dim))
        throw std::invalid_argument("cochain values length mismatch");
    RealCochain f{dim, Eigen::VectorXd(static_cast<std::int64_t>(vals.size()))};
    for (std::size_t i = 0; i < vals.size(); ++i) f.values(static_cast<std::int64_t>(i)) = vals[i];
    return f;
}

/// Shortest round-trippable decimal form of a double (%.17g).
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string iso8601_utc_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// CSV text: one "# generated <timestamp>" comment line, then the header row,
/// then the records. The body (everything except '#' comment lines) is the
/// reproducibility contract; the timestamp line is excluded from diffs.
inline std::string csv_text(const std::vector<std::string>& columns,
                            const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    out << "# generated " << iso8601_utc_now() << "\n";
    for (std::size_t c = 0; c < columns.size(); ++c)
        out << (c ? "," : "") << columns[c];
    out << "\n";
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            throw std::invalid_argument("csv_text: row width does not match header");
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
        out << "\n";
    }
    return out.str();
}

/// The CSV text minus '#' comment lines: the part that must be byte-identical
/// across reruns of the same config.
inline std::string csv_body(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.empty() || line[0] != '#') out << line << "\n";
    return out.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace upspec
