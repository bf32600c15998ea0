#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gme/covariance.hpp"
#include "gme/errors.hpp"

namespace gme {

inline constexpr const char* matrix_file_ordering = "qA,pA,qB,pB";

struct MatrixFile {
    CovarianceMatrix matrix{Mat4::Zero()};
    std::string label;
};

/// Write-temp-then-rename so readers never observe a half-written file.
inline void write_atomic(const std::filesystem::path& path, const std::string& contents) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << contents;
        if (!out.flush()) throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline nlohmann::ordered_json matrix_to_json(const Mat4& m, const std::string& label) {
    nlohmann::ordered_json j;
    j["ordering"] = matrix_file_ordering;
    j["matrix"] = nlohmann::ordered_json::array();
    for (int i = 0; i < 4; ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int k = 0; k < 4; ++k) row.push_back(m(i, k));
        j["matrix"].push_back(row);
    }
    if (!label.empty()) j["label"] = label;
    return j;
}

inline void write_matrix_file(const std::filesystem::path& path, const Mat4& m,
                              const std::string& label = "") {
    write_atomic(path, matrix_to_json(m, label).dump(2) + "\n");
}

/// Parse a MatrixFile: the ordering field is mandatory and exact, the matrix
/// must be 4x4 with finite entries symmetric to within 1e-9.
inline MatrixFile read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in " + path.string() + ": " + e.what());
    }
    if (!j.contains("ordering") || !j["ordering"].is_string() ||
        j["ordering"].get<std::string>() != matrix_file_ordering) {
        throw ParseError(path.string() + ": ordering field must be exactly \"" +
                         std::string(matrix_file_ordering) + "\"");
    }
    if (!j.contains("matrix") || !j["matrix"].is_array() || j["matrix"].size() != 4) {
        throw ParseError(path.string() + ": matrix must be a 4x4 array");
    }
    Mat4 m;
    for (int i = 0; i < 4; ++i) {
        const auto& row = j["matrix"][i];
        if (!row.is_array() || row.size() != 4) {
            throw ParseError(path.string() + ": matrix must be a 4x4 array");
        }
        for (int k = 0; k < 4; ++k) {
            if (!row[k].is_number()) throw ParseError(path.string() + ": matrix entries must be numbers");
            m(i, k) = row[k].get<double>();
        }
    }
    MatrixFile file;
    try {
        file.matrix = make_covariance(m, 1e-9);
    } catch (const Error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    if (j.contains("label")) {
        if (!j["label"].is_string()) throw ParseError(path.string() + ": label must be a string");
        file.label = j["label"].get<std::string>();
    }
    return file;
}

/// Fixed 12-significant-digit formatting for CSV data values.
inline std::string format_sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace gme
