#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "symform/complex_matrix.hpp"
#include "symform/hermitian.hpp"

namespace symform {

// Matrix file format, used repo-wide:
//   {"n": <int>, "re": [[...]], "im": [[...]]}  (row-major, exactly n x n)

inline nlohmann::ordered_json matrix_to_json(const ComplexMatrix& a) {
    require_square(a, "matrix_to_json");
    nlohmann::ordered_json re = nlohmann::ordered_json::array();
    nlohmann::ordered_json im = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        nlohmann::ordered_json row_re = nlohmann::ordered_json::array();
        nlohmann::ordered_json row_im = nlohmann::ordered_json::array();
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            row_re.push_back(a(i, k).real());
            row_im.push_back(a(i, k).imag());
        }
        re.push_back(std::move(row_re));
        im.push_back(std::move(row_im));
    }
    nlohmann::ordered_json j;
    j["n"] = a.rows();
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j;
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidInputError("matrix file: top level must be an object");
    for (const auto& item : j.items())
        if (item.key() != "n" && item.key() != "re" && item.key() != "im")
            throw InvalidInputError("matrix file: unknown key '" + item.key() + "'");
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw InvalidInputError("matrix file: field 'n' must be an integer");
    const auto n = j["n"].get<Eigen::Index>();
    if (n < 1) throw InvalidInputError("matrix file: field 'n' must be >= 1");

    const auto read_part = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_array() || j[key].size() != static_cast<std::size_t>(n))
            throw InvalidInputError(std::string("matrix file: field '") + key + "' must be an " +
                                    std::to_string(n) + "-row array");
        RealMatrix part(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto& row = j[key][static_cast<std::size_t>(i)];
            if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
                throw InvalidInputError(std::string("matrix file: field '") + key + "', row " +
                                        std::to_string(i) + ": expected " + std::to_string(n) +
                                        " numbers");
            for (Eigen::Index k = 0; k < n; ++k) {
                const auto& cell = row[static_cast<std::size_t>(k)];
                if (!cell.is_number())
                    throw InvalidInputError(std::string("matrix file: field '") + key + "', row " +
                                            std::to_string(i) + ", column " + std::to_string(k) +
                                            ": expected a number");
                part(i, k) = cell.get<double>();
            }
        }
        return part;
    };

    const RealMatrix re = read_part("re");
    const RealMatrix im = read_part("im");
    ComplexMatrix out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k) out(i, k) = Complex(re(i, k), im(i, k));
    require_finite(out, "matrix file");
    return out;
}

inline ComplexMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open matrix file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInputError("matrix file '" + path + "': " + e.what());
    }
    try {
        return matrix_from_json(j);
    } catch (const InvalidInputError& e) {
        throw InvalidInputError(std::string(e.what()) + " (in '" + path + "')");
    }
}

inline HermitianMatrix load_hermitian(const std::string& path) {
    return HermitianMatrix(load_matrix(path));  // enforces the Hermitian tolerance
}

inline void save_matrix(const ComplexMatrix& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInputError("cannot write matrix file '" + path + "'");
    out << matrix_to_json(a).dump(2) << "\n";
}

// real vectors (majorization inputs) are stored as plain JSON arrays
inline RealVector load_vector(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open vector file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInputError("vector file '" + path + "': " + e.what());
    }
    if (!j.is_array() || j.empty())
        throw InvalidInputError("vector file '" + path + "': expected a nonempty array of numbers");
    RealVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number())
            throw InvalidInputError("vector file '" + path + "': entry " + std::to_string(i) +
                                    " is not a number");
        v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    }
    return v;
}

}  // namespace symform
