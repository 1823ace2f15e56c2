// Shared helpers for the test binaries.

#pragma once

#include "qsc/linalg.hpp"
#include "qsc/random.hpp"
#include "qsc/states.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace qsc_test {

inline constexpr double kPi = std::numbers::pi;

inline double max_abs_diff(const qsc::linalg::ComplexMatrix& a, const qsc::linalg::ComplexMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

/// Random density matrix of dimension `dim` as A A† / Tr(A A†).
inline qsc::linalg::ComplexMatrix random_density(std::size_t dim, qsc::RandomStream& rng) {
    qsc::linalg::ComplexMatrix a(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) a(r, c) = {rng.normal(), rng.normal()};
    auto m = a * a.adjoint();
    return m * (1.0 / m.trace().real());
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("qsc_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Csv {
    std::string provenance;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t col(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw std::out_of_range("no column " + name);
    }
    double num(std::size_t row, const std::string& name) const { return std::stod(rows[row][col(name)]); }
    const std::string& str(std::size_t row, const std::string& name) const { return rows[row][col(name)]; }
};

inline std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

/// Reads the writer's format: one '#' line, a header, plain comma-separated rows.
inline Csv read_csv(const std::filesystem::path& p) {
    Csv csv;
    std::ifstream in(p);
    std::string line;
    std::getline(in, csv.provenance);
    std::getline(in, line);
    csv.header = split(line);
    while (std::getline(in, line))
        if (!line.empty()) csv.rows.push_back(split(line));
    return csv;
}

}  // namespace qsc_test
