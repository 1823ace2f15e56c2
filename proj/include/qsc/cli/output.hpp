// output.hpp: deterministic CSV / JSON table writers.
//
// Numbers are printed with at most 12 significant digits in the shortest
// form (%.12g semantics, locale independent); -0 is printed as 0. CSV files
// start with one '#' provenance line.

#pragma once

#include "qsc/errors.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace qsc::cli {

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

enum class OutputFormat { csv, json };

/// monostate is an empty CSV cell / JSON null.
using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

/// Key/value pairs written into the provenance header.
using Provenance = std::vector<std::pair<std::string, std::string>>;

std::string format_number(double x);
/// x rounded to what format_number prints.
double round_for_output(double x);
std::string format_seed(std::uint64_t seed);

std::string to_csv(const Table& table, const Provenance& provenance);
nlohmann::json to_json(const Table& table, const Provenance& provenance);

/// Writes `stem`.csv or `stem`.json into `dir`; returns the path written.
std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem,
                                  const Table& table, const Provenance& provenance,
                                  OutputFormat format);

std::filesystem::path write_json(const std::filesystem::path& dir, const std::string& filename,
                                 const nlohmann::json& doc);

}  // namespace qsc::cli
