#include "qsc/cli/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qsc::cli {

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw InvalidArgument("Table::add: row width mismatch");
    rows.push_back(std::move(row));
}

std::string format_number(double x) {
    if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    if (x == 0.0) return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
    return {buf, res.ptr};
}

double round_for_output(double x) {
    if (!std::isfinite(x)) return x;
    const std::string s = format_number(x);
    double out = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

std::string format_seed(std::uint64_t seed) {
    std::ostringstream os;
    os << "0x" << std::uppercase << std::hex << seed;
    return os.str();
}

namespace {

std::string cell_text(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return "";
            else if constexpr (std::is_same_v<T, double>) return format_number(v);
            else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else return v;
        },
        c);
}

nlohmann::json cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> nlohmann::json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
            else if constexpr (std::is_same_v<T, double>) return round_for_output(v);
            else return v;
        },
        c);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

std::string to_csv(const Table& table, const Provenance& provenance) {
    std::string out = "# qsc";
    for (const auto& [k, v] : provenance) out += " " + k + "=" + v;
    out += "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ",";
        out += table.columns[i];
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += cell_text(row[i]);
        }
        out += "\n";
    }
    return out;
}

nlohmann::json to_json(const Table& table, const Provenance& provenance) {
    nlohmann::json meta = nlohmann::json::object();
    for (const auto& [k, v] : provenance) meta[k] = v;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(obj));
    }
    return {{"meta", meta}, {"columns", table.columns}, {"rows", rows}};
}

std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem,
                                  const Table& table, const Provenance& provenance,
                                  OutputFormat format) {
    if (format == OutputFormat::csv) {
        auto path = dir / (stem + ".csv");
        write_file(path, to_csv(table, provenance));
        return path;
    }
    auto path = dir / (stem + ".json");
    write_file(path, to_json(table, provenance).dump(2) + "\n");
    return path;
}

std::filesystem::path write_json(const std::filesystem::path& dir, const std::string& filename,
                                 const nlohmann::json& doc) {
    auto path = dir / filename;
    write_file(path, doc.dump(2) + "\n");
    return path;
}

}  // namespace qsc::cli
