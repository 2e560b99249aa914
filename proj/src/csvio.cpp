#include "resdyn/csvio.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace resdyn {

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("csv: cannot open for writing: " + path);
    for (size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ',';
        out << table.columns[i];
    }
    out << '\n';
    char buf[32];
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw std::runtime_error("csv: row width mismatch while writing " + path);
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            std::snprintf(buf, sizeof(buf), "%.12g", row[i]);
            out << buf;
        }
        out << '\n';
    }
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open: " + path);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: empty file: " + path);
    {
        std::istringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) table.columns.push_back(tok);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        row.reserve(table.columns.size());
        std::istringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) row.push_back(std::strtod(tok.c_str(), nullptr));
        if (row.size() != table.columns.size())
            throw std::runtime_error("csv: row width mismatch in " + path);
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace resdyn
