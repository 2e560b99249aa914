#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace resdyn {

// Numeric CSV with a single header row. Good enough for episode traces,
// trajectory exchange and loss curves; not a general CSV parser.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int column_index(const std::string& name) const {
        for (size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return static_cast<int>(i);
        throw std::runtime_error("csv: no column named `" + name + "`");
    }
    std::vector<double> column(const std::string& name) const {
        const int idx = column_index(name);
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& r : rows) out.push_back(r[idx]);
        return out;
    }
};

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

}  // namespace resdyn
