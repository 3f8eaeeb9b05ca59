#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "dsfrac/errors.hpp"

namespace dsfrac {

// %.17g: enough digits to round-trip any double exactly.
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Write via a temp file in the same directory, then rename into place, so a
// crash never leaves a truncated output behind.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path dir = path.parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw ConfigError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

// Plain CSV with '#' comment lines before the header. All numeric cells are
// expected to arrive already formatted (format_g17 for doubles).
struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const {
        std::string out;
        for (const auto& c : comments) out += "# " + c + "\n";
        out += join(header);
        for (const auto& row : rows) out += join(row);
        return out;
    }

    void write(const std::filesystem::path& path) const { atomic_write(path, to_string()); }

private:
    static std::string join(const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) line += ",";
            line += cells[i];
        }
        line += "\n";
        return line;
    }
};

} // namespace dsfrac
