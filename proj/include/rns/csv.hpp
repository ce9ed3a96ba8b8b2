#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace rns {

// 17 significant digits: enough to round-trip any double exactly.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Minimal CSV writer: header once, then numeric rows at full precision.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns) : out_(path) {
        if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
        for (size_t i = 0; i < columns.size(); ++i) {
            if (i) out_ << ',';
            out_ << columns[i];
        }
        out_ << '\n';
    }

    void row(const std::vector<double>& values) {
        for (size_t i = 0; i < values.size(); ++i) {
            if (i) out_ << ',';
            out_ << fmt17(values[i]);
        }
        out_ << '\n';
    }

    void flush() { out_.flush(); }

  private:
    std::ofstream out_;
};

}  // namespace rns
