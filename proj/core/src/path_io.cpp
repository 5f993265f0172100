#include "hurstlab/path_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "hurstlab/errors.hpp"

namespace hurstlab {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // Prefer the shortest representation that round-trips.
    for (int prec = 1; prec <= 16; ++prec) {
        char probe[40];
        std::snprintf(probe, sizeof probe, "%.*g", prec, v);
        if (std::strtod(probe, nullptr) == v) return probe;
    }
    return buf;
}

void write_path_csv(const std::filesystem::path& file, const std::vector<double>& values,
                    const std::string& column) {
    if (values.size() < 2) throw InvalidArgument("path export needs at least 2 grid points");
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("cannot open '" + file.string() + "' for writing");
    out << "t," << column << '\n';
    const double m = static_cast<double>(values.size() - 1);
    for (std::size_t k = 0; k < values.size(); ++k)
        out << format_double(static_cast<double>(k) / m) << ',' << format_double(values[k])
            << '\n';
    if (!out) throw IoError("failed writing '" + file.string() + "'");
}

std::vector<double> read_path_csv(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open '" + file.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw IoError("'" + file.string() + "' is empty");
    if (line.ends_with('\r')) line.pop_back();
    if (line != "t,value" && line != "t,x")
        throw IoError("'" + file.string() + "': expected header 't,value' or 't,x', got '" +
                      line + "'");

    std::vector<double> t_col, v_col;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.ends_with('\r')) line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw IoError("'" + file.string() + "' line " + std::to_string(lineno) +
                          ": expected 't,value'");
        char* end = nullptr;
        const double t = std::strtod(line.c_str(), &end);
        const double v = std::strtod(line.c_str() + comma + 1, &end);
        if (!std::isfinite(t) || !std::isfinite(v))
            throw IoError("'" + file.string() + "' line " + std::to_string(lineno) +
                          ": non-finite entry");
        t_col.push_back(t);
        v_col.push_back(v);
    }
    if (t_col.size() < 3) throw IoError("'" + file.string() + "': need at least 3 grid rows");
    const double dt = t_col[1] - t_col[0];
    if (!(dt > 0)) throw IoError("'" + file.string() + "': t column must increase");
    for (std::size_t k = 1; k < t_col.size(); ++k) {
        const double step = t_col[k] - t_col[k - 1];
        if (std::abs(step - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
            throw IoError("'" + file.string() + "': non-uniform grid at row " +
                          std::to_string(k + 1));
    }
    return v_col;
}

}  // namespace hurstlab
