#pragma once

// Shared text output conventions: CSV carries 9 significant digits to stay
// readable, JSON goes through nlohmann's round-trip-exact printer.

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

namespace scorebench {

inline std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

inline std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    return in;
}

}  // namespace scorebench
