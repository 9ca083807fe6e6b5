#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace alt {

/// 17-significant-digit decimal form; parses back to the identical double.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::vector<std::string> split_line(const std::string& line, char sep);

std::string trim(const std::string& s);

/// Strict double parse; returns false on trailing garbage or empty input.
bool parse_double(const std::string& s, double& out);

bool parse_size(const std::string& s, std::size_t& out);

}  // namespace alt
