#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hadml::cli {

/// 17 significant digits, dot decimal separator regardless of locale.
std::string format_number(double v);

/// CSV table whose rows always have as many cells as the header.
class OutputTable {
public:
    explicit OutputTable(std::vector<std::string> header);

    void add_row(std::vector<std::string> cells);
    void write(std::ostream& out) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// "start:stop:step" (stop included when it lies on the lattice within 1e-12
/// steps), a single number, or a comma-separated list.
std::vector<double> parse_points(const std::string& spec);

}  // namespace hadml::cli
