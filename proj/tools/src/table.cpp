#include "table.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "hadml/error.hpp"

namespace hadml::cli {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

OutputTable::OutputTable(std::vector<std::string> header) : header_(std::move(header)) {}

void OutputTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw std::logic_error("row width does not match header");
    rows_.push_back(std::move(cells));
}

void OutputTable::write(std::ostream& out) const {
    std::string text;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text += ',';
            text += cells[i];
        }
        text += '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    out << text;
}

namespace {

double parse_double(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
        throw DomainError("not a finite number: '" + s + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

std::vector<double> parse_points(const std::string& spec) {
    if (spec.find(':') != std::string::npos) {
        const auto parts = split(spec, ':');
        if (parts.size() != 3) throw DomainError("range must be start:stop:step, got '" + spec + "'");
        const double start = parse_double(parts[0]);
        const double stop = parse_double(parts[1]);
        const double step = parse_double(parts[2]);
        if (!(step > 0.0)) throw DomainError("range step must be > 0");
        if (stop < start) throw DomainError("range stop must be >= start");
        const double span = (stop - start) / step;
        const double nearest = std::round(span);
        const auto intervals = static_cast<long long>(std::fabs(span - nearest) <= 1e-12 ? nearest
                                                                                         : std::floor(span));
        if (intervals > 10'000'000) throw DomainError("range has too many points");
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(intervals) + 1);
        for (long long i = 0; i <= intervals; ++i) out.push_back(start + static_cast<double>(i) * step);
        if (std::fabs(span - nearest) <= 1e-12) out.back() = stop;
        return out;
    }
    std::vector<double> out;
    for (const auto& item : split(spec, ',')) out.push_back(parse_double(item));
    if (out.empty()) throw DomainError("empty point list");
    return out;
}

}  // namespace hadml::cli
