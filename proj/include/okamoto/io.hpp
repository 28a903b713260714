#pragma once

#include "errors.hpp"
#include "geometry.hpp"
#include "iteration.hpp"
#include "measure.hpp"
#include "numeric.hpp"

#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace okamoto {

inline constexpr const char* version = "1.0.0";

struct OutputHeader {
    std::string a;                   // as given, e.g. "2/3" or "0.6"
    Mode mode = Mode::floating;
    std::uint64_t seed = 0;
};

// "# a=<a> mode=<mode> seed=<seed> version=<version>"
inline void write_header(std::ostream& os, const OutputHeader& h) {
    os << "# a=" << h.a << " mode=" << to_string(h.mode) << " seed=" << h.seed << " version=" << version << '\n';
}

template <typename T>
void write_xy_csv(std::ostream& os, const OutputHeader& h, const std::vector<Point2<T>>& pts) {
    write_header(os, h);
    os << "x,y\n";
    for (const auto& p : pts) os << format_number(p.x) << ',' << format_number(p.y) << '\n';
}

inline void write_chaos_csv(std::ostream& os, const OutputHeader& h, const MassSample& s) {
    write_header(os, h);
    os << "x,y,step\n";
    for (std::size_t j = 0; j < s.points.size(); ++j)
        os << format_number(s.points[j].x) << ',' << format_number(s.points[j].y) << ',' << s.steps[j] << '\n';
}

template <typename T>
void write_dim_csv(std::ostream& os, const OutputHeader& h, const CoverProfile<T>& c, unsigned min_level = 0) {
    write_header(os, h);
    os << "level,delta,area,boxes,log_inv_delta,log_boxes\n";
    for (unsigned i = min_level; i <= c.max_level(); ++i) {
        os << i << ',' << format_number(c.delta[i]) << ',' << format_number(c.area[i]) << ','
           << format_number(c.boxes[i]) << ',' << format_number(static_cast<double>(i) * std::log(3.0)) << ','
           << format_number(std::log(to_double(c.boxes[i]))) << '\n';
    }
}

template <typename T>
void write_arclength_csv(std::ostream& os, const OutputHeader& h, const LengthProfile<T>& l) {
    write_header(os, h);
    os << "level,euclidean_length,manhattan_length,total_variation\n";
    for (unsigned i = 0; i <= l.max_level(); ++i)
        os << i << ',' << format_number(l.euclidean[i]) << ',' << format_number(l.manhattan[i]) << ','
           << format_number(l.total_variation[i]) << '\n';
}

/// Single polyline in the unit square, y flipped so larger values sit higher.
template <typename T>
void write_svg_polyline(std::ostream& os, const OutputHeader& h, const std::vector<Point2<T>>& pts) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\">\n";
    os << "<!-- a=" << h.a << " mode=" << to_string(h.mode) << " seed=" << h.seed << " version=" << version
       << " -->\n";
    os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"0.002\" points=\"";
    bool first = true;
    for (const auto& p : pts) {
        if (!first) os << ' ';
        first = false;
        os << format_number(to_double(p.x)) << ',' << format_number(1.0 - to_double(p.y));
    }
    os << "\"/>\n</svg>\n";
}

/// Parsed CSV: header key/values, column names and raw cells.
struct CsvTable {
    std::map<std::string, std::string> header;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t j = 0; j < columns.size(); ++j)
            if (columns[j] == name) return j;
        throw domain_error("no column named '" + name + "'");
    }
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

inline CsvTable read_csv(std::istream& is) {
    CsvTable t;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::istringstream kv(line.substr(1));
            std::string token;
            while (kv >> token)
                if (auto eq = token.find('='); eq != std::string::npos)
                    t.header[token.substr(0, eq)] = token.substr(eq + 1);
        } else if (t.columns.empty()) {
            t.columns = split_csv_line(line);
        } else {
            auto cells = split_csv_line(line);
            if (cells.size() != t.columns.size()) throw domain_error("ragged CSV row: " + line);
            t.rows.push_back(std::move(cells));
        }
    }
    return t;
}

} // namespace okamoto
