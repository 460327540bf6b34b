#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "efacies/csv.hpp"
#include "efacies/curve_set.hpp"
#include "efacies/error.hpp"

namespace efacies::las {

enum class ParseErrc {
    missing_ascii_section,
    missing_curve_section,
    curve_count_mismatch,
    non_numeric_token,
    non_monotone_depth,
    unsupported_version,
    malformed_header,
};

inline const char* to_string(ParseErrc e) {
    switch (e) {
        case ParseErrc::missing_ascii_section: return "missing ~A section";
        case ParseErrc::missing_curve_section: return "missing ~C section";
        case ParseErrc::curve_count_mismatch: return "curve count mismatch";
        case ParseErrc::non_numeric_token: return "non-numeric token";
        case ParseErrc::non_monotone_depth: return "non-monotone depth";
        case ParseErrc::unsupported_version: return "unsupported LAS version";
        case ParseErrc::malformed_header: return "malformed header line";
    }
    return "parse error";
}

class ParseError : public InputError {
  public:
    ParseError(ParseErrc code, std::size_t line, const std::string& detail)
        : InputError("LAS line " + std::to_string(line) + ": " + to_string(code) +
                     (detail.empty() ? "" : " (" + detail + ")")),
          code_(code),
          line_(line) {}

    ParseErrc code() const noexcept { return code_; }
    /// 1-based line number; 0 when the error concerns the whole file.
    std::size_t line() const noexcept { return line_; }

  private:
    ParseErrc code_;
    std::size_t line_;
};

/// `MNEM.UNIT  DATA : DESCRIPTION`
struct HeaderLine {
    std::string mnemonic;
    std::string unit;
    std::string data;
    std::string description;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

inline bool parse_header_line(std::string_view line, HeaderLine& out) {
    auto dot = line.find('.');
    if (dot == std::string_view::npos) return false;
    out.mnemonic = std::string(trim(line.substr(0, dot)));
    if (out.mnemonic.empty()) return false;
    auto rest = line.substr(dot + 1);
    std::size_t unit_end = 0;
    while (unit_end < rest.size() && !std::isspace(static_cast<unsigned char>(rest[unit_end]))) {
        ++unit_end;
    }
    auto colon = rest.rfind(':');
    if (colon == std::string_view::npos) return false;
    if (unit_end > colon) unit_end = colon;
    out.unit = std::string(rest.substr(0, unit_end));
    out.data = std::string(trim(rest.substr(unit_end, colon - unit_end)));
    out.description = std::string(trim(rest.substr(colon + 1)));
    return true;
}

inline bool is_feet(std::string_view unit) {
    const auto u = upper(unit);
    return u == "F" || u == "FT" || u == "FEET" || u == "FOOT";
}

}  // namespace detail

inline constexpr double kFeetToMetres = 0.3048;

/// Parses LAS 2.0 text. Depth is the first ~A column, converted to metres and
/// normalised to increasing order. Duplicate depth rows keep the first
/// occurrence and add a message to `warnings` when it is given.
inline CurveSet parse_las(std::istream& in, std::vector<std::string>* warnings = nullptr) {
    enum class Section { none, version, well, curve, ascii, other };
    Section section = Section::none;

    bool seen_ascii = false;
    bool seen_curve = false;
    bool wrapped = false;
    double null_value = kDefaultNullValue;
    std::string well_name;
    std::vector<HeaderLine> curve_defs;

    struct Row {
        std::vector<double> values;
        std::size_t line;
    };
    std::vector<Row> rows;
    Row pending;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (line.front() == '~') {
            const char tag = line.size() > 1
                                 ? static_cast<char>(std::toupper(static_cast<unsigned char>(line[1])))
                                 : '\0';
            switch (tag) {
                case 'V': section = Section::version; break;
                case 'W': section = Section::well; break;
                case 'C': section = Section::curve; seen_curve = true; break;
                case 'A':
                    section = Section::ascii;
                    seen_ascii = true;
                    if (!seen_curve) {
                        throw ParseError(ParseErrc::missing_curve_section, line_no, "");
                    }
                    break;
                default: section = Section::other; break;
            }
            continue;
        }

        if (section == Section::version || section == Section::well || section == Section::curve) {
            HeaderLine h;
            if (!detail::parse_header_line(line, h)) {
                throw ParseError(ParseErrc::malformed_header, line_no, std::string(line));
            }
            const auto key = detail::upper(h.mnemonic);
            if (section == Section::version) {
                if (key == "VERS") {
                    double v = 0;
                    if (!parse_double(h.data, v)) {
                        throw ParseError(ParseErrc::malformed_header, line_no, "VERS " + h.data);
                    }
                    if (v < 2.0 || v >= 3.0) {
                        throw ParseError(ParseErrc::unsupported_version, line_no, h.data);
                    }
                } else if (key == "WRAP") {
                    wrapped = detail::upper(h.data) == "YES";
                }
            } else if (section == Section::well) {
                if (key == "NULL") {
                    if (!parse_double(h.data, null_value)) {
                        throw ParseError(ParseErrc::non_numeric_token, line_no, "NULL " + h.data);
                    }
                } else if (key == "WELL") {
                    well_name = h.data;
                }
            } else {
                curve_defs.push_back(std::move(h));
            }
            continue;
        }

        if (section != Section::ascii) continue;

        const std::size_t ncurves = curve_defs.size();
        std::istringstream tokens{std::string(line)};
        std::string tok;
        std::size_t count = 0;
        if (pending.values.empty()) pending.line = line_no;
        while (tokens >> tok) {
            double v;
            if (!parse_double(tok, v)) throw ParseError(ParseErrc::non_numeric_token, line_no, tok);
            pending.values.push_back(v);
            ++count;
            if (wrapped && pending.values.size() == ncurves) {
                rows.push_back(std::move(pending));
                pending = Row{{}, line_no};
            }
        }
        if (!wrapped) {
            if (count != ncurves) {
                throw ParseError(ParseErrc::curve_count_mismatch, line_no,
                                 "expected " + std::to_string(ncurves) + " values, found " +
                                     std::to_string(count));
            }
            rows.push_back(std::move(pending));
            pending = Row{{}, 0};
        }
    }

    if (!seen_ascii) throw ParseError(ParseErrc::missing_ascii_section, 0, "");
    if (curve_defs.empty()) throw ParseError(ParseErrc::missing_curve_section, 0, "no curves defined");
    if (!pending.values.empty()) {
        throw ParseError(ParseErrc::curve_count_mismatch, line_no,
                         "wrapped data ends with a partial row of " +
                             std::to_string(pending.values.size()) + " values");
    }

    // Depth direction is fixed by the first pair of distinct depths.
    std::vector<std::size_t> kept;
    int direction = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (kept.empty()) {
            kept.push_back(i);
            continue;
        }
        const double prev = rows[kept.back()].values[0];
        const double cur = rows[i].values[0];
        if (cur == prev) {
            if (warnings) {
                warnings->push_back("duplicate depth " + format_double(cur) + " at line " +
                                    std::to_string(rows[i].line) + " ignored");
            }
            continue;
        }
        const int step = cur > prev ? 1 : -1;
        if (direction == 0) direction = step;
        if (step != direction) {
            throw ParseError(ParseErrc::non_monotone_depth, rows[i].line,
                             format_double(prev) + " then " + format_double(cur));
        }
        kept.push_back(i);
    }
    if (direction < 0) std::reverse(kept.begin(), kept.end());

    const bool feet = detail::is_feet(curve_defs.front().unit);
    std::vector<double> depth;
    depth.reserve(kept.size());
    for (auto i : kept) {
        const double d = rows[i].values[0];
        depth.push_back(feet ? d * kFeetToMetres : d);
    }

    std::vector<Curve> curves;
    for (std::size_t j = 1; j < curve_defs.size(); ++j) {
        Curve c{curve_defs[j].mnemonic, curve_defs[j].unit, curve_defs[j].description, {}, {}};
        c.values.reserve(kept.size());
        c.missing.reserve(kept.size());
        for (auto i : kept) {
            const double v = rows[i].values[j];
            c.values.push_back(v);
            c.missing.push_back(v == null_value);
        }
        curves.push_back(std::move(c));
    }
    return CurveSet(std::move(well_name), std::move(depth), std::move(curves), null_value);
}

inline CurveSet parse_las(std::string_view text, std::vector<std::string>* warnings = nullptr) {
    std::istringstream in{std::string(text)};
    return parse_las(in, warnings);
}

inline CurveSet read_las_file(const std::string& path, std::vector<std::string>* warnings = nullptr) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open LAS file " + path);
    return parse_las(in, warnings);
}

/// Unwrapped LAS 2.0 text with depth in metres. Values use shortest round-trip
/// formatting, so parsing the result reproduces the arrays bit for bit.
inline std::string write_las(const CurveSet& cs) {
    std::ostringstream out;
    const auto depth = cs.depth();
    out << "~Version Information\n"
        << " VERS.   2.0 : CWLS LOG ASCII STANDARD - VERSION 2.0\n"
        << " WRAP.   NO  : ONE LINE PER DEPTH STEP\n";
    out << "~Well Information\n";
    if (!depth.empty()) {
        out << " STRT.M  " << format_double(depth.front()) << " : START DEPTH\n";
        out << " STOP.M  " << format_double(depth.back()) << " : STOP DEPTH\n";
        const double step =
            depth.size() > 1 ? (depth.back() - depth.front()) / static_cast<double>(depth.size() - 1) : 0.0;
        out << " STEP.M  " << format_sig(step, 10) << " : STEP\n";
    }
    out << " NULL.   " << format_double(cs.null_value()) << " : NULL VALUE\n";
    out << " WELL.   " << cs.well_name() << " : WELL\n";
    out << "~Curve Information\n";
    out << " DEPT.M   : DEPTH\n";
    for (const auto& c : cs.curves()) {
        out << " " << c.mnemonic << "." << c.unit << "   : " << c.description << "\n";
    }
    out << "~ASCII\n";
    for (std::size_t i = 0; i < depth.size(); ++i) {
        out << format_double(depth[i]);
        for (const auto& c : cs.curves()) {
            out << ' ' << format_double(c.is_missing(i) ? cs.null_value() : c.values[i]);
        }
        out << '\n';
    }
    return out.str();
}

/// Rows with top <= depth <= base.
inline CurveSet slice_depth(const CurveSet& cs, double top, double base) {
    if (!(top < base)) {
        throw ConfigError("depth slice needs top < base (got " + format_double(top) + ", " +
                          format_double(base) + ")");
    }
    std::vector<std::size_t> rows;
    const auto depth = cs.depth();
    for (std::size_t i = 0; i < depth.size(); ++i) {
        if (depth[i] >= top && depth[i] <= base) rows.push_back(i);
    }
    if (rows.empty()) {
        throw InputError("depth slice [" + format_double(top) + ", " + format_double(base) +
                         "] contains no samples");
    }
    return cs.select_rows(rows);
}

/// `depth,<mnemonic>...` with missing samples as empty fields.
inline std::string to_csv(const CurveSet& cs) {
    std::vector<std::string> header{"depth"};
    for (const auto& c : cs.curves()) header.push_back(c.mnemonic);
    CsvWriter w(header);
    const auto depth = cs.depth();
    for (std::size_t i = 0; i < depth.size(); ++i) {
        std::vector<std::string> row{format_double(depth[i])};
        for (const auto& c : cs.curves()) {
            row.push_back(c.is_missing(i) ? std::string() : format_double(c.values[i]));
        }
        w.row(row);
    }
    return w.str();
}

}  // namespace efacies::las
