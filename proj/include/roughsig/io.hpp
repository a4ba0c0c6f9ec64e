#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "roughsig/errors.hpp"
#include "roughsig/path.hpp"
#include "roughsig/vector_field.hpp"

namespace roughsig {

// 17 significant digits: enough to reproduce any 64-bit float exactly on
// parse-back, locale independent.
inline std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

inline bool parse_field(std::string_view s, double& out) {
    if (s.empty()) return false;
    const char* last = s.data() + s.size();
    auto res = std::from_chars(s.data(), last, out);
    return res.ec == std::errc() && res.ptr == last;
}

// Rows of numbers, rectangular, with 1-based line/column positions carried
// into diagnostics. A non-numeric first line is treated as a header.
struct CsvTable {
    std::vector<std::vector<double>> rows;
    std::vector<long> line_of_row;
};

inline CsvTable read_csv_table(std::istream& in, const std::string& name) {
    CsvTable table;
    std::string line;
    long line_no = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        auto fields = split_csv(sv);
        std::vector<double> row(fields.size());
        bool numeric = true;
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (!parse_field(fields[c], row[c])) {
                if (first_content) {
                    numeric = false; // header line
                    break;
                }
                throw InputError(name + ": cannot parse '" + std::string(fields[c]) +
                                     "' as a number",
                                 line_no, static_cast<long>(c) + 1);
            }
        }
        first_content = false;
        if (!numeric) continue;
        if (!table.rows.empty() && row.size() != table.rows.front().size())
            throw InputError(name + ": expected " +
                                 std::to_string(table.rows.front().size()) +
                                 " fields, found " + std::to_string(row.size()),
                             line_no);
        table.rows.push_back(std::move(row));
        table.line_of_row.push_back(line_no);
    }
    return table;
}

} // namespace detail

// CSV layout: column 0 is time unless has_time is false, in which case every
// column is a coordinate and the grid is uniform on [0,1]. A header line is
// skipped when present.
inline PathSamples read_path_csv(std::istream& in, bool has_time = true,
                                 const std::string& name = "path") {
    auto table = detail::read_csv_table(in, name);
    if (table.rows.size() < 2)
        throw InputError(name + ": a path needs at least two data rows");
    const std::size_t width = table.rows.front().size();
    const std::size_t first_coord = has_time ? 1 : 0;
    if (width < first_coord + 1)
        throw InputError(name + ": rows have no coordinate columns",
                         table.line_of_row.front());

    PathSamples p;
    p.times.reserve(table.rows.size());
    p.values.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (has_time) {
            p.times.push_back(row[0]);
            if (r > 0 && !(p.times[r] > p.times[r - 1]))
                throw InputError(name + ": times not strictly increasing",
                                 table.line_of_row[r], 1);
        }
        p.values.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(first_coord),
                              row.end());
    }
    if (!has_time) p.times = uniform_times(p.values.size());
    return p;
}

inline PathSamples read_path_csv_file(const std::string& path, bool has_time = true) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return read_path_csv(in, has_time, path);
}

inline void write_path_csv(std::ostream& out, const PathSamples& x,
                           bool include_time = true, bool header = true) {
    if (header) {
        if (include_time) out << "t";
        for (int c = 1; c <= x.dim(); ++c)
            out << (include_time || c > 1 ? "," : "") << "x" << c;
        out << "\n";
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (include_time) out << format_double(x.times[i]);
        for (std::size_t c = 0; c < x.values[i].size(); ++c) {
            if (include_time || c > 0) out << ",";
            out << format_double(x.values[i][c]);
        }
        out << "\n";
    }
}

inline void write_path_csv_file(const std::string& path, const PathSamples& x,
                                bool include_time = true, bool header = true) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open " + path + " for writing");
    write_path_csv(out, x, include_time, header);
}

// Flattens every numeric field in the file, in row-major order; used for
// initial conditions and other small vectors.
inline std::vector<double> read_vector_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    auto table = detail::read_csv_table(in, path);
    std::vector<double> out;
    for (const auto& row : table.rows) out.insert(out.end(), row.begin(), row.end());
    if (out.empty()) throw InputError(path + ": no numeric data");
    return out;
}

// nlohmann's writer picks the shortest round-trip form; reports pin the
// 17-significant-digit contract instead, so serialization is done here.
namespace detail {

inline void dump_json_rec(const nlohmann::json& j, std::string& out, int indent,
                          int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * static_cast<std::size_t>(depth + 1), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent) * static_cast<std::size_t>(depth), ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::null: out += "null"; break;
        case nlohmann::json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
        case nlohmann::json::value_t::number_integer:
            out += std::to_string(j.get<std::int64_t>());
            break;
        case nlohmann::json::value_t::number_unsigned:
            out += std::to_string(j.get<std::uint64_t>());
            break;
        case nlohmann::json::value_t::number_float: {
            double v = j.get<double>();
            if (std::isfinite(v)) out += format_double(v);
            else out += "null";
            break;
        }
        case nlohmann::json::value_t::string: out += j.dump(); break;
        case nlohmann::json::value_t::array: {
            if (j.empty()) { out += "[]"; break; }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                out += pad;
                dump_json_rec(j[i], out, indent, depth + 1);
                if (i + 1 < j.size()) out += ",";
                out += "\n";
            }
            out += close_pad + "]";
            break;
        }
        case nlohmann::json::value_t::object: {
            if (j.empty()) { out += "{}"; break; }
            out += "{\n";
            std::size_t i = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++i) {
                out += pad + nlohmann::json(it.key()).dump() + ": ";
                dump_json_rec(it.value(), out, indent, depth + 1);
                if (i + 1 < j.size()) out += ",";
                out += "\n";
            }
            out += close_pad + "}";
            break;
        }
        default: out += "null"; break;
    }
}

} // namespace detail

inline std::string dump_json(const nlohmann::json& j, int indent = 2) {
    std::string out;
    detail::dump_json_rec(j, out, indent, 0);
    return out;
}

inline void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open " + path + " for writing");
    out << dump_json(j) << "\n";
}

inline nlohmann::json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

namespace detail {

inline int json_int(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw InputError(std::string("field description needs integer '") + key + "'");
    return j[key].get<int>();
}

} // namespace detail

// Field files carry {"kind": "linear", "state_dim": e, "driver_dim": d,
// "matrices": [d matrices, each e rows of e], "offsets": [d vectors]} or
// {"kind": "polynomial", ..., "terms": [{"out", "coord", "c", "powers"}]}.
inline std::unique_ptr<VectorField> vector_field_from_json(const nlohmann::json& spec) {
    if (!spec.is_object()) throw InputError("field description must be a JSON object");
    const std::string kind = spec.value("kind", "");
    const int e = detail::json_int(spec, "state_dim");
    const int d = detail::json_int(spec, "driver_dim");
    if (e < 1 || d < 1) throw InputError("field dimensions must be positive");

    if (kind == "linear") {
        if (!spec.contains("matrices") || !spec["matrices"].is_array())
            throw InputError("linear field needs a 'matrices' array");
        std::vector<std::vector<double>> mats;
        for (const auto& m : spec["matrices"]) {
            std::vector<double> flat;
            if (!m.is_array() || m.size() != static_cast<std::size_t>(e))
                throw InputError("each matrix must have one row per state dimension");
            for (const auto& row : m) {
                if (!row.is_array() || row.size() != static_cast<std::size_t>(e))
                    throw InputError("matrix rows must have state_dim entries");
                for (const auto& v : row) flat.push_back(v.get<double>());
            }
            mats.push_back(std::move(flat));
        }
        std::vector<std::vector<double>> offsets;
        if (spec.contains("offsets")) {
            for (const auto& b : spec["offsets"])
                offsets.push_back(b.get<std::vector<double>>());
        }
        return std::make_unique<LinearField>(e, d, std::move(mats), std::move(offsets));
    }
    if (kind == "polynomial") {
        if (!spec.contains("terms") || !spec["terms"].is_array())
            throw InputError("polynomial field needs a 'terms' array");
        std::vector<PolynomialField::Term> terms;
        for (const auto& t : spec["terms"]) {
            PolynomialField::Term term;
            term.out = detail::json_int(t, "out");
            term.coord = detail::json_int(t, "coord");
            if (!t.contains("c") || !t["c"].is_number())
                throw InputError("polynomial term needs a numeric 'c'");
            term.c = t["c"].get<double>();
            if (!t.contains("powers") || !t["powers"].is_array())
                throw InputError("polynomial term needs a 'powers' array");
            term.powers = t["powers"].get<std::vector<int>>();
            terms.push_back(std::move(term));
        }
        return std::make_unique<PolynomialField>(e, d, std::move(terms));
    }
    throw InputError("unknown field kind '" + kind + "'");
}

} // namespace roughsig
