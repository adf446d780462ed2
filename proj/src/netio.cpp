#include "raonet/netio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

namespace raonet::netio {

ParseError::ParseError(const std::string& message, std::size_t line)
    : std::runtime_error(message + ", line " + std::to_string(line)), line_(line) {}

namespace {

// Strips a trailing '\r' so CRLF input parses like LF input.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_no;
    return true;
}

bool is_blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (c == '%') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::string lowercase(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::uint32_t parse_vertex_id(const std::string& tok, std::size_t vertex_count,
                              std::size_t line_no) {
    std::uint64_t id = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), id);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw ParseError("invalid vertex id '" + tok + "'", line_no);
    if (id < 1 || id > vertex_count)
        throw ParseError("vertex id " + std::to_string(id) + " out of range", line_no);
    return static_cast<std::uint32_t>(id);
}

double parse_weight(const std::string& tok, std::size_t line_no) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    double w = std::strtod(begin, &end);
    if (end != begin + tok.size())
        throw ParseError("non-numeric weight '" + tok + "'", line_no);
    if (!std::isfinite(w)) throw ParseError("non-finite weight '" + tok + "'", line_no);
    if (w < 0) throw ParseError("negative weight " + tok, line_no);
    return w;
}

void canonicalize_arcs(std::vector<Arc>& arcs) {
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
        if (a.source != b.source) return a.source < b.source;
        return a.target < b.target;
    });
    std::size_t out = 0;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (out > 0 && arcs[out - 1].source == arcs[i].source &&
            arcs[out - 1].target == arcs[i].target) {
            arcs[out - 1].weight += arcs[i].weight;
        } else {
            arcs[out++] = arcs[i];
        }
    }
    arcs.resize(out);
}

} // namespace

RawNetworkFile parse_net(std::istream& in) {
    RawNetworkFile net;
    bool have_vertices = false;

    enum class Section { none, vertices, arcs, edges };
    Section section = Section::none;

    std::string line;
    std::size_t line_no = 0;

    while (next_line(in, line, line_no)) {
        if (is_blank_or_comment(line)) continue;

        if (line[0] == '*') {
            auto tokens = split_ws(line);
            std::string keyword = lowercase(tokens[0]);
            if (keyword == "*vertices") {
                if (have_vertices) throw ParseError("duplicate *Vertices section", line_no);
                if (tokens.size() < 2)
                    throw ParseError("*Vertices requires a count", line_no);
                std::uint64_t n = 0;
                auto [p, ec] =
                    std::from_chars(tokens[1].data(), tokens[1].data() + tokens[1].size(), n);
                if (ec != std::errc() || p != tokens[1].data() + tokens[1].size() || n == 0)
                    throw ParseError("invalid vertex count '" + tokens[1] + "'", line_no);
                net.vertex_count = n;
                net.labels.resize(n);
                for (std::size_t i = 0; i < n; ++i) net.labels[i] = std::to_string(i + 1);
                have_vertices = true;
                section = Section::vertices;
            } else if (keyword == "*arcs") {
                if (!have_vertices) throw ParseError("missing *Vertices header", line_no);
                section = Section::arcs;
            } else if (keyword == "*edges") {
                if (!have_vertices) throw ParseError("missing *Vertices header", line_no);
                net.edge_records_present = true;
                section = Section::edges;
            } else {
                throw ParseError("unsupported section '" + tokens[0] + "'", line_no);
            }
            continue;
        }

        if (section == Section::none || !have_vertices)
            throw ParseError("missing *Vertices header", line_no);

        if (section == Section::vertices) {
            // id ["label"] [coordinates/attributes, ignored]
            std::size_t i = 0;
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            std::uint32_t id = parse_vertex_id(line.substr(i, j - i), net.vertex_count, line_no);
            while (j < line.size() && std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            if (j < line.size()) {
                if (line[j] == '"') {
                    std::size_t close = line.find('"', j + 1);
                    if (close == std::string::npos)
                        throw ParseError("unterminated label quote", line_no);
                    net.labels[id - 1] = line.substr(j + 1, close - j - 1);
                } else {
                    std::size_t k = j;
                    while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k])))
                        ++k;
                    net.labels[id - 1] = line.substr(j, k - j);
                }
            }
        } else {
            // src dst [weight]; trailing Pajek line attributes ignored
            auto tokens = split_ws(line);
            if (tokens.size() < 2) throw ParseError("arc line needs source and target", line_no);
            std::uint32_t src = parse_vertex_id(tokens[0], net.vertex_count, line_no);
            std::uint32_t dst = parse_vertex_id(tokens[1], net.vertex_count, line_no);
            double w = tokens.size() >= 3 ? parse_weight(tokens[2], line_no) : 1.0;
            if (section == Section::arcs) {
                net.arcs.push_back({src, dst, w});
            } else {
                net.arcs.push_back({src, dst, w});
                if (src != dst) net.arcs.push_back({dst, src, w});
            }
        }
    }

    if (!have_vertices) throw ParseError("missing *Vertices header", line_no);
    canonicalize_arcs(net.arcs);
    return net;
}

void write_net(const RawNetworkFile& net, std::ostream& out) {
    out << "*Vertices " << net.vertex_count << "\n";
    for (std::size_t i = 0; i < net.vertex_count; ++i)
        out << (i + 1) << " \"" << net.labels[i] << "\"\n";

    std::vector<Arc> arcs = net.arcs;
    canonicalize_arcs(arcs);

    out << "*Arcs\n";
    for (const Arc& a : arcs)
        out << a.source << " " << a.target << " " << format_number(a.weight) << "\n";
    // An empty *Edges header preserves the section flag across round-trips;
    // Pajek itself writes both section headers.
    if (net.edge_records_present) out << "*Edges\n";
    if (!out) throw std::runtime_error("network write failed");
}

PartitionFile parse_clu(std::istream& in, std::size_t expected_count) {
    PartitionFile part;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;

    while (next_line(in, line, line_no)) {
        if (is_blank_or_comment(line)) continue;
        if (!have_header) {
            auto tokens = split_ws(line);
            if (tokens.empty() || lowercase(tokens[0]) != "*vertices" || tokens.size() < 2)
                throw ParseError("partition must begin with *Vertices N", line_no);
            std::uint64_t n = 0;
            auto [p, ec] =
                std::from_chars(tokens[1].data(), tokens[1].data() + tokens[1].size(), n);
            if (ec != std::errc() || p != tokens[1].data() + tokens[1].size() || n == 0)
                throw ParseError("invalid vertex count '" + tokens[1] + "'", line_no);
            part.vertex_count = n;
            if (part.vertex_count != expected_count)
                throw ParseError("partition size " + std::to_string(part.vertex_count) +
                                     " != network size " + std::to_string(expected_count),
                                 line_no);
            have_header = true;
            continue;
        }
        auto tokens = split_ws(line);
        int g = 0;
        auto [p, ec] = std::from_chars(tokens[0].data(), tokens[0].data() + tokens[0].size(), g);
        if (ec != std::errc() || p != tokens[0].data() + tokens[0].size())
            throw ParseError("non-integer partition entry '" + tokens[0] + "'", line_no);
        part.group_of.push_back(g);
    }

    if (!have_header) throw ParseError("partition must begin with *Vertices N", line_no);
    if (part.group_of.size() != part.vertex_count)
        throw ParseError("expected " + std::to_string(part.vertex_count) + " entries, found " +
                             std::to_string(part.group_of.size()),
                         line_no);
    return part;
}

void write_clu(std::span<const int> groups, std::ostream& out) {
    out << "*Vertices " << groups.size() << "\n";
    for (int g : groups) out << g << "\n";
    if (!out) throw std::runtime_error("partition write failed");
}

void write_vector(std::span<const double> values, std::span<const std::string> labels,
                  std::ostream& out) {
    if (values.size() != labels.size())
        throw std::invalid_argument("vector length " + std::to_string(values.size()) +
                                    " != node count " + std::to_string(labels.size()));
    out << "*Vertices " << values.size() << "\n";
    for (double v : values) out << format_number(v) << "\n";
    if (!out) throw std::runtime_error("vector write failed");
}

std::string format_number(double value) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, p);
}

std::string format_real(double value, int precision) {
    char buf[64];
    int len = std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    return std::string(buf, static_cast<std::size_t>(len));
}

Cell numeric_cell(double value) {
    if (std::isfinite(value) && value == std::floor(value) && std::fabs(value) < 9e15)
        return Cell{static_cast<std::int64_t>(value)};
    return Cell{value};
}

namespace {

void write_csv_field(std::ostream& out, const std::string& s) {
    bool quote = s.find_first_of(",\"\r\n") != std::string::npos;
    if (!quote) {
        out << s;
        return;
    }
    out << '"';
    for (char c : s) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

} // namespace

void write_report(std::ostream& out, std::span<const std::string> header,
                  const std::vector<Row>& rows, int precision) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        write_csv_field(out, header[i]);
    }
    out << '\n';
    for (const Row& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            if (const auto* s = std::get_if<std::string>(&row[i]))
                write_csv_field(out, *s);
            else if (const auto* d = std::get_if<double>(&row[i]))
                out << format_real(*d, precision);
            else
                out << std::get<std::int64_t>(row[i]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("report write failed");
}

std::vector<std::vector<std::string>> read_csv(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool row_started = false;

    char c;
    while (in.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field += '"';
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            in_quotes = true;
            row_started = true;
            break;
        case ',':
            row.push_back(std::move(field));
            field.clear();
            row_started = true;
            break;
        case '\r':
            break;
        case '\n':
            if (row_started || !field.empty()) {
                row.push_back(std::move(field));
                field.clear();
                rows.push_back(std::move(row));
                row.clear();
                row_started = false;
            }
            break;
        default:
            field += c;
            row_started = true;
            break;
        }
    }
    if (row_started || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace raonet::netio
