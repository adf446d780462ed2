#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace raonet::netio {

// Parse failures carry the 1-based line number of the offending input line;
// what() already includes it ("vertex id 2 out of range, line 4").
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct Arc {
    std::uint32_t source = 0; // 1-based vertex ids, as in the file
    std::uint32_t target = 0;
    double weight = 1.0;

    friend bool operator==(const Arc&, const Arc&) = default;
};

// Canonical in-memory form of a Pajek .net file: arcs sorted by
// (source, target) with duplicate pairs summed, *Edges lines already
// expanded into opposed arc pairs.
struct RawNetworkFile {
    std::size_t vertex_count = 0;
    std::vector<std::string> labels;
    std::vector<Arc> arcs;
    bool edge_records_present = false;

    friend bool operator==(const RawNetworkFile&, const RawNetworkFile&) = default;
};

struct PartitionFile {
    std::size_t vertex_count = 0;
    std::vector<int> group_of;
};

RawNetworkFile parse_net(std::istream& in);
void write_net(const RawNetworkFile& net, std::ostream& out);

PartitionFile parse_clu(std::istream& in, std::size_t expected_count);
void write_clu(std::span<const int> groups, std::ostream& out);

// Pajek .vec node-value vector; labels are used only for the length check.
void write_vector(std::span<const double> values, std::span<const std::string> labels,
                  std::ostream& out);

// CSV (RFC-4180 quoting, header row, LF line endings).
using Cell = std::variant<std::string, double, std::int64_t>;
using Row = std::vector<Cell>;

void write_report(std::ostream& out, std::span<const std::string> header,
                  const std::vector<Row>& rows, int precision = 6);

std::vector<std::vector<std::string>> read_csv(std::istream& in);

// Shortest decimal form that round-trips; integral values get no decimal point.
std::string format_number(double value);
// Fixed significant digits ("%.Ng").
std::string format_real(double value, int precision);

// Integral-valued doubles become integer cells so totals keep all digits.
Cell numeric_cell(double value);

} // namespace raonet::netio
