#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "raonet/netio.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace raonet::netio;

namespace {

RawNetworkFile parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse_net(in);
}

std::string write_string(const RawNetworkFile& net) {
    std::ostringstream out;
    write_net(net, out);
    return out.str();
}

} // namespace

TEST_CASE("minimal well-formed file") {
    auto net = parse_string("*Vertices 2\n1 \"A\"\n2 \"B\"\n*Arcs\n1 2 3");
    CHECK(net.vertex_count == 2);
    CHECK(net.labels == std::vector<std::string>{"A", "B"});
    REQUIRE(net.arcs.size() == 1);
    CHECK(net.arcs[0] == Arc{1, 2, 3.0});
    CHECK_FALSE(net.edge_records_present);
}

TEST_CASE("edges expand to two opposed arcs") {
    auto net = parse_string("*Vertices 2\n1 \"A\"\n2 \"B\"\n*Edges\n1 2 5");
    REQUIRE(net.arcs.size() == 2);
    CHECK(net.arcs[0] == Arc{1, 2, 5.0});
    CHECK(net.arcs[1] == Arc{2, 1, 5.0});
    CHECK(net.edge_records_present);
}

TEST_CASE("vertex id out of range reports the line") {
    try {
        parse_string("*Vertices 1\n1 \"A\"\n*Arcs\n1 2 1");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
        CHECK(std::string(e.what()) == "vertex id 2 out of range, line 4");
    }
}

TEST_CASE("duplicate arcs sum") {
    auto twice = parse_string("*Vertices 2\n1 \"A\"\n2 \"B\"\n*Arcs\n1 2 1\n1 2 1");
    auto once = parse_string("*Vertices 2\n1 \"A\"\n2 \"B\"\n*Arcs\n1 2 2");
    CHECK(twice == once);
}

TEST_CASE("section keywords are case-insensitive") {
    auto net = parse_string("*vertices 2\n1 \"A\"\n2 \"B\"\n*arcs\n1 2");
    REQUIRE(net.arcs.size() == 1);
    CHECK(net.arcs[0].weight == 1.0); // default weight
}

TEST_CASE("comments, blanks, coordinates, unquoted labels") {
    auto net = parse_string("% header\n*Vertices 3\n1 \"A\" 0.1 0.2 box\n\n2 B\n*Arcs\n% c\n3 1 2");
    CHECK(net.labels == std::vector<std::string>{"A", "B", "3"}); // missing line keeps default
    REQUIRE(net.arcs.size() == 1);
    CHECK(net.arcs[0] == Arc{3, 1, 2.0});
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_string("*Arcs\n1 2"), ParseError);              // missing header
    CHECK_THROWS_AS(parse_string("1 \"A\""), ParseError);                 // data before header
    CHECK_THROWS_AS(parse_string("*Vertices 2\n1 \"A\"\n2 \"B\"\n*Arcs\n1 2 abc"), ParseError);
    CHECK_THROWS_AS(parse_string("*Vertices 2\n1 \"A\"\n2 \"B\"\n*Arcs\n1 2 -1"), ParseError);
    CHECK_THROWS_AS(parse_string("*Vertices 2\n1 \"A\"\n*Matrix\n0 1"), ParseError);
    CHECK_THROWS_AS(parse_string(""), ParseError);
}

TEST_CASE("integral weights have no decimal point") {
    RawNetworkFile net;
    net.vertex_count = 2;
    net.labels = {"A", "B"};
    net.arcs = {{1, 2, 3.0}};
    std::string text = write_string(net);
    CHECK(text.find("1 2 3\n") != std::string::npos);
    CHECK(text.find("3.0") == std::string::npos);
}

TEST_CASE("empty arc section still writes the header") {
    RawNetworkFile net;
    net.vertex_count = 2;
    net.labels = {"A", "B"};
    std::string text = write_string(net);
    CHECK(text == "*Vertices 2\n1 \"A\"\n2 \"B\"\n*Arcs\n");
}

TEST_CASE("parsing is total: every input parses or throws a line-numbered error") {
    namespace fs = std::filesystem;
    for (const auto& entry : fs::directory_iterator(FIXTURE_DIR)) {
        if (entry.path().extension() != ".net") continue;
        std::ifstream in(entry.path());
        try {
            auto net = parse_net(in);
            CHECK(net.vertex_count > 0);
            CHECK(net.labels.size() == net.vertex_count);
            for (const Arc& a : net.arcs) {
                CHECK(a.source >= 1);
                CHECK(a.source <= net.vertex_count);
                CHECK(a.target >= 1);
                CHECK(a.target <= net.vertex_count);
                CHECK(a.weight >= 0);
            }
        } catch (const ParseError& e) {
            CHECK(e.line() > 0);
        }
    }
}

TEST_CASE("round-trip over the fixture corpus is field-identical") {
    namespace fs = std::filesystem;
    std::size_t checked = 0;
    for (const auto& entry : fs::directory_iterator(FIXTURE_DIR)) {
        if (entry.path().extension() != ".net") continue;
        std::ifstream in(entry.path());
        RawNetworkFile first = parse_net(in);
        RawNetworkFile second = parse_string(write_string(first));
        CAPTURE(entry.path().string());
        CHECK(first == second);
        ++checked;
    }
    CHECK(checked >= 7);
}

TEST_CASE("round-trip preserves awkward weights exactly") {
    RawNetworkFile net;
    net.vertex_count = 2;
    net.labels = {"with \"quotes\" inside? no, commas, though", "B"};
    net.labels[0] = "label, with comma";
    net.arcs = {{1, 2, 0.1}, {2, 1, 2.718281828459045}};
    auto back = parse_string(write_string(net));
    CHECK(back.arcs[0].weight == 0.1);
    CHECK(back.arcs[1].weight == 2.718281828459045);
    CHECK(back.labels[0] == "label, with comma");
}

TEST_CASE("partition parsing") {
    std::istringstream ok("*Vertices 3\n1\n1\n2\n");
    auto part = parse_clu(ok, 3);
    CHECK(part.group_of == std::vector<int>{1, 1, 2});

    std::istringstream missing("*Vertices 3\n1\n1\n");
    try {
        parse_clu(missing, 3);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("expected 3 entries, found 2") != std::string::npos);
    }

    std::istringstream mismatch("*Vertices 2\n1\n2\n");
    try {
        parse_clu(mismatch, 3);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("partition size 2 != network size 3") !=
              std::string::npos);
    }

    std::istringstream junk("*Vertices 2\n1\nx\n");
    CHECK_THROWS_AS(parse_clu(junk, 2), ParseError);
}

TEST_CASE("vec export") {
    std::ostringstream out;
    std::vector<double> values = {1.0, 2.5};
    std::vector<std::string> labels = {"A", "B"};
    write_vector(values, labels, out);
    CHECK(out.str() == "*Vertices 2\n1\n2.5\n");

    std::ostringstream single;
    std::vector<double> zero = {0.0};
    std::vector<std::string> one_label = {"A"};
    write_vector(zero, one_label, single);
    CHECK(single.str() == "*Vertices 1\n0\n");

    std::ostringstream bad;
    std::vector<double> three = {1, 2, 3};
    CHECK_THROWS_AS(write_vector(three, labels, bad), std::invalid_argument);
}

TEST_CASE("report CSV schema and quoting") {
    std::vector<std::string> header = {"node",      "label",     "delta_cited", "d2_cited",
                                       "delta_citing", "d2_citing", "sum_cited",   "sum_citing"};
    std::vector<Row> rows = {{std::int64_t{1}, std::string("A"), 0.5, 2.0, 0.25, 4.0 / 3.0,
                              numeric_cell(12.0), numeric_cell(8.0)}};
    std::ostringstream out;
    write_report(out, header, rows);
    std::string text = out.str();
    CHECK(text.substr(0, text.find('\n')) ==
          "node,label,delta_cited,d2_cited,delta_citing,d2_citing,sum_cited,sum_citing");
    CHECK(text.find("1,A,0.5,2,0.25,1.33333,12,8\n") != std::string::npos);

    std::ostringstream empty;
    write_report(empty, header, {});
    CHECK(empty.str() ==
          "node,label,delta_cited,d2_cited,delta_citing,d2_citing,sum_cited,sum_citing\n");

    std::ostringstream quoted;
    std::vector<std::string> h2 = {"label"};
    write_report(quoted, h2, {{std::string("J Doc, Suppl")}});
    CHECK(quoted.str() == "label\n\"J Doc, Suppl\"\n");
}

TEST_CASE("CSV reader handles quotes and CRLF") {
    std::istringstream in("a,b\r\n\"x,\"\"y\",2\r\n\"multi\nline\",3\n");
    auto rows = read_csv(in);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][0] == "x,\"y");
    CHECK(rows[2][0] == "multi\nline");
    CHECK(rows[2][1] == "3");
}

TEST_CASE("number formatting") {
    CHECK(format_number(3.0) == "3");
    CHECK(format_number(2.5) == "2.5");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_real(0.123456789, 6) == "0.123457");
    CHECK(format_real(501.5815, 6) == "501.582");
}
