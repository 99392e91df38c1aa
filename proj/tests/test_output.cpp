#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "resonance/output.hpp"

using namespace resonance;

namespace {
std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}
}  // namespace

TEST_CASE("csv formatting is fixed and byte-stable") {
    std::vector<std::vector<double>> rows = {{1.0, -0.5, 3.141592653589793},
                                             {1e-10, 2.0 / 3.0, 1234567.0}};
    std::string a = output::format_csv({"x", "y", "z"}, rows);
    std::string b = output::format_csv({"x", "y", "z"}, rows);
    CHECK(a == b);
    CHECK(a ==
          "x,y,z\n"
          "1,-0.5,3.14159265358979\n"
          "1e-10,0.666666666666667,1234567\n");
    CHECK(a.find('\r') == std::string::npos);
}

TEST_CASE("csv writes byte-identical files") {
    std::vector<std::vector<double>> rows = {{0.1, 0.2}, {0.3, 0.4}};
    output::write_csv("/tmp/resonance_test_a.csv", {"u", "v"}, rows);
    output::write_csv("/tmp/resonance_test_b.csv", {"u", "v"}, rows);
    CHECK(slurp("/tmp/resonance_test_a.csv") == slurp("/tmp/resonance_test_b.csv"));
    CHECK(slurp("/tmp/resonance_test_a.csv") == output::format_csv({"u", "v"}, rows));
    std::remove("/tmp/resonance_test_a.csv");
    std::remove("/tmp/resonance_test_b.csv");
}

TEST_CASE("svg plot has the fixed viewport and one polyline") {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i <= 50; ++i) {
        double x = i / 50.0;
        pts.push_back({x, x * x});
    }
    output::write_svg_polyline("/tmp/resonance_test.svg", pts, "x", "y");
    std::string svg = slurp("/tmp/resonance_test.svg");
    CHECK(svg.find("width=\"800\" height=\"600\"") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
    // Axis labels and tick text present.
    CHECK(svg.find(">x</text>") != std::string::npos);
    CHECK(svg.find(">y</text>") != std::string::npos);
    std::remove("/tmp/resonance_test.svg");
}

TEST_CASE("svg rejects an empty point list") {
    CHECK_THROWS(output::write_svg_polyline("/tmp/none.svg", {}, "x", "y"));
}
