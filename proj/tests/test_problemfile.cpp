#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "resonance/problemfile.hpp"

using namespace resonance;
using nlohmann::json;
using problemfile::Kind;
using problemfile::LoadError;
using problemfile::ProblemFile;

#ifndef PROBLEMS_DIR
#define PROBLEMS_DIR "problems"
#endif

TEST_CASE("all shipped problem files load") {
    for (const char* name :
         {"forced_oscillator.json", "bounded_blocks.json", "scalar_atan.json",
          "semilinear_pair.json", "pendulum_atan.json", "curve_example.json",
          "tune_family.json"}) {
        CAPTURE(name);
        CHECK_NOTHROW(ProblemFile::load(std::string(PROBLEMS_DIR) + "/" + name));
    }
}

TEST_CASE("period accepts an expression string") {
    auto pf = ProblemFile::from_json(json{{"kind", "scalar"},
                                          {"period", "2*pi"},
                                          {"a", "sin(t)"},
                                          {"f", "sin(t)"},
                                          {"g", "tanh(x)"},
                                          {"g_minus_inf", -1},
                                          {"g_plus_inf", 1}});
    CHECK(pf.period() == doctest::Approx(2 * M_PI));
    CHECK(pf.kind() == Kind::Scalar);
}

TEST_CASE("unknown fields are rejected") {
    json j{{"kind", "scalar"},      {"period", "2*pi"},    {"a", "sin(t)"},
           {"f", "sin(t)"},         {"g", "tanh(x)"},      {"g_minus_inf", -1},
           {"g_plus_inf", 1},       {"unexpected", 3}};
    CHECK_THROWS_AS(ProblemFile::from_json(j), LoadError);
    // A field belonging to another kind is also rejected.
    j.erase("unexpected");
    j["lambda"] = 1.0;
    CHECK_THROWS_AS(ProblemFile::from_json(j), LoadError);
}

TEST_CASE("malformed expressions fail at load with context") {
    json j{{"kind", "scalar"},   {"period", "2*pi"},  {"a", "sin(t"},
           {"f", "sin(t)"},      {"g", "tanh(x)"},    {"g_minus_inf", -1},
           {"g_plus_inf", 1}};
    try {
        ProblemFile::from_json(j);
        FAIL("expected LoadError");
    } catch (const LoadError& ex) {
        CHECK(std::string(ex.what()).find("sin(t") != std::string::npos);
    }
}

TEST_CASE("missing required fields are reported") {
    CHECK_THROWS_AS(ProblemFile::from_json(json{{"kind", "scalar"}}), LoadError);
    CHECK_THROWS_AS(ProblemFile::from_json(json{{"period", 1.0}}), LoadError);
    CHECK_THROWS_AS(ProblemFile::from_json(json{{"kind", "nonsense"}, {"period", 1.0}}),
                    LoadError);
}

TEST_CASE("parameters bind into expressions and can be overridden") {
    auto pf = ProblemFile::load(std::string(PROBLEMS_DIR) + "/scalar_atan.json");
    auto p0 = pf.scalar_problem();
    CHECK(p0.f(0.0) == doctest::Approx(0.0));
    pf.set_param("nu", 1.2);
    auto p1 = pf.scalar_problem();
    CHECK(p1.f(0.0) == doctest::Approx(1.2));
    CHECK(p1.f(M_PI / 2) == doctest::Approx(2.2));
}

TEST_CASE("linear system in source form is negated to canonical") {
    json j{{"kind", "linear-system"}, {"period", "2*pi"}, {"dimension", 2}, {"form", "lhs"}};
    j["matrix"] = json::array({json::array({"sin(t)", "0"}), json::array({"0", "1"})});
    j["forcing"] = json::array({"0", "0"});
    auto pf = ProblemFile::from_json(j);
    auto sys = pf.linear_system();
    CHECK(sys.coefficient(M_PI / 2)(0, 0) == doctest::Approx(-1.0));
    CHECK(sys.coefficient(0.0)(1, 1) == doctest::Approx(-1.0));
}

TEST_CASE("linear family rebinds the tuned parameter") {
    auto pf = ProblemFile::load(std::string(PROBLEMS_DIR) + "/tune_family.json");
    auto family = pf.linear_family("kappa");
    CHECK(family(0.5).coefficient(0.0)(0, 0) == doctest::Approx(0.6));
    CHECK(family(-0.5).coefficient(0.0)(0, 0) == doctest::Approx(-0.4));
    CHECK_THROWS_AS(pf.linear_family("missing"), LoadError);
}

TEST_CASE("semilinear problem builds the canonical linear part") {
    auto pf = ProblemFile::load(std::string(PROBLEMS_DIR) + "/semilinear_pair.json");
    auto sp = pf.semilinear_problem();
    // a_matrix diag(sin t, -sin t) stored as M = -A.
    CHECK(sp.linear_part.coefficient(M_PI / 2)(0, 0) == doctest::Approx(-1.0));
    CHECK(sp.linear_part.coefficient(M_PI / 2)(1, 1) == doctest::Approx(1.0));
    Eigen::VectorXd x(2);
    x << 1.0, 1.0;
    CHECK(sp.nonlinearity(x)(0) == doctest::Approx((2.0 / M_PI) * std::atan(2.0)));
    CHECK(sp.nonlinearity(x)(1) == doctest::Approx(0.0));
}

TEST_CASE("kind mismatch is rejected at the accessor") {
    auto pf = ProblemFile::load(std::string(PROBLEMS_DIR) + "/scalar_atan.json");
    CHECK_THROWS_AS(pf.linear_system(), LoadError);
    CHECK_THROWS_AS(pf.pendulum_problem(), LoadError);
}
