#include "resonance/problemfile.hpp"

#include <fstream>
#include <set>

namespace resonance::problemfile {

using nlohmann::json;

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::LinearSystem: return "linear-system";
        case Kind::Scalar: return "scalar";
        case Kind::SystemSemilinear: return "system-semilinear";
        case Kind::Pendulum: return "pendulum";
        case Kind::CurveFirstOrder: return "curve-first-order";
        case Kind::CurveSecondOrder: return "curve-second-order";
    }
    return "?";
}

namespace {

Kind kind_from_name(const std::string& s) {
    for (Kind k : {Kind::LinearSystem, Kind::Scalar, Kind::SystemSemilinear, Kind::Pendulum,
                   Kind::CurveFirstOrder, Kind::CurveSecondOrder})
        if (s == kind_name(k)) return k;
    throw LoadError("unknown problem kind '" + s + "'");
}

const std::set<std::string>& allowed_keys(Kind k) {
    static const std::set<std::string> common = {"kind", "period", "params", "rank_tol"};
    static const std::map<Kind, std::set<std::string>> extra = {
        {Kind::LinearSystem, {"dimension", "matrix", "forcing", "form"}},
        {Kind::Scalar, {"a", "f", "g", "g_minus_inf", "g_plus_inf", "g_increasing"}},
        {Kind::SystemSemilinear, {"dimension", "a_matrix", "nonlinearity", "alpha", "beta", "forcing"}},
        {Kind::Pendulum, {"lambda", "g", "g_bound", "g_minus_inf", "g_plus_inf", "mu", "e"}},
        {Kind::CurveFirstOrder, {"a", "g", "e"}},
        {Kind::CurveSecondOrder, {"lambda", "g", "e"}},
    };
    static std::map<Kind, std::set<std::string>> merged;
    if (merged.empty())
        for (auto& [kk, s] : extra) {
            merged[kk] = common;
            merged[kk].insert(s.begin(), s.end());
        }
    return merged[k];
}

double number_or_expression(const json& v, const std::string& what) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        try {
            return expr::parse(v.get<std::string>(), {"_"}).eval(std::vector<double>{0.0});
        } catch (const std::exception& ex) {
            throw LoadError(what + ": " + ex.what());
        }
    }
    throw LoadError(what + " must be a number or an expression string");
}

std::string require_string(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_string())
        throw LoadError("missing or non-string field '" + key + "'");
    return j[key].get<std::string>();
}

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number())
        throw LoadError("missing or non-numeric field '" + key + "'");
    return j[key].get<double>();
}

}  // namespace

ProblemFile ProblemFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open problem file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& ex) {
        throw LoadError("malformed JSON in '" + path + "': " + ex.what());
    }
    return from_json(j);
}

ProblemFile ProblemFile::from_json(const json& j) {
    if (!j.is_object()) throw LoadError("problem file must be a JSON object");
    ProblemFile pf;
    pf.kind_ = kind_from_name(require_string(j, "kind"));
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed_keys(pf.kind_).count(it.key()))
            throw LoadError("unknown field '" + it.key() + "' for kind " +
                            kind_name(pf.kind_));
    if (!j.contains("period")) throw LoadError("missing field 'period'");
    pf.period_ = number_or_expression(j["period"], "period");
    if (pf.period_ <= 0) throw LoadError("period must be positive");
    if (j.contains("dimension")) pf.dimension_ = j["dimension"].get<int>();
    if (j.contains("rank_tol")) pf.rank_tol_ = require_number(j, "rank_tol");
    if (j.contains("params")) {
        if (!j["params"].is_object()) throw LoadError("'params' must be an object");
        for (auto it = j["params"].begin(); it != j["params"].end(); ++it)
            pf.params_[it.key()] = it.value().get<double>();
    }
    pf.raw_ = j;

    // Validate every expression at load by building the typed problem once.
    switch (pf.kind_) {
        case Kind::LinearSystem: pf.linear_system(); break;
        case Kind::Scalar: pf.scalar_problem(); break;
        case Kind::SystemSemilinear: pf.semilinear_problem(); break;
        case Kind::Pendulum: pf.pendulum_problem(); break;
        case Kind::CurveFirstOrder:
        case Kind::CurveSecondOrder: pf.curve_problem(); break;
    }
    return pf;
}

void ProblemFile::set_param(const std::string& name, double value) {
    params_[name] = value;
}

std::vector<std::string> ProblemFile::param_names() const {
    std::vector<std::string> names;
    for (const auto& [k, v] : params_) names.push_back(k);
    return names;
}

std::vector<double> ProblemFile::param_values(
    const std::map<std::string, double>& overrides) const {
    std::vector<double> values;
    for (const auto& [k, v] : params_) {
        auto it = overrides.find(k);
        values.push_back(it != overrides.end() ? it->second : v);
    }
    return values;
}

expr::Expression ProblemFile::parse_in(const std::string& src,
                                       const std::vector<std::string>& natural_vars) const {
    std::vector<std::string> vars = natural_vars;
    for (const auto& n : param_names()) vars.push_back(n);
    try {
        return expr::parse(src, vars);
    } catch (const expr::ParseError& ex) {
        throw LoadError("in expression '" + src + "': " + ex.what());
    }
}

std::function<double(double)> ProblemFile::scalar_fn(const std::string& key,
                                                     const std::string& var) const {
    expr::Expression e = parse_in(require_string(raw_, key), {var});
    std::vector<double> pv = param_values();
    return [e, pv](double x) {
        std::vector<double> v;
        v.reserve(pv.size() + 1);
        v.push_back(x);
        v.insert(v.end(), pv.begin(), pv.end());
        return e.eval(v);
    };
}

std::function<double(double)> ProblemFile::scalar_fn_derivative(const std::string& key,
                                                                const std::string& var) const {
    expr::Expression e = parse_in(require_string(raw_, key), {var}).derivative(var);
    std::vector<double> pv = param_values();
    return [e, pv](double x) {
        std::vector<double> v;
        v.reserve(pv.size() + 1);
        v.push_back(x);
        v.insert(v.end(), pv.begin(), pv.end());
        return e.eval(v);
    };
}

linear::PeriodicSystem ProblemFile::linear_system() const {
    if (kind_ != Kind::LinearSystem)
        throw LoadError("problem kind is not linear-system");
    const int n = dimension_;
    if (!raw_.contains("matrix") || !raw_["matrix"].is_array() ||
        static_cast<int>(raw_["matrix"].size()) != n)
        throw LoadError("'matrix' must be an n x n array of expression strings");
    bool lhs_form = raw_.contains("form") && raw_["form"].get<std::string>() == "lhs";

    std::vector<std::vector<expr::Expression>> M(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto& row = raw_["matrix"][static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw LoadError("'matrix' row has wrong length");
        for (int jcol = 0; jcol < n; ++jcol) {
            std::string src = row[static_cast<std::size_t>(jcol)].get<std::string>();
            if (lhs_form) src = "-(" + src + ")";  // x' + A x = q stored as M = -A
            M[static_cast<std::size_t>(i)].push_back(parse_in(src, {"t"}));
        }
    }
    std::vector<expr::Expression> q;
    if (raw_.contains("forcing")) {
        if (!raw_["forcing"].is_array() || static_cast<int>(raw_["forcing"].size()) != n)
            throw LoadError("'forcing' must have n entries");
        for (int i = 0; i < n; ++i)
            q.push_back(parse_in(raw_["forcing"][static_cast<std::size_t>(i)].get<std::string>(),
                                 {"t"}));
    }
    auto sys = linear::system_from_expressions(period_, M, q, param_values(),
                                               lhs_form ? "source form x' + A x = q"
                                                        : "canonical x' = M x + q");
    sys.validate();
    return sys;
}

std::function<linear::PeriodicSystem(double)> ProblemFile::linear_family(
    const std::string& param) const {
    if (!params_.count(param))
        throw LoadError("family parameter '" + param + "' not declared in params");
    ProblemFile copy = *this;
    return [copy, param](double value) {
        ProblemFile pf = copy;
        pf.set_param(param, value);
        return pf.linear_system();
    };
}

scalar::ScalarProblem ProblemFile::scalar_problem() const {
    if (kind_ != Kind::Scalar) throw LoadError("problem kind is not scalar");
    scalar::ScalarProblem p;
    p.period = period_;
    p.a = scalar_fn("a", "t");
    p.f = scalar_fn("f", "t");
    p.g = scalar_fn("g", "x");
    p.g_prime = scalar_fn_derivative("g", "x");
    p.g_minus = require_number(raw_, "g_minus_inf");
    p.g_plus = require_number(raw_, "g_plus_inf");
    if (raw_.contains("g_increasing")) p.g_increasing = raw_["g_increasing"].get<bool>();
    return p;
}

semilinear::SystemProblem ProblemFile::semilinear_problem() const {
    if (kind_ != Kind::SystemSemilinear)
        throw LoadError("problem kind is not system-semilinear");
    const int n = dimension_;
    semilinear::SystemProblem sp;

    std::vector<std::vector<expr::Expression>> M(static_cast<std::size_t>(n));
    if (!raw_.contains("a_matrix")) throw LoadError("missing 'a_matrix'");
    for (int i = 0; i < n; ++i) {
        const auto& row = raw_["a_matrix"][static_cast<std::size_t>(i)];
        for (int jcol = 0; jcol < n; ++jcol) {
            // Source form x' + A x + f(x) = g(t); canonical coefficient is -A.
            std::string src = "-(" + row[static_cast<std::size_t>(jcol)].get<std::string>() + ")";
            M[static_cast<std::size_t>(i)].push_back(parse_in(src, {"t"}));
        }
    }
    std::vector<expr::Expression> q;
    for (int i = 0; i < n; ++i)
        q.push_back(
            parse_in(raw_["forcing"][static_cast<std::size_t>(i)].get<std::string>(), {"t"}));
    sp.linear_part = linear::system_from_expressions(period_, M, q, param_values(),
                                                     "source form x' + A x + f(x) = g(t)");

    std::vector<std::string> xvars;
    for (int i = 1; i <= n; ++i) xvars.push_back("x" + std::to_string(i));
    std::vector<expr::Expression> fx;
    for (int i = 0; i < n; ++i)
        fx.push_back(
            parse_in(raw_["nonlinearity"][static_cast<std::size_t>(i)].get<std::string>(), xvars));
    std::vector<double> pv = param_values();
    sp.nonlinearity = [fx, pv, n](const semilinear::Vector& x) {
        std::vector<double> v;
        v.reserve(static_cast<std::size_t>(n) + pv.size());
        for (int i = 0; i < n; ++i) v.push_back(x(i));
        v.insert(v.end(), pv.begin(), pv.end());
        semilinear::Vector out(n);
        for (int i = 0; i < n; ++i) out(i) = fx[static_cast<std::size_t>(i)].eval(v);
        return out;
    };
    sp.lower.resize(n);
    sp.upper.resize(n);
    for (int i = 0; i < n; ++i) {
        sp.lower(i) = raw_["alpha"][static_cast<std::size_t>(i)].get<double>();
        sp.upper(i) = raw_["beta"][static_cast<std::size_t>(i)].get<double>();
    }
    return sp;
}

pendulum::PendulumProblem ProblemFile::pendulum_problem() const {
    if (kind_ != Kind::Pendulum) throw LoadError("problem kind is not pendulum");
    pendulum::PendulumProblem p;
    p.period = period_;
    p.lambda = require_number(raw_, "lambda");
    if (!raw_.contains("mu")) throw LoadError("missing field 'mu'");
    if (raw_["mu"].is_number()) {
        p.mu = raw_["mu"].get<double>();
    } else if (raw_["mu"].is_string()) {
        // An expression over the declared parameters, e.g. "mu": "m".
        p.mu = parse_in(raw_["mu"].get<std::string>(), {}).eval(param_values());
    } else {
        throw LoadError("'mu' must be a number or an expression string");
    }
    p.g = scalar_fn("g", "x");
    p.g_prime = scalar_fn_derivative("g", "x");
    p.e = scalar_fn("e", "t");
    p.g_bound = require_number(raw_, "g_bound");
    p.g_minus = require_number(raw_, "g_minus_inf");
    p.g_plus = require_number(raw_, "g_plus_inf");
    return p;
}

curves::CurveProblem ProblemFile::curve_problem() const {
    if (kind_ != Kind::CurveFirstOrder && kind_ != Kind::CurveSecondOrder)
        throw LoadError("problem kind is not a curve problem");
    curves::CurveProblem p;
    p.period = period_;
    p.g = scalar_fn("g", "x");
    p.g_prime = scalar_fn_derivative("g", "x");
    p.e = scalar_fn("e", "t");
    if (kind_ == Kind::CurveFirstOrder) {
        p.order = curves::CurveProblem::Order::First;
        if (raw_.contains("a")) p.a = scalar_fn("a", "t");
    } else {
        p.order = curves::CurveProblem::Order::Second;
        p.lambda = require_number(raw_, "lambda");
    }
    return p;
}

}  // namespace resonance::problemfile
