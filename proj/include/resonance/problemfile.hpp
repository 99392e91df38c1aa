#ifndef RESONANCE_PROBLEMFILE_HPP
#define RESONANCE_PROBLEMFILE_HPP

#include <json.hpp>
#include <map>
#include <string>

#include "resonance/curves.hpp"
#include "resonance/linear.hpp"
#include "resonance/pendulum.hpp"
#include "resonance/scalar.hpp"
#include "resonance/semilinear.hpp"

namespace resonance::problemfile {

struct LoadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Kind {
    LinearSystem,
    Scalar,
    SystemSemilinear,
    Pendulum,
    CurveFirstOrder,
    CurveSecondOrder,
};

const char* kind_name(Kind k);

/// A parsed problem file.  Expressions are validated at load; parameters can
/// be overridden (e.g. from --param) before building the typed problems.
class ProblemFile {
public:
    static ProblemFile load(const std::string& path);
    static ProblemFile from_json(const nlohmann::json& j);

    Kind kind() const { return kind_; }
    double period() const { return period_; }
    int dimension() const { return dimension_; }
    double rank_tol() const { return rank_tol_; }

    void set_param(const std::string& name, double value);
    const std::map<std::string, double>& params() const { return params_; }

    linear::PeriodicSystem linear_system() const;
    // Family over one named parameter, for tune_to_resonance.
    std::function<linear::PeriodicSystem(double)> linear_family(const std::string& param) const;
    scalar::ScalarProblem scalar_problem() const;
    semilinear::SystemProblem semilinear_problem() const;
    pendulum::PendulumProblem pendulum_problem() const;
    curves::CurveProblem curve_problem() const;

private:
    Kind kind_ = Kind::Scalar;
    double period_ = 0;
    int dimension_ = 1;
    double rank_tol_ = smatrix::kRankTol;
    std::map<std::string, double> params_;
    nlohmann::json raw_;

    std::vector<std::string> param_names() const;
    std::vector<double> param_values(const std::map<std::string, double>& overrides = {}) const;
    expr::Expression parse_in(const std::string& src,
                              const std::vector<std::string>& natural_vars) const;
    std::function<double(double)> scalar_fn(const std::string& key,
                                            const std::string& var) const;
    std::function<double(double)> scalar_fn_derivative(const std::string& key,
                                                       const std::string& var) const;
};

}  // namespace resonance::problemfile

#endif
