// Command-line front end: load a problem file, dispatch the analysis, emit
// a text report plus CSV/SVG artifacts.
//
// Exit codes: 0 success, 2 hypothesis failure (result inapplicable to the
// problem), 1 numerical or input failure.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "resonance/curves.hpp"
#include "resonance/linear.hpp"
#include "resonance/output.hpp"
#include "resonance/pendulum.hpp"
#include "resonance/problemfile.hpp"
#include "resonance/scalar.hpp"
#include "resonance/semilinear.hpp"

namespace fs = std::filesystem;
using namespace resonance;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitHypothesis = 2;

struct CommonOpts {
    std::string file;
    std::string out_dir = ".";
    std::vector<std::string> params;
    double tol_rank = smatrix::kRankTol;
    double tol_ode = 1e-10;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("file", o.file, "problem file (JSON)")->required();
    cmd->add_option("--out", o.out_dir, "output directory for CSV/SVG artifacts");
    cmd->add_option("--param", o.params, "override a file parameter, name=value (repeatable)");
    cmd->add_option("--tol-rank", o.tol_rank, "rank tolerance for resonance detection");
    cmd->add_option("--tol-ode", o.tol_ode, "integrator tolerance");
}

problemfile::ProblemFile load_with_params(const CommonOpts& o) {
    auto pf = problemfile::ProblemFile::load(o.file);
    for (const auto& kv : o.params) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw problemfile::LoadError("--param expects name=value, got '" + kv + "'");
        pf.set_param(kv.substr(0, eq), std::stod(kv.substr(eq + 1)));
    }
    return pf;
}

std::string vec_str(const Eigen::VectorXd& v) {
    std::ostringstream os;
    os.precision(6);
    os << "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v(i);
    os << ")";
    return os.str();
}

void ensure_dir(const std::string& dir) {
    if (!dir.empty() && dir != ".") fs::create_directories(dir);
}

int run_analyze_linear(const CommonOpts& o) {
    auto pf = load_with_params(o);
    auto sys = pf.linear_system();
    double rank_tol = o.tol_rank != smatrix::kRankTol ? o.tol_rank : pf.rank_tol();
    auto rep = linear::monodromy_report(sys, rank_tol);
    auto cls = linear::classify(rep);

    std::cout << "problem: linear-system, n = " << sys.dim << ", p = " << sys.period << "\n";
    std::cout << "eigenvalues of X(p):";
    for (const auto& c : rep.spectrum.clusters)
        std::cout << " (" << c.value.real() << (c.value.imag() < 0 ? "" : "+") << c.value.imag()
                  << "i, alg " << c.algebraic << ", geom " << c.geometric << ")";
    std::cout << "\nspectral radius: " << rep.spectrum.spectral_radius << "\n";
    std::cout << "resonant: " << (rep.resonant ? "yes" : "no") << " (rank tol " << rank_tol
              << ")\n";
    std::cout << "forcing vector b = " << vec_str(rep.b) << "\n";
    std::cout << "verdict: " << cls.summary() << "\n";

    if (cls.verdict == linear::Verdict::Case1AllUnbounded) {
        auto v0 = linear::massera_witness(rep);
        std::cout << "witness v0 = " << vec_str(v0) << "; (b, v0) = " << rep.b.dot(v0) << "\n";
    } else if (rep.resonant) {
        auto pset = linear::periodic_initial_set(rep);
        if (pset.particular)
            std::cout << "periodic initial condition (min-norm): " << vec_str(*pset.particular)
                      << ", kernel dimension " << pset.kernel.cols() << "\n";
    }

    ensure_dir(o.out_dir);
    std::vector<std::vector<double>> rows;
    for (const auto& z : rep.spectrum.eigenvalues)
        rows.push_back({z.real(), z.imag(), std::abs(z)});
    output::write_csv(o.out_dir + "/eigenvalues.csv", {"re", "im", "abs"}, rows);
    return cls.verdict == linear::Verdict::UncoveredJordanBlock ? kExitHypothesis : kExitOk;
}

int run_analyze_scalar(const CommonOpts& o, int periods, double x0) {
    auto pf = load_with_params(o);
    auto problem = pf.scalar_problem();
    for (const auto& w : problem.validate()) std::cerr << "warning: " << w << "\n";

    auto verdict = scalar::scalar_verdict(problem);
    std::cout << "problem: scalar, p = " << problem.period << "\n";
    std::cout << "verdict: " << verdict.summary() << "\n";

    ensure_dir(o.out_dir);
    if (verdict.outcome != scalar::ScalarOutcome::AllUnbounded) {
        auto orbit = scalar::find_periodic(problem);
        std::cout << "periodic solution: x(0) = " << orbit.x0 << ", closure error "
                  << orbit.closure << "\n";
        std::vector<std::vector<double>> rows;
        const auto& traj = orbit.orbit;
        for (int j = 0; j <= 256; ++j) {
            double t = problem.period * j / 256;
            rows.push_back({0.0, t, traj.at(t)(0)});
        }
        output::write_csv(o.out_dir + "/orbit.csv", {"k", "t", "x"}, rows);
    } else if (periods > 0) {
        auto run = scalar::unbounded_witness(problem, x0, periods);
        std::cout << "iterates from x0 = " << x0 << ": margin "
                  << (run.margin_ok ? "holds" : "violated") << ", monotone "
                  << (run.monotone ? "yes" : "no") << "\n";
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < run.iterates.size(); ++k)
            rows.push_back({static_cast<double>(k), problem.period * static_cast<double>(k),
                            run.iterates[k]});
        output::write_csv(o.out_dir + "/iterates.csv", {"k", "t", "x"}, rows);
    }
    return kExitOk;
}

int run_analyze_system(const CommonOpts& o, int periods, std::vector<double> x0v) {
    auto pf = load_with_params(o);
    auto problem = pf.semilinear_problem();
    problem.validate();
    auto cond = semilinear::condition_44(problem);
    std::cout << "problem: system-semilinear, n = " << problem.linear_part.dim << ", p = "
              << problem.linear_part.period << "\n";
    std::cout << "condition: " << cond.summary() << "\n";
    if (cond.outcome == semilinear::SemilinearOutcome::HypothesisFailure) return kExitHypothesis;

    if (cond.outcome == semilinear::SemilinearOutcome::AllUnbounded && periods > 0) {
        Eigen::VectorXd x0 = Eigen::VectorXd::Zero(problem.linear_part.dim);
        for (std::size_t i = 0; i < x0v.size() && i < static_cast<std::size_t>(x0.size()); ++i)
            x0(static_cast<Eigen::Index>(i)) = x0v[i];
        auto run = semilinear::instability_run(problem, cond, x0, periods);
        std::cout << "V-functional strictly increasing: " << (run.strictly_increasing ? "yes" : "NO")
                  << ", mean gain per period " << run.mean_gain << "\n";
        ensure_dir(o.out_dir);
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < run.v_values.size(); ++k)
            rows.push_back({static_cast<double>(k), run.v_values[k], run.states[k].norm()});
        output::write_csv(o.out_dir + "/instability.csv", {"k", "V", "norm"}, rows);
        if (!run.strictly_increasing) return kExitNumerical;
    }
    return kExitOk;
}

int run_analyze_pendulum(const CommonOpts& o, int periods, std::vector<double> x0v) {
    auto pf = load_with_params(o);
    auto problem = pf.pendulum_problem();
    problem.validate();
    auto verdict = pendulum::pendulum_verdict(problem);
    std::cout << "problem: pendulum, lambda = " << problem.lambda << ", p = " << problem.period
              << "\n";
    std::cout << "verdict: " << verdict.summary() << "\n";
    if (verdict.outcome == pendulum::PendulumOutcome::Inapplicable) return kExitHypothesis;

    ensure_dir(o.out_dir);
    if (verdict.outcome == pendulum::PendulumOutcome::Exists) {
        auto fp = pendulum::find_fixed_point(problem);
        std::cout << "fixed point: (x, x') = (" << fp.state(0) << ", " << fp.state(1)
                  << "), closure error " << fp.closure << "\n";
    } else if (periods > 0) {
        pendulum::State s0 = pendulum::State::Zero();
        for (std::size_t i = 0; i < x0v.size() && i < 2; ++i)
            s0(static_cast<Eigen::Index>(i)) = x0v[i];
        auto run = pendulum::poincare_2d(problem, s0, periods);
        std::cout << "V = x' + lambda x strictly "
                  << (run.direction > 0 ? "increasing" : "decreasing") << ": "
                  << (run.strict ? "yes" : "NO") << ", mean gain per period " << run.mean_gain
                  << "\n";
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < run.iterates.size(); ++k)
            rows.push_back({static_cast<double>(k), run.iterates[k](0), run.iterates[k](1),
                            run.v_values[k]});
        output::write_csv(o.out_dir + "/poincare.csv", {"k", "x", "xp", "V"}, rows);
        if (!run.strict) return kExitNumerical;
    }
    return kExitOk;
}

std::vector<double> parse_grid(const std::string& spec) {
    // lo:hi:step
    auto p1 = spec.find(':');
    auto p2 = spec.find(':', p1 == std::string::npos ? p1 : p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos)
        throw std::invalid_argument("--xi expects lo:hi:step");
    double lo = std::stod(spec.substr(0, p1));
    double hi = std::stod(spec.substr(p1 + 1, p2 - p1 - 1));
    double step = std::stod(spec.substr(p2 + 1));
    if (step <= 0 || hi < lo) throw std::invalid_argument("--xi: bad grid");
    std::vector<double> grid;
    for (double x = lo; x <= hi + 1e-12 * std::max(1.0, std::fabs(hi)); x += step)
        grid.push_back(x);
    return grid;
}

int run_curve(const CommonOpts& o, const std::string& xi_spec, const std::string& svg_path,
              int n_nodes, bool dump_orbits) {
    auto pf = load_with_params(o);
    auto problem = pf.curve_problem();
    auto grid = parse_grid(xi_spec);
    auto curve = curves::trace_curve(problem, grid, n_nodes);

    int failures = 0;
    std::vector<std::vector<double>> rows;
    for (const auto& pt : curve.points) {
        if (!pt.ok) {
            ++failures;
            std::cerr << "xi = " << pt.xi << ": " << pt.error << "\n";
            continue;
        }
        rows.push_back({pt.xi, pt.orbit.mu, pt.orbit.residual, pt.orbit.sup_norm()});
    }
    ensure_dir(o.out_dir);
    output::write_csv(o.out_dir + "/curve.csv", {"xi", "mu", "residual", "sup_norm"}, rows);
    std::cout << "curve: " << rows.size() << " points";
    if (!rows.empty())
        std::cout << ", mu range [" << rows.front()[1] << ", " << rows.back()[1] << "]";
    std::cout << ", " << failures << " failures\n";

    if (dump_orbits) {
        int idx = 0;
        for (const auto& pt : curve.points) {
            if (!pt.ok) continue;
            std::vector<std::vector<double>> orows;
            for (int j = 0; j < static_cast<int>(pt.orbit.nodes.size()); ++j)
                orows.push_back({pt.orbit.node_time(j), pt.orbit.nodes(j)});
            output::write_csv(o.out_dir + "/orbit_" + std::to_string(idx++) + ".csv",
                              {"t", "X"}, orows);
        }
    }
    if (!svg_path.empty()) {
        auto table = curves::figure1_table(curve);
        output::write_svg_polyline(svg_path, table, "nu", "xi");
        std::cout << "svg: " << svg_path << "\n";
    }
    return failures == 0 ? kExitOk : kExitNumerical;
}

int run_simulate(const CommonOpts& o, int periods, std::vector<double> x0v) {
    auto pf = load_with_params(o);
    ensure_dir(o.out_dir);
    using problemfile::Kind;
    switch (pf.kind()) {
        case Kind::Scalar: {
            auto problem = pf.scalar_problem();
            double x = x0v.empty() ? 0.0 : x0v[0];
            std::vector<std::vector<double>> rows{{0.0, 0.0, x}};
            for (int k = 1; k <= periods; ++k) {
                x = scalar::poincare_map(problem, x);
                rows.push_back({static_cast<double>(k), problem.period * k, x});
            }
            output::write_csv(o.out_dir + "/simulate.csv", {"k", "t", "x"}, rows);
            std::cout << "x(" << periods << "p) = " << x << "\n";
            return kExitOk;
        }
        case Kind::LinearSystem: {
            auto sys = pf.linear_system();
            Eigen::VectorXd x = Eigen::VectorXd::Zero(sys.dim);
            for (std::size_t i = 0; i < x0v.size() && i < static_cast<std::size_t>(sys.dim); ++i)
                x(static_cast<Eigen::Index>(i)) = x0v[i];
            ode::Field field = [&sys](double t, const ode::Vector& y, ode::Vector& dy) {
                dy = sys.coefficient(t) * y + sys.forcing_at(t);
            };
            std::vector<std::string> cols{"k", "t"};
            for (int i = 1; i <= sys.dim; ++i) cols.push_back("x" + std::to_string(i));
            std::vector<std::vector<double>> rows;
            auto record = [&](int k, const Eigen::VectorXd& v) {
                std::vector<double> row{static_cast<double>(k), sys.period * k};
                for (Eigen::Index i = 0; i < v.size(); ++i) row.push_back(v(i));
                rows.push_back(std::move(row));
            };
            record(0, x);
            for (int k = 1; k <= periods; ++k) {
                x = ode::integrate(field, 0.0, x, sys.period).states().back();
                record(k, x);
            }
            output::write_csv(o.out_dir + "/simulate.csv", cols, rows);
            std::cout << "|x(" << periods << "p)| = " << x.norm() << "\n";
            return kExitOk;
        }
        case Kind::Pendulum: {
            auto problem = pf.pendulum_problem();
            pendulum::State s0 = pendulum::State::Zero();
            for (std::size_t i = 0; i < x0v.size() && i < 2; ++i)
                s0(static_cast<Eigen::Index>(i)) = x0v[i];
            auto run = pendulum::poincare_2d(problem, s0, periods);
            std::vector<std::vector<double>> rows;
            for (std::size_t k = 0; k < run.iterates.size(); ++k)
                rows.push_back({static_cast<double>(k), run.iterates[k](0), run.iterates[k](1),
                                run.v_values[k]});
            output::write_csv(o.out_dir + "/simulate.csv", {"k", "x", "xp", "V"}, rows);
            std::cout << "V(" << periods << "p) = " << run.v_values.back() << "\n";
            return kExitOk;
        }
        case Kind::SystemSemilinear: {
            auto problem = pf.semilinear_problem();
            Eigen::VectorXd x = Eigen::VectorXd::Zero(problem.linear_part.dim);
            for (std::size_t i = 0; i < x0v.size() && i < static_cast<std::size_t>(x.size()); ++i)
                x(static_cast<Eigen::Index>(i)) = x0v[i];
            std::vector<std::string> cols{"k"};
            for (int i = 1; i <= problem.linear_part.dim; ++i)
                cols.push_back("x" + std::to_string(i));
            cols.push_back("norm");
            std::vector<std::vector<double>> rows;
            auto record = [&](int k, const Eigen::VectorXd& v) {
                std::vector<double> row{static_cast<double>(k)};
                for (Eigen::Index i = 0; i < v.size(); ++i) row.push_back(v(i));
                row.push_back(v.norm());
                rows.push_back(std::move(row));
            };
            record(0, x);
            for (int k = 1; k <= periods; ++k) {
                x = semilinear::solve(problem, x, problem.linear_part.period).states().back();
                record(k, x);
            }
            output::write_csv(o.out_dir + "/simulate.csv", cols, rows);
            std::cout << "|x(" << periods << "p)| = " << x.norm() << "\n";
            return kExitOk;
        }
        default:
            throw std::invalid_argument("simulate: unsupported problem kind " +
                                        std::string(problemfile::kind_name(pf.kind())));
    }
}

int run_tune(const CommonOpts& o, const std::string& family_param, const std::string& bracket) {
    auto pf = load_with_params(o);
    auto colon = bracket.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("--bracket expects lo:hi");
    double lo = std::stod(bracket.substr(0, colon));
    double hi = std::stod(bracket.substr(colon + 1));
    auto result = linear::tune_to_resonance(pf.linear_family(family_param), lo, hi);
    std::cout << "tuned " << family_param << " = " << result.kappa << "\n";
    auto rep = linear::monodromy_report(result.system, pf.rank_tol());
    std::cout << "verdict at tuned parameter: " << linear::classify(rep).summary() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Resonance analyzer for periodic ODE systems"};
    app.require_subcommand(1);

    CommonOpts o;
    int periods = 0;
    std::vector<double> x0;
    std::string xi_spec = "-40:40:0.5", svg_path, family_param, bracket = "-1:1";
    int n_nodes = 64;
    bool dump_orbits = false;

    auto* lin = app.add_subcommand("analyze-linear", "classify a linear periodic system");
    add_common(lin, o);
    auto* sca = app.add_subcommand("analyze-scalar", "first-order scalar semilinear analysis");
    add_common(sca, o);
    sca->add_option("--periods", periods, "iterate count for the unbounded case");
    sca->add_option("--x0", x0, "initial value");
    auto* sys = app.add_subcommand("analyze-system", "semilinear system analysis");
    add_common(sys, o);
    sys->add_option("--periods", periods, "instability run length")->default_val(20);
    sys->add_option("--x0", x0, "initial state components");
    auto* pen = app.add_subcommand("analyze-pendulum", "pendulum-like equation analysis");
    add_common(pen, o);
    pen->add_option("--periods", periods, "iterate count for the unbounded case")->default_val(20);
    pen->add_option("--x0", x0, "initial state (x, x')");
    auto* cur = app.add_subcommand("curve", "trace the solution curve over xi");
    add_common(cur, o);
    cur->add_option("--xi", xi_spec, "xi grid lo:hi:step");
    cur->add_option("--svg", svg_path, "write an SVG plot of xi vs nu");
    cur->add_option("--nodes", n_nodes, "collocation nodes (even)");
    cur->add_flag("--dump-orbits", dump_orbits, "write per-point orbit CSV files");
    auto* sim = app.add_subcommand("simulate", "iterate the Poincare map of any problem");
    add_common(sim, o);
    sim->add_option("--periods", periods, "number of periods")->default_val(10);
    sim->add_option("--x0", x0, "initial state components");
    auto* tun = app.add_subcommand("tune", "bisect a family parameter to resonance");
    add_common(tun, o);
    tun->add_option("--family-param", family_param, "parameter to tune")->required();
    tun->add_option("--bracket", bracket, "bisection bracket lo:hi");

    CLI11_PARSE(app, argc, argv);

    try {
        if (lin->parsed()) return run_analyze_linear(o);
        if (sca->parsed()) return run_analyze_scalar(o, periods, x0.empty() ? 0.0 : x0[0]);
        if (sys->parsed()) return run_analyze_system(o, periods, x0);
        if (pen->parsed()) return run_analyze_pendulum(o, periods, x0);
        if (cur->parsed()) return run_curve(o, xi_spec, svg_path, n_nodes, dump_orbits);
        if (sim->parsed()) return run_simulate(o, periods, x0);
        if (tun->parsed()) return run_tune(o, family_param, bracket);
    } catch (const scalar::NonResonantError& ex) {
        std::cerr << "hypothesis failure: " << ex.what() << "\n";
        return kExitHypothesis;
    } catch (const problemfile::LoadError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitNumerical;
    }
    return kExitNumerical;
}
