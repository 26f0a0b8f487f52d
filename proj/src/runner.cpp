#include "qdmap/runner.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "qdmap/kernels.hpp"

namespace qdmap {

using nlohmann::json;

namespace {

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

template <class T>
json optional_number(const std::optional<T>& x) {
    return x ? number_or_null(static_cast<double>(*x)) : json(nullptr);
}

std::vector<std::size_t> sample_indices(std::size_t steps, std::size_t samples) {
    std::vector<std::size_t> out;
    if (steps <= samples) {
        for (std::size_t k = 0; k <= steps; ++k)
            out.push_back(k);
        return out;
    }
    for (std::size_t i = 0; i <= samples; ++i) {
        const auto k = static_cast<std::size_t>(
            std::llround(static_cast<double>(i) * static_cast<double>(steps) / static_cast<double>(samples)));
        if (out.empty() || out.back() != k)
            out.push_back(k);
    }
    return out;
}

json matrix_json(const ComplexMatrix& m) {
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json r = json::array(), c = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            r.push_back(m(i, j).real());
            c.push_back(m(i, j).imag());
        }
        re.push_back(std::move(r));
        im.push_back(std::move(c));
    }
    return {{"re", std::move(re)}, {"im", std::move(im)}};
}

std::string csv_number(double x) {
    if (std::isnan(x))
        return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string file_stem(const std::string& name) {
    std::string out = name;
    for (char& c : out)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'))
            c = '_';
    return out;
}

std::vector<InitialState> effective_states(const Scenario& sc) {
    if (!sc.initial_states.empty())
        return sc.initial_states;
    if (sc.dim == 2)
        return {{"plus_x", bloch_to_state({1, 0, 0}).matrix()}, {"plus_z", bloch_to_state({0, 0, 1}).matrix()}};
    return {{"maximally_mixed", DensityMatrix::maximally_mixed(sc.dim).matrix()}};
}

struct Evolution {
    Trajectory traj;
    std::string route;
    std::optional<double> defect;
};

Evolution evolve(const Generator& gen, const TimeGrid& grid, Exec exec) {
    if (gen.time_independent)
        return {semigroup_evolve(gen.at(grid.t0()), grid, exec), "semigroup", std::nullopt};
    if (gen.integral) {
        const double defect = commutation_defect(gen, grid);
        if (defect <= kCommutativeRouteTol) {
            CommutativeOptions opts;
            opts.auto_check = false;
            return {commutative_evolve(gen, grid, opts, exec), "commutative", defect};
        }
        return {t_ordered_evolve(gen, grid, exec), "t_ordered", defect};
    }
    return {t_ordered_evolve(gen, grid, exec), "t_ordered", std::nullopt};
}

bool wants(const Scenario& sc, const char* analysis) {
    return std::find(sc.analyses.begin(), sc.analyses.end(), analysis) != sc.analyses.end();
}

json divisibility_json(const DivisibilityReport& d, const std::vector<std::size_t>& idx) {
    json trace = json::array();
    for (std::size_t k : idx)
        if (k < d.step_min_eig.size())
            trace.push_back({{"t", d.times[k]}, {"min_eig", d.step_min_eig[k]}});
    return {{"verdict", d.divisible ? "Divisible" : "NotDivisible"},
            {"divisible", d.divisible},
            {"worst_eig", d.worst_eig},
            {"first_violation_time", optional_number(d.first_violation_time)},
            {"violation_eig", d.first_violation_time ? json(d.violation_eig) : json(nullptr)},
            {"eigenvalue_trace", std::move(trace)}};
}

json legitimacy_json(const LegitimacyReport& l, const std::vector<std::size_t>& idx) {
    json trace = json::array();
    for (std::size_t k : idx) {
        const auto& p = l.points[k];
        trace.push_back({{"t", p.t}, {"status", legitimacy_name(p.status)}, {"min_eig", p.min_eig},
                         {"tp_defect", p.tp_defect}});
    }
    json first = nullptr;
    if (l.first_failure) {
        const auto& p = l.points[*l.first_failure];
        first = {{"t", p.t}, {"status", legitimacy_name(p.status)}, {"min_eig", p.min_eig}, {"tp_defect", p.tp_defect}};
    }
    return {{"verdict", l.legitimate ? "Legitimate" : "Illegitimate"},
            {"legitimate", l.legitimate},
            {"worst_eig", l.worst_eig},
            {"first_failure", std::move(first)},
            {"eigenvalue_trace", std::move(trace)}};
}

json blp_json(const BlpReport& b, std::uint64_t seed) {
    json backflow = nullptr;
    if (b.backflow)
        backflow = {{"time", b.backflow->time}, {"pair", b.backflow->pair}, {"rate", b.backflow->rate}};
    return {{"verdict", b.monotone ? "Monotone" : "NotMonotone"},
            {"monotone", b.monotone},
            {"pairs", b.pairs},
            {"seed", seed},
            {"worst_slope", b.worst_slope},
            {"backflow", std::move(backflow)}};
}

std::string render_csv(const Scenario& sc, const Trajectory& traj, const std::vector<InitialState>& states,
                       Exec exec) {
    const std::size_t ns = states.size();
    const bool qubit = sc.dim == 2;
    const auto step_eigs = kernels::choi_min_eigenvalues(traj.step_propagators, exec);

    std::ostringstream os;
    os << "t";
    for (std::size_t i = 0; i < ns; ++i)
        for (std::size_t j = i + 1; j < ns; ++j)
            os << ",D_" << i << "_" << j;
    os << ",min_choi_eig_step";
    if (qubit) {
        os << ",lambda1,lambda2,lambda3";
        for (std::size_t i = 0; i < ns; ++i)
            os << ",x_" << i << ",y_" << i << ",z_" << i;
    }
    os << "\n";

    std::vector<ComplexMatrix> rho(ns);
    for (std::size_t k = 0; k < traj.maps.size(); ++k) {
        const Superoperator& m = traj.maps[k];
        for (std::size_t i = 0; i < ns; ++i)
            rho[i] = m.apply(states[i].matrix);
        os << csv_number(traj.grid.time(k));
        for (std::size_t i = 0; i < ns; ++i)
            for (std::size_t j = i + 1; j < ns; ++j)
                os << "," << csv_number(0.5 * trace_norm(rho[i] - rho[j]));
        os << "," << csv_number(k == 0 ? std::numeric_limits<double>::quiet_NaN() : step_eigs[k - 1]);
        if (qubit) {
            for (int a = 1; a <= 3; ++a)
                os << "," << csv_number(0.5 * (pauli(a) * m.apply(pauli(a))).trace().real());
            for (std::size_t i = 0; i < ns; ++i) {
                const BlochVector b = state_to_bloch(rho[i]);
                os << "," << csv_number(b.x1) << "," << csv_number(b.x2) << "," << csv_number(b.x3);
            }
        }
        os << "\n";
    }
    return os.str();
}

} // namespace

std::string format_diagnostic(const Diagnostic& d) { return (d.path.empty() ? "/" : d.path) + ": " + d.message; }

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

RunResult run_scenario(const Scenario& input, const RunOptions& opts) {
    RunResult res;
    Scenario sc = input;
    if (opts.steps) {
        if (*opts.steps < 1)
            res.diagnostics.push_back({"/grid/steps", "grid.steps must be ≥ 1"});
        else
            sc.grid = TimeGrid(sc.grid.t_end(), *opts.steps);
    }
    if (opts.tol_div) {
        if (!(*opts.tol_div > 0.0))
            res.diagnostics.push_back({"/tolerances/div", "tolerances.div must be > 0"});
        else
            sc.tolerances.div = *opts.tol_div;
    }
    if (opts.seed)
        sc.seed = *opts.seed;
    if (!res.diagnostics.empty()) {
        res.exit_code = kExitValidation;
        return res;
    }

    json echo = sc.source;
    echo["seed"] = sc.seed;
    echo["grid"] = {{"t_end", sc.grid.t_end()}, {"steps", sc.grid.steps()}};
    if (opts.tol_div)
        echo["tolerances"]["div"] = sc.tolerances.div;

    try {
        const Generator gen = sc.build();
        const Evolution ev = evolve(gen, sc.grid, opts.exec);
        const Trajectory& traj = ev.traj;
        const auto idx = sample_indices(sc.grid.steps(), kStateSamples);
        const auto states = effective_states(sc);

        json analyses = json::object();
        if (wants(sc, "evolve")) {
            json per_state = json::array();
            for (const auto& s : states) {
                json samples = json::array();
                for (std::size_t k : idx) {
                    const ComplexMatrix rho = traj.maps[k].apply(s.matrix);
                    json row = {{"t", traj.grid.time(k)}};
                    if (sc.dim == 2) {
                        const BlochVector b = state_to_bloch(rho);
                        row["bloch"] = {b.x1, b.x2, b.x3};
                    } else {
                        row["matrix"] = matrix_json(rho);
                    }
                    samples.push_back(std::move(row));
                }
                per_state.push_back({{"label", s.label}, {"samples", std::move(samples)}});
            }
            analyses["evolve"] = {{"states", std::move(per_state)},
                                  {"final_map", {{"choi_min_eig", choi_min_eigenvalue(traj.maps.back())},
                                                 {"tp_defect", tp_defect(traj.maps.back())}}}};
        }
        if (wants(sc, "legitimacy"))
            analyses["legitimacy"] =
                legitimacy_json(legitimacy_report(traj, sc.tolerances.cp, sc.tolerances.tp, opts.exec), idx);
        if (wants(sc, "divisibility"))
            analyses["divisibility"] = divisibility_json(
                divisibility_report(traj, sc.tolerances.div, PropagatorSource::StepPropagators, opts.exec), idx);
        if (wants(sc, "blp"))
            analyses["blp"] =
                blp_json(blp_report(traj, sc.blp_pairs, sc.seed, sc.tolerances.blp, opts.exec), sc.seed);
        if (wants(sc, "classify")) {
            const ClassificationVerdict v = classify(gen, traj, sc.tolerances, opts.exec);
            analyses["classify"] = {
                {"tier", tier_name(v.tier)},
                {"legitimate", v.legitimacy.legitimate},
                {"divisible", v.divisibility ? json(v.divisibility->divisible) : json(nullptr)},
                {"constancy_defect", optional_number(v.constancy_defect)}};
        }

        res.report = {{"tool", {{"name", "qdmap"}, {"version", kToolVersion}}},
                      {"schema_version", kSchemaVersion},
                      {"seed", sc.seed},
                      {"scenario", std::move(echo)},
                      {"route", {{"name", ev.route}, {"commutation_defect", optional_number(ev.defect)}}},
                      {"grid", {{"t0", sc.grid.t0()}, {"t_end", sc.grid.t_end()}, {"steps", sc.grid.steps()},
                                {"h", sc.grid.h()}}},
                      {"analyses", std::move(analyses)}};
        if (opts.csv)
            res.csv = render_csv(sc, traj, states, opts.exec);
    } catch (const Error& e) {
        res.exit_code = kExitNumerical;
        res.error = e.what();
        res.report = json();
        res.csv.clear();
    }
    return res;
}

int run_file(const std::string& path, const std::string& out_dir, const RunOptions& opts, std::ostream& err) {
    if (!std::ifstream(path)) {
        err << path << ": cannot open file\n";
        return kExitIo;
    }
    const ParseResult parsed = load_scenario(path);
    if (!parsed.ok()) {
        for (const auto& d : parsed.diagnostics)
            err << path << ": " << format_diagnostic(d) << "\n";
        return kExitValidation;
    }
    const RunResult res = run_scenario(*parsed.scenario, opts);
    for (const auto& d : res.diagnostics)
        err << path << ": " << format_diagnostic(d) << "\n";
    if (res.exit_code == kExitNumerical)
        err << path << ": numerical failure: " << res.error << "\n";
    if (res.exit_code != kExitOk)
        return res.exit_code;

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    const std::filesystem::path base = std::filesystem::path(out_dir) / file_stem(parsed.scenario->name);
    {
        std::ofstream out(base.string() + ".report.json", std::ios::binary);
        out << dump_report(res.report);
        if (!out) {
            err << "cannot write " << base.string() << ".report.json\n";
            return kExitIo;
        }
    }
    if (opts.csv) {
        std::ofstream out(base.string() + ".csv", std::ios::binary);
        out << res.csv;
        if (!out) {
            err << "cannot write " << base.string() << ".csv\n";
            return kExitIo;
        }
    }
    return kExitOk;
}

int validate_file(const std::string& path, std::ostream& out) {
    if (!std::ifstream(path)) {
        out << path << ": cannot open file\n";
        return kExitIo;
    }
    const ParseResult parsed = load_scenario(path);
    for (const auto& d : parsed.diagnostics)
        out << format_diagnostic(d) << "\n";
    return parsed.ok() ? kExitOk : kExitValidation;
}

} // namespace qdmap
