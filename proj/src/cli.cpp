#include "liequad/cli.hpp"

#include "liequad/brackets.hpp"
#include "liequad/numint.hpp"
#include "liequad/reduce.hpp"
#include "liequad/symmetry.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>

namespace liequad {

using nlohmann::ordered_json;

int exit_code(Verdict v)
{
    switch (v) {
    case Verdict::Holds: return kHolds;
    case Verdict::Fails: return kFails;
    case Verdict::Unknown: return kUnknown;
    }
    return kUnknown;
}

TheoremReport check_file(const SystemFile& file)
{
    LoadedSystem ls = build_system(file);
    return check_integrability(ls.system, ls.constants, ls.alphas, file.seed, file.points);
}

nlohmann::ordered_json report_json(const SystemFile& file, const TheoremReport& rep)
{
    const PhaseGeometry geo(rep.geometry, rep.n);
    ordered_json j;
    j["schema"] = 1;
    j["theorem"] = std::string(to_string(rep.theorem));
    j["geometry"] = std::string(to_string(rep.geometry));
    j["n"] = rep.n;
    j["liouville_mode"] = rep.liouville_mode;
    j["hamiltonian"] = file.hamiltonian;
    j["constants"] = ordered_json::array();
    for (const auto& c : file.constants)
        j["constants"].push_back({{"f", c.f}, {"alpha", c.alpha}});
    j["hypotheses"] = ordered_json::array();
    for (const auto& h : rep.hypotheses) {
        ordered_json e;
        e["name"] = h.name;
        e["verdict"] = std::string(to_string(h.verdict));
        e["detail"] = h.detail;
        if (h.counterexample)
            e["counterexample"] = {h.counterexample->first, h.counterexample->second};
        else
            e["counterexample"] = nullptr;
        j["hypotheses"].push_back(std::move(e));
    }
    if (rep.structure_constants) {
        const auto& c = *rep.structure_constants;
        j["structure_constants"] = ordered_json::array();
        for (std::size_t a = 0; a < c.dim(); ++a)
            for (std::size_t b = a + 1; b < c.dim(); ++b)
                for (std::size_t k = 0; k < c.dim(); ++k)
                    if (c(a, b, k) != 0)
                        j["structure_constants"].push_back(
                            {{"i", a + 1}, {"j", b + 1}, {"k", k + 1}, {"c", to_string(c(a, b, k))}});
    } else {
        j["structure_constants"] = nullptr;
    }
    j["derived_series"] = rep.derived_series;
    if (rep.dim_level_set)
        j["dim_M_f"] = *rep.dim_level_set;
    else
        j["dim_M_f"] = nullptr;
    j["certified_package"] = ordered_json::array();
    for (std::size_t i = 0; i < rep.certified_package.size(); ++i) {
        const auto& p = rep.certified_package[i];
        ordered_json comps = ordered_json::array();
        for (const auto& e : p.field.components())
            comps.push_back(to_string(e, geo.chart()));
        j["certified_package"].push_back({{"name", p.name}, {"components", comps}});
    }
    j["package_symmetry"] = ordered_json::array();
    for (Answer a : rep.package_symmetry)
        j["package_symmetry"].push_back(std::string(to_string(a)));
    j["level_set_points"] = rep.level_set_points;
    j["verdict"] = std::string(to_string(rep.verdict));
    j["notes"] = rep.notes;
    return j;
}

namespace {

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& out, const CoordinateSystem& chart, const std::vector<double>& times,
               const std::vector<std::vector<double>>& states)
{
    out << "s";
    for (const auto& c : chart.coordinates())
        out << "," << c.name;
    out << "\n";
    for (std::size_t k = 0; k < times.size(); ++k) {
        out << fmt(times[k]);
        for (double x : states[k])
            out << "," << fmt(x);
        out << "\n";
    }
}

std::vector<VectorField> package_fields(const TheoremReport& rep)
{
    std::vector<VectorField> out;
    for (const auto& p : rep.certified_package)
        out.push_back(p.field);
    return out;
}

// Runs fn, mapping library exceptions to exit codes and messages on err.
template <class Fn>
int guarded(std::ostream& err, Fn&& fn)
{
    try {
        return fn();
    } catch (const NotStraightenable& e) {
        err << "reduction error: no catalog case applies\n";
        for (const auto& p : e.probes())
            err << "  probe: " << p << "\n";
        return kReductionError;
    } catch (const ReductionError& e) {
        err << "reduction error: " << e.what() << "\n";
        return kReductionError;
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << "\n";
        return kInputError;
    } catch (const SyntaxError& e) {
        err << "syntax error: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

int cmd_check_one(const std::string& path, std::ostream& out, std::ostream& err, bool compact)
{
    return guarded(err, [&] {
        SystemFile file = load_system_file(path);
        TheoremReport rep = check_file(file);
        ordered_json j = report_json(file, rep);
        out << (compact ? j.dump() : j.dump(2)) << "\n";
        return exit_code(rep.verdict);
    });
}

int cmd_check_all(const std::string& dir, std::ostream& out, std::ostream& err)
{
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    if (ec) {
        err << "error: cannot list " << dir << "\n";
        return kInputError;
    }
    std::sort(files.begin(), files.end());
    int worst = kHolds;
    for (const auto& f : files) {
        ordered_json line;
        line["file"] = f.filename().string();
        std::ostringstream report, diag;
        int code = cmd_check_one(f.string(), report, diag, true);
        line["exit"] = code;
        if (code == kInputError)
            line["error"] = diag.str();
        else
            line["report"] = ordered_json::parse(report.str());
        out << line.dump() << "\n";
        worst = std::max(worst, code);
    }
    return worst;
}

int cmd_bracket(const std::string& path, const std::string& f, const std::string& g, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        SystemFile file = load_system_file(path);
        LoadedSystem ls = build_system(file);
        const PhaseGeometry& geo = *ls.system.geometry;
        Expr fe = parse(f, geo.chart()), ge = parse(g, geo.chart());
        Expr b = bracket(geo, fe, ge);
        Expr bi = bracket_intrinsic(geo, fe, ge);
        out << to_string(b, geo.chart()) << "\n";
        ZeroTest z = is_identically_zero(b - bi);
        switch (z) {
        case ZeroTest::Zero: out << "cross-check: OK (coordinate formula and intrinsic definition agree)\n"; return kHolds;
        case ZeroTest::NonZero: out << "cross-check: MISMATCH\n"; return kFails;
        default: out << "cross-check: UNKNOWN (zero test inconclusive)\n"; return kUnknown;
        }
    });
}

int cmd_integrate(const std::string& path, const std::string& method, std::optional<double> t_max,
                  std::optional<double> h, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        SystemFile file = load_system_file(path);
        LoadedSystem ls = build_system(file);
        const double tm = t_max.value_or(file.t_max), step = h.value_or(file.h);
        if (!(tm > 0) || !(step > 0))
            throw Error("--t-max and --h must be positive");
        if (file.points.empty())
            throw Error("integration needs an initial point: add one to \"points\"");
        const std::vector<double>& x0 = file.points.front();
        const CoordinateSystem& chart = ls.system.geometry->chart();
        std::optional<Trajectory> rk;
        if (method == "rk4" || method == "both")
            rk = integrate(ls.system, x0, 0.0, tm, step);
        std::optional<QuadratureTrajectory> quad;
        if (method == "quadrature" || method == "both") {
            if (ls.constants.empty())
                throw Error("quadrature needs constants of motion in the system file");
            TheoremReport rep = check_integrability(ls.system, ls.constants, ls.alphas, file.seed, file.points);
            if (rep.verdict != Verdict::Holds)
                err << "warning: theorem verdict is " << to_string(rep.verdict) << "\n";
            if (rep.certified_package.empty())
                throw ReductionError("no certified symmetry package");
            std::vector<double> grid = sample_times(0.0, tm, step);
            quad = integrate_by_quadratures(dynamics_field(ls.system), package_fields(rep), x0, grid);
            for (const auto& line : quad->log)
                err << line << "\n";
        }
        if (quad)
            write_csv(out, chart, quad->times, quad->states);
        else
            write_csv(out, chart, rk->times, rk->states);
        if (rk && quad) {
            double diff = 0;
            for (std::size_t k = 0; k < rk->states.size() && k < quad->states.size(); ++k)
                for (std::size_t i = 0; i < rk->states[k].size(); ++i)
                    diff = std::max(diff, std::fabs(rk->states[k][i] - quad->states[k][i]));
            out << "# max |quadrature - rk4| = " << fmt(diff) << "\n";
        }
        return kHolds;
    });
}

int cmd_report(const std::string& path, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        SystemFile file = load_system_file(path);
        LoadedSystem ls = build_system(file);
        const PhaseGeometry& geo = *ls.system.geometry;
        TheoremReport rep = check_integrability(ls.system, ls.constants, ls.alphas, file.seed, file.points);
        ordered_json j;
        j["schema"] = 1;
        j["check"] = report_json(file, rep);
        ordered_json eqs = ordered_json::array();
        for (const auto& [name, rhs] : equations_of_motion(ls.system))
            eqs.push_back({{"coordinate", name}, {"rhs", to_string(rhs, geo.chart())}});
        j["equations_of_motion"] = eqs;
        ordered_json ids = ordered_json::array();
        for (std::size_t i = 0; i < ls.constants.size(); ++i)
            for (const auto& c : check_reeb_identities(ls.system, ls.constants[i].expr)) {
                ordered_json e{{"constant", "f" + std::to_string(i + 1)}, {"identity", c.identity}};
                if (c.verdict)
                    e["verdict"] = std::string(to_string(*c.verdict));
                else
                    e["verdict"] = nullptr;
                e["skip_reason"] = c.skip_reason;
                ids.push_back(std::move(e));
            }
        j["identities"] = ids;
        ordered_json anti = ordered_json::array();
        for (std::size_t a = 0; a < ls.constants.size(); ++a)
            for (std::size_t b = a + 1; b < ls.constants.size(); ++b) {
                ordered_json e{{"i", a + 1}, {"j", b + 1}};
                try {
                    e["verdict"] = std::string(
                        to_string(check_antihomomorphism(geo, ls.constants[a].expr, ls.constants[b].expr).verdict));
                } catch (const InapplicableHypothesis& ex) {
                    e["verdict"] = nullptr;
                    e["skip_reason"] = ex.what();
                }
                anti.push_back(std::move(e));
            }
        j["antihomomorphism"] = anti;
        if (!file.points.empty()) {
            ordered_json drift;
            try {
                Trajectory tr = integrate(ls.system, file.points.front(), 0.0, file.t_max, file.h);
                drift["H"] = monitor(ls.system.H, tr).max_drift;
                for (std::size_t i = 0; i < ls.constants.size(); ++i)
                    drift["f" + std::to_string(i + 1)] = monitor(ls.constants[i].expr, tr).max_drift;
                if (!rep.certified_package.empty()) {
                    try {
                        auto q = integrate_by_quadratures(dynamics_field(ls.system), package_fields(rep),
                                                          file.points.front(), tr.times);
                        double diff = 0;
                        for (std::size_t k = 0; k < tr.states.size(); ++k)
                            for (std::size_t c = 0; c < tr.states[k].size(); ++c)
                                diff = std::max(diff, std::fabs(tr.states[k][c] - q.states[k][c]));
                        j["quadrature"] = {{"log", q.log}, {"max_diff_vs_rk4", diff}};
                    } catch (const ReductionError& e) {
                        j["quadrature"] = {{"error", e.what()}};
                    }
                }
            } catch (const IntegrationError& e) {
                drift["error"] = e.what();
            }
            j["drift"] = drift;
        }
        out << j.dump(2) << "\n";
        return exit_code(rep.verdict);
    });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Lie integrability checks and reduction by quadratures for Hamiltonian systems", "liequad"};
    app.require_subcommand(1);

    std::string file, dir, f, g, method = "rk4";
    std::optional<double> t_max, h;

    auto* check = app.add_subcommand("check", "check the integrability hypotheses and print a JSON report");
    check->add_option("file", file, "system file");
    check->add_option("--all", dir, "check every .json file in a directory (one JSON line each)");

    auto* br = app.add_subcommand("bracket", "print the bracket of two functions with a cross-check line");
    br->add_option("file", file, "system file")->required();
    br->add_option("f", f, "first function")->required();
    br->add_option("g", g, "second function")->required();

    auto* integ = app.add_subcommand("integrate", "integrate the dynamics and print a CSV trajectory");
    integ->set_help_flag("--help", "print this help message and exit");
    integ->add_option("file", file, "system file")->required();
    integ->add_option("--method", method, "rk4, quadrature, or both")
        ->check(CLI::IsMember({"rk4", "quadrature", "both"}));
    integ->add_option("--t-max", t_max, "final parameter value (default from file)");
    integ->add_option("--h", h, "RK4 step and sample spacing (default from file)");

    auto* report = app.add_subcommand("report", "full diagnostic bundle as JSON");
    report->add_option("file", file, "system file")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kInputError;
    }

    if (check->parsed()) {
        if (!dir.empty())
            return cmd_check_all(dir, out, err);
        if (file.empty()) {
            err << "check: a system file or --all <dir> is required\n";
            return kInputError;
        }
        return cmd_check_one(file, out, err, false);
    }
    if (br->parsed())
        return cmd_bracket(file, f, g, out, err);
    if (integ->parsed())
        return cmd_integrate(file, method, t_max, h, out, err);
    return cmd_report(file, out, err);
}

}  // namespace liequad
