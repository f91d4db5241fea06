#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace stokes::cli {

const std::map<std::string, Command>& command_table() {
    static const std::map<std::string, Command> table{
        {"verify-bracket", cmd_verify_bracket},
        {"stokes", cmd_stokes},
        {"calibrate-incidence", cmd_calibrate_incidence},
        {"skein", cmd_skein},
        {"casimir", cmd_casimir},
        {"trace-bracket-calibration", cmd_trace_bracket_calibration},
        {"jordan", cmd_jordan},
        {"leaf-dim", cmd_leaf_dim},
        {"rank", cmd_rank},
        {"minkowski", cmd_minkowski},
        {"markov", cmd_markov},
        {"char-identity", cmd_char_identity},
        {"isospectral", cmd_isospectral},
        {"flow", cmd_flow},
        {"pvi-check", cmd_pvi_check},
        {"dual-monodromy", cmd_dual_monodromy},
        {"commutator-report", cmd_commutator_report},
    };
    return table;
}

namespace {

const std::map<std::string, std::string> descriptions{
    {"verify-bracket", "Exact geodesic bracket against the reference bracket for all entry pairs"},
    {"stokes", "Stokes matrix at a point, optionally with symbolic entries"},
    {"calibrate-incidence", "Recover the incidence form from bracket data"},
    {"skein", "Skein relation on random word pairs"},
    {"casimir", "Perimeters Poisson-commute with all coordinates"},
    {"trace-bracket-calibration", "Ratio of trace brackets to the reference bracket"},
    {"jordan", "Jordan form of the monodromy product against the prediction"},
    {"leaf-dim", "Symplectic leaf dimension from the Jordan profile"},
    {"rank", "Rank of S + S^T"},
    {"minkowski", "Minkowski vectors whose Gram matrix is the Stokes matrix"},
    {"markov", "Markov element against the perimeter form (An, n = 3)"},
    {"char-identity", "Closed forms of det(lambda S + S^T / lambda)"},
    {"isospectral", "Solve for cyclic shear coordinates with given geodesic lengths"},
    {"flow", "Integrate an isomonodromic flow and check its invariants"},
    {"pvi-check", "Painleve VI residual along a 3x3 flow"},
    {"dual-monodromy", "Dual residue and monodromy trace identities"},
    {"commutator-report", "Trace ratios of commutators of monodromy matrices"},
};

void add_flags(CLI::App& app, Options& o) {
    app.add_option("--family", o.family, "Surface family: an or cfp");
    app.add_option("--n", o.n, "Matrix size");
    app.add_option("--Z", o.Z, "Comma-separated Z coordinates");
    app.add_option("--Y", o.Y, "Comma-separated Y coordinates");
    app.add_option("--seed", o.seed, "Random seed");
    app.add_option("--tol", o.tol, "Numerical tolerance")->check(CLI::Range(1e-15, 1e-2));
    app.add_option("--samples", o.samples, "Number of random samples")->check(CLI::PositiveNumber);
    app.add_option("--emit", o.emit, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1, 256));
    app.add_flag("--dump-symbolic", o.dump_symbolic, "Attach symbolic Laurent entries");

    app.add_option("--X", o.X, "Three comma-separated X values (isospectral)");
    app.add_option("--q", o.q, "Monodromy parameter q as re or re,im");
    app.add_option("--mu", o.mu, "Painleve parameter as re or re,im");
    app.add_option("--indices", o.indices, "Four 1-based indices (commutator-report)");
    app.add_option("--t0", o.t0, "Start of the Painleve path");
    app.add_option("--t1", o.t1, "End of the Painleve path");
    app.add_option("--step", o.step, "Integrator step")->check(CLI::PositiveNumber);
    app.add_option("--span", o.span, "Flow displacement");
    app.add_option("--coordinate", o.coordinate, "1-based pole moved by the flow");
    app.add_option("--stride", o.stride, "Trajectory output stride");
    app.add_option("--norm", o.norm, "Scale of the random initial V");
    app.add_flag("--generic", o.generic, "leaf-dim on random integer Stokes matrices");
}

std::string scalar_arg(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_array()) {
        std::string out;
        for (const auto& item : v) {
            if (!out.empty()) out += ",";
            out += scalar_arg(item);
        }
        return out;
    }
    if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
    if (v.is_number_float()) {
        std::ostringstream ss;
        ss.precision(17);
        ss << v.get<double>();
        return ss.str();
    }
    throw UsageError("unsupported config value: " + v.dump());
}

std::vector<std::string> config_argv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config " + path);
    Json config;
    try {
        config = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw UsageError(std::string("bad config: ") + e.what());
    }
    if (!config.is_object() || !config.contains("command") || !config["command"].is_string())
        throw UsageError("config needs a \"command\" string");
    std::vector<std::string> args{config["command"].get<std::string>()};
    for (const auto& [key, value] : config.items()) {
        if (key == "command") continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back("--" + key);
            continue;
        }
        args.push_back("--" + key);
        args.push_back(scalar_arg(value));
    }
    return args;
}

int dispatch(std::vector<std::string> args, int depth = 0) {
    CLI::App app{"Stokes matrices from shear coordinates: bracket, leaf and flow checks", "stokes"};
    app.require_subcommand(1);
    Options o;
    std::string config;
    for (const auto& [name, fn] : command_table()) add_flags(*app.add_subcommand(name, descriptions.at(name)), o);
    auto* run = app.add_subcommand("run", "Run a command described by a JSON file");
    run->add_option("--config", config, "JSON file with \"command\" and flag values")->required();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (run->parsed()) {
        if (depth > 0) throw UsageError("nested run");
        return dispatch(config_argv(config), depth + 1);
    }
    const auto* sub = app.get_subcommands().front();
    const Report report = command_table().at(sub->get_name())(o);
    report.emit(std::cout, parse_format(o.emit));
    return report.status();
}

} // namespace

} // namespace stokes::cli

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return stokes::cli::dispatch(std::move(args));
    } catch (const stokes::cli::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
