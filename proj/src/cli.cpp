/// @file cli.cpp
/// @brief Subcommands: simulate, converge, check-invariants, cross-validate.

#include "henle/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

#include "henle/csv.hpp"
#include "henle/diagnostics.hpp"
#include "henle/errors.hpp"
#include "henle/grid_solver.hpp"
#include "henle/layers.hpp"

namespace henle {

namespace {

template <class State>
Trajectory<State> subsample(const Trajectory<State>& t, int stride) {
    if (stride <= 1) return t;
    Trajectory<State> out;
    out.boundary = t.boundary;
    out.stride = stride;
    for (std::size_t k = 0; k < t.snapshots.size(); ++k)
        if (k % static_cast<std::size_t>(stride) == 0 || k + 1 == t.snapshots.size())
            out.snapshots.push_back(t.snapshots[k]);
    return out;
}

std::string out_path(const RunConfig& cfg, const char* name) {
    return (std::filesystem::path(cfg.out) / name).string();
}

void prepare_out(const RunConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out, ec);
    if (ec) throw InputError("cannot create output directory '" + cfg.out + "': " + ec.message());
    write_file(out_path(cfg, "manifest.txt"), render_config(cfg));
}

}  // namespace

int thread_cap() {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("HENLE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
        throw ConfigError(std::string("HENLE_THREADS must be a positive integer, got '") + env + "'");
    }
    return static_cast<int>(hw);
}

void simulate(const RunConfig& cfg, std::ostream& log) {
    const auto d = make_data(cfg);
    const auto g = Grid1D::make(cfg.N, cfg.params);
    prepare_out(cfg);

    const bool full = cfg.model != ModelChoice::reduced;
    const bool reduced = cfg.model != ModelChoice::full;
    if (full) {
        const auto traj = run_full(cfg.params, d, g);
        std::ostringstream fields, boundary, inv;
        write_fields(fields, subsample(traj, cfg.stride), g);
        write_boundary(boundary, traj.boundary);
        write_invariants(inv, compute_series(traj, cfg.params, g));
        write_file(out_path(cfg, "fields.csv"), fields.str());
        write_file(out_path(cfg, "boundary.csv"), boundary.str());
        write_file(out_path(cfg, "invariants.csv"), inv.str());
        log << "full system: " << g.M << " steps on " << g.N << " cells\n";
    }
    if (reduced) {
        const auto init = limit_initial_state(d, g.N, cfg.params.L, cfg.reading);
        const auto traj = run_reduced(cfg.params, init, d, g);
        std::ostringstream fields;
        write_fields(fields, subsample(traj, cfg.stride), g);
        write_file(out_path(cfg, full ? "fields_reduced.csv" : "fields.csv"), fields.str());
        if (!full) {
            std::ostringstream boundary;
            write_boundary(boundary, traj.boundary);
            write_file(out_path(cfg, "boundary.csv"), boundary.str());
        }
        log << "reduced system: " << g.M << " steps on " << g.N << " cells\n";
    }
    log << "wrote " << cfg.out << "\n";
}

ConvergenceReport converge(const RunConfig& cfg, std::ostream& log) {
    const auto d = make_data(cfg);
    const auto g = Grid1D::make(cfg.N, cfg.params);
    prepare_out(cfg);
    StudyOptions opt;
    opt.reading = cfg.reading;
    opt.threads = thread_cap();
    const auto rep = convergence_study(cfg.params, d, g, cfg.eps_list, opt);
    std::ostringstream csv;
    write_convergence(csv, rep);
    write_file(out_path(cfg, "convergence.csv"), csv.str());
    log << "wrote " << out_path(cfg, "convergence.csv") << " (" << rep.eps_list.size() << " rows)\n";
    if (!rep.error.empty()) throw SolverError(rep.error);
    return rep;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Relaxation-limit solver for the two-tubule transport model", "henle"};
    app.require_subcommand(1);

    std::string config_path, out_dir, eps_text;
    bool matrix = false;

    auto* sim = app.add_subcommand("simulate", "Run one configuration and write CSV output");
    sim->add_option("--config", config_path, "config file")->required();
    sim->add_option("--out", out_dir, "output directory (overrides the config)");

    auto* conv = app.add_subcommand("converge", "Sweep eps and compare against the reduced system");
    conv->add_option("--config", config_path, "config file")->required();
    conv->add_option("--eps", eps_text, "comma-separated, strictly decreasing eps values");
    conv->add_option("--out", out_dir, "output directory (overrides the config)");

    auto* inv = app.add_subcommand("check-invariants", "Check nonnegativity, L-infinity and balance");
    inv->add_option("--config", config_path, "config file")->required();
    inv->add_flag("--matrix", matrix, "also run the 12-case default matrix");

    auto* cv = app.add_subcommand("cross-validate", "Compare the grid and Picard solvers");
    cv->add_option("--config", config_path, "config file")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return exit_usage;
    }

    try {
        RunConfig cfg = load_config(config_path);
        if (!out_dir.empty()) cfg.out = out_dir;
        if (!eps_text.empty()) {
            cfg.eps_list = parse_double_list(eps_text);
            for (std::size_t k = 0; k < cfg.eps_list.size(); ++k)
                if (!(cfg.eps_list[k] > 0.0) || (k > 0 && !(cfg.eps_list[k] < cfg.eps_list[k - 1])))
                    throw ConfigError("--eps must be positive and strictly decreasing");
        }

        if (sim->parsed()) {
            simulate(cfg, out);
            return exit_ok;
        }
        if (conv->parsed()) {
            const auto rep = converge(cfg, out);
            if (rep.order_gap1) {
                out << "orders: gap_q1u1 " << format_double(*rep.order_gap1);
                if (rep.order_u1) out << ", dist_u1 " << format_double(*rep.order_u1);
                out << "\n";
            }
            return exit_ok;
        }
        if (inv->parsed()) {
            bool ok = true;
            auto report = [&](const std::string& name, const Params& p, const ProblemData& d, int N) {
                const auto g = Grid1D::make(N, p);
                const auto r = check_invariants(p, d, g);
                out << name << ": min " << format_double(r.min_val) << ", linf ratio "
                    << format_double(r.linf_ratio) << ", balance excess "
                    << format_double(r.max_balance_excess) << (r.ok() ? "  ok" : "  FAILED") << "\n";
                ok = ok && r.ok();
            };
            report("config", cfg.params, make_data(cfg), cfg.N);
            if (matrix) {
                int k = 0;
                for (const auto& c : default_test_matrix())
                    report("matrix " + std::to_string(++k), c.params,
                           make_preset(c.preset, c.params, c.data), 200);
            }
            return ok ? exit_ok : exit_invariant;
        }
        if (cv->parsed()) {
            const auto g = Grid1D::make(cfg.N, cfg.params);
            const auto pc = make_picard_config(cfg);
            const auto r = cross_validate(cfg.params, make_data(cfg), g, pc);
            out << "distance " << format_double(r.distance) << " (" << format_double(r.distance / g.dx)
                << " dx), windows " << r.windows << ", max iterations " << r.max_iterations
                << ", max ratio " << format_double(r.max_ratio) << "\n";
            return exit_ok;
        }
    } catch (const std::invalid_argument& e) {  // ConfigError, InputError
        err << "error: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_runtime;
    }
    return exit_usage;
}

int run_command(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_command(args, std::cout, std::cerr);
}

}  // namespace henle
