// Copyright 2026 The gossipopt Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

// gossip: optimize, simulate, verify-tables, quantum-check, export.
// Exit codes: 0 ok, 2 usage or input error, 3 solver failure, 4 verification failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "gossip/dispatch.hpp"
#include "gossip/json_io.hpp"
#include "gossip/quantum.hpp"
#include "gossip/simulator.hpp"
#include "gossip/verify.hpp"

using namespace gossip;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kUsage = 2, kSolver = 3, kVerify = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Source {
    std::string gen;
    std::string topology_file;
    std::string clock = "uniform";

    void attach(CLI::App* cmd, bool with_clock = true) {
        auto* g = cmd->add_option("--gen", gen, "generator descriptor, e.g. symstar:n=5,k=2");
        auto* t = cmd->add_option("--topology", topology_file, "topology JSON file");
        g->excludes(t);
        if (with_clock) cmd->add_option("--clock", clock, "uniform or nonuniform")->check(CLI::IsMember({"uniform", "nonuniform"}));
    }

    Topology resolve() const {
        if (gen.empty() == topology_file.empty()) throw UsageError("give exactly one of --gen or --topology");
        if (!gen.empty()) return generate(gen);
        return io::topology_from_json(read_json(topology_file));
    }

    ClockMode mode() const { return clock == "uniform" ? ClockMode::uniform : ClockMode::nonuniform; }

    static json read_json(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw UsageError("cannot read " + path);
        try {
            return json::parse(in);
        } catch (const json::exception& e) {
            throw UsageError(path + ": " + e.what());
        }
    }
};

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

ProbabilityAssignment load_or_solve(const Source& src, const Topology& t, const std::string& assignment_file) {
    if (!assignment_file.empty()) {
        auto a = io::assignment_from_json(t, Source::read_json(assignment_file));
        validate(t, a);
        return a;
    }
    return solve(t, src.mode()).assignment;
}

// ---------------------------------------------------------------- optimize

struct OptimizeArgs {
    Source src;
    std::string out;
    long budget = 20000;
};

int cmd_optimize(const OptimizeArgs& args) {
    auto t = args.src.resolve();
    auto r = solve(t, args.src.mode(), args.budget);
    emit(args.out, dump(io::result_to_json(r)));
    return kOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    Source src;
    std::string assignment;
    bool optimal = false;
    int trials = 200;
    long ticks = 2000;
    std::uint64_t seed = 0;
    std::optional<double> epsilon;
    std::string trace = "trace.csv";
    std::string out = "stats.json";
};

int cmd_simulate(const SimulateArgs& args) {
    auto t = args.src.resolve();
    if (args.assignment.empty() && !args.optimal) throw UsageError("give --assignment FILE or --optimal");
    auto a = load_or_solve(args.src, t, args.assignment);

    sim::SimConfig cfg;
    cfg.seed = args.seed;
    cfg.rates = sim::rates_from_clock(a.clock);
    cfg.max_ticks = args.ticks;
    cfg.initial_state = Eigen::VectorXd::Zero(t.n_vertices);
    cfg.initial_state(0) = 1.0;
    auto tr = sim::run(t, a, cfg);
    std::ostringstream csv;
    sim::write_trace_csv(csv, tr);
    emit(args.trace, csv.str());

    json stats;
    stats["config"] = {{"seed", cfg.seed},
                       {"rates", std::vector<double>(cfg.rates.data(), cfg.rates.data() + cfg.rates.size())},
                       {"max_ticks", cfg.max_ticks},
                       {"initial_state", std::vector<double>(cfg.initial_state.data(), cfg.initial_state.data() + t.n_vertices)},
                       {"trials", args.trials}};
    stats["lambda2"] = lambda2(t, a);
    stats["max_sum_drift"] = tr.max_sum_drift;
    stats["final_error"] = tr.error_curve.back();
    try {
        stats["decay_rate"] = sim::estimate_decay_rate(t, a, args.trials, args.ticks, args.seed);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::invalid_parameter) throw;
        stats["decay_rate"] = nullptr;
        stats["decay_note"] = e.what();
    }
    if (t.n_vertices <= 30) stats["decay_rate_exact"] = sim::second_moment_rate(t, a);
    if (args.epsilon) {
        stats["epsilon"] = *args.epsilon;
        stats["T_ave"] = sim::estimate_averaging_time(t, a, *args.epsilon, args.trials, args.seed);
    }
    emit(args.out, dump(stats));
    return kOk;
}

// ----------------------------------------------------------- verify-tables

struct VerifyArgs {
    std::string out;
    std::string format = "json";
};

int cmd_verify_tables(const VerifyArgs& args) {
    auto rep = verify::all_tables();
    std::ostringstream os;
    if (args.format == "csv") {
        os << "table,cell,expected,got,ok,known_discrepancy\n";
        for (const auto& c : rep.checks) {
            char buf[256];
            std::snprintf(buf, sizeof buf, "%s,%s,%.10g,%.10g,%d,%d\n", c.table.c_str(), c.label.c_str(), c.expected, c.got, c.ok, c.known);
            os << buf;
        }
    } else {
        json j;
        j["tables"] = json::object();
        for (const char* name : {"four-vertex", "symstar-m", "symstar-s", "ccs-m", "ccs-s"}) {
            auto part = rep.filter(name);
            json rows = json::array();
            for (const auto& c : part.checks)
                rows.push_back({{"cell", c.label}, {"expected", c.expected}, {"got", c.got}, {"ok", c.ok}, {"known_discrepancy", c.known}});
            j["tables"][name] = {{"passed", part.passed()}, {"failed", part.failed()}, {"unexplained", part.unexplained()}, {"rows", rows}};
        }
        j["unexplained"] = rep.unexplained();
        os << dump(j);
    }
    emit(args.out, os.str());
    for (const char* name : {"four-vertex", "symstar-m", "symstar-s", "ccs-m", "ccs-s"}) {
        auto part = rep.filter(name);
        std::cerr << name << ": " << part.passed() << "/" << part.checks.size() << " pass, " << part.failed() - part.unexplained()
                  << " known discrepancies, " << part.unexplained() << " unexplained\n";
    }
    return rep.unexplained() == 0 ? kOk : kVerify;
}

// ----------------------------------------------------------- quantum-check

struct QuantumArgs {
    Source src;
    std::string assignment;
    int d = 2;
    std::string out;
};

int cmd_quantum_check(const QuantumArgs& args) {
    auto t = args.src.resolve();
    quantum::check_guard(args.d, t.n_vertices);
    auto a = load_or_solve(args.src, t, args.assignment);
    auto rep = quantum::verify_spectral_collapse(t, a, args.d);
    emit(args.out, dump(io::collapse_to_json(rep)));
    return rep.ok() ? kOk : kVerify;
}

// ------------------------------------------------------------------ export

struct ExportArgs {
    Source src;
    std::string assignment;
    std::string what = "result";
    std::string format = "json";
    std::string out;
};

int cmd_export(const ExportArgs& args) {
    auto t = args.src.resolve();
    std::ostringstream os;
    char buf[256];
    if (args.what == "topology") {
        if (args.format == "csv") {
            os << "u,v,edge_orbit\n";
            for (std::size_t e = 0; e < t.edges.size(); ++e) os << t.edges[e].first << "," << t.edges[e].second << "," << t.edge_orbit[e] << "\n";
        } else {
            auto j = io::topology_to_json(t);
            j["vertex_orbit"] = t.vertex_orbit;
            j["edge_orbit"] = t.edge_orbit;
            os << dump(j);
        }
    } else if (args.what == "assignment" || args.what == "spectrum") {
        auto a = load_or_solve(args.src, t, args.assignment);
        if (args.what == "assignment") {
            if (args.format == "csv") {
                os << "kind,i,j,value\n";
                for (int v = 0; v < t.n_vertices; ++v) {
                    std::snprintf(buf, sizeof buf, "clock,%d,,%.17g\n", v, a.clock(v));
                    os << buf;
                }
                for (auto [x, y] : t.edges)
                    for (auto [i, j] : {std::pair{x, y}, std::pair{y, x}}) {
                        std::snprintf(buf, sizeof buf, "transition,%d,%d,%.17g\n", i, j, a.transition(i, j));
                        os << buf;
                    }
            } else {
                os << dump(io::assignment_to_json(t, a));
            }
        } else {
            auto s = spectrum(build_operator(t, a));
            if (args.format == "csv") {
                os << "index,eigenvalue\n";
                for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
                    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, s.eigenvalues[i]);
                    os << buf;
                }
            } else {
                os << dump(io::spectrum_to_json(s));
            }
        }
    } else {
        auto r = solve(t, args.src.mode());
        if (args.format == "csv") {
            os << "key,value\n";
            std::snprintf(buf, sizeof buf, "lambda2,%.17g\n", r.lambda2);
            os << buf << "mode," << r.mode << "\nbranch," << r.diagnostics.branch << "\n";
            if (r.diagnostics.m) os << "m," << *r.diagnostics.m << "\n";
            os << "formula_mismatch," << (r.diagnostics.formula_mismatch ? "true" : "false") << "\n";
        } else {
            os << dump(io::result_to_json(r));
        }
    }
    emit(args.out, os.str());
    return kOk;
}

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::solver_failure: return kSolver;
        default: return kUsage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal gossip probabilities: solvers, simulator and checks"};
    app.require_subcommand(1);

    OptimizeArgs opt;
    auto* optimize = app.add_subcommand("optimize", "compute optimal probabilities for a topology");
    opt.src.attach(optimize);
    optimize->add_option("--out", opt.out, "output JSON file (default stdout)");
    optimize->add_option("--budget", opt.budget, "evaluation budget of the numeric fallback")->check(CLI::NonNegativeNumber);

    SimulateArgs simargs;
    auto* simulate = app.add_subcommand("simulate", "run the randomized protocol and estimate its decay rate");
    simargs.src.attach(simulate);
    simulate->add_option("--assignment", simargs.assignment, "assignment JSON file");
    simulate->add_flag("--optimal", simargs.optimal, "use the optimal assignment for --clock");
    simulate->add_option("--trials", simargs.trials)->check(CLI::PositiveNumber);
    simulate->add_option("--ticks", simargs.ticks)->check(CLI::PositiveNumber);
    simulate->add_option("--seed", simargs.seed);
    simulate->add_option("--epsilon", simargs.epsilon, "also estimate the averaging time")->check(CLI::Range(0.0, 1.0));
    simulate->add_option("--trace", simargs.trace, "trace CSV file");
    simulate->add_option("--out", simargs.out, "stats JSON file");

    VerifyArgs ver;
    auto* verify_cmd = app.add_subcommand("verify-tables", "regenerate the reference tables and compare");
    verify_cmd->add_option("--out", ver.out, "report file (default stdout)");
    verify_cmd->add_option("--format", ver.format)->check(CLI::IsMember({"json", "csv"}));

    QuantumArgs qa;
    auto* quantum_cmd = app.add_subcommand("quantum-check", "check that the qudit operator has the classical lambda2");
    qa.src.attach(quantum_cmd);
    quantum_cmd->add_option("--assignment", qa.assignment, "assignment JSON file (default: optimal for --clock)");
    quantum_cmd->add_option("--d", qa.d, "local dimension")->check(CLI::Range(2, 100));
    quantum_cmd->add_option("--out", qa.out, "report JSON file (default stdout)");

    ExportArgs ex;
    auto* export_cmd = app.add_subcommand("export", "write a topology, assignment, spectrum or result");
    ex.src.attach(export_cmd);
    export_cmd->add_option("--assignment", ex.assignment, "assignment JSON file (default: optimal for --clock)");
    export_cmd->add_option("--what", ex.what)->check(CLI::IsMember({"topology", "assignment", "spectrum", "result"}));
    export_cmd->add_option("--format", ex.format)->check(CLI::IsMember({"json", "csv"}));
    export_cmd->add_option("--out", ex.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*optimize) return cmd_optimize(opt);
        if (*simulate) return cmd_simulate(simargs);
        if (*verify_cmd) return cmd_verify_tables(ver);
        if (*quantum_cmd) return cmd_quantum_check(qa);
        if (*export_cmd) return cmd_export(ex);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
