// Copyright 2026 The QCE Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qce: batch runs, stepping, reference tables, convergence probes and the
// debug service.
//
// Exit status: 0 success, 1 parse or validation error, 2 execution error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

// tables.hpp pulls in Eigen; it must precede httplib, whose <resolv.h>
// defines a _res macro that collides with Eigen parameter names.
#include "qce/tables.hpp"

#include "qce/algolib.hpp"
#include "qce/io.hpp"
#include "qce/program.hpp"
#include "qce/propagator.hpp"
#include "qce/service.hpp"

namespace {

using nlohmann::json;

struct Options {
    std::string set = "Ideal";
    std::string program;
    std::string mi;
    std::optional<double> delta;
    std::string clock = "global";
    std::string out;
    bool json = false;
    std::size_t count = 1;
    std::vector<std::string> sets{"Ideal", "NMR", "NMR-Ideal"};
    std::vector<double> deltas;
    std::string host = "127.0.0.1";
    int port = 8080;
};

class ExecFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

qce::EvolutionConfig config(const Options &o) {
    qce::EvolutionConfig cfg;
    cfg.clock = qce::parse_clock(o.clock);
    if (o.delta) {
        if (!(*o.delta > 0.0)) {
            throw qce::ValidationError("--delta must be positive");
        }
        cfg.delta = o.delta;
    }
    return cfg;
}

void emit(const Options &o, const std::string &text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
        throw qce::ValidationError("cannot write " + o.out);
    }
    f << text;
}

json trace_json(const qce::Session &s) {
    json rows = json::array();
    for (const auto &r : s.trace()) {
        rows.push_back(qce::service::to_json(r));
    }
    json out{{"set", s.instruction_set().name},
             {"program", s.program().name},
             {"clock_convention", std::string(qce::clock_name(s.config().clock))},
             {"status", std::string(qce::status_name(s.status()))},
             {"trace", rows}};
    if (!s.error_message().empty()) {
        out["error"] = s.error_message();
    }
    return out;
}

qce::Session make_session(const Options &o) {
    if (o.program.empty()) {
        throw qce::ValidationError("--program is required");
    }
    auto set = qce::load_set(o.set);
    auto lib = qce::builtin_library();
    auto prog = qce::load_program(o.program, lib);
    // Unresolved names are execution errors: the session reports them.
    return qce::Session(std::move(set), std::move(lib), std::move(prog), config(o));
}

void finish(const Options &o, const qce::Session &s) {
    if (o.json) {
        emit(o, trace_json(s).dump(2) + "\n");
    } else if (!s.trace().empty()) {
        emit(o, qce::export_results(s));
    }
    if (s.status() == qce::SessionStatus::error) {
        throw ExecFailure(s.error_message());
    }
}

void cmd_list_sets(const Options &o) {
    json out = json::array();
    std::ostringstream os;
    for (const auto &id : qce::builtin_set_ids()) {
        const auto s = qce::builtin_set(id);
        out.push_back({{"id", id},
                       {"num_qubits", s.num_qubits},
                       {"instructions", s.instructions.size()}});
        os << id << "  qubits=" << s.num_qubits << "  instructions="
           << s.instructions.size() << '\n';
    }
    emit(o, o.json ? out.dump(2) + "\n" : os.str());
}

void cmd_show(const Options &o) {
    if (!o.program.empty()) {
        const auto lib = qce::builtin_library();
        const auto prog = qce::load_program(o.program, lib);
        const auto set = qce::load_set(o.set);
        const auto flat = qce::flatten(prog, lib, set);
        if (o.json) {
            emit(o, json{{"program", qce::to_json(prog)}, {"flattened", flat}}.dump(2) + "\n");
            return;
        }
        std::ostringstream os;
        os << "# program: " << prog.name << '\n';
        for (std::size_t i = 0; i < flat.size(); ++i) {
            os << i << ' ' << flat[i] << '\n';
        }
        emit(o, os.str());
        return;
    }
    const auto set = qce::load_set(o.set);
    emit(o, qce::to_json(set).dump(2) + "\n");
}

void cmd_run(const Options &o) {
    auto s = make_session(o);
    s.run();
    // Breakpoints only pause interactive sessions; a batch run resumes.
    while (s.status() == qce::SessionStatus::paused_at_breakpoint) {
        s.run();
    }
    finish(o, s);
}

void cmd_step(const Options &o) {
    auto s = make_session(o);
    for (std::size_t i = 0; i < o.count; ++i) {
        if (s.status() == qce::SessionStatus::finished ||
            s.status() == qce::SessionStatus::error) {
            break;
        }
        s.step();
    }
    finish(o, s);
}

void cmd_tables(const Options &o) {
    auto cfg = config(o);
    for (const auto &id : o.sets) {
        qce::builtin_set(id); // validates the id
    }
    const auto report = qce::tables::build_report(o.sets, cfg);
    emit(o, o.json ? qce::tables::to_json(report).dump(2) + "\n"
                   : qce::tables::render_text(report));
}

void cmd_converge(const Options &o) {
    const auto set = qce::load_set(o.set);
    const std::string name = o.mi.empty() ? "X1" : o.mi;
    const auto &mi = set.at(name);
    auto cfg = config(o);
    std::vector<double> deltas = o.deltas;
    if (deltas.empty()) {
        const double d0 = qce::step_size(mi, qce::EvolutionConfig{});
        for (int k = 0; k < 7; ++k) {
            deltas.push_back(d0 * 64.0 / static_cast<double>(1 << k));
        }
    }
    const auto rows = qce::convergence_probe(mi, 0.0, qce::new_ground(set.num_qubits),
                                             deltas, cfg);
    json out = json::array();
    std::ostringstream os;
    os << "# set: " << set.name << "\n# instruction: " << name << '\n';
    os << "delta steps distance ratio\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto &r = rows[i];
        std::optional<double> ratio;
        if (i + 2 < rows.size() && rows[i + 1].distance > 0.0) {
            ratio = r.distance / rows[i + 1].distance;
        }
        char buf[160];
        std::snprintf(buf, sizeof buf, "%.9e %zu %.6e %s\n", r.delta, r.steps,
                      r.distance, ratio ? qce::tables::fmt("%.4f", *ratio).c_str() : "-");
        os << buf;
        json row{{"delta", r.delta}, {"steps", r.steps}, {"distance", r.distance}};
        if (ratio) {
            row["ratio"] = *ratio;
        }
        out.push_back(row);
    }
    emit(o, o.json ? out.dump(2) + "\n" : os.str());
}

void cmd_serve(const Options &o) {
    qce::service::Server server;
    std::cerr << "serving on http://" << o.host << ':' << o.port << '\n';
    server.listen(o.host, o.port);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Spin-1/2 quantum computer emulator"};
    app.require_subcommand(1, 1);
    Options o;

    auto common = [&](CLI::App *c) {
        c->add_option("--set", o.set, "instruction set id or JSON file");
        c->add_option("--program", o.program, "program name or JSON file");
        c->add_option("--delta", o.delta, "fixed time step");
        c->add_option("--clock", o.clock, "clock convention: global | per-instruction");
        c->add_option("--out", o.out, "output file (default stdout)");
        c->add_flag("--json", o.json, "machine-readable JSON output");
    };

    auto *list = app.add_subcommand("list-sets", "list built-in instruction sets");
    list->add_flag("--json", o.json, "JSON output");
    auto *show = app.add_subcommand("show", "print a set or a flattened program");
    common(show);
    auto *run = app.add_subcommand("run", "execute a program and print the results");
    common(run);
    auto *step = app.add_subcommand("step", "execute the first N instructions");
    common(step);
    step->add_option("-n,--count", o.count, "number of steps");
    auto *tables = app.add_subcommand("tables", "reference tables for built-in programs");
    tables->add_option("--delta", o.delta, "fixed time step");
    tables->add_option("--out", o.out, "output file");
    tables->add_flag("--json", o.json, "JSON output");
    tables->add_option("--sets", o.sets, "comma-separated set ids")->delimiter(',');
    auto *converge = app.add_subcommand("converge", "time-step convergence of one MI");
    common(converge);
    converge->add_option("--mi", o.mi, "instruction name (default X1)");
    converge->add_option("--deltas", o.deltas, "descending time steps")->delimiter(',');
    auto *serve = app.add_subcommand("serve", "start the debug service");
    serve->add_option("--host", o.host, "bind address");
    serve->add_option("--port", o.port, "port");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*list) {
            cmd_list_sets(o);
        } else if (*show) {
            cmd_show(o);
        } else if (*run) {
            cmd_run(o);
        } else if (*step) {
            cmd_step(o);
        } else if (*tables) {
            cmd_tables(o);
        } else if (*converge) {
            cmd_converge(o);
        } else if (*serve) {
            cmd_serve(o);
        }
    } catch (const ExecFailure &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const qce::ExecutionError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const qce::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
