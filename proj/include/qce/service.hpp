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
/**
 * @file
 * Debug service: executor sessions behind a JSON-over-HTTP interface.
 *
 *   GET  /sets                      built-in instruction sets (summary)
 *   GET  /sets/{id}                 full set document
 *   GET  /programs                  built-in programs
 *   GET  /programs/{name}
 *   POST /programs/validate         {set, program} -> {ok, diagnostics}
 *   POST /sessions                  {set, program, clock?, delta?, library?}
 *   POST /sessions/{id}/control     {action: run|step|reset}
 *   GET  /sessions/{id}/snapshot    ?detail=readouts|amplitudes
 *   GET  /events/{id}               text/event-stream, ?from=N&wait=0|1
 *
 * `set` and `program` are either built-in ids or inline JSON documents in
 * the file format of io.hpp.
 */
#pragma once

#include <array>
#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "httplib.h"
#include "json.hpp"

#include "qce/algolib.hpp"
#include "qce/error.hpp"
#include "qce/io.hpp"
#include "qce/program.hpp"
#include "qce/state.hpp"

namespace qce::service {

using nlohmann::json;

/// Error carrying an HTTP status and a JSON body.
class ServiceError : public Error {
  public:
    ServiceError(int status, std::string message, json diagnostics = json::array())
        : Error(std::move(message)), status_(status),
          diagnostics_(std::move(diagnostics)) {}

    [[nodiscard]] int status() const { return status_; }
    [[nodiscard]] const json &diagnostics() const { return diagnostics_; }

  private:
    int status_;
    json diagnostics_;
};

inline json readouts_json(const std::vector<std::array<double, 3>> &r) {
    json out = json::array();
    for (const auto &q : r) {
        out.push_back({q[0], q[1], q[2]});
    }
    return out;
}

inline json to_json(const TraceRecord &r) {
    return {{"index", r.index},
            {"name", r.name},
            {"clock", r.clock},
            {"readouts", readouts_json(r.readouts)}};
}

inline json to_json(const Diagnostic &d) {
    return {{"instruction", d.instruction}, {"field", d.field}, {"message", d.message}};
}

inline json amplitudes_json(const StateVector &s) {
    json amps = json::array();
    json labels = json::array();
    for (std::size_t n = 0; n < s.dim(); ++n) {
        amps.push_back({s[n].real(), s[n].imag()});
        labels.push_back(basis_label(n, s.num_qubits()));
    }
    return {{"amplitudes", amps}, {"basis", labels}};
}

/// One executor session plus its published state and event log.
class SessionHandle {
  public:
    SessionHandle(std::string id, Session session)
        : id_(std::move(id)), session_(std::move(session)) {
        session_.set_observer([this](const TraceRecord &rec, const StateVector &s) {
            on_executed(rec, s);
        });
        publish();
    }

    SessionHandle(const SessionHandle &) = delete;
    SessionHandle &operator=(const SessionHandle &) = delete;

    [[nodiscard]] const std::string &id() const { return id_; }

    /// Runs one control action; concurrent commands are serialized.
    json control(const std::string &action) {
        std::lock_guard cmd(command_mutex_);
        const std::size_t before = session_.trace().size();
        try {
            if (action == "run") {
                session_.run();
            } else if (action == "step") {
                session_.step();
            } else if (action == "reset") {
                session_.reset();
            } else {
                throw ServiceError(400, "unknown action: " + action);
            }
        } catch (const TransitionError &e) {
            throw ServiceError(409, e.what());
        }
        const auto &trace = session_.trace();
        json records = json::array();
        for (std::size_t i = action == "reset" ? trace.size() : before;
             i < trace.size(); ++i) {
            records.push_back(to_json(trace[i]));
        }
        if (action == "reset") {
            push_event("reset");
        } else if (session_.status() == SessionStatus::finished) {
            push_event("finished");
        } else if (session_.status() == SessionStatus::error) {
            push_event("error");
        }
        publish();
        json out = summary();
        out["trace"] = std::move(records);
        return out;
    }

    /// Last published state; does not wait for a running command.
    json snapshot(bool amplitudes) const {
        std::lock_guard lk(state_mutex_);
        json out = summary_of(published_);
        out["readouts"] = readouts_json(readouts(published_.state));
        if (amplitudes) {
            out.update(amplitudes_json(published_.state));
        }
        return out;
    }

    json summary() const {
        std::lock_guard lk(state_mutex_);
        return summary_of(published_);
    }

    struct EventBatch {
        std::vector<json> events;
        bool done = false; // terminal status reached and nothing left
    };

    /// Events with sequence number >= from; waits up to `timeout` if none.
    EventBatch events_since(std::size_t from, std::chrono::milliseconds timeout) {
        std::unique_lock lk(state_mutex_);
        events_cv_.wait_for(lk, timeout, [&] {
            return closed_ || events_.size() > from;
        });
        EventBatch b;
        for (std::size_t i = from; i < events_.size(); ++i) {
            b.events.push_back(events_[i]);
        }
        const bool terminal = published_.status == SessionStatus::finished ||
                              published_.status == SessionStatus::error;
        b.done = closed_ || (terminal && !events_.empty() &&
                             is_terminal_event(events_.back()));
        return b;
    }

    void close() {
        {
            std::lock_guard lk(state_mutex_);
            closed_ = true;
        }
        events_cv_.notify_all();
    }

  private:
    struct Published {
        std::string set;
        std::string program;
        std::string clock_convention;
        SessionStatus status = SessionStatus::ready;
        std::size_t pc = 0;
        double clock = 0.0;
        std::string error;
        StateVector state = new_ground(1);
    };

    static bool is_terminal_event(const json &e) {
        const auto &t = e.at("type");
        return t == "finished" || t == "error";
    }

    json summary_of(const Published &p) const {
        json out{{"id", id_},
                 {"set", p.set},
                 {"program", p.program},
                 {"clock_convention", p.clock_convention},
                 {"status", std::string(status_name(p.status))},
                 {"pc", p.pc},
                 {"clock", p.clock},
                 {"num_qubits", p.state.num_qubits()}};
        if (!p.error.empty()) {
            out["error"] = p.error;
        }
        return out;
    }

    // Called with command_mutex_ held (from inside Session::run/step).
    void on_executed(const TraceRecord &rec, const StateVector &s) {
        const bool bp = session_.status() == SessionStatus::paused_at_breakpoint;
        {
            std::lock_guard lk(state_mutex_);
            published_.state = s;
            published_.pc = rec.index + 1;
            published_.clock = session_.clock();
            published_.status = session_.status();
            events_.push_back({{"type", bp ? "breakpoint" : "step"},
                               {"seq", events_.size()},
                               {"pc", rec.index + 1},
                               {"name", rec.name},
                               {"clock", session_.clock()},
                               {"readouts", readouts_json(rec.readouts)}});
        }
        events_cv_.notify_all();
    }

    void push_event(const char *type) {
        {
            std::lock_guard lk(state_mutex_);
            json e{{"type", type},
                   {"seq", events_.size()},
                   {"pc", session_.pc()},
                   {"clock", session_.clock()},
                   {"readouts", readouts_json(readouts(session_.state()))}};
            if (session_.status() == SessionStatus::error) {
                e["message"] = session_.error_message();
            }
            events_.push_back(std::move(e));
        }
        events_cv_.notify_all();
    }

    void publish() {
        std::lock_guard lk(state_mutex_);
        published_.set = session_.instruction_set().name;
        published_.program = session_.program().name;
        published_.clock_convention = std::string(clock_name(session_.config().clock));
        published_.status = session_.status();
        published_.pc = session_.pc();
        published_.clock = session_.clock();
        published_.error = session_.error_message();
        published_.state = session_.state();
    }

    std::string id_;
    std::mutex command_mutex_;
    Session session_;
    mutable std::mutex state_mutex_;
    std::condition_variable events_cv_;
    Published published_;
    std::vector<json> events_;
    bool closed_ = false;
};

struct CreateRequest {
    json set = "Ideal";
    json program;
    std::string clock = "global";
    std::optional<double> delta;
    json library = json::array(); // extra programs
};

class SessionManager {
  public:
    std::shared_ptr<SessionHandle> create(const CreateRequest &req) {
        InstructionSet set = resolve_set(req.set);
        ProgramLibrary lib = builtin_library();
        if (!req.library.is_array()) {
            throw ServiceError(400, "library must be an array of programs");
        }
        for (const auto &p : req.library) {
            auto prog = program_from_json(p);
            lib[prog.name] = std::move(prog);
        }
        QuantumProgram prog = resolve_program(req.program, lib);
        const auto diags = validate_program(prog, lib, set);
        if (!diags.empty()) {
            json d = json::array();
            for (const auto &x : diags) {
                d.push_back(to_json(x));
            }
            throw ServiceError(400, "invalid program", d);
        }
        EvolutionConfig cfg;
        cfg.clock = parse_clock(req.clock);
        if (req.delta) {
            if (!(*req.delta > 0.0)) {
                throw ServiceError(400, "delta must be positive");
            }
            cfg.delta = req.delta;
        }
        std::lock_guard lk(mutex_);
        const std::string id = "s" + std::to_string(++counter_);
        auto h = std::make_shared<SessionHandle>(
            id, Session(std::move(set), std::move(lib), std::move(prog), cfg));
        sessions_[id] = h;
        return h;
    }

    std::shared_ptr<SessionHandle> get(const std::string &id) const {
        std::lock_guard lk(mutex_);
        auto it = sessions_.find(id);
        if (it == sessions_.end()) {
            throw ServiceError(404, "unknown session: " + id);
        }
        return it->second;
    }

    void close_all() {
        std::lock_guard lk(mutex_);
        for (auto &[id, h] : sessions_) {
            h->close();
        }
    }

    static InstructionSet resolve_set(const json &j) {
        try {
            if (j.is_string()) {
                const auto id = j.get<std::string>();
                for (const auto &b : builtin_set_ids()) {
                    if (b == id) {
                        return builtin_set(id);
                    }
                }
                throw ServiceError(400, "unknown instruction set: " + id);
            }
            if (j.is_object()) {
                return set_from_json(j);
            }
        } catch (const ServiceError &) {
            throw;
        } catch (const Error &e) {
            throw ServiceError(400, e.what());
        }
        throw ServiceError(400, "set must be an id or a set document");
    }

    static QuantumProgram resolve_program(const json &j, const ProgramLibrary &lib) {
        if (j.is_string()) {
            auto it = lib.find(j.get<std::string>());
            if (it == lib.end()) {
                throw ServiceError(400, "unknown program: " + j.get<std::string>());
            }
            return it->second;
        }
        if (j.is_object()) {
            try {
                return program_from_json(j);
            } catch (const Error &e) {
                throw ServiceError(400, e.what());
            }
        }
        throw ServiceError(400, "program must be a name or a program document");
    }

  private:
    mutable std::mutex mutex_;
    std::size_t counter_ = 0;
    std::map<std::string, std::shared_ptr<SessionHandle>> sessions_;
};

/// HTTP front end. start() binds and serves on a background thread.
class Server {
  public:
    Server() { routes(); }
    ~Server() { stop(); }

    Server(const Server &) = delete;
    Server &operator=(const Server &) = delete;

    /// Binds `host:port` (port 0 picks a free port) and returns the port.
    int start(const std::string &host = "127.0.0.1", int port = 0) {
        const int bound = port == 0 ? http_.bind_to_any_port(host)
                                    : (http_.bind_to_port(host, port) ? port : -1);
        if (bound < 0) {
            throw ConfigError("cannot bind " + host + ":" + std::to_string(port));
        }
        port_ = bound;
        thread_ = std::thread([this] { http_.listen_after_bind(); });
        http_.wait_until_ready();
        return bound;
    }

    /// Serves on the calling thread until stop() is called elsewhere.
    void listen(const std::string &host, int port) {
        if (!http_.listen(host, port)) {
            throw ConfigError("cannot listen on " + host + ":" + std::to_string(port));
        }
    }

    void stop() {
        manager_.close_all();
        if (http_.is_running()) {
            http_.stop();
        }
        if (thread_.joinable()) {
            thread_.join();
        }
    }

    [[nodiscard]] int port() const { return port_; }
    SessionManager &manager() { return manager_; }

  private:
    using Req = httplib::Request;
    using Res = httplib::Response;

    static void send(Res &res, const json &body, int status = 200) {
        res.status = status;
        res.set_content(body.dump(), "application/json");
    }

    template <typename F> static void guarded(Res &res, F &&f) {
        try {
            f();
        } catch (const ServiceError &e) {
            json body{{"error", e.what()}};
            if (!e.diagnostics().empty()) {
                body["diagnostics"] = e.diagnostics();
            }
            send(res, body, e.status());
        } catch (const json::exception &e) {
            send(res, {{"error", std::string("bad request: ") + e.what()}}, 400);
        } catch (const ValidationError &e) {
            send(res, {{"error", e.what()}}, 400);
        } catch (const std::exception &e) {
            send(res, {{"error", e.what()}}, 500);
        }
    }

    static json parse_body(const Req &req) {
        try {
            return req.body.empty() ? json::object() : json::parse(req.body);
        } catch (const json::exception &e) {
            throw ServiceError(400, std::string("malformed JSON: ") + e.what());
        }
    }

    void routes() {
        http_.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                   {"Access-Control-Allow-Headers", "Content-Type"}});
        http_.Options(R"(.*)", [](const Req &, Res &res) { res.status = 204; });

        http_.Get("/sets", [](const Req &, Res &res) {
            json out = json::array();
            for (const auto &id : builtin_set_ids()) {
                const auto s = builtin_set(id);
                json names = json::array();
                for (const auto &mi : s.instructions) {
                    names.push_back(mi.name);
                }
                out.push_back({{"id", id},
                               {"name", s.name},
                               {"num_qubits", s.num_qubits},
                               {"instructions", names}});
            }
            send(res, out);
        });

        http_.Get(R"(/sets/([^/]+))", [](const Req &req, Res &res) {
            guarded(res, [&] {
                send(res, qce::to_json(SessionManager::resolve_set(json(req.matches[1].str()))));
            });
        });

        http_.Get("/programs", [](const Req &, Res &res) {
            json out = json::array();
            for (const auto &[name, p] : builtin_library()) {
                out.push_back(qce::to_json(p));
            }
            send(res, out);
        });

        http_.Get(R"(/programs/([^/]+))", [](const Req &req, Res &res) {
            guarded(res, [&] {
                const auto lib = builtin_library();
                const std::string name = req.matches[1].str();
                auto it = lib.find(name);
                if (it == lib.end()) {
                    throw ServiceError(404, "unknown program: " + name);
                }
                send(res, qce::to_json(it->second));
            });
        });

        http_.Post("/programs/validate", [](const Req &req, Res &res) {
            guarded(res, [&] {
                const json body = parse_body(req);
                const auto set = SessionManager::resolve_set(body.value("set", json("Ideal")));
                const auto lib = builtin_library();
                const auto prog = SessionManager::resolve_program(body.at("program"), lib);
                json diags = json::array();
                for (const auto &d : validate_program(prog, lib, set)) {
                    diags.push_back(to_json(d));
                }
                send(res, {{"ok", diags.empty()}, {"diagnostics", diags}});
            });
        });

        http_.Post("/sessions", [this](const Req &req, Res &res) {
            guarded(res, [&] {
                const json body = parse_body(req);
                CreateRequest cr;
                cr.set = body.value("set", json("Ideal"));
                cr.program = body.at("program");
                cr.clock = body.value("clock", std::string("global"));
                if (body.contains("delta") && !body["delta"].is_null()) {
                    cr.delta = body["delta"].get<double>();
                }
                cr.library = body.value("library", json::array());
                auto h = manager_.create(cr);
                send(res, h->summary(), 201);
            });
        });

        http_.Post(R"(/sessions/([^/]+)/control)", [this](const Req &req, Res &res) {
            guarded(res, [&] {
                auto h = manager_.get(req.matches[1].str());
                const json body = parse_body(req);
                send(res, h->control(body.at("action").get<std::string>()));
            });
        });

        http_.Get(R"(/sessions/([^/]+)/snapshot)", [this](const Req &req, Res &res) {
            guarded(res, [&] {
                auto h = manager_.get(req.matches[1].str());
                const std::string detail = req.has_param("detail")
                                               ? req.get_param_value("detail")
                                               : "readouts";
                if (detail != "readouts" && detail != "amplitudes") {
                    throw ServiceError(400, "detail must be readouts or amplitudes");
                }
                send(res, h->snapshot(detail == "amplitudes"));
            });
        });

        http_.Get(R"(/sessions/([^/]+))", [this](const Req &req, Res &res) {
            guarded(res, [&] { send(res, manager_.get(req.matches[1].str())->summary()); });
        });

        http_.Get(R"(/events/([^/]+))", [this](const Req &req, Res &res) {
            guarded(res, [&] {
                auto h = manager_.get(req.matches[1].str());
                std::size_t from = req.has_param("from")
                                       ? std::stoul(req.get_param_value("from"))
                                       : 0;
                const bool wait = !req.has_param("wait") || req.get_param_value("wait") != "0";
                res.set_header("Cache-Control", "no-cache");
                res.set_chunked_content_provider(
                    "text/event-stream",
                    [h, from, wait](std::size_t, httplib::DataSink &sink) mutable {
                        using namespace std::chrono_literals;
                        auto batch = h->events_since(from, wait ? 250ms : 0ms);
                        for (const auto &e : batch.events) {
                            const std::string line = "data: " + e.dump() + "\n\n";
                            if (!sink.write(line.data(), line.size())) {
                                return false;
                            }
                            ++from;
                        }
                        if (batch.done || !wait) {
                            sink.done();
                        }
                        return true;
                    });
            });
        });
    }

    httplib::Server http_;
    SessionManager manager_;
    std::thread thread_;
    int port_ = 0;
};

} // namespace qce::service
