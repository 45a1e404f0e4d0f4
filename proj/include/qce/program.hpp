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
 * Quantum programs (ordered references to MIs or other programs) and the
 * executor session with run / step / reset and breakpoint handling.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qce/error.hpp"
#include "qce/model.hpp"
#include "qce/propagator.hpp"
#include "qce/state.hpp"

namespace qce {

struct QuantumProgram {
    std::string name;
    std::vector<std::string> steps;

    bool operator==(const QuantumProgram &) const = default;
};

using ProgramLibrary = std::map<std::string, QuantumProgram, std::less<>>;

class CycleError : public ExecutionError {
  public:
    using ExecutionError::ExecutionError;
};

/// Thrown when a control action is not allowed in the current status.
class TransitionError : public Error {
  public:
    using Error::Error;
};

inline constexpr std::size_t kMaxProgramDepth = 64;

namespace detail {

inline void expand(const QuantumProgram &prog, const ProgramLibrary &lib,
                   const InstructionSet &set, std::vector<std::string> &path,
                   std::vector<std::string> &out) {
    if (path.size() > kMaxProgramDepth) {
        throw CycleError("program nesting deeper than " +
                         std::to_string(kMaxProgramDepth));
    }
    for (const auto &ref : prog.steps) {
        // A name in the instruction set shadows a program of the same name.
        if (set.find(ref) != nullptr) {
            out.push_back(ref);
            continue;
        }
        auto it = lib.find(ref);
        if (it == lib.end()) {
            throw ExecutionError("MI not found: " + ref);
        }
        for (const auto &p : path) {
            if (p == ref) {
                std::string msg = "program cycle: ";
                for (const auto &q : path) {
                    msg += q + " -> ";
                }
                throw CycleError(msg + ref);
            }
        }
        path.push_back(ref);
        expand(it->second, lib, set, path, out);
        path.pop_back();
    }
}

} // namespace detail

/// Depth-first expansion into MI names. Only the first initialize MI of the
/// expanded list survives.
inline std::vector<std::string> flatten(const QuantumProgram &prog,
                                        const ProgramLibrary &lib,
                                        const InstructionSet &set) {
    std::vector<std::string> raw;
    std::vector<std::string> path{prog.name};
    detail::expand(prog, lib, set, path, raw);
    std::vector<std::string> out;
    out.reserve(raw.size());
    bool seen_init = false;
    for (auto &name : raw) {
        if (set.at(name).kind == InstructionKind::initialize) {
            if (seen_init) {
                continue;
            }
            seen_init = true;
        }
        out.push_back(std::move(name));
    }
    return out;
}

enum class SessionStatus { ready, running, paused_at_breakpoint, finished, error };

inline std::string_view status_name(SessionStatus s) {
    switch (s) {
    case SessionStatus::ready:
        return "ready";
    case SessionStatus::running:
        return "running";
    case SessionStatus::paused_at_breakpoint:
        return "paused_at_breakpoint";
    case SessionStatus::finished:
        return "finished";
    default:
        return "error";
    }
}

struct TraceRecord {
    std::size_t index = 0; // position in the flattened program
    std::string name;
    double clock = 0.0; // clock when the MI started
    std::vector<std::array<double, 3>> readouts; // [qubit-1][x,y,z] after
};

class Session {
  public:
    /// Called after every executed MI with the new record and state.
    using Observer = std::function<void(const TraceRecord &, const StateVector &)>;

    Session(InstructionSet set, ProgramLibrary library, QuantumProgram program,
            EvolutionConfig cfg = {})
        : set_(std::move(set)), library_(std::move(library)),
          program_(std::move(program)), cfg_(cfg),
          state_(new_ground(set_.num_qubits)) {}

    [[nodiscard]] SessionStatus status() const { return status_; }
    [[nodiscard]] const StateVector &state() const { return state_; }
    [[nodiscard]] double clock() const { return clock_; }
    [[nodiscard]] std::size_t pc() const { return pc_; }
    [[nodiscard]] const std::vector<TraceRecord> &trace() const { return trace_; }
    [[nodiscard]] const std::string &error_message() const { return error_; }
    [[nodiscard]] const InstructionSet &instruction_set() const { return set_; }
    [[nodiscard]] const QuantumProgram &program() const { return program_; }
    [[nodiscard]] const EvolutionConfig &config() const { return cfg_; }

    void set_observer(Observer obs) { observer_ = std::move(obs); }

    /// Flattened MI list; empty until the first run or step.
    [[nodiscard]] const std::vector<std::string> &flat() const { return flat_; }

    /// Executes until the end of the program or the next breakpoint.
    Session &run() {
        require_runnable("run");
        if (!prepare()) {
            return *this;
        }
        status_ = SessionStatus::running;
        while (pc_ < flat_.size()) {
            if (!execute_one()) {
                return *this;
            }
            if (status_ == SessionStatus::paused_at_breakpoint) {
                return *this;
            }
        }
        status_ = SessionStatus::finished;
        return *this;
    }

    /// Executes exactly one flattened MI.
    Session &step() {
        require_runnable("step");
        if (!prepare()) {
            return *this;
        }
        if (pc_ >= flat_.size()) {
            status_ = SessionStatus::finished;
            return *this;
        }
        status_ = SessionStatus::running;
        if (!execute_one()) {
            return *this;
        }
        if (status_ == SessionStatus::running) {
            status_ = pc_ >= flat_.size() ? SessionStatus::finished
                                          : SessionStatus::ready;
        }
        return *this;
    }

    Session &reset() {
        state_ = new_ground(set_.num_qubits);
        clock_ = 0.0;
        pc_ = 0;
        trace_.clear();
        flat_.clear();
        flattened_ = false;
        error_.clear();
        status_ = SessionStatus::ready;
        return *this;
    }

  private:
    void require_runnable(std::string_view action) const {
        if (status_ != SessionStatus::ready &&
            status_ != SessionStatus::paused_at_breakpoint) {
            throw TransitionError(std::string(action) + " not allowed in status " +
                                  std::string(status_name(status_)));
        }
    }

    bool prepare() {
        if (flattened_) {
            return true;
        }
        try {
            flat_ = flatten(program_, library_, set_);
            flattened_ = true;
            return true;
        } catch (const Error &e) {
            fail(e.what());
            return false;
        }
    }

    void fail(std::string msg) {
        error_ = std::move(msg);
        status_ = SessionStatus::error;
    }

    bool execute_one() {
        const MicroInstruction &mi = set_.at(flat_[pc_]);
        TraceRecord rec;
        rec.index = pc_;
        rec.name = mi.name;
        rec.clock = clock_;
        try {
            switch (mi.kind) {
            case InstructionKind::initialize:
                state_ = new_ground(set_.num_qubits);
                clock_ = 0.0;
                rec.clock = 0.0;
                break;
            case InstructionKind::breakpoint:
                status_ = SessionStatus::paused_at_breakpoint;
                break;
            default:
                clock_ = evolve(state_, mi, clock_, cfg_);
            }
        } catch (const Error &e) {
            fail(mi.name + ": " + e.what());
            return false;
        }
        ++pc_;
        rec.readouts = readouts(state_);
        trace_.push_back(rec);
        if (observer_) {
            observer_(trace_.back(), state_);
        }
        return true;
    }

    InstructionSet set_;
    ProgramLibrary library_;
    QuantumProgram program_;
    EvolutionConfig cfg_;
    StateVector state_;
    double clock_ = 0.0;
    std::size_t pc_ = 0;
    std::vector<std::string> flat_;
    bool flattened_ = false;
    std::vector<TraceRecord> trace_;
    std::string error_;
    SessionStatus status_ = SessionStatus::ready;
    Observer observer_;
};

// ---------------------------------------------------------------------------
// Result text format

/// Fixed six-decimal rendering without negative zero.
inline std::string fixed6(double v) {
    if (std::abs(v) < 5e-7) {
        v = 0.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

struct ResultDocument {
    std::string set;
    std::string program;
    std::string clock_convention;
    struct Row {
        std::size_t index = 0;
        std::string name;
        double clock = 0.0;
        std::vector<double> values; // Qx Qy Qz per qubit
    };
    std::vector<Row> rows;
};

inline void export_results(const Session &s, std::ostream &os) {
    if (s.trace().empty()) {
        throw ValidationError("no executed instructions to export");
    }
    os << "# set: " << s.instruction_set().name << '\n';
    os << "# program: " << s.program().name << '\n';
    os << "# clock_convention: " << clock_name(s.config().clock) << '\n';
    for (const auto &r : s.trace()) {
        os << r.index << ' ' << r.name << ' ' << fixed6(r.clock);
        for (const auto &q : r.readouts) {
            for (double v : q) {
                os << ' ' << fixed6(v);
            }
        }
        os << '\n';
    }
}

inline std::string export_results(const Session &s) {
    std::ostringstream os;
    export_results(s, os);
    return os.str();
}

inline ResultDocument parse_results(std::istream &is) {
    ResultDocument doc;
    std::string line;
    auto header = [&](std::string_view key, std::string &dst) {
        const std::string prefix = "# " + std::string(key) + ": ";
        if (line.rfind(prefix, 0) == 0) {
            dst = line.substr(prefix.size());
            return true;
        }
        return false;
    };
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            if (!header("set", doc.set) && !header("program", doc.program) &&
                !header("clock_convention", doc.clock_convention)) {
                throw ValidationError("unknown header line: " + line);
            }
            continue;
        }
        std::istringstream ls(line);
        ResultDocument::Row row;
        if (!(ls >> row.index >> row.name >> row.clock)) {
            throw ValidationError("malformed result line: " + line);
        }
        double v = 0.0;
        while (ls >> v) {
            row.values.push_back(v);
        }
        if (!ls.eof() || row.values.size() % 3 != 0) {
            throw ValidationError("malformed result line: " + line);
        }
        doc.rows.push_back(std::move(row));
    }
    return doc;
}

} // namespace qce
