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
#pragma once

#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <string>

#ifndef QCE_DEFAULT_MAX_QUBITS
#define QCE_DEFAULT_MAX_QUBITS 8
#endif

namespace qce {

/// Base of every error raised by the emulator.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Out-of-range sizes and indices (qubit counts, qubit labels).
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Malformed inputs: non-unitary matrices, bad files, bad parameters.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Raised while executing a program, e.g. "MI not found: Z9".
class ExecutionError : public Error {
  public:
    using Error::Error;
};

/// Upper bound on the number of qubits. QCE_MAX_QUBITS overrides the
/// compiled-in default.
inline std::size_t max_qubits() {
    if (const char *env = std::getenv("QCE_MAX_QUBITS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1 && v <= 30) {
                return static_cast<std::size_t>(v);
            }
        } catch (const std::exception &) {
        }
    }
    return QCE_DEFAULT_MAX_QUBITS;
}

} // namespace qce
