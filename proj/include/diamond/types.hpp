/*
 * Copyright 2026 The DIAMOND-sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace diamond {

using Scalar = std::complex<double>;
using Index = std::int64_t;

/// Base of every error thrown by the library. The CLI maps subclasses to
/// exit codes (usage = 1, data = 2, verification = 3).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

/// Index or argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Non-square input or mismatched dimensions.
class ShapeError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

/// Malformed blocking request (cuts out of range, unsorted, ...).
class PlanError : public Error {
public:
    using Error::Error;
};

/// Internal consistency failure inside the cycle simulator (FIFO overwrite,
/// livelock, grid over capacity). Always indicates a logic bug or a violated
/// blocking contract, never bad user data.
class SimulatorError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Raised when a cross-check against an oracle fails.
class VerificationError : public Error {
public:
    using Error::Error;
};

}  // namespace diamond
