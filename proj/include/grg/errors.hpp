/*
 * Copyright 2026 The grg authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace grg {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input text. `line` is 1-based, 0 when unknown.
struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& msg)
        : Error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg : msg), line(line_) {}
};

/// A constructed object violates a structural invariant.
struct ValidationError : Error {
    using Error::Error;
};

/// A specialist solver was invoked on an instance outside its class.
struct WrongClass : Error {
    using Error::Error;
};

/// Family of resource-limit errors (CLI exit code 4).
struct BudgetError : Error {
    using Error::Error;
};

/// More target sets than the visited-mask can index.
struct TooManyTargets : BudgetError {
    using BudgetError::BudgetError;
};

/// A product construction would exceed the configured memory budget.
struct MemoryBudget : BudgetError {
    using BudgetError::BudgetError;
};

/// An oracle refused an instance larger than its budget.
struct BudgetExceeded : BudgetError {
    using BudgetError::BudgetError;
};

/// lasso_witness called although the avoided set is unavoidable.
struct NoWitness : Error {
    using Error::Error;
};

/// A strategy misses a move on a reachable state it must cover.
struct PartialStrategy : Error {
    using Error::Error;
};

/// Random-instance parameters that cannot be satisfied.
struct InfeasibleParams : Error {
    using Error::Error;
};

} // namespace grg
