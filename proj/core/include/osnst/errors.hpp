// Copyright 2026 the osnst authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OSNST_ERRORS_HPP
#define OSNST_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace osnst {

/// Shape of an argument does not match the operation's contract.
class dimension_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A restricted sub-matrix turned out to be (numerically) rank deficient.
/// Carries the offending column index set so callers can report which
/// support caused the failure.
class rank_deficiency_error : public std::runtime_error {
public:
    rank_deficiency_error(const std::string& what, std::vector<int> indices)
        : std::runtime_error(what), indices_(std::move(indices)) {}

    const std::vector<int>& indices() const noexcept { return indices_; }

private:
    std::vector<int> indices_;
};

/// Input is degenerate for the requested operation (e.g. an all-zero
/// matrix passed to an orthonormalization).
class degenerate_input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Brute-force subset enumeration would exceed the configured guard.
class subset_guard_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite values appeared mid-computation.
class numeric_overflow_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace osnst

#endif  // OSNST_ERRORS_HPP
