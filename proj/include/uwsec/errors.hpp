// SPDX-License-Identifier: Apache-2.0
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

#ifndef UWSEC_ERRORS_HPP
#define UWSEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace uwsec {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function.
class DomainError : public Error {
public:
    using Error::Error;
};

// Gamma function (or a product of them) evaluated at a pole.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

// Result not representable as a double; carries the natural log of the magnitude.
class OverflowError : public Error {
public:
    OverflowError(const std::string& what, double log_value)
        : Error(what), log_value_(log_value) {}
    double log_value() const noexcept { return log_value_; }

private:
    double log_value_;
};

// Iterative evaluation did not reach the requested tolerance.
// best_estimate() holds the last value and error_estimate() its absolute error.
class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, double best, double err)
        : Error(what), best_(best), err_(err) {}
    double best_estimate() const noexcept { return best_; }
    double error_estimate() const noexcept { return err_; }

private:
    double best_;
    double err_;
};

// Invalid Meijer G orders, or a G-function whose defining integral does not exist.
class SpecError : public Error {
public:
    using Error::Error;
};

// Moments that cannot come from a random variable (variance <= 0).
class DegenerateError : public Error {
public:
    using Error::Error;
};

class UnknownPreset : public Error {
public:
    using Error::Error;
};

// Malformed configuration text.
class ConfigError : public Error {
public:
    using Error::Error;
};

void require(bool cond, const char* what);
void require_domain(bool cond, const std::string& what);

} // namespace uwsec

#endif
