/*
 *   Copyright 2026 The suparg Authors
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

#ifndef SUPARG_ERRORS_HPP
#define SUPARG_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace suparg {

/// Base of every error raised by the engine. `kind()` is a stable,
/// machine-parsable tag used by the command line front end.
class Error : public std::runtime_error {
public:
	Error(std::string kind, const std::string &what)
	    : std::runtime_error(what), kind_(std::move(kind)) {}

	const std::string &kind() const noexcept { return kind_; }

private:
	std::string kind_;
};

class DivisionByZeroInterval : public Error {
public:
	explicit DivisionByZeroInterval(const std::string &what)
	    : Error("DivisionByZeroInterval", what) {}
};

class OverflowError : public Error {
public:
	explicit OverflowError(const std::string &what) : Error("OverflowError", what) {}
};

class DomainError : public Error {
public:
	DomainError(std::string fn, const std::string &what)
	    : Error("DomainError", what), fn_(std::move(fn)) {}

	/// Name of the elementary function whose precondition failed.
	const std::string &fn() const noexcept { return fn_; }

private:
	std::string fn_;
};

class RationalDivisionByZero : public Error {
public:
	RationalDivisionByZero() : Error("RationalDivisionByZero", "rational division by zero") {}
};

class ParseError : public Error {
public:
	ParseError(std::size_t position, std::string expected)
	    : Error("ParseError", "at offset " + std::to_string(position) + ": expected " + expected),
	      position_(position), expected_(std::move(expected)) {}

	std::size_t position() const noexcept { return position_; }
	const std::string &expected() const noexcept { return expected_; }

private:
	std::size_t position_;
	std::string expected_;
};

class NotDifferentiable : public Error {
public:
	explicit NotDifferentiable(const std::string &what) : Error("NotDifferentiable", what) {}
};

class StructureError : public Error {
public:
	explicit StructureError(const std::string &what) : Error("StructureError", what) {}
};

class PreconditionError : public Error {
public:
	explicit PreconditionError(const std::string &what) : Error("PreconditionError", what) {}
};

} // namespace suparg

#endif
