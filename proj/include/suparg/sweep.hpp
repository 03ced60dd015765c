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

#ifndef SUPARG_SWEEP_HPP
#define SUPARG_SWEEP_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "suparg/certificate.hpp"
#include "suparg/expr.hpp"
#include "suparg/interval.hpp"

namespace suparg::sweep {

using numeric::FloatInterval;

enum class PropertyKind { Bounded, MaxApprox, SignNeg, UnifCont, DarbouxGap, StrictInc, Inc, MviBound, Flat };

const char *to_string(PropertyKind kind) noexcept;

/// True for the kinds whose local predicate reads f'.
bool needs_derivative(PropertyKind kind) noexcept;

struct Params {
	std::optional<double> eps; // MaxApprox, UnifCont, DarbouxGap
	std::optional<double> M;   // MviBound
	std::optional<double> eta; // Flat
};

struct Problem {
	expr::Expr f;
	double a = 0;
	double b = 0;
	PropertyKind kind = PropertyKind::Bounded;
	Params params;
	std::string source; // text recorded in certificates; printed from f when empty
};

/// Throws std::invalid_argument for a malformed problem (a > b, non-finite
/// endpoints, missing or out-of-range parameters) and NotDifferentiable
/// for a derivative kind on a function containing abs.
void validate(const Problem &p);

struct SweepOptions {
	double h_min = 0;  // 0 selects (b - a) * 2^-40
	double h_init = 0; // 0 selects (b - a) / 8
	std::size_t max_pieces = std::size_t{1} << 20;
};

double default_h_min(double a, double b) noexcept;
double default_h_init(double a, double b) noexcept;

struct SweepState {
	double frontier = 0;
	certs::Certificate partial; // valid on [a, frontier] once a piece is in
	std::size_t pieces_used = 0;
};

/// One locally certified step [x, y] and the evaluations that certified it.
struct LocalWitness {
	FloatInterval piece{0};
	FloatInterval range{0};             // f over piece (over [reach, y] for UnifCont)
	std::optional<FloatInterval> deriv; // f' over piece, derivative kinds only
	double reach = 0;                   // UnifCont: left end of the stored piece
	double delta = 0;                   // UnifCont: running modulus after this step
	double cand = 0;                    // MaxApprox: best sample point in this step
	double cand_lo = 0;                 // MaxApprox: lower bound on f(cand)
};

struct SweepFailure {
	enum class Kind { Stalled, HypothesisFail, Budget, Inconclusive };
	Kind kind = Kind::Stalled;
	double at = 0; // frontier when the sweep stopped
	std::optional<FloatInterval> witness;
	std::optional<FloatInterval> enclosure; // f or f' over the witness, as the kind reads it
	std::string detail;
	std::size_t pieces_used = 0;
};

const char *to_string(SweepFailure::Kind kind) noexcept;

/// Final once the frontier sits at b with every piece in place.
bool is_final(const Problem &p, const SweepState &s) noexcept;

/// Frontier at a with an empty certificate. On a degenerate domain the
/// single point piece is certified here when possible.
SweepState base_case(const Problem &p);

/**
 * Tries pieces [x, min(x + h, b)] for h = h_init, h_init / 2, ... down to
 * h_min, where x is the frontier. Returns the first certified piece;
 * HypothesisFail when some tried piece carries a certified refutation;
 * Stalled otherwise. DomainError propagates when it persists down to the
 * smallest piece.
 */
std::variant<LocalWitness, SweepFailure> local_extend(const Problem &p, const SweepState &s, double h_init,
                                                      double h_min);

/// Appends a witness that starts exactly at left's right end. Throws
/// StructureError on an endpoint mismatch.
certs::Certificate combine(PropertyKind kind, const certs::Certificate &left, const LocalWitness &w);

using SweepResult = std::variant<certs::Certificate, SweepFailure>;

SweepResult run_sweep(const Problem &p, const SweepOptions &opts = {});

} // namespace suparg::sweep

#endif
