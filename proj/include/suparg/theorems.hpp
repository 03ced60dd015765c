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

#ifndef SUPARG_THEOREMS_HPP
#define SUPARG_THEOREMS_HPP

#include <string_view>

#include "suparg/sweep.hpp"

namespace suparg::theorems {

using sweep::SweepOptions;
using sweep::SweepResult;

// Each driver parses `fn`, runs the sweep for the matching property and
// returns either a certificate valid on [a, b] or the sweep failure.
// ParseError, DomainError and NotDifferentiable propagate.

/// sup f <= M with M >= the smallest positive normal.
SweepResult prove_bound(std::string_view fn, double a, double b, const SweepOptions &opts = {});

/// A point c with f(t) <= f(c) + eps on [a, b].
SweepResult prove_max(std::string_view fn, double a, double b, double eps, const SweepOptions &opts = {});

/**
 * Needs a certified f(a) < 0 (PreconditionError otherwise). Returns a
 * NegCert when f < 0 on all of [a, b]; otherwise bisects from the stalled
 * frontier to a RootBracket of width <= tol, or fails Inconclusive when
 * signs cannot be certified.
 */
SweepResult prove_root(std::string_view fn, double a, double b, double tol, const SweepOptions &opts = {});

/// delta > 0 with |s - t| < delta => |f(s) - f(t)| < eps.
SweepResult prove_modulus(std::string_view fn, double a, double b, double eps, const SweepOptions &opts = {});

/// Darboux sums L <= integral <= U with U - L <= eps / 2 (up to rounding).
SweepResult prove_integral(std::string_view fn, double a, double b, double eps, const SweepOptions &opts = {});

SweepResult prove_monotone(std::string_view fn, double a, double b, bool strict, const SweepOptions &opts = {});

/// f' <= M on [a, b].
SweepResult prove_mvi(std::string_view fn, double a, double b, double M, const SweepOptions &opts = {});

/// |f'| <= eta on [a, b].
SweepResult prove_flat(std::string_view fn, double a, double b, double eta, const SweepOptions &opts = {});

} // namespace suparg::theorems

#endif
