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

#ifndef SUPARG_CERTIFICATE_HPP
#define SUPARG_CERTIFICATE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "suparg/expr.hpp"
#include "suparg/interval.hpp"

namespace suparg::certs {

using numeric::FloatInterval;

enum class Theorem { Bvt, Evt, Ivt, Uct, Dit, Sift, Ift, Mvi, Cft, I1, I2 };

const char *to_string(Theorem t) noexcept;
std::optional<Theorem> theorem_from_string(const std::string &name);

/// Ascending breakpoints a = p_0 < p_1 < ... < p_n = b. A single point
/// stands for the degenerate domain [a, a], which has one (point) piece.
struct Partition {
	std::vector<double> points;

	std::size_t piece_count() const noexcept { return points.size() <= 1 ? points.size() : points.size() - 1; }
	FloatInterval piece(std::size_t k) const;

	friend bool operator==(const Partition &, const Partition &) = default;
};

/// f(t) <= M on [a, b]; sup_bounds[k] bounds f on piece k.
struct BoundCert {
	Partition partition;
	std::vector<double> sup_bounds;
	double M = 0;
	friend bool operator==(const BoundCert &, const BoundCert &) = default;
};

/// f(t) <= f(c) + eps on [a, b]; f_at_c_lo is a certified lower bound on f(c).
struct MaxCert {
	Partition partition;
	std::vector<double> sup_bounds;
	double c = 0;
	double eps = 0;
	double f_at_c_lo = 0;
	friend bool operator==(const MaxCert &, const MaxCert &) = default;
};

/// f(t) < 0 on [a, b].
struct NegCert {
	Partition partition;
	std::vector<double> sup_bounds;
	friend bool operator==(const NegCert &, const NegCert &) = default;
};

/// f(l) <= f_l_hi < 0 < f_r_lo <= f(r), r - l <= tol; hence a zero in [l, r].
struct RootBracket {
	double l = 0;
	double r = 0;
	double f_l_hi = 0;
	double f_r_lo = 0;
	double tol = 0;
	friend bool operator==(const RootBracket &, const RootBracket &) = default;
};

struct ModulusPiece {
	double lo = 0;
	double hi = 0;
	double osc = 0; // bound on sup - inf of f over [lo, hi]
	friend bool operator==(const ModulusPiece &, const ModulusPiece &) = default;
};

/// Closed pieces with strictly increasing starts, first starting at a and
/// last ending at b, consecutive pieces overlapping by at least delta, each
/// with oscillation below eps. Any s, t with |s - t| < delta then share a
/// piece, so |f(s) - f(t)| < eps.
struct ModulusCert {
	double eps = 0;
	double delta = 0;
	std::vector<ModulusPiece> pieces;
	friend bool operator==(const ModulusCert &, const ModulusCert &) = default;
};

/// Lower/upper Darboux sums of the step functions built from per-piece
/// bounds; the integral lies in [lower, upper] and upper - lower < eps.
struct IntegralCert {
	double eps = 0;
	Partition partition;
	std::vector<double> inf_bounds;
	std::vector<double> sup_bounds;
	double lower = 0;
	double upper = 0;
	friend bool operator==(const IntegralCert &, const IntegralCert &) = default;
};

/// f' >= deriv_lo[k] on piece k, with deriv_lo[k] > 0 (strict) or >= 0.
struct MonotoneCert {
	bool strict = false;
	Partition partition;
	std::vector<double> deriv_lo;
	friend bool operator==(const MonotoneCert &, const MonotoneCert &) = default;
};

/// f' <= deriv_hi[k] <= M on piece k.
struct MviCert {
	double M = 0;
	Partition partition;
	std::vector<double> deriv_hi;
	friend bool operator==(const MviCert &, const MviCert &) = default;
};

/// |f'| <= deriv_mag[k] <= eta on piece k; |f(t) - f(a)| <= oscillation.
struct FlatCert {
	double eta = 0;
	Partition partition;
	std::vector<double> deriv_mag;
	double oscillation = 0;
	friend bool operator==(const FlatCert &, const FlatCert &) = default;
};

using Body = std::variant<BoundCert, MaxCert, NegCert, RootBracket, ModulusCert, IntegralCert, MonotoneCert,
                          MviCert, FlatCert>;

struct EngineInfo {
	std::size_t pieces = 0;
	double h_min = 0;
	friend bool operator==(const EngineInfo &, const EngineInfo &) = default;
};

struct Certificate {
	std::string function; // source text of f
	double a = 0;
	double b = 0;
	Body body;
	EngineInfo engine;

	Theorem theorem() const noexcept;
	friend bool operator==(const Certificate &, const Certificate &) = default;
};

struct CheckResult {
	bool valid = true;
	std::optional<std::size_t> piece; // offending piece, when one is to blame
	std::string reason;

	static CheckResult ok() { return {}; }
	explicit operator bool() const noexcept { return valid; }
};

/**
 * Re-verifies `cert` against `f` on [a, b] using fresh interval
 * evaluations only. Per-piece work is distributed with OpenMP; the
 * reported piece is the lowest-indexed failing one, as in check_serial.
 */
CheckResult check(const Certificate &cert, const expr::Expr &f, double a, double b);

/// Single-threaded reference implementation of check().
CheckResult check_serial(const Certificate &cert, const expr::Expr &f, double a, double b);

struct Conclusion {
	std::string kind;      // e.g. "bound", "integral"
	std::string statement; // human-readable quantified statement
	std::vector<std::pair<std::string, double>> values;
};

Conclusion conclusion_of(const Certificate &cert);

} // namespace suparg::certs

#endif
