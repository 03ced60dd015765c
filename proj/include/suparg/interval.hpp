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

#ifndef SUPARG_INTERVAL_HPP
#define SUPARG_INTERVAL_HPP

#include <string>

namespace suparg::numeric {

/**
 * Directed-rounding primitives on binary64.
 *
 * The FPU stays in round-to-nearest. Each result is computed once and then
 * moved to the adjacent representable value only when an error-free
 * transformation (TwoSum, FMA residual) shows the rounded value lies on the
 * wrong side of the exact one. Exact results are returned unchanged.
 *
 * Overflow is not detected here; callers check for infinities.
 */
namespace rounding {

double next_up(double x) noexcept;
double next_down(double x) noexcept;

double add_down(double a, double b) noexcept;
double add_up(double a, double b) noexcept;
double sub_down(double a, double b) noexcept;
double sub_up(double a, double b) noexcept;
double mul_down(double a, double b) noexcept;
double mul_up(double a, double b) noexcept;
// b != 0
double div_down(double a, double b) noexcept;
double div_up(double a, double b) noexcept;
// a >= 0
double sqrt_down(double a) noexcept;
double sqrt_up(double a) noexcept;

} // namespace rounding

/// Closed interval [lo, hi] of finite binary64 values with lo <= hi.
class FloatInterval {
public:
	/// Throws OverflowError on infinite endpoints and std::invalid_argument
	/// on NaN or lo > hi.
	FloatInterval(double lo, double hi);
	explicit FloatInterval(double point) : FloatInterval(point, point) {}

	double lo() const noexcept { return lo_; }
	double hi() const noexcept { return hi_; }

	/// Upper bound on hi - lo.
	double width_up() const noexcept { return rounding::sub_up(hi_, lo_); }
	/// Upper bound on max |t| over the interval.
	double mag() const noexcept;
	bool is_point() const noexcept { return lo_ == hi_; }
	bool contains(double t) const noexcept { return lo_ <= t && t <= hi_; }
	bool contains_zero() const noexcept { return lo_ <= 0.0 && 0.0 <= hi_; }
	bool subset_of(const FloatInterval &other) const noexcept {
		return other.lo_ <= lo_ && hi_ <= other.hi_;
	}

	friend bool operator==(const FloatInterval &, const FloatInterval &) = default;

private:
	double lo_;
	double hi_;
};

FloatInterval hull(const FloatInterval &x, const FloatInterval &y);

enum class ArithOp { Add, Sub, Mul, Div };
enum class UnaryFn { Neg, Sqr, PowN, Sqrt, Exp, Log, Sin, Cos, Abs };

const char *to_string(UnaryFn fn) noexcept;

/// Outward-rounded binary operation. Div throws DivisionByZeroInterval when
/// 0 lies in y; every op throws OverflowError when an endpoint leaves the
/// finite range.
FloatInterval iv_arith(ArithOp op, const FloatInterval &x, const FloatInterval &y);

/// Outward-rounded elementary function. `n` is only read for PowN.
/// Throws DomainError for sqrt/log outside their domain.
FloatInterval iv_unary(UnaryFn fn, const FloatInterval &x, unsigned n = 0);

FloatInterval operator+(const FloatInterval &x, const FloatInterval &y);
FloatInterval operator-(const FloatInterval &x, const FloatInterval &y);
FloatInterval operator*(const FloatInterval &x, const FloatInterval &y);
FloatInterval operator/(const FloatInterval &x, const FloatInterval &y);
FloatInterval operator-(const FloatInterval &x);

FloatInterval pow_n(const FloatInterval &x, unsigned n);
FloatInterval sqr(const FloatInterval &x);
FloatInterval sqrt(const FloatInterval &x);
FloatInterval exp(const FloatInterval &x);
FloatInterval log(const FloatInterval &x);
FloatInterval sin(const FloatInterval &x);
FloatInterval cos(const FloatInterval &x);
FloatInterval abs(const FloatInterval &x);

/// Lowercase hexadecimal-float text, e.g. "0x1.8p+1". Bit-exact round trip.
std::string to_hex(double x);
/// Parses the output of to_hex (or any strtod hex literal). Throws
/// std::invalid_argument on malformed or non-finite input.
double from_hex(const std::string &text);

/// "[lo, hi]" with 17 significant digits; for diagnostics only.
std::string to_string(const FloatInterval &x);

} // namespace suparg::numeric

#endif
