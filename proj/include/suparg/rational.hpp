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

#ifndef SUPARG_RATIONAL_HPP
#define SUPARG_RATIONAL_HPP

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "suparg/interval.hpp"

namespace suparg::numeric {

/// Exact rational in lowest terms with positive denominator.
class Rational {
public:
	Rational() = default;
	Rational(long n) : q_(n) {}
	/// Throws RationalDivisionByZero when den == 0.
	Rational(long num, long den);
	explicit Rational(mpq_class q);

	/// Exact value of a finite binary64. Throws std::invalid_argument otherwise.
	static Rational from_double(double x);

	/// Accepts "n/d", or a decimal with optional sign, fraction part and
	/// exponent ("-0.125", "1e-9", "3.5E+2"). Throws std::invalid_argument.
	static Rational parse(std::string_view text);

	/// Decimal literal only: digits with optional "." fraction, no sign or
	/// exponent. Used by the expression grammar.
	static Rational parse_decimal(std::string_view text);

	const mpq_class &value() const noexcept { return q_; }
	mpz_class num() const { return q_.get_num(); }
	mpz_class den() const { return q_.get_den(); }

	int sign() const noexcept { return sgn(q_); }
	bool is_zero() const noexcept { return sign() == 0; }

	/// Tightest binary64 interval containing this value (a point when exact).
	FloatInterval enclosure() const;
	/// The value as binary64 when exactly representable.
	std::optional<double> to_double_exact() const;

	/// "num/den" in decimal, e.g. "-3/4", "2/1".
	std::string to_string() const;
	/// Terminating decimal expansion when the denominator is 2^i 5^j.
	std::optional<std::string> to_decimal() const;

	friend Rational operator+(const Rational &x, const Rational &y) { return Rational(mpq_class(x.q_ + y.q_)); }
	friend Rational operator-(const Rational &x, const Rational &y) { return Rational(mpq_class(x.q_ - y.q_)); }
	friend Rational operator*(const Rational &x, const Rational &y) { return Rational(mpq_class(x.q_ * y.q_)); }
	/// Throws RationalDivisionByZero.
	friend Rational operator/(const Rational &x, const Rational &y);
	friend Rational operator-(const Rational &x) { return Rational(mpq_class(-x.q_)); }

	friend bool operator==(const Rational &x, const Rational &y) { return x.q_ == y.q_; }
	friend std::strong_ordering operator<=>(const Rational &x, const Rational &y) {
		const int c = cmp(x.q_, y.q_);
		return c < 0 ? std::strong_ordering::less
		             : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
	}

private:
	mpq_class q_;
};

enum class Ordering { LT, EQ, GT };

Ordering rat_cmp(const Rational &x, const Rational &y);
Rational rat_arith(ArithOp op, const Rational &x, const Rational &y);

/// Midpoint (x + y) / 2.
Rational midpoint(const Rational &x, const Rational &y);

} // namespace suparg::numeric

#endif
