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

#include "suparg/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "suparg/errors.hpp"

namespace suparg::numeric {

namespace {

bool all_digits(std::string_view s) {
	if (s.empty()) {
		return false;
	}
	for (char c : s) {
		if (!std::isdigit(static_cast<unsigned char>(c))) {
			return false;
		}
	}
	return true;
}

std::string_view trim(std::string_view s) {
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
		s.remove_prefix(1);
	}
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
		s.remove_suffix(1);
	}
	return s;
}

mpz_class pow10(unsigned long k) {
	mpz_class r;
	mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
	return r;
}

// int_part "." frac_part, both digit strings (frac may be empty)
mpq_class decimal_value(std::string_view int_part, std::string_view frac_part) {
	const std::string digits = std::string(int_part) + std::string(frac_part);
	mpq_class q(mpz_class(digits, 10), pow10(frac_part.size()));
	q.canonicalize();
	return q;
}

[[noreturn]] void bad_number(std::string_view text) {
	throw std::invalid_argument("malformed number: '" + std::string(text) + "'");
}

} // namespace

Rational::Rational(long num, long den) {
	if (den == 0) {
		throw RationalDivisionByZero();
	}
	q_ = mpq_class(num, den);
	q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) {
	if (q_.get_den() == 0) {
		throw RationalDivisionByZero();
	}
	q_.canonicalize();
}

Rational Rational::from_double(double x) {
	if (!std::isfinite(x)) {
		throw std::invalid_argument("rational from non-finite double");
	}
	return Rational(mpq_class(x));
}

Rational Rational::parse_decimal(std::string_view text) {
	const auto dot = text.find('.');
	if (dot == std::string_view::npos) {
		if (!all_digits(text)) {
			bad_number(text);
		}
		return Rational(decimal_value(text, ""));
	}
	const auto int_part = text.substr(0, dot);
	const auto frac_part = text.substr(dot + 1);
	if (!all_digits(int_part) || !all_digits(frac_part)) {
		bad_number(text);
	}
	return Rational(decimal_value(int_part, frac_part));
}

Rational Rational::parse(std::string_view raw) {
	const std::string_view text = trim(raw);
	if (text.empty()) {
		bad_number(raw);
	}
	if (const auto slash = text.find('/'); slash != std::string_view::npos) {
		auto num = trim(text.substr(0, slash));
		const auto den = trim(text.substr(slash + 1));
		bool negative = false;
		if (!num.empty() && (num[0] == '-' || num[0] == '+')) {
			negative = num[0] == '-';
			num.remove_prefix(1);
		}
		if (!all_digits(num) || !all_digits(den)) {
			bad_number(raw);
		}
		mpz_class d(std::string(den), 10);
		if (d == 0) {
			throw RationalDivisionByZero();
		}
		mpz_class n(std::string(num), 10);
		if (negative) {
			n = -n;
		}
		return Rational(mpq_class(n, d));
	}

	std::string_view rest = text;
	bool negative = false;
	if (rest[0] == '-' || rest[0] == '+') {
		negative = rest[0] == '-';
		rest.remove_prefix(1);
	}
	long exponent = 0;
	if (const auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
		auto exp_text = rest.substr(e + 1);
		rest = rest.substr(0, e);
		bool exp_negative = false;
		if (!exp_text.empty() && (exp_text[0] == '-' || exp_text[0] == '+')) {
			exp_negative = exp_text[0] == '-';
			exp_text.remove_prefix(1);
		}
		if (!all_digits(exp_text) || exp_text.size() > 5) {
			bad_number(raw);
		}
		exponent = std::stol(std::string(exp_text));
		if (exp_negative) {
			exponent = -exponent;
		}
	}
	std::string_view int_part = rest;
	std::string_view frac_part;
	if (const auto dot = rest.find('.'); dot != std::string_view::npos) {
		int_part = rest.substr(0, dot);
		frac_part = rest.substr(dot + 1);
		if (int_part.empty() && frac_part.empty()) {
			bad_number(raw);
		}
		if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part))) {
			bad_number(raw);
		}
	} else if (!all_digits(int_part)) {
		bad_number(raw);
	}
	mpq_class q = decimal_value(int_part.empty() ? "0" : int_part, frac_part);
	if (exponent > 0) {
		q *= pow10(static_cast<unsigned long>(exponent));
	} else if (exponent < 0) {
		q /= pow10(static_cast<unsigned long>(-exponent));
	}
	if (negative) {
		q = -q;
	}
	return Rational(q);
}

FloatInterval Rational::enclosure() const {
	const double d = q_.get_d(); // truncates toward zero
	if (!std::isfinite(d)) {
		throw OverflowError("rational " + to_string() + " outside the binary64 range");
	}
	const int c = cmp(mpq_class(d), q_);
	if (c == 0) {
		return FloatInterval(d);
	}
	if (c < 0) {
		return {d, rounding::next_up(d)};
	}
	return {rounding::next_down(d), d};
}

std::optional<double> Rational::to_double_exact() const {
	const double d = q_.get_d();
	if (!std::isfinite(d) || cmp(mpq_class(d), q_) != 0) {
		return std::nullopt;
	}
	return d;
}

std::string Rational::to_string() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }

std::optional<std::string> Rational::to_decimal() const {
	mpz_class den = q_.get_den();
	unsigned long twos = 0;
	unsigned long fives = 0;
	while (mpz_divisible_ui_p(den.get_mpz_t(), 2) != 0) {
		den /= 2;
		++twos;
	}
	while (mpz_divisible_ui_p(den.get_mpz_t(), 5) != 0) {
		den /= 5;
		++fives;
	}
	if (den != 1) {
		return std::nullopt;
	}
	const unsigned long places = std::max(twos, fives);
	mpz_class scaled = q_.get_num() * pow10(places) / q_.get_den();
	const bool negative = scaled < 0;
	if (negative) {
		scaled = -scaled;
	}
	std::string digits = scaled.get_str();
	if (places > 0) {
		if (digits.size() <= places) {
			digits.insert(0, places - digits.size() + 1, '0');
		}
		digits.insert(digits.size() - places, ".");
	}
	return negative ? "-" + digits : digits;
}

Rational operator/(const Rational &x, const Rational &y) {
	if (y.is_zero()) {
		throw RationalDivisionByZero();
	}
	return Rational(mpq_class(x.q_ / y.q_));
}

Ordering rat_cmp(const Rational &x, const Rational &y) {
	const auto c = x <=> y;
	return c < 0 ? Ordering::LT : (c > 0 ? Ordering::GT : Ordering::EQ);
}

Rational rat_arith(ArithOp op, const Rational &x, const Rational &y) {
	switch (op) {
	case ArithOp::Add: return x + y;
	case ArithOp::Sub: return x - y;
	case ArithOp::Mul: return x * y;
	case ArithOp::Div: return x / y;
	}
	throw std::invalid_argument("unknown arithmetic op");
}

Rational midpoint(const Rational &x, const Rational &y) { return (x + y) / Rational(2); }

} // namespace suparg::numeric
