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

#include "suparg/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "suparg/errors.hpp"

namespace suparg::numeric {

namespace rounding {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Below this magnitude FMA residuals may be inexact (gradual underflow),
// so the result is nudged unconditionally.
constexpr double tiny = 0x1p-900;

// Exact rounding error of a + b (TwoSum).
double two_sum_err(double a, double b, double s) noexcept {
	const double bp = s - a;
	const double ap = s - bp;
	return (a - ap) + (b - bp);
}

} // namespace

double next_up(double x) noexcept { return std::nextafter(x, inf); }
double next_down(double x) noexcept { return std::nextafter(x, -inf); }

double add_down(double a, double b) noexcept {
	const double s = a + b;
	if (!std::isfinite(s)) {
		return s;
	}
	return two_sum_err(a, b, s) < 0.0 ? next_down(s) : s;
}

double add_up(double a, double b) noexcept {
	const double s = a + b;
	if (!std::isfinite(s)) {
		return s;
	}
	return two_sum_err(a, b, s) > 0.0 ? next_up(s) : s;
}

double sub_down(double a, double b) noexcept { return add_down(a, -b); }
double sub_up(double a, double b) noexcept { return add_up(a, -b); }

double mul_down(double a, double b) noexcept {
	if (a == 0.0 || b == 0.0) {
		return 0.0;
	}
	const double p = a * b;
	if (!std::isfinite(p)) {
		return p;
	}
	if (std::fabs(p) < tiny) {
		return next_down(p);
	}
	return std::fma(a, b, -p) < 0.0 ? next_down(p) : p;
}

double mul_up(double a, double b) noexcept {
	if (a == 0.0 || b == 0.0) {
		return 0.0;
	}
	const double p = a * b;
	if (!std::isfinite(p)) {
		return p;
	}
	if (std::fabs(p) < tiny) {
		return next_up(p);
	}
	return std::fma(a, b, -p) > 0.0 ? next_up(p) : p;
}

namespace {

// Sign of (a / b) - q for q = fl(a / b); 0 when exact. `unknown` when the
// residual cannot be trusted.
int div_residual_sign(double a, double b, double q, bool &unknown) noexcept {
	if (std::fabs(a) < tiny || std::fabs(q) < tiny) {
		unknown = true;
		return 0;
	}
	unknown = false;
	const double r = std::fma(-q, b, a);
	if (r == 0.0) {
		return 0;
	}
	return ((r > 0.0) == (b > 0.0)) ? 1 : -1;
}

} // namespace

double div_down(double a, double b) noexcept {
	if (a == 0.0) {
		return 0.0;
	}
	const double q = a / b;
	if (!std::isfinite(q)) {
		return q;
	}
	bool unknown = false;
	const int s = div_residual_sign(a, b, q, unknown);
	return (unknown || s < 0) ? next_down(q) : q;
}

double div_up(double a, double b) noexcept {
	if (a == 0.0) {
		return 0.0;
	}
	const double q = a / b;
	if (!std::isfinite(q)) {
		return q;
	}
	bool unknown = false;
	const int s = div_residual_sign(a, b, q, unknown);
	return (unknown || s > 0) ? next_up(q) : q;
}

double sqrt_down(double a) noexcept {
	if (a == 0.0) {
		return 0.0;
	}
	const double s = std::sqrt(a);
	if (a < tiny) {
		return std::max(0.0, next_down(s));
	}
	// a - s^2 < 0 means s overshoots
	return std::fma(-s, s, a) < 0.0 ? next_down(s) : s;
}

double sqrt_up(double a) noexcept {
	if (a == 0.0) {
		return 0.0;
	}
	const double s = std::sqrt(a);
	if (a < tiny) {
		return next_up(s);
	}
	return std::fma(-s, s, a) > 0.0 ? next_up(s) : s;
}

} // namespace rounding

using namespace rounding;

FloatInterval::FloatInterval(double lo, double hi) {
	if (std::isnan(lo) || std::isnan(hi)) {
		throw std::invalid_argument("interval endpoint is NaN");
	}
	if (std::isinf(lo) || std::isinf(hi)) {
		throw OverflowError("interval endpoint outside the finite binary64 range");
	}
	if (lo > hi) {
		throw std::invalid_argument("interval with lo > hi");
	}
	// normalise -0.0 so that equal sets serialise identically
	lo_ = lo + 0.0;
	hi_ = hi + 0.0;
}

double FloatInterval::mag() const noexcept { return std::max(std::fabs(lo_), std::fabs(hi_)); }

FloatInterval hull(const FloatInterval &x, const FloatInterval &y) {
	return {std::min(x.lo(), y.lo()), std::max(x.hi(), y.hi())};
}

const char *to_string(UnaryFn fn) noexcept {
	switch (fn) {
	case UnaryFn::Neg: return "neg";
	case UnaryFn::Sqr: return "sqr";
	case UnaryFn::PowN: return "pow_n";
	case UnaryFn::Sqrt: return "sqrt";
	case UnaryFn::Exp: return "exp";
	case UnaryFn::Log: return "log";
	case UnaryFn::Sin: return "sin";
	case UnaryFn::Cos: return "cos";
	case UnaryFn::Abs: return "abs";
	}
	return "?";
}

namespace {

FloatInterval make(double lo, double hi, const char *op) {
	if (std::isinf(lo) || std::isinf(hi)) {
		throw OverflowError(std::string(op) + ": result endpoint overflows binary64");
	}
	return {lo, hi};
}

double min4(double a, double b, double c, double d) { return std::min(std::min(a, b), std::min(c, d)); }
double max4(double a, double b, double c, double d) { return std::max(std::max(a, b), std::max(c, d)); }

// m >= 0; repeated squaring keeps every partial product on the same side.
double pow_nonneg(double m, unsigned n, bool up) {
	double result = 1.0;
	double base = m;
	while (n > 0) {
		if (n & 1U) {
			result = up ? mul_up(result, base) : mul_down(result, base);
		}
		n >>= 1U;
		if (n > 0) {
			base = up ? mul_up(base, base) : mul_down(base, base);
		}
	}
	return result;
}

// pi/2 split into four binary64 words; only the first three are used in
// the reduction, the fourth bounds the representation error.
constexpr double pio2_1 = 0x1.921fb54442d18p+0;
constexpr double pio2_2 = 0x1.1a62633145c07p-54;
constexpr double pio2_3 = -0x1.f1976b7ed8fbcp-110;
constexpr double two_over_pi = 0x1.45f306dc9c883p-1;
constexpr double reduce_limit = 0x1p28;

struct Phase {
	double k;   // nearest multiple of pi/2
	double r;   // x - k*pi/2, up to err
	double err; // rigorous bound on |r - (x - k*pi/2)|
};

Phase reduce(double x) {
	const double k = std::nearbyint(x * two_over_pi);
	const double t1 = std::fma(-k, pio2_1, x);
	const double t2 = std::fma(-k, pio2_2, t1);
	const double t3 = std::fma(-k, pio2_3, t2);
	const double err = 0x1p-52 * (std::fabs(t1) + std::fabs(t2) + std::fabs(t3)) +
	                   std::fabs(k) * 0x1p-160 + 0x1p-1070;
	return {k, t3, err};
}

// Bitmask of residues (n mod 4) over integers n with n*pi/2 in [lo, hi],
// conservatively including any n whose membership cannot be decided.
unsigned critical_residues(double lo, double hi) {
	const Phase pl = reduce(lo);
	const Phase ph = reduce(hi);
	const double n_min = (pl.r - pl.err > 0.0) ? pl.k + 1.0 : pl.k;
	const double n_max = (ph.r + ph.err < 0.0) ? ph.k - 1.0 : ph.k;
	unsigned mask = 0;
	for (double n = n_min; n <= n_max && mask != 0xFU; n += 1.0) {
		const auto m = static_cast<long long>(std::fmod(n, 4.0) + 4.0) % 4;
		mask |= 1U << m;
	}
	return mask;
}

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

enum class Trig { Sin, Cos };

FloatInterval trig(Trig which, const FloatInterval &x) {
	const double lo = x.lo();
	const double hi = x.hi();
	if (hi - lo >= 6.3 || std::fabs(lo) > reduce_limit || std::fabs(hi) > reduce_limit) {
		return {-1.0, 1.0};
	}
	auto eval = [which](double t) { return which == Trig::Sin ? std::sin(t) : std::cos(t); };
	auto down = [&](double t) {
		if (t == 0.0) {
			return which == Trig::Sin ? 0.0 : 1.0;
		}
		return clamp_unit(next_down(eval(t)));
	};
	auto up = [&](double t) {
		if (t == 0.0) {
			return which == Trig::Sin ? 0.0 : 1.0;
		}
		return clamp_unit(next_up(eval(t)));
	};
	double rlo = std::min(down(lo), down(hi));
	double rhi = std::max(up(lo), up(hi));
	const unsigned mask = critical_residues(lo, hi);
	// sin peaks at residue 1, troughs at 3; cos at 0 and 2
	const unsigned max_bit = which == Trig::Sin ? 1U << 1 : 1U << 0;
	const unsigned min_bit = which == Trig::Sin ? 1U << 3 : 1U << 2;
	if (mask & max_bit) {
		rhi = 1.0;
	}
	if (mask & min_bit) {
		rlo = -1.0;
	}
	return {rlo, rhi};
}

} // namespace

FloatInterval operator+(const FloatInterval &x, const FloatInterval &y) {
	return make(add_down(x.lo(), y.lo()), add_up(x.hi(), y.hi()), "add");
}

FloatInterval operator-(const FloatInterval &x, const FloatInterval &y) {
	return make(sub_down(x.lo(), y.hi()), sub_up(x.hi(), y.lo()), "sub");
}

FloatInterval operator*(const FloatInterval &x, const FloatInterval &y) {
	const double a = x.lo(), b = x.hi(), c = y.lo(), d = y.hi();
	return make(min4(mul_down(a, c), mul_down(a, d), mul_down(b, c), mul_down(b, d)),
	            max4(mul_up(a, c), mul_up(a, d), mul_up(b, c), mul_up(b, d)), "mul");
}

FloatInterval operator/(const FloatInterval &x, const FloatInterval &y) {
	if (y.contains_zero()) {
		throw DivisionByZeroInterval("div: divisor " + to_string(y) + " contains zero");
	}
	const double a = x.lo(), b = x.hi(), c = y.lo(), d = y.hi();
	return make(min4(div_down(a, c), div_down(a, d), div_down(b, c), div_down(b, d)),
	            max4(div_up(a, c), div_up(a, d), div_up(b, c), div_up(b, d)), "div");
}

FloatInterval operator-(const FloatInterval &x) { return {-x.hi(), -x.lo()}; }

FloatInterval pow_n(const FloatInterval &x, unsigned n) {
	if (n == 0) {
		return FloatInterval(1.0);
	}
	if (n == 1) {
		return x;
	}
	const double lo = x.lo();
	const double hi = x.hi();
	if (n % 2 == 1) {
		const double rlo = lo < 0.0 ? -pow_nonneg(-lo, n, true) : pow_nonneg(lo, n, false);
		const double rhi = hi < 0.0 ? -pow_nonneg(-hi, n, false) : pow_nonneg(hi, n, true);
		return make(rlo, rhi, "pow_n");
	}
	if (lo >= 0.0) {
		return make(pow_nonneg(lo, n, false), pow_nonneg(hi, n, true), "pow_n");
	}
	if (hi <= 0.0) {
		return make(pow_nonneg(-hi, n, false), pow_nonneg(-lo, n, true), "pow_n");
	}
	return make(0.0, pow_nonneg(std::max(-lo, hi), n, true), "pow_n");
}

FloatInterval sqr(const FloatInterval &x) { return pow_n(x, 2); }

FloatInterval sqrt(const FloatInterval &x) {
	if (x.lo() < 0.0) {
		throw DomainError("sqrt", "sqrt undefined on " + to_string(x));
	}
	return {sqrt_down(x.lo()), sqrt_up(x.hi())};
}

FloatInterval exp(const FloatInterval &x) {
	const double lo = x.lo() == 0.0 ? 1.0 : std::max(0.0, next_down(std::exp(x.lo())));
	const double hi = x.hi() == 0.0 ? 1.0 : next_up(std::exp(x.hi()));
	return make(lo, hi, "exp");
}

FloatInterval log(const FloatInterval &x) {
	if (x.lo() <= 0.0) {
		throw DomainError("log", "log undefined on " + to_string(x));
	}
	const double lo = x.lo() == 1.0 ? 0.0 : next_down(std::log(x.lo()));
	const double hi = x.hi() == 1.0 ? 0.0 : next_up(std::log(x.hi()));
	return {lo, hi};
}

FloatInterval sin(const FloatInterval &x) { return trig(Trig::Sin, x); }
FloatInterval cos(const FloatInterval &x) { return trig(Trig::Cos, x); }

FloatInterval abs(const FloatInterval &x) {
	if (x.lo() >= 0.0) {
		return x;
	}
	if (x.hi() <= 0.0) {
		return -x;
	}
	return {0.0, std::max(-x.lo(), x.hi())};
}

FloatInterval iv_arith(ArithOp op, const FloatInterval &x, const FloatInterval &y) {
	switch (op) {
	case ArithOp::Add: return x + y;
	case ArithOp::Sub: return x - y;
	case ArithOp::Mul: return x * y;
	case ArithOp::Div: return x / y;
	}
	throw std::invalid_argument("unknown arithmetic op");
}

FloatInterval iv_unary(UnaryFn fn, const FloatInterval &x, unsigned n) {
	switch (fn) {
	case UnaryFn::Neg: return -x;
	case UnaryFn::Sqr: return sqr(x);
	case UnaryFn::PowN: return pow_n(x, n);
	case UnaryFn::Sqrt: return sqrt(x);
	case UnaryFn::Exp: return exp(x);
	case UnaryFn::Log: return log(x);
	case UnaryFn::Sin: return sin(x);
	case UnaryFn::Cos: return cos(x);
	case UnaryFn::Abs: return abs(x);
	}
	throw std::invalid_argument("unknown unary function");
}

std::string to_hex(double x) {
	char buf[64];
	std::snprintf(buf, sizeof buf, "%a", x);
	return buf;
}

double from_hex(const std::string &text) {
	const std::size_t sign = (!text.empty() && text[0] == '-') ? 1 : 0;
	if (text.compare(sign, 2, "0x") != 0) {
		throw std::invalid_argument("not a hexadecimal float: '" + text + "'");
	}
	char *end = nullptr;
	const double v = std::strtod(text.c_str(), &end);
	if (end != text.c_str() + text.size() || !std::isfinite(v)) {
		throw std::invalid_argument("not a finite hexadecimal float: '" + text + "'");
	}
	return v;
}

std::string to_string(const FloatInterval &x) {
	char buf[96];
	std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", x.lo(), x.hi());
	return buf;
}

} // namespace suparg::numeric
