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

#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <random>
#include <stdexcept>

#include <doctest.h>
#include <mpfr.h>

#include "support/fuzz.hpp"
#include "support/oracle.hpp"
#include "suparg/errors.hpp"
#include "suparg/interval.hpp"
#include "suparg/rational.hpp"

using namespace suparg;
using namespace suparg::numeric;
using suparg::testing::Mp;

namespace {

double ulp(double x) { return std::nextafter(std::fabs(x), INFINITY) - std::fabs(x); }

} // namespace

TEST_CASE("iv_arith examples") {
	CHECK(iv_arith(ArithOp::Add, {1, 2}, {3, 4}) == FloatInterval(4, 6));
	CHECK(iv_arith(ArithOp::Mul, {-1, 2}, {3, 4}) == FloatInterval(-4, 8));
	CHECK_THROWS_AS(iv_arith(ArithOp::Div, FloatInterval(1), {-1, 1}), DivisionByZeroInterval);
	CHECK(iv_arith(ArithOp::Sub, {1, 2}, {3, 4}) == FloatInterval(-3, -1));
	CHECK(iv_arith(ArithOp::Div, {1, 2}, {4, 8}) == FloatInterval(0.125, 0.5));
}

TEST_CASE("iv_arith overflow") {
	const double big = std::numeric_limits<double>::max();
	CHECK_THROWS_AS(iv_arith(ArithOp::Mul, FloatInterval(big), FloatInterval(2)), OverflowError);
	CHECK_THROWS_AS(iv_arith(ArithOp::Add, FloatInterval(big), FloatInterval(big)), OverflowError);
	// The exact sum big + 1 is finite, but rounding up leaves the range.
	CHECK_THROWS_AS(iv_arith(ArithOp::Add, FloatInterval(big), FloatInterval(1)), OverflowError);
}

TEST_CASE("FloatInterval construction rejects non-finite and inverted endpoints") {
	CHECK_THROWS_AS(FloatInterval(0, INFINITY), OverflowError);
	CHECK_THROWS_AS(FloatInterval(-INFINITY, 0), OverflowError);
	CHECK_THROWS_AS(FloatInterval(NAN, 0), std::invalid_argument);
	CHECK_THROWS_AS(FloatInterval(2, 1), std::invalid_argument);
}

TEST_CASE("iv_unary examples") {
	CHECK(iv_unary(UnaryFn::Sqr, {-1, 2}) == FloatInterval(0, 4));
	CHECK(iv_unary(UnaryFn::PowN, {-2, 1}, 3) == FloatInterval(-8, 1));
	CHECK(iv_unary(UnaryFn::PowN, {-2, 1}, 4) == FloatInterval(0, 16));
	CHECK(iv_unary(UnaryFn::PowN, {-2, 1}, 0) == FloatInterval(1, 1));
	CHECK(iv_unary(UnaryFn::Abs, {-3, 1}) == FloatInterval(0, 3));
	CHECK(iv_unary(UnaryFn::Neg, {-3, 1}) == FloatInterval(-1, 3));
	CHECK_THROWS_AS(iv_unary(UnaryFn::Log, {-1, 1}), DomainError);
	CHECK_THROWS_AS(iv_unary(UnaryFn::Log, {0, 1}), DomainError);
	CHECK_THROWS_AS(iv_unary(UnaryFn::Sqrt, {-1, 1}), DomainError);
	CHECK(iv_unary(UnaryFn::Sqrt, {0, 4}) == FloatInterval(0, 2));
	try {
		iv_unary(UnaryFn::Log, {-1, 1});
	} catch (const DomainError &e) {
		CHECK(e.fn() == "log");
	}
}

TEST_CASE("exp on [0, 1] encloses e within two ulps") {
	const FloatInterval r = iv_unary(UnaryFn::Exp, {0, 1});
	CHECK(r.lo() == 1.0);
	Mp e(256), up(64);
	mpfr_set_ui(e.get(), 1, MPFR_RNDN);
	mpfr_exp(e.get(), e.get(), MPFR_RNDN);
	CHECK(mpfr_cmp_d(e.get(), r.hi()) < 0);
	mpfr_set_ui(up.get(), 1, MPFR_RNDN);
	mpfr_set_prec(up.get(), 53);
	mpfr_set_ui(up.get(), 1, MPFR_RNDN);
	mpfr_exp(up.get(), up.get(), MPFR_RNDU);
	const double e_up = mpfr_get_d(up.get(), MPFR_RNDU);
	CHECK(r.hi() >= e_up);
	CHECK(r.hi() - e_up <= 2 * ulp(e_up));
}

TEST_CASE("sin and cos are clamped and catch interior extrema") {
	const FloatInterval s = iv_unary(UnaryFn::Sin, {0, 1.6});
	CHECK(s.lo() <= 0.0);
	CHECK(s.hi() == 1.0);
	const FloatInterval c = iv_unary(UnaryFn::Cos, {3, 3.3});
	CHECK(c.lo() == -1.0);
	CHECK(iv_unary(UnaryFn::Sin, {-100, 100}) == FloatInterval(-1, 1));
	CHECK(iv_unary(UnaryFn::Sin, FloatInterval(0)) == FloatInterval(0));
	CHECK(iv_unary(UnaryFn::Cos, FloatInterval(0)) == FloatInterval(1));
	// A tiny interval around pi / 2 must still reach 1.
	const FloatInterval p = iv_unary(UnaryFn::Sin, {1.5707963267948961, 1.5707963267948970});
	CHECK(p.hi() == 1.0);
}

TEST_CASE("directed rounding primitives bracket the exact result") {
	using namespace rounding;
	std::mt19937_64 rng(7);
	Mp exact(4096);
	for (int i = 0; i < 20000; ++i) {
		const double a = suparg::testing::random_double(rng);
		const double b = suparg::testing::random_double(rng);
		mpfr_set_d(exact.get(), a, MPFR_RNDN);
		mpfr_add_d(exact.get(), exact.get(), b, MPFR_RNDN);
		const double lo = add_down(a, b), hi = add_up(a, b);
		if (std::isfinite(lo) && std::isfinite(hi)) {
			REQUIRE(mpfr_cmp_d(exact.get(), lo) >= 0);
			REQUIRE(mpfr_cmp_d(exact.get(), hi) <= 0);
			REQUIRE(hi <= std::nextafter(lo, INFINITY));
		}
		mpfr_set_d(exact.get(), a, MPFR_RNDN);
		mpfr_mul_d(exact.get(), exact.get(), b, MPFR_RNDN);
		const double ml = mul_down(a, b), mh = mul_up(a, b);
		if (std::isfinite(ml) && std::isfinite(mh)) {
			REQUIRE(mpfr_cmp_d(exact.get(), ml) >= 0);
			REQUIRE(mpfr_cmp_d(exact.get(), mh) <= 0);
		}
		if (b != 0) {
			mpfr_set_d(exact.get(), a, MPFR_RNDN);
			mpfr_div_d(exact.get(), exact.get(), b, MPFR_RNDN);
			const double dl = div_down(a, b), dh = div_up(a, b);
			if (std::isfinite(dl) && std::isfinite(dh)) {
				REQUIRE(mpfr_cmp_d(exact.get(), dl) >= 0);
				REQUIRE(mpfr_cmp_d(exact.get(), dh) <= 0);
			}
		}
		const double m = std::fabs(a);
		mpfr_set_d(exact.get(), m, MPFR_RNDN);
		mpfr_sqrt(exact.get(), exact.get(), MPFR_RNDN);
		REQUIRE(mpfr_cmp_d(exact.get(), sqrt_down(m)) >= 0);
		REQUIRE(mpfr_cmp_d(exact.get(), sqrt_up(m)) <= 0);
	}
	// Exact results are not nudged.
	CHECK(add_down(0.5, 0.25) == 0.75);
	CHECK(add_up(0.5, 0.25) == 0.75);
	CHECK(mul_up(3.0, 0.5) == 1.5);
	CHECK(div_down(1.0, 4.0) == 0.25);
	CHECK(sqrt_up(9.0) == 3.0);
}

TEST_CASE("containment fuzz: random ops against MPFR") {
	const auto tally = suparg::testing::interval_containment_fuzz(suparg::testing::test_seed(20261015), 1000, 1000);
	INFO(tally.first_violation);
	CHECK(tally.cases > 800);
	CHECK(tally.points >= tally.cases * 1000);
	CHECK(tally.violations == 0);
}

TEST_CASE("inclusion monotonicity") {
	std::mt19937_64 rng(11);
	std::uniform_real_distribution<double> u(-5, 5), w(0, 1);
	const ArithOp ops[] = {ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div};
	const UnaryFn fns[] = {UnaryFn::Sqr, UnaryFn::Exp, UnaryFn::Sin, UnaryFn::Cos, UnaryFn::Abs, UnaryFn::PowN};
	for (int i = 0; i < 5000; ++i) {
		const double xl = u(rng), yl = u(rng);
		const FloatInterval x(xl, xl + w(rng)), y(yl, yl + w(rng));
		const FloatInterval xw(x.lo() - w(rng), x.hi() + w(rng)), yw(y.lo() - w(rng), y.hi() + w(rng));
		for (ArithOp op : ops) {
			if (op == ArithOp::Div && yw.contains_zero())
				continue;
			REQUIRE(iv_arith(op, x, y).subset_of(iv_arith(op, xw, yw)));
		}
		for (UnaryFn fn : fns)
			REQUIRE(iv_unary(fn, x, 3).subset_of(iv_unary(fn, xw, 3)));
		if (x.lo() > 0)
			REQUIRE(iv_unary(UnaryFn::Log, x).subset_of(iv_unary(UnaryFn::Log, {x.lo() / 2, xw.hi()})));
	}
}

TEST_CASE("width bound on exactly representable results") {
	std::mt19937_64 rng(5);
	std::uniform_int_distribution<int> n(-1000, 1000);
	for (int i = 0; i < 5000; ++i) {
		// Dyadic operands whose sums and products are exact.
		const double a = n(rng) / 64.0, b = a + std::abs(n(rng)) / 64.0;
		const double c = n(rng) / 64.0, d = c + std::abs(n(rng)) / 64.0;
		const FloatInterval x(a, b), y(c, d);
		CHECK_EQ(iv_arith(ArithOp::Add, x, y), FloatInterval(a + c, b + d));
		CHECK_EQ(iv_arith(ArithOp::Sub, x, y), FloatInterval(a - d, b - c));
		const double p[] = {a * c, a * d, b * c, b * d};
		CHECK_EQ(iv_arith(ArithOp::Mul, x, y), FloatInterval(std::min({p[0], p[1], p[2], p[3]}),
		                                                     std::max({p[0], p[1], p[2], p[3]})));
	}
	// Transcendentals: each endpoint within 2 ulps of the correctly rounded one.
	Mp v(53);
	std::uniform_real_distribution<double> u(-3, 3);
	for (int i = 0; i < 2000; ++i) {
		const double t = u(rng);
		const FloatInterval r = iv_unary(UnaryFn::Exp, FloatInterval(t));
		mpfr_set_d(v.get(), t, MPFR_RNDN);
		mpfr_exp(v.get(), v.get(), MPFR_RNDD);
		const double lo = mpfr_get_d(v.get(), MPFR_RNDN);
		mpfr_set_d(v.get(), t, MPFR_RNDN);
		mpfr_exp(v.get(), v.get(), MPFR_RNDU);
		const double hi = mpfr_get_d(v.get(), MPFR_RNDN);
		CHECK(lo - r.lo() <= 2 * ulp(lo));
		CHECK(r.hi() - hi <= 2 * ulp(hi));
	}
}

TEST_CASE("hexfloat round trip is bit exact") {
	std::mt19937_64 rng(99);
	for (int i = 0; i < 20000; ++i) {
		std::uint64_t bits = rng();
		double x;
		std::memcpy(&x, &bits, sizeof x);
		if (!std::isfinite(x))
			continue;
		const double y = from_hex(to_hex(x));
		std::uint64_t back;
		std::memcpy(&back, &y, sizeof y);
		REQUIRE(back == bits);
	}
	CHECK(to_hex(3.0) == "0x1.8p+1");
	CHECK(to_hex(-0.5) == "-0x1p-1");
	CHECK(to_hex(0.0) == "0x0p+0");
	CHECK_THROWS_AS(from_hex("0x1.8p+1 junk"), std::invalid_argument);
	CHECK_THROWS_AS(from_hex("inf"), std::invalid_argument);
}

TEST_CASE("rational examples") {
	CHECK(rat_arith(ArithOp::Add, Rational(1, 3), Rational(1, 6)) == Rational(1, 2));
	CHECK(rat_cmp(Rational(2, 4), Rational(1, 2)) == Ordering::EQ);
	CHECK(rat_cmp(Rational(1, 3), Rational(1, 2)) == Ordering::LT);
	CHECK_THROWS_AS(rat_arith(ArithOp::Div, Rational(1, 2), Rational(0, 1)), RationalDivisionByZero);
	CHECK_THROWS_AS(Rational(1, 0), RationalDivisionByZero);
	CHECK(Rational(2, 4).to_string() == "1/2");
	CHECK(Rational(3, -6).to_string() == "-1/2");
	CHECK(Rational::parse("-0.125") == Rational(-1, 8));
	CHECK(Rational::parse("1e-3") == Rational(1, 1000));
	CHECK(Rational::parse("6/8") == Rational(3, 4));
	CHECK_THROWS_AS(Rational::parse("1/x"), std::invalid_argument);
	CHECK(Rational::from_double(0.1).to_double_exact() == 0.1);
	CHECK(Rational(1, 10).enclosure().lo() < Rational(1, 10).enclosure().hi());
	CHECK(Rational(3, 8).enclosure().is_point());
}

TEST_CASE("rational round trips through inverse operations") {
	std::mt19937_64 rng(3);
	std::uniform_int_distribution<long> n(-100000, 100000), d(1, 100000);
	for (int i = 0; i < 5000; ++i) {
		const Rational x(n(rng), d(rng)), y(n(rng), d(rng));
		REQUIRE(rat_arith(ArithOp::Sub, rat_arith(ArithOp::Add, x, y), y) == x);
		REQUIRE(rat_arith(ArithOp::Add, rat_arith(ArithOp::Sub, x, y), y) == x);
		if (!y.is_zero()) {
			REQUIRE(rat_arith(ArithOp::Div, rat_arith(ArithOp::Mul, x, y), y) == x);
			REQUIRE(rat_arith(ArithOp::Mul, rat_arith(ArithOp::Div, x, y), y) == x);
		}
		REQUIRE(Rational::parse(x.to_string()) == x);
		// Canonical form: gcd 1, positive denominator.
		REQUIRE(x.den() > 0);
		REQUIRE(gcd(x.num(), x.den()) == 1);
		const FloatInterval e = x.enclosure();
		REQUIRE(Rational::from_double(e.lo()) <= x);
		REQUIRE(x <= Rational::from_double(e.hi()));
	}
}
