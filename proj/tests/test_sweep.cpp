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
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <doctest.h>

#include "support/oracle.hpp"
#include "suparg/certificate.hpp"
#include "suparg/errors.hpp"
#include "suparg/expr.hpp"
#include "suparg/sweep.hpp"

using namespace suparg;
using namespace suparg::sweep;
using certs::Certificate;
namespace r = suparg::numeric::rounding;

namespace {

Problem problem(const std::string &fn, double a, double b, PropertyKind kind, Params params = {}) {
	return Problem{expr::parse(fn), a, b, kind, params, fn};
}

LocalWitness as_witness(const std::variant<LocalWitness, SweepFailure> &v) {
	REQUIRE(std::holds_alternative<LocalWitness>(v));
	return std::get<LocalWitness>(v);
}

SweepFailure as_failure(const std::variant<LocalWitness, SweepFailure> &v) {
	REQUIRE(std::holds_alternative<SweepFailure>(v));
	return std::get<SweepFailure>(v);
}

Certificate as_cert(const SweepResult &r) {
	if (auto *f = std::get_if<SweepFailure>(&r))
		FAIL("sweep failed: ", to_string(f->kind), " at ", f->at, ": ", f->detail);
	return std::get<Certificate>(r);
}

SweepFailure as_failure(const SweepResult &r) {
	REQUIRE(std::holds_alternative<SweepFailure>(r));
	return std::get<SweepFailure>(r);
}

// Step boundaries x_1 < ... < x_n = b recorded by a certificate.
std::vector<double> step_ends(const Certificate &c) {
	std::vector<double> out;
	if (const auto *m = std::get_if<certs::ModulusCert>(&c.body)) {
		for (const auto &p : m->pieces)
			out.push_back(p.hi);
		return out;
	}
	const certs::Partition *part = nullptr;
	std::visit(
	    [&](const auto &body) {
		    if constexpr (requires { body.partition; })
			    part = &body.partition;
	    },
	    c.body);
	REQUIRE(part != nullptr);
	out.assign(part->points.begin() + 1, part->points.end());
	return out;
}

std::vector<Problem> sample_problems() {
	Params eps;
	eps.eps = 1e-2;
	Params m;
	m.M = 3.5;
	Params eta;
	eta.eta = 0.5;
	return {
	    problem("sin(x)", 0, 3, PropertyKind::Bounded),
	    problem("x^2 - 2", 0, 1, PropertyKind::SignNeg),
	    problem("sin(x)", 0, 3, PropertyKind::MaxApprox, eps),
	    problem("sin(x)", 0, 4, PropertyKind::UnifCont, eps),
	    problem("x^2", 0, 1, PropertyKind::DarbouxGap, eps),
	    problem("exp(x)", 0, 1, PropertyKind::StrictInc),
	    problem("x^3", 0, 1, PropertyKind::Inc),
	    problem("x^2 + x", 0, 1, PropertyKind::MviBound, m),
	    problem("0.25*sin(x)", -1, 2, PropertyKind::Flat, eta),
	};
}

} // namespace

TEST_CASE("base_case") {
	const Problem p = problem("sin(x)", 0, 3, PropertyKind::Bounded);
	const SweepState s = base_case(p);
	CHECK(s.frontier == 0.0);
	CHECK(s.pieces_used == 0);
	CHECK_FALSE(is_final(p, s));
	const auto &c = std::get<certs::BoundCert>(s.partial.body);
	CHECK(c.sup_bounds.empty());
	CHECK(c.partition.points == std::vector<double>{0.0});

	for (const Problem &q : sample_problems()) {
		Problem d = q;
		d.b = d.a;
		const SweepState ds = base_case(d);
		CHECK(is_final(d, ds));
		CHECK(certs::check(ds.partial, d.f, d.a, d.b).valid);
	}

	// SignNeg with f(a) not negative: the base case is hypothesis-free and
	// the failure appears at the first extension.
	const Problem sn = problem("x", 0, 1, PropertyKind::SignNeg);
	const SweepState ss = base_case(sn);
	CHECK(ss.frontier == 0.0);
	const SweepFailure f = as_failure(local_extend(sn, ss, 0.125, 0x1p-40));
	CHECK(f.kind == SweepFailure::Kind::HypothesisFail);
}

TEST_CASE("local_extend: Bounded sin from 1.0 with h_init 0.5") {
	const Problem p = problem("sin(x)", 0, 3, PropertyKind::Bounded);
	SweepState s = base_case(p);
	s.frontier = 1.0;
	s.partial.b = 1.0;
	const LocalWitness w = as_witness(local_extend(p, s, 0.5, 0x1p-40));
	CHECK(w.piece == numeric::FloatInterval(1.0, 1.5));
	CHECK(w.range.hi() >= std::sin(1.5));
	CHECK(w.range.hi() <= 1.0 + 0x1p-52);
}

TEST_CASE("local_extend: SignNeg x - 1/2 halves to [0.4, 0.45]") {
	const Problem p = problem("x - 1/2", 0, 1, PropertyKind::SignNeg);
	SweepState s = base_case(p);
	s.frontier = 0.4;
	s.partial.b = 0.4;
	s.pieces_used = 1;
	const LocalWitness w = as_witness(local_extend(p, s, 0.4, 0x1p-40));
	CHECK(w.piece.lo() == 0.4);
	CHECK(w.piece.hi() == doctest::Approx(0.45).epsilon(1e-15));
	CHECK(w.range.hi() < 0);

	const SweepFailure f = as_failure(run_sweep(p));
	CHECK(f.kind == SweepFailure::Kind::Stalled);
	CHECK(f.at < 0.5);
	CHECK(f.at > 0.5 - 1e-9);
}

TEST_CASE("local_extend: StrictInc x^3 cannot pass 0") {
	const Problem p = problem("x^3", -1, 1, PropertyKind::StrictInc);
	SweepState s = base_case(p);
	s.frontier = 0.0;
	s.partial.b = 0.0;
	s.pieces_used = 1;
	for (double h : {1.0, 0.05, 1e-6}) {
		const SweepFailure f = as_failure(local_extend(p, s, h, 0x1p-40));
		CHECK(f.kind == SweepFailure::Kind::Stalled);
		REQUIRE(f.enclosure);
		CHECK(f.enclosure->contains_zero());
	}
	const SweepFailure f = as_failure(run_sweep(p));
	CHECK(f.kind == SweepFailure::Kind::Stalled);
	CHECK(f.at >= -0.05);
	CHECK(f.at <= 0.0);
}

TEST_CASE("combine: Darboux sums add") {
	const Problem p = problem("x^2", 0, 1, PropertyKind::DarbouxGap, Params{1e-1, {}, {}});
	Certificate left = base_case(p).partial;
	left.b = 0.7;
	auto &body = std::get<certs::IntegralCert>(left.body);
	body.partition.points = {0.0, 0.7};
	body.inf_bounds = {0.33 / 0.7};
	body.sup_bounds = {0.335 / 0.7};
	body.lower = 0.33;
	body.upper = 0.335;
	LocalWitness w;
	w.piece = numeric::FloatInterval(0.7, 1.0);
	w.range = numeric::FloatInterval(0.14 / 0.3, 0.143 / 0.3);
	const Certificate out = combine(PropertyKind::DarbouxGap, left, w);
	const auto &ic = std::get<certs::IntegralCert>(out.body);
	CHECK(out.b == 1.0);
	CHECK(ic.partition.points == std::vector<double>{0.0, 0.7, 1.0});
	CHECK(ic.lower == doctest::Approx(0.47).epsilon(1e-14));
	CHECK(ic.upper == doctest::Approx(0.478).epsilon(1e-14));
	CHECK(ic.lower <= 0.33 + (1.0 - 0.7) * (0.14 / 0.3));
	CHECK(ic.upper >= 0.335 + (1.0 - 0.7) * (0.143 / 0.3) - 1e-16);
}

TEST_CASE("combine: base case promotes the witness to a one-piece certificate") {
	const Problem p = problem("sin(x)", 0, 3, PropertyKind::Bounded);
	const SweepState s = base_case(p);
	const LocalWitness w = as_witness(local_extend(p, s, 0.375, 0x1p-40));
	const Certificate c = combine(PropertyKind::Bounded, s.partial, w);
	const auto &bc = std::get<certs::BoundCert>(c.body);
	CHECK(bc.partition.points == std::vector<double>{0.0, 0.375});
	CHECK(bc.sup_bounds == std::vector<double>{w.range.hi()});
	CHECK(bc.M == std::max(w.range.hi(), 0x1p-1022));
	CHECK(c.engine.pieces == 1);
	CHECK(certs::check(c, p.f, 0.0, 0.375).valid);
}

TEST_CASE("combine: endpoint mismatch and kind mismatch") {
	const Problem p = problem("sin(x)", 0, 3, PropertyKind::Bounded);
	const SweepState s = base_case(p);
	LocalWitness w;
	w.piece = numeric::FloatInterval(0.5, 1.0);
	w.range = numeric::FloatInterval(0, 1);
	CHECK_THROWS_AS(combine(PropertyKind::Bounded, s.partial, w), StructureError);
	w.piece = numeric::FloatInterval(0.0, 1.0);
	CHECK_THROWS_AS(combine(PropertyKind::SignNeg, s.partial, w), StructureError);
}

TEST_CASE("UnifCont min-rule: left delta 0.2, new step of width 0.3") {
	const Problem p = problem("7", 0, 1, PropertyKind::UnifCont, Params{1e-6, {}, {}});
	SweepState s = base_case(p);
	auto &mc = std::get<certs::ModulusCert>(s.partial.body);
	mc.delta = 0.2;
	mc.pieces = {{0.0, 0.5, 0.0}};
	s.partial.b = 0.5;
	s.frontier = 0.5;
	s.pieces_used = 1;
	const LocalWitness w = as_witness(local_extend(p, s, 0.3, 0x1p-40));
	CHECK(w.piece.hi() == doctest::Approx(0.8));
	CHECK(w.delta == doctest::Approx(0.15).epsilon(1e-14));
	CHECK(w.delta <= 0.2);
	CHECK(w.delta <= (w.piece.hi() - w.piece.lo()) / 2);
	CHECK(w.reach <= 0.5 - w.delta);
	const Certificate c = combine(PropertyKind::UnifCont, s.partial, w);
	CHECK(std::get<certs::ModulusCert>(c.body).delta == w.delta);
}

TEST_CASE("run_sweep examples") {
	const Certificate b = as_cert(run_sweep(problem("sin(x)", 0, 3, PropertyKind::Bounded)));
	const double M = std::get<certs::BoundCert>(b.body).M;
	CHECK(M >= 1.0);
	CHECK(M <= 1.0001);
	CHECK(b.engine.h_min == std::ldexp(3.0, -40));

	const Certificate n = as_cert(run_sweep(problem("x^2 - 2", 0, 1, PropertyKind::SignNeg)));
	CHECK(certs::check(n, expr::parse("x^2 - 2"), 0, 1).valid);

	const SweepFailure f = as_failure(run_sweep(problem("-x", 0, 1, PropertyKind::Inc)));
	CHECK(f.kind == SweepFailure::Kind::HypothesisFail);
	REQUIRE(f.enclosure);
	CHECK(*f.enclosure == numeric::FloatInterval(-1, -1));
	REQUIRE(f.witness);
	CHECK(f.witness->lo() == 0.0);
}

TEST_CASE("run_sweep errors and budget") {
	CHECK_THROWS_AS(run_sweep(problem("log(x)", -1, 1, PropertyKind::Bounded)), DomainError);
	CHECK_THROWS_AS(run_sweep(problem("x", 1, 0, PropertyKind::Bounded)), std::invalid_argument);
	CHECK_THROWS_AS(run_sweep(problem("x", 0, 1, PropertyKind::UnifCont)), std::invalid_argument);
	CHECK_THROWS_AS(run_sweep(problem("x", 0, 1, PropertyKind::UnifCont, Params{-1.0, {}, {}})), std::invalid_argument);
	CHECK_THROWS_AS(run_sweep(problem("abs(x)", 0, 1, PropertyKind::Inc)), NotDifferentiable);
	SweepOptions opts;
	opts.max_pieces = 3;
	const SweepFailure f = as_failure(run_sweep(problem("sin(x)", 0, 3, PropertyKind::Bounded), opts));
	CHECK(f.kind == SweepFailure::Kind::Budget);
	CHECK(f.pieces_used == 3);
	// A loose enclosure on a wide piece is not a domain error of f.
	CHECK(std::holds_alternative<Certificate>(run_sweep(problem("log(x - x + 1)", 0, 1, PropertyKind::Bounded))));
}

TEST_CASE("frontier monotonicity, partial validity and termination") {
	for (const Problem &p : sample_problems()) {
		INFO(std::string(to_string(p.kind)), " ", p.source);
		const double h_min = default_h_min(p.a, p.b);
		const double h_init = default_h_init(p.a, p.b);
		SweepState s = base_case(p);
		std::size_t steps = 0;
		while (!is_final(p, s)) {
			const LocalWitness w = as_witness(local_extend(p, s, h_init, h_min));
			const double before = s.frontier;
			s.partial = combine(p.kind, s.partial, w);
			s.frontier = w.piece.hi();
			++s.pieces_used;
			REQUIRE((s.frontier == p.b || s.frontier - before >= h_min));
			REQUIRE(certs::check(s.partial, p.f, p.a, s.frontier).valid);
			REQUIRE(++steps <= static_cast<std::size_t>(std::ceil((p.b - p.a) / h_min)) + 1);
		}
	}
}

TEST_CASE("combining the pieces of a sweep reproduces its certificate") {
	for (const Problem &p : sample_problems()) {
		INFO(std::string(to_string(p.kind)), " ", p.source);
		const Certificate ref = as_cert(run_sweep(p));
		SweepState s = base_case(p);
		s.partial.engine.h_min = ref.engine.h_min;
		for (double y : step_ends(ref)) {
			// One attempt with exactly this step width.
			const double h = y - s.frontier;
			REQUIRE(r::add_up(s.frontier, h) == y);
			const LocalWitness w = as_witness(local_extend(p, s, h, h));
			REQUIRE(w.piece.hi() == y);
			s.partial = combine(p.kind, s.partial, w);
			s.frontier = y;
			++s.pieces_used;
		}
		CHECK(s.partial == ref);
	}
}

TEST_CASE("random partitions of succeeding problems combine into valid certificates") {
	std::mt19937_64 rng(suparg::testing::test_seed(2024));
	std::size_t built = 0;
	for (const Problem &p : sample_problems()) {
		for (int trial = 0; trial < 20; ++trial) {
			// Dyadic breakpoints so every step width is exact.
			std::uniform_int_distribution<int> n(2, 40);
			const int k = n(rng);
			std::vector<double> pts{p.a};
			const double unit = std::ldexp(p.b - p.a, -12);
			while (pts.back() < p.b) {
				const double step = unit * std::uniform_int_distribution<int>(1, 4096 / k)(rng);
				pts.push_back(std::min(pts.back() + step, p.b));
			}
			SweepState s = base_case(p);
			bool ok = true;
			for (std::size_t i = 1; i < pts.size() && ok; ++i) {
				const double h = pts[i] - s.frontier;
				const auto step = local_extend(p, s, h, h);
				if (!std::holds_alternative<LocalWitness>(step)) {
					ok = false;
					break;
				}
				s.partial = combine(p.kind, s.partial, std::get<LocalWitness>(step));
				s.frontier = pts[i];
				++s.pieces_used;
			}
			if (!ok)
				continue;
			++built;
			INFO(std::string(to_string(p.kind)), " ", p.source);
			CHECK(certs::check(s.partial, p.f, p.a, p.b).valid);
		}
	}
	CHECK(built > 40);
}

TEST_CASE("UnifCont certificate fields satisfy the min-rule") {
	const Problem p = problem("sin(x)", 0, 4, PropertyKind::UnifCont, Params{0.1, {}, {}});
	const Certificate c = as_cert(run_sweep(p));
	const auto &mc = std::get<certs::ModulusCert>(c.body);
	REQUIRE(mc.pieces.size() >= 2);
	CHECK(mc.delta > 0);
	CHECK(mc.pieces.front().lo == 0.0);
	CHECK(mc.pieces.back().hi == 4.0);
	CHECK(mc.delta <= (mc.pieces[0].hi - 0.0) / 2);
	for (std::size_t k = 1; k < mc.pieces.size(); ++k) {
		const double overlap = mc.pieces[k - 1].hi - mc.pieces[k].lo;
		const double step = mc.pieces[k].hi - mc.pieces[k - 1].hi;
		CHECK(mc.delta <= overlap);
		CHECK(mc.delta <= step / 2);
		CHECK(mc.pieces[k].osc < mc.eps);
	}
}
