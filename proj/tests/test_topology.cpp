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

#include <algorithm>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <doctest.h>

#include "support/oracle.hpp"
#include "support/topo_oracle.hpp"
#include "suparg/topology.hpp"

using namespace suparg::topology;
using suparg::numeric::Rational;
using suparg::testing::brute_force_min;
using suparg::testing::covers;
using suparg::testing::random_cover;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

RatIntervalSet set_of(std::vector<RatInterval> parts) { return RatIntervalSet(std::move(parts)); }

} // namespace

TEST_CASE("RatInterval invariants") {
	CHECK_THROWS_AS(RatInterval::make(q(1), q(0), false, false), std::invalid_argument);
	CHECK_THROWS_AS(RatInterval::make(q(1), q(1), true, false), std::invalid_argument);
	CHECK_NOTHROW(RatInterval::closed(q(1), q(1)));
	CHECK(RatInterval::open(q(0), q(1)).contains(q(1, 2)));
	CHECK_FALSE(RatInterval::open(q(0), q(1)).contains(q(0)));
}

TEST_CASE("set_ops examples") {
	const Rational a = q(0), b = q(1);
	CHECK(complement_rel(set_of({RatInterval::closed(q(0), q(1, 2))}), a, b) ==
	      set_of({RatInterval::make(q(1, 2), q(1), true, false)}));
	CHECK(rel_closure(set_of({RatInterval::make(q(0), q(1, 2), false, true)}), a, b) ==
	      set_of({RatInterval::closed(q(0), q(1, 2))}));
	const RatIntervalSet u = set_union(set_of({RatInterval::closed(q(0), q(1, 4))}),
	                                   set_of({RatInterval::closed(q(1, 4), q(1, 2))}));
	CHECK(u == set_of({RatInterval::closed(q(0), q(1, 2))}));
	CHECK(u.components().size() == 1);
	// Touching half-open pieces merge; a missing point does not.
	CHECK(set_of({RatInterval::make(q(0), q(1, 2), false, true), RatInterval::closed(q(1, 2), q(1))}).components().size() == 1);
	CHECK(set_of({RatInterval::make(q(0), q(1, 2), false, true), RatInterval::make(q(1, 2), q(1), true, false)})
	          .components()
	          .size() == 2);
	CHECK(rel_interior(set_of({RatInterval::closed(q(0), q(1, 2))}), a, b) ==
	      set_of({RatInterval::make(q(0), q(1, 2), false, true)}));
	CHECK(set_intersect(set_of({RatInterval::closed(q(0), q(1, 2))}), set_of({RatInterval::open(q(1, 4), q(1))})) ==
	      set_of({RatInterval::make(q(1, 4), q(1, 2), true, false)}));
	CHECK(set_ops(SetOp::ComplementRel, {set_of({RatInterval::closed(q(0), q(1))})}, a, b).empty());
	CHECK_THROWS_AS(set_ops(SetOp::RelClosure, {}, a, b), std::invalid_argument);
}

TEST_CASE("set algebra identities on random sets") {
	std::mt19937_64 rng(suparg::testing::test_seed(41));
	std::uniform_int_distribution<int> end(0, 12), flag(0, 1), count(0, 4);
	const Rational a = q(0), b = q(12);
	auto random_set = [&] {
		std::vector<RatInterval> parts;
		for (int i = count(rng); i > 0; --i) {
			int l = end(rng), r = end(rng);
			if (l > r)
				std::swap(l, r);
			if (l == r)
				parts.push_back(RatInterval::closed(q(l), q(l)));
			else
				parts.push_back(RatInterval::make(q(l), q(r), flag(rng), flag(rng)));
		}
		return RatIntervalSet(parts);
	};
	for (int i = 0; i < 2000; ++i) {
		const RatIntervalSet x = random_set(), y = random_set();
		const RatIntervalSet cx = complement_rel(x, a, b);
		CHECK(complement_rel(cx, a, b) == x);
		CHECK(set_intersect(x, cx).empty());
		CHECK(set_union(x, cx) == set_of({RatInterval::closed(a, b)}));
		CHECK(set_union(x, y) == set_union(y, x));
		CHECK(complement_rel(set_union(x, y), a, b) == set_intersect(cx, complement_rel(y, a, b)));
		CHECK(rel_interior(x, a, b) == complement_rel(rel_closure(cx, a, b), a, b));
		// Membership of every critical point agrees with the definitions.
		for (int t2 = 0; t2 <= 24; ++t2) {
			const Rational t = q(t2, 2);
			CHECK(set_union(x, y).contains(t) == (x.contains(t) || y.contains(t)));
			CHECK(set_intersect(x, y).contains(t) == (x.contains(t) && y.contains(t)));
			CHECK(cx.contains(t) == !x.contains(t));
		}
	}
}

TEST_CASE("analyze_clopen worked examples") {
	const Rational a = q(0), b = q(1);
	CHECK(analyze_clopen(set_of({RatInterval::closed(a, b)}), a, b).verdict == ClopenReport::Verdict::CoversAll);
	const ClopenReport open = analyze_clopen(set_of({RatInterval::closed(q(0), q(1, 2))}), a, b);
	CHECK(open.verdict == ClopenReport::Verdict::NotRelOpen);
	CHECK(open.witness == q(1, 2));
	const ClopenReport closed = analyze_clopen(set_of({RatInterval::make(q(0), q(1, 2), false, true)}), a, b);
	CHECK(closed.verdict == ClopenReport::Verdict::NotRelClosed);
	CHECK(closed.witness == q(1, 2));
	const ClopenReport na = analyze_clopen(set_of({RatInterval::closed(q(1, 2), q(1))}), a, b);
	CHECK(na.verdict == ClopenReport::Verdict::NotContainsA);
	CHECK(na.witness == a);
	CHECK_THROWS_AS(analyze_clopen(set_of({RatInterval::closed(q(0), q(2))}), a, b), std::invalid_argument);
}

TEST_CASE("analyze_clopen verdicts are verifiable by set algebra") {
	std::mt19937_64 rng(suparg::testing::test_seed(43));
	std::uniform_int_distribution<int> end(0, 10), flag(0, 1), count(1, 3);
	const Rational a = q(0), b = q(10);
	for (int i = 0; i < 3000; ++i) {
		std::vector<RatInterval> parts;
		for (int k = count(rng); k > 0; --k) {
			int l = end(rng), r = end(rng);
			if (l >= r)
				continue;
			parts.push_back(RatInterval::make(q(l), q(r), flag(rng), flag(rng)));
		}
		if (i % 3 == 0)
			parts.push_back(RatInterval::closed(a, q(end(rng))));
		const RatIntervalSet U(parts);
		const ClopenReport rep = analyze_clopen(U, a, b);
		using V = ClopenReport::Verdict;
		const bool all = U == set_of({RatInterval::closed(a, b)});
		CHECK((rep.verdict == V::CoversAll) == all);
		if (rep.verdict == V::CoversAll)
			continue;
		REQUIRE(rep.witness);
		const Rational &w = *rep.witness;
		switch (rep.verdict) {
		case V::NotContainsA: CHECK((w == a && !U.contains(a))); break;
		case V::NotRelOpen:
			CHECK(U.contains(w));
			CHECK_FALSE(rel_interior(U, a, b).contains(w));
			break;
		case V::NotRelClosed:
			CHECK_FALSE(U.contains(w));
			CHECK(rel_closure(U, a, b).contains(w));
			break;
		default: break;
		}
	}
}

TEST_CASE("connectedness: no split of [a, b] into disjoint relatively open U, V passes as clopen") {
	std::mt19937_64 rng(suparg::testing::test_seed(47));
	std::uniform_int_distribution<int> cuts(1, 5), pos(1, 99), flag(0, 1);
	const Rational a = q(0), b = q(1);
	std::size_t attempts = 0;
	for (int i = 0; i < 2000; ++i) {
		// Cut [0, 1] at rational points; give each cut point to one side
		// and each open gap to U or V.
		std::vector<int> pts;
		for (int k = cuts(rng); k > 0; --k)
			pts.push_back(pos(rng));
		std::sort(pts.begin(), pts.end());
		pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
		std::vector<RatInterval> u, v;
		int prev = 0;
		u.push_back(RatInterval::closed(a, a)); // a belongs to U
		for (std::size_t k = 0; k <= pts.size(); ++k) {
			const int next = k < pts.size() ? pts[k] : 100;
			auto &side = flag(rng) ? u : v;
			side.push_back(RatInterval::open(q(prev, 100), q(next, 100)));
			if (k < pts.size())
				(flag(rng) ? u : v).push_back(RatInterval::closed(q(next, 100), q(next, 100)));
			prev = next;
		}
		(flag(rng) ? u : v).push_back(RatInterval::closed(b, b));
		const RatIntervalSet U(u), V(v);
		REQUIRE(set_intersect(U, V).empty());
		REQUIRE(set_union(U, V) == set_of({RatInterval::closed(a, b)}));
		if (V.empty())
			continue;
		++attempts;
		CHECK(analyze_clopen(U, a, b).verdict != ClopenReport::Verdict::CoversAll);
	}
	CHECK(attempts > 1000);
}

TEST_CASE("extract_subcover worked examples") {
	const Rational a = q(0), b = q(1);
	const std::vector<RatInterval> two{RatInterval::open(q(-1, 10), q(6, 10)), RatInterval::open(q(4, 10), q(11, 10))};
	const auto r1 = extract_subcover(two, a, b);
	REQUIRE(std::holds_alternative<SubcoverCert>(r1));
	const auto &c1 = std::get<SubcoverCert>(r1);
	CHECK(c1.indices == std::vector<std::size_t>{0, 1});
	REQUIRE(c1.chain.size() == 1);
	CHECK(c1.chain[0] == q(1, 2));
	CHECK(check_subcover(c1, two, a, b).valid);

	const std::vector<RatInterval> split{RatInterval::open(q(-1, 10), q(1, 2)), RatInterval::open(q(1, 2), q(11, 10))};
	const auto r2 = extract_subcover(split, a, b);
	REQUIRE(std::holds_alternative<UncoveredPoint>(r2));
	CHECK(std::get<UncoveredPoint>(r2).point == q(1, 2));

	const std::vector<RatInterval> one{RatInterval::open(q(-1), q(2))};
	const auto r3 = extract_subcover(one, a, b);
	REQUIRE(std::holds_alternative<SubcoverCert>(r3));
	CHECK(std::get<SubcoverCert>(r3).indices == std::vector<std::size_t>{0});
	CHECK(std::get<SubcoverCert>(r3).chain.empty());

	CHECK_THROWS_AS(extract_subcover({RatInterval::closed(q(0), q(1))}, a, b), std::invalid_argument);
	CHECK(std::holds_alternative<UncoveredPoint>(extract_subcover({}, a, b)));
}

TEST_CASE("greedy subcover is minimal and uncovered points are exact") {
	std::mt19937_64 rng(suparg::testing::test_seed(53));
	const Rational a = q(0), b = q(1);
	std::size_t covering = 0, uncovered = 0;
	for (int i = 0; i < 1000; ++i) {
		const auto cover = random_cover(rng);
		const std::size_t best = brute_force_min(cover, a, b);
		const auto res = extract_subcover(cover, a, b);
		if (const auto *c = std::get_if<SubcoverCert>(&res)) {
			++covering;
			CHECK(best > 0);
			CHECK(c->indices.size() == best);
			CHECK(covers(cover, c->indices, a, b));
			CHECK(check_subcover(*c, cover, a, b).valid);
		} else {
			++uncovered;
			const Rational &p = std::get<UncoveredPoint>(res).point;
			CHECK(best == 0);
			CHECK(a <= p);
			CHECK(p <= b);
			for (const auto &e : cover)
				CHECK_FALSE(e.contains(p));
		}
	}
	CHECK(covering > 100);
	CHECK(uncovered > 100);
}

TEST_CASE("check_subcover rejects broken chains") {
	const Rational a = q(0), b = q(1);
	const std::vector<RatInterval> cover{RatInterval::open(q(-1, 10), q(6, 10)), RatInterval::open(q(4, 10), q(11, 10))};
	SubcoverCert c{{0, 1}, {q(7, 10)}};
	CHECK_FALSE(check_subcover(c, cover, a, b).valid);
	c = SubcoverCert{{0}, {}};
	CHECK_FALSE(check_subcover(c, cover, a, b).valid);
	c = SubcoverCert{{0, 5}, {q(1, 2)}};
	CHECK_FALSE(check_subcover(c, cover, a, b).valid);
}

TEST_CASE("parse_intervals and JSON") {
	const auto iv = parse_intervals("# cover\n(-1/10, 0.6)\n\n[0.4, 11/10)\n");
	REQUIRE(iv.size() == 2);
	CHECK(iv[0] == RatInterval::open(q(-1, 10), q(3, 5)));
	CHECK(iv[1] == RatInterval::make(q(2, 5), q(11, 10), false, true));
	try {
		parse_intervals("(0, 1)\n(1, 0)\n");
		FAIL("expected an error");
	} catch (const std::invalid_argument &e) {
		CHECK(std::string(e.what()).find("line 2") != std::string::npos);
	}
	CHECK_THROWS_AS(parse_intervals("(0, 1"), std::invalid_argument);
	const auto j = to_json(ClopenReport{ClopenReport::Verdict::NotRelOpen, q(1, 2)});
	CHECK(j["verdict"] == "NotRelOpen");
	CHECK(j["witness"] == "1/2");
	const auto s = to_json(SubcoverCert{{0, 1}, {q(1, 2)}}, iv);
	CHECK(s["indices"] == nlohmann::ordered_json::array({0, 1}));
	CHECK(s["chain"][0] == "1/2");
	CHECK(to_json(UncoveredPoint{q(1, 2)})["point"] == "1/2");
}
