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

#include "suparg/topology.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <stdexcept>

#include "suparg/errors.hpp"

namespace suparg::topology {

namespace {

// Membership of a set is constant on each open gap between consecutive
// breakpoints, so a set is determined by its value at every breakpoint
// and at one point of every gap.
struct Samples {
	std::vector<Rational> pts;
	std::vector<char> at;  // at[i]: pts[i] is in the set
	std::vector<char> gap; // gap[i]: (pts[i], pts[i+1]) is in the set
};

std::vector<Rational> breakpoints(const std::vector<const std::vector<RatInterval> *> &sets,
                                  const std::vector<Rational> &extra = {}) {
	std::vector<Rational> pts = extra;
	for (const auto *s : sets) {
		for (const auto &c : *s) {
			pts.push_back(c.lo);
			pts.push_back(c.hi);
		}
	}
	std::sort(pts.begin(), pts.end());
	pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
	return pts;
}

Samples sample(std::vector<Rational> pts, const std::function<bool(const Rational &)> &in) {
	Samples s;
	s.pts = std::move(pts);
	for (std::size_t i = 0; i < s.pts.size(); ++i) {
		s.at.push_back(in(s.pts[i]));
		if (i + 1 < s.pts.size()) {
			s.gap.push_back(in(numeric::midpoint(s.pts[i], s.pts[i + 1])));
		}
	}
	return s;
}

// Walks point, gap, point, ... and emits maximal runs of members.
std::vector<RatInterval> rebuild(const Samples &s) {
	std::vector<RatInterval> out;
	if (s.pts.empty()) {
		return out;
	}
	const std::size_t elements = 2 * s.pts.size() - 1;
	auto member = [&](std::size_t e) { return e % 2 == 0 ? s.at[e / 2] != 0 : s.gap[e / 2] != 0; };
	std::size_t e = 0;
	while (e < elements) {
		if (!member(e)) {
			++e;
			continue;
		}
		const std::size_t start = e;
		while (e + 1 < elements && member(e + 1)) {
			++e;
		}
		RatInterval c;
		c.lo = s.pts[start / 2];
		c.lo_open = start % 2 == 1;
		c.hi = e % 2 == 0 ? s.pts[e / 2] : s.pts[e / 2 + 1];
		c.hi_open = e % 2 == 1;
		out.push_back(std::move(c));
		++e;
	}
	return out;
}

bool any_contains(const std::vector<RatInterval> &parts, const Rational &t) {
	return std::any_of(parts.begin(), parts.end(), [&](const RatInterval &c) { return c.contains(t); });
}

RatIntervalSet from_samples(const Samples &s) {
	RatIntervalSet out(rebuild(s));
	return out;
}

void require_domain(const Rational &a, const Rational &b) {
	if (a > b) {
		throw std::invalid_argument("domain requires a <= b");
	}
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

} // namespace

RatInterval RatInterval::make(Rational lo, Rational hi, bool lo_open, bool hi_open) {
	if (lo > hi || (lo == hi && (lo_open || hi_open))) {
		throw std::invalid_argument("interval needs lo < hi, or lo == hi with closed ends");
	}
	return RatInterval{std::move(lo), std::move(hi), lo_open, hi_open};
}

bool RatInterval::contains(const Rational &t) const {
	const bool above = lo_open ? lo < t : lo <= t;
	const bool below = hi_open ? t < hi : t <= hi;
	return above && below;
}

std::string to_string(const RatInterval &x) {
	return std::string(x.lo_open ? "(" : "[") + x.lo.to_string() + ", " + x.hi.to_string() + (x.hi_open ? ")" : "]");
}

RatIntervalSet::RatIntervalSet(std::vector<RatInterval> parts) {
	auto pts = breakpoints({&parts});
	components_ = rebuild(sample(std::move(pts), [&](const Rational &t) { return any_contains(parts, t); }));
}

bool RatIntervalSet::contains(const Rational &t) const { return any_contains(components_, t); }

bool RatIntervalSet::within(const Rational &a, const Rational &b) const {
	return empty() || (a <= components_.front().lo && components_.back().hi <= b);
}

std::string to_string(const RatIntervalSet &s) {
	if (s.empty()) {
		return "{}";
	}
	std::string out;
	for (const auto &c : s.components()) {
		out += (out.empty() ? "" : " u ") + to_string(c);
	}
	return out;
}

RatIntervalSet set_union(const RatIntervalSet &x, const RatIntervalSet &y) {
	auto pts = breakpoints({&x.components(), &y.components()});
	return from_samples(sample(std::move(pts), [&](const Rational &t) { return x.contains(t) || y.contains(t); }));
}

RatIntervalSet set_intersect(const RatIntervalSet &x, const RatIntervalSet &y) {
	auto pts = breakpoints({&x.components(), &y.components()});
	return from_samples(sample(std::move(pts), [&](const Rational &t) { return x.contains(t) && y.contains(t); }));
}

RatIntervalSet complement_rel(const RatIntervalSet &x, const Rational &a, const Rational &b) {
	require_domain(a, b);
	auto pts = breakpoints({&x.components()}, {a, b});
	const auto dom = RatInterval::closed(a, b);
	return from_samples(
	    sample(std::move(pts), [&](const Rational &t) { return dom.contains(t) && !x.contains(t); }));
}

RatIntervalSet rel_interior(const RatIntervalSet &x, const Rational &a, const Rational &b) {
	require_domain(a, b);
	const auto inside = set_intersect(x, RatIntervalSet({RatInterval::closed(a, b)}));
	Samples s = sample(breakpoints({&inside.components()}, {a, b}),
	                   [&](const Rational &t) { return inside.contains(t); });
	Samples in = s;
	for (std::size_t i = 0; i < s.pts.size(); ++i) {
		const bool left = s.pts[i] == a || (i > 0 && s.gap[i - 1]);
		const bool right = s.pts[i] == b || (i + 1 < s.pts.size() && s.gap[i]);
		in.at[i] = s.at[i] && left && right;
	}
	return from_samples(in);
}

RatIntervalSet rel_closure(const RatIntervalSet &x, const Rational &a, const Rational &b) {
	require_domain(a, b);
	const auto inside = set_intersect(x, RatIntervalSet({RatInterval::closed(a, b)}));
	Samples s = sample(breakpoints({&inside.components()}), [&](const Rational &t) { return inside.contains(t); });
	Samples out = s;
	for (std::size_t i = 0; i < s.pts.size(); ++i) {
		out.at[i] = s.at[i] || (i > 0 && s.gap[i - 1]) || (i + 1 < s.pts.size() && s.gap[i]);
	}
	return from_samples(out);
}

RatIntervalSet set_ops(SetOp op, const std::vector<RatIntervalSet> &args, const Rational &a, const Rational &b) {
	switch (op) {
	case SetOp::Union:
	case SetOp::Intersect: {
		if (args.empty()) {
			throw std::invalid_argument("set operation needs at least one argument");
		}
		RatIntervalSet acc = args.front();
		for (std::size_t i = 1; i < args.size(); ++i) {
			acc = op == SetOp::Union ? set_union(acc, args[i]) : set_intersect(acc, args[i]);
		}
		return acc;
	}
	case SetOp::ComplementRel:
	case SetOp::RelInterior:
	case SetOp::RelClosure:
		if (args.size() != 1) {
			throw std::invalid_argument("relative set operation takes exactly one argument");
		}
		if (op == SetOp::ComplementRel) {
			return complement_rel(args[0], a, b);
		}
		return op == SetOp::RelInterior ? rel_interior(args[0], a, b) : rel_closure(args[0], a, b);
	}
	throw std::invalid_argument("unknown set operation");
}

const char *to_string(ClopenReport::Verdict v) noexcept {
	switch (v) {
	case ClopenReport::Verdict::CoversAll: return "CoversAll";
	case ClopenReport::Verdict::NotContainsA: return "NotContainsA";
	case ClopenReport::Verdict::NotRelOpen: return "NotRelOpen";
	case ClopenReport::Verdict::NotRelClosed: return "NotRelClosed";
	}
	return "?";
}

ClopenReport analyze_clopen(const RatIntervalSet &U, const Rational &a, const Rational &b) {
	require_domain(a, b);
	if (!U.within(a, b)) {
		throw std::invalid_argument("U must lie in [a, b]");
	}
	using V = ClopenReport::Verdict;
	if (!U.contains(a)) {
		return {V::NotContainsA, a};
	}
	// U lies in [a, b] and contains a, so its first component starts at a.
	const RatInterval &first = U.components().front();
	if (first.hi == b && !first.hi_open) {
		return {V::CoversAll, std::nullopt};
	}
	return {first.hi_open ? V::NotRelClosed : V::NotRelOpen, first.hi};
}

std::variant<SubcoverCert, UncoveredPoint> extract_subcover(const std::vector<RatInterval> &cover, const Rational &a,
                                                            const Rational &b) {
	require_domain(a, b);
	for (const auto &e : cover) {
		if (!e.lo_open || !e.hi_open || !(e.lo < e.hi)) {
			throw std::invalid_argument("cover element " + to_string(e) + " is not a nondegenerate open interval");
		}
	}
	SubcoverCert cert;
	Rational c = a;
	while (true) {
		std::optional<std::size_t> best;
		for (std::size_t i = 0; i < cover.size(); ++i) {
			if (cover[i].lo < c && c < cover[i].hi && (!best || cover[i].hi > cover[*best].hi)) {
				best = i;
			}
		}
		if (!best) {
			return UncoveredPoint{c};
		}
		if (!cert.indices.empty()) {
			const auto &prev = cover[cert.indices.back()];
			const auto &next = cover[*best];
			cert.chain.push_back(numeric::midpoint(std::max(prev.lo, next.lo), prev.hi));
		}
		cert.indices.push_back(*best);
		if (cover[*best].hi > b) {
			return cert;
		}
		c = cover[*best].hi;
	}
}

SubcoverCheck check_subcover(const SubcoverCert &cert, const std::vector<RatInterval> &cover, const Rational &a,
                             const Rational &b) {
	if (cert.indices.empty()) {
		return {false, "empty subcover"};
	}
	if (cert.chain.size() + 1 != cert.indices.size()) {
		return {false, "need one chain point between consecutive elements"};
	}
	for (std::size_t i : cert.indices) {
		if (i >= cover.size()) {
			return {false, "index " + std::to_string(i) + " outside the cover"};
		}
	}
	if (!cover[cert.indices.front()].contains(a)) {
		return {false, "a not in the first chosen element"};
	}
	if (!cover[cert.indices.back()].contains(b)) {
		return {false, "b not in the last chosen element"};
	}
	for (std::size_t i = 0; i < cert.chain.size(); ++i) {
		const auto &p = cert.chain[i];
		if (!cover[cert.indices[i]].contains(p) || !cover[cert.indices[i + 1]].contains(p)) {
			return {false, "chain point " + std::to_string(i) + " not in both neighbouring elements"};
		}
	}
	return {};
}

std::vector<RatInterval> parse_intervals(std::string_view text) {
	std::vector<RatInterval> out;
	std::size_t line_no = 0;
	while (!text.empty()) {
		const auto nl = text.find('\n');
		std::string_view line = trim(text.substr(0, nl));
		text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
		++line_no;
		if (line.empty() || line.front() == '#') {
			continue;
		}
		auto fail = [&](const std::string &why) {
			throw std::invalid_argument("line " + std::to_string(line_no) + ": " + why);
		};
		const char open = line.front();
		const char close = line.back();
		if ((open != '(' && open != '[') || (close != ')' && close != ']') || line.size() < 2) {
			fail("expected an interval such as \"(lo, hi)\" or \"[lo, hi]\"");
		}
		const auto inner = line.substr(1, line.size() - 2);
		const auto comma = inner.find(',');
		if (comma == std::string_view::npos || inner.find(',', comma + 1) != std::string_view::npos) {
			fail("expected exactly one ',' between the endpoints");
		}
		try {
			out.push_back(RatInterval::make(Rational::parse(inner.substr(0, comma)),
			                                Rational::parse(inner.substr(comma + 1)), open == '(', close == ')'));
		} catch (const std::invalid_argument &e) {
			fail(e.what());
		} catch (const Error &e) {
			fail(e.what());
		}
	}
	return out;
}

nlohmann::ordered_json to_json(const ClopenReport &r) {
	nlohmann::ordered_json j;
	j["theorem"] = "i1";
	j["verdict"] = to_string(r.verdict);
	j["witness"] = r.witness ? nlohmann::ordered_json(r.witness->to_string()) : nlohmann::ordered_json(nullptr);
	return j;
}

nlohmann::ordered_json to_json(const SubcoverCert &c, const std::vector<RatInterval> &cover) {
	nlohmann::ordered_json j;
	j["theorem"] = "i2";
	j["type"] = "SubcoverCert";
	j["indices"] = c.indices;
	auto elements = nlohmann::ordered_json::array();
	for (std::size_t i : c.indices) {
		elements.push_back(to_string(cover.at(i)));
	}
	j["elements"] = std::move(elements);
	auto chain = nlohmann::ordered_json::array();
	for (const auto &p : c.chain) {
		chain.push_back(p.to_string());
	}
	j["chain"] = std::move(chain);
	return j;
}

nlohmann::ordered_json to_json(const UncoveredPoint &u) {
	return nlohmann::ordered_json{{"theorem", "i2"}, {"type", "UncoveredPoint"}, {"point", u.point.to_string()}};
}

} // namespace suparg::topology
