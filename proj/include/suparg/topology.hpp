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

#ifndef SUPARG_TOPOLOGY_HPP
#define SUPARG_TOPOLOGY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "suparg/rational.hpp"

namespace suparg::topology {

using numeric::Rational;

/// lo < hi, or lo == hi with both ends closed (a singleton).
struct RatInterval {
	Rational lo;
	Rational hi;
	bool lo_open = false;
	bool hi_open = false;

	/// Throws std::invalid_argument when the invariant fails.
	static RatInterval make(Rational lo, Rational hi, bool lo_open, bool hi_open);
	static RatInterval closed(Rational lo, Rational hi) { return make(std::move(lo), std::move(hi), false, false); }
	static RatInterval open(Rational lo, Rational hi) { return make(std::move(lo), std::move(hi), true, true); }

	bool contains(const Rational &t) const;
	friend bool operator==(const RatInterval &, const RatInterval &) = default;
};

/// "[lo, hi)" style text with rationals as "n/d".
std::string to_string(const RatInterval &x);

/// Finite union of intervals kept sorted, disjoint and non-mergeable, so
/// equal sets have identical component lists.
class RatIntervalSet {
public:
	RatIntervalSet() = default;
	explicit RatIntervalSet(std::vector<RatInterval> parts);

	const std::vector<RatInterval> &components() const noexcept { return components_; }
	bool empty() const noexcept { return components_.empty(); }
	bool contains(const Rational &t) const;
	/// Every point lies in [a, b].
	bool within(const Rational &a, const Rational &b) const;

	friend bool operator==(const RatIntervalSet &, const RatIntervalSet &) = default;

private:
	std::vector<RatInterval> components_;
};

std::string to_string(const RatIntervalSet &s);

enum class SetOp { Union, Intersect, ComplementRel, RelInterior, RelClosure };

RatIntervalSet set_union(const RatIntervalSet &x, const RatIntervalSet &y);
RatIntervalSet set_intersect(const RatIntervalSet &x, const RatIntervalSet &y);
/// [a, b] minus x.
RatIntervalSet complement_rel(const RatIntervalSet &x, const Rational &a, const Rational &b);
/// Interior of x in the subspace topology of [a, b].
RatIntervalSet rel_interior(const RatIntervalSet &x, const Rational &a, const Rational &b);
/// Closure of x in [a, b].
RatIntervalSet rel_closure(const RatIntervalSet &x, const Rational &a, const Rational &b);

/// Dispatcher: Union and Intersect fold over all args (at least one);
/// the relative operations take exactly one.
RatIntervalSet set_ops(SetOp op, const std::vector<RatIntervalSet> &args, const Rational &a, const Rational &b);

struct ClopenReport {
	enum class Verdict { CoversAll, NotContainsA, NotRelOpen, NotRelClosed };
	Verdict verdict = Verdict::CoversAll;
	std::optional<Rational> witness;
	friend bool operator==(const ClopenReport &, const ClopenReport &) = default;
};

const char *to_string(ClopenReport::Verdict v) noexcept;

/**
 * Sweeps U's component containing a. CoversAll iff U = [a, b]; otherwise
 * reports a (NotContainsA) or the right end r of that component: r in U
 * (no relative neighbourhood of r inside U) or r in the closure but not U.
 * Throws std::invalid_argument unless U lies in [a, b] and a <= b.
 */
ClopenReport analyze_clopen(const RatIntervalSet &U, const Rational &a, const Rational &b);

struct SubcoverCert {
	std::vector<std::size_t> indices; // chosen cover elements, in chain order
	std::vector<Rational> chain;      // chain[i] lies in elements i and i + 1
	friend bool operator==(const SubcoverCert &, const SubcoverCert &) = default;
};

struct UncoveredPoint {
	Rational point;
	friend bool operator==(const UncoveredPoint &, const UncoveredPoint &) = default;
};

/// Greedy chain from a: among elements (l, r) with l < c < r take the
/// largest r (lowest index on ties), then continue from c = r until the
/// chosen element passes b. Cover elements must be open; throws
/// std::invalid_argument otherwise or when a > b.
std::variant<SubcoverCert, UncoveredPoint> extract_subcover(const std::vector<RatInterval> &cover, const Rational &a,
                                                            const Rational &b);

struct SubcoverCheck {
	bool valid = true;
	std::string reason;
	explicit operator bool() const noexcept { return valid; }
};

/// Confirms a in the first element, b in the last, and each chain point in
/// both neighbouring elements, which makes the chosen union cover [a, b].
SubcoverCheck check_subcover(const SubcoverCert &cert, const std::vector<RatInterval> &cover, const Rational &a,
                             const Rational &b);

/// Parses one interval per line: "(lo, hi)", "[lo, hi]" or mixed brackets,
/// endpoints as decimals or "n/d". Blank lines and lines starting with '#'
/// are skipped. Throws std::invalid_argument naming the line.
std::vector<RatInterval> parse_intervals(std::string_view text);

nlohmann::ordered_json to_json(const ClopenReport &r);
nlohmann::ordered_json to_json(const SubcoverCert &c, const std::vector<RatInterval> &cover);
nlohmann::ordered_json to_json(const UncoveredPoint &u);

} // namespace suparg::topology

#endif
