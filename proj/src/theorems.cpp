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

#include "suparg/theorems.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "suparg/errors.hpp"

namespace suparg::theorems {

namespace r = numeric::rounding;
using numeric::FloatInterval;
using sweep::PropertyKind;
using sweep::SweepFailure;

namespace {

SweepResult run(std::string_view fn, double a, double b, PropertyKind kind, sweep::Params params,
                const SweepOptions &opts) {
	sweep::Problem p{expr::parse(fn), a, b, kind, params, std::string(fn)};
	return sweep::run_sweep(p, opts);
}

enum class Sign { Negative, Positive, Unknown };

struct PointSign {
	Sign sign = Sign::Unknown;
	FloatInterval value{0};
};

PointSign sign_at(const expr::Expr &f, double t) {
	try {
		const auto v = expr::eval_iv(f, FloatInterval(t));
		return {v.hi() < 0 ? Sign::Negative : (v.lo() > 0 ? Sign::Positive : Sign::Unknown), v};
	} catch (const DivisionByZeroInterval &) {
	} catch (const OverflowError &) {
	}
	return {};
}

SweepFailure inconclusive(double at, std::string detail, std::size_t pieces) {
	return SweepFailure{SweepFailure::Kind::Inconclusive, at, std::nullopt, std::nullopt, std::move(detail), pieces};
}

} // namespace

SweepResult prove_bound(std::string_view fn, double a, double b, const SweepOptions &opts) {
	return run(fn, a, b, PropertyKind::Bounded, {}, opts);
}

SweepResult prove_max(std::string_view fn, double a, double b, double eps, const SweepOptions &opts) {
	return run(fn, a, b, PropertyKind::MaxApprox, {eps, {}, {}}, opts);
}

SweepResult prove_modulus(std::string_view fn, double a, double b, double eps, const SweepOptions &opts) {
	return run(fn, a, b, PropertyKind::UnifCont, {eps, {}, {}}, opts);
}

SweepResult prove_integral(std::string_view fn, double a, double b, double eps, const SweepOptions &opts) {
	return run(fn, a, b, PropertyKind::DarbouxGap, {eps, {}, {}}, opts);
}

SweepResult prove_monotone(std::string_view fn, double a, double b, bool strict, const SweepOptions &opts) {
	return run(fn, a, b, strict ? PropertyKind::StrictInc : PropertyKind::Inc, {}, opts);
}

SweepResult prove_mvi(std::string_view fn, double a, double b, double M, const SweepOptions &opts) {
	return run(fn, a, b, PropertyKind::MviBound, {{}, M, {}}, opts);
}

SweepResult prove_flat(std::string_view fn, double a, double b, double eta, const SweepOptions &opts) {
	return run(fn, a, b, PropertyKind::Flat, {{}, {}, eta}, opts);
}

SweepResult prove_root(std::string_view fn, double a, double b, double tol, const SweepOptions &opts) {
	if (!std::isfinite(tol) || !(tol > 0)) {
		throw std::invalid_argument("tol must be > 0");
	}
	sweep::Problem p{expr::parse(fn), a, b, PropertyKind::SignNeg, {}, std::string(fn)};
	sweep::validate(p);
	const auto fa = expr::eval_iv(p.f, FloatInterval(a));
	if (!(fa.hi() < 0)) {
		throw PreconditionError("f(a) is not certified negative: f(a) in " + numeric::to_string(fa));
	}

	auto swept = sweep::run_sweep(p, opts);
	if (std::holds_alternative<certs::Certificate>(swept)) {
		return swept;
	}
	const auto &stall = std::get<SweepFailure>(swept);
	if (stall.kind != SweepFailure::Kind::Stalled) {
		return swept;
	}
	const std::size_t pieces = stall.pieces_used;

	// The frontier is the right end of a certified-negative piece (or a).
	double l = stall.at;
	PointSign sl = sign_at(p.f, l);
	if (sl.sign != Sign::Negative) {
		return inconclusive(l, "sign of f at the stalled frontier is not certified", pieces);
	}

	const double h_min = opts.h_min > 0 ? opts.h_min : sweep::default_h_min(a, b);
	double right = 0;
	PointSign sr;
	for (double h = h_min;; h *= 2) {
		const double t = std::min(r::add_up(l, h), b);
		sr = sign_at(p.f, t);
		if (sr.sign == Sign::Positive) {
			right = t;
			break;
		}
		if (t == b || !std::isfinite(h)) {
			return inconclusive(l, "no point right of the frontier with certified f > 0", pieces);
		}
	}

	while (!(r::sub_up(right, l) <= tol)) {
		const double m = l + (right - l) / 2;
		if (!(l < m && m < right)) {
			return inconclusive(l, "bracket cannot be split further", pieces);
		}
		const PointSign sm = sign_at(p.f, m);
		if (sm.sign == Sign::Negative) {
			l = m;
			sl = sm;
			continue;
		}
		if (sm.sign == Sign::Positive) {
			right = m;
			sr = sm;
			continue;
		}
		// Undecided midpoint: fall back to the quarter points.
		const double q1 = l + (m - l) / 2;
		const double q3 = m + (right - m) / 2;
		const PointSign s1 = sign_at(p.f, q1);
		const PointSign s3 = sign_at(p.f, q3);
		if (s1.sign == Sign::Positive) {
			right = q1;
			sr = s1;
		} else if (s3.sign == Sign::Negative) {
			l = q3;
			sl = s3;
		} else if (s1.sign == Sign::Negative || s3.sign == Sign::Positive) {
			if (s1.sign == Sign::Negative) {
				l = q1;
				sl = s1;
			}
			if (s3.sign == Sign::Positive) {
				right = q3;
				sr = s3;
			}
		} else {
			return inconclusive(m, "sign of f near " + std::to_string(m) + " cannot be certified", pieces);
		}
	}

	certs::Certificate cert;
	cert.function = std::string(fn);
	cert.a = a;
	cert.b = b;
	cert.body = certs::RootBracket{l, right, sl.value.hi(), sr.value.lo(), tol};
	cert.engine = {pieces, h_min};
	return cert;
}

} // namespace suparg::theorems
