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

#include "suparg/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>

#include "suparg/errors.hpp"

namespace suparg::sweep {

namespace r = numeric::rounding;
using certs::Certificate;
using certs::Partition;

namespace {

constexpr double kMinNormal = std::numeric_limits<double>::min();
constexpr double kUnsetDelta = std::numeric_limits<double>::max();

struct Attempt {
	std::optional<LocalWitness> witness;
	std::optional<SweepFailure> refutation;
	std::optional<FloatInterval> enclosure;
	std::exception_ptr domain_error;
};

bool derivative_refutes(const Problem &p, const FloatInterval &d) {
	switch (p.kind) {
	case PropertyKind::StrictInc:
	case PropertyKind::Inc: return d.hi() < 0;
	case PropertyKind::MviBound: return d.lo() > *p.params.M;
	case PropertyKind::Flat: return d.lo() > *p.params.eta || d.hi() < -*p.params.eta;
	default: return false;
	}
}

SweepFailure refutation(double at, const FloatInterval &piece, const FloatInterval &enclosure, std::string detail) {
	return SweepFailure{SweepFailure::Kind::HypothesisFail, at, piece, enclosure, std::move(detail)};
}

// eps / (2 (b - a)), rounded down.
double darboux_eta(const Problem &p) { return r::div_down(*p.params.eps, r::mul_up(2.0, r::sub_up(p.b, p.a))); }

// Evaluates the local predicate of p.kind on [x, y]. Local arithmetic
// failures leave the attempt undecided.
Attempt attempt(const Problem &p, const SweepState &s, double x, double y) {
	Attempt out;
	const FloatInterval piece(x, y);
	const bool first = s.pieces_used == 0;
	LocalWitness w;
	w.piece = piece;
	try {
		switch (p.kind) {
		case PropertyKind::Bounded: {
			w.range = expr::eval_iv(p.f, piece);
			out.enclosure = w.range;
			out.witness = w;
			break;
		}
		case PropertyKind::SignNeg: {
			w.range = expr::eval_iv(p.f, piece);
			out.enclosure = w.range;
			if (w.range.hi() < 0) {
				out.witness = w;
			} else if (w.range.lo() >= 0) {
				out.refutation = refutation(x, piece, w.range, "f is non-negative on a piece starting at the frontier");
			}
			break;
		}
		case PropertyKind::MaxApprox: {
			const auto &cert = std::get<certs::MaxCert>(s.partial.body);
			w.range = expr::eval_iv(p.f, piece);
			out.enclosure = w.range;
			w.cand = y;
			w.cand_lo = expr::eval_iv(p.f, FloatInterval(y)).lo();
			if (first) {
				const double at_a = expr::eval_iv(p.f, FloatInterval(p.a)).lo();
				if (!(w.cand_lo > at_a)) {
					w.cand = p.a;
					w.cand_lo = at_a;
				}
			}
			const double best = std::max(cert.f_at_c_lo, w.cand_lo);
			if (r::sub_up(w.range.hi(), best) <= *p.params.eps) {
				out.witness = w;
			}
			break;
		}
		case PropertyKind::UnifCont: {
			const auto &cert = std::get<certs::ModulusCert>(s.partial.body);
			if (x == y) {
				w.delta = 1;
				w.reach = x;
			} else {
				w.delta = std::min(cert.delta, r::div_down(r::sub_down(y, x), 2.0));
				w.reach = first ? p.a : r::sub_down(x, w.delta);
			}
			w.range = expr::eval_iv(p.f, FloatInterval(w.reach, y));
			out.enclosure = w.range;
			if (w.delta > 0 && w.range.width_up() < *p.params.eps) {
				out.witness = w;
			}
			break;
		}
		case PropertyKind::DarbouxGap: {
			w.range = expr::eval_iv(p.f, piece);
			out.enclosure = w.range;
			if (p.a == p.b || w.range.width_up() <= darboux_eta(p)) {
				out.witness = w;
			}
			break;
		}
		case PropertyKind::StrictInc:
		case PropertyKind::Inc:
		case PropertyKind::MviBound:
		case PropertyKind::Flat: {
			if (p.a == p.b) {
				// Pair conclusions are vacuous on a point.
				w.range = expr::eval_iv(p.f, piece);
				out.enclosure = w.range;
				out.witness = w;
				break;
			}
			const auto ev = expr::eval_d1(p.f, piece);
			const FloatInterval d = *ev.deriv;
			w.range = ev.value;
			w.deriv = d;
			out.enclosure = d;
			bool ok = false;
			switch (p.kind) {
			case PropertyKind::StrictInc: ok = d.lo() > 0; break;
			case PropertyKind::Inc: ok = d.lo() >= 0; break;
			case PropertyKind::MviBound: ok = d.hi() <= *p.params.M; break;
			default: ok = d.mag() <= *p.params.eta; break;
			}
			if (ok) {
				out.witness = w;
			} else if (derivative_refutes(p, d)) {
				out.refutation = refutation(x, piece, d, "derivative enclosure violates the hypothesis");
			}
			break;
		}
		}
	} catch (const DomainError &) {
		out.domain_error = std::current_exception();
	} catch (const DivisionByZeroInterval &) {
	} catch (const OverflowError &) {
	}
	return out;
}

void push_end(Partition &part, const FloatInterval &piece) {
	if (!piece.is_point()) {
		part.points.push_back(piece.hi());
	}
}

// In-place combine; `cert` covers [a, cert.b] and w starts at cert.b.
void append(Certificate &cert, const LocalWitness &w) {
	if (cert.b != w.piece.lo()) {
		throw StructureError("witness starts at " + std::to_string(w.piece.lo()) + " but the certificate ends at " +
		                     std::to_string(cert.b));
	}
	if (w.piece.is_point() && !(cert.a == cert.b && cert.engine.pieces == 0)) {
		throw StructureError("point witness outside a fresh degenerate domain");
	}
	const double y = w.piece.hi();
	std::visit(
	    [&](auto &c) {
		    using T = std::decay_t<decltype(c)>;
		    if constexpr (std::is_same_v<T, certs::BoundCert>) {
			    push_end(c.partition, w.piece);
			    c.sup_bounds.push_back(w.range.hi());
			    c.M = std::max(c.M, w.range.hi());
		    } else if constexpr (std::is_same_v<T, certs::MaxCert>) {
			    push_end(c.partition, w.piece);
			    c.sup_bounds.push_back(w.range.hi());
			    if (w.cand_lo > c.f_at_c_lo) {
				    c.c = w.cand;
				    c.f_at_c_lo = w.cand_lo;
			    }
		    } else if constexpr (std::is_same_v<T, certs::NegCert>) {
			    push_end(c.partition, w.piece);
			    c.sup_bounds.push_back(w.range.hi());
		    } else if constexpr (std::is_same_v<T, certs::ModulusCert>) {
			    c.pieces.push_back({w.reach, y, w.range.width_up()});
			    c.delta = std::min(c.delta, w.delta);
		    } else if constexpr (std::is_same_v<T, certs::IntegralCert>) {
			    push_end(c.partition, w.piece);
			    const double m = w.range.lo();
			    const double M = w.range.hi();
			    const double w_lo = r::sub_down(y, w.piece.lo());
			    const double w_hi = r::sub_up(y, w.piece.lo());
			    c.inf_bounds.push_back(m);
			    c.sup_bounds.push_back(M);
			    c.lower = r::add_down(c.lower, m >= 0 ? r::mul_down(m, w_lo) : r::mul_down(m, w_hi));
			    c.upper = r::add_up(c.upper, M >= 0 ? r::mul_up(M, w_hi) : r::mul_up(M, w_lo));
		    } else if constexpr (std::is_same_v<T, certs::MonotoneCert>) {
			    push_end(c.partition, w.piece);
			    c.deriv_lo.push_back(w.deriv ? w.deriv->lo() : 0.0);
		    } else if constexpr (std::is_same_v<T, certs::MviCert>) {
			    push_end(c.partition, w.piece);
			    c.deriv_hi.push_back(w.deriv ? w.deriv->hi() : 0.0);
		    } else if constexpr (std::is_same_v<T, certs::FlatCert>) {
			    push_end(c.partition, w.piece);
			    c.deriv_mag.push_back(w.deriv ? w.deriv->mag() : 0.0);
			    c.oscillation = r::mul_up(c.eta, r::sub_up(y, cert.a));
		    } else {
			    throw StructureError("root brackets are not built by the sweep");
		    }
	    },
	    cert.body);
	cert.b = y;
	++cert.engine.pieces;
}

certs::Body empty_body(const Problem &p) {
	const Partition part{{p.a}};
	switch (p.kind) {
	case PropertyKind::Bounded: return certs::BoundCert{part, {}, kMinNormal};
	case PropertyKind::MaxApprox:
		return certs::MaxCert{part, {}, p.a, *p.params.eps, std::numeric_limits<double>::lowest()};
	case PropertyKind::SignNeg: return certs::NegCert{part, {}};
	case PropertyKind::UnifCont: return certs::ModulusCert{*p.params.eps, kUnsetDelta, {}};
	case PropertyKind::DarbouxGap: return certs::IntegralCert{*p.params.eps, part, {}, {}, 0, 0};
	case PropertyKind::StrictInc: return certs::MonotoneCert{true, part, {}};
	case PropertyKind::Inc: return certs::MonotoneCert{false, part, {}};
	case PropertyKind::MviBound: return certs::MviCert{*p.params.M, part, {}};
	case PropertyKind::Flat: return certs::FlatCert{*p.params.eta, part, {}, 0};
	}
	throw std::invalid_argument("unknown property kind");
}

void require_positive(const std::optional<double> &v, const char *name, PropertyKind kind, bool allow_zero = false) {
	if (!v) {
		throw std::invalid_argument(std::string(to_string(kind)) + " requires " + name);
	}
	if (!std::isfinite(*v) || (allow_zero ? !(*v >= 0) : !(*v > 0))) {
		throw std::invalid_argument(std::string(name) + (allow_zero ? " must be >= 0" : " must be > 0"));
	}
}

std::optional<PropertyKind> kind_of(const Certificate &cert) {
	switch (cert.body.index()) {
	case 0: return PropertyKind::Bounded;
	case 1: return PropertyKind::MaxApprox;
	case 2: return PropertyKind::SignNeg;
	case 4: return PropertyKind::UnifCont;
	case 5: return PropertyKind::DarbouxGap;
	case 6: return std::get<certs::MonotoneCert>(cert.body).strict ? PropertyKind::StrictInc : PropertyKind::Inc;
	case 7: return PropertyKind::MviBound;
	case 8: return PropertyKind::Flat;
	default: return std::nullopt;
	}
}

} // namespace

const char *to_string(PropertyKind kind) noexcept {
	switch (kind) {
	case PropertyKind::Bounded: return "Bounded";
	case PropertyKind::MaxApprox: return "MaxApprox";
	case PropertyKind::SignNeg: return "SignNeg";
	case PropertyKind::UnifCont: return "UnifCont";
	case PropertyKind::DarbouxGap: return "DarbouxGap";
	case PropertyKind::StrictInc: return "StrictInc";
	case PropertyKind::Inc: return "Inc";
	case PropertyKind::MviBound: return "MviBound";
	case PropertyKind::Flat: return "Flat";
	}
	return "?";
}

const char *to_string(SweepFailure::Kind kind) noexcept {
	switch (kind) {
	case SweepFailure::Kind::Stalled: return "Stalled";
	case SweepFailure::Kind::HypothesisFail: return "HypothesisFail";
	case SweepFailure::Kind::Budget: return "Budget";
	case SweepFailure::Kind::Inconclusive: return "Inconclusive";
	}
	return "?";
}

bool needs_derivative(PropertyKind kind) noexcept {
	return kind == PropertyKind::StrictInc || kind == PropertyKind::Inc || kind == PropertyKind::MviBound ||
	       kind == PropertyKind::Flat;
}

void validate(const Problem &p) {
	if (!std::isfinite(p.a) || !std::isfinite(p.b) || p.a > p.b) {
		throw std::invalid_argument("domain must satisfy a <= b with finite endpoints");
	}
	switch (p.kind) {
	case PropertyKind::MaxApprox:
	case PropertyKind::UnifCont:
	case PropertyKind::DarbouxGap: require_positive(p.params.eps, "eps", p.kind); break;
	case PropertyKind::MviBound: require_positive(p.params.M, "M", p.kind); break;
	case PropertyKind::Flat: require_positive(p.params.eta, "eta", p.kind, true); break;
	default: break;
	}
	if (needs_derivative(p.kind) && !p.f.differentiable()) {
		throw NotDifferentiable(std::string(to_string(p.kind)) + " needs f', but f contains abs");
	}
}

double default_h_min(double a, double b) noexcept {
	return std::max(std::ldexp(r::sub_down(b, a), -40), std::numeric_limits<double>::denorm_min());
}

double default_h_init(double a, double b) noexcept {
	return std::max(r::sub_down(b, a) / 8, std::numeric_limits<double>::denorm_min());
}

bool is_final(const Problem &p, const SweepState &s) noexcept {
	return s.frontier == p.b && (p.a < p.b || s.pieces_used == 1);
}

SweepState base_case(const Problem &p) {
	SweepState s;
	s.frontier = p.a;
	s.partial.function = p.source.empty() ? expr::to_string(p.f) : p.source;
	s.partial.a = p.a;
	s.partial.b = p.a;
	s.partial.body = empty_body(p);
	if (p.a == p.b) {
		if (auto at = attempt(p, s, p.a, p.a); at.witness) {
			append(s.partial, *at.witness);
			s.pieces_used = 1;
		}
	}
	return s;
}

std::variant<LocalWitness, SweepFailure> local_extend(const Problem &p, const SweepState &s, double h_init,
                                                      double h_min) {
	const double x = s.frontier;
	if (p.a == p.b) {
		auto at = attempt(p, s, x, x);
		if (at.witness) {
			return *at.witness;
		}
		if (at.refutation) {
			return *at.refutation;
		}
		if (at.domain_error) {
			std::rethrow_exception(at.domain_error);
		}
		return SweepFailure{SweepFailure::Kind::Stalled, x, FloatInterval(x), at.enclosure,
		                    "local predicate not certified on the point domain"};
	}
	if (!(x < p.b)) {
		throw std::invalid_argument("local_extend needs frontier < b");
	}
	if (!(h_init > 0) || !(h_min > 0)) {
		throw std::invalid_argument("local_extend needs h_init > 0 and h_min > 0");
	}

	std::vector<double> tried;
	Attempt last;
	for (double h = h_init; h >= h_min; h /= 2) {
		const double y = std::min(r::add_up(x, h), p.b);
		if (!(y > x)) {
			break;
		}
		if (!tried.empty() && tried.back() == y) {
			continue;
		}
		last = attempt(p, s, x, y);
		if (last.witness) {
			return *last.witness;
		}
		if (last.refutation) {
			return *last.refutation;
		}
		tried.push_back(y);
	}
	if (last.domain_error) {
		std::rethrow_exception(last.domain_error);
	}

	// A stalled derivative sweep may still be refuted on the right halves
	// of the pieces it discarded.
	if (needs_derivative(p.kind)) {
		for (double y : tried) {
			const double mid = x + (y - x) / 2;
			if (!(mid > x && mid < y)) {
				continue;
			}
			const FloatInterval half(mid, y);
			try {
				const FloatInterval d = *expr::eval_d1(p.f, half).deriv;
				if (derivative_refutes(p, d)) {
					return refutation(x, half, d, "derivative enclosure violates the hypothesis");
				}
			} catch (const DomainError &) {
			} catch (const DivisionByZeroInterval &) {
			} catch (const OverflowError &) {
			}
		}
	}

	SweepFailure stall{SweepFailure::Kind::Stalled, x, std::nullopt, last.enclosure,
	                   "local predicate not certified down to h_min"};
	if (!tried.empty()) {
		stall.witness = FloatInterval(x, tried.back());
	}
	return stall;
}

Certificate combine(PropertyKind kind, const Certificate &left, const LocalWitness &w) {
	if (kind_of(left) != kind) {
		throw StructureError(std::string("certificate does not carry the ") + to_string(kind) + " property");
	}
	Certificate out = left;
	append(out, w);
	return out;
}

SweepResult run_sweep(const Problem &p, const SweepOptions &opts) {
	validate(p);
	const double h_min = opts.h_min > 0 ? opts.h_min : default_h_min(p.a, p.b);
	const double h_init = opts.h_init > 0 ? opts.h_init : default_h_init(p.a, p.b);
	if (p.a < p.b && !(h_min <= h_init)) {
		throw std::invalid_argument("h_min must not exceed h_init");
	}
	SweepState s = base_case(p);
	s.partial.engine.h_min = h_min;
	while (!is_final(p, s)) {
		if (s.pieces_used >= opts.max_pieces) {
			return SweepFailure{SweepFailure::Kind::Budget, s.frontier, std::nullopt, std::nullopt,
			                    "piece budget of " + std::to_string(opts.max_pieces) + " exhausted", s.pieces_used};
		}
		auto step = local_extend(p, s, h_init, h_min);
		if (auto *fail = std::get_if<SweepFailure>(&step)) {
			fail->pieces_used = s.pieces_used;
			return *fail;
		}
		const auto &w = std::get<LocalWitness>(step);
		append(s.partial, w);
		s.frontier = w.piece.hi();
		++s.pieces_used;
	}
	return s.partial;
}

} // namespace suparg::sweep
