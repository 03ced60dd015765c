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

#include "suparg/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <type_traits>

#include "suparg/errors.hpp"

namespace suparg::certs {

namespace r = numeric::rounding;

namespace {

constexpr const char *kTheoremNames[] = {"bvt", "evt", "ivt", "uct", "dit", "sift", "ift", "mvi", "cft", "i1", "i2"};

template <class... Ts> struct overloaded : Ts... {
	using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

using Failure = std::optional<std::string>;

CheckResult invalid(std::string reason, std::optional<std::size_t> piece = std::nullopt) {
	return CheckResult{false, piece, std::move(reason)};
}

std::string num(double x) {
	char buf[40];
	std::snprintf(buf, sizeof buf, "%.17g", x);
	return buf;
}

bool finite(double x) { return std::isfinite(x); }

bool all_finite(const std::vector<double> &v) { return std::all_of(v.begin(), v.end(), finite); }

// Structural checks on a partition whose per-piece arrays have length `bounds`.
Failure partition_failure(const Partition &p, double a, double b, std::size_t bounds) {
	if (p.points.empty()) {
		return "empty partition";
	}
	if (!all_finite(p.points)) {
		return "non-finite partition point";
	}
	if (p.points.front() != a) {
		return "partition does not start at a";
	}
	if (p.points.back() != b) {
		return "partition does not end at b";
	}
	if (a < b && p.points.size() < 2) {
		return "partition gap";
	}
	for (std::size_t i = 1; i < p.points.size(); ++i) {
		if (!(p.points[i - 1] < p.points[i])) {
			return "partition not strictly increasing at point " + std::to_string(i);
		}
	}
	if (bounds != p.piece_count()) {
		return "partition gap: " + std::to_string(p.piece_count()) + " pieces but " + std::to_string(bounds) +
		       " piece bounds";
	}
	return std::nullopt;
}

std::size_t piece_total(const Certificate &cert) {
	return std::visit(overloaded{
	                      [](const RootBracket &) -> std::size_t { return 0; },
	                      [](const ModulusCert &m) -> std::size_t { return m.pieces.size(); },
	                      [](const auto &c) -> std::size_t { return c.partition.piece_count(); },
	                  },
	                  cert.body);
}

// Everything that does not depend on evaluating f over a piece.
Failure structure_failure(const Certificate &cert, double a, double b) {
	return std::visit(
	    overloaded{
	        [&](const BoundCert &c) -> Failure {
		        if (!finite(c.M) || !(c.M > 0)) {
			        return "M must be finite and positive";
		        }
		        if (!all_finite(c.sup_bounds)) {
			        return "non-finite piece bound";
		        }
		        return partition_failure(c.partition, a, b, c.sup_bounds.size());
	        },
	        [&](const MaxCert &c) -> Failure {
		        if (!finite(c.eps) || !(c.eps > 0)) {
			        return "eps must be finite and positive";
		        }
		        if (!finite(c.c) || c.c < a || c.c > b) {
			        return "c outside [a, b]";
		        }
		        if (!finite(c.f_at_c_lo) || !all_finite(c.sup_bounds)) {
			        return "non-finite bound";
		        }
		        return partition_failure(c.partition, a, b, c.sup_bounds.size());
	        },
	        [&](const NegCert &c) -> Failure {
		        if (!all_finite(c.sup_bounds)) {
			        return "non-finite piece bound";
		        }
		        return partition_failure(c.partition, a, b, c.sup_bounds.size());
	        },
	        [&](const RootBracket &c) -> Failure {
		        if (!finite(c.l) || !finite(c.r) || !finite(c.f_l_hi) || !finite(c.f_r_lo) || !finite(c.tol)) {
			        return "non-finite bracket field";
		        }
		        if (!(c.tol > 0)) {
			        return "tol must be positive";
		        }
		        if (c.l < a || c.r > b || !(c.l < c.r)) {
			        return "bracket must satisfy a <= l < r <= b";
		        }
		        if (!(r::sub_up(c.r, c.l) <= c.tol)) {
			        return "bracket wider than tol";
		        }
		        if (!(c.f_l_hi < 0)) {
			        return "f_l_hi not negative";
		        }
		        if (!(c.f_r_lo > 0)) {
			        return "f_r_lo not positive";
		        }
		        return std::nullopt;
	        },
	        [&](const ModulusCert &c) -> Failure {
		        if (!finite(c.eps) || !(c.eps > 0)) {
			        return "eps must be finite and positive";
		        }
		        if (!finite(c.delta) || !(c.delta > 0)) {
			        return "delta must be finite and positive";
		        }
		        if (c.pieces.empty()) {
			        return "no pieces";
		        }
		        if (c.pieces.front().lo != a) {
			        return "first piece does not start at a";
		        }
		        if (c.pieces.back().hi != b) {
			        return "last piece does not end at b";
		        }
		        for (std::size_t k = 0; k < c.pieces.size(); ++k) {
			        const auto &q = c.pieces[k];
			        if (!finite(q.lo) || !finite(q.hi) || !finite(q.osc) || q.lo > q.hi || q.lo < a || q.hi > b) {
				        return "malformed piece " + std::to_string(k);
			        }
			        if (k + 1 < c.pieces.size()) {
				        const auto &next = c.pieces[k + 1];
				        if (!(q.lo < next.lo)) {
					        return "piece starts not strictly increasing at piece " + std::to_string(k + 1);
				        }
				        if (q.hi < next.lo) {
					        return "partition gap between pieces " + std::to_string(k) + " and " +
					               std::to_string(k + 1);
				        }
				        if (!(r::sub_down(q.hi, next.lo) >= c.delta)) {
					        return "overlap of pieces " + std::to_string(k) + " and " + std::to_string(k + 1) +
					               " below delta";
				        }
			        }
		        }
		        return std::nullopt;
	        },
	        [&](const IntegralCert &c) -> Failure {
		        if (!finite(c.eps) || !(c.eps > 0)) {
			        return "eps must be finite and positive";
		        }
		        if (!finite(c.lower) || !finite(c.upper) || !all_finite(c.inf_bounds) || !all_finite(c.sup_bounds)) {
			        return "non-finite bound";
		        }
		        if (c.inf_bounds.size() != c.sup_bounds.size()) {
			        return "inf/sup bound count mismatch";
		        }
		        return partition_failure(c.partition, a, b, c.sup_bounds.size());
	        },
	        [&](const MonotoneCert &c) -> Failure {
		        if (!all_finite(c.deriv_lo)) {
			        return "non-finite derivative bound";
		        }
		        return partition_failure(c.partition, a, b, c.deriv_lo.size());
	        },
	        [&](const MviCert &c) -> Failure {
		        if (!finite(c.M) || !(c.M > 0)) {
			        return "M must be finite and positive";
		        }
		        if (!all_finite(c.deriv_hi)) {
			        return "non-finite derivative bound";
		        }
		        return partition_failure(c.partition, a, b, c.deriv_hi.size());
	        },
	        [&](const FlatCert &c) -> Failure {
		        if (!finite(c.eta) || !(c.eta >= 0)) {
			        return "eta must be finite and non-negative";
		        }
		        if (!finite(c.oscillation) || !all_finite(c.deriv_mag)) {
			        return "non-finite bound";
		        }
		        return partition_failure(c.partition, a, b, c.deriv_mag.size());
	        },
	    },
	    cert.body);
}

FloatInterval value_on(const expr::Expr &f, const FloatInterval &x) { return expr::eval_iv(f, x); }

FloatInterval deriv_on(const expr::Expr &f, const FloatInterval &x) { return *expr::eval_d1(f, x).deriv; }

// Re-certifies piece k with fresh evaluations. Never throws.
Failure piece_failure(const Certificate &cert, const expr::Expr &f, std::size_t k) noexcept {
	if (cert.a == cert.b && (std::holds_alternative<MonotoneCert>(cert.body) ||
	                         std::holds_alternative<MviCert>(cert.body) || std::holds_alternative<FlatCert>(cert.body))) {
		return std::nullopt; // pair conclusions are vacuous on a point
	}
	try {
		return std::visit(
		    overloaded{
		        [&](const BoundCert &c) -> Failure {
			        const double u = c.sup_bounds[k];
			        if (!(u <= c.M)) {
				        return "M < piece bound";
			        }
			        if (!(value_on(f, c.partition.piece(k)).hi() <= u)) {
				        return "piece bound below enclosure";
			        }
			        return std::nullopt;
		        },
		        [&](const MaxCert &c) -> Failure {
			        const double u = c.sup_bounds[k];
			        if (!(value_on(f, c.partition.piece(k)).hi() <= u)) {
				        return "piece bound below enclosure";
			        }
			        if (!(r::sub_up(u, c.f_at_c_lo) <= c.eps)) {
				        return "piece bound exceeds f_at_c_lo + eps";
			        }
			        return std::nullopt;
		        },
		        [&](const NegCert &c) -> Failure {
			        const double u = c.sup_bounds[k];
			        if (!(u < 0)) {
				        return "piece bound not negative";
			        }
			        if (!(value_on(f, c.partition.piece(k)).hi() <= u)) {
				        return "piece bound below enclosure";
			        }
			        return std::nullopt;
		        },
		        [&](const RootBracket &) -> Failure { return std::nullopt; },
		        [&](const ModulusCert &c) -> Failure {
			        const auto &q = c.pieces[k];
			        if (!(q.osc < c.eps)) {
				        return "oscillation bound not below eps";
			        }
			        if (!(value_on(f, FloatInterval(q.lo, q.hi)).width_up() <= q.osc)) {
				        return "oscillation bound below enclosure width";
			        }
			        return std::nullopt;
		        },
		        [&](const IntegralCert &c) -> Failure {
			        const auto v = value_on(f, c.partition.piece(k));
			        if (!(c.inf_bounds[k] <= v.lo())) {
				        return "inf bound above enclosure";
			        }
			        if (!(v.hi() <= c.sup_bounds[k])) {
				        return "sup bound below enclosure";
			        }
			        return std::nullopt;
		        },
		        [&](const MonotoneCert &c) -> Failure {
			        const double d = c.deriv_lo[k];
			        if (c.strict ? !(d > 0) : !(d >= 0)) {
				        return c.strict ? "derivative bound not positive" : "derivative bound negative";
			        }
			        if (!(deriv_on(f, c.partition.piece(k)).lo() >= d)) {
				        return "derivative bound above enclosure";
			        }
			        return std::nullopt;
		        },
		        [&](const MviCert &c) -> Failure {
			        const double d = c.deriv_hi[k];
			        if (!(d <= c.M)) {
				        return "M < piece derivative bound";
			        }
			        if (!(deriv_on(f, c.partition.piece(k)).hi() <= d)) {
				        return "derivative bound below enclosure";
			        }
			        return std::nullopt;
		        },
		        [&](const FlatCert &c) -> Failure {
			        const double g = c.deriv_mag[k];
			        if (!(g <= c.eta)) {
				        return "eta < piece derivative bound";
			        }
			        if (!(deriv_on(f, c.partition.piece(k)).mag() <= g)) {
				        return "derivative bound below enclosure";
			        }
			        return std::nullopt;
		        },
		    },
		    cert.body);
	} catch (const std::exception &e) {
		return std::string("evaluation failed: ") + e.what();
	} catch (...) {
		return std::string("evaluation failed");
	}
}

// Lower and upper step-function integrals of the per-piece bounds.
std::pair<double, double> darboux_sums(const IntegralCert &c) {
	double lower = 0;
	double upper = 0;
	for (std::size_t k = 0; k < c.partition.piece_count(); ++k) {
		const auto piece = c.partition.piece(k);
		const double w_lo = r::sub_down(piece.hi(), piece.lo());
		const double w_hi = r::sub_up(piece.hi(), piece.lo());
		const double m = c.inf_bounds[k];
		const double M = c.sup_bounds[k];
		lower = r::add_down(lower, m >= 0 ? r::mul_down(m, w_lo) : r::mul_down(m, w_hi));
		upper = r::add_up(upper, M >= 0 ? r::mul_up(M, w_hi) : r::mul_up(M, w_lo));
	}
	return {lower, upper};
}

// Conclusion-level arithmetic, run once every piece has been re-certified.
Failure global_failure(const Certificate &cert, const expr::Expr &f, double a, double b) {
	try {
		return std::visit(
		    overloaded{
		        [&](const MaxCert &c) -> Failure {
			        if (!(value_on(f, FloatInterval(c.c)).lo() >= c.f_at_c_lo)) {
				        return "f_at_c_lo above enclosure of f(c)";
			        }
			        return std::nullopt;
		        },
		        [&](const RootBracket &c) -> Failure {
			        if (!(value_on(f, FloatInterval(c.l)).hi() <= c.f_l_hi)) {
				        return "f_l_hi below enclosure of f(l)";
			        }
			        if (!(value_on(f, FloatInterval(c.r)).lo() >= c.f_r_lo)) {
				        return "f_r_lo above enclosure of f(r)";
			        }
			        return std::nullopt;
		        },
		        [&](const IntegralCert &c) -> Failure {
			        const auto [lower, upper] = darboux_sums(c);
			        if (!finite(lower) || !finite(upper)) {
				        return "Darboux sums overflow";
			        }
			        if (!(c.lower <= lower)) {
				        return "stored lower sum above recomputed lower sum";
			        }
			        if (!(c.upper >= upper)) {
				        return "stored upper sum below recomputed upper sum";
			        }
			        if (!(r::sub_up(c.upper, c.lower) < c.eps)) {
				        return "U - L not below eps";
			        }
			        return std::nullopt;
		        },
		        [&](const FlatCert &c) -> Failure {
			        if (!(c.oscillation >= r::mul_up(c.eta, r::sub_up(b, a)))) {
				        return "oscillation below eta * (b - a)";
			        }
			        return std::nullopt;
		        },
		        [&](const auto &) -> Failure { return std::nullopt; },
		    },
		    cert.body);
	} catch (const std::exception &e) {
		return std::string("evaluation failed: ") + e.what();
	}
}

CheckResult check_header(const Certificate &cert, const expr::Expr &f, double a, double b) {
	if (!finite(a) || !finite(b) || a > b) {
		return invalid("domain must satisfy a <= b with finite endpoints");
	}
	if (cert.a != a || cert.b != b) {
		return invalid("certificate domain differs from [" + num(a) + ", " + num(b) + "]");
	}
	try {
		if (!(expr::parse(cert.function) == f)) {
			return invalid("function text does not match f");
		}
	} catch (const ParseError &e) {
		return invalid(std::string("function text does not parse: ") + e.what());
	}
	if (auto why = structure_failure(cert, a, b)) {
		return invalid(*why);
	}
	if (std::holds_alternative<MonotoneCert>(cert.body) || std::holds_alternative<MviCert>(cert.body) ||
	    std::holds_alternative<FlatCert>(cert.body)) {
		if (!f.differentiable()) {
			return invalid("derivative certificate for a non-differentiable function");
		}
	}
	return CheckResult::ok();
}

CheckResult finish(const Certificate &cert, const expr::Expr &f, double a, double b, std::size_t first_bad) {
	if (first_bad < piece_total(cert)) {
		return invalid(*piece_failure(cert, f, first_bad), first_bad);
	}
	if (auto why = global_failure(cert, f, a, b)) {
		return invalid(*why);
	}
	return CheckResult::ok();
}

} // namespace

const char *to_string(Theorem t) noexcept { return kTheoremNames[static_cast<int>(t)]; }

std::optional<Theorem> theorem_from_string(const std::string &name) {
	for (int i = 0; i < static_cast<int>(std::size(kTheoremNames)); ++i) {
		if (name == kTheoremNames[i]) {
			return static_cast<Theorem>(i);
		}
	}
	return std::nullopt;
}

FloatInterval Partition::piece(std::size_t k) const {
	if (points.size() == 1) {
		return FloatInterval(points[0]);
	}
	return {points.at(k), points.at(k + 1)};
}

Theorem Certificate::theorem() const noexcept {
	return std::visit(overloaded{
	                      [](const BoundCert &) { return Theorem::Bvt; },
	                      [](const MaxCert &) { return Theorem::Evt; },
	                      [](const NegCert &) { return Theorem::Ivt; },
	                      [](const RootBracket &) { return Theorem::Ivt; },
	                      [](const ModulusCert &) { return Theorem::Uct; },
	                      [](const IntegralCert &) { return Theorem::Dit; },
	                      [](const MonotoneCert &c) { return c.strict ? Theorem::Sift : Theorem::Ift; },
	                      [](const MviCert &) { return Theorem::Mvi; },
	                      [](const FlatCert &) { return Theorem::Cft; },
	                  },
	                  body);
}

CheckResult check_serial(const Certificate &cert, const expr::Expr &f, double a, double b) {
	if (auto header = check_header(cert, f, a, b); !header) {
		return header;
	}
	const std::size_t n = piece_total(cert);
	std::size_t first_bad = n;
	for (std::size_t k = 0; k < n; ++k) {
		if (piece_failure(cert, f, k)) {
			first_bad = k;
			break;
		}
	}
	return finish(cert, f, a, b, first_bad);
}

CheckResult check(const Certificate &cert, const expr::Expr &f, double a, double b) {
	if (auto header = check_header(cert, f, a, b); !header) {
		return header;
	}
	const auto n = static_cast<std::ptrdiff_t>(piece_total(cert));
	std::ptrdiff_t first_bad = n;
#pragma omp parallel for schedule(dynamic, 64) reduction(min : first_bad)
	for (std::ptrdiff_t k = 0; k < n; ++k) {
		if (k < first_bad && piece_failure(cert, f, static_cast<std::size_t>(k))) {
			first_bad = k;
		}
	}
	return finish(cert, f, a, b, static_cast<std::size_t>(first_bad));
}

Conclusion conclusion_of(const Certificate &cert) {
	const std::string dom = "[" + num(cert.a) + ", " + num(cert.b) + "]";
	return std::visit(
	    overloaded{
	        [&](const BoundCert &c) -> Conclusion {
		        return {"bound", "∀t∈" + dom + ": f(t) ≤ " + num(c.M), {{"M", c.M}}};
	        },
	        [&](const MaxCert &c) -> Conclusion {
		        return {"max",
		                "∀t∈" + dom + ": f(t) ≤ f(c) + " + num(c.eps) + ", c = " + num(c.c) + ", f(c) ≥ " +
		                    num(c.f_at_c_lo),
		                {{"c", c.c}, {"eps", c.eps}, {"f_at_c_lo", c.f_at_c_lo}}};
	        },
	        [&](const NegCert &) -> Conclusion { return {"negative", "∀t∈" + dom + ": f(t) < 0", {}}; },
	        [&](const RootBracket &c) -> Conclusion {
		        return {"root",
		                "∃c∈[" + num(c.l) + ", " + num(c.r) + "]: f(c) = 0",
		                {{"l", c.l}, {"r", c.r}, {"f_l_hi", c.f_l_hi}, {"f_r_lo", c.f_r_lo}}};
	        },
	        [&](const ModulusCert &c) -> Conclusion {
		        return {"modulus",
		                "∀s,t∈" + dom + ": |s − t| < " + num(c.delta) + " ⇒ |f(s) − f(t)| < " + num(c.eps),
		                {{"delta", c.delta}, {"eps", c.eps}}};
	        },
	        [&](const IntegralCert &c) -> Conclusion {
		        return {"integral",
		                "∫f over " + dom + " ∈ [" + num(c.lower) + ", " + num(c.upper) + "], U − L < " + num(c.eps),
		                {{"L", c.lower}, {"U", c.upper}, {"eps", c.eps}}};
	        },
	        [&](const MonotoneCert &c) -> Conclusion {
		        return {c.strict ? "strictly-increasing" : "increasing",
		                std::string("∀ x₁<x₂ in ") + dom + ": f(x₁) " + (c.strict ? "<" : "≤") + " f(x₂)",
		                {}};
	        },
	        [&](const MviCert &c) -> Conclusion {
		        return {"mean-value",
		                "∀ x₁<x₂ in " + dom + ": f(x₂) − f(x₁) ≤ " + num(c.M) + "·(x₂ − x₁)",
		                {{"M", c.M}}};
	        },
	        [&](const FlatCert &c) -> Conclusion {
		        return {"flat",
		                "∀t∈" + dom + ": |f(t) − f(a)| ≤ " + num(c.oscillation),
		                {{"eta", c.eta}, {"oscillation", c.oscillation}}};
	        },
	    },
	    cert.body);
}

} // namespace suparg::certs
