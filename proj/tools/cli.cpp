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

#include "suparg/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "suparg/certificate_json.hpp"
#include "suparg/errors.hpp"
#include "suparg/theorems.hpp"
#include "suparg/topology.hpp"

namespace suparg::cli {

namespace {

using json = nlohmann::ordered_json;
using numeric::FloatInterval;
using numeric::Rational;

class UsageError : public Error {
public:
	explicit UsageError(const std::string &what) : Error("UsageError", what) {}
};

class InputError : public Error {
public:
	explicit InputError(const std::string &what) : Error("InputError", what) {}
};

struct ProveArgs {
	std::string theorem;
	std::string fn;
	std::string a;
	std::string b;
	std::optional<std::string> eps;
	std::optional<std::string> M;
	std::optional<std::string> eta;
	std::optional<std::string> tol;
	std::optional<std::string> h_min;
	std::optional<std::string> h_init;
	std::size_t max_pieces = std::size_t{1} << 20;
	std::string out_file;
};

struct SetArgs {
	std::string file;
	std::string a;
	std::string b;
};

std::string decimal(double x) {
	char buf[40];
	std::snprintf(buf, sizeof buf, "%.17g", x);
	return buf;
}

bool is_hex(const std::string &s) {
	const std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
	return s.size() > i + 1 && s[i] == '0' && (s[i + 1] == 'x' || s[i + 1] == 'X');
}

FloatInterval scalar_enclosure(const std::string &name, const std::string &text) {
	if (is_hex(text)) {
		try {
			return FloatInterval(numeric::from_hex(text));
		} catch (const std::invalid_argument &e) {
			throw UsageError("--" + name + ": " + e.what());
		}
	}
	try {
		return Rational::parse(text).enclosure();
	} catch (const std::invalid_argument &e) {
		throw UsageError("--" + name + ": " + e.what());
	}
}

// Domain endpoints must be binary64 values exactly.
double exact_endpoint(const std::string &name, const std::string &text) {
	const FloatInterval x = scalar_enclosure(name, text);
	if (!x.is_point()) {
		throw UsageError("--" + name + " " + text + " is not exactly representable in binary64; use " +
		                 Rational::from_double(x.lo()).to_string() + " or " +
		                 Rational::from_double(x.hi()).to_string() + " (or the hexfloats " + numeric::to_hex(x.lo()) +
		                 ", " + numeric::to_hex(x.hi()) + ")");
	}
	return x.lo();
}

// Tolerance-like scalars take the lower end of their enclosure, which
// only strengthens the certified statement.
double lower_scalar(const std::string &name, const std::optional<std::string> &text, std::optional<double> fallback) {
	if (!text) {
		if (fallback) {
			return *fallback;
		}
		throw UsageError("--" + name + " is required for this theorem");
	}
	return scalar_enclosure(name, *text).lo();
}

Rational exact_rational(const std::string &name, const std::string &text) {
	try {
		return Rational::parse(text);
	} catch (const std::invalid_argument &e) {
		throw UsageError("--" + name + ": " + e.what());
	}
}

std::string read_file(const std::string &path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		throw InputError("cannot read " + path);
	}
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

json interval_json(const FloatInterval &x) { return json::array({numeric::to_hex(x.lo()), numeric::to_hex(x.hi())}); }

json failure_json(const sweep::SweepFailure &f) {
	json j;
	j["status"] = "failed";
	j["kind"] = sweep::to_string(f.kind);
	j["at"] = numeric::to_hex(f.at);
	j["at_decimal"] = decimal(f.at);
	j["witness"] = f.witness ? interval_json(*f.witness) : json(nullptr);
	j["enclosure"] = f.enclosure ? interval_json(*f.enclosure) : json(nullptr);
	j["detail"] = f.detail;
	j["pieces_used"] = f.pieces_used;
	return j;
}

int emit_json(std::ostream &out, const json &j) {
	out << j.dump(2) << "\n";
	return kOk;
}

int prove(const ProveArgs &p, const std::string &format, std::ostream &out) {
	const double a = exact_endpoint("a", p.a);
	const double b = exact_endpoint("b", p.b);
	sweep::SweepOptions opts;
	opts.max_pieces = p.max_pieces;
	if (p.h_min) {
		opts.h_min = lower_scalar("h-min", p.h_min, std::nullopt);
	}
	if (p.h_init) {
		opts.h_init = lower_scalar("h-init", p.h_init, std::nullopt);
	}

	const std::string &t = p.theorem;
	sweep::SweepResult result;
	if (t == "bvt") {
		result = theorems::prove_bound(p.fn, a, b, opts);
	} else if (t == "evt") {
		result = theorems::prove_max(p.fn, a, b, lower_scalar("eps", p.eps, std::nullopt), opts);
	} else if (t == "ivt") {
		result = theorems::prove_root(p.fn, a, b, lower_scalar("tol", p.tol, 1e-9), opts);
	} else if (t == "uct") {
		result = theorems::prove_modulus(p.fn, a, b, lower_scalar("eps", p.eps, std::nullopt), opts);
	} else if (t == "dit") {
		result = theorems::prove_integral(p.fn, a, b, lower_scalar("eps", p.eps, std::nullopt), opts);
	} else if (t == "sift" || t == "ift") {
		result = theorems::prove_monotone(p.fn, a, b, t == "sift", opts);
	} else if (t == "mvi") {
		result = theorems::prove_mvi(p.fn, a, b, lower_scalar("M", p.M, std::nullopt), opts);
	} else {
		result = theorems::prove_flat(p.fn, a, b, lower_scalar("eta", p.eta, std::nullopt), opts);
	}

	if (const auto *fail = std::get_if<sweep::SweepFailure>(&result)) {
		if (format == "text") {
			out << "failed: " << sweep::to_string(fail->kind) << " at " << decimal(fail->at) << ": " << fail->detail
			    << "\n";
		} else {
			emit_json(out, failure_json(*fail));
		}
		return kFailed;
	}
	const auto &cert = std::get<certs::Certificate>(result);
	const auto conclusion = certs::conclusion_of(cert);
	if (!p.out_file.empty()) {
		std::ofstream f(p.out_file, std::ios::binary);
		if (!f) {
			throw InputError("cannot write " + p.out_file);
		}
		f << certs::dump(cert);
		if (!f) {
			throw InputError("failed writing " + p.out_file);
		}
	}
	if (format == "text") {
		out << conclusion.statement << "\n";
		return kOk;
	}
	json j;
	j["status"] = "proved";
	j["conclusion"] = certs::to_json(conclusion);
	if (p.out_file.empty()) {
		j["certificate"] = certs::to_json(cert);
	} else {
		j["certificate_file"] = p.out_file;
	}
	return emit_json(out, j);
}

int check_file(const std::string &path, const std::string &format, std::ostream &out) {
	json doc;
	try {
		doc = json::parse(read_file(path));
	} catch (const json::parse_error &e) {
		throw InputError(std::string("malformed JSON: ") + e.what());
	}
	// Accept the envelope printed by `prove` as well as a bare document.
	if (doc.is_object() && doc.contains("status") && doc.contains("certificate") && doc["certificate"].is_object() &&
	    doc["certificate"].contains("schema")) {
		doc = json(doc["certificate"]);
	}
	const certs::Certificate cert = certs::certificate_from_json(doc);
	const expr::Expr f = expr::parse(cert.function);
	const certs::CheckResult r = certs::check(cert, f, cert.a, cert.b);

	if (format == "text") {
		if (r.valid) {
			out << "valid: " << certs::conclusion_of(cert).statement << "\n";
		} else {
			out << "invalid" << (r.piece ? " (piece " + std::to_string(*r.piece) + ")" : std::string()) << ": "
			    << r.reason << "\n";
		}
		return r.valid ? kOk : kFailed;
	}
	json j;
	j["status"] = r.valid ? "valid" : "invalid";
	j["theorem"] = certs::to_string(cert.theorem());
	if (r.valid) {
		j["conclusion"] = certs::to_json(certs::conclusion_of(cert));
	} else {
		j["piece"] = r.piece ? json(*r.piece) : json(nullptr);
		j["reason"] = r.reason;
	}
	emit_json(out, j);
	return r.valid ? kOk : kFailed;
}

int cover(const SetArgs &s, const std::string &format, std::ostream &out) {
	const Rational a = exact_rational("a", s.a);
	const Rational b = exact_rational("b", s.b);
	const auto elements = topology::parse_intervals(read_file(s.file));
	const auto result = topology::extract_subcover(elements, a, b);
	if (const auto *u = std::get_if<topology::UncoveredPoint>(&result)) {
		if (format == "text") {
			out << "uncovered point " << u->point.to_string() << "\n";
		} else {
			emit_json(out, topology::to_json(*u));
		}
		return kFailed;
	}
	const auto &cert = std::get<topology::SubcoverCert>(result);
	const auto verdict = topology::check_subcover(cert, elements, a, b);
	if (!verdict) {
		throw StructureError("subcover failed its own check: " + verdict.reason);
	}
	if (format == "text") {
		out << "subcover:";
		for (std::size_t i : cert.indices) {
			out << " " << i;
		}
		out << "\n";
		return kOk;
	}
	emit_json(out, topology::to_json(cert, elements));
	return kOk;
}

int clopen(const SetArgs &s, const std::string &format, std::ostream &out) {
	const Rational a = exact_rational("a", s.a);
	const Rational b = exact_rational("b", s.b);
	const topology::RatIntervalSet U(topology::parse_intervals(read_file(s.file)));
	const auto report = topology::analyze_clopen(U, a, b);
	if (format == "text") {
		out << topology::to_string(report.verdict);
		if (report.witness) {
			out << " " << report.witness->to_string();
		}
		out << "\n";
	} else {
		emit_json(out, topology::to_json(report));
	}
	return report.verdict == topology::ClopenReport::Verdict::CoversAll ? kOk : kFailed;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
	CLI::App app{"suparg: certified supremum-argument proofs by frontier sweep", "suparg"};
	app.require_subcommand(1);
	app.fallthrough();
	std::string format = "json";
	app.add_option("--format", format, "stdout format")->check(CLI::IsMember({"json", "text"}));

	ProveArgs pa;
	auto *prove_cmd = app.add_subcommand("prove", "prove a theorem and emit its certificate");
	prove_cmd->add_option("theorem", pa.theorem, "bvt|evt|ivt|uct|dit|sift|ift|mvi|cft")
	    ->required()
	    ->check(CLI::IsMember({"bvt", "evt", "ivt", "uct", "dit", "sift", "ift", "mvi", "cft"}));
	prove_cmd->add_option("--fn", pa.fn, "function of x")->required();
	prove_cmd->add_option("--a", pa.a, "left endpoint (exact binary64)")->required();
	prove_cmd->add_option("--b", pa.b, "right endpoint (exact binary64)")->required();
	prove_cmd->add_option("--eps", pa.eps, "tolerance for evt, uct, dit");
	prove_cmd->add_option("--M", pa.M, "derivative bound for mvi");
	prove_cmd->add_option("--eta", pa.eta, "derivative bound for cft");
	prove_cmd->add_option("--tol", pa.tol, "bracket width for ivt (default 1e-9)");
	prove_cmd->add_option("--h-min", pa.h_min, "smallest step (default (b-a)*2^-40)");
	prove_cmd->add_option("--h-init", pa.h_init, "initial step (default (b-a)/8)");
	prove_cmd->add_option("--max-pieces", pa.max_pieces, "piece budget (default 2^20)");
	prove_cmd->add_option("--out", pa.out_file, "write the certificate here");

	std::string check_path;
	auto *check_cmd = app.add_subcommand("check", "re-verify a certificate file");
	check_cmd->add_option("file", check_path, "certificate JSON")->required();

	SetArgs cover_args;
	auto *cover_cmd = app.add_subcommand("cover", "extract a finite subcover of [a, b]");
	cover_cmd->add_option("--file", cover_args.file, "one open interval per line")->required();
	cover_cmd->add_option("--a", cover_args.a, "left endpoint (rational)")->required();
	cover_cmd->add_option("--b", cover_args.b, "right endpoint (rational)")->required();

	SetArgs clopen_args;
	auto *clopen_cmd = app.add_subcommand("clopen", "decide whether a set is clopen in [a, b]");
	clopen_cmd->add_option("--file", clopen_args.file, "one interval per line")->required();
	clopen_cmd->add_option("--a", clopen_args.a, "left endpoint (rational)")->required();
	clopen_cmd->add_option("--b", clopen_args.b, "right endpoint (rational)")->required();

	std::vector<std::string> reversed(args.rbegin(), args.rend());
	try {
		app.parse(reversed);
	} catch (const CLI::CallForHelp &e) {
		return app.exit(e, out, err);
	} catch (const CLI::CallForAllHelp &e) {
		return app.exit(e, out, err);
	} catch (const CLI::ParseError &e) {
		err << "error: UsageError: " << e.what() << "\n";
		return kUsage;
	}

	try {
		if (*prove_cmd) {
			return prove(pa, format, out);
		}
		if (*check_cmd) {
			return check_file(check_path, format, out);
		}
		if (*cover_cmd) {
			return cover(cover_args, format, out);
		}
		return clopen(clopen_args, format, out);
	} catch (const Error &e) {
		err << "error: " << e.kind() << ": " << e.what() << "\n";
	} catch (const std::invalid_argument &e) {
		err << "error: InvalidArgument: " << e.what() << "\n";
	}
	return kUsage;
}

} // namespace suparg::cli
