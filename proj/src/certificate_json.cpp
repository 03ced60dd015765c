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

#include "suparg/certificate_json.hpp"

#include <stdexcept>

#include "suparg/errors.hpp"

namespace suparg::certs {

using json = nlohmann::ordered_json;

namespace {

json hex(double x) { return numeric::to_hex(x); }

json hex_list(const std::vector<double> &v) {
	json out = json::array();
	for (double x : v) {
		out.push_back(numeric::to_hex(x));
	}
	return out;
}

[[noreturn]] void bad(const std::string &what) { throw StructureError("certificate JSON: " + what); }

const json &field(const json &obj, const char *key) {
	if (!obj.is_object() || !obj.contains(key)) {
		bad(std::string("missing field '") + key + "'");
	}
	return obj.at(key);
}

double read_hex(const json &v, const char *what) {
	if (!v.is_string()) {
		bad(std::string(what) + " must be a hexfloat string");
	}
	try {
		return numeric::from_hex(v.get<std::string>());
	} catch (const std::invalid_argument &e) {
		bad(std::string(what) + ": " + e.what());
	}
}

double hex_field(const json &obj, const char *key) { return read_hex(field(obj, key), key); }

std::vector<double> hex_list_field(const json &obj, const char *key) {
	const json &arr = field(obj, key);
	if (!arr.is_array()) {
		bad(std::string(key) + " must be an array");
	}
	std::vector<double> out;
	out.reserve(arr.size());
	for (const auto &v : arr) {
		out.push_back(read_hex(v, key));
	}
	return out;
}

Partition partition_field(const json &obj) { return Partition{hex_list_field(obj, "partition")}; }

struct Encoded {
	json params = json::object();
	json body = json::object();
};

Encoded encode(const Body &body) {
	Encoded e;
	auto &c = e.body;
	auto &p = e.params;
	if (const auto *x = std::get_if<BoundCert>(&body)) {
		c["type"] = "BoundCert";
		c["M"] = hex(x->M);
		c["partition"] = hex_list(x->partition.points);
		c["sup_bounds"] = hex_list(x->sup_bounds);
	} else if (const auto *x = std::get_if<MaxCert>(&body)) {
		p["eps"] = hex(x->eps);
		c["type"] = "MaxCert";
		c["c"] = hex(x->c);
		c["eps"] = hex(x->eps);
		c["f_at_c_lo"] = hex(x->f_at_c_lo);
		c["partition"] = hex_list(x->partition.points);
		c["sup_bounds"] = hex_list(x->sup_bounds);
	} else if (const auto *x = std::get_if<NegCert>(&body)) {
		c["type"] = "NegCert";
		c["partition"] = hex_list(x->partition.points);
		c["sup_bounds"] = hex_list(x->sup_bounds);
	} else if (const auto *x = std::get_if<RootBracket>(&body)) {
		p["tol"] = hex(x->tol);
		c["type"] = "RootBracket";
		c["l"] = hex(x->l);
		c["r"] = hex(x->r);
		c["f_l_hi"] = hex(x->f_l_hi);
		c["f_r_lo"] = hex(x->f_r_lo);
		c["tol"] = hex(x->tol);
	} else if (const auto *x = std::get_if<ModulusCert>(&body)) {
		p["eps"] = hex(x->eps);
		c["type"] = "ModulusCert";
		c["eps"] = hex(x->eps);
		c["delta"] = hex(x->delta);
		json pieces = json::array();
		for (const auto &q : x->pieces) {
			pieces.push_back(json::array({hex(q.lo), hex(q.hi), hex(q.osc)}));
		}
		c["pieces"] = std::move(pieces);
	} else if (const auto *x = std::get_if<IntegralCert>(&body)) {
		p["eps"] = hex(x->eps);
		c["type"] = "IntegralCert";
		c["eps"] = hex(x->eps);
		c["lower"] = hex(x->lower);
		c["upper"] = hex(x->upper);
		c["partition"] = hex_list(x->partition.points);
		c["inf_bounds"] = hex_list(x->inf_bounds);
		c["sup_bounds"] = hex_list(x->sup_bounds);
	} else if (const auto *x = std::get_if<MonotoneCert>(&body)) {
		p["strict"] = x->strict;
		c["type"] = "MonotoneCert";
		c["strict"] = x->strict;
		c["partition"] = hex_list(x->partition.points);
		c["deriv_lo"] = hex_list(x->deriv_lo);
	} else if (const auto *x = std::get_if<MviCert>(&body)) {
		p["M"] = hex(x->M);
		c["type"] = "MviCert";
		c["M"] = hex(x->M);
		c["partition"] = hex_list(x->partition.points);
		c["deriv_hi"] = hex_list(x->deriv_hi);
	} else if (const auto *x = std::get_if<FlatCert>(&body)) {
		p["eta"] = hex(x->eta);
		c["type"] = "FlatCert";
		c["eta"] = hex(x->eta);
		c["oscillation"] = hex(x->oscillation);
		c["partition"] = hex_list(x->partition.points);
		c["deriv_mag"] = hex_list(x->deriv_mag);
	}
	return e;
}

Body decode(const json &c) {
	const json &type = field(c, "type");
	if (!type.is_string()) {
		bad("certificate type must be a string");
	}
	const auto t = type.get<std::string>();
	if (t == "BoundCert") {
		return BoundCert{partition_field(c), hex_list_field(c, "sup_bounds"), hex_field(c, "M")};
	}
	if (t == "MaxCert") {
		return MaxCert{partition_field(c), hex_list_field(c, "sup_bounds"), hex_field(c, "c"), hex_field(c, "eps"),
		               hex_field(c, "f_at_c_lo")};
	}
	if (t == "NegCert") {
		return NegCert{partition_field(c), hex_list_field(c, "sup_bounds")};
	}
	if (t == "RootBracket") {
		return RootBracket{hex_field(c, "l"), hex_field(c, "r"), hex_field(c, "f_l_hi"), hex_field(c, "f_r_lo"),
		                   hex_field(c, "tol")};
	}
	if (t == "ModulusCert") {
		ModulusCert m{hex_field(c, "eps"), hex_field(c, "delta"), {}};
		const json &pieces = field(c, "pieces");
		if (!pieces.is_array()) {
			bad("pieces must be an array");
		}
		for (const auto &q : pieces) {
			if (!q.is_array() || q.size() != 3) {
				bad("each modulus piece must be [lo, hi, osc]");
			}
			m.pieces.push_back({read_hex(q[0], "lo"), read_hex(q[1], "hi"), read_hex(q[2], "osc")});
		}
		return m;
	}
	if (t == "IntegralCert") {
		return IntegralCert{hex_field(c, "eps"),
		                    partition_field(c),
		                    hex_list_field(c, "inf_bounds"),
		                    hex_list_field(c, "sup_bounds"),
		                    hex_field(c, "lower"),
		                    hex_field(c, "upper")};
	}
	if (t == "MonotoneCert") {
		const json &strict = field(c, "strict");
		if (!strict.is_boolean()) {
			bad("strict must be a boolean");
		}
		return MonotoneCert{strict.get<bool>(), partition_field(c), hex_list_field(c, "deriv_lo")};
	}
	if (t == "MviCert") {
		return MviCert{hex_field(c, "M"), partition_field(c), hex_list_field(c, "deriv_hi")};
	}
	if (t == "FlatCert") {
		return FlatCert{hex_field(c, "eta"), partition_field(c), hex_list_field(c, "deriv_mag"),
		                hex_field(c, "oscillation")};
	}
	bad("unknown certificate type '" + t + "'");
}

} // namespace

json to_json(const Certificate &cert) {
	auto [params, body] = encode(cert.body);
	json doc;
	doc["schema"] = kSchema;
	doc["theorem"] = to_string(cert.theorem());
	doc["function"] = cert.function;
	doc["domain"] = json::array({hex(cert.a), hex(cert.b)});
	doc["params"] = std::move(params);
	doc["certificate"] = std::move(body);
	doc["engine"] = json{{"pieces", cert.engine.pieces}, {"h_min", hex(cert.engine.h_min)}};
	return doc;
}

Certificate certificate_from_json(const json &doc) {
	if (!doc.is_object()) {
		bad("document must be an object");
	}
	if (field(doc, "schema") != kSchema) {
		bad(std::string("schema must be '") + kSchema + "'");
	}
	Certificate cert;
	const json &fn = field(doc, "function");
	if (!fn.is_string()) {
		bad("function must be a string");
	}
	cert.function = fn.get<std::string>();
	const json &domain = field(doc, "domain");
	if (!domain.is_array() || domain.size() != 2) {
		bad("domain must be [a, b]");
	}
	cert.a = read_hex(domain[0], "domain");
	cert.b = read_hex(domain[1], "domain");
	cert.body = decode(field(doc, "certificate"));

	const json &theorem = field(doc, "theorem");
	if (!theorem.is_string() || theorem.get<std::string>() != to_string(cert.theorem())) {
		bad("theorem tag does not match certificate type");
	}
	const json &engine = field(doc, "engine");
	const json &pieces = field(engine, "pieces");
	if (!pieces.is_number_unsigned()) {
		bad("engine.pieces must be a non-negative integer");
	}
	cert.engine.pieces = pieces.get<std::size_t>();
	cert.engine.h_min = hex_field(engine, "h_min");
	return cert;
}

std::string dump(const Certificate &cert) { return to_json(cert).dump(2) + "\n"; }

json to_json(const Conclusion &c) {
	json values = json::object();
	for (const auto &[k, v] : c.values) {
		values[k] = v;
	}
	return json{{"kind", c.kind}, {"statement", c.statement}, {"values", std::move(values)}};
}

} // namespace suparg::certs
