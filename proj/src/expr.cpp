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

#include "suparg/expr.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>

#include "suparg/errors.hpp"

namespace suparg::expr {

namespace iv = suparg::numeric;

const char *to_string(Fn fn) noexcept {
	switch (fn) {
	case Fn::Sin: return "sin";
	case Fn::Cos: return "cos";
	case Fn::Exp: return "exp";
	case Fn::Log: return "log";
	case Fn::Sqrt: return "sqrt";
	case Fn::Abs: return "abs";
	}
	return "?";
}

namespace {

bool node_differentiable(const Node &n) {
	if (n.kind == NodeKind::Apply && n.fn == Fn::Abs) {
		return false;
	}
	return (!n.lhs || node_differentiable(*n.lhs)) && (!n.rhs || node_differentiable(*n.rhs));
}

bool node_equal(const Node &x, const Node &y) {
	if (x.kind != y.kind) {
		return false;
	}
	switch (x.kind) {
	case NodeKind::Const: return x.value == y.value;
	case NodeKind::Var: return true;
	case NodeKind::PowInt:
		return x.exponent == y.exponent && node_equal(*x.lhs, *y.lhs);
	case NodeKind::Apply: return x.fn == y.fn && node_equal(*x.lhs, *y.lhs);
	case NodeKind::Neg: return node_equal(*x.lhs, *y.lhs);
	default: return node_equal(*x.lhs, *y.lhs) && node_equal(*x.rhs, *y.rhs);
	}
}

NodePtr make_node(Node n) { return std::make_shared<const Node>(std::move(n)); }

} // namespace

Expr::Expr(NodePtr root) : root_(std::move(root)), differentiable_(node_differentiable(*root_)) {}

Expr Expr::constant(const Rational &value) {
	Node n;
	n.kind = NodeKind::Const;
	n.value = value;
	n.enclosure = value.enclosure();
	return Expr(make_node(std::move(n)));
}

Expr Expr::var() {
	Node n;
	n.kind = NodeKind::Var;
	return Expr(make_node(std::move(n)));
}

Expr Expr::neg(const Expr &e) {
	Node n;
	n.kind = NodeKind::Neg;
	n.lhs = e.root_;
	return Expr(make_node(std::move(n)));
}

Expr Expr::binary(NodeKind kind, const Expr &l, const Expr &r) {
	if (kind != NodeKind::Add && kind != NodeKind::Sub && kind != NodeKind::Mul && kind != NodeKind::Div) {
		throw std::invalid_argument("Expr::binary: not a binary node kind");
	}
	Node n;
	n.kind = kind;
	n.lhs = l.root_;
	n.rhs = r.root_;
	return Expr(make_node(std::move(n)));
}

Expr Expr::pow_int(const Expr &base, unsigned exponent) {
	Node n;
	n.kind = NodeKind::PowInt;
	n.exponent = exponent;
	n.lhs = base.root_;
	return Expr(make_node(std::move(n)));
}

Expr Expr::apply(Fn fn, const Expr &arg) {
	Node n;
	n.kind = NodeKind::Apply;
	n.fn = fn;
	n.lhs = arg.root_;
	return Expr(make_node(std::move(n)));
}

bool operator==(const Expr &x, const Expr &y) { return node_equal(*x.root_, *y.root_); }

Expr operator+(const Expr &l, const Expr &r) { return Expr::binary(NodeKind::Add, l, r); }
Expr operator-(const Expr &l, const Expr &r) { return Expr::binary(NodeKind::Sub, l, r); }
Expr operator*(const Expr &l, const Expr &r) { return Expr::binary(NodeKind::Mul, l, r); }
Expr operator/(const Expr &l, const Expr &r) { return Expr::binary(NodeKind::Div, l, r); }
Expr operator-(const Expr &e) { return Expr::neg(e); }

// ---------------------------------------------------------------- parser

namespace {

constexpr unsigned max_exponent = 65535;

class Parser {
public:
	explicit Parser(std::string_view text) : text_(text) {}

	Expr parse() {
		Expr e = expr();
		skip_ws();
		if (pos_ != text_.size()) {
			throw ParseError(pos_, "operator or end of input");
		}
		return e;
	}

private:
	std::string_view text_;
	std::size_t pos_ = 0;

	void skip_ws() {
		while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
			++pos_;
		}
	}

	int peek() {
		skip_ws();
		return pos_ < text_.size() ? static_cast<unsigned char>(text_[pos_]) : -1;
	}

	bool accept(char c) {
		if (peek() == c) {
			++pos_;
			return true;
		}
		return false;
	}

	void expect(char c) {
		if (!accept(c)) {
			throw ParseError(pos_, std::string("'") + c + "'");
		}
	}

	Expr expr() {
		Expr e = term();
		for (;;) {
			if (accept('+')) {
				e = e + term();
			} else if (accept('-')) {
				e = e - term();
			} else {
				return e;
			}
		}
	}

	Expr term() {
		Expr e = factor();
		for (;;) {
			if (accept('*')) {
				e = e * factor();
			} else if (accept('/')) {
				e = e / factor();
			} else {
				return e;
			}
		}
	}

	Expr factor() {
		if (accept('-')) {
			return -factor();
		}
		return power();
	}

	Expr power() {
		Expr base = atom();
		if (!accept('^')) {
			return base;
		}
		skip_ws();
		const std::size_t start = pos_;
		while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
			++pos_;
		}
		if (pos_ == start) {
			throw ParseError(start, "non-negative integer exponent");
		}
		const auto digits = text_.substr(start, pos_ - start);
		if (digits.size() > 5 || std::stoul(std::string(digits)) > max_exponent) {
			throw ParseError(start, "exponent at most " + std::to_string(max_exponent));
		}
		return Expr::pow_int(base, static_cast<unsigned>(std::stoul(std::string(digits))));
	}

	Expr atom() {
		const int c = peek();
		const std::size_t start = pos_;
		if (c == '(') {
			++pos_;
			Expr e = expr();
			expect(')');
			return e;
		}
		if (c >= 0 && std::isdigit(c)) {
			while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
				++pos_;
			}
			if (pos_ < text_.size() && text_[pos_] == '.') {
				++pos_;
				const std::size_t frac = pos_;
				while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
					++pos_;
				}
				if (pos_ == frac) {
					throw ParseError(pos_, "digits after decimal point");
				}
			}
			return Expr::constant(Rational::parse_decimal(text_.substr(start, pos_ - start)));
		}
		if (c >= 0 && std::isalpha(c)) {
			while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
				++pos_;
			}
			const auto name = text_.substr(start, pos_ - start);
			if (name == "x") {
				return Expr::var();
			}
			static constexpr std::pair<std::string_view, Fn> fns[] = {
			    {"sin", Fn::Sin}, {"cos", Fn::Cos},   {"exp", Fn::Exp},
			    {"log", Fn::Log}, {"sqrt", Fn::Sqrt}, {"abs", Fn::Abs},
			};
			for (const auto &[fn_name, fn] : fns) {
				if (name == fn_name) {
					expect('(');
					Expr arg = expr();
					expect(')');
					return Expr::apply(fn, arg);
				}
			}
			throw ParseError(start, "'x' or one of sin, cos, exp, log, sqrt, abs");
		}
		throw ParseError(start, "number, 'x', function or '('");
	}
};

// ---------------------------------------------------------------- printer

int precedence(const Node &n) {
	switch (n.kind) {
	case NodeKind::Add:
	case NodeKind::Sub: return 1;
	case NodeKind::Mul:
	case NodeKind::Div: return 2;
	case NodeKind::Neg: return 3;
	case NodeKind::PowInt: return 4;
	case NodeKind::Const: return n.value.sign() < 0 ? 0 : 5;
	default: return 5;
	}
}

std::string print(const Node &n);

std::string wrap_if(const Node &n, bool parens) { return parens ? "(" + print(n) + ")" : print(n); }

std::string print(const Node &n) {
	switch (n.kind) {
	case NodeKind::Const: {
		const Rational mag = n.value.sign() < 0 ? -n.value : n.value;
		std::string s = mag.to_decimal().value_or("(" + mag.num().get_str() + "/" + mag.den().get_str() + ")");
		return n.value.sign() < 0 ? "(-" + s + ")" : s;
	}
	case NodeKind::Var: return "x";
	case NodeKind::Neg: return "-" + wrap_if(*n.lhs, precedence(*n.lhs) < 3);
	case NodeKind::PowInt:
		return wrap_if(*n.lhs, precedence(*n.lhs) < 5) + "^" + std::to_string(n.exponent);
	case NodeKind::Apply: return std::string(to_string(n.fn)) + "(" + print(*n.lhs) + ")";
	default: break;
	}
	const int p = precedence(n);
	const char *op = n.kind == NodeKind::Add ? " + " : n.kind == NodeKind::Sub ? " - " : n.kind == NodeKind::Mul ? "*" : "/";
	return wrap_if(*n.lhs, precedence(*n.lhs) < p) + op + wrap_if(*n.rhs, precedence(*n.rhs) <= p);
}

// ------------------------------------------------------------- evaluators

[[noreturn]] void rethrow_annotated(const Node &n, const FloatInterval &x, const Error &e) {
	const std::string where = " in subexpression " + print(n) + " for x in " + iv::to_string(x);
	if (const auto *d = dynamic_cast<const DomainError *>(&e)) {
		throw DomainError(d->fn(), d->what() + where);
	}
	if (dynamic_cast<const DivisionByZeroInterval *>(&e) != nullptr) {
		throw DivisionByZeroInterval(e.what() + where);
	}
	if (dynamic_cast<const OverflowError *>(&e) != nullptr) {
		throw OverflowError(e.what() + where);
	}
	throw;
}

FloatInterval apply_fn(Fn fn, const FloatInterval &u) {
	switch (fn) {
	case Fn::Sin: return iv::sin(u);
	case Fn::Cos: return iv::cos(u);
	case Fn::Exp: return iv::exp(u);
	case Fn::Log: return iv::log(u);
	case Fn::Sqrt: return iv::sqrt(u);
	case Fn::Abs: return iv::abs(u);
	}
	throw std::invalid_argument("unknown function");
}

bool annotated(const Error &e) { return std::string_view(e.what()).find(" in subexpression ") != std::string_view::npos; }

FloatInterval eval_node(const Node &n, const FloatInterval &x);

FloatInterval eval_node_checked(const Node &n, const FloatInterval &x) {
	switch (n.kind) {
	case NodeKind::Const: return n.enclosure;
	case NodeKind::Var: return x;
	case NodeKind::Neg: return -eval_node(*n.lhs, x);
	case NodeKind::PowInt: return iv::pow_n(eval_node(*n.lhs, x), n.exponent);
	case NodeKind::Apply: return apply_fn(n.fn, eval_node(*n.lhs, x));
	case NodeKind::Add: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
	case NodeKind::Sub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
	case NodeKind::Mul: return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
	case NodeKind::Div: return eval_node(*n.lhs, x) / eval_node(*n.rhs, x);
	}
	throw std::invalid_argument("unknown node kind");
}

FloatInterval eval_node(const Node &n, const FloatInterval &x) {
	try {
		return eval_node_checked(n, x);
	} catch (const Error &e) {
		if (annotated(e)) {
			throw;
		}
		rethrow_annotated(n, x, e);
	}
}

struct Dual {
	FloatInterval v;
	FloatInterval d;
};

Dual eval_dual(const Node &n, const FloatInterval &x);

Dual eval_dual_checked(const Node &n, const FloatInterval &x) {
	switch (n.kind) {
	case NodeKind::Const: return {n.enclosure, FloatInterval(0.0)};
	case NodeKind::Var: return {x, FloatInterval(1.0)};
	case NodeKind::Neg: {
		const Dual u = eval_dual(*n.lhs, x);
		return {-u.v, -u.d};
	}
	case NodeKind::Add: {
		const Dual u = eval_dual(*n.lhs, x);
		const Dual w = eval_dual(*n.rhs, x);
		return {u.v + w.v, u.d + w.d};
	}
	case NodeKind::Sub: {
		const Dual u = eval_dual(*n.lhs, x);
		const Dual w = eval_dual(*n.rhs, x);
		return {u.v - w.v, u.d - w.d};
	}
	case NodeKind::Mul: {
		const Dual u = eval_dual(*n.lhs, x);
		const Dual w = eval_dual(*n.rhs, x);
		return {u.v * w.v, u.d * w.v + u.v * w.d};
	}
	case NodeKind::Div: {
		const Dual u = eval_dual(*n.lhs, x);
		const Dual w = eval_dual(*n.rhs, x);
		const FloatInterval q = u.v / w.v;
		return {q, (u.d - q * w.d) / w.v};
	}
	case NodeKind::PowInt: {
		if (n.exponent == 0) {
			return {FloatInterval(1.0), FloatInterval(0.0)};
		}
		const Dual u = eval_dual(*n.lhs, x);
		const FloatInterval k(static_cast<double>(n.exponent));
		return {iv::pow_n(u.v, n.exponent), k * iv::pow_n(u.v, n.exponent - 1) * u.d};
	}
	case NodeKind::Apply: {
		const Dual u = eval_dual(*n.lhs, x);
		switch (n.fn) {
		case Fn::Sin: return {iv::sin(u.v), iv::cos(u.v) * u.d};
		case Fn::Cos: return {iv::cos(u.v), -iv::sin(u.v) * u.d};
		case Fn::Exp: {
			const FloatInterval e = iv::exp(u.v);
			return {e, e * u.d};
		}
		case Fn::Log: return {iv::log(u.v), u.d / u.v};
		case Fn::Sqrt: {
			const FloatInterval s = iv::sqrt(u.v);
			if (s.lo() <= 0.0) {
				throw DomainError("sqrt", "derivative of sqrt undefined on " + iv::to_string(u.v));
			}
			return {s, u.d / (FloatInterval(2.0) * s)};
		}
		case Fn::Abs: break;
		}
		throw NotDifferentiable("abs has no derivative");
	}
	}
	throw std::invalid_argument("unknown node kind");
}

Dual eval_dual(const Node &n, const FloatInterval &x) {
	try {
		return eval_dual_checked(n, x);
	} catch (const NotDifferentiable &) {
		throw;
	} catch (const Error &e) {
		if (annotated(e)) {
			throw;
		}
		rethrow_annotated(n, x, e);
	}
}

} // namespace

Expr parse(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Expr &e) { return print(e.root()); }

FloatInterval eval_iv(const Expr &f, const FloatInterval &x) { return eval_node(f.root(), x); }

EvalResult eval_d1(const Expr &f, const FloatInterval &x) {
	if (!f.differentiable()) {
		throw NotDifferentiable("expression " + to_string(f) + " contains abs; derivative queries are rejected");
	}
	const Dual r = eval_dual(f.root(), x);
	return {r.v, r.d};
}

} // namespace suparg::expr
