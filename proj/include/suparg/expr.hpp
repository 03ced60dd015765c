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

#ifndef SUPARG_EXPR_HPP
#define SUPARG_EXPR_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "suparg/interval.hpp"
#include "suparg/rational.hpp"

namespace suparg::expr {

using numeric::FloatInterval;
using numeric::Rational;

enum class NodeKind { Const, Var, Neg, Add, Sub, Mul, Div, PowInt, Apply };
enum class Fn { Sin, Cos, Exp, Log, Sqrt, Abs };

const char *to_string(Fn fn) noexcept;

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable AST node. Only the fields relevant to `kind` are meaningful.
struct Node {
	NodeKind kind = NodeKind::Const;
	Rational value;             // Const
	FloatInterval enclosure{0}; // Const: tightest binary64 enclosure of value
	unsigned exponent = 0;      // PowInt
	Fn fn = Fn::Sin;            // Apply
	NodePtr lhs;                // unary operand, or left operand
	NodePtr rhs;
};

/// A univariate expression in the single variable x.
class Expr {
public:
	static Expr constant(const Rational &value);
	static Expr var();
	static Expr neg(const Expr &e);
	static Expr binary(NodeKind kind, const Expr &l, const Expr &r);
	static Expr pow_int(const Expr &base, unsigned n);
	static Expr apply(Fn fn, const Expr &arg);

	const Node &root() const noexcept { return *root_; }
	/// False iff the tree contains abs.
	bool differentiable() const noexcept { return differentiable_; }

	/// Structural equality (constants compared exactly).
	friend bool operator==(const Expr &x, const Expr &y);

private:
	explicit Expr(NodePtr root);

	NodePtr root_;
	bool differentiable_;
};

Expr operator+(const Expr &l, const Expr &r);
Expr operator-(const Expr &l, const Expr &r);
Expr operator*(const Expr &l, const Expr &r);
Expr operator/(const Expr &l, const Expr &r);
Expr operator-(const Expr &e);

/**
 * Parses the expression grammar
 *
 *   expr   := term (("+"|"-") term)*
 *   term   := factor (("*"|"/") factor)*
 *   factor := "-" factor | power
 *   power  := atom ("^" nat)?
 *   atom   := number | "x" | fn "(" expr ")" | "(" expr ")"
 *
 * Whitespace is ignored. Throws ParseError with the byte offset of the
 * offending token.
 */
Expr parse(std::string_view text);

/// Source text that reparses to a structurally identical tree.
std::string to_string(const Expr &e);

struct EvalResult {
	FloatInterval value;
	std::optional<FloatInterval> deriv;
};

/// Natural interval extension: encloses {f(t) : t in x}.
/// DomainError is rethrown annotated with the subexpression and `x`.
FloatInterval eval_iv(const Expr &f, const FloatInterval &x);

/// Forward-mode interval differentiation: encloses f and f' over `x`.
/// Throws NotDifferentiable when f contains abs.
EvalResult eval_d1(const Expr &f, const FloatInterval &x);

} // namespace suparg::expr

#endif
