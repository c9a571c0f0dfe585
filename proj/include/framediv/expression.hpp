#pragma once

#include <cctype>
#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "errors.hpp"

namespace framediv {

// Arithmetic expressions over chart coordinates x1..xn.
//
// Grammar (recursive descent):
//   expr    := term { ('+'|'-') term }
//   term    := unary { ('*'|'/') unary }
//   unary   := '-' unary | power
//   power   := primary [ '^' unary ]          (right associative)
//   primary := number | 'pi' | 'e' | xK | fn '(' expr ')' | '(' expr ')'
//   fn      := 'sin' | 'cos' | 'exp'
//
// Trees are immutable; evaluation is const and safe to share across
// threads. derivative(axis) returns the symbolic partial, which keeps
// metric and tensor derivatives free of finite-difference truncation
// when fields are loaded from expression text.
class Expr {
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    struct Node {
        enum class Op { constant, variable, add, sub, mul, div, pow, neg, sin_fn, cos_fn, exp_fn };
        Op op;
        double value = 0.0; // constant
        int var = -1;       // variable index, 0-based
        NodePtr a, b;

        double eval(const Eigen::VectorXd& x) const {
            switch (op) {
                case Op::constant: return value;
                case Op::variable: return x[var];
                case Op::add: return a->eval(x) + b->eval(x);
                case Op::sub: return a->eval(x) - b->eval(x);
                case Op::mul: return a->eval(x) * b->eval(x);
                case Op::div: return a->eval(x) / b->eval(x);
                case Op::pow: return std::pow(a->eval(x), b->eval(x));
                case Op::neg: return -a->eval(x);
                case Op::sin_fn: return std::sin(a->eval(x));
                case Op::cos_fn: return std::cos(a->eval(x));
                case Op::exp_fn: return std::exp(a->eval(x));
            }
            return 0.0;
        }
    };

    static NodePtr constant(double c) {
        auto n = std::make_shared<Node>();
        n->op = Node::Op::constant;
        n->value = c;
        return n;
    }

    static bool is_const(const NodePtr& n, double c) {
        return n->op == Node::Op::constant && n->value == c;
    }

    // Factories fold constants so repeated differentiation keeps trees small.
    static NodePtr make(Node::Op op, NodePtr a, NodePtr b = nullptr) {
        const bool ac = a && a->op == Node::Op::constant;
        const bool bc = b && b->op == Node::Op::constant;
        switch (op) {
            case Node::Op::add:
                if (ac && bc) return constant(a->value + b->value);
                if (is_const(a, 0.0)) return b;
                if (is_const(b, 0.0)) return a;
                break;
            case Node::Op::sub:
                if (ac && bc) return constant(a->value - b->value);
                if (is_const(b, 0.0)) return a;
                break;
            case Node::Op::mul:
                if (ac && bc) return constant(a->value * b->value);
                if (is_const(a, 0.0) || is_const(b, 0.0)) return constant(0.0);
                if (is_const(a, 1.0)) return b;
                if (is_const(b, 1.0)) return a;
                break;
            case Node::Op::div:
                if (ac && bc && b->value != 0.0) return constant(a->value / b->value);
                if (is_const(a, 0.0)) return constant(0.0);
                if (is_const(b, 1.0)) return a;
                break;
            case Node::Op::pow:
                if (ac && bc) return constant(std::pow(a->value, b->value));
                if (is_const(b, 1.0)) return a;
                if (is_const(b, 0.0)) return constant(1.0);
                break;
            case Node::Op::neg:
                if (ac) return constant(-a->value);
                break;
            case Node::Op::sin_fn:
                if (ac) return constant(std::sin(a->value));
                break;
            case Node::Op::cos_fn:
                if (ac) return constant(std::cos(a->value));
                break;
            case Node::Op::exp_fn:
                if (ac) return constant(std::exp(a->value));
                break;
            default:
                break;
        }
        auto n = std::make_shared<Node>();
        n->op = op;
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }

    static NodePtr diff(const NodePtr& n, int axis) {
        using Op = Node::Op;
        switch (n->op) {
            case Op::constant: return constant(0.0);
            case Op::variable: return constant(n->var == axis ? 1.0 : 0.0);
            case Op::add: return make(Op::add, diff(n->a, axis), diff(n->b, axis));
            case Op::sub: return make(Op::sub, diff(n->a, axis), diff(n->b, axis));
            case Op::mul:
                return make(Op::add, make(Op::mul, diff(n->a, axis), n->b),
                            make(Op::mul, n->a, diff(n->b, axis)));
            case Op::div:
                // (u/v)' = u'/v - u v'/v^2
                return make(Op::sub, make(Op::div, diff(n->a, axis), n->b),
                            make(Op::div, make(Op::mul, n->a, diff(n->b, axis)),
                                 make(Op::mul, n->b, n->b)));
            case Op::pow: {
                if (n->b->op == Op::constant) {
                    // d u^c = c u^{c-1} u'
                    const double c = n->b->value;
                    return make(Op::mul, constant(c),
                                make(Op::mul, make(Op::pow, n->a, constant(c - 1.0)),
                                     diff(n->a, axis)));
                }
                // General case via u^v = exp(v ln u); assumes u > 0.
                // d u^v = u^v (v' ln u + v u'/u); there is no ln node, so
                // rewrite as u^v * v u'/u + exp-form for the v' part.
                auto uv = make(Op::pow, n->a, n->b);
                auto term1 = make(Op::div, make(Op::mul, n->b, make(Op::mul, uv, diff(n->a, axis))), n->a);
                if (is_const(diff(n->b, axis), 0.0)) return term1;
                throw ParseError("derivative of u^v with non-constant exponent is unsupported");
            }
            case Op::neg: return make(Op::neg, diff(n->a, axis));
            case Op::sin_fn:
                return make(Op::mul, make(Op::cos_fn, n->a), diff(n->a, axis));
            case Op::cos_fn:
                return make(Op::neg, make(Op::mul, make(Op::sin_fn, n->a), diff(n->a, axis)));
            case Op::exp_fn:
                return make(Op::mul, make(Op::exp_fn, n->a), diff(n->a, axis));
        }
        return constant(0.0);
    }

    class Parser {
    public:
        Parser(const std::string& src, int nvars) : src_(src), nvars_(nvars) {}

        NodePtr parse() {
            NodePtr e = expr();
            skip_ws();
            if (pos_ != src_.size())
                throw ParseError("unexpected trailing input at position " + std::to_string(pos_) +
                                 " in '" + src_ + "'");
            return e;
        }

    private:
        const std::string& src_;
        int nvars_;
        size_t pos_ = 0;

        void skip_ws() {
            while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        char peek() {
            skip_ws();
            return pos_ < src_.size() ? src_[pos_] : '\0';
        }
        bool accept(char c) {
            if (peek() == c) { ++pos_; return true; }
            return false;
        }
        void expect(char c) {
            if (!accept(c))
                throw ParseError(std::string("expected '") + c + "' at position " +
                                 std::to_string(pos_) + " in '" + src_ + "'");
        }

        NodePtr expr() {
            NodePtr lhs = term();
            for (;;) {
                if (accept('+')) lhs = make(Node::Op::add, lhs, term());
                else if (accept('-')) lhs = make(Node::Op::sub, lhs, term());
                else return lhs;
            }
        }
        NodePtr term() {
            NodePtr lhs = unary();
            for (;;) {
                if (accept('*')) lhs = make(Node::Op::mul, lhs, unary());
                else if (accept('/')) lhs = make(Node::Op::div, lhs, unary());
                else return lhs;
            }
        }
        NodePtr unary() {
            if (accept('-')) return make(Node::Op::neg, unary());
            return power();
        }
        NodePtr power() {
            NodePtr base = primary();
            if (accept('^')) return make(Node::Op::pow, base, unary());
            return base;
        }
        NodePtr primary() {
            const char c = peek();
            if (c == '(') {
                ++pos_;
                NodePtr e = expr();
                expect(')');
                return e;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
            if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
            throw ParseError("unexpected character '" + std::string(1, c) + "' at position " +
                             std::to_string(pos_) + " in '" + src_ + "'");
        }
        NodePtr number() {
            size_t end = 0;
            double v = 0.0;
            try {
                v = std::stod(src_.substr(pos_), &end);
            } catch (const std::exception&) {
                throw ParseError("malformed number at position " + std::to_string(pos_));
            }
            pos_ += end;
            return constant(v);
        }
        NodePtr identifier() {
            const size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            const std::string name = src_.substr(start, pos_ - start);
            if (name == "pi") return constant(M_PI);
            if (name == "e") return constant(M_E);
            if (name == "sin" || name == "cos" || name == "exp") {
                expect('(');
                NodePtr arg = expr();
                expect(')');
                if (name == "sin") return make(Node::Op::sin_fn, arg);
                if (name == "cos") return make(Node::Op::cos_fn, arg);
                return make(Node::Op::exp_fn, arg);
            }
            if (name.size() >= 2 && name[0] == 'x') {
                int idx = 0;
                for (size_t i = 1; i < name.size(); ++i) {
                    if (!std::isdigit(static_cast<unsigned char>(name[i])))
                        throw ParseError("unknown identifier '" + name + "'");
                    idx = idx * 10 + (name[i] - '0');
                }
                if (idx < 1 || idx > nvars_)
                    throw ParseError("coordinate '" + name + "' out of range for dimension " +
                                     std::to_string(nvars_));
                auto n = std::make_shared<Node>();
                n->op = Node::Op::variable;
                n->var = idx - 1;
                return n;
            }
            throw ParseError("unknown identifier '" + name + "'");
        }
    };

    NodePtr root_;
    int nvars_ = 0;

    Expr(NodePtr root, int nvars) : root_(std::move(root)), nvars_(nvars) {}

public:
    Expr() : root_(constant(0.0)), nvars_(0) {}

    static Expr parse(const std::string& src, int nvars) {
        return Expr(Parser(src, nvars).parse(), nvars);
    }
    static Expr constant_value(double c, int nvars) { return Expr(constant(c), nvars); }

    int nvars() const { return nvars_; }

    double operator()(const Eigen::VectorXd& x) const { return root_->eval(x); }

    Expr derivative(int axis) const {
        if (axis < 0 || axis >= nvars_) throw BadParameters("derivative axis out of range");
        return Expr(diff(root_, axis), nvars_);
    }

    bool is_zero() const { return is_const(root_, 0.0); }
};

} // namespace framediv
