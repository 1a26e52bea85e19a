#include "ppd/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>
#include <utility>

#include "ppd/errors.hpp"

namespace ppd {

enum class Kind { literal, variable, add, sub, mul, div, pow, neg, sin, cos, exp };

struct Expr::Node {
    Kind kind = Kind::literal;
    double value = 0.0;  // literal
    Var var = Var::x1;   // variable
    int exponent = 0;    // pow
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
    std::size_t position = std::string::npos;
};

using NodePtr = std::shared_ptr<const Expr::Node>;

// Raw node construction (no folding), used by the parser.
class ExprBuilder {
public:
    static Expr wrap(NodePtr n) { return Expr(std::move(n)); }
    static const NodePtr& ptr(const Expr& e) { return e.node_; }

    static NodePtr make(Kind k, NodePtr a = nullptr, NodePtr b = nullptr,
                        std::size_t pos = std::string::npos) {
        auto n = std::make_shared<Expr::Node>();
        n->kind = k;
        n->lhs = std::move(a);
        n->rhs = std::move(b);
        n->position = pos;
        return n;
    }
    static NodePtr literal(double v, std::size_t pos = std::string::npos) {
        auto n = std::make_shared<Expr::Node>();
        n->value = v;
        n->position = pos;
        return n;
    }
    static NodePtr variable(Var v, std::size_t pos = std::string::npos) {
        auto n = std::make_shared<Expr::Node>();
        n->kind = Kind::variable;
        n->var = v;
        n->position = pos;
        return n;
    }
    static NodePtr power(NodePtr base, int exponent, std::size_t pos = std::string::npos) {
        auto n = std::make_shared<Expr::Node>();
        n->kind = Kind::pow;
        n->exponent = exponent;
        n->lhs = std::move(base);
        n->position = pos;
        return n;
    }
};

namespace {

using B = ExprBuilder;

bool is_lit(const NodePtr& n) { return n->kind == Kind::literal; }
bool is_lit(const NodePtr& n, double v) { return is_lit(n) && n->value == v; }

// Folding constructors used by differentiate() and the public operators.
NodePtr fold_add(NodePtr a, NodePtr b) {
    if (is_lit(a) && is_lit(b)) return B::literal(a->value + b->value);
    if (is_lit(a, 0.0)) return b;
    if (is_lit(b, 0.0)) return a;
    return B::make(Kind::add, std::move(a), std::move(b));
}

NodePtr fold_neg(NodePtr a) {
    if (is_lit(a)) return B::literal(-a->value);
    if (a->kind == Kind::neg) return a->lhs;
    return B::make(Kind::neg, std::move(a));
}

NodePtr fold_sub(NodePtr a, NodePtr b) {
    if (is_lit(a) && is_lit(b)) return B::literal(a->value - b->value);
    if (is_lit(b, 0.0)) return a;
    if (is_lit(a, 0.0)) return fold_neg(std::move(b));
    return B::make(Kind::sub, std::move(a), std::move(b));
}

NodePtr fold_mul(NodePtr a, NodePtr b) {
    if (is_lit(a) && is_lit(b)) return B::literal(a->value * b->value);
    if (is_lit(a, 0.0) || is_lit(b, 0.0)) return B::literal(0.0);
    if (is_lit(a, 1.0)) return b;
    if (is_lit(b, 1.0)) return a;
    return B::make(Kind::mul, std::move(a), std::move(b));
}

NodePtr fold_div(NodePtr a, NodePtr b, std::size_t pos) {
    if (is_lit(a) && is_lit(b) && b->value != 0.0) return B::literal(a->value / b->value);
    if (is_lit(a, 0.0) && !is_lit(b, 0.0)) return B::literal(0.0);
    if (is_lit(b, 1.0)) return a;
    return B::make(Kind::div, std::move(a), std::move(b), pos);
}

NodePtr fold_pow(NodePtr base, int n) {
    if (n == 0) return B::literal(1.0);
    if (n == 1) return base;
    if (is_lit(base)) return B::literal(std::pow(base->value, n));
    return B::power(std::move(base), n);
}

NodePtr fold_fn(Kind k, NodePtr a) {
    if (is_lit(a)) {
        switch (k) {
            case Kind::sin: return B::literal(std::sin(a->value));
            case Kind::cos: return B::literal(std::cos(a->value));
            case Kind::exp: return B::literal(std::exp(a->value));
            default: break;
        }
    }
    return B::make(k, std::move(a));
}

double eval_node(const Expr::Node& n, double x1, double x2) {
    switch (n.kind) {
        case Kind::literal: return n.value;
        case Kind::variable: return n.var == Var::x1 ? x1 : x2;
        case Kind::add: return eval_node(*n.lhs, x1, x2) + eval_node(*n.rhs, x1, x2);
        case Kind::sub: return eval_node(*n.lhs, x1, x2) - eval_node(*n.rhs, x1, x2);
        case Kind::mul: return eval_node(*n.lhs, x1, x2) * eval_node(*n.rhs, x1, x2);
        case Kind::div: {
            const double den = eval_node(*n.rhs, x1, x2);
            if (den == 0.0) {
                std::string where = n.position == std::string::npos
                                        ? std::string("derived node")
                                        : "offset " + std::to_string(n.position);
                throw EvalDomainError("division by zero (" + where + ")", n.position);
            }
            return eval_node(*n.lhs, x1, x2) / den;
        }
        case Kind::pow: return std::pow(eval_node(*n.lhs, x1, x2), n.exponent);
        case Kind::neg: return -eval_node(*n.lhs, x1, x2);
        case Kind::sin: return std::sin(eval_node(*n.lhs, x1, x2));
        case Kind::cos: return std::cos(eval_node(*n.lhs, x1, x2));
        case Kind::exp: return std::exp(eval_node(*n.lhs, x1, x2));
    }
    return std::numeric_limits<double>::quiet_NaN();
}

NodePtr diff_node(const NodePtr& n, Var v) {
    switch (n->kind) {
        case Kind::literal: return B::literal(0.0);
        case Kind::variable: return B::literal(n->var == v ? 1.0 : 0.0);
        case Kind::add: return fold_add(diff_node(n->lhs, v), diff_node(n->rhs, v));
        case Kind::sub: return fold_sub(diff_node(n->lhs, v), diff_node(n->rhs, v));
        case Kind::mul:
            return fold_add(fold_mul(diff_node(n->lhs, v), n->rhs),
                            fold_mul(n->lhs, diff_node(n->rhs, v)));
        case Kind::div: {
            // (f/g)' = (f'g - fg') / g^2
            NodePtr num = fold_sub(fold_mul(diff_node(n->lhs, v), n->rhs),
                                   fold_mul(n->lhs, diff_node(n->rhs, v)));
            return fold_div(num, fold_pow(n->rhs, 2), n->position);
        }
        case Kind::pow:
            return fold_mul(fold_mul(B::literal(static_cast<double>(n->exponent)),
                                     fold_pow(n->lhs, n->exponent - 1)),
                            diff_node(n->lhs, v));
        case Kind::neg: return fold_neg(diff_node(n->lhs, v));
        case Kind::sin: return fold_mul(fold_fn(Kind::cos, n->lhs), diff_node(n->lhs, v));
        case Kind::cos:
            return fold_neg(fold_mul(fold_fn(Kind::sin, n->lhs), diff_node(n->lhs, v)));
        case Kind::exp: return fold_mul(n, diff_node(n->lhs, v));
    }
    return B::literal(0.0);
}

std::string format_literal(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", std::abs(v));
    std::string s(buf);
    if (std::signbit(v)) return "(-" + s + ")";
    return s;
}

void render(const Expr::Node& n, std::string& out) {
    auto binary = [&](const char* op) {
        out += '(';
        render(*n.lhs, out);
        out += op;
        render(*n.rhs, out);
        out += ')';
    };
    auto call = [&](const char* name) {
        out += name;
        out += '(';
        render(*n.lhs, out);
        out += ')';
    };
    switch (n.kind) {
        case Kind::literal: out += format_literal(n.value); break;
        case Kind::variable: out += n.var == Var::x1 ? "x1" : "x2"; break;
        case Kind::add: binary("+"); break;
        case Kind::sub: binary("-"); break;
        case Kind::mul: binary("*"); break;
        case Kind::div: binary("/"); break;
        case Kind::pow:
            out += '(';
            render(*n.lhs, out);
            out += '^' + std::to_string(n.exponent) + ')';
            break;
        case Kind::neg:
            out += "(-";
            render(*n.lhs, out);
            out += ')';
            break;
        case Kind::sin: call("sin"); break;
        case Kind::cos: call("cos"); break;
        case Kind::exp: call("exp"); break;
    }
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse_all() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
        throw ParseError(msg, at);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            skip_ws();
            const std::size_t at = pos_;
            if (accept('+')) lhs = B::make(Kind::add, lhs, term(), at);
            else if (accept('-')) lhs = B::make(Kind::sub, lhs, term(), at);
            else return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            skip_ws();
            const std::size_t at = pos_;
            if (accept('*')) lhs = B::make(Kind::mul, lhs, unary(), at);
            else if (accept('/')) lhs = B::make(Kind::div, lhs, unary(), at);
            else return lhs;
        }
    }

    NodePtr unary() {
        skip_ws();
        const std::size_t at = pos_;
        if (accept('-')) return B::make(Kind::neg, unary(), nullptr, at);
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        for (;;) {
            skip_ws();
            const std::size_t at = pos_;
            if (!accept('^')) return base;
            base = B::power(base, exponent(), at);
        }
    }

    int exponent() {
        skip_ws();
        const std::size_t at = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') fail("negative exponent");
        if (pos_ >= text_.size() || !(std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            fail("exponent must be a non-negative integer literal");
        const double v = number_value();
        if (v != std::floor(v) || v > 1000.0) fail_at("non-integer exponent", at);
        return static_cast<int>(v);
    }

    double number_value() {
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        };
        digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ == start + 1 && text_[start] == '.') fail_at("malformed number", start);
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits();
            else pos_ = save;  // 'e' belongs to something else; let the caller reject it
        }
        const std::string token(text_.substr(start, pos_ - start));
        return std::strtod(token.c_str(), nullptr);
    }

    NodePtr primary() {
        skip_ws();
        const std::size_t at = pos_;
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return B::literal(number_value(), at);
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const std::string_view name = text_.substr(at, pos_ - at);
            if (name == "x1") return B::variable(Var::x1, at);
            if (name == "x2") return B::variable(Var::x2, at);
            Kind k;
            if (name == "sin") k = Kind::sin;
            else if (name == "cos") k = Kind::cos;
            else if (name == "exp") k = Kind::exp;
            else fail_at("unknown identifier '" + std::string(name) + "'", at);
            if (!accept('(')) fail("expected '(' after function name");
            NodePtr arg = expr();
            if (!accept(')')) fail("expected ')'");
            return B::make(k, arg, nullptr, at);
        }
        if (accept('(')) {
            NodePtr inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        fail("expected operand");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr::Expr() : node_(B::literal(0.0)) {}

Expr Expr::literal(double value) { return Expr(B::literal(value)); }
Expr Expr::variable(Var v) { return Expr(B::variable(v)); }

double Expr::eval(double x1, double x2) const { return eval_node(*node_, x1, x2); }

std::string Expr::to_string() const {
    std::string out;
    render(*node_, out);
    return out;
}

bool Expr::is_literal() const noexcept { return node_->kind == Kind::literal; }
double Expr::literal_value() const noexcept { return node_->value; }

Expr operator+(const Expr& a, const Expr& b) { return Expr(fold_add(a.node_, b.node_)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(fold_sub(a.node_, b.node_)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(fold_mul(a.node_, b.node_)); }
Expr operator/(const Expr& a, const Expr& b) {
    return Expr(fold_div(a.node_, b.node_, std::string::npos));
}
Expr operator-(const Expr& a) { return Expr(fold_neg(a.node_)); }
Expr pow(const Expr& base, int exponent) {
    if (exponent < 0) throw InvalidArgument("negative exponent");
    return Expr(fold_pow(base.node_, exponent));
}
Expr sin(const Expr& a) { return Expr(fold_fn(Kind::sin, a.node_)); }
Expr cos(const Expr& a) { return Expr(fold_fn(Kind::cos, a.node_)); }
Expr exp(const Expr& a) { return Expr(fold_fn(Kind::exp, a.node_)); }

Expr parse(std::string_view text) { return B::wrap(Parser(text).parse_all()); }

double eval(const Expr& e, double x1, double x2) { return e.eval(x1, x2); }

Expr differentiate(const Expr& e, Var var) { return B::wrap(diff_node(B::ptr(e), var)); }

Expr differentiate(const Expr& e, int k1, int k2) {
    if (k1 < 0 || k2 < 0) throw InvalidArgument("derivative order must be non-negative");
    Expr out = e;
    for (int k = 0; k < k1; ++k) out = differentiate(out, Var::x1);
    for (int k = 0; k < k2; ++k) out = differentiate(out, Var::x2);
    return out;
}

}  // namespace ppd
