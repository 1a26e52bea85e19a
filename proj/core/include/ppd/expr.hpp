#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace ppd {

enum class Var { x1, x2 };

/// Immutable arithmetic expression in x1, x2.
///
/// Grammar (whitespace ignored):
///
///     expr    := term   (('+' | '-') term)*
///     term    := unary  (('*' | '/') unary)*
///     unary   := '-' unary | power
///     power   := primary ('^' INTEGER)*
///     primary := NUMBER | 'x1' | 'x2' | FUNC '(' expr ')' | '(' expr ')'
///     FUNC    := 'sin' | 'cos' | 'exp'
///
/// Exponents are non-negative integer literals; chained powers fold left,
/// so x1^2^3 is (x1^2)^3. Nodes are shared, so copies are cheap.
class Expr {
public:
    struct Node;

    Expr();  // the literal 0

    static Expr literal(double value);
    static Expr variable(Var v);

    double eval(double x1, double x2) const;

    /// Fully parenthesized rendering; re-parses to an equivalent tree.
    std::string to_string() const;

    bool is_literal() const noexcept;
    /// Literal value; only meaningful when is_literal().
    double literal_value() const noexcept;

    const Node& node() const noexcept { return *node_; }

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);
    friend Expr pow(const Expr& base, int exponent);
    friend Expr sin(const Expr& a);
    friend Expr cos(const Expr& a);
    friend Expr exp(const Expr& a);

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    friend class ExprBuilder;

    std::shared_ptr<const Node> node_;
};

/// Throws ParseError carrying a 0-based character offset.
Expr parse(std::string_view text);

/// Throws EvalDomainError on division by zero.
double eval(const Expr& e, double x1, double x2);

/// Symbolic partial derivative. Only constant folding and 0/1 identities are
/// applied to the result.
Expr differentiate(const Expr& e, Var var);

/// D1^k1 D2^k2 e.
Expr differentiate(const Expr& e, int k1, int k2);

}  // namespace ppd
