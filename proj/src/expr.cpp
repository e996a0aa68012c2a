#include "phi_ineq/expr.hpp"

#include "phi_ineq/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace phi_ineq {

struct Expr::Node {
    enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Exp, Ln };
    Op op = Op::Const;
    double value = 0.0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;
using Op = Node::Op;

NodePtr leaf(double v)
{
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->value = v;
    return n;
}

NodePtr var()
{
    auto n = std::make_shared<Node>();
    n->op = Op::Var;
    return n;
}

bool is_const(const NodePtr& n, double v) { return n->op == Op::Const && n->value == v; }

double eval(const Node& n, double t);

NodePtr node(Op op, NodePtr l, NodePtr r = nullptr)
{
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    // fold constant subtrees
    const bool l_const = !n->lhs || n->lhs->op == Op::Const;
    const bool r_const = !n->rhs || n->rhs->op == Op::Const;
    if (l_const && r_const) return leaf(eval(*n, 0.0));
    return n;
}

NodePtr add(NodePtr l, NodePtr r)
{
    if (is_const(l, 0.0)) return r;
    if (is_const(r, 0.0)) return l;
    return node(Op::Add, std::move(l), std::move(r));
}

NodePtr neg(NodePtr a)
{
    if (a->op == Op::Neg) return a->lhs;
    return node(Op::Neg, std::move(a));
}

NodePtr sub(NodePtr l, NodePtr r)
{
    if (is_const(r, 0.0)) return l;
    if (is_const(l, 0.0)) return neg(std::move(r));
    return node(Op::Sub, std::move(l), std::move(r));
}

NodePtr mul(NodePtr l, NodePtr r)
{
    if (is_const(l, 0.0) || is_const(r, 0.0)) return leaf(0.0);
    if (is_const(l, 1.0)) return r;
    if (is_const(r, 1.0)) return l;
    return node(Op::Mul, std::move(l), std::move(r));
}

NodePtr div(NodePtr l, NodePtr r)
{
    if (is_const(l, 0.0)) return leaf(0.0);
    if (is_const(r, 1.0)) return l;
    return node(Op::Div, std::move(l), std::move(r));
}

NodePtr pow_const(NodePtr base, double exponent)
{
    if (exponent == 0.0) return leaf(1.0);
    if (exponent == 1.0) return base;
    return node(Op::Pow, std::move(base), leaf(exponent));
}

double eval(const Node& n, double t)
{
    switch (n.op) {
    case Op::Const:
        return n.value;
    case Op::Var:
        return t;
    case Op::Add:
        return eval(*n.lhs, t) + eval(*n.rhs, t);
    case Op::Sub:
        return eval(*n.lhs, t) - eval(*n.rhs, t);
    case Op::Mul:
        return eval(*n.lhs, t) * eval(*n.rhs, t);
    case Op::Div:
        return eval(*n.lhs, t) / eval(*n.rhs, t);
    case Op::Neg:
        return -eval(*n.lhs, t);
    case Op::Pow:
        return std::pow(eval(*n.lhs, t), n.rhs->value);
    case Op::Exp:
        return std::exp(eval(*n.lhs, t));
    case Op::Ln:
        return std::log(eval(*n.lhs, t));
    }
    return 0.0;
}

bool has_var(const Node& n)
{
    if (n.op == Op::Var) return true;
    return (n.lhs && has_var(*n.lhs)) || (n.rhs && has_var(*n.rhs));
}

NodePtr differentiate(const NodePtr& n)
{
    switch (n->op) {
    case Op::Const:
        return leaf(0.0);
    case Op::Var:
        return leaf(1.0);
    case Op::Add:
        return add(differentiate(n->lhs), differentiate(n->rhs));
    case Op::Sub:
        return sub(differentiate(n->lhs), differentiate(n->rhs));
    case Op::Neg:
        return neg(differentiate(n->lhs));
    case Op::Mul:
        return add(mul(differentiate(n->lhs), n->rhs), mul(n->lhs, differentiate(n->rhs)));
    case Op::Div: {
        if (!has_var(*n->rhs)) return div(differentiate(n->lhs), n->rhs);
        const NodePtr top = sub(mul(differentiate(n->lhs), n->rhs), mul(n->lhs, differentiate(n->rhs)));
        return div(top, pow_const(n->rhs, 2.0));
    }
    case Op::Pow: {
        const double k = n->rhs->value;
        return mul(mul(leaf(k), pow_const(n->lhs, k - 1.0)), differentiate(n->lhs));
    }
    case Op::Exp:
        return mul(n, differentiate(n->lhs));
    case Op::Ln:
        return div(differentiate(n->lhs), n->lhs);
    }
    return leaf(0.0);
}

std::string format_number(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string render(const Node& n)
{
    switch (n.op) {
    case Op::Const:
        return format_number(n.value);
    case Op::Var:
        return "t";
    case Op::Add:
        return "(" + render(*n.lhs) + " + " + render(*n.rhs) + ")";
    case Op::Sub:
        return "(" + render(*n.lhs) + " - " + render(*n.rhs) + ")";
    case Op::Mul:
        return "(" + render(*n.lhs) + " * " + render(*n.rhs) + ")";
    case Op::Div:
        return "(" + render(*n.lhs) + " / " + render(*n.rhs) + ")";
    case Op::Neg:
        return "-" + render(*n.lhs);
    case Op::Pow:
        return render(*n.lhs) + "^" + format_number(n.rhs->value);
    case Op::Exp:
        return "exp(" + render(*n.lhs) + ")";
    case Op::Ln:
        return "ln(" + render(*n.lhs) + ")";
    }
    return "?";
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse()
    {
        NodePtr e = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        std::ostringstream os;
        os << "cannot parse expression \"" << text_ << "\" at offset " << pos_ << ": " << what;
        throw UsageError(os.str());
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr()
    {
        NodePtr e = term();
        for (;;) {
            if (accept('+'))
                e = add(e, term());
            else if (accept('-'))
                e = sub(e, term());
            else
                return e;
        }
    }

    NodePtr term()
    {
        NodePtr e = unary();
        for (;;) {
            if (accept('*'))
                e = mul(e, unary());
            else if (accept('/'))
                e = div(e, unary());
            else
                return e;
        }
    }

    NodePtr unary()
    {
        if (accept('-')) return neg(unary());
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power()
    {
        NodePtr base = primary();
        if (accept('^')) {
            const NodePtr exponent = unary();
            if (exponent->op != Op::Const) fail("exponent must be a constant");
            return pow_const(base, exponent->value);
        }
        return base;
    }

    NodePtr primary()
    {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!accept(')')) fail("missing ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double v = 0.0;
            const char* begin = text_.data() + pos_;
            const auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), v);
            if (ec != std::errc()) fail("bad number");
            pos_ += static_cast<std::size_t>(ptr - begin);
            return leaf(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const std::string_view word = text_.substr(start, pos_ - start);
            if (word == "t" || word == "x") return var();
            if (word == "exp" || word == "ln" || word == "sqrt") {
                if (!accept('(')) fail("expected '(' after " + std::string(word));
                NodePtr arg = expr();
                if (!accept(')')) fail("missing ')'");
                if (word == "exp") return node(Op::Exp, arg);
                if (word == "ln") return node(Op::Ln, arg);
                return pow_const(arg, 0.5);
            }
            pos_ = start;
            fail("unknown identifier '" + std::string(word) + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Expr Expr::parse(std::string_view text) { return Expr(Parser(text).parse()); }
Expr Expr::constant(double value) { return Expr(leaf(value)); }
Expr Expr::variable() { return Expr(var()); }
double Expr::operator()(double t) const { return eval(*node_, t); }
Expr Expr::derivative() const { return Expr(differentiate(node_)); }
bool Expr::depends_on_t() const { return has_var(*node_); }
std::string Expr::to_string() const { return render(*node_); }

} // namespace phi_ineq
