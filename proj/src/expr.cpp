#include "resonance/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace resonance::expr {

ParseError::ParseError(const std::string& msg, std::size_t off)
    : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off) {}

EvalError::EvalError(const std::string& msg, std::string sub)
    : std::runtime_error(msg + " in '" + sub + "'"), subexpr(std::move(sub)) {}

namespace detail {

enum class Kind { Constant, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };
enum class Fn { Sin, Cos, Tan, Atan, Exp, Ln, Sqrt, Abs, Tanh, Sign };

struct Node {
    Kind kind;
    double value = 0.0;      // Constant
    int slot = -1;           // Variable index into the declared list
    std::string name;        // Variable name
    Fn fn = Fn::Sin;         // Call
    std::shared_ptr<const Node> a, b;
};

using P = std::shared_ptr<const Node>;

P constant(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->value = v;
    return n;
}

bool is_const(const P& n, double v) {
    return n->kind == Kind::Constant && n->value == v;
}

P variable(int slot, std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    n->slot = slot;
    n->name = std::move(name);
    return n;
}

P binary(Kind k, P a, P b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

P negate(P a) {
    if (a->kind == Kind::Constant) return constant(-a->value);
    auto n = std::make_shared<Node>();
    n->kind = Kind::Negate;
    n->a = std::move(a);
    return n;
}

// Smart constructors with constant folding.
P add(P a, P b) {
    if (a->kind == Kind::Constant && b->kind == Kind::Constant) return constant(a->value + b->value);
    if (is_const(a, 0)) return b;
    if (is_const(b, 0)) return a;
    return binary(Kind::Add, std::move(a), std::move(b));
}

P sub(P a, P b) {
    if (a->kind == Kind::Constant && b->kind == Kind::Constant) return constant(a->value - b->value);
    if (is_const(b, 0)) return a;
    if (is_const(a, 0)) return negate(std::move(b));
    return binary(Kind::Sub, std::move(a), std::move(b));
}

P mul(P a, P b) {
    if (a->kind == Kind::Constant && b->kind == Kind::Constant) return constant(a->value * b->value);
    if (is_const(a, 0) || is_const(b, 0)) return constant(0);
    if (is_const(a, 1)) return b;
    if (is_const(b, 1)) return a;
    return binary(Kind::Mul, std::move(a), std::move(b));
}

P div(P a, P b) {
    if (is_const(a, 0) && !is_const(b, 0)) return constant(0);
    if (is_const(b, 1)) return a;
    if (a->kind == Kind::Constant && b->kind == Kind::Constant && b->value != 0)
        return constant(a->value / b->value);
    return binary(Kind::Div, std::move(a), std::move(b));
}

P pow_(P a, P b) {
    if (is_const(b, 1)) return a;
    if (is_const(b, 0)) return constant(1);
    return binary(Kind::Pow, std::move(a), std::move(b));
}

P call(Fn f, P a) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Call;
    n->fn = f;
    n->a = std::move(a);
    return n;
}

const char* fn_name(Fn f) {
    switch (f) {
        case Fn::Sin: return "sin";
        case Fn::Cos: return "cos";
        case Fn::Tan: return "tan";
        case Fn::Atan: return "atan";
        case Fn::Exp: return "exp";
        case Fn::Ln: return "ln";
        case Fn::Sqrt: return "sqrt";
        case Fn::Abs: return "abs";
        case Fn::Tanh: return "tanh";
        case Fn::Sign: return "sign";
    }
    return "?";
}

void print(const Node* n, std::ostream& os) {
    switch (n->kind) {
        case Kind::Constant: {
            std::ostringstream tmp;
            tmp.precision(17);
            tmp << n->value;
            os << tmp.str();
            break;
        }
        case Kind::Variable: os << n->name; break;
        case Kind::Negate:
            os << "(-";
            print(n->a.get(), os);
            os << ")";
            break;
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div:
        case Kind::Pow: {
            const char* op = n->kind == Kind::Add   ? "+"
                             : n->kind == Kind::Sub ? "-"
                             : n->kind == Kind::Mul ? "*"
                             : n->kind == Kind::Div ? "/"
                                                    : "^";
            os << "(";
            print(n->a.get(), os);
            os << op;
            print(n->b.get(), os);
            os << ")";
            break;
        }
        case Kind::Call:
            os << fn_name(n->fn) << "(";
            print(n->a.get(), os);
            os << ")";
            break;
    }
}

std::string to_string(const Node* n) {
    std::ostringstream os;
    print(n, os);
    return os.str();
}

double eval_node(const Node* n, std::span<const double> v) {
    switch (n->kind) {
        case Kind::Constant: return n->value;
        case Kind::Variable: return v[static_cast<std::size_t>(n->slot)];
        case Kind::Negate: return -eval_node(n->a.get(), v);
        case Kind::Add: return eval_node(n->a.get(), v) + eval_node(n->b.get(), v);
        case Kind::Sub: return eval_node(n->a.get(), v) - eval_node(n->b.get(), v);
        case Kind::Mul: return eval_node(n->a.get(), v) * eval_node(n->b.get(), v);
        case Kind::Div: {
            double den = eval_node(n->b.get(), v);
            if (den == 0.0) throw EvalError("division by zero", to_string(n));
            return eval_node(n->a.get(), v) / den;
        }
        case Kind::Pow: {
            double base = eval_node(n->a.get(), v);
            double ex = eval_node(n->b.get(), v);
            double r = std::pow(base, ex);
            if (!std::isfinite(r)) throw EvalError("power out of domain", to_string(n));
            return r;
        }
        case Kind::Call: {
            double x = eval_node(n->a.get(), v);
            switch (n->fn) {
                case Fn::Sin: return std::sin(x);
                case Fn::Cos: return std::cos(x);
                case Fn::Tan: return std::tan(x);
                case Fn::Atan: return std::atan(x);
                case Fn::Exp: return std::exp(x);
                case Fn::Ln:
                    if (x <= 0.0) throw EvalError("ln of non-positive value", to_string(n));
                    return std::log(x);
                case Fn::Sqrt:
                    if (x < 0.0) throw EvalError("sqrt of negative value", to_string(n));
                    return std::sqrt(x);
                case Fn::Abs: return std::fabs(x);
                case Fn::Tanh: return std::tanh(x);
                case Fn::Sign: return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0);
            }
        }
    }
    throw EvalError("corrupt expression node", "?");
}

P diff_node(const P& n, int slot);

P diff_call(const P& n, int slot) {
    P u = n->a;
    P du = diff_node(u, slot);
    switch (n->fn) {
        case Fn::Sin: return mul(call(Fn::Cos, u), du);
        case Fn::Cos: return negate(mul(call(Fn::Sin, u), du));
        case Fn::Tan: return div(du, pow_(call(Fn::Cos, u), constant(2)));
        case Fn::Atan: return div(du, add(constant(1), mul(u, u)));
        case Fn::Exp: return mul(call(Fn::Exp, u), du);
        case Fn::Ln: return div(du, u);
        case Fn::Sqrt: return div(du, mul(constant(2), call(Fn::Sqrt, u)));
        case Fn::Abs: return mul(call(Fn::Sign, u), du);
        case Fn::Tanh: return mul(sub(constant(1), pow_(call(Fn::Tanh, u), constant(2))), du);
        case Fn::Sign: return constant(0);
    }
    return constant(0);
}

P diff_node(const P& n, int slot) {
    switch (n->kind) {
        case Kind::Constant: return constant(0);
        case Kind::Variable: return constant(n->slot == slot ? 1.0 : 0.0);
        case Kind::Negate: return negate(diff_node(n->a, slot));
        case Kind::Add: return add(diff_node(n->a, slot), diff_node(n->b, slot));
        case Kind::Sub: return sub(diff_node(n->a, slot), diff_node(n->b, slot));
        case Kind::Mul:
            return add(mul(diff_node(n->a, slot), n->b), mul(n->a, diff_node(n->b, slot)));
        case Kind::Div:
            return div(sub(mul(diff_node(n->a, slot), n->b), mul(n->a, diff_node(n->b, slot))),
                       mul(n->b, n->b));
        case Kind::Pow: {
            P da = diff_node(n->a, slot);
            P db = diff_node(n->b, slot);
            if (n->b->kind == Kind::Constant) {
                // d a^c = c a^(c-1) a'
                return mul(mul(n->b, pow_(n->a, constant(n->b->value - 1))), da);
            }
            // General: a^b (b' ln a + b a'/a)
            return mul(pow_(n->a, n->b),
                       add(mul(db, call(Fn::Ln, n->a)), div(mul(n->b, da), n->a)));
        }
        case Kind::Call: return diff_call(n, slot);
    }
    return constant(0);
}

bool depends(const Node* n, int slot) {
    if (!n) return false;
    if (n->kind == Kind::Variable) return n->slot == slot;
    return depends(n->a.get(), slot) || depends(n->b.get(), slot);
}

// ---------------------------------------------------------------- parser

struct Parser {
    std::string_view src;
    std::size_t pos = 0;
    const std::vector<std::string>& vars;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    P parse_expr() {
        P lhs = parse_term();
        for (;;) {
            if (eat('+'))
                lhs = binary(Kind::Add, lhs, parse_term());
            else if (eat('-'))
                lhs = binary(Kind::Sub, lhs, parse_term());
            else
                return lhs;
        }
    }

    P parse_term() {
        P lhs = parse_unary();
        for (;;) {
            if (eat('*'))
                lhs = binary(Kind::Mul, lhs, parse_unary());
            else if (eat('/'))
                lhs = binary(Kind::Div, lhs, parse_unary());
            else
                return lhs;
        }
    }

    P parse_unary() {
        if (eat('-')) return negate(parse_unary());
        if (eat('+')) return parse_unary();
        return parse_power();
    }

    P parse_power() {
        P base = parse_primary();
        if (eat('^')) return binary(Kind::Pow, base, parse_unary());
        return base;
    }

    P parse_primary() {
        skip_ws();
        if (pos >= src.size()) throw ParseError("unexpected end of expression", pos);
        char c = src[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        if (c == '(') {
            ++pos;
            P e = parse_expr();
            if (!eat(')')) throw ParseError("expected ')'", pos);
            return e;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }

    P parse_number() {
        const char* begin = src.data() + pos;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) throw ParseError("malformed number", pos);
        pos += static_cast<std::size_t>(end - begin);
        return constant(v);
    }

    P parse_ident() {
        std::size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        std::string name(src.substr(start, pos - start));
        if (peek() == '(') {
            ++pos;  // consume '('
            static const std::pair<const char*, Fn> table[] = {
                {"sin", Fn::Sin},   {"cos", Fn::Cos}, {"tan", Fn::Tan},
                {"atan", Fn::Atan}, {"exp", Fn::Exp}, {"ln", Fn::Ln},
                {"log", Fn::Ln},    {"sqrt", Fn::Sqrt}, {"abs", Fn::Abs},
                {"tanh", Fn::Tanh}, {"sign", Fn::Sign}};
            for (auto& [fname, f] : table) {
                if (name == fname) {
                    P arg = parse_expr();
                    if (!eat(')')) throw ParseError("expected ')'", pos);
                    return call(f, arg);
                }
            }
            throw ParseError("unknown function '" + name + "'", start);
        }
        if (name == "pi") return constant(M_PI);
        if (name == "e") return constant(M_E);
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return variable(static_cast<int>(i), name);
        throw ParseError("unknown identifier '" + name + "'", start);
    }
};

}  // namespace detail

Expression parse(std::string_view src, std::vector<std::string> variables) {
    detail::Parser p{src, 0, variables};
    detail::P root = p.parse_expr();
    p.skip_ws();
    if (p.pos != src.size()) throw ParseError("trailing input", p.pos);
    Expression e;
    e.root_ = std::move(root);
    e.vars_ = std::move(variables);
    return e;
}

double Expression::eval(std::span<const double> values) const {
    if (!root_) throw EvalError("empty expression", "");
    if (values.size() < vars_.size()) throw EvalError("missing variable bindings", str());
    return detail::eval_node(root_.get(), values);
}

double Expression::eval(const std::map<std::string, double>& bindings) const {
    std::vector<double> v(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = bindings.find(vars_[i]);
        if (it == bindings.end()) throw EvalError("unbound variable " + vars_[i], str());
        v[i] = it->second;
    }
    return eval(v);
}

Expression Expression::derivative(const std::string& var) const {
    int slot = -1;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == var) slot = static_cast<int>(i);
    if (slot < 0) throw std::invalid_argument("derivative: unknown variable " + var);
    Expression e;
    e.root_ = detail::diff_node(root_, slot);
    e.vars_ = vars_;
    return e;
}

std::string Expression::str() const {
    return root_ ? detail::to_string(root_.get()) : std::string();
}

bool Expression::depends_on(const std::string& var) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == var) return detail::depends(root_.get(), static_cast<int>(i));
    return false;
}

}  // namespace resonance::expr
