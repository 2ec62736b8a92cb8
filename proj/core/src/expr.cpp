#include "invsurf/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

namespace invsurf {

namespace {

// ---- lexer ---------------------------------------------------------------------

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    Tok kind = Tok::End;
    std::size_t offset = 0;
    std::size_t length = 0;
    double number = 0.0;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        tok_ = Token{};
        tok_.offset = pos_;
        if (pos_ >= src_.size()) {
            tok_.kind = Tok::End;
            return;
        }
        const char c = src_[pos_];
        // U+2212 (e2 88 92) counts as minus; copy-pasted display math uses it.
        if (static_cast<unsigned char>(c) == 0xE2 && pos_ + 2 < src_.size() &&
            static_cast<unsigned char>(src_[pos_ + 1]) == 0x88 &&
            static_cast<unsigned char>(src_[pos_ + 2]) == 0x92) {
            tok_.kind = Tok::Minus;
            tok_.length = 3;
            pos_ += 3;
            return;
        }
        switch (c) {
            case '+': single(Tok::Plus); return;
            case '-': single(Tok::Minus); return;
            case '*': single(Tok::Star); return;
            case '/': single(Tok::Slash); return;
            case '^': single(Tok::Caret); return;
            case '(': single(Tok::LParen); return;
            case ')': single(Tok::RParen); return;
            case ',': single(Tok::Comma); return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
                ++end;
            tok_.kind = Tok::Ident;
            tok_.text = std::string(src_.substr(pos_, end - pos_));
            tok_.length = end - pos_;
            pos_ = end;
            return;
        }
        throw SyntaxError("unexpected character '" + std::string(1, c) + "'", pos_);
    }

    void single(Tok k) {
        tok_.kind = k;
        tok_.length = 1;
        ++pos_;
    }

    void lex_number() {
        std::size_t end = pos_;
        bool any_digit = false;
        while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) {
            ++end;
            any_digit = true;
        }
        if (end < src_.size() && src_[end] == '.') {
            ++end;
            while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) {
                ++end;
                any_digit = true;
            }
        }
        if (!any_digit) throw SyntaxError("malformed number", pos_);
        if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
            std::size_t exp = end + 1;
            if (exp < src_.size() && (src_[exp] == '+' || src_[exp] == '-')) ++exp;
            if (exp < src_.size() && std::isdigit(static_cast<unsigned char>(src_[exp]))) {
                ++exp;
                while (exp < src_.size() && std::isdigit(static_cast<unsigned char>(src_[exp]))) ++exp;
                end = exp;
            }
        }
        double value = 0.0;
        const auto res = std::from_chars(src_.data() + pos_, src_.data() + end, value);
        if (res.ec != std::errc{}) throw SyntaxError("malformed number", pos_);
        tok_.kind = Tok::Number;
        tok_.number = value;
        tok_.length = end - pos_;
        pos_ = end;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token tok_;
};

// ---- parser --------------------------------------------------------------------

const std::set<std::string>& function_names() {
    static const std::set<std::string> names = {"sin", "cos", "sqrt", "exp"};
    return names;
}

ExprPtr make_number(double v, std::size_t off) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Number;
    e->number = v;
    e->offset = off;
    return e;
}

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src), size_(src.size()) {}

    std::array<ExprPtr, 3> parse_triple() {
        std::array<ExprPtr, 3> out;
        out[0] = parse_expr();
        for (int i = 1; i < 3; ++i) {
            if (lex_.peek().kind == Tok::End)
                throw ArityError("expected exactly 3 comma-separated expressions");
            expect(Tok::Comma, "expected ','");
            out[i] = parse_expr();
        }
        if (lex_.peek().kind == Tok::Comma)
            throw ArityError("expected exactly 3 comma-separated expressions");
        if (lex_.peek().kind != Tok::End)
            throw SyntaxError("unexpected trailing input", lex_.peek().offset);
        return out;
    }

private:
    ExprPtr parse_expr() {
        ExprPtr left = parse_term();
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            const Token op = lex_.take();
            ExprPtr right = parse_term();
            left = make_binary(op.kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub, left, right,
                               op.offset);
        }
        return left;
    }

    ExprPtr parse_term() {
        ExprPtr left = parse_factor();
        while (lex_.peek().kind == Tok::Star || lex_.peek().kind == Tok::Slash) {
            const Token op = lex_.take();
            ExprPtr right = parse_factor();
            left = make_binary(op.kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div, left, right,
                               op.offset);
        }
        return left;
    }

    ExprPtr parse_factor() {
        if (lex_.peek().kind == Tok::Minus) {
            const Token op = lex_.take();
            ExprPtr child = parse_factor();
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Unary;
            e->uop = UnaryOp::Neg;
            e->offset = op.offset;
            e->children.push_back(std::move(child));
            return e;
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (lex_.peek().kind == Tok::Caret) {
            const Token op = lex_.take();
            ExprPtr exponent = parse_factor(); // right-associative
            return make_pow(base, exponent, op.offset);
        }
        return base;
    }

    ExprPtr parse_atom() {
        const Token t = lex_.peek();
        switch (t.kind) {
            case Tok::Number: {
                lex_.take();
                return make_number(t.number, t.offset);
            }
            case Tok::Ident: {
                lex_.take();
                if (lex_.peek().kind == Tok::LParen) {
                    lex_.take();
                    std::vector<ExprPtr> args;
                    args.push_back(parse_expr());
                    while (lex_.peek().kind == Tok::Comma) {
                        lex_.take();
                        args.push_back(parse_expr());
                    }
                    expect(Tok::RParen, "expected ')'");
                    if (function_names().count(t.text) == 0)
                        throw UnknownIdentifier("unknown function '" + t.text + "'", t.offset);
                    if (args.size() != 1)
                        throw ArityError("function '" + t.text + "' takes exactly 1 argument");
                    auto e = std::make_shared<Expr>();
                    e->kind = Expr::Kind::Call;
                    e->name = t.text;
                    e->offset = t.offset;
                    e->children = std::move(args);
                    return e;
                }
                auto e = std::make_shared<Expr>();
                e->kind = Expr::Kind::Variable;
                e->name = t.text;
                e->offset = t.offset;
                return e;
            }
            case Tok::LParen: {
                lex_.take();
                ExprPtr inner = parse_expr();
                expect(Tok::RParen, "expected ')'");
                return inner;
            }
            case Tok::End:
                throw SyntaxError("unexpected end of input", t.offset);
            default:
                throw SyntaxError("expected a number, identifier or '('", t.offset);
        }
    }

    ExprPtr make_binary(BinaryOp op, ExprPtr l, ExprPtr r, std::size_t off) {
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Binary;
        e->bop = op;
        e->offset = off;
        e->children = {std::move(l), std::move(r)};
        return e;
    }

    ExprPtr make_pow(ExprPtr base, ExprPtr exponent, std::size_t off) {
        // Integer exponents only; the exponent subtree must fold to a constant.
        double value = 0.0;
        if (!fold_constant(*exponent, value))
            throw SyntaxError("'^' exponent must be a constant", exponent->offset);
        const double rounded = std::nearbyint(value);
        if (std::abs(value - rounded) > 1e-9 || std::abs(rounded) > 1e9)
            throw SyntaxError("'^' exponent must be an integer", exponent->offset);
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Binary;
        e->bop = BinaryOp::Pow;
        e->offset = off;
        e->pow_exponent = static_cast<int>(rounded);
        e->children = {std::move(base), std::move(exponent)};
        return e;
    }

    static bool fold_constant(const Expr& e, double& out) {
        switch (e.kind) {
            case Expr::Kind::Number: out = e.number; return true;
            case Expr::Kind::Variable:
                if (e.name == "pi") {
                    out = M_PI;
                    return true;
                }
                return false;
            case Expr::Kind::Unary: {
                double v = 0.0;
                if (!fold_constant(*e.children[0], v)) return false;
                out = -v;
                return true;
            }
            case Expr::Kind::Binary: {
                double l = 0.0, r = 0.0;
                if (!fold_constant(*e.children[0], l) || !fold_constant(*e.children[1], r))
                    return false;
                switch (e.bop) {
                    case BinaryOp::Add: out = l + r; return true;
                    case BinaryOp::Sub: out = l - r; return true;
                    case BinaryOp::Mul: out = l * r; return true;
                    case BinaryOp::Div:
                        if (r == 0.0) return false;
                        out = l / r;
                        return true;
                    case BinaryOp::Pow: out = std::pow(l, r); return true;
                }
                return false;
            }
            case Expr::Kind::Call:
                return false; // keep folding conservative; functions never fold
        }
        return false;
    }

    void expect(Tok k, const char* message) {
        if (lex_.peek().kind != k) throw SyntaxError(message, lex_.peek().offset);
        lex_.take();
    }

    Lexer lex_;
    std::size_t size_;
};

// ---- identifier collection / arity inference -------------------------------------

void collect_variables(const Expr& e, std::set<std::string>& vars) {
    if (e.kind == Expr::Kind::Variable && e.name != "pi") vars.insert(e.name);
    for (const auto& c : e.children) collect_variables(*c, vars);
}

bool subset_of(const std::set<std::string>& vars, std::initializer_list<const char*> allowed) {
    for (const auto& v : vars) {
        bool ok = false;
        for (const char* a : allowed)
            if (v == a) ok = true;
        if (!ok) return false;
    }
    return true;
}

std::size_t first_offending_offset(const Expr& e, const std::set<std::string>& allowed) {
    if (e.kind == Expr::Kind::Variable && e.name != "pi" && allowed.count(e.name) == 0)
        return e.offset;
    for (const auto& c : e.children) {
        const std::size_t off = first_offending_offset(*c, allowed);
        if (off != static_cast<std::size_t>(-1)) return off;
    }
    return static_cast<std::size_t>(-1);
}

// ---- jet evaluation ---------------------------------------------------------------

template <typename Jet>
Jet eval_node(const Expr& e, const std::array<std::string, 2>& params, const Jet* seeds) {
    switch (e.kind) {
        case Expr::Kind::Number:
            return Jet::constant(e.number);
        case Expr::Kind::Variable:
            if (e.name == "pi") return Jet::constant(M_PI);
            if (e.name == params[0]) return seeds[0];
            if (e.name == params[1]) return seeds[1];
            throw UnknownIdentifier("unknown identifier '" + e.name + "'", e.offset);
        case Expr::Kind::Unary: {
            const Jet c = eval_node(*e.children[0], params, seeds);
            return -c;
        }
        case Expr::Kind::Binary: {
            const Jet l = eval_node(*e.children[0], params, seeds);
            if (e.bop == BinaryOp::Pow) {
                try {
                    return pow_int(l, e.pow_exponent);
                } catch (const DivisionByZero&) {
                    throw DivisionByZero("division by zero at offset " + std::to_string(e.offset));
                }
            }
            const Jet r = eval_node(*e.children[1], params, seeds);
            try {
                switch (e.bop) {
                    case BinaryOp::Add: return l + r;
                    case BinaryOp::Sub: return l - r;
                    case BinaryOp::Mul: return l * r;
                    case BinaryOp::Div: return l / r;
                    case BinaryOp::Pow: break;
                }
            } catch (const DivisionByZero&) {
                throw DivisionByZero("division by zero at offset " + std::to_string(e.offset));
            }
            throw SyntaxError("unreachable binary op", e.offset);
        }
        case Expr::Kind::Call: {
            const Jet a = eval_node(*e.children[0], params, seeds);
            try {
                if (e.name == "sin") return sin(a);
                if (e.name == "cos") return cos(a);
                if (e.name == "sqrt") return sqrt(a);
                if (e.name == "exp") return exp(a);
            } catch (const DomainError&) {
                throw DomainError("domain error in '" + e.name + "' at offset " +
                                  std::to_string(e.offset));
            }
            throw UnknownIdentifier("unknown function '" + e.name + "'", e.offset);
        }
    }
    throw SyntaxError("unreachable node kind", e.offset);
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

// ---- public surface ---------------------------------------------------------------

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::Number:
            return a.number == b.number;
        case Expr::Kind::Variable:
            return a.name == b.name;
        case Expr::Kind::Unary:
            return a.uop == b.uop && structurally_equal(*a.children[0], *b.children[0]);
        case Expr::Kind::Binary:
            return a.bop == b.bop && structurally_equal(*a.children[0], *b.children[0]) &&
                   structurally_equal(*a.children[1], *b.children[1]);
        case Expr::Kind::Call:
            if (a.name != b.name || a.children.size() != b.children.size()) return false;
            for (std::size_t i = 0; i < a.children.size(); ++i)
                if (!structurally_equal(*a.children[i], *b.children[i])) return false;
            return true;
    }
    return false;
}

std::string print_expr(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Number:
            return format_number(e.number);
        case Expr::Kind::Variable:
            return e.name;
        case Expr::Kind::Unary:
            return "(-" + print_expr(*e.children[0]) + ")";
        case Expr::Kind::Binary: {
            const char* op = "+";
            switch (e.bop) {
                case BinaryOp::Add: op = "+"; break;
                case BinaryOp::Sub: op = "-"; break;
                case BinaryOp::Mul: op = "*"; break;
                case BinaryOp::Div: op = "/"; break;
                case BinaryOp::Pow: op = "^"; break;
            }
            return "(" + print_expr(*e.children[0]) + " " + op + " " +
                   print_expr(*e.children[1]) + ")";
        }
        case Expr::Kind::Call: {
            std::string out = e.name + "(";
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i) out += ", ";
                out += print_expr(*e.children[i]);
            }
            return out + ")";
        }
    }
    return {};
}

std::string CompiledMap::canonical() const {
    return print_expr(*comps_[0]) + ", " + print_expr(*comps_[1]) + ", " + print_expr(*comps_[2]);
}

SurfaceJet2 CompiledMap::eval_surface(double a, double b) const {
    if (arity_ != 2) throw ArityError("map is not a surface map");
    const ScalarJet2 seeds[2] = {ScalarJet2::var_s(a), ScalarJet2::var_u(b)};
    return SurfaceJet2::from_components(eval_node(*comps_[0], params_, seeds),
                                        eval_node(*comps_[1], params_, seeds),
                                        eval_node(*comps_[2], params_, seeds));
}

CurveJet3 CompiledMap::eval_curve(double t) const {
    if (arity_ != 1) throw ArityError("map is not a curve map");
    const ScalarJet3 seeds[2] = {ScalarJet3::variable(t), ScalarJet3::constant(0.0)};
    return CurveJet3::from_components(eval_node(*comps_[0], params_, seeds),
                                      eval_node(*comps_[1], params_, seeds),
                                      eval_node(*comps_[2], params_, seeds));
}

Vec3 CompiledMap::point(double a, double b) const {
    if (arity_ == 1) return eval_curve(a).p;
    return eval_surface(a, b).p;
}

CompiledMap parse(std::string_view text, MapKind kind) {
    Parser parser(text);
    std::array<ExprPtr, 3> comps = parser.parse_triple();

    std::set<std::string> vars;
    for (const auto& c : comps) collect_variables(*c, vars);

    CompiledMap map;
    map.comps_ = comps;
    map.source_ = std::string(text);

    // Reports the first identifier outside `good` (foreign names and parameter
    // set conflicts both land here).
    auto reject_outside = [&](std::initializer_list<const char*> good, const char* message) {
        std::set<std::string> ok;
        for (const char* g : good) ok.insert(g);
        for (const auto& c : comps) {
            const std::size_t off = first_offending_offset(*c, ok);
            if (off != static_cast<std::size_t>(-1)) throw UnknownIdentifier(message, off);
        }
    };

    switch (kind) {
        case MapKind::Curve:
            if (subset_of(vars, {"t"})) {
                map.params_ = {"t", ""};
            } else if (subset_of(vars, {"s"})) {
                map.params_ = {"s", ""};
            } else {
                reject_outside({"t", "s"}, "unknown identifier (curve parameter is t or s)");
                reject_outside({"t"}, "curve parameter must be t or s, not both");
            }
            map.arity_ = 1;
            return map;
        case MapKind::Surface:
            if (subset_of(vars, {"s", "u"})) {
                map.params_ = {"s", "u"};
            } else if (subset_of(vars, {"u", "v"})) {
                map.params_ = {"u", "v"};
            } else {
                reject_outside({"s", "u", "v"},
                               "unknown identifier (surface parameters are (s,u) or (u,v))");
                reject_outside({"u", "v"}, "surface parameters must be (s,u) or (u,v)");
            }
            map.arity_ = 2;
            return map;
        case MapKind::Auto:
            break;
    }

    if (vars.empty() || subset_of(vars, {"t"})) {
        map.params_ = {"t", ""};
        map.arity_ = 1;
    } else if (subset_of(vars, {"s"})) {
        map.params_ = {"s", ""};
        map.arity_ = 1;
    } else if (subset_of(vars, {"s", "u"})) {
        map.params_ = {"s", "u"};
        map.arity_ = 2;
    } else if (subset_of(vars, {"u", "v"})) {
        map.params_ = {"u", "v"};
        map.arity_ = 2;
    } else {
        reject_outside({"t", "s", "u", "v"},
                       "unknown identifier (parameters are t, s, (s,u) or (u,v))");
        reject_outside({"u", "v"}, "parameters must form t, s, (s,u) or (u,v)");
    }
    return map;
}

} // namespace invsurf
