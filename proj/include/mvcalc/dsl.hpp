#pragma once

#include "curve.hpp"

#include <cctype>
#include <charconv>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

// Text syntax for curves.
//
//   expr    := product (('+' | '-') product)*
//   product := unary (op unary)*      op in  *  /  ^  .  _|  |_
//   unary   := '-' unary | primary
//   primary := number | t | blade | name '(' args ')' | '(' expr ')'
//
// All product operators share one tier and associate left. Mixing two of
// ^ . _| |_ without parentheses is rejected, as is a geometric product
// between two blade-carrying factors next to one of them. Scalar factors
// (anything without a blade label) may be multiplied in freely, since
// every product is bilinear. Blade labels list strictly ascending indices,
// with a, b, c standing for 10, 11, 12.

namespace mvcalc::dsl {

struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;
    bool operator==(const Span&) const = default;
};

/// Rejected input: a span into the source text, a stable code and a message.
class DslError : public std::runtime_error {
public:
    DslError(Span span, std::string code, const std::string& message)
        : std::runtime_error(message), span_(span), code_(std::move(code)) {}

    Span span() const { return span_; }
    const std::string& code() const { return code_; }

private:
    Span span_;
    std::string code_;
};

// ---------------------------------------------------------------------------
// Tokens
// ---------------------------------------------------------------------------

enum class TokenKind { number, blade, variable, function, op, lparen, rparen, comma, end };

struct Token {
    TokenKind kind = TokenKind::end;
    std::string text;
    Span span;
    double number = 0.0;
};

inline bool is_function_name(std::string_view s) {
    return s == "sin" || s == "cos" || s == "exp" || s == "ln" || s == "pow" || s == "poly" || s == "sign" ||
           s == "compose";
}

namespace detail {
inline bool blade_shaped(std::string_view s) {
    if (s.size() < 2 || s[0] != 'e') return false;
    for (char c : s.substr(1))
        if (!(std::isdigit(static_cast<unsigned char>(c)) || (c >= 'a' && c <= 'c'))) return false;
    return true;
}
} // namespace detail

inline std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto digit = [&](std::size_t j) { return j < n && std::isdigit(static_cast<unsigned char>(text[j])); };

    while (i < n) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Token tok;
        std::size_t start = i;
        if (digit(i)) {
            while (digit(i)) ++i;
            if (i < n && text[i] == '.' && digit(i + 1)) {
                ++i;
                while (digit(i)) ++i;
            }
            if (i < n && (text[i] == 'e' || text[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < n && (text[j] == '+' || text[j] == '-')) ++j;
                if (digit(j)) {
                    i = j;
                    while (digit(i)) ++i;
                }
            }
            tok.kind = TokenKind::number;
            auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + i, tok.number);
            if (ec != std::errc{}) throw DslError({start, i}, "lexical", "malformed number");
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            while (i < n && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
            std::string_view word = text.substr(start, i - start);
            if (word == "t")
                tok.kind = TokenKind::variable;
            else if (is_function_name(word))
                tok.kind = TokenKind::function;
            else if (detail::blade_shaped(word))
                tok.kind = TokenKind::blade;
            else
                throw DslError({start, i}, "lexical", "unknown identifier '" + std::string(word) + "'");
        } else if (c == '_' && i + 1 < n && text[i + 1] == '|') {
            i += 2;
            tok.kind = TokenKind::op;
        } else if (c == '|' && i + 1 < n && text[i + 1] == '_') {
            i += 2;
            tok.kind = TokenKind::op;
        } else if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^' || c == '.') {
            ++i;
            tok.kind = TokenKind::op;
        } else if (c == '(') {
            ++i;
            tok.kind = TokenKind::lparen;
        } else if (c == ')') {
            ++i;
            tok.kind = TokenKind::rparen;
        } else if (c == ',') {
            ++i;
            tok.kind = TokenKind::comma;
        } else {
            throw DslError({i, i + 1}, "lexical", std::string("unexpected character '") + c + "'");
        }
        tok.span = {start, i};
        tok.text = std::string(text.substr(start, i - start));
        out.push_back(std::move(tok));
    }
    Token end;
    end.kind = TokenKind::end;
    end.span = {n, n};
    out.push_back(end);
    return out;
}

// ---------------------------------------------------------------------------
// Parse tree
// ---------------------------------------------------------------------------

struct ParseNode {
    enum class Kind { number, variable, blade, neg, binary, call };

    Kind kind = Kind::number;
    Span span;
    double number = 0.0;
    BladeMask blade;
    std::string name;  // operator for binary, function name for call
    std::vector<ParseNode> children;

    /// True when a blade label occurs anywhere below.
    bool carries_blade() const {
        if (kind == Kind::blade) return true;
        for (const auto& c : children)
            if (c.carries_blade()) return true;
        return false;
    }

    bool operator==(const ParseNode&) const = default;
};

struct ParseTree {
    ParseNode root;
    int dim = 0;
    bool operator==(const ParseTree&) const = default;
};

namespace detail {

inline bool is_outer_op(const std::string& op) { return op == "^" || op == "." || op == "_|" || op == "|_"; }
inline bool is_chain_op(const std::string& op) { return op == "*" || op == "/"; }

class Parser {
public:
    Parser(std::string_view text, int dim) : tokens_(tokenize(text)), dim_(dim) {}

    ParseNode parse() {
        ParseNode root = expr();
        if (peek().kind == TokenKind::rparen) throw DslError(peek().span, "unbalanced-parens", "unmatched ')'");
        if (peek().kind != TokenKind::end) throw DslError(peek().span, "unexpected-token", "unexpected '" + peek().text + "'");
        return root;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& take() { return tokens_[pos_++]; }
    bool at_op(std::string_view op) const { return peek().kind == TokenKind::op && peek().text == op; }

    static ParseNode binary(std::string op, ParseNode a, ParseNode b) {
        ParseNode n;
        n.kind = ParseNode::Kind::binary;
        n.name = std::move(op);
        n.span = {a.span.begin, b.span.end};
        n.children.push_back(std::move(a));
        n.children.push_back(std::move(b));
        return n;
    }

    ParseNode expr() {
        ParseNode lhs = product();
        while (at_op("+") || at_op("-")) {
            std::string op = take().text;
            lhs = binary(op, std::move(lhs), product());
        }
        return lhs;
    }

    ParseNode product() {
        std::vector<ParseNode> operands;
        std::vector<Token> ops;
        operands.push_back(unary());
        while (peek().kind == TokenKind::op && (is_chain_op(peek().text) || is_outer_op(peek().text))) {
            ops.push_back(take());
            operands.push_back(unary());
        }
        if (ops.empty()) return std::move(operands.front());

        // Split into * / chains separated by the outer product operators.
        const Token* outer = nullptr;
        for (const auto& op : ops) {
            if (!is_outer_op(op.text)) continue;
            if (outer && outer->text != op.text)
                throw DslError({outer->span.begin, op.span.end}, "mixed-products",
                               "mixed products '" + outer->text + "' and '" + op.text + "' need parentheses");
            outer = &op;
        }

        std::vector<ParseNode> groups;
        std::size_t i = 0;
        while (i < operands.size()) {
            ParseNode acc = std::move(operands[i]);
            int carriers = acc.carries_blade() ? 1 : 0;
            while (i < ops.size() && is_chain_op(ops[i].text)) {
                carriers += operands[i + 1].carries_blade() ? 1 : 0;
                acc = binary(ops[i].text, std::move(acc), std::move(operands[i + 1]));
                ++i;
            }
            if (outer && carriers >= 2)
                throw DslError(acc.span, "mixed-products",
                               "geometric product next to '" + outer->text + "' needs parentheses");
            groups.push_back(std::move(acc));
            ++i;
        }
        ParseNode lhs = std::move(groups.front());
        for (std::size_t g = 1; g < groups.size(); ++g) lhs = binary(outer->text, std::move(lhs), std::move(groups[g]));
        return lhs;
    }

    ParseNode unary() {
        if (at_op("-")) {
            Span s = take().span;
            ParseNode inner = unary();
            ParseNode n;
            n.kind = ParseNode::Kind::neg;
            n.span = {s.begin, inner.span.end};
            n.children.push_back(std::move(inner));
            return n;
        }
        return primary();
    }

    ParseNode primary() {
        const Token& tok = peek();
        ParseNode n;
        n.span = tok.span;
        switch (tok.kind) {
        case TokenKind::number:
            n.kind = ParseNode::Kind::number;
            n.number = take().number;
            return n;
        case TokenKind::variable:
            take();
            n.kind = ParseNode::Kind::variable;
            return n;
        case TokenKind::blade: {
            take();
            n.kind = ParseNode::Kind::blade;
            if (tok.text.find('0') != std::string::npos)
                throw DslError(tok.span, "blade-index", "blade index 0 in '" + tok.text + "'; indices start at 1");
            auto parsed = parse_blade_label(tok.text, dim_);
            if (parsed.error == LabelError::not_ascending)
                throw DslError(tok.span, "blade-order", "blade label '" + tok.text + "' must list strictly ascending indices");
            if (parsed.error == LabelError::index_out_of_range)
                throw DslError(tok.span, "blade-index",
                               "blade '" + tok.text + "' exceeds dimension " + std::to_string(dim_));
            if (parsed.error != LabelError::none) throw DslError(tok.span, "lexical", "malformed blade label '" + tok.text + "'");
            n.blade = parsed.mask;
            return n;
        }
        case TokenKind::function: {
            n.kind = ParseNode::Kind::call;
            n.name = take().text;
            if (peek().kind != TokenKind::lparen)
                throw DslError(peek().span, "unexpected-token", "expected '(' after " + n.name);
            Span open = take().span;
            n.children.push_back(expr());
            while (peek().kind == TokenKind::comma) {
                take();
                n.children.push_back(expr());
            }
            if (peek().kind != TokenKind::rparen) {
                if (peek().kind == TokenKind::end) throw DslError(open, "unbalanced-parens", "unclosed '('");
                throw DslError(peek().span, "unexpected-token", "expected ')' or ','");
            }
            n.span.end = take().span.end;
            return n;
        }
        case TokenKind::lparen: {
            Span open = take().span;
            ParseNode inner = expr();
            if (peek().kind != TokenKind::rparen) {
                if (peek().kind == TokenKind::end) throw DslError(open, "unbalanced-parens", "unclosed '('");
                throw DslError(peek().span, "unexpected-token", "expected ')'");
            }
            take();
            return inner;
        }
        case TokenKind::rparen: throw DslError(tok.span, "unbalanced-parens", "unmatched ')'");
        case TokenKind::end: throw DslError(tok.span, "unexpected-token", "unexpected end of input");
        default: throw DslError(tok.span, "unexpected-token", "unexpected '" + tok.text + "'");
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int dim_;
};

} // namespace detail

inline ParseTree parse(std::string_view text, int dim) {
    if (!valid_dim(dim)) throw std::invalid_argument("dimension must be in 1..12, got " + std::to_string(dim));
    return {detail::Parser(text, dim).parse(), dim};
}

// ---------------------------------------------------------------------------
// Lowering
// ---------------------------------------------------------------------------

namespace detail {

using Lowered = std::variant<ScalarFn, Curve>;

class Lowerer {
public:
    explicit Lowerer(int dim) : dim_(dim) {}

    Curve as_curve(const Lowered& v) const {
        if (auto s = std::get_if<ScalarFn>(&v)) return Curve::scalar_times_blade(dim_, *s, BladeMask{});
        return std::get<Curve>(v);
    }

    Lowered lower(const ParseNode& n) const {
        using K = ParseNode::Kind;
        switch (n.kind) {
        case K::number: return ScalarFn::constant(n.number);
        case K::variable: return ScalarFn::variable();
        case K::blade: return Curve::scalar_times_blade(dim_, ScalarFn::constant(1.0), n.blade);
        case K::neg: {
            const ParseNode& c = n.children[0];
            if (c.kind == K::number) return ScalarFn::constant(-c.number);
            Lowered inner = lower(c);
            if (auto s = std::get_if<ScalarFn>(&inner)) return -*s;
            return Curve::scalar_scale(ScalarFn::constant(-1.0), std::get<Curve>(inner));
        }
        case K::binary: return lower_binary(n);
        case K::call: return lower_call(n);
        }
        throw std::logic_error("unknown parse node");
    }

private:
    // Scalar times curve; a bare blade label becomes a scaled blade leaf.
    Curve scaled(const ScalarFn& s, const ParseNode& curve_node, const Curve& c) const {
        if (curve_node.kind == ParseNode::Kind::blade) return Curve::scalar_times_blade(dim_, s, curve_node.blade);
        return Curve::scalar_scale(s, c);
    }

    Lowered lower_binary(const ParseNode& n) const {
        const ParseNode& ln = n.children[0];
        const ParseNode& rn = n.children[1];
        Lowered a = lower(ln);
        Lowered b = lower(rn);
        const ScalarFn* sa = std::get_if<ScalarFn>(&a);
        const ScalarFn* sb = std::get_if<ScalarFn>(&b);
        const std::string& op = n.name;

        if (op == "+") {
            if (sa && sb) return *sa + *sb;
            return Curve::sum(as_curve(a), as_curve(b));
        }
        if (op == "-") {
            if (sa && sb) return *sa - *sb;
            return Curve::sum(as_curve(a), Curve::scalar_scale(ScalarFn::constant(-1.0), as_curve(b)));
        }
        if (op == "*") {
            if (sa && sb) return *sa * *sb;
            if (sa) return scaled(*sa, rn, std::get<Curve>(b));
            if (sb) return scaled(*sb, ln, std::get<Curve>(a));
            return Curve::product(Star::geometric, std::get<Curve>(a), std::get<Curve>(b));
        }
        if (op == "/") {
            if (!sb) throw DslError(rn.span, "type", "cannot divide by a multivector");
            if (sa) return *sa / *sb;
            return scaled(ScalarFn::constant(1.0) / *sb, ln, std::get<Curve>(a));
        }
        Star star = op == "^" ? Star::wedge : op == "." ? Star::scalar : op == "_|" ? Star::lcontr : Star::rcontr;
        return Curve::product(star, as_curve(a), as_curve(b));
    }

    ScalarFn scalar_arg(const ParseNode& call, std::size_t i) const {
        Lowered v = lower(call.children[i]);
        if (auto s = std::get_if<ScalarFn>(&v)) return *s;
        throw DslError(call.children[i].span, "type", call.name + " takes a scalar argument");
    }

    static double literal(const ParseNode& n, const std::string& fn) {
        if (n.kind == ParseNode::Kind::number) return n.number;
        if (n.kind == ParseNode::Kind::neg && n.children[0].kind == ParseNode::Kind::number) return -n.children[0].number;
        throw DslError(n.span, "bad-argument", fn + " expects a numeric literal here");
    }

    void arity(const ParseNode& n, std::size_t lo, std::size_t hi) const {
        std::size_t k = n.children.size();
        if (k < lo || k > hi)
            throw DslError(n.span, "bad-argument", n.name + " called with " + std::to_string(k) + " argument(s)");
    }

    Lowered lower_call(const ParseNode& n) const {
        const std::string& f = n.name;
        if (f == "compose") {
            arity(n, 2, 2);
            Lowered inner = lower(n.children[1]);
            auto phi = std::get_if<ScalarFn>(&inner);
            if (!phi) throw DslError(n.children[1].span, "inner-not-scalar", "compose: inner must be scalar");
            return Curve::compose(as_curve(lower(n.children[0])), *phi);
        }
        if (f == "pow") {
            arity(n, 2, 2);
            double p = literal(n.children[1], f);
            if (p != static_cast<int>(p)) throw DslError(n.children[1].span, "bad-argument", "pow exponent must be an integer");
            return ScalarFn::power(scalar_arg(n, 0), static_cast<int>(p));
        }
        if (f == "poly") {
            arity(n, 2, 64);
            std::vector<double> c;
            for (std::size_t i = 1; i < n.children.size(); ++i) c.push_back(literal(n.children[i], f));
            return ScalarFn::poly(scalar_arg(n, 0), std::move(c));
        }
        arity(n, 1, 1);
        Primitive p = f == "sin"   ? Primitive::sin
                      : f == "cos" ? Primitive::cos
                      : f == "exp" ? Primitive::exp
                      : f == "ln"  ? Primitive::ln
                                   : Primitive::sign;
        return ScalarFn::apply(p, scalar_arg(n, 0));
    }

    int dim_;
};

} // namespace detail

/// Checks types and dimensions and builds the curve.
inline Curve validate_and_lower(const ParseTree& tree, int dim) {
    if (tree.dim != dim) throw DslError(tree.root.span, "dim", "tree parsed for dimension " + std::to_string(tree.dim));
    detail::Lowerer lw(dim);
    return lw.as_curve(lw.lower(tree.root));
}

inline Curve parse_curve(std::string_view text, int dim) { return validate_and_lower(parse(text, dim), dim); }

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace detail {
inline std::string literal_text(double v) {
    return std::signbit(v) ? "(-" + format_number(-v) + ")" : format_number(v);
}
} // namespace detail

/// Fully parenthesized text that parses back to a curve evaluating
/// bit-identically.
inline std::string pretty_print(const Curve& e) {
    using K = Curve::Kind;
    const auto& n = e.node();
    switch (n.kind) {
    case K::constant: {
        if (n.value.is_zero()) return "0";
        std::string out;
        for (const auto& t : n.value.terms()) {
            std::string term = t.blade.is_scalar() ? detail::literal_text(t.coeff)
                                                   : "(" + detail::literal_text(t.coeff) + " * " + blade_label(t.blade) + ")";
            out = out.empty() ? term : "(" + out + " + " + term + ")";
        }
        return out;
    }
    case K::scalar_times_blade:
        if (n.blade.is_scalar()) return to_string(n.scalar);
        return "(" + to_string(n.scalar) + " * " + blade_label(n.blade) + ")";
    case K::sum: return "(" + pretty_print(e.lhs()) + " + " + pretty_print(e.rhs()) + ")";
    case K::product:
        return "(" + pretty_print(e.lhs()) + " " + star_symbol(n.star) + " " + pretty_print(e.rhs()) + ")";
    case K::scalar_scale: return "(" + to_string(n.scalar) + " * " + pretty_print(e.lhs()) + ")";
    case K::compose: return "compose(" + pretty_print(e.lhs()) + ", " + to_string(n.scalar) + ")";
    }
    return {};
}

} // namespace mvcalc::dsl
