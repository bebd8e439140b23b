#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lucaskit/sequences.hpp"

namespace lucaskit::dsl {

/// A small expression language for stating candidate Fibonacci-Lucas
/// identities and checking them exactly. Grammar:
///
///   identity := expr "=" expr
///   expr     := term (("+" | "-") term)*
///   term     := factor ("*" factor)*
///   factor   := "-" factor | atom ("^" factor)?
///   atom     := integer | name | "F" "(" expr ")" | "L" "(" expr ")"
///             | "(" expr ")" | "sum" "(" name "=" expr ".." expr "," expr ")"
///
/// Whitespace is insignificant. "^" is right-associative and binds tighter
/// than unary minus: "-1^k" is -(1^k); write "(-1)^k" for the alternating
/// sign. Free variables are n, k, q; sum binders may use any single
/// lowercase letter except f and l, and may not shadow an enclosing binder.
/// Empty sums (lo > hi) are 0, and x^0 = 1 including 0^0.

enum class ExprKind { int_lit, var, fib_of, lucas_of, neg, add, sub, mul, pow, sum_over };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

/// Immutable node. Canonical trees (the parser's output) keep int_lit
/// nonnegative, representing negative constants as neg(int_lit); the
/// round-trip law parse(print(e)) = e is stated for such trees.
struct ExprNode {
    ExprKind kind;
    Integer value{}; // int_lit
    char name = 0;   // var, sum_over binder
    ExprPtr a, b, c; // unary/binary operands; sum_over: (lo, hi, body)
};

inline ExprPtr make_node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

inline ExprPtr int_lit(Integer v) {
    if (sgn(v) < 0)
        return make_node({ExprKind::neg, {}, 0,
                          make_node({ExprKind::int_lit, Integer(-v), 0, nullptr, nullptr, nullptr}),
                          nullptr, nullptr});
    return make_node({ExprKind::int_lit, std::move(v), 0, nullptr, nullptr, nullptr});
}
inline ExprPtr var(char name) { return make_node({ExprKind::var, {}, name, nullptr, nullptr, nullptr}); }
inline ExprPtr fib_of(ExprPtr e) { return make_node({ExprKind::fib_of, {}, 0, std::move(e), nullptr, nullptr}); }
inline ExprPtr lucas_of(ExprPtr e) { return make_node({ExprKind::lucas_of, {}, 0, std::move(e), nullptr, nullptr}); }
inline ExprPtr neg(ExprPtr e) { return make_node({ExprKind::neg, {}, 0, std::move(e), nullptr, nullptr}); }
inline ExprPtr add(ExprPtr l, ExprPtr r) { return make_node({ExprKind::add, {}, 0, std::move(l), std::move(r), nullptr}); }
inline ExprPtr sub(ExprPtr l, ExprPtr r) { return make_node({ExprKind::sub, {}, 0, std::move(l), std::move(r), nullptr}); }
inline ExprPtr mul(ExprPtr l, ExprPtr r) { return make_node({ExprKind::mul, {}, 0, std::move(l), std::move(r), nullptr}); }
inline ExprPtr pow_of(ExprPtr base, ExprPtr exp) { return make_node({ExprKind::pow, {}, 0, std::move(base), std::move(exp), nullptr}); }
inline ExprPtr sum_over(char binder, ExprPtr lo, ExprPtr hi, ExprPtr body) {
    return make_node({ExprKind::sum_over, {}, binder, std::move(lo), std::move(hi), std::move(body)});
}

inline bool equal(const ExprPtr& x, const ExprPtr& y) {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->kind != y->kind || x->name != y->name) return false;
    if (x->kind == ExprKind::int_lit && x->value != y->value) return false;
    return equal(x->a, y->a) && equal(x->b, y->b) && equal(x->c, y->c);
}

namespace detail {
inline void collect_free(const ExprPtr& e, std::set<char>& bound, std::set<char>& out) {
    if (!e) return;
    switch (e->kind) {
    case ExprKind::var:
        if (!bound.count(e->name)) out.insert(e->name);
        return;
    case ExprKind::sum_over: {
        collect_free(e->a, bound, out);
        collect_free(e->b, bound, out);
        const bool inserted = bound.insert(e->name).second;
        collect_free(e->c, bound, out);
        if (inserted) bound.erase(e->name);
        return;
    }
    default:
        collect_free(e->a, bound, out);
        collect_free(e->b, bound, out);
        collect_free(e->c, bound, out);
    }
}
} // namespace detail

inline std::set<char> free_vars(const ExprPtr& e) {
    std::set<char> bound, out;
    detail::collect_free(e, bound, out);
    return out;
}

struct IdentityStatement {
    ExprPtr lhs;
    ExprPtr rhs;
    std::set<char> free_vars;
};

using Parsed = std::variant<ExprPtr, IdentityStatement>;

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

enum class Tok { integer, name, kw_sum, kw_fib, kw_lucas, plus, minus, star, caret,
                 lparen, rparen, comma, equals, dotdot, end };

struct Token {
    Tok kind;
    std::size_t offset = 0;
    Integer value{}; // integer
    char name = 0;   // name
};

inline const char* token_desc(Tok t) {
    switch (t) {
    case Tok::integer: return "integer";
    case Tok::name: return "variable";
    case Tok::kw_sum: return "'sum'";
    case Tok::kw_fib: return "'F'";
    case Tok::kw_lucas: return "'L'";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::star: return "'*'";
    case Tok::caret: return "'^'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::equals: return "'='";
    case Tok::dotdot: return "'..'";
    case Tok::end: return "end of input";
    }
    return "?";
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) { advance(); }

    Parsed parse_any() {
        ExprPtr lhs = parse_expr();
        if (cur_.kind == Tok::equals) {
            advance();
            ExprPtr rhs = parse_expr();
            expect(Tok::end, "end of input");
            std::set<char> fv = free_vars(lhs);
            std::set<char> fv2 = free_vars(rhs);
            fv.insert(fv2.begin(), fv2.end());
            return IdentityStatement{std::move(lhs), std::move(rhs), std::move(fv)};
        }
        expect(Tok::end, "'=' or end of input");
        return lhs;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    Token cur_;
    std::vector<char> bound_;

    [[noreturn]] void fail(std::size_t offset, const std::string& what,
                           const std::string& expected) const {
        throw Error(ErrorCode::parse_error, what, offset, expected);
    }

    void advance() { cur_ = lex(); }

    Token lex() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::size_t at = pos_;
        if (pos_ >= text_.size()) return {Tok::end, at};
        const char c = text_[pos_];
        switch (c) {
        case '+': ++pos_; return {Tok::plus, at};
        case '-': ++pos_; return {Tok::minus, at};
        case '*': ++pos_; return {Tok::star, at};
        case '^': ++pos_; return {Tok::caret, at};
        case '(': ++pos_; return {Tok::lparen, at};
        case ')': ++pos_; return {Tok::rparen, at};
        case ',': ++pos_; return {Tok::comma, at};
        case '=': ++pos_; return {Tok::equals, at};
        case '.':
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '.') {
                pos_ += 2;
                return {Tok::dotdot, at};
            }
            fail(at, "stray '.'", "'..'");
        default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t e = pos_;
            while (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) ++e;
            Token t{Tok::integer, at};
            t.value = Integer(std::string(text_.substr(pos_, e - pos_)), 10);
            pos_ = e;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t e = pos_;
            while (e < text_.size() && std::isalpha(static_cast<unsigned char>(text_[e]))) ++e;
            const std::string_view word = text_.substr(pos_, e - pos_);
            pos_ = e;
            if (word == "sum") return {Tok::kw_sum, at};
            if (word == "F") return {Tok::kw_fib, at};
            if (word == "L") return {Tok::kw_lucas, at};
            if (word.size() == 1 && std::islower(static_cast<unsigned char>(word[0])) &&
                word[0] != 'f' && word[0] != 'l') {
                Token t{Tok::name, at};
                t.name = word[0];
                return t;
            }
            fail(at, "unknown identifier '" + std::string(word) + "'",
                 "'sum', 'F', 'L', or a single lowercase variable (not 'f'/'l')");
        }
        fail(at, std::string("unexpected character '") + c + "'",
             "integer, variable, operator, or parenthesis");
    }

    void expect(Tok kind, const std::string& expected) {
        if (cur_.kind != kind)
            fail(cur_.offset, std::string("unexpected ") + token_desc(cur_.kind), expected);
        if (kind != Tok::end) advance();
    }

    bool is_bound(char name) const {
        for (char c : bound_)
            if (c == name) return true;
        return false;
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        for (;;) {
            if (cur_.kind == Tok::plus) {
                advance();
                lhs = add(std::move(lhs), parse_term());
            } else if (cur_.kind == Tok::minus) {
                advance();
                lhs = sub(std::move(lhs), parse_term());
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        while (cur_.kind == Tok::star) {
            advance();
            lhs = mul(std::move(lhs), parse_factor());
        }
        return lhs;
    }

    // "^" binds tighter than unary minus and associates to the right.
    ExprPtr parse_factor() {
        if (cur_.kind == Tok::minus) {
            advance();
            return neg(parse_factor());
        }
        ExprPtr base = parse_atom();
        if (cur_.kind == Tok::caret) {
            advance();
            return pow_of(std::move(base), parse_factor());
        }
        return base;
    }

    ExprPtr parse_atom() {
        switch (cur_.kind) {
        case Tok::integer: {
            Integer v = std::move(cur_.value);
            advance();
            return int_lit(std::move(v));
        }
        case Tok::name: {
            const char name = cur_.name;
            const std::size_t at = cur_.offset;
            if (name != 'n' && name != 'k' && name != 'q' && !is_bound(name))
                fail(at, std::string("unbound variable '") + name + "'",
                     "'n', 'k', 'q', or an enclosing sum variable");
            advance();
            return var(name);
        }
        case Tok::kw_fib:
        case Tok::kw_lucas: {
            const bool fib_head = cur_.kind == Tok::kw_fib;
            advance();
            expect(Tok::lparen, "'('");
            ExprPtr arg = parse_expr();
            expect(Tok::rparen, "')'");
            return fib_head ? fib_of(std::move(arg)) : lucas_of(std::move(arg));
        }
        case Tok::lparen: {
            advance();
            ExprPtr e = parse_expr();
            expect(Tok::rparen, "')'");
            return e;
        }
        case Tok::kw_sum: {
            advance();
            expect(Tok::lparen, "'('");
            if (cur_.kind != Tok::name)
                fail(cur_.offset, std::string("unexpected ") + token_desc(cur_.kind),
                     "sum variable name");
            const char binder = cur_.name;
            const std::size_t at = cur_.offset;
            if (is_bound(binder))
                throw Error(ErrorCode::bind_error,
                            std::string("sum variable '") + binder +
                                "' shadows an enclosing binding at byte " + std::to_string(at));
            advance();
            expect(Tok::equals, "'='");
            ExprPtr lo = parse_expr();
            expect(Tok::dotdot, "'..'");
            ExprPtr hi = parse_expr();
            expect(Tok::comma, "','");
            bound_.push_back(binder);
            ExprPtr body = parse_expr();
            bound_.pop_back();
            expect(Tok::rparen, "')'");
            return sum_over(binder, std::move(lo), std::move(hi), std::move(body));
        }
        default:
            fail(cur_.offset, std::string("unexpected ") + token_desc(cur_.kind),
                 "integer, variable, 'F', 'L', '-', '(', or 'sum'");
        }
    }
};

} // namespace detail

/// Parses either a bare expression or an identity "lhs = rhs".
inline Parsed parse(std::string_view text) { return detail::Parser(text).parse_any(); }

inline ExprPtr parse_expression(std::string_view text) {
    Parsed p = parse(text);
    if (auto* e = std::get_if<ExprPtr>(&p)) return std::move(*e);
    throw Error(ErrorCode::parse_error, "expected an expression, found an identity", 0, "no '='");
}

inline IdentityStatement parse_identity(std::string_view text) {
    Parsed p = parse(text);
    if (auto* s = std::get_if<IdentityStatement>(&p)) return std::move(*s);
    throw Error(ErrorCode::parse_error, "expected an identity with '='", text.size(), "'='");
}

// ---------------------------------------------------------------------------
// Evaluation

/// Values for the free variables of an expression.
using Binding = std::map<char, Integer>;

namespace detail {

struct EvalCtx {
    const Binding& base;
    std::vector<std::pair<char, Integer>> bound;

    const Integer* lookup(char name) const {
        for (auto it = bound.rbegin(); it != bound.rend(); ++it)
            if (it->first == name) return &it->second;
        auto f = base.find(name);
        return f == base.end() ? nullptr : &f->second;
    }
};

inline Integer eval_rec(const ExprNode& e, EvalCtx& ctx) {
    switch (e.kind) {
    case ExprKind::int_lit:
        return e.value;
    case ExprKind::var: {
        const Integer* v = ctx.lookup(e.name);
        if (!v)
            throw Error(ErrorCode::unbound_variable, std::string("variable '") + e.name + "'");
        return *v;
    }
    case ExprKind::fib_of:
    case ExprKind::lucas_of: {
        const Integer arg = eval_rec(*e.a, ctx);
        if (!arg.fits_slong_p())
            throw Error(ErrorCode::index_out_of_range,
                        "sequence index " + arg.get_str(10) + " exceeds machine width");
        const Index idx = static_cast<Index>(arg.get_si());
        return e.kind == ExprKind::fib_of ? fib(idx) : lucas(idx);
    }
    case ExprKind::neg:
        return Integer(-eval_rec(*e.a, ctx));
    case ExprKind::add:
        return Integer(eval_rec(*e.a, ctx) + eval_rec(*e.b, ctx));
    case ExprKind::sub:
        return Integer(eval_rec(*e.a, ctx) - eval_rec(*e.b, ctx));
    case ExprKind::mul:
        return Integer(eval_rec(*e.a, ctx) * eval_rec(*e.b, ctx));
    case ExprKind::pow: {
        const Integer base = eval_rec(*e.a, ctx);
        const Integer exp = eval_rec(*e.b, ctx);
        if (sgn(exp) < 0)
            throw Error(ErrorCode::negative_exponent, "exponent " + exp.get_str(10));
        if (!exp.fits_ulong_p())
            throw Error(ErrorCode::exponent_too_large, "exponent " + exp.get_str(10));
        return pow_int(base, exp.get_ui());
    }
    case ExprKind::sum_over: {
        const Integer lo = eval_rec(*e.a, ctx);
        const Integer hi = eval_rec(*e.b, ctx);
        Integer acc = 0;
        if (lo > hi) return acc; // empty sum
        ctx.bound.emplace_back(e.name, lo);
        for (Integer v = lo; v <= hi; ++v) {
            ctx.bound.back().second = v;
            acc += eval_rec(*e.c, ctx);
        }
        ctx.bound.pop_back();
        return acc;
    }
    }
    throw Error(ErrorCode::invalid_argument, "corrupt expression node");
}

} // namespace detail

/// Exact evaluation under the given binding.
inline Integer eval(const ExprPtr& e, const Binding& env) {
    if (!e) throw Error(ErrorCode::invalid_argument, "null expression");
    detail::EvalCtx ctx{env, {}};
    return detail::eval_rec(*e, ctx);
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

// Precedence levels: add/sub = 1, mul = 2, neg/pow = 3, atoms = 4.
inline int print_level(const ExprNode& e) {
    switch (e.kind) {
    case ExprKind::add:
    case ExprKind::sub: return 1;
    case ExprKind::mul: return 2;
    case ExprKind::neg:
    case ExprKind::pow: return 3;
    default: return 4;
    }
}

inline void print_rec(const ExprNode& e, int min_level, std::string& out) {
    if (print_level(e) < min_level) {
        out += '(';
        print_rec(e, 1, out);
        out += ')';
        return;
    }
    switch (e.kind) {
    case ExprKind::int_lit:
        out += e.value.get_str(10);
        break;
    case ExprKind::var:
        out += e.name;
        break;
    case ExprKind::fib_of:
    case ExprKind::lucas_of:
        out += e.kind == ExprKind::fib_of ? 'F' : 'L';
        out += '(';
        print_rec(*e.a, 1, out);
        out += ')';
        break;
    case ExprKind::neg:
        out += '-';
        print_rec(*e.a, 3, out);
        break;
    case ExprKind::add:
    case ExprKind::sub:
        print_rec(*e.a, 1, out);
        out += e.kind == ExprKind::add ? " + " : " - ";
        print_rec(*e.b, 2, out);
        break;
    case ExprKind::mul:
        print_rec(*e.a, 2, out);
        out += " * ";
        print_rec(*e.b, 3, out);
        break;
    case ExprKind::pow:
        print_rec(*e.a, 4, out);
        out += '^';
        print_rec(*e.b, 3, out);
        break;
    case ExprKind::sum_over:
        out += "sum(";
        out += e.name;
        out += '=';
        print_rec(*e.a, 1, out);
        out += "..";
        print_rec(*e.b, 1, out);
        out += ", ";
        print_rec(*e.c, 1, out);
        out += ')';
        break;
    }
}

} // namespace detail

/// Canonical text form; parse(print(e)) is structurally identical to e for
/// canonical trees (nonnegative literals).
inline std::string print(const ExprPtr& e) {
    std::string out;
    if (e) detail::print_rec(*e, 1, out);
    return out;
}

inline std::string print(const IdentityStatement& s) {
    return print(s.lhs) + " = " + print(s.rhs);
}

// ---------------------------------------------------------------------------
// Range checking

using VarRanges = std::map<char, std::pair<Index, Index>>;

struct DslCheckReport {
    std::int64_t checked = 0;
    struct Failure {
        Binding point;
        Integer lhs;
        Integer rhs;
    };
    std::vector<Failure> failures;

    bool ok() const { return failures.empty(); }
};

/// Evaluates both sides at every point of the Cartesian product of the
/// given ranges (sorted variable order) and reports mismatches.
inline DslCheckReport check(const IdentityStatement& stmt, const VarRanges& ranges) {
    std::vector<char> vars(stmt.free_vars.begin(), stmt.free_vars.end());
    for (char v : vars) {
        auto it = ranges.find(v);
        if (it == ranges.end())
            throw Error(ErrorCode::unbound_variable,
                        std::string("no range for free variable '") + v + "'");
        if (it->second.first > it->second.second)
            throw Error(ErrorCode::invalid_range,
                        std::string("empty range for '") + v + "': " +
                            std::to_string(it->second.first) + ".." +
                            std::to_string(it->second.second));
    }

    DslCheckReport report;
    Binding env;
    auto walk = [&](auto&& self, std::size_t i) -> void {
        if (i == vars.size()) {
            Integer l = eval(stmt.lhs, env);
            Integer r = eval(stmt.rhs, env);
            ++report.checked;
            if (l != r) report.failures.push_back({env, std::move(l), std::move(r)});
            return;
        }
        const auto [lo, hi] = ranges.at(vars[i]);
        for (Index v = lo; v <= hi; ++v) {
            env[vars[i]] = Integer(static_cast<long>(v));
            self(self, i + 1);
        }
        env.erase(vars[i]);
    };
    walk(walk, 0);
    return report;
}

} // namespace lucaskit::dsl
