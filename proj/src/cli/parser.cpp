#include "jetvar/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "jetvar/errors.hpp"

namespace jetvar {

namespace {

enum class Tok { Number, Name, Op, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  unsigned column = 0;
};

class Parser {
 public:
  Parser(const std::string& text, const ParseContext& ctx) : ctx_(ctx) { lex(text); }

  Expr run() {
    Expr e = expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'", peek());
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message, const Token& at) const {
    throw ParseError(message, ctx_.line, at.column);
  }

  void lex(const std::string& text) {
    std::size_t i = 0;
    auto col = [&](std::size_t pos) { return ctx_.column + static_cast<unsigned>(pos); };
    while (i < text.size()) {
      unsigned char c = static_cast<unsigned char>(text[i]);
      if (std::isspace(c)) {
        ++i;
        continue;
      }
      std::size_t start = i;
      if (std::isdigit(c) || (c == '.' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i < text.size() && text[i] == '.') {
          ++i;
          while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        }
        tokens_.push_back({Tok::Number, text.substr(start, i - start), col(start)});
        continue;
      }
      if (std::isalpha(c)) {
        while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
        if (i < text.size() && text[i] == '_') {
          ++i;
          while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
        }
        while (i < text.size() && text[i] == '\'') ++i;
        tokens_.push_back({Tok::Name, text.substr(start, i - start), col(start)});
        continue;
      }
      if (std::string("+-*/^()[],").find(static_cast<char>(c)) != std::string::npos) {
        tokens_.push_back({Tok::Op, std::string(1, static_cast<char>(c)), col(start)});
        ++i;
        continue;
      }
      fail(std::string("unexpected character '") + static_cast<char>(c) + "'", {Tok::Op, "", col(start)});
    }
    tokens_.push_back({Tok::End, "end of input", col(text.size())});
  }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool at_op(const char* op) const { return peek().kind == Tok::Op && peek().text == op; }
  bool accept(const char* op) {
    if (!at_op(op)) return false;
    ++pos_;
    return true;
  }
  const Token& expect(const char* op) {
    if (!at_op(op)) fail(std::string("expected '") + op + "' but found '" + peek().text + "'", peek());
    return next();
  }

  Expr expr() {
    Expr e = term();
    while (true) {
      if (accept("+")) {
        e += term();
      } else if (accept("-")) {
        e -= term();
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = unary();
    while (true) {
      if (accept("*")) {
        e *= unary();
      } else if (at_op("/")) {
        const Token& slash = next();
        Expr d = unary();
        if (d.is_zero()) fail("division by zero", slash);
        if (d.is_constant()) {
          e *= Expr(Rational(1) / d.constant_value());
        } else {
          e *= pow(d, -1);
        }
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (accept("-")) return -unary();
    if (accept("+")) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!accept("^")) return base;
    bool negative = false;
    if (accept("-")) {
      negative = true;
    } else {
      accept("+");
    }
    const Token& t = next();
    if (t.kind != Tok::Number || t.text.find('.') != std::string::npos) fail("exponent must be an integer", t);
    if (t.text.size() > 6) fail("exponent too large", t);
    int n = std::stoi(t.text);
    if (negative) n = -n;
    if (n < 0 && base.is_zero()) fail("zero raised to a negative power", t);
    return pow(base, n);
  }

  static Rational decimal(const std::string& text) {
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(mpz_class(text, 10));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    if (digits.empty()) digits = "0";
    mpz_class den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    Rational q(mpz_class(digits, 10), den);
    q.canonicalize();
    return q;
  }

  std::vector<unsigned> index_list() {
    std::vector<unsigned> out;
    expect("[");
    if (accept("]")) return out;
    do {
      const Token& t = next();
      if (t.kind != Tok::Number || t.text.find('.') != std::string::npos || t.text.size() > 4) {
        fail("expected a non-negative integer index", t);
      }
      out.push_back(static_cast<unsigned>(std::stoul(t.text)));
    } while (accept(","));
    expect("]");
    return out;
  }

  std::vector<Expr> arguments() {
    std::vector<Expr> args;
    expect("(");
    do {
      args.push_back(expr());
    } while (accept(","));
    expect(")");
    return args;
  }

  Expr primary() {
    const Token& t = next();
    if (t.kind == Tok::Number) return Expr(decimal(t.text));
    if (t.kind == Tok::Op && t.text == "(") {
      Expr e = expr();
      expect(")");
      return e;
    }
    if (t.kind != Tok::Name) fail("expected an expression but found '" + t.text + "'", t);
    return name(t);
  }

  Expr function_call(const Token& t) {
    std::string text = t.text;
    std::size_t primes = 0;
    while (!text.empty() && text.back() == '\'') {
      text.pop_back();
      ++primes;
    }
    static const std::vector<std::pair<std::string, Function>> elementary = {
        {"sin", Function::Sin}, {"cos", Function::Cos}, {"exp", Function::Exp}, {"ln", Function::Ln}};
    for (const auto& [fname, f] : elementary) {
      if (text != fname) continue;
      if (primes) fail("derivative marks on '" + fname + "'", t);
      auto args = arguments();
      if (args.size() != 1) fail("'" + fname + "' takes one argument", t);
      return apply(f, args[0]);
    }
    if (!ctx_.functions.count(text)) fail("unknown function '" + text + "'", t);
    std::vector<unsigned> partials;
    if (primes == 1 && at_op("[")) {
      partials = index_list();
    } else if (primes) {
      partials = {static_cast<unsigned>(primes)};
    }
    auto args = arguments();
    if (partials.empty()) partials.assign(args.size(), 0);
    if (partials.size() != args.size()) {
      fail("derivative list of '" + text + "' has " + std::to_string(partials.size()) + " entries for " +
               std::to_string(args.size()) + " arguments",
           t);
    }
    return opaque(text, partials, args);
  }

  Expr name(const Token& t) {
    if (at_op("(") || t.text.back() == '\'') return function_call(t);
    const BundleSpec& b = ctx_.bundle;
    std::string head = t.text;
    std::string suffix;
    bool has_suffix = false;
    if (auto u = head.find('_'); u != std::string::npos) {
      suffix = head.substr(u + 1);
      head = head.substr(0, u);
      has_suffix = true;
      if (suffix.empty()) fail("empty index suffix in '" + t.text + "'", t);
    }

    if (head == "pi" && !has_suffix) return Expr(constant_pi());
    if (auto i = b.base_position(head)) {
      if (has_suffix || at_op("[")) fail("base coordinate '" + head + "' takes no index", t);
      return checked(b.base(*i), t);
    }

    bool vertical = false;
    std::optional<std::size_t> p = b.fiber_position(head);
    if (!p && head.size() > 1 && head[0] == 'd') {
      p = b.fiber_position(head.substr(1));
      vertical = p.has_value();
    }
    if (!p) fail("unknown coordinate '" + t.text + "'", t);

    MultiIndex alpha(b.m());
    if (has_suffix) {
      auto parsed = b.parse_suffix(suffix);
      if (!parsed) fail("unknown coordinate '" + t.text + "'", t);
      if (b.suffix(*parsed) != suffix) {
        fail("index suffix of '" + t.text + "' must list base coordinates in declaration order", t);
      }
      alpha = *parsed;
    } else if (at_op("[")) {
      auto list = index_list();
      if (list.size() != b.m()) {
        fail("multi-index of '" + t.text + "' needs " + std::to_string(b.m()) + " entries", t);
      }
      alpha = MultiIndex(list);
    }
    return checked(vertical ? b.vertical(*p, alpha) : b.jet(*p, alpha), t);
  }

  Expr checked(const Symbol& s, const Token& t) const {
    if (!ctx_.bundle.admits(s, ctx_.orders)) {
      std::string limit = s.kind == SymbolKind::Vertical
                              ? (ctx_.orders.s ? "vertical order " + std::to_string(*ctx_.orders.s)
                                               : "no vertical argument")
                              : "jet order " + std::to_string(ctx_.orders.r);
      fail("'" + render(s) + "' exceeds the context (" + limit + ")", t);
    }
    return Expr(s);
  }

  const ParseContext& ctx_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(const std::string& text, const ParseContext& context) {
  return Parser(text, context).run();
}

}  // namespace jetvar
