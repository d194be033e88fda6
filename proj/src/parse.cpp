#include "folred/parse.hpp"

#include <cctype>
#include <optional>

#include "folred/error.hpp"

namespace folred {

namespace {

enum class Tok { num, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  int line = 1, col = 1;
};

[[noreturn]] void syntax(int line, int col, const std::string& what) {
  fail(ErrorCode::parse, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
}

std::vector<Token> lex(const std::string& s, int line) {
  std::vector<Token> out;
  int col = 1;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    std::size_t j = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Tok::num;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      t.kind = Tok::ident;
    } else {
      ++j;
      switch (c) {
        case '+': t.kind = Tok::plus; break;
        case '-': t.kind = Tok::minus; break;
        case '*': t.kind = Tok::star; break;
        case '/': t.kind = Tok::slash; break;
        case '^': t.kind = Tok::caret; break;
        case '(': t.kind = Tok::lparen; break;
        case ')': t.kind = Tok::rparen; break;
        case ',': t.kind = Tok::comma; break;
        default: syntax(line, col, std::string("unexpected character '") + c + "'");
      }
    }
    t.text = s.substr(i, j - i);
    col += static_cast<int>(j - i);
    i = j;
    out.push_back(std::move(t));
  }
  Token e;
  e.line = line;
  e.col = col;
  out.push_back(e);
  return out;
}

enum class Kind { poly, form, field };

// A polynomial, or a differential c1 d1 + c2 d2 (dx, dy or Dx, Dy).
struct Value {
  Kind kind = Kind::poly;
  Jet2 p, c1, c2;

  static Value poly(Jet2 j) { return {Kind::poly, std::move(j), {}, {}}; }
  Value scaled(const Jet2& f) const {
    return kind == Kind::poly ? poly(p * f) : Value{kind, {}, c1 * f, c2 * f};
  }
};

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::poly: return "polynomial";
    case Kind::form: return "1-form";
    case Kind::field: return "vector field";
  }
  return "?";
}

class Parser {
 public:
  Parser(const std::string& text, int line) : toks_(lex(text, line)) {}

  Value expression(int min_bp = 0) {
    Value lhs = prefix();
    for (;;) {
      const Token& op = peek();
      int bp = infix_bp(op.kind);
      if (bp <= min_bp) break;
      Token t = next();
      if (t.kind == Tok::caret) {
        lhs = power(lhs, t);
        continue;
      }
      Value rhs = expression(bp);
      lhs = combine(t, lhs, rhs);
    }
    return lhs;
  }

  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) syntax(peek().line, peek().col, std::string("expected ") + what + describe(peek()));
    next();
  }
  static std::string describe(const Token& t) {
    return t.kind == Tok::end ? " before the end of input" : ", found '" + t.text + "'";
  }

 private:
  static int infix_bp(Tok k) {
    switch (k) {
      case Tok::plus:
      case Tok::minus: return 10;
      case Tok::star:
      case Tok::slash: return 20;
      case Tok::caret: return 30;
      default: return 0;
    }
  }
  static constexpr int kUnaryBp = 25;

  Value prefix() {
    Token t = next();
    switch (t.kind) {
      case Tok::num: return Value::poly(Jet2::constant(Scalar(Rational(t.text))));
      case Tok::minus: return expression(kUnaryBp).scaled(Jet2::constant(Scalar(-1)));
      case Tok::plus: return expression(kUnaryBp);
      case Tok::lparen: {
        Value v = expression();
        expect(Tok::rparen, "')'");
        return v;
      }
      case Tok::ident: return identifier(t);
      default: syntax(t.line, t.col, "expected an operand" + describe(t));
    }
  }

  Value identifier(const Token& t) {
    const std::string& s = t.text;
    if (s == "x") return Value::poly(Jet2::x());
    if (s == "y") return Value::poly(Jet2::y());
    if (s == "i") return Value::poly(Jet2::constant(Scalar::i()));
    Jet2 one = Jet2::constant(Scalar(1));
    if (s == "dx") return {Kind::form, {}, one, Jet2()};
    if (s == "dy") return {Kind::form, {}, Jet2(), one};
    if (s == "Dx") return {Kind::field, {}, one, Jet2()};
    if (s == "Dy") return {Kind::field, {}, Jet2(), one};
    if (s == "d" && peek().kind == Tok::lparen) {
      Token open = next();
      Value v = expression();
      expect(Tok::rparen, "')'");
      if (v.kind != Kind::poly) syntax(open.line, open.col, "d(...) needs a polynomial");
      return {Kind::form, {}, v.p.derivative_x(), v.p.derivative_y()};
    }
    if (s.size() > 4 && s.compare(0, 4, "sqrt") == 0 && s.find_first_not_of("0123456789", 4) == std::string::npos) {
      long n = std::stol(s.substr(4));
      if (n <= 0) syntax(t.line, t.col, "sqrt needs a positive integer");
      return Value::poly(Jet2::constant(Scalar::sqrt_of(n)));
    }
    syntax(t.line, t.col, "unknown identifier '" + s + "'");
  }

  Value power(const Value& base, const Token& op) {
    Token e = next();
    if (e.kind != Tok::num) syntax(e.line, e.col, "exponents must be integer literals");
    if (base.kind != Kind::poly) syntax(op.line, op.col, "cannot raise a " + std::string(kind_name(base.kind)) + " to a power");
    if (e.text.size() > 3 || std::stoi(e.text) > 256) syntax(e.line, e.col, "exponent too large");
    int n = std::stoi(e.text);
    Jet2 r = Jet2::constant(Scalar(1));
    for (int k = 0; k < n; ++k) r = r * base.p;
    return Value::poly(r);
  }

  Value combine(const Token& op, const Value& a, const Value& b) {
    switch (op.kind) {
      case Tok::plus:
      case Tok::minus: {
        if (a.kind != b.kind)
          syntax(op.line, op.col, std::string("cannot combine a ") + kind_name(a.kind) + " with a " + kind_name(b.kind));
        Jet2 s = Jet2::constant(Scalar(op.kind == Tok::plus ? 1 : -1));
        Value r = a;
        Value bs = b.scaled(s);
        if (a.kind == Kind::poly) {
          r.p += bs.p;
        } else {
          r.c1 += bs.c1;
          r.c2 += bs.c2;
        }
        return r;
      }
      case Tok::star:
        if (a.kind != Kind::poly && b.kind != Kind::poly) syntax(op.line, op.col, "product of two differentials is not a 1-form");
        return a.kind == Kind::poly ? b.scaled(a.p) : a.scaled(b.p);
      case Tok::slash: {
        if (b.kind != Kind::poly || b.p.degree() > 0) syntax(op.line, op.col, "division only by nonzero constants");
        if (b.p.is_zero()) syntax(op.line, op.col, "division by zero");
        return a.scaled(Jet2::constant(b.p.constant_term().inverse()));
      }
      default: syntax(op.line, op.col, "unexpected operator");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

Value parse_value(Parser& p) {
  Value v = p.expression();
  if (p.peek().kind != Tok::end) syntax(p.peek().line, p.peek().col, "unexpected '" + p.peek().text + "'");
  return v;
}

}  // namespace

ParsedGerm parse_germ(const std::string& text, int line) {
  Parser p(text, line);
  Value v = parse_value(p);
  if (v.kind == Kind::poly)
    syntax(line, 1, "expected a 1-form (P*dx + Q*dy) or a vector field (P*Dx + Q*Dy), found a polynomial");
  if (v.c1.is_zero() && v.c2.is_zero()) fail(ErrorCode::precondition, "line " + std::to_string(line) + ": zero form");
  if (v.kind == Kind::form) return {FoliationGerm::from_form(v.c1, v.c2), InputKind::form};
  return {FoliationGerm::from_vector_field(v.c1, v.c2), InputKind::field};
}

Jet2 parse_polynomial(const std::string& text, int line) {
  Parser p(text, line);
  Value v = parse_value(p);
  if (v.kind != Kind::poly) syntax(line, 1, std::string("expected a polynomial, found a ") + kind_name(v.kind));
  return v.p;
}

PlaneMap parse_map(const std::string& text, int line) {
  Parser p(text, line);
  p.expect(Tok::lparen, "'(' opening a map (P, Q)");
  Value a = p.expression();
  p.expect(Tok::comma, "','");
  Value b = p.expression();
  p.expect(Tok::rparen, "')'");
  if (p.peek().kind != Tok::end) syntax(p.peek().line, p.peek().col, "unexpected '" + p.peek().text + "'");
  if (a.kind != Kind::poly || b.kind != Kind::poly) syntax(line, 1, "map components must be polynomials");
  return {a.p, b.p};
}

std::string print_germ(const FoliationGerm& g) { return g.to_string(); }

std::string print_map(const PlaneMap& m) { return "(" + m.x.to_string() + ", " + m.y.to_string() + ")"; }

const InputSlot* InputDocument::find(const std::string& label, std::size_t index) const {
  for (const auto& s : slots)
    if (s.label == label) return &s;
  std::size_t k = 0;
  for (const auto& s : slots)
    if (s.label.empty() && k++ == index) return &s;
  return nullptr;
}

InputDocument parse_document(const std::string& text) {
  InputDocument doc;
  int line = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string row = text.substr(start, nl == std::string::npos ? std::string::npos : nl - start);
    ++line;
    if (auto h = row.find('#'); h != std::string::npos) row.erase(h);
    std::size_t seg = 0;
    while (seg <= row.size()) {
      std::size_t semi = row.find(';', seg);
      std::string part = row.substr(seg, semi == std::string::npos ? std::string::npos : semi - seg);
      seg = semi == std::string::npos ? row.size() + 1 : semi + 1;
      InputSlot slot;
      slot.line = line;
      std::size_t colon = part.find(':');
      if (colon != std::string::npos) {
        std::string label = part.substr(0, colon);
        label.erase(0, label.find_first_not_of(" \t"));
        label.erase(label.find_last_not_of(" \t") + 1);
        bool ident = !label.empty() && std::isalpha(static_cast<unsigned char>(label[0]));
        for (char c : label) ident = ident && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        if (!ident) syntax(line, 1, "bad slot label '" + label + "'");
        slot.label = label;
        part = part.substr(colon + 1);
      }
      std::size_t b = part.find_first_not_of(" \t\r"), e = part.find_last_not_of(" \t\r");
      if (b == std::string::npos) {
        if (!slot.label.empty()) syntax(line, 1, "empty slot '" + slot.label + "'");
        continue;
      }
      slot.text = part.substr(b, e - b + 1);
      doc.slots.push_back(std::move(slot));
    }
    if (nl == std::string::npos) break;
    start = nl + 1;
  }
  return doc;
}

}  // namespace folred
