#include "esc/parser.hpp"

#include <cctype>
#include <sstream>

namespace esc {

namespace {

constexpr std::string_view kHoleUtf8 = "\xE2\x9F\xA8\xE2\x9F\xA9";  // ⟨⟩
constexpr std::string_view kTurnstile = "\xE2\x8A\xA2";             // ⊢

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Parser {
public:
  Parser(std::string_view text, bool allow_holes) : src_(text), allow_holes_(allow_holes) {}

  std::size_t holes() const { return holes_; }

  [[noreturn]] void fail(ParseError::Category cat, const std::string& msg, std::size_t at) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src_[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
    throw ParseError(cat, msg, line, col);
  }
  [[noreturn]] void syntax(const std::string& msg) const { fail(ParseError::Category::Syntax, msg, pos_); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= src_.size();
  }

  bool peek(std::string_view tok) {
    skip_ws();
    return src_.substr(pos_, tok.size()) == tok;
  }

  bool accept(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) syntax("expected '" + std::string(tok) + "'" + found());
  }

  std::string found() {
    skip_ws();
    if (pos_ >= src_.size()) return ", found end of input";
    return ", found '" + std::string(src_.substr(pos_, 1)) + "'";
  }

  std::string ident() {
    skip_ws();
    if (pos_ >= src_.size() || !ident_start(src_[pos_])) syntax("expected an identifier" + found());
    std::size_t b = pos_;
    while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
    return std::string(src_.substr(b, pos_ - b));
  }

  Var var() { return make_var(ident()); }

  // Keyword followed by '{'.
  std::optional<std::string> left_keyword() {
    skip_ws();
    for (std::string_view kw : {"cut", "par", "sub", "der"}) {
      if (src_.substr(pos_, kw.size()) != kw) continue;
      std::size_t q = pos_ + kw.size();
      if (q < src_.size() && ident_char(src_[q])) continue;
      while (q < src_.size() && std::isspace(static_cast<unsigned char>(src_[q]))) ++q;
      if (q < src_.size() && src_[q] == '{') return std::string(kw);
    }
    return std::nullopt;
  }

  Term term() {
    skip_ws();
    auto kw = left_keyword();
    if (!kw) return value();
    pos_ += kw->size();
    expect("{");
    if (*kw == "cut") {
      Term v = value_slot();
      expect(">");
      Var x = var();
      expect("}");
      return Term::cut(v, x, term());
    }
    if (*kw == "par") {
      std::size_t at = pos_;
      Var m = var();
      expect(">");
      Var x = var();
      expect(",");
      Var y = var();
      expect("}");
      if (m.is_exp()) fail(ParseError::Category::Kind, "par conclusion " + m.name + " must be multiplicative", at);
      return Term::par(m, x, y, term());
    }
    if (*kw == "sub") {
      std::size_t at = pos_;
      Var m = var();
      expect(";");
      Term v = value_slot();
      expect(">");
      Var x = var();
      expect("}");
      if (m.is_exp()) fail(ParseError::Category::Kind, "sub conclusion " + m.name + " must be multiplicative", at);
      return Term::sub(m, v, x, term());
    }
    std::size_t at = pos_;
    Var e = var();
    expect(">");
    Var x = var();
    expect("}");
    if (e.is_mul()) fail(ParseError::Category::Kind, "der conclusion " + e.name + " must be exponential", at);
    return Term::der(e, x, term());
  }

  Term value_slot() {
    skip_ws();
    std::size_t at = pos_;
    if (left_keyword()) fail(ParseError::Category::SplitShape, "value expected in a cut/sub value slot", at);
    Term v = value();
    if (!v.is_value()) fail(ParseError::Category::SplitShape, "value expected in a cut/sub value slot", at);
    return v;
  }

  Term value() {
    skip_ws();
    if (pos_ >= src_.size()) syntax("expected a term, found end of input");
    if (accept("<>") || accept(kHoleUtf8)) {
      if (!allow_holes_) fail(ParseError::Category::Syntax, "hole outside a context", pos_ - 2);
      ++holes_;
      return Term::hole();
    }
    if (accept("(")) {
      Term l = term();
      if (accept(")")) return l;  // grouping
      expect(",");
      Term r = term();
      expect(")");
      return Term::pair(l, r);
    }
    if (accept("\\")) {
      Var x = var();
      std::optional<Formula> a;
      if (accept(":")) a = formula();
      expect(".");
      return Term::lam(x, a, term());
    }
    if (accept("!")) return Term::bang(term());
    if (ident_start(src_[pos_])) return Term::var(var());
    syntax("unexpected character" + found());
  }

  // formula := tensor ['-o' formula]
  Formula formula() {
    Formula l = tensor();
    if (accept("-o")) return Formula::lolli(l, formula());
    return l;
  }

  Formula tensor() {
    Formula l = unary();
    while (accept("*")) l = Formula::tensor(l, unary());
    return l;
  }

  Formula unary() {
    if (accept("!")) return Formula::bang(unary());
    if (accept("(")) {
      Formula f = formula();
      expect(")");
      return f;
    }
    skip_ws();
    std::size_t at = pos_;
    std::string a = ident();
    if (!std::isupper(static_cast<unsigned char>(a[0])))
      fail(ParseError::Category::Syntax, "atoms are capitalized identifiers: " + a, at);
    return Formula::atom(a);
  }

  TypingContext typing_context() {
    TypingContext ctx;
    if (at_end() || peek("|-") || peek(kTurnstile)) return ctx;
    do {
      skip_ws();
      std::size_t at = pos_;
      Var x = var();
      expect(":");
      Formula f = formula();
      if (x.is_exp() != f.is_bang())
        fail(ParseError::Category::Kind,
             x.name + (x.is_exp() ? " is exponential and needs a bang formula"
                                  : " is multiplicative and cannot have a bang formula"),
             at);
      if (!ctx.emplace(x, f).second) fail(ParseError::Category::Syntax, "duplicate variable " + x.name, at);
    } while (accept(","));
    return ctx;
  }

  void finish() {
    if (!at_end()) syntax("trailing input" + found());
  }

  std::size_t pos() const { return pos_; }

private:
  std::string_view src_;
  std::size_t pos_ = 0;
  bool allow_holes_;
  std::size_t holes_ = 0;
};

} // namespace

Term parse_term(std::string_view text) {
  Parser p(text, false);
  Term t = p.term();
  p.finish();
  return t;
}

Context parse_context(std::string_view text) {
  Parser p(text, true);
  Term t = p.term();
  p.finish();
  if (p.holes() != 1)
    throw ParseError(ParseError::Category::Syntax,
                     "a context needs exactly one hole, found " + std::to_string(p.holes()), 1, 1);
  return make_context(t);
}

Formula parse_formula(std::string_view text) {
  Parser p(text, false);
  Formula f = p.formula();
  p.finish();
  return f;
}

TypingContext parse_typing_context(std::string_view text) {
  Parser p(text, false);
  TypingContext c = p.typing_context();
  p.finish();
  return c;
}

Judgement parse_judgement(std::string_view text) {
  std::size_t k = text.find(kTurnstile);
  std::size_t len = kTurnstile.size();
  if (k == std::string_view::npos) {
    k = text.find("|-");
    len = 2;
  }
  if (k == std::string_view::npos) return Judgement{std::nullopt, parse_term(text)};
  Judgement j{parse_typing_context(text.substr(0, k)), Term()};
  try {
    j.term = parse_term(text.substr(k + len));
  } catch (const ParseError& e) {
    // Report positions relative to the whole judgement.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < k + len; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
    std::size_t el = e.line() == 1 ? line : line + e.line() - 1;
    std::size_t ec = e.line() == 1 ? col + e.column() - 1 : e.column();
    std::string msg = e.what();
    msg = msg.substr(msg.find(": ") + 2);
    throw ParseError(e.category(), msg, el, ec);
  }
  return j;
}

Judgement parse_term_file(std::string_view text) {
  std::optional<TypingContext> ctx;
  std::string body;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::size_t first_term_line = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b != std::string::npos && line[b] == '#') {
      std::string_view rest = std::string_view(line).substr(b + 1);
      std::size_t c = rest.find_first_not_of(" \t");
      if (c != std::string_view::npos && rest.substr(c, 4) == "ctx:") {
        try {
          ctx = parse_typing_context(rest.substr(c + 4));
        } catch (const ParseError& e) {
          std::string msg = e.what();
          throw ParseError(e.category(), "in ctx header: " + msg.substr(msg.find(": ") + 2), lineno, e.column());
        }
      }
      body += '\n';  // keep line numbers aligned
      continue;
    }
    if (!first_term_line && b != std::string::npos) first_term_line = lineno;
    body += line;
    body += '\n';
  }
  Judgement j = parse_judgement(body);
  if (ctx) {
    if (j.ctx) throw ParseError(ParseError::Category::Syntax, "typing context given twice", first_term_line, 1);
    j.ctx = ctx;
  }
  return j;
}

std::string print_typing_context(const TypingContext& ctx) {
  std::string out;
  for (auto& [x, f] : ctx) {
    if (!out.empty()) out += ", ";
    out += x.name + ":" + f.str();
  }
  return out;
}

std::string print_context(const Context& c) { return print(c.root); }

} // namespace esc
