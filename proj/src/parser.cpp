// Recursive-descent parser for the ASCII formula grammar.
//
//   formula  := orexpr
//   orexpr   := splitexp ( "||" splitexp )*
//   splitexp := andexpr ( ("\/" | "\/+") andexpr )*
//   andexpr  := unary ( "&" unary )*
//   unary    := "~" prop | "<>" unary | "[]" unary | "E" prop "." unary | primary
//   primary  := prop | "bot" | "top" | "NE" | "(" formula ")"
//             | "=(" list ";" formula ")" | "inc(" list ";" list ")" | "ind(" list ";" list ")"
//   list     := empty | formula ("," formula)*

#include <cctype>

#include "tl/error.hpp"
#include "tl/syntax.hpp"

namespace tl {
namespace {

enum class Tok {
  Ident,
  LParen,
  RParen,
  Comma,
  Semi,
  Amp,
  Split,
  NeSplit,
  Or,
  Tilde,
  Dia,
  Box,
  Exists,
  Dot,
  Equals,
  Bot,
  Top,
  NonEmpty,
  Inc,
  Ind,
  End,
};

struct Token {
  Tok tok;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    const std::size_t line = line_, col = col_;
    if (pos_ >= src_.size()) return {Tok::End, "", line, col};
    const char c = src_[pos_];
    auto take = [&](Tok t, std::size_t n) {
      Token tok{t, std::string(src_.substr(pos_, n)), line, col};
      advance(n);
      return tok;
    };
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t n = 1;
      while (pos_ + n < src_.size() && (std::islower(static_cast<unsigned char>(src_[pos_ + n])) ||
                                        std::isdigit(static_cast<unsigned char>(src_[pos_ + n])) ||
                                        src_[pos_ + n] == '_'))
        ++n;
      const std::string_view word = src_.substr(pos_, n);
      Tok t = Tok::Ident;
      if (word == "bot") t = Tok::Bot;
      else if (word == "top") t = Tok::Top;
      else if (word == "inc") t = Tok::Inc;
      else if (word == "ind") t = Tok::Ind;
      return take(t, n);
    }
    if (starts_with("NE")) return take(Tok::NonEmpty, 2);
    if (c == 'E') return take(Tok::Exists, 1);
    if (starts_with("\\/+")) return take(Tok::NeSplit, 3);
    if (starts_with("\\/")) return take(Tok::Split, 2);
    if (starts_with("||")) return take(Tok::Or, 2);
    if (starts_with("<>")) return take(Tok::Dia, 2);
    if (starts_with("[]")) return take(Tok::Box, 2);
    switch (c) {
      case '(': return take(Tok::LParen, 1);
      case ')': return take(Tok::RParen, 1);
      case ',': return take(Tok::Comma, 1);
      case ';': return take(Tok::Semi, 1);
      case '&': return take(Tok::Amp, 1);
      case '~': return take(Tok::Tilde, 1);
      case '.': return take(Tok::Dot, 1);
      case '=': return take(Tok::Equals, 1);
      default: break;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }

 private:
  bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance(1);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

bool contains_team_atom(const Formula& f) {
  if (f.is_team_atom()) return true;
  if (f.is_binary()) return contains_team_atom(f.left()) || contains_team_atom(f.right());
  if (f.kind() == Kind::Dia || f.kind() == Kind::Box || f.kind() == Kind::Exists) return contains_team_atom(f.body());
  return false;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { cur_ = lex_.next(); }

  Formula parse_all() {
    Formula f = parse_or();
    if (cur_.tok != Tok::End) fail("unexpected '" + cur_.text + "' after formula");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, cur_.line, cur_.column); }
  [[noreturn]] void fail_at(const Token& at, const std::string& msg) const {
    throw ParseError(msg, at.line, at.column);
  }

  Token consume() {
    Token t = cur_;
    cur_ = lex_.next();
    return t;
  }

  Token expect(Tok t, const char* what) {
    if (cur_.tok != t)
      fail(std::string("expected ") + what + (cur_.tok == Tok::End ? " at end of input" : ", found '" + cur_.text + "'"));
    return consume();
  }

  Formula parse_or() {
    Formula f = parse_split();
    while (cur_.tok == Tok::Or) {
      consume();
      f = Formula::disj(f, parse_split());
    }
    return f;
  }

  Formula parse_split() {
    Formula f = parse_and();
    while (cur_.tok == Tok::Split || cur_.tok == Tok::NeSplit) {
      const bool ne = consume().tok == Tok::NeSplit;
      Formula r = parse_and();
      f = ne ? Formula::nesplit(f, r) : Formula::split(f, r);
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (cur_.tok == Tok::Amp) {
      consume();
      f = Formula::conj(f, parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    switch (cur_.tok) {
      case Tok::Tilde: {
        consume();
        if (cur_.tok != Tok::Ident) fail("negation applies to propositions only");
        return Formula::neg_prop(consume().text);
      }
      case Tok::Dia:
        consume();
        return Formula::dia(parse_unary());
      case Tok::Box:
        consume();
        return Formula::box(parse_unary());
      case Tok::Exists: {
        consume();
        const Token var = expect(Tok::Ident, "a proposition after E");
        expect(Tok::Dot, "'.' after the quantified proposition");
        return Formula::exists(var.text, parse_unary());
      }
      default:
        return parse_primary();
    }
  }

  Formula parse_primary() {
    const Token t = cur_;
    switch (t.tok) {
      case Tok::Ident: consume(); return Formula::prop(t.text);
      case Tok::Bot: consume(); return Formula::bottom();
      case Tok::Top: consume(); return Formula::top();
      case Tok::NonEmpty: consume(); return Formula::non_empty();
      case Tok::LParen: {
        consume();
        Formula f = parse_or();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Equals: {
        consume();
        expect(Tok::LParen, "'(' after '='");
        auto args = parse_list();
        expect(Tok::Semi, "';' separating dependence arguments from the target");
        Formula target = parse_atom_argument();
        expect(Tok::RParen, "')' closing the dependence atom");
        return Formula::dep(std::move(args), std::move(target));
      }
      case Tok::Inc:
      case Tok::Ind: {
        consume();
        expect(Tok::LParen, "'(' after atom name");
        auto left = parse_list();
        expect(Tok::Semi, "';' separating the atom's argument lists");
        auto right = parse_list();
        expect(Tok::RParen, "')' closing the atom");
        if (t.tok == Tok::Inc) {
          if (left.size() != right.size())
            fail_at(t, "inclusion atom arity mismatch: " + std::to_string(left.size()) + " vs " +
                           std::to_string(right.size()));
          return Formula::inc(std::move(left), std::move(right));
        }
        return Formula::ind(std::move(left), std::move(right));
      }
      case Tok::End:
        fail("unexpected end of input");
      default:
        fail("unexpected '" + t.text + "'");
    }
  }

  // Arguments of team atoms are full expressions checked for classicality,
  // so the error points at the offending argument.
  Formula parse_atom_argument() {
    const Token at = cur_;
    Formula f = parse_or();
    if (!f.is_classical()) {
      if (contains_team_atom(f)) fail_at(at, "team atoms cannot be nested inside team atoms");
      fail_at(at, "team atom arguments must be classical (literals, bot, top, &, \\/, <>, [])");
    }
    return f;
  }

  std::vector<Formula> parse_list() {
    std::vector<Formula> out;
    if (cur_.tok == Tok::Semi || cur_.tok == Tok::RParen) return out;
    out.push_back(parse_atom_argument());
    while (cur_.tok == Tok::Comma) {
      consume();
      out.push_back(parse_atom_argument());
    }
    return out;
  }

  Lexer lex_;
  Token cur_;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace tl
