#include "papc/syntax.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>
#include <vector>

#include "papc/errors.hpp"

namespace papc {

SyntaxError::SyntaxError(const std::string& message, std::size_t line, std::size_t column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

TauInPrefix::TauInPrefix(std::size_t line, std::size_t column)
    : SyntaxError("tau cannot be used as a prefix action", line, column) {}

namespace {

enum class Tok {
  LowerIdent,
  UpperIdent,
  Int,
  Dot,
  Colon,
  Define,  // :=
  Plus,
  Bar,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Tilde,
  Hash,
  Semi,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    int bracket_depth = 0;
    while (true) {
      skip_space(bracket_depth > 0);
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", line_, col_});
        return out;
      }
      const std::size_t line = line_;
      const std::size_t col = col_;
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
                src_[pos_] == '\'')) {
          advance();
        }
        std::string text(src_.substr(start, pos_ - start));
        bool upper = std::isupper(static_cast<unsigned char>(text.front())) != 0;
        out.push_back({upper ? Tok::UpperIdent : Tok::LowerIdent, std::move(text), line, col});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        out.push_back({Tok::Int, std::string(src_.substr(start, pos_ - start)), line, col});
        continue;
      }
      Tok kind;
      std::string text(1, c);
      switch (c) {
        case '.': kind = Tok::Dot; break;
        case '+': kind = Tok::Plus; break;
        case '|': kind = Tok::Bar; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '[': kind = Tok::LBracket; ++bracket_depth; break;
        case ']': kind = Tok::RBracket; if (bracket_depth > 0) --bracket_depth; break;
        case '~': kind = Tok::Tilde; break;
        case '#': kind = Tok::Hash; break;
        case ';': kind = Tok::Semi; break;
        case ':':
          if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
            advance();
            kind = Tok::Define;
            text = ":=";
          } else {
            kind = Tok::Colon;
          }
          break;
        default:
          throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
      }
      advance();
      out.push_back({kind, std::move(text), line, col});
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space(bool in_brackets) {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#' && !in_brackets) {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, bool allow_holes)
      : tokens_(Lexer(text).run()), allow_holes_(allow_holes) {}

  Term parse_single() {
    Term t = parse_par();
    expect(Tok::End, "end of input");
    return t;
  }

  ModelFile parse_bindings(bool allow_system) {
    ModelFile model;
    while (peek().kind != Tok::End) {
      const Token name = next();
      const bool is_system = allow_system && name.kind == Tok::LowerIdent && name.text == "system";
      if (name.kind != Tok::UpperIdent && !is_system)
        throw SyntaxError("expected a constant name, found " + describe(name), name.line, name.column);
      expect(Tok::Define, "':='");
      Term body = parse_par();
      expect(Tok::Semi, "';'");
      if (is_system) {
        if (model.root) throw DuplicateDefinition("system");
        model.root = std::move(body);
        continue;
      }
      if (!body.is_pure())
        throw SyntaxError("definition of '" + name.text + "' contains running actions", name.line,
                          name.column);
      if (model.definitions.find(name.text)) throw DuplicateDefinition(name.text);
      model.definitions.add(name.text, std::move(body));
    }
    return model;
  }

  std::size_t holes() const noexcept { return holes_; }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  Token expect(Tok kind, const char* what) {
    const Token& t = peek();
    if (t.kind != kind)
      throw SyntaxError(std::string("expected ") + what + ", found " + describe(t), t.line, t.column);
    return next();
  }

  Term parse_par() {
    Term left = parse_sum();
    if (peek().kind == Tok::Bar) {
      next();
      return Term::par(std::move(left), parse_par());
    }
    return left;
  }

  Term parse_sum() {
    Term left = parse_unary();
    if (peek().kind == Tok::Plus) {
      next();
      return Term::sum(std::move(left), parse_sum());
    }
    return left;
  }

  Action parse_action() {
    const Token& start = peek();
    bool complemented = false;
    if (start.kind == Tok::Tilde) {
      next();
      complemented = true;
    }
    const Token name = next();
    if (name.kind == Tok::LowerIdent && name.text == "tau") throw TauInPrefix(name.line, name.column);
    if (name.kind != Tok::LowerIdent)
      throw SyntaxError("expected an action name, found " + describe(name), name.line, name.column);
    return Action::name(name.text, complemented);
  }

  PrefixMode parse_mode() {
    const Token t = next();
    if (t.kind == Tok::Dot) return PrefixMode::Preemptive;
    if (t.kind == Tok::Colon) return PrefixMode::Conservative;
    throw SyntaxError("expected '.' or ':' after action, found " + describe(t), t.line, t.column);
  }

  Term parse_continuation() {
    const Token& at = peek();
    Term cont = parse_unary();
    if (!cont.is_pure())
      throw SyntaxError("running prefix cannot appear under a prefix", at.line, at.column);
    return cont;
  }

  Term parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Tilde:
      case Tok::LowerIdent: {
        Action action = parse_action();
        PrefixMode mode = parse_mode();
        return Term::prefix(mode, std::move(action), parse_continuation());
      }
      case Tok::LBracket: {
        const Token open = next();
        if (peek().kind == Tok::RBracket) {
          next();
          if (!allow_holes_) throw SyntaxError("unexpected context hole '[]'", open.line, open.column);
          ++holes_;
          return Term::constant(std::string(detail::kHoleName));
        }
        Action action = parse_action();
        expect(Tok::Hash, "'#'");
        const Token num = expect(Tok::Int, "an identifier number");
        Id id = 0;
        auto [ptr, ec] = std::from_chars(num.text.data(), num.text.data() + num.text.size(), id);
        if (ec != std::errc() || id == 0)
          throw SyntaxError("identifier must be a positive integer", num.line, num.column);
        expect(Tok::RBracket, "']'");
        PrefixMode mode = parse_mode();
        return Term::frozen(mode, std::move(action), id, parse_continuation());
      }
      case Tok::Int:
        if (t.text != "0") throw SyntaxError("only '0' may appear as a process", t.line, t.column);
        next();
        return Term::nil();
      case Tok::UpperIdent:
        return Term::constant(next().text);
      case Tok::LParen: {
        next();
        Term inner = parse_par();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        throw SyntaxError("expected a process, found " + describe(t), t.line, t.column);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  bool allow_holes_;
  std::size_t holes_ = 0;
};

// Binding strength of the top operator; higher binds tighter.
int level(const Term& t) {
  switch (t.kind()) {
    case TermKind::Par: return 0;
    case TermKind::Sum: return 1;
    default: return 2;
  }
}

void print(std::ostringstream& out, const Term& t, int required) {
  const bool parens = level(t) < required;
  if (parens) out << '(';
  switch (t.kind()) {
    case TermKind::Nil:
      out << '0';
      break;
    case TermKind::Const:
      out << t.name();
      break;
    case TermKind::Prefix: {
      if (auto id = t.frozen_id())
        out << '[' << t.action().to_string() << '#' << *id << ']';
      else
        out << t.action().to_string();
      out << (t.mode() == PrefixMode::Preemptive ? '.' : ':');
      print(out, t.continuation(), 2);
      break;
    }
    case TermKind::Sum:
      print(out, t.left(), 2);
      out << " + ";
      print(out, t.right(), 1);
      break;
    case TermKind::Par:
      print(out, t.left(), 1);
      out << " | ";
      print(out, t.right(), 0);
      break;
  }
  if (parens) out << ')';
}

}  // namespace

Term parse_process(std::string_view text) { return Parser(text, false).parse_single(); }

Definitions parse_definitions(std::string_view text) {
  return Parser(text, false).parse_bindings(false).definitions;
}

ModelFile parse_model(std::string_view text) { return Parser(text, false).parse_bindings(true); }

std::string format(const Term& c) {
  std::ostringstream out;
  print(out, c, 0);
  return out.str();
}

std::string format_ids(const IdSet& ids) {
  std::string out = "{";
  bool first = true;
  for (Id id : ids) {
    if (!first) out += ',';
    out += std::to_string(id);
    first = false;
  }
  out += '}';
  return out;
}

namespace detail {

Term parse_with_holes(std::string_view text, std::size_t& holes) {
  Parser parser(text, true);
  Term t = parser.parse_single();
  holes = parser.holes();
  return t;
}

}  // namespace detail

}  // namespace papc
