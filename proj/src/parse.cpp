#include "lal/parse.hpp"

#include <cctype>
#include <map>
#include <vector>

namespace lal {

namespace {

enum class Tok {
  Ident,
  Num,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Backslash,
  Dot,
  Colon,
  Semi,
  Comma,
  Eq,
  Bang,
  Dollar,
  Plus,
  Minus,
  Star,
  Lolli,
  KwLet,
  KwIn,
  KwGet,
  KwSet,
  KwFold,
  KwUnfold,
  KwMu,
  KwLevel,
  KwRegion,
  KwDepth,
  KwType,
  KwUnit,
  KwNat,
  KwReg,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::uint64_t num = 0;
  std::size_t line = 1;
  std::size_t col = 1;
};

const std::map<std::string, Tok> kKeywords = {
    {"let", Tok::KwLet},       {"in", Tok::KwIn},       {"get", Tok::KwGet},
    {"set", Tok::KwSet},       {"fold", Tok::KwFold},   {"unfold", Tok::KwUnfold},
    {"mu", Tok::KwMu},         {"level", Tok::KwLevel}, {"region", Tok::KwRegion},
    {"depth", Tok::KwDepth},   {"type", Tok::KwType},   {"Unit", Tok::KwUnit},
    {"Nat", Tok::KwNat},       {"Reg", Tok::KwReg},
};

bool ident_start(char c) { return std::isalpha((unsigned char)c) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum((unsigned char)c) || c == '_' || c == '\'';
}

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string text, std::uint64_t num = 0) {
    out.push_back(Token{k, std::move(text), num, line, col});
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace((unsigned char)c)) {
      ++col;
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string word = src.substr(i, j - i);
      auto kw = kKeywords.find(word);
      push(kw == kKeywords.end() ? Tok::Ident : kw->second, word);
      col += j - i;
      i = j;
      continue;
    }
    if (std::isdigit((unsigned char)c)) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit((unsigned char)src[j])) ++j;
      std::string digits = src.substr(i, j - i);
      try {
        push(Tok::Num, digits, std::stoull(digits));
      } catch (const std::out_of_range&) {
        throw SyntaxError(line, col, "integer literal out of range: " + digits);
      }
      col += j - i;
      i = j;
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == 'o' &&
        (i + 2 >= src.size() || !ident_char(src[i + 2]))) {
      push(Tok::Lolli, "-o");
      col += 2;
      i += 2;
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBracket; break;
      case ']': k = Tok::RBracket; break;
      case '\\': k = Tok::Backslash; break;
      case '.': k = Tok::Dot; break;
      case ':': k = Tok::Colon; break;
      case ';': k = Tok::Semi; break;
      case ',': k = Tok::Comma; break;
      case '=': k = Tok::Eq; break;
      case '!': k = Tok::Bang; break;
      case '$': k = Tok::Dollar; break;
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      default:
        throw SyntaxError(line, col, std::string("unexpected character '") + c + "'");
    }
    push(k, std::string(1, c));
    ++col;
    ++i;
  }
  out.push_back(Token{Tok::End, "<end>", 0, line, col});
  return out;
}

const char* describe(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Num: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Backslash: return "'\\'";
    case Tok::Dot: return "'.'";
    case Tok::Colon: return "':'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Eq: return "'='";
    case Tok::Bang: return "'!'";
    case Tok::Dollar: return "'$'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Lolli: return "'-o'";
    case Tok::KwLet: return "'let'";
    case Tok::KwIn: return "'in'";
    case Tok::KwGet: return "'get'";
    case Tok::KwSet: return "'set'";
    case Tok::KwFold: return "'fold'";
    case Tok::KwUnfold: return "'unfold'";
    case Tok::KwMu: return "'mu'";
    case Tok::KwLevel: return "'level'";
    case Tok::KwRegion: return "'region'";
    case Tok::KwDepth: return "'depth'";
    case Tok::KwType: return "'type'";
    case Tok::KwUnit: return "'Unit'";
    case Tok::KwNat: return "'Nat'";
    case Tok::KwReg: return "'Reg'";
    case Tok::End: return "end of input";
  }
  return "token";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program parse_program() {
    Program prog;
    std::set<std::string> names;
    while (true) {
      if (at(Tok::KwLevel)) {
        advance();
        if (prog.level) fail("duplicate level header");
        prog.level = expect(Tok::Num, "level value").num;
        expect(Tok::Semi, "';' after level header");
        continue;
      }
      if (at(Tok::KwRegion)) {
        advance();
        Token name = expect(Tok::Ident, "region name");
        if (!names.insert(name.text).second) {
          throw SyntaxError(name.line, name.col, "duplicate region name: " + name.text);
        }
        expect(Tok::Colon, "':' after region name");
        expect(Tok::KwDepth, "'depth'");
        std::uint64_t depth = expect(Tok::Num, "region depth").num;
        expect(Tok::Comma, "',' between depth and type");
        expect(Tok::KwType, "'type'");
        TypePtr content = parse_type();
        expect(Tok::Semi, "';' after region declaration");
        prog.regions.push_back(RegionDecl{name.text, depth, content});
        regions_.insert(name.text);
        continue;
      }
      break;
    }
    prog.main = parse_term();
    expect(Tok::End, "end of program");
    return prog;
  }

  TermPtr parse_bare_term() {
    TermPtr t = parse_term();
    expect(Tok::End, "end of input");
    return t;
  }

  TypePtr parse_bare_type() {
    TypePtr t = parse_type();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<std::string> regions_;
  std::uint64_t seq_counter_ = 1;

  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok k) const { return cur().kind == k; }
  void advance() { ++pos_; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(cur().line, cur().col, msg);
  }

  Token expect(Tok k, const std::string& what) {
    if (!at(k)) {
      fail("expected " + what + ", found " + describe(cur().kind));
    }
    Token t = cur();
    advance();
    return t;
  }

  std::string binder_name() {
    Token t = expect(Tok::Ident, "binder name");
    if (regions_.count(t.text)) {
      throw SyntaxError(t.line, t.col, "region name used as binder: " + t.text);
    }
    return t.text;
  }

  TermPtr require_value(const TermPtr& t, const Token& start, const char* where) {
    if (!is_value(t)) {
      throw ValueExpected(start.line, start.col,
                          std::string(where) + " must be a syntactic value");
    }
    return t;
  }

  // ---- types

  TypePtr parse_type() {
    if (at(Tok::KwMu)) {
      advance();
      std::string v = expect(Tok::Ident, "type variable").text;
      expect(Tok::Dot, "'.' after mu binder");
      return mu_t(v, parse_type());
    }
    TypePtr lhs = parse_prefix_type();
    if (at(Tok::Lolli)) {
      advance();
      return lolli(lhs, parse_type());
    }
    return lhs;
  }

  TypePtr parse_prefix_type() {
    if (at(Tok::Bang)) {
      advance();
      return bang_t(parse_prefix_type());
    }
    if (at(Tok::Dollar)) {
      advance();
      return par_t(parse_prefix_type());
    }
    if (at(Tok::KwReg)) {
      advance();
      std::string r = expect(Tok::Ident, "region name").text;
      return reg_t(r, parse_atom_type());
    }
    return parse_atom_type();
  }

  TypePtr parse_atom_type() {
    if (at(Tok::LParen)) {
      advance();
      TypePtr t = parse_type();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (at(Tok::KwUnit)) {
      advance();
      return unit_t();
    }
    if (at(Tok::KwNat)) {
      advance();
      return nat_t();
    }
    if (at(Tok::Ident)) {
      std::string v = cur().text;
      advance();
      return tvar(v);
    }
    fail(std::string("expected a type, found ") + describe(cur().kind));
  }

  // ---- terms

  TermPtr parse_term() {
    if (at(Tok::Backslash)) {
      advance();
      std::string x = binder_name();
      expect(Tok::Colon, "':' after lambda binder");
      TypePtr ann = parse_type();
      expect(Tok::Dot, "'.' after lambda annotation");
      return lam(x, ann, parse_term());
    }
    if (at(Tok::KwLet)) {
      advance();
      bool is_bang;
      if (at(Tok::Bang)) {
        is_bang = true;
      } else if (at(Tok::Dollar)) {
        is_bang = false;
      } else {
        fail("expected '!' or '$' after 'let'");
      }
      advance();
      std::string x = binder_name();
      expect(Tok::Eq, "'=' in let binding");
      Token start = cur();
      TermPtr bound = require_value(parse_arith(), start, "let-bound term");
      expect(Tok::KwIn, "'in'");
      TermPtr body = parse_term();
      return is_bang ? let_bang(x, bound, body) : let_par(x, bound, body);
    }
    return parse_seq();
  }

  TermPtr parse_seq() {
    TermPtr lhs = parse_arith();
    if (at(Tok::Semi)) {
      advance();
      TermPtr rhs = parse_term();
      // M ; N is (\z:Unit. N) M with z not free in N.
      auto avoid = free_vars(rhs);
      std::string z;
      do {
        z = "_seq" + std::to_string(seq_counter_++);
      } while (avoid.count(z) || regions_.count(z));
      return app(lam(z, unit_t(), rhs), lhs);
    }
    return lhs;
  }

  TermPtr parse_arith() {
    Token start = cur();
    TermPtr lhs = parse_app();
    while (at(Tok::Plus) || at(Tok::Minus) || at(Tok::Star)) {
      ArithOp op = at(Tok::Plus) ? ArithOp::Add : at(Tok::Minus) ? ArithOp::Sub : ArithOp::Mul;
      advance();
      require_value(lhs, start, "arithmetic operand");
      Token rstart = cur();
      TermPtr rhs = require_value(parse_app(), rstart, "arithmetic operand");
      lhs = arith(op, lhs, rhs);
    }
    return lhs;
  }

  bool starts_prefix() const {
    switch (cur().kind) {
      case Tok::Bang:
      case Tok::Dollar:
      case Tok::KwFold:
      case Tok::KwUnfold:
      case Tok::LParen:
      case Tok::Num:
      case Tok::Ident:
      case Tok::KwGet:
      case Tok::KwSet:
        return true;
      default:
        return false;
    }
  }

  TermPtr parse_app() {
    TermPtr t = parse_prefix();
    while (starts_prefix()) t = app(t, parse_prefix());
    return t;
  }

  TermPtr parse_prefix() {
    if (at(Tok::Bang)) {
      advance();
      return bang(parse_prefix());
    }
    if (at(Tok::Dollar)) {
      advance();
      return par(parse_prefix());
    }
    if (at(Tok::KwFold)) {
      advance();
      expect(Tok::LBracket, "'[' after 'fold'");
      TypePtr ann = parse_type();
      expect(Tok::RBracket, "']' after fold annotation");
      return fold(ann, parse_prefix());
    }
    if (at(Tok::KwUnfold)) {
      advance();
      return unfold(parse_prefix());
    }
    return parse_atom();
  }

  TermPtr parse_atom() {
    if (at(Tok::LParen)) {
      advance();
      if (at(Tok::RParen)) {
        advance();
        return unit_val();
      }
      TermPtr t = parse_term();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (at(Tok::Num)) {
      std::uint64_t v = cur().num;
      advance();
      return int_lit(v);
    }
    if (at(Tok::Ident)) {
      std::string name = cur().text;
      advance();
      return regions_.count(name) ? region_const(name) : var(name);
    }
    if (at(Tok::KwGet)) {
      advance();
      expect(Tok::LParen, "'(' after 'get'");
      std::string r = expect(Tok::Ident, "region name").text;
      expect(Tok::RParen, "')'");
      return get(r);
    }
    if (at(Tok::KwSet)) {
      advance();
      expect(Tok::LParen, "'(' after 'set'");
      std::string r = expect(Tok::Ident, "region name").text;
      expect(Tok::Comma, "',' after region name");
      Token start = cur();
      TermPtr payload = require_value(parse_term(), start, "set payload");
      expect(Tok::RParen, "')'");
      return set(r, payload);
    }
    fail(std::string("expected a term, found ") + describe(cur().kind));
  }
};

}  // namespace

Program parse_program(const std::string& source) { return Parser(lex(source)).parse_program(); }

TermPtr parse_term_str(const std::string& source) { return Parser(lex(source)).parse_bare_term(); }

TypePtr parse_type_str(const std::string& source) { return Parser(lex(source)).parse_bare_type(); }

}  // namespace lal
