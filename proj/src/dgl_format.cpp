#include "dglforge/dgl_format.hpp"

#include <cctype>
#include <sstream>

namespace dglforge {

ParseError::ParseError(Kind kind, int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " +
                         std::string(kind_name(kind)) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {}

std::string_view kind_name(ParseError::Kind k) {
  switch (k) {
    case ParseError::Kind::Syntax: return "syntax error";
    case ParseError::Kind::UnknownGenerator: return "unknown generator";
    case ParseError::Kind::DegreeMismatch: return "degree mismatch";
    case ParseError::Kind::Filtration: return "filtration error";
  }
  return "error";
}

namespace {

using Kind = ParseError::Kind;

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Cursor {
 public:
  Cursor(std::string_view text, int line, int column_offset = 0)
      : text_(text), line_(line), offset_(column_offset) {}

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(Kind::Syntax, std::string("expected '") + c + "'" + found());
  }
  int column() const { return offset_ + static_cast<int>(pos_) + 1; }
  [[noreturn]] void fail(Kind k, const std::string& msg, std::optional<int> col = std::nullopt) const {
    throw ParseError(k, line_, col.value_or(column()), msg);
  }
  std::string found() {
    if (at_end()) return ", found end of line";
    return std::string(", found '") + text_[pos_] + "'";
  }

  /// Identifier with primes and an optional balanced parenthesised part.
  std::string name() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail(Kind::Syntax, "expected a name" + found());
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    primes();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      int depth = 0;
      const int open = column();
      do {
        if (pos_ >= text_.size()) fail(Kind::Syntax, "unbalanced '(' in name", open);
        if (text_[pos_] == '(') ++depth;
        if (text_[pos_] == ')') --depth;
        ++pos_;
      } while (depth > 0);
      primes();
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::optional<Rational> rational() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) return std::nullopt;
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      const std::size_t den = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == den) fail(Kind::Syntax, "expected a denominator" + found());
    }
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const std::invalid_argument& e) {
      fail(Kind::Syntax, e.what(), offset_ + static_cast<int>(start) + 1);
    }
  }

  std::string_view rest() const { return text_.substr(pos_); }

 private:
  void primes() {
    while (pos_ < text_.size() && text_[pos_] == '\'') ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int offset_;
};

/// Value with its degree; the literal 0 has none.
struct Value {
  LieElement e;
  std::optional<int> degree;
};

class ExpressionParser {
 public:
  ExpressionParser(Cursor& c, const Alphabet& a) : c_(c), a_(a) {}

  Value expr() {
    Value out;
    bool first = true;
    for (;;) {
      const int col = c_.column();
      Rational sign(1);
      if (c_.accept('-'))
        sign = -1;
      else if (!c_.accept('+') && !first)
        break;
      Value t = term();
      combine(out, t, sign, col);
      first = false;
    }
    return out;
  }

 private:
  void combine(Value& out, const Value& t, const Rational& sign, int col) {
    if (t.degree && out.degree && *t.degree != *out.degree)
      c_.fail(Kind::DegreeMismatch,
              "term of degree " + std::to_string(*t.degree) + " in a sum of degree " + std::to_string(*out.degree), col);
    if (t.degree) out.degree = t.degree;
    out.e += sign * t.e;
  }

  Value term() {
    const std::optional<Rational> q = c_.rational();
    if (q) {
      const char next = c_.peek();
      if (next == '*') {
        c_.expect('*');
      } else if (next != '[' && !ident_start(next)) {
        if (!q->is_zero()) c_.fail(Kind::Syntax, "a nonzero constant is not a Lie element");
        return {};
      }
    }
    Value f = factor();
    if (q) f.e *= *q;
    return f;
  }

  Value factor() {
    const int col = c_.column();
    if (c_.accept('[')) {
      Value x = expr();
      c_.expect(',');
      Value y = expr();
      c_.expect(']');
      if (!x.degree || !y.degree) return {};
      Value out{bracket(x.e, y.e), *x.degree + *y.degree};
      return out;
    }
    if (!ident_start(c_.peek())) c_.fail(Kind::Syntax, "expected a name or '['" + c_.found());
    const std::string name = c_.name();
    const auto l = a_.find(name);
    if (!l) c_.fail(Kind::UnknownGenerator, "'" + name + "' is not declared", col);
    return {LieElement::generator(*l, a_.degree(*l)), a_.degree(*l)};
  }

  Cursor& c_;
  const Alphabet& a_;
};

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

struct GenLine {
  Generator g;
  SourceLocation loc;
};

struct DLine {
  std::string name;
  SourceLocation name_loc;
  std::string_view expr;
  int expr_offset = 0;
  int line = 0;
};

int parse_int(Cursor& c, const std::string& what) {
  const int col = c.column();
  auto q = c.rational();
  if (!q || denominator(*q) != 1) c.fail(Kind::Syntax, "expected an integer " + what, col);
  return static_cast<int>(numerator(*q));
}

}  // namespace

LieElement parse_expression(std::string_view text, const Alphabet& alphabet, int line) {
  Cursor c(text, line);
  ExpressionParser parser(c, alphabet);
  Value v = parser.expr();
  if (!c.at_end()) c.fail(Kind::Syntax, "unexpected input" + c.found());
  return v.e;
}

DglFile parse_dgl(std::string_view text) {
  std::vector<GenLine> gens;
  std::vector<DLine> dlines;
  int lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = strip_comment(text.substr(start, end - start));
    ++lineno;
    start = end + 1;
    Cursor c(raw, lineno);
    if (c.at_end()) continue;
    const int kw_col = c.column();
    if (!ident_start(c.peek())) c.fail(Kind::Syntax, "expected 'gen' or 'd'" + c.found());
    const std::string keyword = c.name();
    if (keyword == "gen") {
      GenLine g;
      g.loc = {lineno, c.column() + 1};
      g.g.name = c.name();
      g.g.degree = parse_int(c, "degree");
      if (g.g.degree < 1) c.fail(Kind::DegreeMismatch, "generator degree must be positive", g.loc.column);
      if (!c.at_end()) {
        const int col = c.column();
        if (c.name() != "filt") c.fail(Kind::Syntax, "expected 'filt'", col);
        g.g.filtration = parse_int(c, "filtration");
        if (*g.g.filtration < 1) c.fail(Kind::Filtration, "filtration must be positive", col);
      }
      if (!c.at_end()) c.fail(Kind::Syntax, "unexpected input" + c.found());
      gens.push_back(std::move(g));
    } else if (keyword == "d") {
      DLine d;
      d.line = lineno;
      d.name_loc = {lineno, c.column() + 1};
      d.name = c.name();
      c.expect('=');
      c.skip_space();
      d.expr = c.rest();
      d.expr_offset = c.column() - 1;
      dlines.push_back(d);
    } else {
      c.fail(Kind::Syntax, "unknown keyword '" + keyword + "'", kw_col);
    }
  }

  DglFile out;
  Alphabet alphabet;
  std::size_t with_filt = 0;
  for (const auto& g : gens) {
    if (alphabet.find(g.g.name))
      throw ParseError(Kind::Syntax, g.loc.line, g.loc.column, "generator '" + g.g.name + "' declared twice");
    alphabet.add(g.g);
    out.locations.push_back(g.loc);
    if (g.g.filtration) ++with_filt;
  }
  if (with_filt != 0 && with_filt != gens.size())
    for (const auto& g : gens)
      if (!g.g.filtration)
        throw ParseError(Kind::Filtration, g.loc.line, g.loc.column,
                         "'" + g.g.name + "' has no filt while other generators do");

  DglPresentation p(alphabet);
  std::vector<bool> seen(alphabet.size(), false);
  for (const auto& d : dlines) {
    const auto l = alphabet.find(d.name);
    if (!l) throw ParseError(Kind::UnknownGenerator, d.line, d.name_loc.column, "'" + d.name + "' is not declared");
    if (seen[*l]) throw ParseError(Kind::Syntax, d.line, d.name_loc.column, "second differential for '" + d.name + "'");
    seen[*l] = true;
    Cursor c(d.expr, d.line, d.expr_offset);
    ExpressionParser parser(c, alphabet);
    Value v = parser.expr();
    if (!c.at_end()) c.fail(Kind::Syntax, "unexpected input" + c.found());
    const int want = alphabet.degree(*l) - 1;
    if (v.degree && *v.degree != want)
      throw ParseError(Kind::DegreeMismatch, d.line, d.expr_offset + 1,
                       "d " + d.name + " has degree " + std::to_string(*v.degree) + ", expected " + std::to_string(want));
    p.set_differential(*l, LieElement::from_coords(v.e.coords(), want));
  }

  if (with_filt == gens.size() && !gens.empty()) {
    const auto f = p.declared_filtration();
    for (Letter l : alphabet.letters()) {
      const int s = f->stage[l];
      if (!in_subalgebra_by_support(p.differential(l), f->below(s)))
        throw ParseError(Kind::Filtration, out.locations[l].line, out.locations[l].column,
                         "d " + alphabet[l].name + " does not lie in the generators of filtration < " + std::to_string(s));
    }
    out.has_filtration = true;
  }
  out.presentation = std::move(p);
  return out;
}

std::string print_dgl(const DglPresentation& p) {
  std::ostringstream os;
  const Alphabet& a = p.alphabet();
  for (Letter l : a.letters()) {
    os << "gen " << a[l].name << " " << a[l].degree;
    if (a[l].filtration) os << " filt " << *a[l].filtration;
    os << "\n";
  }
  for (Letter l : a.letters()) os << "d " << a[l].name << " = " << to_string(p.differential(l), a) << "\n";
  return os.str();
}

}  // namespace dglforge
