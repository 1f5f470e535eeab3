#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pnt/lambda.hpp"
#include "pnt/nominal.hpp"
#include "pnt/unify.hpp"

// Line-oriented text format:
//   % comment
//   X : comb - {a0} + {b1}
//   f([a0](id*X), a0) ?= f([b0]a1, [b0]b0)
//   (a0 a1)*X <| comb
//   a0 # f(X)
//   context a0 # X, a1 # Y
//   vars X, Y
//   X := [a0]a0
namespace pnt {

// ---------------------------------------------------------------- printing

inline std::string to_string(Atom a) {
  return (a.half == Half::LT ? "a" : "b") + std::to_string(a.index);
}

inline std::string to_string(const Vector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + "]";
}

// Disjoint cycles ordered by least atom; the cycle c1 -> c2 -> ... -> ck is
// written (c1 ck)...(c1 c2).
inline std::string to_string(const Permutation& p) {
  if (p.is_id()) return "id";
  std::set<Atom> seen;
  std::string s;
  for (auto& [a, img] : p.pairs()) {
    if (seen.count(a)) continue;
    std::vector<Atom> cyc{a};
    seen.insert(a);
    for (Atom c = p(a); c != a; c = p(c)) {
      cyc.push_back(c);
      seen.insert(c);
    }
    for (std::size_t i = cyc.size() - 1; i >= 1; --i)
      s += "(" + to_string(cyc[0]) + " " + to_string(cyc[i]) + ")";
  }
  return s;
}

inline std::string set_literal(const std::vector<Atom>& as) {
  std::string s = "{";
  for (std::size_t i = 0; i < as.size(); ++i) s += (i ? ", " : "") + to_string(as[i]);
  return s + "}";
}

inline std::string to_string(const AtomSet& s) {
  std::vector<Atom> excl, incl;
  for (auto i : s.lt_finite()) (s.lt_cofinite() ? excl : incl).push_back(lt(i));
  for (auto i : s.gt_finite()) (s.gt_cofinite() ? excl : incl).push_back(gt(i));
  std::string base;
  if (s.lt_cofinite()) base = "comb";
  if (s.gt_cofinite()) base += base.empty() ? "gt" : " + gt";
  if (base.empty()) return set_literal(incl);
  if (!excl.empty()) base += " - " + set_literal(excl);
  if (!incl.empty()) base += " + " + set_literal(incl);
  return base;
}

inline std::string to_string(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Atom:
      return to_string(t.atom());
    case Term::Kind::App: {
      std::string s = t.former() + "(";
      for (std::size_t i = 0; i < t.args().size(); ++i)
        s += (i ? ", " : "") + to_string(t.args()[i]);
      return s + ")";
    }
    case Term::Kind::Abs: {
      std::string body = to_string(t.body());
      if (t.body().is_susp()) body = "(" + body + ")";
      return "[" + to_string(t.atom()) + "]" + body;
    }
    case Term::Kind::Susp:
      return to_string(t.perm()) + "*" + t.unknown().name;
  }
  return "?";
}

inline std::string to_string(const Equality& e) { return to_string(e.lhs) + " ?= " + to_string(e.rhs); }
inline std::string to_string(const Inclusion& i) {
  return to_string(i.term) + " <| " + to_string(i.target);
}
inline std::string decl_line(const Unknown& x) { return x.name + " : " + to_string(x.sort); }

// One "X := t" line per binding, ordered by unknown.
inline std::string to_string(const Substitution& th) {
  std::string s;
  for (auto& [x, t] : th.bindings()) s += x.name + " := " + to_string(t) + "\n";
  return s;
}

inline std::string to_string(const LTerm& g);

namespace detail {

inline std::string l_arg(const LTerm& g) {
  if (g.is_app() || g.is_lam()) return "(" + to_string(g) + ")";
  return to_string(g);
}

}  // namespace detail

inline std::string to_string(const LTerm& g) {
  switch (g.kind()) {
    case LTerm::Kind::Atom:
      return to_string(g.atom());
    case LTerm::Kind::Unknown:
      return g.unknown().name;
    case LTerm::Kind::Former:
      return g.former();
    case LTerm::Kind::Lam:
      return "\\" + to_string(g.atom()) + ". " + to_string(g.body());
    case LTerm::Kind::App: {
      auto [head, args] = spine(g);
      std::string s = head.is_lam() ? "(" + to_string(head) + ")" : to_string(head);
      for (auto& a : args) s += " " + detail::l_arg(a);
      return s;
    }
  }
  return "?";
}

inline std::string to_string(const LEquality& e) { return to_string(e.lhs) + " ?= " + to_string(e.rhs); }

inline std::ostream& operator<<(std::ostream& os, Atom a) { return os << to_string(a); }
inline std::ostream& operator<<(std::ostream& os, const Permutation& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const AtomSet& s) { return os << to_string(s); }
inline std::ostream& operator<<(std::ostream& os, const Term& t) { return os << to_string(t); }
inline std::ostream& operator<<(std::ostream& os, const Equality& e) { return os << to_string(e); }
inline std::ostream& operator<<(std::ostream& os, const Inclusion& i) { return os << to_string(i); }
inline std::ostream& operator<<(std::ostream& os, const Substitution& th) { return os << to_string(th); }
inline std::ostream& operator<<(std::ostream& os, const LTerm& g) { return os << to_string(g); }
inline std::ostream& operator<<(std::ostream& os, const Unknown& x) { return os << decl_line(x); }

// ----------------------------------------------------------------- parsing

namespace detail {

struct Token {
  enum Kind { Ident, AtomTok, Punct, End } kind = End;
  std::string text;
  Atom atom;
  std::size_t col = 0;
};

inline bool atom_text(const std::string& s, Atom& out) {
  if (s.size() < 2 || (s[0] != 'a' && s[0] != 'b')) return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  if (s.size() > 2 && s[1] == '0') return false;
  unsigned long v = std::stoul(s.substr(1));
  out = s[0] == 'a' ? lt(static_cast<std::uint32_t>(v)) : gt(static_cast<std::uint32_t>(v));
  return true;
}

class Lexer {
 public:
  Lexer(const std::string& line, std::size_t lineno) : lineno_(lineno) {
    std::size_t i = 0;
    while (i < line.size()) {
      char c = line[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      Token t;
      t.col = i + 1;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
        if (std::isupper(static_cast<unsigned char>(c)))
          while (j + 1 < line.size() && line[j] == '.' && std::isdigit(static_cast<unsigned char>(line[j + 1]))) {
            ++j;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
          }
        t.text = line.substr(i, j - i);
        t.kind = atom_text(t.text, t.atom) ? Token::AtomTok : Token::Ident;
        i = j;
      } else {
        static const char* two[] = {"?=", "<|", ":="};
        t.kind = Token::Punct;
        t.text = std::string(1, c);
        for (const char* p : two)
          if (line.compare(i, 2, p) == 0) t.text = p;
        if (std::string("()[]{},*+-:#=\\.").find(c) == std::string::npos && t.text.size() == 1)
          fail(t.col, std::string("unexpected character '") + c + "'");
        i += t.text.size();
      }
      toks_.push_back(t);
    }
    Token end;
    end.col = line.size() + 1;
    toks_.push_back(end);
  }

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool at_punct(const char* p, std::size_t k = 0) const {
    return peek(k).kind == Token::Punct && peek(k).text == p;
  }
  bool at_end() const { return peek().kind == Token::End; }
  void expect(const char* p) {
    if (!at_punct(p)) fail(peek().col, std::string("expected '") + p + "'");
    next();
  }
  Atom expect_atom() {
    if (peek().kind != Token::AtomTok) fail(peek().col, "expected an atom");
    return next().atom;
  }
  void expect_end() {
    if (!at_end()) fail(peek().col, "unexpected '" + peek().text + "'");
  }
  std::size_t find_punct(const char* p) const {
    for (std::size_t k = pos_; k < toks_.size(); ++k)
      if (toks_[k].kind == Token::Punct && toks_[k].text == p) return k - pos_;
    return std::string::npos;
  }

  [[noreturn]] void fail(std::size_t col, const std::string& msg) const {
    throw Error(ErrorKind::Parse,
                "line " + std::to_string(lineno_) + ", col " + std::to_string(col) + ": " + msg);
  }
  std::size_t lineno() const { return lineno_; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t lineno_;
};

inline bool is_unknown_name(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

}  // namespace detail

struct Declarations {
  std::map<std::string, Unknown> by_name;
  bool auto_declare = false;  // nominal files: every unknown gets comb

  Unknown lookup(const std::string& name, detail::Lexer& lx, std::size_t col) const {
    auto it = by_name.find(name);
    if (it != by_name.end()) return it->second;
    if (auto_declare) return {name, AtomSet::comb()};
    throw Error(ErrorKind::Undeclared, "line " + std::to_string(lx.lineno()) + ", col " +
                                           std::to_string(col) + ": undeclared unknown " + name);
  }
};

namespace detail {

inline AtomSet parse_set_base(Lexer& lx) {
  const Token& t = lx.peek();
  if (t.kind == Token::Ident && t.text == "comb") {
    lx.next();
    return AtomSet::comb();
  }
  if (t.kind == Token::Ident && t.text == "gt") {
    lx.next();
    return AtomSet::upper();
  }
  if (lx.at_punct("{")) {
    lx.next();
    AtomSet s;
    if (!lx.at_punct("}")) {
      s.insert(lx.expect_atom());
      while (lx.at_punct(",")) {
        lx.next();
        s.insert(lx.expect_atom());
      }
    }
    lx.expect("}");
    return s;
  }
  lx.fail(t.col, "expected comb, gt or a set literal");
}

inline AtomSet parse_set(Lexer& lx) {
  AtomSet s = parse_set_base(lx);
  while (lx.at_punct("+") || lx.at_punct("-")) {
    bool plus = lx.next().text == "+";
    AtomSet r = parse_set_base(lx);
    s = plus ? (s | r) : (s - r);
  }
  return s;
}

inline bool at_swap(const Lexer& lx) {
  return lx.at_punct("(") && lx.peek(1).kind == Token::AtomTok &&
         lx.peek(2).kind == Token::AtomTok && lx.at_punct(")", 3);
}

inline Term parse_term(Lexer& lx, const Declarations& d);

inline Term parse_susp_tail(Lexer& lx, const Declarations& d, Permutation pi) {
  lx.expect("*");
  Token x = lx.next();
  if (x.kind != Token::Ident || !is_unknown_name(x.text)) lx.fail(x.col, "expected an unknown");
  return susp(std::move(pi), d.lookup(x.text, lx, x.col));
}

inline Term parse_term(Lexer& lx, const Declarations& d) {
  const Token& t = lx.peek();
  if (t.kind == Token::AtomTok) return at(lx.next().atom);
  if (lx.at_punct("[")) {
    lx.next();
    Atom a = lx.expect_atom();
    lx.expect("]");
    return abst(a, parse_term(lx, d));
  }
  if (at_swap(lx)) {
    Permutation pi;
    while (at_swap(lx)) {
      lx.next();
      Atom a = lx.next().atom;
      Atom b = lx.next().atom;
      lx.next();
      pi = pi * Permutation::swap(a, b);
    }
    return parse_susp_tail(lx, d, std::move(pi));
  }
  if (lx.at_punct("(")) {
    lx.next();
    Term r = parse_term(lx, d);
    lx.expect(")");
    return r;
  }
  if (t.kind == Token::Ident) {
    Token id = lx.next();
    if (id.text == "id" && lx.at_punct("*")) return parse_susp_tail(lx, d, Permutation());
    if (is_unknown_name(id.text)) return var(d.lookup(id.text, lx, id.col));
    std::vector<Term> args;
    if (lx.at_punct("(")) {
      lx.next();
      if (!lx.at_punct(")")) {
        args.push_back(parse_term(lx, d));
        while (lx.at_punct(",")) {
          lx.next();
          args.push_back(parse_term(lx, d));
        }
      }
      lx.expect(")");
    }
    return app(id.text, std::move(args));
  }
  lx.fail(t.col, "expected a term");
}

}  // namespace detail

inline Term parse_term(const std::string& text, const Declarations& d) {
  detail::Lexer lx(text, 1);
  Term t = detail::parse_term(lx, d);
  lx.expect_end();
  return t;
}

inline AtomSet parse_set(const std::string& text) {
  detail::Lexer lx(text, 1);
  AtomSet s = detail::parse_set(lx);
  lx.expect_end();
  return s;
}

inline Vector parse_atom_list(const std::string& text) {
  detail::Lexer lx(text, 1);
  Vector v;
  if (lx.at_punct("[")) lx.next();
  while (!lx.at_end() && !lx.at_punct("]")) {
    v.push_back(lx.expect_atom());
    if (lx.at_punct(",")) lx.next();
  }
  if (lx.at_punct("]")) lx.next();
  lx.expect_end();
  std::set<Atom> seen(v.begin(), v.end());
  if (seen.size() != v.size()) throw Error(ErrorKind::Parse, "repeated atom in vector");
  return v;
}

struct ParsedFile {
  Declarations decls;
  std::vector<Unknown> decl_order;
  Problem equalities;
  IncProblem inclusions;
  NProblem goals;  // equalities and freshness goals in file order
  NContext context;
  std::vector<std::pair<Unknown, Term>> bindings;
  std::optional<std::set<Unknown>> vars;
};

inline std::string strip_comment(const std::string& line) {
  auto p = line.find('%');
  return p == std::string::npos ? line : line.substr(0, p);
}

// Declarations are read first so they may appear anywhere in the file.
// Declarations in inherit are visible too, for substitution files that refer
// to a problem's unknowns.
inline ParsedFile parse_file(const std::string& text, bool nominal = false,
                             const Declarations* inherit = nullptr) {
  ParsedFile f;
  if (inherit) f.decls = *inherit;
  f.decls.auto_declare = nominal;
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l)) lines.push_back(strip_comment(l));
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    detail::Lexer lx(lines[i], i + 1);
    if (lx.peek().kind != detail::Token::Ident || !lx.at_punct(":", 1)) continue;
    detail::Token name = lx.next();
    if (!detail::is_unknown_name(name.text)) lx.fail(name.col, "unknown names start uppercase");
    lx.next();
    AtomSet s = detail::parse_set(lx);
    lx.expect_end();
    if (!s.is_permission_set())
      throw Error(ErrorKind::BadPermissionSet, "line " + std::to_string(i + 1) + ": sort of " +
                                                   name.text + " is not a permission set");
    Unknown x{name.text, s};
    auto prev = f.decls.by_name.find(name.text);
    if (prev != f.decls.by_name.end()) {
      bool inherited = inherit && inherit->by_name.count(name.text);
      if (!inherited || !(prev->second == x))
        lx.fail(name.col, "unknown " + name.text + " declared twice");
      continue;
    }
    f.decls.by_name.emplace(x.name, x);
    f.decl_order.push_back(x);
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    detail::Lexer lx(lines[i], i + 1);
    if (lx.at_end()) continue;
    const detail::Token& t0 = lx.peek();
    if (t0.kind == detail::Token::Ident && lx.at_punct(":", 1)) continue;
    if (t0.kind == detail::Token::Ident && t0.text == "SUCCESS" && lx.peek(1).kind == detail::Token::End)
      continue;
    if (t0.kind == detail::Token::Ident && t0.text == "vars") {
      lx.next();
      std::set<Unknown> vs;
      while (!lx.at_end()) {
        detail::Token x = lx.next();
        if (x.kind != detail::Token::Ident) lx.fail(x.col, "expected an unknown");
        vs.insert(f.decls.lookup(x.text, lx, x.col));
        if (!lx.at_end()) lx.expect(",");
      }
      f.vars = vs;
      continue;
    }
    if (t0.kind == detail::Token::Ident && t0.text == "context") {
      lx.next();
      while (!lx.at_end()) {
        Atom a = lx.expect_atom();
        lx.expect("#");
        detail::Token x = lx.next();
        if (x.kind != detail::Token::Ident || !detail::is_unknown_name(x.text))
          lx.fail(x.col, "expected an unknown");
        f.context.insert({a, x.text});
        if (!lx.at_end()) lx.expect(",");
      }
      continue;
    }
    if (t0.kind == detail::Token::Ident && lx.at_punct(":=", 1)) {
      detail::Token x = lx.next();
      lx.next();
      Unknown u = f.decls.lookup(x.text, lx, x.col);
      Term t = detail::parse_term(lx, f.decls);
      lx.expect_end();
      f.bindings.push_back({u, t});
      continue;
    }
    if (t0.kind == detail::Token::AtomTok && lx.at_punct("#", 1)) {
      Atom a = lx.next().atom;
      lx.next();
      Term t = detail::parse_term(lx, f.decls);
      lx.expect_end();
      f.goals.push_back({true, a, t, t});
      continue;
    }
    Term lhs = detail::parse_term(lx, f.decls);
    if (lx.at_punct("?=")) {
      lx.next();
      Term rhs = detail::parse_term(lx, f.decls);
      lx.expect_end();
      f.equalities.push_back({lhs, rhs});
      f.goals.push_back({false, Atom{}, lhs, rhs});
    } else if (lx.at_punct("<|")) {
      lx.next();
      AtomSet s = detail::parse_set(lx);
      lx.expect_end();
      f.inclusions.push_back({lhs, s});
    } else {
      lx.fail(lx.peek().col, "expected '?=' or '<|'");
    }
  }
  return f;
}

inline Substitution bindings_subst(const ParsedFile& f) {
  Substitution th;
  for (auto& [x, t] : f.bindings) th.bind(x, t);
  return th;
}

inline NSubst bindings_nsubst(const ParsedFile& f) {
  NSubst th;
  for (auto& [x, t] : f.bindings) th.insert_or_assign(x.name, t);
  return th;
}

}  // namespace pnt
