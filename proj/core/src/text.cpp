#include "dilp/text.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace dilp {
namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

class Parser {
 public:
  Parser(std::string_view text, const Language* lang) : text_(text), lang_(lang) {}

  Term term() {
    skip_ws();
    if (peek() == '[') return list();
    const std::size_t start = pos_;
    std::string name = ident();
    skip_ws();
    if (peek() == '(') {
      std::vector<Term> args = arguments();
      if (lang_) {
        auto arity = lang_->function_arity(name);
        if (!arity) fail("unknown function symbol '" + name + "'", start);
        if (*arity != static_cast<int>(args.size()))
          fail("function '" + name + "' expects " + std::to_string(*arity) +
                   " arguments, got " + std::to_string(args.size()),
               start);
      }
      return Term::compound(std::move(name), std::move(args));
    }
    if (is_variable(name)) return Term::variable(std::move(name));
    if (lang_ && !lang_->is_constant(name))
      fail("unknown constant '" + name + "'", start);
    return Term::constant(std::move(name));
  }

  Atom atom() {
    skip_ws();
    const std::size_t start = pos_;
    std::string name = ident();
    skip_ws();
    std::vector<Term> args;
    if (peek() == '(') args = arguments();
    if (args.empty() && (name == Atom::kTopName || name == Atom::kBottomName))
      return name == Atom::kTopName ? Atom::top() : Atom::bottom();
    if (lang_) {
      auto arity = lang_->predicate_arity(name);
      if (!arity) fail("unknown predicate '" + name + "'", start);
      if (*arity != static_cast<int>(args.size()))
        fail("predicate '" + name + "' expects " + std::to_string(*arity) +
                 " arguments, got " + std::to_string(args.size()),
             start);
    }
    return Atom(std::move(name), std::move(args));
  }

  Clause clause() {
    Atom head = atom();
    std::vector<Atom> body;
    skip_ws();
    if (peek() == ':') {
      expect(':');
      expect('-');
      body.push_back(atom());
      skip_ws();
      while (peek() == ',') {
        ++pos_;
        body.push_back(atom());
        skip_ws();
      }
    }
    skip_ws();
    if (peek() == '.') ++pos_;
    return Clause(std::move(head), std::move(body));
  }

  void finish() {
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input", pos_);
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])) != 0)
      ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError(msg + " at column " + std::to_string(at + 1), at);
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::string ident() {
    skip_ws();
    if (peek() == '*') {
      ++pos_;
      return "*";
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected identifier", start);
    return std::string(text_.substr(start, pos_ - start));
  }

  std::vector<Term> arguments() {
    expect('(');
    std::vector<Term> args;
    args.push_back(term());
    skip_ws();
    while (peek() == ',') {
      ++pos_;
      args.push_back(term());
      skip_ws();
    }
    expect(')');
    return args;
  }

  Term list() {
    const std::size_t start = pos_;
    if (lang_ && !lang_->has_list_sugar())
      fail("list notation requires f/2 and constant *", start);
    expect('[');
    skip_ws();
    if (peek() == ']') {
      ++pos_;
      return nil();
    }
    std::vector<Term> items;
    items.push_back(term());
    skip_ws();
    while (peek() == ',') {
      ++pos_;
      items.push_back(term());
      skip_ws();
    }
    std::optional<Term> tail;
    if (peek() == '|') {
      ++pos_;
      tail = term();
      skip_ws();
    }
    expect(']');
    Term result = tail ? std::move(*tail) : nil();
    for (auto it = items.rbegin(); it != items.rend(); ++it)
      result = Term::compound(std::string(kListFunctor), {std::move(*it), std::move(result)});
    return result;
  }

  static Term nil() { return Term::constant(std::string(kListNil)); }

  bool is_variable(const std::string& name) const {
    if (lang_) return lang_->is_variable(name);
    for (const auto& v : Language::default_variables())
      if (v == name) return true;
    return false;
  }

  std::string_view text_;
  const Language* lang_;
  std::size_t pos_ = 0;
};

bool is_cons(const Term& t) {
  return t.is_compound() && t.arity() == 2 && t.name() == kListFunctor;
}

bool is_nil(const Term& t) { return t.is_constant() && t.name() == kListNil; }

void print_term(const Term& t, PrintOptions opts, std::string& out) {
  if (opts.list_sugar && (is_cons(t) || is_nil(t))) {
    out += '[';
    const Term* cur = &t;
    bool first = true;
    while (is_cons(*cur)) {
      if (!first) out += ',';
      print_term(cur->arg(0), opts, out);
      first = false;
      cur = &cur->arg(1);
    }
    if (!is_nil(*cur)) {
      out += '|';
      print_term(*cur, opts, out);
    }
    out += ']';
    return;
  }
  out += t.name();
  if (!t.is_compound()) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ',';
    print_term(t.arg(i), opts, out);
  }
  out += ')';
}

void print_atom(const Atom& a, PrintOptions opts, std::string& out) {
  out += a.predicate();
  if (a.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (i) out += ',';
    print_term(a.arg(i), opts, out);
  }
  out += ')';
}

template <typename Fn>
auto parse_whole(std::string_view text, const Language* lang, Fn fn) {
  Parser p(text, lang);
  auto result = fn(p);
  p.finish();
  return result;
}

}  // namespace

Term parse_term(std::string_view text, const Language& lang) {
  return parse_whole(text, &lang, [](Parser& p) { return p.term(); });
}
Atom parse_atom(std::string_view text, const Language& lang) {
  return parse_whole(text, &lang, [](Parser& p) { return p.atom(); });
}
Clause parse_clause(std::string_view text, const Language& lang) {
  return parse_whole(text, &lang, [](Parser& p) { return p.clause(); });
}
Term parse_term(std::string_view text) {
  return parse_whole(text, nullptr, [](Parser& p) { return p.term(); });
}
Atom parse_atom(std::string_view text) {
  return parse_whole(text, nullptr, [](Parser& p) { return p.atom(); });
}
Clause parse_clause(std::string_view text) {
  return parse_whole(text, nullptr, [](Parser& p) { return p.clause(); });
}

PrintOptions print_options_for(const Language& lang) {
  return PrintOptions{.list_sugar = lang.has_list_sugar()};
}

std::string to_string(const Term& t, PrintOptions opts) {
  std::string out;
  print_term(t, opts, out);
  return out;
}

std::string to_string(const Atom& a, PrintOptions opts) {
  std::string out;
  print_atom(a, opts, out);
  return out;
}

std::string to_string(const Clause& c, PrintOptions opts) {
  std::string out;
  print_atom(c.head(), opts, out);
  if (c.is_fact()) return out;
  out += " :- ";
  for (std::size_t i = 0; i < c.body_size(); ++i) {
    if (i) out += ", ";
    print_atom(c.body()[i], opts, out);
  }
  return out;
}

std::string canonical_text(const Clause& c) { return to_string(c.canonical()); }

}  // namespace dilp
