#include "dilp/problem_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "dilp/text.hpp"

namespace dilp {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Statement {
  std::size_t line = 0;
  std::string text;
};

std::vector<Statement> split_statements(std::string_view text) {
  std::vector<Statement> out;
  Statement current;
  std::size_t line = 1;
  bool in_comment = false;
  for (char ch : text) {
    if (ch == '\n') {
      ++line;
      in_comment = false;
      if (!current.text.empty()) current.text.push_back(' ');
      continue;
    }
    if (in_comment) continue;
    if (ch == '#') {
      in_comment = true;
      continue;
    }
    if (ch == '.') {
      out.push_back(std::move(current));
      current = {};
      continue;
    }
    if (current.text.empty()) {
      if (std::isspace(static_cast<unsigned char>(ch))) continue;
      current.line = line;
    }
    current.text.push_back(ch);
  }
  if (!trim(current.text).empty()) {
    throw ProblemFormatError(current.line, "statement is missing its terminating '.'");
  }
  return out;
}

Symbol parse_signature(std::string_view body, std::size_t line) {
  const auto slash = body.rfind('/');
  if (slash == std::string_view::npos) throw ProblemFormatError(line, "expected name/arity");
  const auto name = trim(body.substr(0, slash));
  const auto digits = trim(body.substr(slash + 1));
  int arity = -1;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), arity);
  if (name.empty() || ec != std::errc() || ptr != digits.data() + digits.size() || arity < 0) {
    throw ProblemFormatError(line, "expected name/arity, got '" + std::string(body) + "'");
  }
  return {std::string(name), arity};
}

Atom parse_example(std::string_view body, const Language& lang, std::size_t line) {
  Atom a = parse_atom(body, lang);
  if (a.is_special()) throw ProblemFormatError(line, "reserved atom is not allowed here");
  if (!a.is_ground()) throw ProblemFormatError(line, "atom must be ground");
  return a;
}

}  // namespace

Problem parse_problem(std::string_view text) {
  Problem q;
  for (const Statement& st : split_statements(text)) {
    const std::string_view s = trim(st.text);
    if (s.empty()) throw ProblemFormatError(st.line, "empty statement");
    auto space = s.find_first_of(" \t\r");
    const std::string_view keyword = s.substr(0, space);
    const std::string_view body =
        space == std::string_view::npos ? std::string_view{} : trim(s.substr(space));
    try {
      if (keyword == "pred") {
        auto sym = parse_signature(body, st.line);
        q.language.add_predicate(sym.name, sym.arity);
      } else if (keyword == "func") {
        auto sym = parse_signature(body, st.line);
        if (sym.arity == 0) throw ProblemFormatError(st.line, "function arity must be positive");
        q.language.add_function(sym.name, sym.arity);
      } else if (keyword == "const") {
        if (body.empty() || body.find_first_of(" \t(),") != std::string_view::npos) {
          throw ProblemFormatError(st.line, "expected a single constant name");
        }
        q.language.add_constant(std::string(body));
      } else if (keyword == "init") {
        q.initial_clauses.push_back(parse_clause(body, q.language));
      } else if (keyword == "bg") {
        q.background.push_back(parse_example(body, q.language, st.line));
      } else if (keyword == "pos") {
        q.positives.push_back(parse_example(body, q.language, st.line));
      } else if (keyword == "neg") {
        q.negatives.push_back(parse_example(body, q.language, st.line));
      } else {
        throw ProblemFormatError(st.line, "unknown keyword '" + std::string(keyword) + "'");
      }
    } catch (const ProblemFormatError&) {
      throw;
    } catch (const std::exception& e) {
      throw ProblemFormatError(st.line, e.what());
    }
  }
  return q;
}

std::string format_problem(const Problem& q) {
  const PrintOptions opts = print_options_for(q.language);
  std::ostringstream out;
  for (const Symbol& p : q.language.predicates()) out << "pred " << p.name << '/' << p.arity << ".\n";
  for (const Symbol& f : q.language.functions()) out << "func " << f.name << '/' << f.arity << ".\n";
  for (const std::string& c : q.language.constants()) out << "const " << c << ".\n";
  for (const Clause& c : q.initial_clauses) out << "init " << to_string(c, opts) << ".\n";
  for (const Atom& a : q.background) out << "bg " << to_string(a, opts) << ".\n";
  for (const Atom& a : q.positives) out << "pos " << to_string(a, opts) << ".\n";
  for (const Atom& a : q.negatives) out << "neg " << to_string(a, opts) << ".\n";
  return out.str();
}

Problem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open problem file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

void save_problem(const Problem& q, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write problem file " + path.string());
  out << format_problem(q);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::uint64_t problem_hash(const Problem& q) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : format_problem(q)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace dilp
