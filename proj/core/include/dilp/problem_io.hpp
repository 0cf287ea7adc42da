#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dilp/problem.hpp"

namespace dilp {

/// Malformed problem file. The message starts with "line N:".
class ProblemFormatError : public std::runtime_error {
 public:
  ProblemFormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Statements end with a period; `#` starts a comment running to the end of
// the line. Keywords:
//   pred p/n.  func f/n.  const a.  init <clause>.  bg <atom>.  pos <atom>.
//   neg <atom>.
// Symbols must be declared before use.
Problem parse_problem(std::string_view text);
/// Canonical text: declarations in language order, then init, bg, pos, neg,
/// one statement per line, lists written with sugar when available.
std::string format_problem(const Problem& q);

Problem load_problem(const std::filesystem::path& path);
void save_problem(const Problem& q, const std::filesystem::path& path);

/// FNV-1a over the canonical text.
std::uint64_t problem_hash(const Problem& q);

}  // namespace dilp
