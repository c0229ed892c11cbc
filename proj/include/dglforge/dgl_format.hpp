#ifndef DGLFORGE_DGL_FORMAT_HPP
#define DGLFORGE_DGL_FORMAT_HPP

// Text format for presentations:
//
//   # comment
//   gen a 3 filt 1
//   gen b 5
//   d b = [a,a]
//   d c = -1/2 [a,[a,b]] + 3*[b,b]
//
// A name is an identifier followed by primes, optionally with a balanced
// parenthesised part, e.g. s(a*b'). Missing `d` lines mean d = 0.

#include "dglforge/dgl.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace dglforge {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnknownGenerator, DegreeMismatch, Filtration };

  ParseError(Kind kind, int line, int column, const std::string& message);
  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  Kind kind_;
  int line_, column_;
};

std::string_view kind_name(ParseError::Kind k);

struct SourceLocation {
  int line = 0;
  int column = 0;
};

struct DglFile {
  DglPresentation presentation;
  /// Declaration line of each generator, by letter.
  std::vector<SourceLocation> locations;
  /// Every generator carries `filt`; the stages form a valid decomposition.
  bool has_filtration = false;
};

/// Throws ParseError.
DglFile parse_dgl(std::string_view text);

/// Parses one expression over the alphabet. Positions refer to `line`.
LieElement parse_expression(std::string_view text, const Alphabet& alphabet, int line = 1);

/// Inverse of parse_dgl up to whitespace and comments.
std::string print_dgl(const DglPresentation& p);

}  // namespace dglforge

#endif  // DGLFORGE_DGL_FORMAT_HPP
