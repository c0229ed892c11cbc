#include "dglforge/constructions.hpp"
#include "dglforge/dgl_format.hpp"

#include <doctest.h>

using namespace dglforge;

namespace {

ParseError::Kind error_kind(const std::string& text) {
  try {
    parse_dgl(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("no error for: " << text);
  return ParseError::Kind::Syntax;
}

}  // namespace

TEST_SUITE("format") {
  TEST_CASE("minimal file") {
    const DglFile f = parse_dgl("gen a 3\nd a = 0\n");
    CHECK(f.presentation.size() == 1);
    CHECK(f.presentation.differential("a").is_zero());
    CHECK_FALSE(f.has_filtration);
  }

  TEST_CASE("length-three example") {
    const DglFile f = parse_dgl(
        "# L(a,b,e,f)\n"
        "gen a 1\ngen b 3\ngen e 4\ngen f 6\n"
        "d b = [a,a]\n"
        "d f = [a,e] + [a,[a,b]]   # two terms\n");
    const DglPresentation& p = f.presentation;
    CHECK(p.differential("f") == bracket(p.generator("a"), p.generator("e")) +
                                     bracket(p.generator("a"), bracket(p.generator("a"), p.generator("b"))));
    CHECK(infer_decomposition(p)->length() == 3);
    CHECK(f.locations[3].line == 5);
  }

  TEST_CASE("coefficients and signs") {
    Alphabet a({{"a", 3, {}}, {"a2", 7, {}}, {"s(a*b')", 9, {}}});
    const LieElement x = LieElement::generator(a, "a"), y = LieElement::generator(a, "a2");
    CHECK(parse_expression("1/4 [a2,a2]", a) == Rational(1, 4) * bracket(y, y));
    CHECK(parse_expression("-2*[a,a2] + [a2,a]", a) == Rational(-2) * bracket(x, y) + bracket(y, x));
    CHECK(parse_expression("- [a, a2] - 3/2 [a,a2]", a) == Rational(-5, 2) * bracket(x, y));
    CHECK(parse_expression("[s(a*b'),a]", a) == bracket(LieElement::generator(a, "s(a*b')"), x));
    CHECK(parse_expression("0", a).is_zero());
  }

  TEST_CASE("errors carry kind and position") {
    CHECK(error_kind("gen a 3\ngen b 7\nd b = [a,a] + x\n") == ParseError::Kind::UnknownGenerator);
    CHECK(error_kind("gen a 3\nd a = [a,a]\n") == ParseError::Kind::DegreeMismatch);
    CHECK(error_kind("gen a 3\ngen b 4\ngen c 8\nd c = [a,a] + b\n") == ParseError::Kind::DegreeMismatch);
    CHECK(error_kind("gen a 3\nd a = [a,\n") == ParseError::Kind::Syntax);
    CHECK(error_kind("gen a x\n") == ParseError::Kind::Syntax);
    CHECK(error_kind("gen a 3\ngen a 5\n") == ParseError::Kind::Syntax);
    CHECK(error_kind("gen a 3\nfoo\n") == ParseError::Kind::Syntax);
    CHECK(error_kind("gen a 3\nd z = 0\n") == ParseError::Kind::UnknownGenerator);
    CHECK(error_kind("gen a 3 filt 1\ngen b 7\n") == ParseError::Kind::Filtration);
    CHECK(error_kind("gen a 3 filt 1\ngen b 7 filt 1\nd b = [a,a]\n") == ParseError::Kind::Filtration);
    try {
      parse_dgl("gen a 3\ngen b 7\nd b = [a,a] + x\n");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() == 15);
      CHECK(std::string(e.what()) == "3:15: unknown generator: 'x' is not declared");
    }
  }

  TEST_CASE("filtrations") {
    const DglFile f = parse_dgl("gen a 3 filt 1\ngen b 7 filt 2\nd b = [a,a]\n");
    CHECK(f.has_filtration);
    CHECK(f.presentation.declared_filtration()->stage == std::vector<int>{1, 2});
  }

  TEST_CASE("round trip of L_3") {
    const LkBundle b = build_Lk(3);
    const std::string text = print_dgl(b.Lk);
    const DglFile f = parse_dgl(text);
    CHECK(f.presentation == b.Lk);
    CHECK(f.has_filtration);
    CHECK(print_dgl(f.presentation) == text);
    CHECK(check_d_squared(f.presentation, 29).ok);
  }
}
