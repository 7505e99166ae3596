#include <doctest.h>

#include <string>

#include "stabcat/fixtures.hpp"
#include "stabcat/repfile.hpp"

using namespace stabcat;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_repfile(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("bundled fixtures parse and validate") {
  for (const auto& name : fixture_names()) {
    auto rf = load_fixture(name);
    CHECK(rf.has_module("S"));
    CHECK(rf.has_morphism("p"));
    CHECK(rf.has_class("cof"));
    CHECK(rf.context("main").universe == "all");
    for (const auto& m : rf.modules) CHECK_FALSE(relation_violation(m, rf.relations));
  }
  CHECK(load_fixture("F3").field.modulus() == 3);
  CHECK_THROWS_AS(load_fixture("F9"), UnknownName);
}

TEST_CASE("malformed input is rejected with a reason") {
  CHECK(parse_error("") == "field spec required");
  CHECK(parse_error("# only a comment\n") == "field spec required");
  CHECK(parse_error("field 4\n").find("not a prime field") != std::string::npos);

  const std::string head = "field 2\ngenerators 1\nmodule S dim 1\ngen 0: [[0]]\nmodule R dim 2\ngen 0: [[0,0],[1,0]]\n";
  auto e = parse_error(head + "morphism bad : R -> S\n[[0,1]]\n");
  CHECK(e.find("bad") != std::string::npos);
  CHECK(e.find("generator 0") != std::string::npos);

  e = parse_error(head + "morphism m : R -> S\n[[1,0,0]]\n");
  CHECK(e.find("row 0") != std::string::npos);
  e = parse_error(head + "morphism m : R -> S\n[[1,0],[0,1]]\n");
  CHECK(e.find("rows") != std::string::npos);

  CHECK(parse_error(head + "module S dim 1\ngen 0: [[0]]\n").find("duplicate name") != std::string::npos);
  CHECK(parse_error(head + "class c = S, T\n").find("unknown module 'T'") != std::string::npos);
  CHECK(parse_error(head + "frobnicate\n").find("unknown statement") != std::string::npos);
  CHECK(parse_error("field 2\ngenerators 1\nrelation 0 0\nmodule T dim 2\ngen 0: [[0,1],[0,0]]\nmodule U dim 1\n"
                    "gen 0: [[1]]\n")
            .find("line 6") != std::string::npos);
}

TEST_CASE("serialize then parse is the identity") {
  for (const auto& name : fixture_names()) {
    auto rf = load_fixture(name);
    auto text = serialize(rf);
    auto back = parse_repfile(text);
    CHECK(back == rf);
    CHECK(serialize(back) == text);
  }
  CHECK(matrix_literal(Mat::from_rows(PrimeField(3), {{1, 2}, {0, 1}})) == "[[1,2],[0,1]]");
}

TEST_CASE("contexts come from the file") {
  auto rf = load_fixture("F2");
  auto ctx = make_context(rf, "main");
  CHECK(ctx->generator() == rf.module("R3"));
  CHECK(ctx->universe().size() == rf.class_members("all").size());
  CHECK_THROWS(make_context(rf, "nope"));
}
