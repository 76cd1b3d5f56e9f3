#include <doctest.h>

#include "jsr/families.hpp"
#include "jsr/setfile.hpp"

using jsr::cx;
using jsr::Field;
using jsr::Matrix;
using jsr::MatrixSet;

TEST_CASE("emit then parse reproduces the generators bit for bit") {
  const MatrixSet hare = jsr::hare_family(jsr::kAlphaStar);
  const MatrixSet back = jsr::parse_set_file(jsr::emit_set_file(hare));
  REQUIRE(back.size() == hare.size());
  CHECK(back.dim() == hare.dim());
  CHECK(back.field() == hare.field());
  for (int k = 0; k < hare.size(); ++k) {
    CHECK(back.label(k) == hare.label(k));
    CHECK(back.generator(k) == hare.generator(k));
  }
}

TEST_CASE("complex sets round-trip") {
  const Matrix a = Matrix::from_rows(
      Field::Complex, {{cx(1.5, 0.5), cx(0, -2)}, {cx(-0.25, 0), cx(3, 1e-3)}});
  const Matrix b = Matrix::from_rows(Field::Complex, {{cx(0, 1), cx(0, 0)}, {cx(1, 0), cx(0, -1)}});
  const MatrixSet set(Field::Complex, 2, {{"A", a}, {"B", b}});
  const MatrixSet back = jsr::parse_set_file(jsr::emit_set_file(set));
  for (int k = 0; k < 2; ++k) CHECK(back.generator(k) == set.generator(k));
}

TEST_CASE("rational entries parse to the nearest double") {
  const MatrixSet set = jsr::parse_set_file(
      "field real\n"
      "dim 2\n"
      "A\n"
      "3/4 0\n"
      "0 1/3\n"
      "B\n"
      "-1/2 0\n"
      "0 2\n");
  CHECK(set.generator(0)(0, 0).real() == 0.75);
  CHECK(set.generator(0)(1, 1).real() == 1.0 / 3.0);
  CHECK(set.generator(1)(0, 0).real() == -0.5);
}

TEST_CASE("comments and blank lines are ignored") {
  const MatrixSet set = jsr::parse_set_file(
      "# a matrix set\n"
      "field real  # trailing comment\n"
      "\n"
      "dim 2\n"
      "A\n"
      "1 0\n"
      "0 1\n"
      "# another\n"
      "B\n"
      "0.5 0\n"
      "0 0.5\n");
  CHECK(set.size() == 2);
}

TEST_CASE("parse errors carry positions and reasons") {
  CHECK_THROWS_WITH_AS(jsr::parse_set_file("field real\ndim 2\nA\n1 0\n0 1\n"),
                       "line 6, col 1: card(K) >= 2 required", jsr::ParseError);

  try {
    jsr::parse_set_file("field real\ndim 2\nA\n1 0 3\n0 1\nB\n1 0\n0 1\n");
    FAIL("expected ParseError");
  } catch (const jsr::ParseError& e) {
    CHECK(e.line == 4);
    CHECK(std::string(e.what()).find("expected 2") != std::string::npos);
  }

  CHECK_THROWS_AS(jsr::parse_set_file("dim 2\n"), jsr::ParseError);
  CHECK_THROWS_AS(jsr::parse_set_file("field real\ndim 40\n"), jsr::ParseError);
  CHECK_THROWS_AS(jsr::parse_set_file("field real\ndim 2\n7\n1 0\n0 1\n"), jsr::ParseError);
  CHECK_THROWS_AS(jsr::parse_set_file("field real\ndim 2\nA\n1 0\n0 1/0\nB\n1 0\n0 1\n"),
                  jsr::ParseError);
  // complex literal in a real set
  CHECK_THROWS_AS(jsr::parse_set_file("field real\ndim 2\nA\n1 2i\n0 1\nB\n1 0\n0 1\n"),
                  jsr::ParseError);
}

TEST_CASE("complex literal forms") {
  const MatrixSet set = jsr::parse_set_file(
      "field complex\n"
      "dim 2\n"
      "A\n"
      "1+2i -i\n"
      "3i 1e-3-2.5e+1i\n"
      "B\n"
      "1/2+1/4i 0\n"
      "0 1\n");
  CHECK(set.generator(0)(0, 0) == cx(1, 2));
  CHECK(set.generator(0)(0, 1) == cx(0, -1));
  CHECK(set.generator(0)(1, 0) == cx(0, 3));
  CHECK(set.generator(0)(1, 1) == cx(1e-3, -25.0));
  CHECK(set.generator(1)(0, 0) == cx(0.5, 0.25));
}

TEST_CASE("words files") {
  const auto words = jsr::parse_words_file("1\n1,2\n\n# comment\n2,2,1\n", 2);
  REQUIRE(words.size() == 3);
  CHECK(words[0].display() == "1");
  CHECK(words[1].display() == "1,2");
  CHECK(words[2].display() == "2,2,1");
  CHECK_THROWS_AS(jsr::parse_words_file("1,5\n", 2), jsr::ParseError);
}

TEST_CASE("format_double is shortest round trip") {
  for (double v : {0.1, 1.0 / 3.0, jsr::kAlphaStar, -0.0, 1e-300, 123456789.123456789}) {
    const std::string s = jsr::format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(jsr::format_double(0.5) == "0.5");
  CHECK(jsr::format_double(1.0) == "1");
}
