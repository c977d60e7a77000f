#include <doctest.h>

#include <set>

#include "moduli_census/errors.hpp"
#include "moduli_census/field.hpp"

using namespace census;

TEST_CASE("prime field F_3") {
  auto k = make_field(3);
  CHECK(k.order() == 3);
  CHECK(k.is_prime_field());
  CHECK(k.characteristic() == 3);
  CHECK(k.add(2, 2) == 1);
  CHECK(k.mul(2, 2) == 1);
  CHECK(k.neg(1) == 2);
  CHECK(k.inv(2) == 2);
  CHECK(k.chi(0) == 0);
  CHECK(k.chi(1) == 1);
  CHECK(k.chi(2) == -1);
}

TEST_CASE("invalid characteristic") {
  CHECK_THROWS_AS(make_field(2), InvalidCharacteristicError);
  CHECK_THROWS_AS(make_field(9), InvalidCharacteristicError);
  CHECK_THROWS_AS(make_field(1), InvalidCharacteristicError);
  CHECK_THROWS_AS(make_field(3, 30), BudgetError);
}

TEST_CASE("F_9 squares") {
  auto k = make_field(3, 2);
  CHECK(k.order() == 9);
  CHECK(k.modulus().size() == 3);
  std::set<Code> squares;
  for (Code a = 1; a < 9; ++a) squares.insert(k.mul(a, a));
  CHECK(squares.size() == 4);
  CHECK(k.chi(k.neg(1)) == 1);
  CHECK(quadratic_character(k, k.element(k.neg(1))) == 1);
}

TEST_CASE("construction is deterministic and interned") {
  auto a = make_field(5, 3);
  auto b = make_field(5, 3);
  CHECK(a == b);
  CHECK(a.modulus() == b.modulus());
  auto e1 = extend_field(make_field(3), 2);
  CHECK(e1 == make_field(3, 2));
  CHECK(extend_field(make_field(3), 1) == make_field(3));
}

TEST_CASE("field axioms and character multiplicativity") {
  for (auto [p, m] : {std::pair{3u, 1}, {5u, 1}, {3u, 2}, {7u, 1}, {5u, 2}, {3u, 3}}) {
    auto k = make_field(p, m);
    const auto q = k.order();
    int plus = 0, minus = 0;
    for (Code a = 0; a < q; ++a) {
      if (a) {
        CHECK(k.mul(a, k.inv(a)) == 1);
        CHECK(k.pow(a, q - 1) == 1);
      }
      plus += k.chi(a) == 1;
      minus += k.chi(a) == -1;
      CHECK(k.add(a, k.neg(a)) == 0);
      for (Code b = 0; b < q; ++b) {
        CHECK(k.chi(k.mul(a, b)) == k.chi(a) * k.chi(b));
        CHECK(k.sub(k.add(a, b), b) == a);
      }
    }
    CHECK(plus == static_cast<int>((q - 1) / 2));
    CHECK(minus == static_cast<int>((q - 1) / 2));
  }
}

TEST_CASE("distributivity in F_25") {
  auto k = make_field(5, 2);
  for (Code a = 0; a < 25; ++a)
    for (Code b = 0; b < 25; ++b)
      for (Code c = 0; c < 25; c += 3) CHECK(k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c)));
}

TEST_CASE("tower embedding is an injective ring homomorphism") {
  for (auto [p, m] : {std::pair{3u, 1}, {5u, 1}, {7u, 1}, {3u, 2}}) {
    auto base = make_field(p, m);
    for (int r = 2; r <= 3; ++r) {
      auto ext = extend_field(base, r);
      CHECK(ext.order() == base.order() * (r == 2 ? base.order() : base.order() * base.order()));
      CHECK(ext.base().has_value());
      CHECK(*ext.base() == base);
      std::set<Code> images;
      for (Code a = 0; a < base.order(); ++a) {
        images.insert(ext.embed(a));
        for (Code b = 0; b < base.order(); ++b) {
          CHECK(ext.embed(base.add(a, b)) == ext.add(ext.embed(a), ext.embed(b)));
          CHECK(ext.embed(base.mul(a, b)) == ext.mul(ext.embed(a), ext.embed(b)));
        }
      }
      CHECK(images.size() == base.order());
    }
  }
}

TEST_CASE("coordinates round trip") {
  auto base = make_field(3, 2);
  auto ext = extend_field(base, 2);
  CHECK(ext.degree_over_base() == 2);
  CHECK(ext.absolute_degree() == 4);
  for (Code a = 0; a < ext.order(); ++a) {
    auto c = ext.coords(a);
    CHECK(c.size() == 2);
    CHECK(ext.from_coords(c) == a);
  }
}

TEST_CASE("element wrapper") {
  auto k = make_field(7);
  auto a = k.element(3), b = k.element(5);
  CHECK((a + b).code() == 1);
  CHECK((a * b).code() == 1);
  CHECK((a / b * b) == a);
  CHECK((-a).code() == 4);
  CHECK(a.inverse().code() == 5);
  auto other = make_field(5);
  CHECK_THROWS_AS((void)(a + other.element(1)), FieldMismatchError);
  CHECK_THROWS_AS(quadratic_character(other, a), FieldMismatchError);
}
