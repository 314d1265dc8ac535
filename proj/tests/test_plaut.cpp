#include "doctest.h"
#include "gen.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "inpkit/plaut.hpp"

using namespace inpkit;
using namespace inpkit::plaut;

namespace {

// Brute-force listing of the enumeration up to a height: sort all p/q in lowest
// terms by (height, q, |p|, negative).
std::vector<Rational> brute_enumeration(long max_height) {
  std::vector<std::tuple<long, long, long, int>> keys;
  for (long q = 1; q <= max_height; ++q) {
    for (long p = 1; p <= max_height; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const long h = std::max(p, q);
      keys.emplace_back(h, q, p, 0);
      keys.emplace_back(h, q, p, 1);
    }
  }
  std::sort(keys.begin(), keys.end());
  std::vector<Rational> out = {Rational(0)};
  for (const auto& [h, q, p, neg] : keys) out.push_back(Rational(neg ? -p : p, q));
  return out;
}

Rational q(long p, long d = 1) { return make_rational(p, d); }

}  // namespace

TEST_CASE("rationals") {
  CHECK(make_rational(4, -6) == q(-2, 3));
  CHECK(to_string(make_rational(4, -6)) == "-2/3");
  CHECK(parse_rational("7/3") == q(7, 3));
  CHECK(parse_rational("-5") == q(-5));
  CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a/2"), std::invalid_argument);
}

TEST_CASE("well-order prefix") {
  const std::vector<Rational> expect = {q(0), q(1), q(-1), q(2), q(-2), q(1, 2), q(-1, 2), q(3), q(-3), q(3, 2), q(-3, 2), q(1, 3), q(-1, 3)};
  for (std::size_t i = 0; i < expect.size(); ++i) {
    CHECK(well_order::unrank(i) == expect[i]);
    CHECK(well_order::rank(expect[i]) == i);
  }
}

TEST_CASE("well-order matches brute force") {
  const auto brute = brute_enumeration(40);
  well_order::Cursor cur;
  for (std::size_t i = 0; i < brute.size(); ++i) {
    REQUIRE(cur.current() == brute[i]);
    REQUIRE(cur.index() == i);
    REQUIRE(well_order::unrank(i) == brute[i]);
    REQUIRE(well_order::rank(brute[i]) == i);
    cur.advance();
  }
}

TEST_CASE("rank and unrank are inverse on [0, 1e5]") {
  well_order::Cursor cur;
  for (std::uint64_t i = 0; i <= 100000; ++i) {
    const Rational t = well_order::unrank(i);
    REQUIRE(well_order::rank(t) == i);
    REQUIRE(cur.current() == t);
    cur.advance();
  }
}

TEST_CASE("property: rank of random rationals round-trips") {
  gen::Gen g;
  for (int i = 0; i < 2000; ++i) {
    const Rational t = g.rational(100000);
    REQUIRE(well_order::unrank(well_order::rank(t)) == t);
  }
  const Rational tall = q(49999999, 49999998);
  CHECK(well_order::unrank(well_order::rank(tall)) == tall);
  CHECK_THROWS_AS(well_order::rank(q(100000001)), std::out_of_range);
}

TEST_CASE("maps") {
  CHECK(PlAut::identity()(q(7, 3)) == q(7, 3));
  CHECK(PlAut::identity().is_identity());
  CHECK(compose(PlAut::translation(1), PlAut::translation(1)) == PlAut::translation(2));
  CHECK_THROWS_AS(PlAut({}, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(PlAut({{q(0), q(0)}}, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(PlAut({{q(0), q(0)}, {q(1), q(-1)}}, 1, 1), std::invalid_argument);
  // Collinear knots are dropped.
  const PlAut line({{q(0), q(1)}, {q(1), q(2)}, {q(2), q(3)}}, 1, 1);
  CHECK(line == PlAut::translation(1));
  CHECK(line.knots().size() == 1);
}

TEST_CASE("property: composition, inverse and powers evaluate pointwise") {
  gen::Gen g;
  for (int i = 0; i < 300; ++i) {
    const PlAut f = g.plaut(4), h = g.plaut(4);
    const PlAut fh = compose(f, h), fi = inverse(f);
    REQUIRE(compose(f, fi).is_identity());
    REQUIRE(compose(fi, f).is_identity());
    for (int j = 0; j < 20; ++j) {
      const Rational t = g.rational(30);
      REQUIRE(fh(t) == f(h(t)));
      REQUIRE(fi(f(t)) == t);
      REQUIRE(reflect(f)(-t) == -f(t));
      const long k = static_cast<long>(g.small(4));
      REQUIRE(power(f, k)(t) == orbit_point(f, t, k));
    }
    // Fixed ranges really are fixed.
    for (const auto& r : f.fixed_points()) {
      if (r.lo) REQUIRE(f(*r.lo) == *r.lo);
      if (r.hi) REQUIRE(f(*r.hi) == *r.hi);
    }
  }
}

TEST_CASE("property: compare matches a brute-force scan") {
  gen::Gen g;
  for (int i = 0; i < 200; ++i) {
    const PlAut f = g.plaut(3), h = g.plaut(3);
    std::optional<Ordering> expect;
    well_order::Cursor cur;
    for (int j = 0; j < 20000 && !expect; ++j, cur.advance()) {
      const Rational t = cur.current();
      if (f(t) < h(t)) expect = Ordering::Less;
      if (h(t) < f(t)) expect = Ordering::Greater;
    }
    if (!expect) expect = Ordering::Equal;
    REQUIRE(compare(f, h, 20000) == *expect);
    if (f == h) REQUIRE(compare(f, h, 1) == Ordering::Equal);
  }
}

TEST_CASE("hull example") {
  const HullExample ex = example_hull_build();
  CHECK(ex.a == well_order::unrank(0));
  CHECK(ex.a < ex.b);
  CHECK(ex.b < ex.c);
  CHECK(ex.c < ex.d);
  CHECK(ex.d < ex.e);
  CHECK(ex.f(ex.a) == ex.c);
  CHECK(ex.f(ex.d) == ex.d);
  CHECK(ex.g(ex.a) == ex.b);
  CHECK(ex.g(ex.b) == ex.e);
  CHECK(ex.g(ex.g(ex.a)) == ex.e);
  CHECK(first_difference(ex.f, ex.g, 10) == ex.a);
  CHECK_THROWS_AS(first_difference(ex.f, ex.f, 100), Exhausted);
  CHECK(compare(ex.g, ex.f, 100) == Ordering::Less);
  CHECK(compare(PlAut::identity(), ex.g, 100) == Ordering::Less);
  CHECK(compare(ex.f, ex.f, 100) == Ordering::Equal);
  CHECK(power(ex.f, 3)(ex.a) < ex.d);
  for (long k = -50; k <= 50; ++k) CHECK(orbit_point(ex.f, ex.a, k) < ex.e);
}

TEST_CASE("orbit certificates") {
  const HullExample ex = example_hull_build();
  const auto cert = orbit_bound_certificate(ex.f, ex.a, ex.d);
  CHECK(validate(cert, ex.f));
  CHECK(cert.samples.size() == 101);
  CHECK(validate(orbit_bound_certificate(PlAut::identity(), q(0), q(1)), PlAut::identity()));
  CHECK_THROWS_AS(orbit_bound_certificate(ex.f, ex.d, ex.d), CertificateRejected);
  CHECK_THROWS_AS(orbit_bound_certificate(ex.f, ex.a, ex.c), CertificateRejected);
  // Tampered data no longer validates.
  auto bad = cert;
  bad.fixed_point = ex.c;
  CHECK_FALSE(validate(bad, ex.f));
  bad = cert;
  bad.samples[3].second += 1;
  CHECK_FALSE(validate(bad, ex.f));
  CHECK_FALSE(validate(cert, ex.g));
}

TEST_CASE("hull membership") {
  const HullExample ex = example_hull_build();
  const auto in_g = hull_of_cyclic_membership(ex.f, ex.g, 8, 10000);
  REQUIRE(std::holds_alternative<HullIn>(in_g));
  CHECK(std::get<HullIn>(in_g).lower_power == 0);
  CHECK(std::get<HullIn>(in_g).upper_power == 1);

  const auto out = hull_of_cyclic_membership(ex.f, compose(ex.g, ex.g), 8, 10000);
  REQUIRE(std::holds_alternative<HullNotIn>(out));
  const auto& cert = std::get<HullNotIn>(out);
  CHECK(cert.above);
  CHECK(cert.first_point == ex.a);
  CHECK(cert.g_at_first_point == ex.e);
  CHECK(cert.orbit.fixed_point == ex.d);
  CHECK(validate(cert.orbit, ex.f));

  const auto in_f = hull_of_cyclic_membership(ex.f, ex.f, 8, 10000);
  REQUIRE(std::holds_alternative<HullIn>(in_f));
  CHECK(std::get<HullIn>(in_f).lower_power == 1);
  CHECK(std::get<HullIn>(in_f).upper_power == 1);

  // g^-2 agrees with f^-1 on t <= 0 and sits between f^-2 and f^-1.
  const auto back = hull_of_cyclic_membership(ex.f, inverse(compose(ex.g, ex.g)), 8, 10000);
  REQUIRE(std::holds_alternative<HullIn>(back));
  CHECK(std::get<HullIn>(back).lower_power == -2);
  CHECK(std::get<HullIn>(back).upper_power == -1);

  // Mirror image: reflect(g^2) lies below every power of reflect(f).
  const PlAut rf = reflect(ex.f);
  const auto below = hull_of_cyclic_membership(rf, reflect(compose(ex.g, ex.g)), 8, 10000);
  REQUIRE(std::holds_alternative<HullNotIn>(below));
  CHECK_FALSE(std::get<HullNotIn>(below).above);
  CHECK(validate(std::get<HullNotIn>(below).orbit, reflect(rf)));

  CHECK_THROWS_AS(hull_of_cyclic_membership(PlAut::identity(), ex.g, 8, 100), std::invalid_argument);
}
