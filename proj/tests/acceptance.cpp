// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//
// Derived values are checked against oracles written here from the coordinates,
// not against the library's own helpers.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "inpkit/free_group.hpp"
#include "inpkit/kb.hpp"
#include "inpkit/orders.hpp"
#include "inpkit/patterns.hpp"
#include "inpkit/plaut.hpp"

using namespace inpkit;
using kb::KbElement;
using kb::KbSubgroup;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

// Elements act on Z^2 by (u, v) -> (u + n, (-1)^n v + m); composing the maps
// "a, then b" gives a*b. Written from scratch as the multiplication oracle.
struct Affine {
  Integer shift;
  bool flip;
  Integer offset;
};

Affine affine_of(const KbElement& g) { return {g.n, is_odd(g.n), g.m}; }

// a then b: v -> s_b (s_a v + m_a) + m_b.
Affine affine_then(const Affine& a, const Affine& b) {
  return {a.shift + b.shift, a.flip != b.flip, (b.flip ? Integer(-a.offset) : a.offset) + b.offset};
}

KbElement affine_read(const Affine& a) { return {a.shift, a.offset}; }

KbElement model_mul(const KbElement& a, const KbElement& b) {
  return affine_read(affine_then(affine_of(a), affine_of(b)));
}

bool lex_less(const KbElement& a, const KbElement& b) { return a.n < b.n || (a.n == b.n && a.m < b.m); }
bool lex_le(const KbElement& a, const KbElement& b) { return !lex_less(b, a); }

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  // Uniform in [-10^18, 10^18].
  Integer big() {
    std::uniform_int_distribution<long> d(-1'000'000'000'000'000'000L, 1'000'000'000'000'000'000L);
    return Integer(d(rng_));
  }
  Integer up_to(long bound) { return Integer(std::uniform_int_distribution<long>(-bound, bound)(rng_)); }
  KbElement kb_big() { return {big(), big()}; }
  KbElement kb(long bound) { return {up_to(bound), up_to(bound)}; }

 private:
  std::mt19937_64 rng_;
};

Outcome group_axioms() {
  Outcome o;
  const auto t0 = Clock::now();
  Sampler s(11);
  const KbElement e = kb::identity();
  for (int i = 0; i < 100000 && o.ok; ++i) {
    const KbElement a = s.kb_big(), b = s.kb_big(), c = s.kb_big();
    const KbElement ab = kb::mul(a, b);
    o.require(kb::mul(ab, c) == kb::mul(a, kb::mul(b, c)), "associativity");
    o.require(kb::mul(a, e) == a && kb::mul(e, a) == a, "identity");
    const KbElement ai = kb::inv(a);
    o.require(kb::mul(a, ai) == e && kb::mul(ai, a) == e, "inverse");
    o.require(ab == model_mul(a, b), "affine oracle");
    o.require(kb::AffineAction::of(a).then(kb::AffineAction::of(b)).read_back() == ab, "library action");
  }
  const double t = seconds_since(t0);
  o.require(t < 5.0, "took " + std::to_string(t) + " s");
  if (o.ok) o.detail = "100000 triples, " + std::to_string(t) + " s";
  return o;
}

Outcome identities() {
  Outcome o;
  const KbElement x = kb::gen_x(), y = kb::gen_y();
  o.require(kb::mul(kb::mul(kb::inv(x), y), x) == kb::inv(y), "x^-1 y x = y^-1");
  o.require(model_mul(model_mul(KbElement{-1L, 0L}, y), x) == KbElement{0L, -1L}, "relation in the model");
  // C(x) = {b = 0}, by scanning a box against the model.
  for (long n = -12; n <= 12; ++n)
    for (long m = -12; m <= 12; ++m) {
      const KbElement g{n, m};
      const bool commutes = model_mul(g, x) == model_mul(x, g);
      o.require(commutes == (m == 0), "C(x) criterion at " + kb::to_string(g));
      o.require(kb::commutes(g, x) == (m == 0), "library commutes at " + kb::to_string(g));
    }
  Sampler s(12);
  const auto lattice = KbSubgroup::lattice(2, 1);
  for (int i = 0; i < 10000; ++i) {
    const KbElement g = s.kb_big();
    const KbElement sq = kb::mul(g, g);
    o.require(!is_odd(sq.n) && lattice.contains(sq), "g^2 in Lattice(2,1) for " + kb::to_string(g));
  }
  for (long m = -100; m <= 100; ++m) {
    const KbElement g{1L, m};
    o.require(kb::mul(g, g) == KbElement{2L, 0L}, "(1,m)^2 for m=" + std::to_string(m));
  }
  if (o.ok) o.detail = "relation, C(x), 10000 squares, m in [-100,100]";
  return o;
}

Outcome left_invariance() {
  Outcome o;
  Sampler s(13);
  for (int i = 0; i < 10000; ++i) {
    const KbElement a = s.kb(1'000'000), b = s.kb(1'000'000), c = s.kb(1'000'000);
    const bool before = lex_less(a, b);
    o.require(orders::less(a, b) == before, "order matches lex oracle");
    o.require(lex_less(model_mul(c, a), model_mul(c, b)) == before, "left-invariance (oracle)");
    o.require(orders::less(kb::mul(c, a), kb::mul(c, b)) == before, "left-invariance (library)");
  }
  // e < y, but right multiplication by x gives yx = (1,-1) < (1,0) = x.
  const KbElement e = kb::identity(), x = kb::gen_x(), y = kb::gen_y();
  const KbElement yx = kb::mul(y, x);
  o.require(orders::less(e, y), "e < y");
  o.require(yx == KbElement{1L, -1L}, "yx = (1,-1)");
  o.require(orders::less(yx, x), "yx < x");
  if (o.ok) o.detail = "10000 triples; e < y but yx < ex";
  return o;
}

// Membership oracle for interval and coset cells.
bool oracle_member(const patterns::DefSet& s, const KbElement& g) {
  if (const auto* i = std::get_if<patterns::node::Interval>(&s.node()))
    return lex_le(i->interval.lo(), g) && lex_le(g, i->interval.hi());
  if (const auto* c = std::get_if<patterns::node::Coset>(&s.node())) {
    // g in H r iff d = g r^-1 lies in H, read off the coordinate steps.
    const auto& r = c->coset.rep;
    const Affine ri = {-r.n, is_odd(r.n), is_odd(r.n) ? r.m : Integer(-r.m)};
    const KbElement d = affine_read(affine_then(affine_of(g), ri));
    if (model_mul(d, r) != g) return false;
    const Integer sx = c->coset.subgroup.step_x(), sy = c->coset.subgroup.step_y();
    auto fits = [](const Integer& v, const Integer& step) { return step == 0 ? v == 0 : v % step == 0; };
    return fits(d.n, sx) && fits(d.m, sy);
  }
  return false;
}

std::string brute_verdict(const patterns::PatternInstance& p, long radius) {
  std::vector<KbElement> box;
  for (long n = -radius; n <= radius; ++n)
    for (long m = -radius; m <= radius; ++m) box.emplace_back(n, m);
  for (const auto& row : p.rows)
    for (std::size_t a = 0; a < row.cells.size(); ++a)
      for (std::size_t b = a + 1; b < row.cells.size(); ++b)
        for (const auto& g : box)
          if (oracle_member(row.cells[a], g) && oracle_member(row.cells[b], g)) return "Refuted";
  const auto grid = p.grid();
  for (std::size_t idx = 0; idx < p.path_count(); ++idx) {
    std::vector<std::size_t> path(grid.size());
    std::size_t rest = idx;
    for (std::size_t i = grid.size(); i-- > 0;) {
      path[i] = rest % grid[i];
      rest /= grid[i];
    }
    bool found = false;
    for (const auto& g : box) {
      bool all = true;
      for (std::size_t i = 0; i < p.rows.size() && all; ++i) all = oracle_member(p.rows[i].cells[path[i]], g);
      if (all) {
        found = true;
        break;
      }
    }
    if (!found) return "Refuted";
  }
  return "Verified";
}

Outcome kb_pattern() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto p = patterns::build_kb_depth2(32, 32);
  const auto v = patterns::verify_pattern(p);
  const double t = seconds_since(t0);
  o.require(std::holds_alternative<patterns::Verified>(v), std::string("verdict ") + patterns::verdict_name(v));
  if (!o.ok) return o;
  const auto& ok = std::get<patterns::Verified>(v);
  o.require(ok.paths.size() == 1024, "path count " + std::to_string(ok.paths.size()));
  std::set<std::vector<std::size_t>> seen;
  for (const auto& w : ok.paths) {
    seen.insert(w.path);
    const auto& g = std::get<KbElement>(w.element);
    for (std::size_t i = 0; i < 2; ++i) {
      const auto& cell = p.rows[i].cells[w.path[i]];
      o.require(oracle_member(cell, g), "oracle rejects witness " + kb::to_string(g));
      o.require(std::holds_alternative<patterns::Member>(patterns::defset_membership(cell, w.element)),
                "library rejects witness " + kb::to_string(g));
    }
  }
  o.require(seen.size() == 1024, "paths not distinct");
  o.require(ok.rows.size() == 2, "row certificates");
  for (const auto& row : p.rows)
    o.require(std::holds_alternative<patterns::RowCertified>(patterns::row_inconsistency_check(row)),
              "row re-check");
  o.require(t < 1.0, "took " + std::to_string(t) + " s");
  const auto small = patterns::build_kb_depth2(4, 4);
  const std::string brute = brute_verdict(small, 40);
  o.require(brute == patterns::verdict_name(patterns::verify_pattern(small)), "4x4 brute force says " + brute);
  o.require(brute == "Verified", "4x4 brute force says " + brute);
  if (o.ok) o.detail = "1024 witnesses, 2 rows certified, " + std::to_string(t) + " s; 4x4 brute force agrees";
  return o;
}

Outcome cover_fails() {
  Outcome o;
  const KbElement x = kb::gen_x();
  const auto center = kb::center_description();
  // Center from the group law: commuting with both generators, on a box.
  for (long n = -10; n <= 10; ++n)
    for (long m = -10; m <= 10; ++m) {
      const KbElement g{n, m};
      const bool central = model_mul(g, x) == model_mul(x, g) && model_mul(g, kb::gen_y()) == model_mul(kb::gen_y(), g);
      o.require(central == center.contains(g), "center disagrees at " + kb::to_string(g));
    }
  const auto res = orders::interval_coset_cover(x, center, 100);
  o.require(std::holds_alternative<orders::InfiniteWitness>(res), "no InfiniteWitness");
  if (!o.ok) return o;
  const auto entries = std::get<orders::InfiniteWitness>(res).take(200);
  o.require(entries.size() >= 200, "fewer than 200 witnesses");
  for (const auto& en : entries)
    o.require(lex_le(kb::identity(), en.element) && lex_le(en.element, x), "witness outside [e,x]");
  // Distinct right cosets of Z(G) = {x^2k}: g h^-1 must leave the center.
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      const KbElement a = entries[i].element, b = entries[j].element;
      const KbElement q = model_mul(a, kb::inv(b));
      o.require(!(q.m == 0 && !is_odd(q.n)), "same coset: " + kb::to_string(a) + ", " + kb::to_string(b));
    }
  if (o.ok) o.detail = std::to_string(entries.size()) + " witnesses in [e,x], pairwise distinct cosets";
  return o;
}

Outcome plaut_hull() {
  Outcome o;
  using namespace plaut;
  const auto t0 = Clock::now();
  const HullExample ex = example_hull_build();
  o.require(ex.a == well_order::unrank(0) && ex.a < ex.b && ex.b < ex.c && ex.c < ex.d && ex.d < ex.e,
            "point order");
  o.require(ex.f(ex.a) == ex.c, "f(a) = c");
  o.require(ex.f(ex.d) == ex.d, "f(d) = d");
  o.require(ex.g(ex.a) == ex.b, "g(a) = b");
  o.require(ex.g(ex.b) == ex.e, "g(b) = e");
  o.require(plaut::compare(ex.g, ex.f, 10000) == Ordering::Less, "g < f");
  o.require(plaut::compare(PlAut::identity(), ex.g, 10000) == Ordering::Less, "id < g");
  // The first point of the enumeration is 0, so the comparisons above reduce
  // to the values at 0: g(0) = b < c = f(0) and 0 < b.
  o.require(ex.g(Rational(0)) < ex.f(Rational(0)) && Rational(0) < ex.g(Rational(0)), "values at 0");
  const auto in_g = hull_of_cyclic_membership(ex.f, ex.g, 8, 10000);
  o.require(std::holds_alternative<HullIn>(in_g) && std::get<HullIn>(in_g).lower_power == 0 &&
                std::get<HullIn>(in_g).upper_power == 1,
            "g not In(0,1)");
  const auto g2 = compose(ex.g, ex.g);
  const auto out = hull_of_cyclic_membership(ex.f, g2, 8, 10000);
  o.require(std::holds_alternative<HullNotIn>(out), "g^2 not NotIn");
  if (std::holds_alternative<HullNotIn>(out)) {
    const auto& cert = std::get<HullNotIn>(out);
    o.require(validate(cert.orbit, ex.f), "certificate does not validate");
    o.require(cert.orbit.fixed_point == ex.d && ex.f(cert.orbit.fixed_point) == cert.orbit.fixed_point,
              "fixed point");
    o.require(g2(ex.a) == ex.e && ex.d < ex.e, "g^2(a) past the fixed point");
  }
  for (long k = -50; k <= 50; ++k) {
    Rational t = ex.a;
    const PlAut step = k >= 0 ? ex.f : inverse(ex.f);
    for (long i = 0; i < (k >= 0 ? k : -k); ++i) t = step(t);
    o.require(t < ex.e, "f^" + std::to_string(k) + "(a) >= e");
  }
  const double t = seconds_since(t0);
  o.require(t < 1.0, "took " + std::to_string(t) + " s");
  if (o.ok) o.detail = "g In(0,1), g^2 NotIn with fixed point d, " + std::to_string(t) + " s";
  return o;
}

Outcome free_chain() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t certs = 0;
  for (std::size_t n = 1; n <= 4 && o.ok; ++n)
    for (std::size_t i = 0; i <= n; ++i)
      for (long m0 = 1; m0 <= 50; ++m0)
        for (long m1 = 1; m1 <= 50; ++m1) {
          if (m0 == m1) continue;
          const auto c = patterns::chain_nonmembership_certificate(n, i, Integer(m0), Integer(m1));
          // Oracle: the quotient has exponent sum m0 - m1 at x_i, the excluded
          // set only 0 there.
          const auto ab = free::abelianize(c.quotient);
          o.require(ab[i] == Integer(m0 - m1) && c.exponent_gap == Integer(m0 - m1), "exponent gap");
          o.require(c.allowed.contains(Integer(0)) && !c.allowed.contains(c.exponent_gap), "allowed range");
          ++certs;
        }
  const auto p = patterns::build_free_chain_pattern(4, 5);
  const auto v = patterns::verify_pattern(p);
  o.require(std::holds_alternative<patterns::Verified>(v), std::string("verdict ") + patterns::verdict_name(v));
  if (std::holds_alternative<patterns::Verified>(v)) {
    const auto& ok = std::get<patterns::Verified>(v);
    o.require(ok.paths.size() == 3125, "path count " + std::to_string(ok.paths.size()));
    std::set<std::vector<Integer>> images;
    for (const auto& w : ok.paths) {
      const auto ab = free::abelianize(std::get<free::FreeWord>(w.element));
      std::vector<Integer> coords;
      for (std::size_t i = 0; i <= 4; ++i) {
        coords.push_back(ab[i]);
        o.require(ab[i] == Integer(static_cast<long>(w.path[i] + 1)), "witness exponents");
      }
      images.insert(coords);
    }
    o.require(images.size() == 3125, "abelianized images not distinct");
  }
  const double t = seconds_since(t0);
  o.require(t < 10.0, "took " + std::to_string(t) + " s");
  if (o.ok)
    o.detail = std::to_string(certs) + " certificates, 3125 distinct witnesses, " + std::to_string(t) + " s";
  return o;
}

Outcome presburger() {
  Outcome o;
  Sampler s(18);
  // (a,b) (+) (c,d) = (a + c, d + e(c) b), written out directly.
  auto op = [](const kb::presburger::Pair& l, const kb::presburger::Pair& r) {
    return kb::presburger::Pair{l.first + r.first, r.second + (is_odd(r.first) ? Integer(-l.second) : l.second)};
  };
  std::vector<std::pair<KbElement, KbElement>> samples;
  for (int i = 0; i < 10000; ++i) {
    const KbElement g = s.kb(1'000'000'000), h = s.kb(1'000'000'000);
    samples.emplace_back(g, h);
    const auto lhs = kb::presburger::iso(kb::mul(g, h));
    o.require(lhs == op(kb::presburger::iso(g), kb::presburger::iso(h)), "violation at " + kb::to_string(g));
    o.require(kb::presburger::op(kb::presburger::iso(g), kb::presburger::iso(h)) == lhs, "library op");
    o.require(kb::presburger::iso_inverse(kb::presburger::iso(g)) == g, "iso inverse");
  }
  o.require(!kb::presburger::check(samples).has_value(), "library check reports a violation");
  if (o.ok) o.detail = "10000 pairs, zero violations";
  return o;
}

Outcome corrupted_patterns() {
  Outcome o;
  using namespace patterns;
  auto interval = [](KbElement lo, KbElement hi) { return DefSet::interval({std::move(lo), std::move(hi)}); };
  const auto base = build_kb_depth2(4, 4);

  PatternInstance overlap;
  overlap.name = "overlap";
  Row bad = base.rows[0];
  bad.cells[1] = interval(KbElement{0L, 3L}, KbElement{0L, 9L});
  bad.cells[0] = interval(KbElement{0L, 0L}, KbElement{0L, 5L});
  overlap.rows = {bad, base.rows[1]};
  const auto v1 = verify_pattern(overlap);
  o.require(std::holds_alternative<Refuted>(v1), std::string("overlap gives ") + verdict_name(v1));
  o.require(brute_verdict(overlap, 20) == "Refuted", "overlap brute force");

  PatternInstance dup;
  dup.name = "duplicated row";
  dup.rows = {base.rows[0], base.rows[0]};
  const auto v2 = verify_pattern(dup);
  o.require(std::holds_alternative<Refuted>(v2), std::string("duplicated row gives ") + verdict_name(v2));
  o.require(brute_verdict(dup, 20) == "Refuted", "duplicated row brute force");

  PatternInstance dup_coset;
  dup_coset.rows = {base.rows[1], base.rows[1]};
  o.require(std::holds_alternative<Refuted>(verify_pattern(dup_coset)), "duplicated coset row");
  if (o.ok) o.detail = "overlap, duplicated interval row and duplicated coset row all Refuted";
  return o;
}

// Distinct right cosets of sub among box elements of sup, via g h^-1 in sub.
std::size_t box_cosets(const KbSubgroup& sup, const KbSubgroup& sub, long radius) {
  std::vector<KbElement> reps;
  for (long n = -radius; n <= radius; ++n)
    for (long m = -radius; m <= radius; ++m) {
      const KbElement g{n, m};
      if (!sup.contains(g)) continue;
      bool fresh = true;
      for (const auto& r : reps)
        if (sub.contains(model_mul(g, kb::inv(r)))) {
          fresh = false;
          break;
        }
      if (fresh) reps.push_back(g);
    }
  return reps.size();
}

Outcome index_pairs() {
  Outcome o;
  const long radius = 12;
  const auto x = KbSubgroup::cyclic_x(1), y = KbSubgroup::cyclic_y(1);
  const auto [hx, ky] = kb::index_pair_check(x, y);
  o.require(hx.is_infinite() && ky.is_infinite(), "(<x>,<y>) not (inf,inf)");
  const auto meet = kb::intersect(x, y);
  // Box evidence: the box parts of <x> and <y> (2r+1 elements each) fall into
  // 2r+1 distinct cosets of the meet, for every radius tried.
  for (long r = 2; r <= radius; r += 5) {
    o.require(box_cosets(x, meet, r) == static_cast<std::size_t>(2 * r + 1), "box cosets in <x>");
    o.require(box_cosets(y, meet, r) == static_cast<std::size_t>(2 * r + 1), "box cosets in <y>");
  }
  // C(y) from the group law on a box: {(n, m) : n even}.
  const auto cy = KbSubgroup::lattice(2, 1);
  for (long n = -radius; n <= radius; ++n)
    for (long m = -radius; m <= radius; ++m) {
      const KbElement g{n, m};
      o.require((model_mul(g, kb::gen_y()) == model_mul(kb::gen_y(), g)) == cy.contains(g),
                "C(y) disagrees at " + kb::to_string(g));
    }
  const auto [hg, kc] = kb::index_pair_check(KbSubgroup::full(), cy);
  o.require(hg == kb::Index::finite(Integer(2)) && kc == kb::Index::finite(Integer(1)), "(G,C(y)) not (2,1)");
  o.require(box_cosets(KbSubgroup::full(), cy, radius) == 2, "box cosets of C(y) in G");
  if (o.ok) o.detail = "(<x>,<y>) = (inf,inf) with growing box cosets; (G,C(y)) = (2,1)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  // --only N runs a single criterion (1-based).
  std::size_t only = 0;
  if (argc == 3 && std::string(argv[1]) == "--only") only = std::stoul(argv[2]);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"kb group axioms with affine oracle", group_axioms},
      {"defining relation and identities", identities},
      {"left-invariance and a right-invariance failure", left_invariance},
      {"depth-2 kb pattern 32x32", kb_pattern},
      {"interval coset cover fails for the center", cover_fails},
      {"hull of a cyclic subgroup of Aut(Q)", plaut_hull},
      {"free-group chain pattern and certificates", free_chain},
      {"presburger interpretation", presburger},
      {"corrupted patterns are refuted", corrupted_patterns},
      {"index pairs", index_pairs},
  };
  std::size_t failed = 0;
  std::size_t ran = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && only != i + 1) continue;
    ++ran;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& ex) {
      o.ok = false;
      o.detail = std::string("exception: ") + ex.what();
    }
    if (!o.ok) ++failed;
    std::printf("%s  %2zu  %s  [%s]\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", ran - failed, ran);
  return failed == 0 && ran > 0 ? 0 : 1;
}
