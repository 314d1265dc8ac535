#include "inpkit/report.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "inpkit/free_group.hpp"
#include "inpkit/kb.hpp"
#include "inpkit/orders.hpp"
#include "inpkit/patterns.hpp"
#include "inpkit/plaut.hpp"
#include "inpkit/serialize.hpp"

namespace inpkit::report {

using nlohmann::json;

bool Report::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names = {"kb-axioms",  "kb-pattern", "kb-cover-fails", "presburger-iso",
                                                 "plaut-hull", "free-chain", "index-pairs"};
  return names;
}

const std::map<std::string, std::string>& anchor_registry() {
  static const std::map<std::string, std::string> anchors = {
      {"kb-axioms", "klein-bottle/normal-form-group-law"},
      {"kb-pattern", "klein-bottle/depth-2-inp-pattern"},
      {"kb-cover-fails", "klein-bottle/interval-coset-cover"},
      {"presburger-iso", "klein-bottle/presburger-interpretation"},
      {"plaut-hull", "aut-q/convex-hull-of-cyclic-subgroup"},
      {"free-chain", "free-group/chain-inp-pattern"},
      {"index-pairs", "klein-bottle/subgroup-index-pairs"},
  };
  return anchors;
}

namespace {

using kb::KbElement;
using kb::KbSubgroup;

long positive(const std::optional<long>& v, long fallback, const char* flag) {
  if (!v) return fallback;
  if (*v <= 0) throw InvalidOption(std::string(flag) + " must be positive, got " + std::to_string(*v));
  return *v;
}

std::uint64_t positive_cap(const std::optional<std::uint64_t>& v, std::uint64_t fallback) {
  if (!v) return fallback;
  if (*v == 0) throw InvalidOption("--cap must be positive");
  return *v;
}

Integer random_integer(std::mt19937_64& rng, std::int64_t magnitude) {
  std::uniform_int_distribution<std::int64_t> dist(-magnitude, magnitude);
  return Integer(static_cast<long>(dist(rng)));
}

KbElement random_kb(std::mt19937_64& rng, std::int64_t magnitude) {
  return {random_integer(rng, magnitude), random_integer(rng, magnitude)};
}

Check check(std::string name, bool passed, std::string detail = {}) { return {std::move(name), passed, std::move(detail)}; }

std::string failures(std::size_t bad, std::size_t total) {
  return std::to_string(bad) + " failures / " + std::to_string(total);
}

// ---------------------------------------------------------------------------

Report demo_kb_axioms(const DemoOptions& o) {
  const long samples = positive(o.bound, 10000, "--bound");
  constexpr std::int64_t kMagnitude = 1'000'000'000'000'000'000;
  Report r;
  r.inputs = {{"samples", samples}, {"magnitude", kMagnitude}, {"seed", o.seed}};

  std::mt19937_64 rng(o.seed);
  std::size_t assoc = 0, ident = 0, inverse = 0, oracle = 0, square = 0, left_inv = 0, cx = 0;
  const KbElement e = kb::identity();
  const KbSubgroup cy = KbSubgroup::lattice(2, 1);
  for (long i = 0; i < samples; ++i) {
    const KbElement a = random_kb(rng, kMagnitude);
    const KbElement b = random_kb(rng, kMagnitude);
    const KbElement c = random_kb(rng, kMagnitude);
    assoc += kb::mul(kb::mul(a, b), c) != kb::mul(a, kb::mul(b, c));
    ident += kb::mul(a, e) != a || kb::mul(e, a) != a;
    inverse += kb::mul(a, kb::inv(a)) != e || kb::mul(kb::inv(a), a) != e;
    const auto composite = kb::AffineAction::of(a).then(kb::AffineAction::of(b));
    oracle += composite.read_back() != kb::mul(a, b) || composite != kb::AffineAction::of(kb::mul(a, b));
    square += !cy.contains(kb::pow(a, 2));
    if (orders::less(b, c)) left_inv += !orders::less(kb::mul(a, b), kb::mul(a, c));
    if (orders::less(c, b)) left_inv += !orders::less(kb::mul(a, c), kb::mul(a, b));
    const KbElement h = (i % 4 == 0) ? KbElement{a.n, Integer(0)} : a;
    cx += kb::commutes(kb::gen_x(), h) != (h.m == 0);
  }
  const std::size_t n = static_cast<std::size_t>(samples);
  r.checks.push_back(check("associativity", assoc == 0, failures(assoc, n)));
  r.checks.push_back(check("identity", ident == 0, failures(ident, n)));
  r.checks.push_back(check("inverse", inverse == 0, failures(inverse, n)));
  r.checks.push_back(check("affine-action oracle agrees with the normal-form law", oracle == 0, failures(oracle, n)));
  r.checks.push_back(check("g^2 lies in C(y) = Lattice(2,1)", square == 0, failures(square, n)));
  r.checks.push_back(check("C(x) membership iff y-exponent is 0", cx == 0, failures(cx, n)));
  r.checks.push_back(check("left-invariance of the lexicographic order", left_inv == 0, failures(left_inv, n)));

  const KbElement rel = kb::mul(kb::mul(kb::inv(kb::gen_x()), kb::gen_y()), kb::gen_x());
  r.checks.push_back(check("defining relation x^-1 y x = y^-1", rel == KbElement{0, -1}, kb::to_string(rel)));

  std::size_t roots = 0;
  for (long m = -100; m <= 100; ++m) roots += kb::pow(KbElement{1, m}, 2) != KbElement{2, 0};
  r.checks.push_back(check("(x y^m)^2 = x^2 for m in [-100, 100]", roots == 0, failures(roots, 201)));

  const KbSubgroup center = kb::center_description();
  r.checks.push_back(check("center is CyclicX(2)", center == KbSubgroup::cyclic_x(2), center.describe()));

  // Right multiplication by x flips the y-exponent, so it reverses y^0 < y^1.
  const KbElement g = e, h = kb::gen_y(), f = kb::gen_x();
  const bool flip = orders::less(g, h) && orders::less(kb::mul(h, f), kb::mul(g, f));
  r.checks.push_back(check("order is not right-invariant", flip,
                           "e < y but y x = " + kb::to_string(kb::mul(h, f)) + " < x = " + kb::to_string(kb::mul(g, f))));

  r.witnesses.columns = {"identity", "value"};
  r.witnesses.rows = {
      {"x^-1 y x", kb::to_string(rel)},
      {"(x y^5)^2", kb::to_string(kb::pow(KbElement{1, 5}, 2))},
      {"(x)^2", kb::to_string(kb::pow(kb::gen_x(), 2))},
      {"y x vs x (right-invariance failure)", kb::to_string(kb::mul(h, f)) + " < " + kb::to_string(kb::mul(g, f))},
  };
  r.result = "group law verified";
  return r;
}

// Re-validates every path witness and row certificate of a verdict.
std::pair<std::size_t, std::size_t> revalidate(const patterns::PatternInstance& p, const patterns::Verified& v) {
  std::size_t bad_paths = 0;
  for (const auto& pw : v.paths) {
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
      bad_paths += !std::holds_alternative<patterns::Member>(
          patterns::defset_membership(p.rows[i].cells[pw.path[i]], pw.element));
    }
  }
  std::size_t bad_rows = 0;
  for (const auto& row : p.rows) {
    bad_rows += !std::holds_alternative<patterns::RowCertified>(patterns::row_inconsistency_check(row));
  }
  return {bad_paths, bad_rows};
}

std::string eta_string(const patterns::Path& path) {
  std::string s = "(";
  for (std::size_t i = 0; i < path.size(); ++i) s += (i ? "," : "") + std::to_string(path[i]);
  return s + ")";
}

Report demo_kb_pattern(const DemoOptions& o) {
  const long cols = positive(o.cols, 8, "--cols");
  if (cols < 2) throw InvalidOption("--cols must be at least 2 for kb-pattern");
  Report r;
  r.inputs = {{"n_cols", cols}, {"j_cols", cols}};
  const auto pattern = patterns::build_kb_depth2(cols, cols);
  const auto verdict = patterns::verify_pattern(pattern);
  r.result = patterns::verdict_name(verdict);
  r.checks.push_back(check("verdict is Verified", std::holds_alternative<patterns::Verified>(verdict), r.result));
  r.certificates["pattern"] = serialize::pattern(pattern);
  r.certificates["verdict"] = serialize::verdict(verdict);
  r.witnesses.columns = {"eta", "witness", "checks"};
  if (const auto* v = std::get_if<patterns::Verified>(&verdict)) {
    const std::size_t expected = static_cast<std::size_t>(cols * cols);
    r.checks.push_back(check("one witness per path", v->paths.size() == expected,
                             std::to_string(v->paths.size()) + " / " + std::to_string(expected)));
    const auto [bad_paths, bad_rows] = revalidate(pattern, *v);
    r.checks.push_back(check("witnesses re-validated", bad_paths == 0, failures(bad_paths, v->paths.size() * 2)));
    r.checks.push_back(check("rows certified 2-inconsistent", bad_rows == 0 && v->rows.size() == 2,
                             std::to_string(v->rows.size()) + " rows"));
    for (const auto& pw : v->paths) {
      r.witnesses.rows.push_back({eta_string(pw.path), patterns::to_string(pw.element),
                                  pw.memberships[0].rule + " + " + pw.memberships[1].rule});
    }
  }
  return r;
}

Report demo_kb_cover_fails(const DemoOptions& o) {
  const long budget = positive(o.bound, 100, "--bound");
  const std::size_t count = static_cast<std::size_t>(std::max<long>(200, 2 * budget));
  Report r;
  const KbElement x = kb::gen_x();
  const KbSubgroup center = kb::center_description();
  r.inputs = {{"x", serialize::element(x)}, {"subgroup", center.describe()}, {"budget", budget}, {"witnesses", count}};

  const auto cover = orders::interval_coset_cover(x, center, static_cast<std::size_t>(budget));
  const auto* inf = std::get_if<orders::InfiniteWitness>(&cover);
  r.result = inf ? "InfiniteWitness" : "finite cover";
  r.checks.push_back(check("[e, x] is not covered by finitely many center cosets", inf != nullptr, r.result));
  if (inf) {
    const auto entries = inf->take(count);
    const orders::KbInterval interval(kb::identity(), x);
    std::size_t outside = 0, clashes = 0;
    std::set<std::pair<Integer, Integer>> labels;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      outside += !interval.contains(entries[i].element);
      labels.insert(entries[i].coset_label);
      for (std::size_t j = 0; j < i; ++j) {
        clashes += orders::coset_membership({center, entries[j].element}, entries[i].element);
      }
    }
    r.checks.push_back(check("witnesses lie in [e, x]", outside == 0, failures(outside, entries.size())));
    r.checks.push_back(check("witnesses lie in pairwise distinct cosets", clashes == 0 && labels.size() == entries.size(),
                             std::to_string(labels.size()) + " distinct labels"));
    json cert = json::array();
    for (const auto& en : entries) {
      r.witnesses.rows.push_back({kb::to_string(en.element), "(" + en.coset_label.first.get_str() + "," + en.coset_label.second.get_str() + ")"});
      cert.push_back({{"element", serialize::element(en.element)},
                      {"coset_label", {serialize::integer(en.coset_label.first), serialize::integer(en.coset_label.second)}}});
    }
    r.certificates["infinite_witness"] = cert;
  }
  r.witnesses.columns = {"element", "coset label"};

  // Contrast: a subgroup containing <y> covers [e, y^5] with one coset.
  const auto finite = orders::interval_coset_cover(KbElement{0, 5}, KbSubgroup::cyclic_y(1), 1);
  const auto* fc = std::get_if<orders::FiniteCover>(&finite);
  r.checks.push_back(check("[e, y^5] is one <y>-coset", fc && fc->cosets.size() == 1));

  const KbElement cofinal = orders::coset_cofinal_witness(KbSubgroup::lattice(2, 1), kb::identity(), KbElement{5, 5});
  r.checks.push_back(check("cosets of C(y) are cofinal",
                           orders::less(KbElement{5, 5}, cofinal) && KbSubgroup::lattice(2, 1).contains(cofinal),
                           kb::to_string(cofinal) + " > (5,5)"));
  return r;
}

Report demo_presburger(const DemoOptions& o) {
  const long samples = positive(o.bound, 10000, "--bound");
  constexpr std::int64_t kMagnitude = 1'000'000'000;
  Report r;
  r.inputs = {{"samples", samples}, {"magnitude", kMagnitude}, {"seed", o.seed}, {"carrier", kb::presburger::kCarrier}};
  std::mt19937_64 rng(o.seed);
  std::vector<std::pair<KbElement, KbElement>> pairs;
  pairs.reserve(static_cast<std::size_t>(samples));
  for (long i = 0; i < samples; ++i) pairs.emplace_back(random_kb(rng, kMagnitude), random_kb(rng, kMagnitude));
  const auto violation = kb::presburger::check(pairs);
  r.checks.push_back(check("iso(g h) = iso(g) (+) iso(h)", !violation,
                           violation ? "violated at " + kb::to_string(violation->g) + ", " + kb::to_string(violation->h)
                                     : failures(0, pairs.size())));
  const auto ex = kb::presburger::op(kb::presburger::iso({1, 2}), kb::presburger::iso({3, 5}));
  r.checks.push_back(check("iso(1,2) (+) iso(3,5) = iso(4,3)", ex == kb::presburger::iso({4, 3})));
  bool unit = true;
  for (std::size_t i = 0; i < std::min<std::size_t>(pairs.size(), 100); ++i) {
    const auto p = kb::presburger::iso(pairs[i].first);
    unit = unit && kb::presburger::op(p, kb::presburger::identity()) == p && kb::presburger::op(kb::presburger::identity(), p) == p;
  }
  r.checks.push_back(check("(0,0) is the identity of (+)", unit));
  r.result = violation ? "violation" : "isomorphism holds on all samples";
  r.witnesses.columns = {"g", "h", "iso(g h)", "iso(g) (+) iso(h)"};
  for (std::size_t i = 0; i < std::min<std::size_t>(pairs.size(), 5); ++i) {
    const auto& [g, h] = pairs[i];
    const auto lhs = kb::presburger::iso(kb::mul(g, h));
    const auto rhs = kb::presburger::op(kb::presburger::iso(g), kb::presburger::iso(h));
    r.witnesses.rows.push_back({kb::to_string(g), kb::to_string(h), kb::to_string(kb::presburger::iso_inverse(lhs)),
                                kb::to_string(kb::presburger::iso_inverse(rhs))});
  }
  return r;
}

Report demo_plaut_hull(const DemoOptions& o) {
  using namespace inpkit::plaut;
  const std::uint64_t cap = positive_cap(o.cap, 10000);
  const long k_range = positive(o.bound, 8, "--bound");
  Report r;
  r.inputs = {{"cap", cap}, {"k_range", k_range}};
  const HullExample ex = example_hull_build();
  r.certificates["f"] = serialize::plaut(ex.f);
  r.certificates["g"] = serialize::plaut(ex.g);
  r.certificates["points"] = {{"a", serialize::rational(ex.a)}, {"b", serialize::rational(ex.b)},
                              {"c", serialize::rational(ex.c)}, {"d", serialize::rational(ex.d)},
                              {"e", serialize::rational(ex.e)}};

  r.checks.push_back(check("a is the first rational of the well-order", ex.a == well_order::unrank(0)));
  r.checks.push_back(check("f(a) = c", ex.f(ex.a) == ex.c));
  r.checks.push_back(check("f(d) = d", ex.f(ex.d) == ex.d));
  r.checks.push_back(check("g(a) = b", ex.g(ex.a) == ex.b));
  r.checks.push_back(check("g(b) = e", ex.g(ex.b) == ex.e));
  r.checks.push_back(check("g^2(a) = e", ex.g(ex.g(ex.a)) == ex.e));
  r.checks.push_back(check("g < f", compare(ex.g, ex.f, cap) == Ordering::Less));
  r.checks.push_back(check("id < g", compare(PlAut::identity(), ex.g, cap) == Ordering::Less));

  const auto hull_g = hull_of_cyclic_membership(ex.f, ex.g, k_range, cap);
  const auto* in_g = std::get_if<HullIn>(&hull_g);
  r.checks.push_back(check("g in h(<f>) as In(0,1)", in_g && in_g->lower_power == 0 && in_g->upper_power == 1));

  const PlAut g2 = compose(ex.g, ex.g);
  const auto hull_g2 = hull_of_cyclic_membership(ex.f, g2, k_range, cap);
  const auto* out = std::get_if<HullNotIn>(&hull_g2);
  const bool cert_ok = out && out->above && validate(out->orbit, ex.f);
  r.checks.push_back(check("g^2 not in h(<f>) with a fixed-point certificate", cert_ok,
                           out ? "f^k(a) < " + to_string(out->orbit.fixed_point) + " <= g^2(a) = " +
                                     to_string(out->g_at_first_point)
                               : "no certificate"));
  if (out) {
    r.certificates["g_squared_not_in_hull"] = {{"first_point", serialize::rational(out->first_point)},
                                               {"g_at_first_point", serialize::rational(out->g_at_first_point)},
                                               {"above", out->above},
                                               {"orbit", serialize::orbit_certificate(out->orbit)}};
  }

  const auto hull_f = hull_of_cyclic_membership(ex.f, ex.f, k_range, cap);
  const auto* in_f = std::get_if<HullIn>(&hull_f);
  r.checks.push_back(check("f in h(<f>) as In(1,1)", in_f && in_f->lower_power == 1 && in_f->upper_power == 1));

  std::size_t bad = 0;
  r.witnesses.columns = {"k", "f^k(a)", "< e"};
  for (long k = -50; k <= 50; ++k) {
    const Rational v = orbit_point(ex.f, ex.a, k);
    bad += !(v < ex.e);
    r.witnesses.rows.push_back({std::to_string(k), to_string(v), v < ex.e ? "yes" : "no"});
  }
  r.checks.push_back(check("f^k(a) < e for k in [-50, 50]", bad == 0, failures(bad, 101)));
  r.result = cert_ok && in_g ? "h(<f>) is not a subgroup: g in, g^2 out" : "hull counterexample not reproduced";
  return r;
}

Report demo_free_chain(const DemoOptions& o) {
  const long depth = positive(o.depth, 3, "--depth");
  const long cols = positive(o.cols, 3, "--cols");
  const long m_bound = positive(o.bound, 10, "--bound");
  if (depth < 2) throw InvalidOption("--depth must be at least 2 for free-chain");
  if (cols < 2) throw InvalidOption("--cols must be at least 2 for free-chain");
  const std::size_t n = static_cast<std::size_t>(depth - 1);
  Report r;
  r.inputs = {{"n", n}, {"depth", depth}, {"cols", cols}, {"m_bound", m_bound}};

  const auto pattern = patterns::build_free_chain_pattern(n, static_cast<std::size_t>(cols));
  const auto verdict = patterns::verify_pattern(pattern);
  r.result = patterns::verdict_name(verdict);
  r.checks.push_back(check("verdict is Verified", std::holds_alternative<patterns::Verified>(verdict), r.result));
  r.certificates["pattern"] = serialize::pattern(pattern);
  r.certificates["verdict"] = serialize::verdict(verdict);
  r.witnesses.columns = {"eta", "witness", "abelianization"};
  if (const auto* v = std::get_if<patterns::Verified>(&verdict)) {
    std::size_t expected = 1;
    for (std::size_t i = 0; i <= n; ++i) expected *= static_cast<std::size_t>(cols);
    std::set<free::AbelianVector> images;
    for (const auto& pw : v->paths) {
      const auto ab = free::abelianize(std::get<free::FreeWord>(pw.element));
      images.insert(ab);
      std::ostringstream os;
      os << ab;
      r.witnesses.rows.push_back({eta_string(pw.path), patterns::to_string(pw.element), os.str()});
    }
    r.checks.push_back(check("cols^(n+1) witnesses", v->paths.size() == expected,
                             std::to_string(v->paths.size()) + " / " + std::to_string(expected)));
    r.checks.push_back(check("witnesses distinct under abelianization", images.size() == v->paths.size()));
    const auto [bad_paths, bad_rows] = revalidate(pattern, *v);
    r.checks.push_back(check("witnesses re-validated", bad_paths == 0, failures(bad_paths, v->paths.size() * (n + 1))));
    r.checks.push_back(check("rows certified 2-inconsistent", bad_rows == 0));
  }

  std::size_t certs = 0, bad = 0;
  json samples = json::array();
  for (std::size_t i = 0; i <= n; ++i) {
    for (long m0 = 1; m0 <= m_bound; ++m0) {
      for (long m1 = 1; m1 <= m_bound; ++m1) {
        if (m0 == m1) continue;
        const auto c = patterns::chain_nonmembership_certificate(n, i, m0, m1);
        ++certs;
        bad += c.exponent_gap != m0 - m1 || c.allowed.contains(c.exponent_gap);
        if (m0 == 2 && m1 == 1) {
          samples.push_back({{"i", i}, {"m0", m0}, {"m1", m1}, {"quotient", serialize::element(c.quotient)},
                             {"excluded_set", serialize::defset(c.excluded_set)},
                             {"certificate", serialize::certificate(c.certificate)}});
        }
      }
    }
  }
  r.certificates["chain_nonmembership"] = {{"count", certs}, {"samples", samples}};
  r.checks.push_back(check("chain non-membership certified for all i <= n, m0 != m1", bad == 0,
                           std::to_string(certs) + " certificates"));
  return r;
}

// Right cosets of sub met by the elements of sup in the box |n|, |m| <= radius,
// clustered by the membership criterion alone.
std::size_t box_coset_count(const KbSubgroup& sup, const KbSubgroup& sub, long radius) {
  std::vector<KbElement> reps;
  for (long n = -radius; n <= radius; ++n) {
    for (long m = -radius; m <= radius; ++m) {
      const KbElement g{n, m};
      if (!sup.contains(g)) continue;
      const bool seen = std::any_of(reps.begin(), reps.end(),
                                    [&](const KbElement& rep) { return orders::coset_membership({sub, rep}, g); });
      if (!seen) reps.push_back(g);
    }
  }
  return reps.size();
}

std::size_t box_size(const KbSubgroup& h, long radius) {
  std::size_t count = 0;
  for (long n = -radius; n <= radius; ++n) {
    for (long m = -radius; m <= radius; ++m) count += h.contains(KbElement{n, m});
  }
  return count;
}

Report demo_index_pairs(const DemoOptions& o) {
  const long radius = positive(o.bound, 12, "--bound");
  Report r;
  r.inputs = {{"box_radius", radius}};
  struct Case {
    KbSubgroup h;
    KbSubgroup k;
    std::string expected_first;
    std::string expected_second;
  };
  const std::vector<Case> cases = {
      {KbSubgroup::cyclic_x(1), KbSubgroup::cyclic_y(1), "inf", "inf"},
      {KbSubgroup::full(), KbSubgroup::lattice(2, 1), "2", "1"},
      {KbSubgroup::lattice(2, 1), KbSubgroup::lattice(3, 1), "3", "2"},
      {kb::center_description(), KbSubgroup::cyclic_x(1), "1", "2"},
      {KbSubgroup::lattice(2, 1), KbSubgroup::lattice(2, 1), "1", "1"},
  };
  r.witnesses.columns = {"H", "K", "H n K", "[H : H n K]", "[K : H n K]", "box cosets (H, K)"};
  json evidence = json::array();
  for (const auto& c : cases) {
    const auto [first, second] = kb::index_pair_check(c.h, c.k);
    const KbSubgroup meet = kb::intersect(c.h, c.k);
    const std::size_t box_h = box_coset_count(c.h, meet, radius);
    const std::size_t box_k = box_coset_count(c.k, meet, radius);
    auto consistent = [&](const kb::Index& idx, std::size_t counted, const KbSubgroup& sup) {
      // Infinite index: every box element of sup sits in its own coset.
      if (idx.is_infinite()) return meet.is_trivial() ? counted == box_size(sup, radius) : counted > 1;
      return *idx.value == counted;
    };
    const std::string label = "(" + c.h.describe() + ", " + c.k.describe() + ")";
    r.checks.push_back(check("index pair " + label,
                             first.to_string() == c.expected_first && second.to_string() == c.expected_second,
                             "(" + first.to_string() + ", " + second.to_string() + ")"));
    r.checks.push_back(check("box evidence " + label, consistent(first, box_h, c.h) && consistent(second, box_k, c.k),
                             "(" + std::to_string(box_h) + ", " + std::to_string(box_k) + ") cosets in the box"));
    r.witnesses.rows.push_back({c.h.describe(), c.k.describe(), meet.describe(), first.to_string(), second.to_string(),
                                "(" + std::to_string(box_h) + ", " + std::to_string(box_k) + ")"});
    evidence.push_back({{"h", c.h.describe()}, {"k", c.k.describe()}, {"meet", meet.describe()},
                        {"index", {first.to_string(), second.to_string()}}, {"box_cosets", {box_h, box_k}}});
  }
  r.certificates["index_pairs"] = evidence;
  r.result = "index pairs computed";
  return r;
}

}  // namespace

Report run_demo(const std::string& name, const DemoOptions& options) {
  static const std::map<std::string, std::function<Report(const DemoOptions&)>> demos = {
      {"kb-axioms", demo_kb_axioms},   {"kb-pattern", demo_kb_pattern}, {"kb-cover-fails", demo_kb_cover_fails},
      {"presburger-iso", demo_presburger}, {"plaut-hull", demo_plaut_hull}, {"free-chain", demo_free_chain},
      {"index-pairs", demo_index_pairs},
  };
  auto it = demos.find(name);
  if (it == demos.end()) throw UnknownDemo("unknown demo '" + name + "'");
  const auto start = std::chrono::steady_clock::now();
  Report r = it->second(options);
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  r.scenario = name;
  r.anchor = anchor_registry().at(name);
  return r;
}

json to_json(const Report& r, bool include_timing) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  json out = {{"schema", kSchemaVersion},
              {"scenario", r.scenario},
              {"anchor", r.anchor},
              {"inputs", r.inputs},
              {"result", r.result},
              {"passed", r.passed()},
              {"checks", checks},
              {"witnesses", {{"columns", r.witnesses.columns}, {"rows", r.witnesses.rows}}},
              {"certificates", r.certificates}};
  if (include_timing) out["elapsed_ms"] = r.elapsed_ms;
  return out;
}

Report from_json(const json& j) {
  if (j.at("schema") != kSchemaVersion) throw std::invalid_argument("unsupported report schema");
  Report r;
  r.scenario = j.at("scenario");
  r.anchor = j.at("anchor");
  r.inputs = j.at("inputs");
  r.result = j.at("result");
  for (const auto& c : j.at("checks")) r.checks.push_back({c.at("name"), c.at("passed"), c.at("detail")});
  r.witnesses.columns = j.at("witnesses").at("columns").get<std::vector<std::string>>();
  r.witnesses.rows = j.at("witnesses").at("rows").get<std::vector<std::vector<std::string>>>();
  r.certificates = j.at("certificates");
  if (j.contains("elapsed_ms")) r.elapsed_ms = j.at("elapsed_ms");
  return r;
}

std::string emit(const Report& r, Format format, bool include_timing) {
  if (format == Format::Json) return to_json(r, include_timing).dump(2) + "\n";

  std::ostringstream os;
  os << "scenario : " << r.scenario << '\n'
     << "anchor   : " << r.anchor << '\n'
     << "inputs   : " << r.inputs.dump() << '\n'
     << "result   : " << r.result << '\n'
     << "checks   :\n";
  for (const auto& c : r.checks) {
    os << "  " << (c.passed ? "PASS" : "FAIL") << "  " << c.name;
    if (!c.detail.empty()) os << "  [" << c.detail << ']';
    os << '\n';
  }
  os << "witnesses:";
  if (r.witnesses.rows.empty()) {
    os << " (no witnesses)\n";
  } else {
    os << ' ';
    for (std::size_t i = 0; i < r.witnesses.columns.size(); ++i) os << (i ? " | " : "") << r.witnesses.columns[i];
    os << '\n';
    for (const auto& row : r.witnesses.rows) {
      os << "  ";
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " | " : "") << row[i];
      os << '\n';
    }
  }
  os << "certificates:";
  if (r.certificates.empty()) {
    os << " (none)\n";
  } else {
    for (const auto& [key, value] : r.certificates.items()) os << ' ' << key;
    os << "  (full data with --format json)\n";
  }
  if (include_timing) os << "elapsed  : " << r.elapsed_ms << " ms\n";
  os << "status   : " << (r.passed() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace inpkit::report
