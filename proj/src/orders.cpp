#include "inpkit/orders.hpp"

#include <algorithm>

namespace inpkit::orders {

using kb::inv;
using kb::mul;

const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "LT";
    case Ordering::Equal: return "EQ";
    case Ordering::Greater: return "GT";
  }
  return "?";
}

Ordering compare(const KbElement& a, const KbElement& b) {
  if (a.n != b.n) return a.n < b.n ? Ordering::Less : Ordering::Greater;
  if (a.m != b.m) return a.m < b.m ? Ordering::Less : Ordering::Greater;
  return Ordering::Equal;
}

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// {base + step t : t in Z}, or {base} when step is 0.
struct Residue {
  Integer base;
  Integer step;

  bool contains(const Integer& v) const { return step == 0 ? v == base : divides(step, v - base); }
  // Least member >= v, if any.
  std::optional<Integer> at_least(const Integer& v) const {
    if (step == 0) return base >= v ? std::optional<Integer>(base) : std::nullopt;
    return Integer(v + floor_mod(base - v, step));
  }
  // Greatest member <= v, if any.
  std::optional<Integer> at_most(const Integer& v) const {
    if (step == 0) return base <= v ? std::optional<Integer>(base) : std::nullopt;
    return Integer(v - floor_mod(v - base, step));
  }
};

std::pair<Residue, Residue> coset_residues(const RightCoset& c) {
  auto [a, b] = kb::right_coset_label(c.subgroup, c.rep);
  return {Residue{a, c.subgroup.step_x()}, Residue{b, c.subgroup.step_y()}};
}

// Intersection of two residue classes; nullopt when empty.
std::optional<Residue> meet(const Residue& r1, const Residue& r2) {
  if (r1.step == 0) return r2.contains(r1.base) ? std::optional<Residue>(r1) : std::nullopt;
  if (r2.step == 0) return r1.contains(r2.base) ? std::optional<Residue>(r2) : std::nullopt;
  Integer g, u, v;
  mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), r1.step.get_mpz_t(), r2.step.get_mpz_t());
  const Integer diff = r2.base - r1.base;
  if (!divides(g, diff)) return std::nullopt;
  const Integer lcm = r1.step / g * r2.step;
  const Integer x = r1.base + r1.step * u * (diff / g);
  return Residue{floor_mod(x, lcm), lcm};
}

}  // namespace

KbInterval::KbInterval(KbElement lo, KbElement hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (less(hi_, lo_)) throw std::invalid_argument("interval endpoints out of order: " + kb::to_string(lo_) + " > " + kb::to_string(hi_));
}

bool KbInterval::contains(const KbElement& g) const { return less_equal(lo_, g) && less_equal(g, hi_); }

bool KbInterval::disjoint_from(const KbInterval& other) const { return less(hi_, other.lo_) || less(other.hi_, lo_); }

std::optional<KbInterval> KbInterval::intersection(const KbInterval& other) const {
  if (disjoint_from(other)) return std::nullopt;
  const KbElement& lo = less(lo_, other.lo_) ? other.lo_ : lo_;
  const KbElement& hi = less(hi_, other.hi_) ? hi_ : other.hi_;
  return KbInterval(lo, hi);
}

KbElement KbInterval::midpoint() const {
  if (lo_.n == hi_.n) return {lo_.n, floor_div(lo_.m + hi_.m, 2)};
  if (hi_.n - lo_.n >= 2) return {floor_div(lo_.n + hi_.n, 2), 0};
  return lo_;
}

KbInterval KbInterval::left_translate(const KbElement& g) const { return {mul(g, lo_), mul(g, hi_)}; }

bool coset_membership(const RightCoset& c, const KbElement& g) { return c.subgroup.contains(mul(g, inv(c.rep))); }

std::optional<KbElement> coset_meet(const RightCoset& a, const RightCoset& b) {
  auto [an, am] = coset_residues(a);
  auto [bn, bm] = coset_residues(b);
  auto n = meet(an, bn);
  auto m = meet(am, bm);
  if (!n || !m) return std::nullopt;
  return KbElement{n->base, m->base};
}

bool cosets_disjoint(const RightCoset& a, const RightCoset& b) {
  if (a.subgroup == b.subgroup) return !coset_membership(a, b.rep);
  return !coset_meet(a, b).has_value();
}

std::optional<KbElement> coset_meets_interval(const RightCoset& c, const KbInterval& i) {
  auto [ns, ms] = coset_residues(c);
  const KbElement& lo = i.lo();
  const KbElement& hi = i.hi();
  if (lo.n == hi.n) {
    if (!ns.contains(lo.n)) return std::nullopt;
    auto m = ms.at_least(lo.m);
    if (m && *m <= hi.m) return KbElement{lo.n, *m};
    return std::nullopt;
  }
  // Bottom row: x^{lo.n} y^m with m >= lo.m.
  if (ns.contains(lo.n)) {
    if (auto m = ms.at_least(lo.m)) return KbElement{lo.n, *m};
  }
  // Full rows strictly between the endpoints.
  if (auto n = ns.at_least(lo.n + 1); n && *n < hi.n) return KbElement{*n, ms.base};
  // Top row: x^{hi.n} y^m with m <= hi.m.
  if (ns.contains(hi.n)) {
    if (auto m = ms.at_most(hi.m)) return KbElement{hi.n, *m};
  }
  return std::nullopt;
}

IntervalFamilyMember interval_construct(const Integer& n, const Integer& k) {
  if (n < 0 || k < 0) throw std::invalid_argument("interval_construct needs natural n and k");
  IntervalFamilyMember out{KbInterval({k, 0}, {k, n}), {}};
  for (Integer j = 0; j <= n; ++j) out.witnesses.push_back({k, j});
  return out;
}

KbElement coset_cofinal_witness(const KbSubgroup& h, const KbElement& c, const KbElement& bound) {
  if (h.is_trivial()) throw DegenerateSubgroup("trivial subgroup: the coset is a single point, not cofinal");
  if (less(bound, c)) return c;

  const Integer sx = h.step_x();
  const Integer sy = h.step_y();
  KbElement top;   // in H, >= bound
  KbElement low;   // in H, < c
  if (sx != 0) {
    top = {sx * (floor_div(bound.n, sx) + 1), 0};
    low = {sx * (floor_div(c.n, sx) - 1), 0};
  } else {
    // H lies in <y>: its hull is <y> itself.
    if (bound.n > 0 || c.n < 0) {
      throw NotCofinal("coset of " + h.describe() + " through " + kb::to_string(c) + " cannot exceed " +
                       kb::to_string(bound));
    }
    top = {0, bound.n < 0 ? Integer(0) : Integer(sy * (floor_div(bound.m, sy) + 1))};
    low = {0, c.n > 0 ? Integer(0) : Integer(sy * (floor_div(c.m, sy) - 1))};
  }
  // h = (h h1^-1) h1 < (h h1^-1) c by left-invariance.
  KbElement result = mul(mul(top, inv(low)), c);
  if (!less(bound, result) || !coset_membership({h, c}, result)) {
    throw std::logic_error("coset_cofinal_witness produced an invalid element");
  }
  return result;
}

InfiniteWitness::InfiniteWitness(KbSubgroup subgroup, KbElement upper)
    : subgroup_(std::move(subgroup)), upper_(std::move(upper)) {
  if (subgroup_.step_y() != 0 || upper_.n < 1) {
    throw std::invalid_argument("infinitely many cosets need step_y = 0 and an upper end beyond <y>");
  }
}

InfiniteWitness::Entry InfiniteWitness::at(std::size_t i) const {
  KbElement g{0, static_cast<long>(i)};
  auto label = kb::right_coset_label(subgroup_, g);
  return {std::move(g), std::move(label)};
}

std::vector<InfiniteWitness::Entry> InfiniteWitness::take(std::size_t count) const {
  std::vector<Entry> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(at(i));
  return out;
}

CoverResult interval_coset_cover(const KbElement& x, const KbSubgroup& h, std::size_t budget) {
  if (!less(kb::identity(), x)) throw std::invalid_argument("interval_coset_cover needs x > e");
  const Integer sx = h.step_x();
  const Integer sy = h.step_y();

  if (x.n >= 1 && sy == 0) return InfiniteWitness(h, x);

  // Finitely many cosets; collect one representative inside [e, x] per label.
  std::vector<KbElement> reps;
  auto rows_needed = [&](const Integer& rows) { return rows * (sy == 0 ? Integer(1) : sy); };
  Integer needed;
  if (x.n == 0) {
    needed = sy == 0 ? Integer(x.m + 1) : Integer(std::min<Integer>(x.m + 1, sy));
  } else {
    const Integer rows = sx == 0 ? Integer(x.n + 1) : Integer(std::min<Integer>(x.n + 1, sx));
    needed = rows_needed(rows);
  }
  if (needed > budget) return BudgetExceeded{needed};

  FiniteCover cover;
  if (x.n == 0) {
    for (Integer t = 0; t < needed; ++t) cover.cosets.push_back({h, {0, t}});
    return cover;
  }
  const Integer rows = needed / (sy == 0 ? Integer(1) : sy);
  for (Integer a = 0; a < rows; ++a) {
    for (Integer r = 0; r < sy; ++r) {
      // The top row is a downward ray, so pick representatives below x.
      KbElement rep = a == x.n ? KbElement{a, x.m - r} : KbElement{a, r};
      cover.cosets.push_back({h, std::move(rep)});
    }
  }
  return cover;
}

}  // namespace inpkit::orders
