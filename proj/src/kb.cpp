#include "inpkit/kb.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace inpkit::kb {

std::ostream& operator<<(std::ostream& os, const KbElement& g) {
  return os << '(' << g.n.get_str() << ',' << g.m.get_str() << ')';
}

std::string to_string(const KbElement& g) {
  std::ostringstream os;
  os << g;
  return os.str();
}

// (x^n y^m)(x^n' y^m') = x^{n+n'} y^{m' + (-1)^{n'} m}
KbElement mul(const KbElement& a, const KbElement& b) {
  KbElement r;
  r.n = a.n + b.n;
  if (is_odd(b.n)) {
    r.m = b.m - a.m;
  } else {
    r.m = b.m + a.m;
  }
  return r;
}

// (x^n y^m)^-1 = x^-n y^{(-1)^{n+1} m}
KbElement inv(const KbElement& a) {
  KbElement r;
  r.n = -a.n;
  if (is_odd(a.n)) {
    r.m = a.m;
  } else {
    r.m = -a.m;
  }
  return r;
}

KbElement pow(const KbElement& a, const Integer& k) {
  if (k < 0) return inv(pow(a, Integer(-k)));
  // The square of any element is (2n, 0) or (0, 2m), both in the abelian
  // subgroup C(y) where powers are linear; square-and-multiply keeps it short.
  KbElement result = identity();
  KbElement base = a;
  Integer e = k;
  while (e > 0) {
    if (is_odd(e)) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

bool commutes(const KbElement& g, const KbElement& h) { return mul(g, h) == mul(h, g); }

AffineAction::AffineAction(Integer shift, int sign, Integer offset)
    : shift_(std::move(shift)), sign_(sign), offset_(std::move(offset)) {
  if (sign_ != 1 && sign_ != -1) throw std::invalid_argument("AffineAction sign must be +1 or -1");
}

AffineAction AffineAction::of(const KbElement& g) { return {g.n, parity_sign(g.n), g.m}; }

std::pair<Integer, Integer> AffineAction::apply(const Integer& u, const Integer& v) const {
  Integer nv = sign_ * v;
  nv += offset_;
  return {u + shift_, nv};
}

AffineAction AffineAction::then(const AffineAction& next) const {
  // next(this(u, v)) = (u + s1 + s2, e2 (e1 v + o1) + o2)
  Integer off = next.sign_ * offset_;
  off += next.offset_;
  return {shift_ + next.shift_, sign_ * next.sign_, off};
}

KbElement AffineAction::read_back() const {
  auto [u, v] = apply(0, 0);
  return {u, v};
}

// ---------------------------------------------------------------------------
// Subgroups

KbSubgroup::KbSubgroup(Kind k, Integer p, Integer q) : kind_(k), p_(std::move(p)), q_(std::move(q)) {}

KbSubgroup KbSubgroup::full() { return {Kind::Full, 0, 0}; }
KbSubgroup KbSubgroup::trivial() { return {Kind::Trivial, 0, 0}; }
KbSubgroup KbSubgroup::center() { return {Kind::Center, 0, 0}; }

KbSubgroup KbSubgroup::cyclic_x(Integer p) {
  if (p <= 0) throw std::invalid_argument("CyclicX needs a positive step");
  return {Kind::CyclicX, std::move(p), 0};
}

KbSubgroup KbSubgroup::cyclic_y(Integer q) {
  if (q <= 0) throw std::invalid_argument("CyclicY needs a positive step");
  return {Kind::CyclicY, 0, std::move(q)};
}

KbSubgroup KbSubgroup::lattice(Integer p, Integer q) {
  if (p <= 0 || q <= 0) throw std::invalid_argument("Lattice needs positive steps");
  return {Kind::Lattice, std::move(p), std::move(q)};
}

Integer KbSubgroup::step_x() const {
  switch (kind_) {
    case Kind::Full: return 1;
    case Kind::Trivial: return 0;
    case Kind::Center: return 2;
    case Kind::CyclicX: return p_;
    case Kind::CyclicY: return 0;
    case Kind::Lattice: return p_;
  }
  return 0;
}

Integer KbSubgroup::step_y() const {
  switch (kind_) {
    case Kind::Full: return 1;
    case Kind::Trivial: return 0;
    case Kind::Center: return 0;
    case Kind::CyclicX: return 0;
    case Kind::CyclicY: return q_;
    case Kind::Lattice: return q_;
  }
  return 0;
}

bool KbSubgroup::contains(const KbElement& g) const { return divides(step_x(), g.n) && divides(step_y(), g.m); }

bool KbSubgroup::is_trivial() const { return step_x() == 0 && step_y() == 0; }

KbSubgroup KbSubgroup::from_steps(const Integer& sx, const Integer& sy) {
  if (sx == 0 && sy == 0) return trivial();
  if (sy == 0) return cyclic_x(sx);
  if (sx == 0) return cyclic_y(sy);
  if (sx == 1 && sy == 1) return full();
  return lattice(sx, sy);
}

KbSubgroup KbSubgroup::canonical() const { return from_steps(step_x(), step_y()); }

std::string KbSubgroup::describe() const {
  switch (kind_) {
    case Kind::Full: return "Full";
    case Kind::Trivial: return "Trivial";
    case Kind::Center: return "Center";
    case Kind::CyclicX: return "CyclicX(" + p_.get_str() + ")";
    case Kind::CyclicY: return "CyclicY(" + q_.get_str() + ")";
    case Kind::Lattice: return "Lattice(" + p_.get_str() + "," + q_.get_str() + ")";
  }
  return "?";
}

bool operator==(const KbSubgroup& a, const KbSubgroup& b) {
  return a.step_x() == b.step_x() && a.step_y() == b.step_y();
}

std::ostream& operator<<(std::ostream& os, const KbSubgroup& h) { return os << h.describe(); }

KbSubgroup center_description() {
  // x.(x^a y^b) = x^{a+1} y^b and (x^a y^b).x = x^{a+1} y^{-b}: commuting with
  // x forces b = 0. y.(x^a y^b) = x^a y^{b + (-1)^a} and (x^a y^b).y = x^a y^{b+1}:
  // commuting with y forces a even.
  const KbElement probe_x = gen_x();
  const KbElement probe_y = gen_y();
  Integer step_x = 0;
  for (long a = 1; a <= 2 && step_x == 0; ++a) {
    if (commutes(KbElement(a, 0L), probe_x) && commutes(KbElement(a, 0L), probe_y)) step_x = a;
  }
  const bool y_part = commutes(probe_y, probe_x);
  return KbSubgroup::from_steps(step_x, y_part ? Integer(1) : Integer(0));
}

namespace {

// Intersection of step_a Z and step_b Z, zero meaning {0}.
Integer meet_step(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// [sup Z : sub Z] with sub Z inside sup Z.
Index coordinate_index(const Integer& sup, const Integer& sub) {
  if (sup == 0) return Index::finite(1);
  if (sub == 0) return Index::infinite();
  return Index::finite(sub / sup);
}

}  // namespace

KbSubgroup intersect(const KbSubgroup& h, const KbSubgroup& k) {
  return KbSubgroup::from_steps(meet_step(h.step_x(), k.step_x()), meet_step(h.step_y(), k.step_y()));
}

std::string Index::to_string() const { return value ? value->get_str() : std::string("inf"); }

Index subgroup_index(const KbSubgroup& sup, const KbSubgroup& sub) {
  if (!divides(sup.step_x(), sub.step_x()) || !divides(sup.step_y(), sub.step_y())) {
    throw std::invalid_argument("subgroup_index: " + sub.describe() + " is not contained in " + sup.describe());
  }
  // A right coset (H)(a, b) is {(a + step_x t, b +- step_y s)}: a product of
  // residue classes, so cosets of sub inside sup are counted per coordinate.
  Index ix = coordinate_index(sup.step_x(), sub.step_x());
  Index iy = coordinate_index(sup.step_y(), sub.step_y());
  if (ix.is_infinite() || iy.is_infinite()) return Index::infinite();
  return Index::finite(*ix.value * *iy.value);
}

std::pair<Index, Index> index_pair_check(const KbSubgroup& h, const KbSubgroup& k) {
  const KbSubgroup meet = intersect(h, k);
  return {subgroup_index(h, meet), subgroup_index(k, meet)};
}

std::pair<Integer, Integer> right_coset_label(const KbSubgroup& h, const KbElement& g) {
  const Integer sx = h.step_x();
  const Integer sy = h.step_y();
  return {sx == 0 ? g.n : floor_mod(g.n, sx), sy == 0 ? g.m : floor_mod(g.m, sy)};
}

// ---------------------------------------------------------------------------

namespace presburger {

Pair op(const Pair& lhs, const Pair& rhs) {
  const auto& [a, b] = lhs;
  const auto& [c, d] = rhs;
  return {a + c, is_even(c) ? Integer(d + b) : Integer(d - b)};
}

Pair iso(const KbElement& g) { return {g.n, g.m}; }

KbElement iso_inverse(const Pair& p) { return {p.first, p.second}; }

Pair identity() { return {0, 0}; }

std::optional<Violation> check(std::span<const std::pair<KbElement, KbElement>> samples) {
  for (const auto& [g, h] : samples) {
    Pair expected = iso(mul(g, h));
    Pair actual = op(iso(g), iso(h));
    if (expected != actual) return Violation{g, h, std::move(expected), std::move(actual)};
  }
  return std::nullopt;
}

}  // namespace presburger

}  // namespace inpkit::kb
