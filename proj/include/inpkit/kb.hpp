#pragma once

// Klein bottle group G = <x, y | x^-1 y x = y^-1> in normal form x^n y^m.

#include <compare>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "inpkit/integer.hpp"

namespace inpkit::kb {

/// The element x^n y^m. Normal form is unique, so equality is componentwise.
struct KbElement {
  Integer n;
  Integer m;

  KbElement() = default;
  KbElement(Integer n_, Integer m_) : n(std::move(n_)), m(std::move(m_)) {}
  KbElement(long n_, long m_) : n(n_), m(m_) {}

  friend bool operator==(const KbElement&, const KbElement&) = default;
};

std::ostream& operator<<(std::ostream& os, const KbElement& g);
std::string to_string(const KbElement& g);

inline KbElement identity() { return {0L, 0L}; }
inline KbElement gen_x() { return {1L, 0L}; }
inline KbElement gen_y() { return {0L, 1L}; }

KbElement mul(const KbElement& a, const KbElement& b);
KbElement inv(const KbElement& a);
KbElement pow(const KbElement& a, const Integer& k);

/// True iff g and h commute.
bool commutes(const KbElement& g, const KbElement& h);

/// The map (u, v) -> (u + shift, sign * v + offset) on Z^2.
///
/// Element x^n y^m acts as (shift, sign, offset) = (n, (-1)^n, m). The action is
/// a right action: applying a and then b equals applying a*b. It is faithful,
/// which makes it an oracle for the normal-form multiplication formula.
class AffineAction {
 public:
  AffineAction(Integer shift, int sign, Integer offset);

  static AffineAction of(const KbElement& g);

  const Integer& shift() const { return shift_; }
  int sign() const { return sign_; }
  const Integer& offset() const { return offset_; }

  std::pair<Integer, Integer> apply(const Integer& u, const Integer& v) const;

  /// The action "this, then next".
  AffineAction then(const AffineAction& next) const;

  /// Reads the group element back off the image of the origin.
  KbElement read_back() const;

  friend bool operator==(const AffineAction&, const AffineAction&) = default;

 private:
  Integer shift_;
  int sign_;
  Integer offset_;
};

/// Subgroups of G in the smallest intersection-closed family holding
/// <x>, <y>, C(y), Z(G), G and 1.
///
/// Every member is a coordinate box {x^a y^b : a in step_x Z, b in step_y Z}
/// where a zero step pins that coordinate to 0.
class KbSubgroup {
 public:
  enum class Kind { Full, Trivial, Center, CyclicX, CyclicY, Lattice };

  static KbSubgroup full();
  static KbSubgroup trivial();
  static KbSubgroup center();
  static KbSubgroup cyclic_x(Integer p);
  static KbSubgroup cyclic_y(Integer q);
  static KbSubgroup lattice(Integer p, Integer q);
  /// The member with the given coordinate steps (0 pins the coordinate).
  static KbSubgroup from_steps(const Integer& step_x, const Integer& step_y);

  Kind kind() const { return kind_; }
  /// Parameters as given at construction (0 where the kind has none).
  const Integer& p() const { return p_; }
  const Integer& q() const { return q_; }

  /// Step of the x-exponent; 0 means the x-exponent is always 0.
  Integer step_x() const;
  /// Step of the y-exponent; 0 means the y-exponent is always 0.
  Integer step_y() const;

  bool contains(const KbElement& g) const;
  bool is_trivial() const;
  bool is_finite() const { return is_trivial(); }

  /// Same set under its canonical tag. Center becomes CyclicX(2) and
  /// Lattice(1,1) becomes Full.
  KbSubgroup canonical() const;

  std::string describe() const;

  /// Set equality.
  friend bool operator==(const KbSubgroup& a, const KbSubgroup& b);

 private:
  KbSubgroup(Kind k, Integer p, Integer q);

  Kind kind_;
  Integer p_;
  Integer q_;
};

std::ostream& operator<<(std::ostream& os, const KbSubgroup& h);

/// Center of G, computed from the group law: {x^{2n}}.
KbSubgroup center_description();

KbSubgroup intersect(const KbSubgroup& h, const KbSubgroup& k);

/// A subgroup index; nullopt means infinite.
struct Index {
  std::optional<Integer> value;

  static Index infinite() { return {}; }
  static Index finite(Integer v) { return {std::move(v)}; }
  bool is_infinite() const { return !value.has_value(); }
  std::string to_string() const;
  friend bool operator==(const Index&, const Index&) = default;
};

/// [sup : sub] for sub contained in sup, counted as right cosets.
Index subgroup_index(const KbSubgroup& sup, const KbSubgroup& sub);

/// ([H : H n K], [K : H n K]).
std::pair<Index, Index> index_pair_check(const KbSubgroup& h, const KbSubgroup& k);

/// Label of the right coset H g: two elements share a right H-coset iff their
/// labels agree. (g.n mod step_x, g.m mod step_y), a zero step keeping the
/// coordinate as is.
std::pair<Integer, Integer> right_coset_label(const KbSubgroup& h, const KbElement& g);

/// Copy of G on Z x Z definable in (Z, <, +):
/// (a, b) (+) (c, d) = (a + c, d + e(c) b), e(c) = +1 for even c and -1 for odd c.
///
/// This is one choice of interpretation; the parity split is definable since
/// 2Z is definable in (Z, <, +).
namespace presburger {

using Pair = std::pair<Integer, Integer>;

Pair op(const Pair& lhs, const Pair& rhs);
Pair iso(const KbElement& g);
KbElement iso_inverse(const Pair& p);
Pair identity();

struct Violation {
  KbElement g;
  KbElement h;
  Pair expected;
  Pair actual;
};

/// Checks iso(g h) = iso(g) (+) iso(h) over the samples; returns the first
/// violating pair, if any.
std::optional<Violation> check(std::span<const std::pair<KbElement, KbElement>> samples);

inline constexpr const char* kCarrier = "Z x Z with (a,b)(+)(c,d) = (a+c, d + e(c) b), e(c) = +1 if 2|c else -1";

}  // namespace presburger

}  // namespace inpkit::kb
