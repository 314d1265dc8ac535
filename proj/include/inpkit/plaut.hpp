#pragma once

// Piecewise-linear order-automorphisms of Q, the left-order on them induced by
// a well-order of Q, and the convex-hull counterexample built from them.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "inpkit/integer.hpp"

namespace inpkit::plaut {

/// Exact rational in lowest terms with positive denominator.
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// A fixed enumeration rank: Q -> N of the rationals.
///
/// 0 comes first. After it rationals p/q in lowest terms are grouped by height
/// max(|p|, q), then ordered by denominator, then |numerator|, positive before
/// negative: 0, 1, -1, 2, -2, 1/2, -1/2, 3, -3, 3/2, -3/2, 1/3, -1/3, ...
namespace well_order {

std::uint64_t rank(const Rational& t);
Rational unrank(std::uint64_t index);

/// Walks the enumeration in order without recomputing ranks.
class Cursor {
 public:
  Cursor();
  const Rational& current() const { return current_; }
  std::uint64_t index() const { return index_; }
  void advance();

 private:
  void load_height();

  Rational current_;
  std::uint64_t index_ = 0;
  std::uint64_t height_ = 0;
  // Positive fractions of the current height, in enumeration order.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> level_;
  std::size_t slot_ = 0;
};

}  // namespace well_order

/// A piece t -> slope * t + intercept.
struct Affine {
  Rational slope;
  Rational intercept;

  Rational operator()(const Rational& t) const { return slope * t + intercept; }
};

/// Increasing piecewise-linear bijection of Q with finitely many rational
/// breakpoints.
///
/// Stored as knots (x_i, f(x_i)) with both coordinates strictly increasing,
/// plus the slopes of the two unbounded rays. Between knots f interpolates
/// linearly. The canonical form drops knots where the slope does not change;
/// an affine map keeps a single knot at 0.
class PlAut {
 public:
  using Knot = std::pair<Rational, Rational>;

  /// Throws std::invalid_argument unless the data defines an increasing bijection.
  PlAut(std::vector<Knot> knots, Rational left_slope, Rational right_slope);

  static PlAut identity();
  static PlAut affine(const Rational& slope, const Rational& intercept);
  static PlAut translation(const Rational& shift) { return affine(1, shift); }

  Rational apply(const Rational& t) const;
  Rational operator()(const Rational& t) const { return apply(t); }

  const std::vector<Knot>& knots() const { return knots_; }
  const Rational& left_slope() const { return left_slope_; }
  const Rational& right_slope() const { return right_slope_; }

  /// Pieces in order, from the left ray to the right ray; size knots()+1.
  std::vector<Affine> pieces() const;
  bool is_identity() const;

  /// Fixed points as closed ranges [lo, hi] (nullopt ends are unbounded). An
  /// isolated fixed point has lo == hi.
  struct FixedRange {
    std::optional<Rational> lo;
    std::optional<Rational> hi;
  };
  std::vector<FixedRange> fixed_points() const;

  friend bool operator==(const PlAut&, const PlAut&) = default;

 private:
  void normalize();

  std::vector<Knot> knots_;
  Rational left_slope_;
  Rational right_slope_;
};

std::ostream& operator<<(std::ostream& os, const PlAut& f);
std::string to_string(const PlAut& f);

/// f o g, i.e. t -> f(g(t)).
PlAut compose(const PlAut& f, const PlAut& g);
PlAut inverse(const PlAut& f);
/// f^k for any integer k.
PlAut power(const PlAut& f, long k);
/// t -> -f(-t). Swaps the sides of every fixed point.
PlAut reflect(const PlAut& f);

/// f^k(t) by iterating f or its inverse, without forming the composite map.
Rational orbit_point(const PlAut& f, const Rational& t, long k);

class Exhausted : public std::runtime_error {
 public:
  explicit Exhausted(std::uint64_t cap);
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t cap_;
};

/// unrank(i) for the least i <= search_cap with f(unrank(i)) != g(unrank(i)).
/// Throws Exhausted when no such i exists within the cap.
Rational first_difference(const PlAut& f, const PlAut& g, std::uint64_t search_cap);

enum class Ordering { Less, Equal, Greater };
const char* to_string(Ordering o);

/// f < g iff f(t) < g(t) at the well-order-least t where they differ.
Ordering compare(const PlAut& f, const PlAut& g, std::uint64_t search_cap);

/// Proof that f^k(start) < fixed_point for every integer k.
///
/// Sound because f fixes fixed_point and is increasing: the half-line below a
/// fixed point is invariant under f and f^-1.
struct OrbitCertificate {
  Rational start;
  Rational fixed_point;
  Rational image_of_fixed_point;  // equals fixed_point
  bool increasing = false;        // every piece has positive slope
  long sample_radius = 0;
  std::vector<std::pair<long, Rational>> samples;  // (k, f^k(start)) for |k| <= sample_radius
};

class CertificateRejected : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

OrbitCertificate orbit_bound_certificate(const PlAut& f, const Rational& start, const Rational& fixed_point,
                                         long sample_radius = 50);

/// Re-checks every claim recorded in the certificate against f.
bool validate(const OrbitCertificate& cert, const PlAut& f);

struct HullIn {
  long lower_power;  // f^lower <= g
  long upper_power;  // g <= f^upper
};

/// g lies outside the convex hull of <f>.
///
/// At the well-order-first rational t0, every f^k(t0) stays on the near side of
/// a fixed point that g(t0) reaches or passes. Since t0 is the first point of
/// the enumeration, f^k and g differ first at t0 for every k, so g is above
/// (or below) every power of f.
struct HullNotIn {
  Rational first_point;
  Rational g_at_first_point;
  bool above = true;  // g exceeds every power of f; false: g is below all of them
  /// For above == false the certificate is taken for reflect(f) at -t0.
  OrbitCertificate orbit;
};

struct HullUnknown {
  std::string reason;
};

using HullMembership = std::variant<HullIn, HullNotIn, HullUnknown>;

/// Decides whether g lies in the convex hull of the cyclic group <f>.
/// In(k1, k2) reports the tightest bracketing powers with |k| <= k_range.
HullMembership hull_of_cyclic_membership(const PlAut& f, const PlAut& g, long k_range, std::uint64_t search_cap);

/// The five points and two maps of the hull counterexample:
/// f(a) = c, f(d) = d, g(a) = b, g(b) = e, with a the first rational in the
/// well-order.
struct HullExample {
  Rational a, b, c, d, e;
  PlAut f;
  PlAut g;
};

HullExample example_hull_build();

}  // namespace inpkit::plaut
