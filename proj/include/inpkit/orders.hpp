#pragma once

// The lexicographic left-order on the Klein bottle group, with intervals,
// right cosets and coset covers of intervals.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "inpkit/kb.hpp"

namespace inpkit::orders {

using kb::KbElement;
using kb::KbSubgroup;

enum class Ordering { Less, Equal, Greater };

const char* to_string(Ordering o);

/// x^n y^m <= x^n' y^m' iff n < n', or n = n' and m <= m'.
Ordering compare(const KbElement& a, const KbElement& b);
inline bool less(const KbElement& a, const KbElement& b) { return compare(a, b) == Ordering::Less; }
inline bool less_equal(const KbElement& a, const KbElement& b) { return compare(a, b) != Ordering::Greater; }

/// Closed interval [lo, hi] in the left-order.
class KbInterval {
 public:
  KbInterval(KbElement lo, KbElement hi);

  const KbElement& lo() const { return lo_; }
  const KbElement& hi() const { return hi_; }
  bool contains(const KbElement& g) const;
  bool disjoint_from(const KbInterval& other) const;
  /// The common part, if any.
  std::optional<KbInterval> intersection(const KbInterval& other) const;
  /// An element near the middle of the interval.
  KbElement midpoint() const;
  /// Image under left multiplication by g, again an interval.
  KbInterval left_translate(const KbElement& g) const;

  friend bool operator==(const KbInterval&, const KbInterval&) = default;

 private:
  KbElement lo_;
  KbElement hi_;
};

/// The right coset H rep = {h rep : h in H}.
struct RightCoset {
  KbSubgroup subgroup;
  KbElement rep;
};

/// g in H rep iff g rep^-1 in H.
bool coset_membership(const RightCoset& c, const KbElement& g);

/// True iff the two cosets share no element. Exact for the whole subgroup family.
bool cosets_disjoint(const RightCoset& a, const RightCoset& b);

/// An element of the coset inside the interval, if one exists. Exact.
std::optional<KbElement> coset_meets_interval(const RightCoset& c, const KbInterval& i);

/// An element of both cosets, if one exists. Exact.
std::optional<KbElement> coset_meet(const RightCoset& a, const RightCoset& b);

struct IntervalFamilyMember {
  KbInterval interval;
  /// witnesses[j] = x^k y^j, a point of the interval in the coset <x> y^j.
  std::vector<KbElement> witnesses;
};

/// I_{n,k} = [x^k, x^k y^n]: contains x^k and meets <x>, <x>y, ..., <x>y^n.
/// Intervals with distinct k are disjoint.
IntervalFamilyMember interval_construct(const Integer& n, const Integer& k);

class DegenerateSubgroup : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotCofinal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An element of H c strictly above bound.
///
/// Picks h in H with h >= bound and h1 in H with h1 < c; then
/// h = (h h1^-1) h1 < (h h1^-1) c, an element of H c. Returns c itself when it
/// already exceeds bound. Throws DegenerateSubgroup for the trivial subgroup and
/// NotCofinal when H has no element at or above bound, or none below c (bound or
/// c lies outside the convex hull of H).
KbElement coset_cofinal_witness(const KbSubgroup& h, const KbElement& c, const KbElement& bound);

/// Elements of an interval lying in pairwise distinct right H-cosets, generated
/// on demand. Each element comes with its coset label as certificate.
class InfiniteWitness {
 public:
  struct Entry {
    KbElement element;
    std::pair<Integer, Integer> coset_label;
  };

  InfiniteWitness(KbSubgroup subgroup, KbElement upper);

  const KbSubgroup& subgroup() const { return subgroup_; }
  /// Right end of the interval [e, upper] the witnesses live in.
  const KbElement& upper() const { return upper_; }

  /// The i-th witness: y^i.
  Entry at(std::size_t i) const;
  std::vector<Entry> take(std::size_t count) const;

 private:
  KbSubgroup subgroup_;
  KbElement upper_;
};

struct FiniteCover {
  std::vector<RightCoset> cosets;
};

/// Finitely many cosets meet the interval, but more than the budget allows.
struct BudgetExceeded {
  Integer cosets_needed;
};

using CoverResult = std::variant<FiniteCover, InfiniteWitness, BudgetExceeded>;

/// Attempts to cover [e, x] by at most budget right H-cosets.
///
/// Requires x > e. The cover is exact: the cosets meeting [e, x] are computed
/// from the coset labels. When infinitely many cosets meet the interval the
/// result is an InfiniteWitness.
CoverResult interval_coset_cover(const KbElement& x, const KbSubgroup& h, std::size_t budget);

}  // namespace inpkit::orders
