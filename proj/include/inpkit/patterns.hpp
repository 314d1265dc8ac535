#pragma once

// Finite inp-patterns over concrete definable-set families, with a verifier
// that only reports Verified when every row and every path carries a
// checkable certificate or witness.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "inpkit/free_group.hpp"
#include "inpkit/kb.hpp"
#include "inpkit/orders.hpp"

namespace inpkit::patterns {

using kb::KbElement;
using free::FreeWord;

/// An element of one of the two group contexts.
using Element = std::variant<KbElement, FreeWord>;

enum class Context { Kb, Free };

Context context_of(const Element& e);
std::string to_string(const Element& e);
std::string to_string(Context c);

class ContextMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Side { Left, Right };

/// Integer range with optional unbounded ends.
struct Range {
  std::optional<Integer> lo;
  std::optional<Integer> hi;

  static Range point(const Integer& v) { return {v, v}; }
  static Range all() { return {}; }
  bool contains(const Integer& v) const { return (!lo || *lo <= v) && (!hi || v <= *hi); }
  bool disjoint_from(const Range& other) const;
  Range operator+(const Range& other) const;
  std::string to_string() const;
};

class DefSet;

namespace node {
struct Interval {
  orders::KbInterval interval;
};
struct Coset {
  orders::RightCoset coset;
};
/// {x_gen^m : m in exponents}.
struct PowerSet {
  free::Generator gen;
  Range exponents;
};
struct Translate {
  std::shared_ptr<const DefSet> inner;
  Element by;
  Side side;
};
struct Product {
  std::vector<DefSet> factors;
};
/// {u s u^-1 : s in inner, u in G}.
struct ConjClosure {
  std::shared_ptr<const DefSet> inner;
};
/// inner^k = {s_1 ... s_k : s_i in inner}.
struct Power {
  std::shared_ptr<const DefSet> inner;
  std::size_t k;
};
struct Singleton {
  Element element;
};
}  // namespace node

/// Expression tree denoting a definable subset of one group context.
class DefSet {
 public:
  using Node = std::variant<node::Interval, node::Coset, node::PowerSet, node::Translate, node::Product,
                            node::ConjClosure, node::Power, node::Singleton>;

  static DefSet interval(orders::KbInterval i);
  static DefSet coset(orders::RightCoset c);
  static DefSet power_set(free::Generator gen, Range exponents);
  static DefSet translate(DefSet inner, Element by, Side side);
  /// Throws ContextMismatch when the factors live in different groups.
  static DefSet product(std::vector<DefSet> factors);
  static DefSet conj_closure(DefSet inner);
  static DefSet power(DefSet inner, std::size_t k);
  static DefSet singleton(Element e);

  const Node& node() const { return *node_; }
  Context context() const { return context_; }
  /// True when membership is decided exactly (two-valued).
  bool is_exact() const;
  std::string describe() const;

 private:
  DefSet(Node n, Context c);

  std::shared_ptr<const Node> node_;
  Context context_;
};

/// Derivation of a membership claim, re-checkable from its parts.
struct Witness {
  std::string rule;
  std::vector<Element> parts;
  std::vector<Witness> children;
};

enum class CertificateKind {
  OutsideInterval,
  OtherCoset,
  NotTheElement,
  NotAGeneratorPower,
  ExponentOutOfRange,
  ExponentSumMismatch,
  DisjointIntervals,
  DistinctCosets,
  CosetMissesInterval,
  DisjointCosets,
  AbelianSeparation,
};

const char* to_string(CertificateKind k);

/// Finite data whose validity implies a non-membership or emptiness claim.
struct Certificate {
  CertificateKind kind;
  std::string detail;
  /// For abelianization certificates: the separating generator.
  std::optional<free::Generator> generator;
};

struct Member {
  Witness witness;
};
struct NonMember {
  Certificate certificate;
};
struct Unknown {
  std::string reason;
};

using Membership = std::variant<Member, NonMember, Unknown>;

struct SearchLimits {
  /// Factorization attempts allowed per membership query.
  std::size_t factorization_budget = 20000;
  /// Half-width of the box |n|, |m| <= radius scanned for Klein bottle witnesses.
  long kb_box_radius = 8;
};

/// Over-approximation of the abelianized image of a free-group set as a box:
/// generators not listed are pinned to 0.
struct AbelianBox {
  std::map<free::Generator, Range> ranges;

  Range at(free::Generator gen) const;
  bool contains(const free::AbelianVector& v) const;
  AbelianBox operator+(const AbelianBox& other) const;
};

AbelianBox abelian_image(const DefSet& s);

/// Three-valued membership. Exact for interval, coset, singleton and
/// generator-power sets and their translates. For free-group products,
/// conjugate closures and powers, non-membership is certified by the
/// abelianization box and membership by an explicit factorization.
Membership defset_membership(const DefSet& s, const Element& g, const SearchLimits& limits = {});

/// Certificate that a and b share no element, if one can be given.
std::optional<Certificate> certify_disjoint(const DefSet& a, const DefSet& b);

/// An element of a and b found exactly or by bounded search.
std::optional<Element> find_common(const DefSet& a, const DefSet& b, const SearchLimits& limits = {});

/// One row of a pattern: cells phi(x; a_j) for the parameters a_j, claimed
/// k-inconsistent.
struct Row {
  std::string formula;
  std::vector<std::vector<Element>> params;
  std::vector<DefSet> cells;
  std::size_t k = 2;

  using Family = std::function<DefSet(std::span<const Element>)>;
  static Row from_family(std::string formula, const Family& family, std::vector<std::vector<Element>> params,
                         std::size_t k);
};

/// A path eta picks one column per row.
using Path = std::vector<std::size_t>;
using WitnessHint = std::function<std::optional<Element>(std::span<const std::size_t>)>;

struct PatternInstance {
  std::string name;
  std::vector<Row> rows;
  WitnessHint hint;
  /// Also require paths to avoid every non-chosen cell of each row.
  bool ict = false;

  std::size_t depth() const { return rows.size(); }
  std::vector<std::size_t> grid() const;
  std::size_t path_count() const;
};

/// Emptiness of one k-subset of a row, shown by a disjoint pair inside it.
struct SubsetCertificate {
  std::vector<std::size_t> cells;
  std::size_t first;
  std::size_t second;
  Certificate certificate;
};

struct RowCertified {
  std::vector<SubsetCertificate> subsets;
};
struct RowRefuted {
  Element element;
  std::vector<std::size_t> cells;
};
struct RowUnknown {
  std::string reason;
};

using RowCheck = std::variant<RowCertified, RowRefuted, RowUnknown>;

RowCheck row_inconsistency_check(const Row& r, const SearchLimits& limits = {});

struct PathWitness {
  Path path;
  Element element;
  std::vector<Witness> memberships;  // one per row
  bool from_hint = true;
};

struct Verified {
  std::vector<PathWitness> paths;
  std::vector<RowCertified> rows;
};

struct Refuted {
  std::string reason;
  std::optional<std::size_t> row;
  std::optional<Path> path;
  std::optional<Element> element;
  std::optional<Certificate> certificate;
};

struct Inconclusive {
  std::vector<std::string> checks;
};

using Verdict = std::variant<Verified, Refuted, Inconclusive>;

const char* verdict_name(const Verdict& v);

struct VerifyOptions {
  SearchLimits limits;
  /// Worker threads for path checks; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Certifies every row and finds a witness for every path of the grid.
/// Every witness is re-validated through defset_membership.
Verdict verify_pattern(const PatternInstance& p, const VerifyOptions& options = {});

/// Row 0: intervals I_{j_cols-1, k} for k < n_cols. Row 1: cosets <x> y^j for
/// j < j_cols. The path (k, j) is witnessed by x^k y^j.
PatternInstance build_kb_depth2(std::size_t n_cols, std::size_t j_cols);

/// Generator-power set D_i = {x_i^m : m >= 0}.
DefSet chain_factor(free::Generator i);

/// Rows i = 0..n with cells D_0 ... D_{i-1} {x_i^{j+1}} D_{i+1} ... D_n for
/// j < cols. The path eta is witnessed by prod_i x_i^{eta(i)+1}.
PatternInstance build_free_chain_pattern(std::size_t n, std::size_t cols);

/// x_i^{m0} x_i^{-m1} lies outside ((D_0 ... D_{i-1} D_{i+1} ... D_n)^G)^{2n}.
struct ChainCertificate {
  std::size_t n;
  std::size_t i;
  Integer m0;
  Integer m1;
  FreeWord quotient;       // x_i^{m0 - m1}
  DefSet excluded_set;     // ((prod_{j != i} D_j)^G)^{2n}
  Integer exponent_gap;    // exponent sum of quotient at x_i
  Range allowed;           // exponent sums of x_i over excluded_set
  Certificate certificate;
};

ChainCertificate chain_nonmembership_certificate(std::size_t n, std::size_t i, const Integer& m0, const Integer& m1);

}  // namespace inpkit::patterns
