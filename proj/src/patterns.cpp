#include "inpkit/patterns.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

namespace inpkit::patterns {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const KbElement& as_kb(const Element& e) {
  if (const auto* g = std::get_if<KbElement>(&e)) return *g;
  throw ContextMismatch("expected a Klein bottle element, got " + to_string(e));
}

const FreeWord& as_free(const Element& e) {
  if (const auto* w = std::get_if<FreeWord>(&e)) return *w;
  throw ContextMismatch("expected a free-group word, got " + to_string(e));
}

Element element_mul(const Element& a, const Element& b) {
  if (context_of(a) == Context::Kb) return kb::mul(as_kb(a), as_kb(b));
  return free::mul(as_free(a), as_free(b));
}

Element element_inv(const Element& a) {
  if (context_of(a) == Context::Kb) return kb::inv(as_kb(a));
  return free::inv(as_free(a));
}

}  // namespace

Context context_of(const Element& e) { return std::holds_alternative<KbElement>(e) ? Context::Kb : Context::Free; }

std::string to_string(const Element& e) {
  return std::visit(overloaded{[](const KbElement& g) { return kb::to_string(g); },
                               [](const FreeWord& w) { return free::to_string(w); }},
                    e);
}

std::string to_string(Context c) { return c == Context::Kb ? "klein-bottle" : "free"; }

// ---------------------------------------------------------------------------
// Ranges and abelian boxes

bool Range::disjoint_from(const Range& other) const {
  if (hi && other.lo && *hi < *other.lo) return true;
  if (other.hi && lo && *other.hi < *lo) return true;
  return false;
}

Range Range::operator+(const Range& other) const {
  Range r;
  if (lo && other.lo) r.lo = *lo + *other.lo;
  if (hi && other.hi) r.hi = *hi + *other.hi;
  return r;
}

std::string Range::to_string() const {
  if (lo && hi && *lo == *hi) return "{" + lo->get_str() + "}";
  return "[" + (lo ? lo->get_str() : std::string("-inf")) + ", " + (hi ? hi->get_str() : std::string("+inf")) + "]";
}

Range AbelianBox::at(free::Generator gen) const {
  auto it = ranges.find(gen);
  return it == ranges.end() ? Range::point(0) : it->second;
}

bool AbelianBox::contains(const free::AbelianVector& v) const {
  for (const auto& [gen, r] : ranges) {
    if (!r.contains(v[gen])) return false;
  }
  for (const auto& [gen, c] : v.coords()) {
    if (!ranges.contains(gen)) return false;
  }
  return true;
}

AbelianBox AbelianBox::operator+(const AbelianBox& other) const {
  AbelianBox out;
  std::set<free::Generator> keys;
  for (const auto& [g, r] : ranges) keys.insert(g);
  for (const auto& [g, r] : other.ranges) keys.insert(g);
  for (auto g : keys) out.ranges.emplace(g, at(g) + other.at(g));
  return out;
}

namespace {

AbelianBox point_box(const FreeWord& w) {
  AbelianBox box;
  const auto ab = free::abelianize(w);
  for (const auto& [g, c] : ab.coords()) box.ranges.emplace(g, Range::point(c));
  return box;
}

Range scale(const Range& r, std::size_t k) {
  Range out;
  const Integer factor(static_cast<unsigned long>(k));
  if (r.lo) out.lo = *r.lo * factor;
  if (r.hi) out.hi = *r.hi * factor;
  return out;
}

}  // namespace

AbelianBox abelian_image(const DefSet& s) {
  if (s.context() != Context::Free) throw ContextMismatch("abelian image needs a free-group set");
  return std::visit(
      overloaded{
          [](const node::PowerSet& p) {
            AbelianBox box;
            box.ranges.emplace(p.gen, p.exponents);
            return box;
          },
          [](const node::Singleton& p) { return point_box(as_free(p.element)); },
          [](const node::Translate& t) { return abelian_image(*t.inner) + point_box(as_free(t.by)); },
          [](const node::Product& p) {
            AbelianBox box;
            for (const auto& f : p.factors) box = box + abelian_image(f);
            return box;
          },
          // Exponent sums are invariant under conjugation.
          [](const node::ConjClosure& c) { return abelian_image(*c.inner); },
          [](const node::Power& p) {
            AbelianBox box;
            if (p.k == 0) return box;
            for (const auto& [g, r] : abelian_image(*p.inner).ranges) box.ranges.emplace(g, scale(r, p.k));
            return box;
          },
          [](const auto&) -> AbelianBox { throw ContextMismatch("abelian image needs a free-group set"); },
      },
      s.node());
}

// ---------------------------------------------------------------------------
// DefSet

DefSet::DefSet(Node n, Context c) : node_(std::make_shared<const Node>(std::move(n))), context_(c) {}

DefSet DefSet::interval(orders::KbInterval i) { return {node::Interval{std::move(i)}, Context::Kb}; }
DefSet DefSet::coset(orders::RightCoset c) { return {node::Coset{std::move(c)}, Context::Kb}; }
DefSet DefSet::power_set(free::Generator gen, Range exponents) {
  return {node::PowerSet{gen, std::move(exponents)}, Context::Free};
}

DefSet DefSet::translate(DefSet inner, Element by, Side side) {
  const Context c = inner.context();
  if (context_of(by) != c) throw ContextMismatch("translate by " + to_string(by) + " in " + to_string(c) + " context");
  return {node::Translate{std::make_shared<const DefSet>(std::move(inner)), std::move(by), side}, c};
}

DefSet DefSet::product(std::vector<DefSet> factors) {
  if (factors.empty()) throw std::invalid_argument("product needs at least one factor");
  const Context c = factors.front().context();
  for (const auto& f : factors) {
    if (f.context() != c) throw ContextMismatch("product mixes group contexts");
  }
  return {node::Product{std::move(factors)}, c};
}

DefSet DefSet::conj_closure(DefSet inner) {
  const Context c = inner.context();
  return {node::ConjClosure{std::make_shared<const DefSet>(std::move(inner))}, c};
}

DefSet DefSet::power(DefSet inner, std::size_t k) {
  const Context c = inner.context();
  return {node::Power{std::make_shared<const DefSet>(std::move(inner)), k}, c};
}

DefSet DefSet::singleton(Element e) {
  const Context c = context_of(e);
  return {node::Singleton{std::move(e)}, c};
}

bool DefSet::is_exact() const {
  return std::visit(overloaded{[](const node::Interval&) { return true; }, [](const node::Coset&) { return true; },
                               [](const node::PowerSet&) { return true; }, [](const node::Singleton&) { return true; },
                               [](const node::Translate& t) { return t.inner->is_exact(); },
                               [](const auto&) { return false; }},
                    node());
}

std::string DefSet::describe() const {
  return std::visit(
      overloaded{
          [](const node::Interval& i) { return "[" + kb::to_string(i.interval.lo()) + ", " + kb::to_string(i.interval.hi()) + "]"; },
          [](const node::Coset& c) { return c.coset.subgroup.describe() + "*" + kb::to_string(c.coset.rep); },
          [](const node::PowerSet& p) { return "{x" + std::to_string(p.gen) + "^m : m in " + p.exponents.to_string() + "}"; },
          [](const node::Translate& t) {
            return t.side == Side::Left ? "(" + to_string(t.by) + ")*" + t.inner->describe()
                                        : t.inner->describe() + "*(" + to_string(t.by) + ")";
          },
          [](const node::Product& p) {
            std::string out;
            for (std::size_t i = 0; i < p.factors.size(); ++i) out += (i ? " . " : "") + p.factors[i].describe();
            return "(" + out + ")";
          },
          [](const node::ConjClosure& c) { return c.inner->describe() + "^G"; },
          [](const node::Power& p) { return "(" + p.inner->describe() + ")^" + std::to_string(p.k); },
          [](const node::Singleton& s) { return "{" + to_string(s.element) + "}"; },
      },
      node());
}

const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::OutsideInterval: return "outside-interval";
    case CertificateKind::OtherCoset: return "other-coset";
    case CertificateKind::NotTheElement: return "not-the-element";
    case CertificateKind::NotAGeneratorPower: return "not-a-generator-power";
    case CertificateKind::ExponentOutOfRange: return "exponent-out-of-range";
    case CertificateKind::ExponentSumMismatch: return "exponent-sum-mismatch";
    case CertificateKind::DisjointIntervals: return "disjoint-intervals";
    case CertificateKind::DistinctCosets: return "distinct-cosets";
    case CertificateKind::CosetMissesInterval: return "coset-misses-interval";
    case CertificateKind::DisjointCosets: return "disjoint-cosets";
    case CertificateKind::AbelianSeparation: return "abelian-separation";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Membership

namespace {

Membership exact_membership(const DefSet& s, const Element& g);

Membership translate_membership(const node::Translate& t, const Element& g) {
  // g in e S iff e^-1 g in S;  g in S e iff g e^-1 in S.
  const Element inner_g = t.side == Side::Left ? element_mul(element_inv(t.by), g) : element_mul(g, element_inv(t.by));
  Membership m = exact_membership(*t.inner, inner_g);
  if (auto* mem = std::get_if<Member>(&m)) {
    Witness w{t.side == Side::Left ? "left-translate" : "right-translate", {t.by, inner_g}, {std::move(mem->witness)}};
    return Member{std::move(w)};
  }
  return m;
}

std::optional<Integer> generator_exponent(const FreeWord& w, free::Generator gen) {
  if (w.is_identity()) return Integer(0);
  if (w.syllable_count() == 1 && w.syllables().front().gen == gen) return w.syllables().front().exp;
  return std::nullopt;
}

Membership exact_membership(const DefSet& s, const Element& g) {
  return std::visit(
      overloaded{
          [&](const node::Interval& i) -> Membership {
            const KbElement& x = as_kb(g);
            if (i.interval.contains(x)) return Member{{"interval", {g}, {}}};
            const bool below = orders::less(x, i.interval.lo());
            return NonMember{{CertificateKind::OutsideInterval,
                              kb::to_string(x) + (below ? " < lo " + kb::to_string(i.interval.lo())
                                                        : " > hi " + kb::to_string(i.interval.hi())),
                              std::nullopt}};
          },
          [&](const node::Coset& c) -> Membership {
            const KbElement& x = as_kb(g);
            const KbElement quotient = kb::mul(x, kb::inv(c.coset.rep));
            if (c.coset.subgroup.contains(quotient)) return Member{{"coset", {quotient, c.coset.rep}, {}}};
            return NonMember{{CertificateKind::OtherCoset,
                              kb::to_string(x) + " * rep^-1 = " + kb::to_string(quotient) + " not in " +
                                  c.coset.subgroup.describe(),
                              std::nullopt}};
          },
          [&](const node::Singleton& p) -> Membership {
            if (context_of(p.element) != context_of(g)) throw ContextMismatch("singleton context mismatch");
            if (p.element == g) return Member{{"singleton", {g}, {}}};
            return NonMember{{CertificateKind::NotTheElement, to_string(g) + " != " + to_string(p.element), std::nullopt}};
          },
          [&](const node::PowerSet& p) -> Membership {
            const FreeWord& w = as_free(g);
            auto e = generator_exponent(w, p.gen);
            if (!e) {
              return NonMember{{CertificateKind::NotAGeneratorPower,
                                free::to_string(w) + " is not a power of x" + std::to_string(p.gen), p.gen}};
            }
            if (!p.exponents.contains(*e)) {
              return NonMember{{CertificateKind::ExponentOutOfRange,
                                "exponent " + e->get_str() + " outside " + p.exponents.to_string(), p.gen}};
            }
            return Member{{"generator-power", {g}, {}}};
          },
          [&](const node::Translate& t) -> Membership { return translate_membership(t, g); },
          [](const auto&) -> Membership { return Unknown{"not an exact set"}; },
      },
      s.node());
}

// Prefixes of a reduced word, cut at every letter.
std::vector<FreeWord> prefixes(const FreeWord& w, std::size_t limit) {
  std::vector<FreeWord> out{FreeWord{}};
  std::vector<free::Syllable> acc;
  for (const auto& syl : w.syllables()) {
    const Integer step = syl.exp > 0 ? Integer(1) : Integer(-1);
    for (Integer e = step; out.size() < limit; e += step) {
      std::vector<free::Syllable> cur = acc;
      cur.push_back({syl.gen, e});
      out.emplace_back(std::move(cur));
      if (e == syl.exp) break;
    }
    acc.push_back(syl);
    if (out.size() >= limit) break;
  }
  return out;
}

class FactorSearch {
 public:
  explicit FactorSearch(std::size_t budget) : budget_(budget) {}

  bool exhausted() const { return exhausted_; }

  std::optional<Witness> find(const DefSet& s, const FreeWord& g) {
    if (!spend()) return std::nullopt;
    if (s.is_exact()) {
      Membership m = exact_membership(s, g);
      if (auto* mem = std::get_if<Member>(&m)) return std::move(mem->witness);
      return std::nullopt;
    }
    if (!abelian_image(s).contains(free::abelianize(g))) return std::nullopt;
    return std::visit(
        overloaded{
            [&](const node::Product& p) { return find_product(p.factors, 0, g); },
            [&](const node::Power& p) {
              if (p.k == 0) {
                return g.is_identity() ? std::optional<Witness>(Witness{"empty-product", {}, {}}) : std::nullopt;
              }
              std::vector<DefSet> copies(p.k, *p.inner);
              return find_product(copies, 0, g);
            },
            [&](const node::ConjClosure& c) -> std::optional<Witness> {
              for (const auto& u : prefixes(g, budget_)) {
                const FreeWord core = free::mul(free::mul(free::inv(u), g), u);
                if (auto w = find(*c.inner, core)) return Witness{"conjugate", {u, core}, {std::move(*w)}};
                if (exhausted_) break;
              }
              return std::nullopt;
            },
            [](const auto&) -> std::optional<Witness> { return std::nullopt; },
        },
        s.node());
  }

 private:
  bool spend() {
    if (budget_ == 0) {
      exhausted_ = true;
      return false;
    }
    --budget_;
    return true;
  }

  std::vector<FreeWord> candidates(const DefSet& factor, const FreeWord& g) {
    if (const auto* p = std::get_if<node::PowerSet>(&factor.node())) {
      // Only cuts inside the first syllable can be powers of one generator.
      std::vector<FreeWord> out;
      if (p->exponents.contains(0)) out.emplace_back();
      if (!g.is_identity() && g.syllables().front().gen == p->gen) {
        const Integer& full = g.syllables().front().exp;
        const Integer step = full > 0 ? Integer(1) : Integer(-1);
        for (Integer e = step; out.size() < budget_; e += step) {
          if (p->exponents.contains(e)) out.push_back(FreeWord::generator_power(p->gen, e));
          if (e == full) break;
        }
      }
      return out;
    }
    return prefixes(g, budget_);
  }

  std::optional<Witness> find_product(const std::vector<DefSet>& factors, std::size_t idx, const FreeWord& g) {
    if (idx + 1 == factors.size()) {
      auto w = find(factors[idx], g);
      if (!w) return std::nullopt;
      return Witness{"product", {g}, {std::move(*w)}};
    }
    const DefSet& factor = factors[idx];
    if (const auto* single = std::get_if<node::Singleton>(&factor.node())) {
      const FreeWord& head = as_free(single->element);
      auto rest = find_product(factors, idx + 1, free::mul(free::inv(head), g));
      if (!rest) return std::nullopt;
      rest->parts.insert(rest->parts.begin(), head);
      rest->children.insert(rest->children.begin(), Witness{"singleton", {head}, {}});
      return rest;
    }
    for (auto& head : candidates(factor, g)) {
      if (!spend()) return std::nullopt;
      auto hw = find(factor, head);
      if (!hw) continue;
      auto rest = find_product(factors, idx + 1, free::mul(free::inv(head), g));
      if (rest) {
        rest->parts.insert(rest->parts.begin(), head);
        rest->children.insert(rest->children.begin(), std::move(*hw));
        return rest;
      }
      if (exhausted_) return std::nullopt;
    }
    return std::nullopt;
  }

  std::size_t budget_;
  bool exhausted_ = false;
};

}  // namespace

Membership defset_membership(const DefSet& s, const Element& g, const SearchLimits& limits) {
  if (context_of(g) != s.context()) {
    throw ContextMismatch("element " + to_string(g) + " tested against a " + to_string(s.context()) + " set");
  }
  if (s.is_exact()) return exact_membership(s, g);
  if (s.context() == Context::Kb) return Unknown{"composite sets are not evaluated in the Klein bottle context"};

  const FreeWord& w = as_free(g);
  const AbelianBox box = abelian_image(s);
  const free::AbelianVector v = free::abelianize(w);
  if (!box.contains(v)) {
    // Report the first generator whose exponent sum falls outside the box.
    std::set<free::Generator> keys;
    for (const auto& [gen, r] : box.ranges) keys.insert(gen);
    for (const auto& [gen, c] : v.coords()) keys.insert(gen);
    for (auto gen : keys) {
      const Range r = box.at(gen);
      if (!r.contains(v[gen])) {
        return NonMember{{CertificateKind::ExponentSumMismatch,
                          "exponent sum of x" + std::to_string(gen) + " is " + v[gen].get_str() +
                              ", every element of the set has it in " + r.to_string(),
                          gen}};
      }
    }
  }
  FactorSearch search(limits.factorization_budget);
  if (auto wit = search.find(s, w)) return Member{std::move(*wit)};
  return Unknown{search.exhausted() ? "factorization budget exhausted" : "no factorization along subword cuts"};
}

// ---------------------------------------------------------------------------
// Disjointness and common elements

namespace {

using KbShape = std::variant<orders::KbInterval, orders::RightCoset, KbElement>;

std::optional<KbShape> kb_shape(const DefSet& s) {
  return std::visit(
      overloaded{
          [](const node::Interval& i) -> std::optional<KbShape> { return i.interval; },
          [](const node::Coset& c) -> std::optional<KbShape> { return c.coset; },
          [](const node::Singleton& p) -> std::optional<KbShape> { return as_kb(p.element); },
          [](const node::Translate& t) -> std::optional<KbShape> {
            auto inner = kb_shape(*t.inner);
            if (!inner) return std::nullopt;
            const KbElement& e = as_kb(t.by);
            if (const auto* pt = std::get_if<KbElement>(&*inner)) {
              return t.side == Side::Left ? kb::mul(e, *pt) : kb::mul(*pt, e);
            }
            // Left multiplication preserves the order; right multiplication moves cosets.
            if (const auto* iv = std::get_if<orders::KbInterval>(&*inner); iv && t.side == Side::Left) {
              return iv->left_translate(e);
            }
            if (const auto* c = std::get_if<orders::RightCoset>(&*inner); c && t.side == Side::Right) {
              return orders::RightCoset{c->subgroup, kb::mul(c->rep, e)};
            }
            return std::nullopt;
          },
          [](const auto&) -> std::optional<KbShape> { return std::nullopt; },
      },
      s.node());
}

std::string describe_shape(const KbShape& s) {
  return std::visit(overloaded{[](const orders::KbInterval& i) {
                                 return "[" + kb::to_string(i.lo()) + ", " + kb::to_string(i.hi()) + "]";
                               },
                               [](const orders::RightCoset& c) { return c.subgroup.describe() + "*" + kb::to_string(c.rep); },
                               [](const KbElement& g) { return "{" + kb::to_string(g) + "}"; }},
                    s);
}

std::optional<Certificate> kb_disjoint(const KbShape& a, const KbShape& b) {
  using orders::KbInterval;
  using orders::RightCoset;
  if (const auto* ia = std::get_if<KbInterval>(&a)) {
    if (const auto* ib = std::get_if<KbInterval>(&b)) {
      if (!ia->disjoint_from(*ib)) return std::nullopt;
      const bool a_first = orders::less(ia->hi(), ib->lo());
      const auto& first = a_first ? *ia : *ib;
      const auto& second = a_first ? *ib : *ia;
      return Certificate{CertificateKind::DisjointIntervals,
                         "hi " + kb::to_string(first.hi()) + " < lo " + kb::to_string(second.lo()), std::nullopt};
    }
    if (const auto* cb = std::get_if<RightCoset>(&b)) {
      if (orders::coset_meets_interval(*cb, *ia)) return std::nullopt;
      return Certificate{CertificateKind::CosetMissesInterval, describe_shape(b) + " misses " + describe_shape(a),
                         std::nullopt};
    }
  }
  if (const auto* ca = std::get_if<RightCoset>(&a)) {
    if (const auto* cb = std::get_if<RightCoset>(&b)) {
      if (!orders::cosets_disjoint(*ca, *cb)) return std::nullopt;
      if (ca->subgroup == cb->subgroup) {
        const KbElement q = kb::mul(ca->rep, kb::inv(cb->rep));
        return Certificate{CertificateKind::DistinctCosets,
                           "rep_a * rep_b^-1 = " + kb::to_string(q) + " not in " + ca->subgroup.describe(), std::nullopt};
      }
      return Certificate{CertificateKind::DisjointCosets,
                         describe_shape(a) + " and " + describe_shape(b) + " have incompatible residues", std::nullopt};
    }
    if (std::holds_alternative<KbInterval>(b)) return kb_disjoint(b, a);
  }
  return std::nullopt;
}

std::optional<KbElement> kb_common(const KbShape& a, const KbShape& b) {
  using orders::KbInterval;
  using orders::RightCoset;
  if (const auto* ia = std::get_if<KbInterval>(&a)) {
    if (const auto* ib = std::get_if<KbInterval>(&b)) {
      auto meet = ia->intersection(*ib);
      if (meet) return meet->midpoint();
      return std::nullopt;
    }
    if (const auto* cb = std::get_if<RightCoset>(&b)) return orders::coset_meets_interval(*cb, *ia);
  }
  if (const auto* ca = std::get_if<RightCoset>(&a)) {
    if (const auto* cb = std::get_if<RightCoset>(&b)) return orders::coset_meet(*ca, *cb);
    if (std::holds_alternative<KbInterval>(b)) return kb_common(b, a);
  }
  return std::nullopt;
}

bool is_member(const DefSet& s, const Element& g, const SearchLimits& limits) {
  return std::holds_alternative<Member>(defset_membership(s, g, limits));
}

// Singleton-like sets: their only element, if known exactly.
std::optional<Element> sole_element(const DefSet& s) {
  if (const auto* p = std::get_if<node::Singleton>(&s.node())) return p->element;
  if (const auto* t = std::get_if<node::Translate>(&s.node())) {
    if (auto inner = sole_element(*t->inner)) {
      return t->side == Side::Left ? element_mul(t->by, *inner) : element_mul(*inner, t->by);
    }
  }
  return std::nullopt;
}

std::optional<KbElement> box_scan(std::span<const DefSet* const> sets, const SearchLimits& limits) {
  const long r = limits.kb_box_radius;
  for (long n = -r; n <= r; ++n) {
    for (long m = -r; m <= r; ++m) {
      const Element g = KbElement{n, m};
      if (std::all_of(sets.begin(), sets.end(), [&](const DefSet* s) { return is_member(*s, g, limits); })) {
        return std::get<KbElement>(g);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Certificate> certify_disjoint(const DefSet& a, const DefSet& b) {
  if (a.context() != b.context()) throw ContextMismatch("disjointness across group contexts");
  for (const auto& pair : {std::pair{&a, &b}, std::pair{&b, &a}}) {
    if (auto e = sole_element(*pair.first); e && pair.second->is_exact()) {
      Membership m = exact_membership(*pair.second, *e);
      if (auto* nm = std::get_if<NonMember>(&m)) return nm->certificate;
      return std::nullopt;
    }
  }
  if (a.context() == Context::Kb) {
    auto sa = kb_shape(a);
    auto sb = kb_shape(b);
    if (sa && sb) return kb_disjoint(*sa, *sb);
    return std::nullopt;
  }
  const AbelianBox ba = abelian_image(a);
  const AbelianBox bb = abelian_image(b);
  std::set<free::Generator> keys;
  for (const auto& [g, r] : ba.ranges) keys.insert(g);
  for (const auto& [g, r] : bb.ranges) keys.insert(g);
  for (auto g : keys) {
    const Range ra = ba.at(g);
    const Range rb = bb.at(g);
    if (ra.disjoint_from(rb)) {
      return Certificate{CertificateKind::AbelianSeparation,
                         "exponent sum of x" + std::to_string(g) + " lies in " + ra.to_string() + " on one side and " +
                             rb.to_string() + " on the other",
                         g};
    }
  }
  return std::nullopt;
}

std::optional<Element> find_common(const DefSet& a, const DefSet& b, const SearchLimits& limits) {
  if (a.context() != b.context()) throw ContextMismatch("common element across group contexts");
  for (const auto& pair : {std::pair{&a, &b}, std::pair{&b, &a}}) {
    if (auto e = sole_element(*pair.first)) {
      if (is_member(*pair.second, *e, limits)) return e;
      return std::nullopt;
    }
  }
  if (a.context() == Context::Kb) {
    auto sa = kb_shape(a);
    auto sb = kb_shape(b);
    if (sa && sb) {
      if (auto g = kb_common(*sa, *sb)) return Element{*g};
      return std::nullopt;
    }
    const DefSet* both[] = {&a, &b};
    if (auto g = box_scan(both, limits)) return Element{*g};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rows

Row Row::from_family(std::string formula, const Family& family, std::vector<std::vector<Element>> params,
                     std::size_t k) {
  Row r{std::move(formula), std::move(params), {}, k};
  r.cells.reserve(r.params.size());
  for (const auto& p : r.params) r.cells.push_back(family(p));
  return r;
}

namespace {

// Calls fn on every k-subset of {0..n-1} in lexicographic order; stops when fn returns false.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(std::as_const(idx))) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

RowCheck row_inconsistency_check(const Row& r, const SearchLimits& limits) {
  if (r.k < 2) return RowUnknown{"k-inconsistency is only checked for k >= 2"};
  const std::size_t n = r.cells.size();

  // Pairwise disjointness, computed on demand.
  std::vector<std::optional<std::optional<Certificate>>> memo(n * n);
  auto disjoint = [&](std::size_t i, std::size_t j) -> const std::optional<Certificate>& {
    auto& slot = memo[i * n + j];
    if (!slot) slot = certify_disjoint(r.cells[i], r.cells[j]);
    return *slot;
  };

  RowCertified certified;
  std::optional<RowCheck> outcome;
  std::size_t unresolved = 0;
  std::vector<std::size_t> first_unresolved;
  for_each_subset(n, r.k, [&](const std::vector<std::size_t>& subset) {
    for (std::size_t a = 0; a < subset.size(); ++a) {
      for (std::size_t b = a + 1; b < subset.size(); ++b) {
        if (const auto& cert = disjoint(subset[a], subset[b])) {
          certified.subsets.push_back({subset, subset[a], subset[b], *cert});
          return true;
        }
      }
    }
    // No certified empty pair: look for an element in all k cells.
    if (auto common = find_common(r.cells[subset[0]], r.cells[subset[1]], limits)) {
      bool in_all = true;
      for (std::size_t a = 2; a < subset.size() && in_all; ++a) in_all = is_member(r.cells[subset[a]], *common, limits);
      if (in_all) {
        outcome = RowRefuted{*common, subset};
        return false;
      }
    }
    if (unresolved++ == 0) first_unresolved = subset;
    return true;
  });
  if (outcome) return *outcome;
  if (unresolved > 0) {
    std::ostringstream why;
    why << unresolved << " of the " << r.k << "-subsets are undecided, first {";
    for (std::size_t i = 0; i < first_unresolved.size(); ++i) why << (i ? "," : "") << first_unresolved[i];
    why << "}";
    return RowUnknown{why.str()};
  }
  return certified;
}

// ---------------------------------------------------------------------------
// Patterns

std::vector<std::size_t> PatternInstance::grid() const {
  std::vector<std::size_t> g;
  g.reserve(rows.size());
  for (const auto& r : rows) g.push_back(r.cells.size());
  return g;
}

std::size_t PatternInstance::path_count() const {
  std::size_t total = 1;
  for (const auto& r : rows) total *= r.cells.size();
  return rows.empty() ? 0 : total;
}

const char* verdict_name(const Verdict& v) {
  return std::visit(overloaded{[](const Verified&) { return "Verified"; }, [](const Refuted&) { return "Refuted"; },
                               [](const Inconclusive&) { return "Unknown"; }},
                    v);
}

namespace {

Path path_at(std::size_t index, const std::vector<std::size_t>& grid) {
  // Mixed radix with the last row varying fastest.
  Path p(grid.size());
  for (std::size_t i = grid.size(); i-- > 0;) {
    p[i] = index % grid[i];
    index /= grid[i];
  }
  return p;
}

using PathOutcome = std::variant<PathWitness, Refuted, std::string>;

std::optional<PathWitness> check_candidate(const PatternInstance& p, const Path& path, const Element& g,
                                           const SearchLimits& limits) {
  PathWitness pw{path, g, {}, true};
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    const auto& row = p.rows[i];
    if (context_of(g) != row.cells[path[i]].context()) return std::nullopt;
    Membership m = defset_membership(row.cells[path[i]], g, limits);
    auto* mem = std::get_if<Member>(&m);
    if (!mem) return std::nullopt;
    pw.memberships.push_back(std::move(mem->witness));
    if (p.ict) {
      for (std::size_t j = 0; j < row.cells.size(); ++j) {
        if (j != path[i] && !std::holds_alternative<NonMember>(defset_membership(row.cells[j], g, limits))) {
          return std::nullopt;
        }
      }
    }
  }
  return pw;
}

PathOutcome evaluate_path(const PatternInstance& p, const Path& path, const SearchLimits& limits) {
  if (p.hint) {
    if (auto hinted = p.hint(path)) {
      if (auto pw = check_candidate(p, path, *hinted, limits)) return *pw;
    }
  }
  std::vector<const DefSet*> chosen;
  chosen.reserve(p.rows.size());
  for (std::size_t i = 0; i < p.rows.size(); ++i) chosen.push_back(&p.rows[i].cells[path[i]]);

  for (std::size_t a = 0; a < chosen.size(); ++a) {
    for (std::size_t b = a + 1; b < chosen.size(); ++b) {
      if (auto cert = certify_disjoint(*chosen[a], *chosen[b])) {
        std::ostringstream why;
        why << "path has no witness: the cells chosen in rows " << a << " and " << b << " are disjoint";
        return Refuted{why.str(), std::nullopt, path, std::nullopt, *cert};
      }
    }
  }

  // Fallback search: exact meets of the first two cells, then a bounded box.
  std::vector<Element> candidates;
  if (chosen.size() == 1) {
    if (auto e = sole_element(*chosen[0])) candidates.push_back(*e);
  } else if (auto common = find_common(*chosen[0], *chosen[1], limits)) {
    candidates.push_back(*common);
  }
  for (const auto& c : candidates) {
    if (auto pw = check_candidate(p, path, c, limits)) {
      pw->from_hint = false;
      return *pw;
    }
  }
  if (chosen.front()->context() == Context::Kb) {
    const long r = limits.kb_box_radius;
    for (long n = -r; n <= r; ++n) {
      for (long m = -r; m <= r; ++m) {
        if (auto pw = check_candidate(p, path, KbElement{n, m}, limits)) {
          pw->from_hint = false;
          return *pw;
        }
      }
    }
  }
  std::ostringstream why;
  why << "no witness found for path (";
  for (std::size_t i = 0; i < path.size(); ++i) why << (i ? "," : "") << path[i];
  why << ")";
  return why.str();
}

std::optional<Refuted> structural_check(const PatternInstance& p) {
  if (p.rows.empty()) return Refuted{"pattern has depth 0", std::nullopt, std::nullopt, std::nullopt, std::nullopt};
  const Context ctx = p.rows.front().cells.empty() ? Context::Kb : p.rows.front().cells.front().context();
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    const auto& row = p.rows[i];
    if (row.cells.size() < 2) {
      return Refuted{"row " + std::to_string(i) + " has fewer than 2 columns", i, std::nullopt, std::nullopt,
                     std::nullopt};
    }
    for (const auto& c : row.cells) {
      if (c.context() != ctx) {
        return Refuted{"row " + std::to_string(i) + " mixes group contexts", i, std::nullopt, std::nullopt,
                       std::nullopt};
      }
    }
    for (std::size_t a = 0; a < row.params.size(); ++a) {
      for (std::size_t b = a + 1; b < row.params.size(); ++b) {
        if (row.params[a] == row.params[b]) {
          return Refuted{"row " + std::to_string(i) + " repeats a parameter", i, std::nullopt, std::nullopt,
                         std::nullopt};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Verdict verify_pattern(const PatternInstance& p, const VerifyOptions& options) {
  if (auto bad = structural_check(p)) return *bad;

  Inconclusive open;
  Verified verified;
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    RowCheck rc = row_inconsistency_check(p.rows[i], options.limits);
    if (auto* refuted = std::get_if<RowRefuted>(&rc)) {
      std::ostringstream why;
      why << "row " << i << " is not " << p.rows[i].k << "-inconsistent: " << to_string(refuted->element)
          << " lies in cells";
      for (auto c : refuted->cells) why << ' ' << c;
      return Refuted{why.str(), i, std::nullopt, refuted->element, std::nullopt};
    }
    if (auto* unknown = std::get_if<RowUnknown>(&rc)) {
      open.checks.push_back("row " + std::to_string(i) + ": " + unknown->reason);
      continue;
    }
    verified.rows.push_back(std::get<RowCertified>(std::move(rc)));
  }

  const auto grid = p.grid();
  const std::size_t total = p.path_count();
  std::vector<std::optional<PathOutcome>> outcomes(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) outcomes[i] = evaluate_path(p, path_at(i, grid), options.limits);
  };
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, total / 64)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  verified.paths.reserve(total);
  for (auto& o : outcomes) {
    if (auto* refuted = std::get_if<Refuted>(&*o)) return std::move(*refuted);
  }
  for (auto& o : outcomes) {
    if (auto* pw = std::get_if<PathWitness>(&*o)) {
      verified.paths.push_back(std::move(*pw));
    } else {
      open.checks.push_back(std::get<std::string>(*o));
    }
  }
  if (!open.checks.empty()) return open;
  return verified;
}

// ---------------------------------------------------------------------------
// Builders

PatternInstance build_kb_depth2(std::size_t n_cols, std::size_t j_cols) {
  if (n_cols < 2 || j_cols < 2) throw std::invalid_argument("build_kb_depth2 needs at least 2 columns per row");
  const Integer n(static_cast<unsigned long>(j_cols - 1));

  std::vector<std::vector<Element>> interval_params;
  for (std::size_t k = 0; k < n_cols; ++k) {
    auto member = orders::interval_construct(n, Integer(static_cast<unsigned long>(k)));
    interval_params.push_back({member.interval.lo(), member.interval.hi()});
  }
  Row intervals = Row::from_family(
      "z in I_{" + n.get_str() + ",k} = [x^k, x^k y^" + n.get_str() + "]",
      [](std::span<const Element> a) { return DefSet::interval({as_kb(a[0]), as_kb(a[1])}); },
      std::move(interval_params), 2);

  std::vector<std::vector<Element>> coset_params;
  for (std::size_t j = 0; j < j_cols; ++j) coset_params.push_back({KbElement{0L, static_cast<long>(j)}});
  Row cosets = Row::from_family(
      "z in C(x) y^j = <x> y^j",
      [](std::span<const Element> a) { return DefSet::coset({kb::KbSubgroup::cyclic_x(1), as_kb(a[0])}); },
      std::move(coset_params), 2);

  PatternInstance p;
  p.name = "klein-bottle depth-2 (" + std::to_string(n_cols) + "x" + std::to_string(j_cols) + ")";
  p.rows = {std::move(intervals), std::move(cosets)};
  p.hint = [](std::span<const std::size_t> path) -> std::optional<Element> {
    return KbElement{static_cast<long>(path[0]), static_cast<long>(path[1])};
  };
  return p;
}

DefSet chain_factor(free::Generator i) { return DefSet::power_set(i, Range{Integer(0), std::nullopt}); }

PatternInstance build_free_chain_pattern(std::size_t n, std::size_t cols) {
  if (n < 1) throw std::invalid_argument("build_free_chain_pattern needs n >= 1");
  if (cols < 2) throw std::invalid_argument("build_free_chain_pattern needs at least 2 columns");

  PatternInstance p;
  p.name = "free chain depth " + std::to_string(n + 1) + " (" + std::to_string(cols) + " columns)";
  for (std::size_t i = 0; i <= n; ++i) {
    std::vector<std::vector<Element>> params;
    for (std::size_t j = 0; j < cols; ++j) {
      params.push_back({FreeWord::generator_power(i, Integer(static_cast<unsigned long>(j + 1)))});
    }
    std::string formula = "x in ";
    for (std::size_t t = 0; t <= n; ++t) {
      formula += (t ? " " : "") + (t == i ? std::string("e_") + std::to_string(i) + ",j" : "D" + std::to_string(t));
    }
    p.rows.push_back(Row::from_family(
        std::move(formula),
        [n, i](std::span<const Element> a) {
          std::vector<DefSet> factors;
          for (std::size_t t = 0; t <= n; ++t) factors.push_back(t == i ? DefSet::singleton(a[0]) : chain_factor(t));
          return DefSet::product(std::move(factors));
        },
        std::move(params), 2));
  }
  p.hint = [](std::span<const std::size_t> path) -> std::optional<Element> {
    std::vector<free::Syllable> syl;
    for (std::size_t i = 0; i < path.size(); ++i) syl.push_back({i, Integer(static_cast<unsigned long>(path[i] + 1))});
    return FreeWord(std::move(syl));
  };
  return p;
}

ChainCertificate chain_nonmembership_certificate(std::size_t n, std::size_t i, const Integer& m0, const Integer& m1) {
  if (i > n) throw std::invalid_argument("chain certificate needs i <= n");
  if (m0 == m1) throw std::invalid_argument("chain certificate needs m0 != m1");

  std::vector<DefSet> factors;
  for (std::size_t t = 0; t <= n; ++t) {
    if (t != i) factors.push_back(chain_factor(t));
  }
  DefSet base = factors.empty() ? DefSet::singleton(FreeWord{}) : DefSet::product(std::move(factors));
  DefSet excluded = DefSet::power(DefSet::conj_closure(std::move(base)), 2 * n);
  FreeWord quotient = free::mul(FreeWord::generator_power(i, m0), FreeWord::generator_power(i, Integer(-m1)));
  const Range allowed = abelian_image(excluded).at(i);
  const Integer gap = free::abelianize(quotient)[i];

  Membership m = defset_membership(excluded, quotient);
  auto* nm = std::get_if<NonMember>(&m);
  if (!nm || nm->certificate.kind != CertificateKind::ExponentSumMismatch || nm->certificate.generator != i) {
    throw std::logic_error("abelianization failed to separate x_i^(m0-m1) from the excluded set");
  }
  return ChainCertificate{n, i, m0, m1, std::move(quotient), std::move(excluded), gap, allowed, nm->certificate};
}

}  // namespace inpkit::patterns
