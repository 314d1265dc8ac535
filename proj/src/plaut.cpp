#include "inpkit/plaut.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace inpkit::plaut {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return make_rational(parse_integer(text), 1);
  return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

std::string to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------------------

namespace well_order {

namespace {

// Ranks stay within 64 bits well past this height; it bounds the work per call.
constexpr std::uint64_t kMaxHeight = 50'000'000;

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t totient(std::uint64_t n) {
  std::uint64_t result = n;
  for (auto p : prime_factors(n)) result -= result / p;
  return result;
}

// Count of r in [1, x] coprime to the product of the given primes.
std::uint64_t coprime_upto(std::uint64_t x, const std::vector<std::uint64_t>& primes) {
  std::int64_t total = 0;
  const std::size_t subsets = std::size_t{1} << primes.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::uint64_t d = 1;
    int bits = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (mask >> i & 1) {
        d *= primes[i];
        ++bits;
      }
    }
    const auto term = static_cast<std::int64_t>(x / d);
    total += bits % 2 ? -term : term;
  }
  return static_cast<std::uint64_t>(total);
}

// The k-th (1-based) r >= 1 coprime to the primes.
std::uint64_t kth_coprime(std::uint64_t k, const std::vector<std::uint64_t>& primes, std::uint64_t hi) {
  std::uint64_t lo = 1;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (coprime_upto(mid, primes) >= k)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

constexpr std::uint64_t kSieveLimit = 1 << 20;

// Prefix sums of the totient up to kSieveLimit.
const std::vector<std::uint64_t>& totient_prefix() {
  static const std::vector<std::uint64_t> prefix = [] {
    std::vector<std::uint64_t> phi(kSieveLimit + 1);
    std::iota(phi.begin(), phi.end(), std::uint64_t{0});
    for (std::uint64_t p = 2; p <= kSieveLimit; ++p) {
      if (phi[p] != p) continue;
      for (std::uint64_t m = p; m <= kSieveLimit; m += p) phi[m] -= phi[m] / p;
    }
    for (std::uint64_t i = 1; i <= kSieveLimit; ++i) phi[i] += phi[i - 1];
    return phi;
  }();
  return prefix;
}

// sum_{k <= n} phi(k), by sum_{d=1}^{n} Phi(n / d) = n (n + 1) / 2.
std::uint64_t totient_sum(std::uint64_t n, std::unordered_map<std::uint64_t, std::uint64_t>& memo) {
  if (n <= kSieveLimit) return totient_prefix()[n];
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  std::uint64_t result = n * (n + 1) / 2;
  for (std::uint64_t d = 2; d <= n;) {
    const std::uint64_t v = n / d;
    const std::uint64_t last = n / v;
    result -= (last - d + 1) * totient_sum(v, memo);
    d = last + 1;
  }
  memo.emplace(n, result);
  return result;
}

// Positive fractions of height below h.
std::uint64_t positives_below(std::uint64_t h) {
  if (h <= 1) return 0;
  std::unordered_map<std::uint64_t, std::uint64_t> memo;
  return 1 + 2 * (totient_sum(h - 1, memo) - 1);
}

// Positive fractions of height h in enumeration order, as (p, q): first h/q
// for q < h, then p/h for p < h.
std::vector<std::pair<std::uint64_t, std::uint64_t>> level(std::uint64_t h) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  if (h == 1) {
    out.emplace_back(1, 1);
    return out;
  }
  for (std::uint64_t q = 1; q < h; ++q) {
    if (std::gcd(q, h) == 1) out.emplace_back(h, q);
  }
  for (std::uint64_t p = 1; p < h; ++p) {
    if (std::gcd(p, h) == 1) out.emplace_back(p, h);
  }
  return out;
}

std::uint64_t to_u64(const Integer& v) {
  if (v < 0 || v > kMaxHeight) throw std::out_of_range("rational too tall to rank: component " + v.get_str());
  return v.get_ui();
}

}  // namespace

std::uint64_t rank(const Rational& t) {
  if (t == 0) return 0;
  const Integer num = abs(t.get_num());
  const std::uint64_t p = to_u64(num);
  const std::uint64_t q = to_u64(t.get_den());
  const std::uint64_t h = std::max(p, q);

  std::uint64_t within = 0;
  if (h > 1) {
    const auto primes = prime_factors(h);
    within = q < h ? coprime_upto(q - 1, primes) : totient(h) + coprime_upto(p - 1, primes);
  }
  return 1 + 2 * (positives_below(h) + within) + (t < 0 ? 1 : 0);
}

Rational unrank(std::uint64_t index) {
  if (index == 0) return 0;
  const std::uint64_t j = index - 1;
  // Least h with 2 * positives_below(h + 1) > j.
  std::uint64_t lo = 1, hi = 2;
  while (2 * positives_below(hi + 1) <= j) {
    if (hi == kMaxHeight) throw std::out_of_range("index beyond the rankable heights");
    hi = std::min(2 * hi, kMaxHeight);
  }
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (2 * positives_below(mid + 1) > j)
      hi = mid;
    else
      lo = mid + 1;
  }
  const std::uint64_t h = lo;
  const std::uint64_t slot = (j - 2 * positives_below(h)) / 2;
  std::uint64_t p = 1, q = 1;
  if (h > 1) {
    const auto primes = prime_factors(h);
    const std::uint64_t half = totient(h);
    if (slot < half) {
      p = h;
      q = kth_coprime(slot + 1, primes, h);
    } else {
      p = kth_coprime(slot - half + 1, primes, h);
      q = h;
    }
  }
  Rational r = make_rational(Integer(static_cast<unsigned long>(p)), Integer(static_cast<unsigned long>(q)));
  return (j % 2 == 1) ? Rational(-r) : r;
}

Cursor::Cursor() : current_(0) {}

void Cursor::load_height() {
  ++height_;
  level_ = level(height_);
  slot_ = 0;
}

void Cursor::advance() {
  ++index_;
  if (height_ == 0 || slot_ >= 2 * level_.size()) load_height();
  const auto [p, q] = level_[slot_ / 2];
  current_ = make_rational(Integer(static_cast<unsigned long>(p)), Integer(static_cast<unsigned long>(q)));
  if (slot_ % 2 == 1) current_ = -current_;
  ++slot_;
}

}  // namespace well_order

// ---------------------------------------------------------------------------

PlAut::PlAut(std::vector<Knot> knots, Rational left_slope, Rational right_slope)
    : knots_(std::move(knots)), left_slope_(std::move(left_slope)), right_slope_(std::move(right_slope)) {
  if (knots_.empty()) throw std::invalid_argument("PlAut needs at least one knot");
  if (left_slope_ <= 0 || right_slope_ <= 0) throw std::invalid_argument("PlAut ray slopes must be positive");
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (knots_[i].first <= knots_[i - 1].first || knots_[i].second <= knots_[i - 1].second) {
      throw std::invalid_argument("PlAut knots must be strictly increasing in both coordinates");
    }
  }
  normalize();
}

PlAut PlAut::identity() { return affine(1, 0); }

PlAut PlAut::affine(const Rational& slope, const Rational& intercept) {
  return PlAut({{Rational(0), intercept}}, slope, slope);
}

void PlAut::normalize() {
  // slopes[i] is the slope entering knot i; slopes[i + 1] the slope leaving it.
  std::vector<Rational> slopes;
  slopes.reserve(knots_.size() + 1);
  slopes.push_back(left_slope_);
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    slopes.push_back((knots_[i].second - knots_[i - 1].second) / (knots_[i].first - knots_[i - 1].first));
  }
  slopes.push_back(right_slope_);

  std::vector<Knot> kept;
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (slopes[i] != slopes[i + 1]) kept.push_back(knots_[i]);
  }
  if (kept.empty()) {
    Rational at_zero = apply(0);
    kept.emplace_back(0, at_zero);
  }
  knots_ = std::move(kept);
}

Rational PlAut::apply(const Rational& t) const {
  const Knot& first = knots_.front();
  if (t <= first.first) return first.second + left_slope_ * (t - first.first);
  const Knot& last = knots_.back();
  if (t >= last.first) return last.second + right_slope_ * (t - last.first);
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                             [](const Rational& v, const Knot& k) { return v < k.first; });
  const Knot& hi = *it;
  const Knot& lo = *(it - 1);
  return lo.second + (hi.second - lo.second) * (t - lo.first) / (hi.first - lo.first);
}

std::vector<Affine> PlAut::pieces() const {
  std::vector<Affine> out;
  out.reserve(knots_.size() + 1);
  const Knot& first = knots_.front();
  out.push_back({left_slope_, first.second - left_slope_ * first.first});
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    const Knot& lo = knots_[i - 1];
    const Knot& hi = knots_[i];
    Rational s = (hi.second - lo.second) / (hi.first - lo.first);
    Rational c = lo.second - s * lo.first;
    out.push_back({std::move(s), std::move(c)});
  }
  const Knot& last = knots_.back();
  out.push_back({right_slope_, last.second - right_slope_ * last.first});
  return out;
}

bool PlAut::is_identity() const { return *this == identity(); }

std::vector<PlAut::FixedRange> PlAut::fixed_points() const {
  const auto ps = pieces();
  std::vector<FixedRange> raw;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    std::optional<Rational> lo = i == 0 ? std::nullopt : std::optional<Rational>(knots_[i - 1].first);
    std::optional<Rational> hi = i + 1 == ps.size() ? std::nullopt : std::optional<Rational>(knots_[i].first);
    const Affine& a = ps[i];
    if (a.slope == 1) {
      if (a.intercept == 0) raw.push_back({lo, hi});
      continue;
    }
    Rational t = a.intercept / (1 - a.slope);
    if ((!lo || *lo <= t) && (!hi || t <= *hi)) raw.push_back({t, t});
  }
  // Pieces are visited left to right; glue ranges sharing an endpoint.
  std::vector<FixedRange> merged;
  for (auto& r : raw) {
    if (!merged.empty()) {
      auto& back = merged.back();
      if (back.hi && r.lo && *back.hi >= *r.lo) {
        if (!r.hi || *r.hi > *back.hi) back.hi = r.hi;
        continue;
      }
    }
    merged.push_back(std::move(r));
  }
  return merged;
}

std::ostream& operator<<(std::ostream& os, const PlAut& f) {
  os << "PL[slope " << f.left_slope().get_str();
  for (const auto& [x, y] : f.knots()) os << " | " << x.get_str() << "->" << y.get_str();
  return os << " | slope " << f.right_slope().get_str() << ']';
}

std::string to_string(const PlAut& f) {
  std::ostringstream os;
  os << f;
  return os.str();
}

PlAut compose(const PlAut& f, const PlAut& g) {
  const PlAut g_inv = inverse(g);
  std::vector<Rational> xs;
  xs.reserve(f.knots().size() + g.knots().size());
  for (const auto& k : g.knots()) xs.push_back(k.first);
  for (const auto& k : f.knots()) xs.push_back(g_inv.apply(k.first));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<PlAut::Knot> knots;
  knots.reserve(xs.size());
  for (auto& x : xs) {
    Rational y = f.apply(g.apply(x));
    knots.emplace_back(std::move(x), std::move(y));
  }
  return PlAut(std::move(knots), f.left_slope() * g.left_slope(), f.right_slope() * g.right_slope());
}

PlAut inverse(const PlAut& f) {
  std::vector<PlAut::Knot> knots;
  knots.reserve(f.knots().size());
  for (const auto& [x, y] : f.knots()) knots.emplace_back(y, x);
  return PlAut(std::move(knots), 1 / f.left_slope(), 1 / f.right_slope());
}

PlAut power(const PlAut& f, long k) {
  const PlAut base = k < 0 ? inverse(f) : f;
  PlAut result = PlAut::identity();
  for (long i = 0; i < (k < 0 ? -k : k); ++i) result = compose(base, result);
  return result;
}

PlAut reflect(const PlAut& f) {
  std::vector<PlAut::Knot> knots;
  knots.reserve(f.knots().size());
  for (auto it = f.knots().rbegin(); it != f.knots().rend(); ++it) knots.emplace_back(-it->first, -it->second);
  return PlAut(std::move(knots), f.right_slope(), f.left_slope());
}

Rational orbit_point(const PlAut& f, const Rational& t, long k) {
  Rational cur = t;
  if (k >= 0) {
    for (long i = 0; i < k; ++i) cur = f.apply(cur);
    return cur;
  }
  const PlAut f_inv = inverse(f);
  for (long i = 0; i < -k; ++i) cur = f_inv.apply(cur);
  return cur;
}

// ---------------------------------------------------------------------------

Exhausted::Exhausted(std::uint64_t cap)
    : std::runtime_error("no difference found among the first " + std::to_string(cap + 1) + " rationals"),
      cap_(cap) {}

Rational first_difference(const PlAut& f, const PlAut& g, std::uint64_t search_cap) {
  well_order::Cursor cur;
  while (true) {
    if (f.apply(cur.current()) != g.apply(cur.current())) return cur.current();
    if (cur.index() >= search_cap) throw Exhausted(search_cap);
    cur.advance();
  }
}

const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "LT";
    case Ordering::Equal: return "EQ";
    case Ordering::Greater: return "GT";
  }
  return "?";
}

Ordering compare(const PlAut& f, const PlAut& g, std::uint64_t search_cap) {
  if (f == g) return Ordering::Equal;
  const Rational t = first_difference(f, g, search_cap);
  return f.apply(t) < g.apply(t) ? Ordering::Less : Ordering::Greater;
}

// ---------------------------------------------------------------------------

OrbitCertificate orbit_bound_certificate(const PlAut& f, const Rational& start, const Rational& fixed_point,
                                         long sample_radius) {
  OrbitCertificate cert;
  cert.start = start;
  cert.fixed_point = fixed_point;
  cert.image_of_fixed_point = f.apply(fixed_point);
  if (cert.image_of_fixed_point != fixed_point) {
    throw CertificateRejected(to_string(fixed_point) + " is not fixed: maps to " + to_string(cert.image_of_fixed_point));
  }
  if (start >= fixed_point) {
    throw CertificateRejected("start " + to_string(start) + " is not below the fixed point " + to_string(fixed_point));
  }
  const auto ps = f.pieces();
  cert.increasing = std::all_of(ps.begin(), ps.end(), [](const Affine& a) { return a.slope > 0; });
  cert.sample_radius = sample_radius;

  const PlAut f_inv = inverse(f);
  Rational fwd = start;
  Rational back = start;
  std::vector<std::pair<long, Rational>> negatives;
  cert.samples.emplace_back(0, start);
  for (long k = 1; k <= sample_radius; ++k) {
    fwd = f.apply(fwd);
    back = f_inv.apply(back);
    cert.samples.emplace_back(k, fwd);
    negatives.emplace_back(-k, back);
  }
  cert.samples.insert(cert.samples.begin(), negatives.rbegin(), negatives.rend());
  for (const auto& [k, v] : cert.samples) {
    if (v >= fixed_point) throw std::logic_error("orbit crossed a fixed point; f is not increasing");
  }
  return cert;
}

bool validate(const OrbitCertificate& cert, const PlAut& f) {
  if (f.apply(cert.fixed_point) != cert.fixed_point) return false;
  if (cert.image_of_fixed_point != cert.fixed_point) return false;
  if (!(cert.start < cert.fixed_point)) return false;
  for (const auto& piece : f.pieces()) {
    if (piece.slope <= 0) return false;
  }
  for (const auto& [k, v] : cert.samples) {
    if (orbit_point(f, cert.start, k) != v || v >= cert.fixed_point) return false;
  }
  return cert.increasing;
}

namespace {

// A fixed point p of f with t0 < p <= target, if one exists.
std::optional<Rational> barrier(const PlAut& f, const Rational& t0, const Rational& target) {
  if (target <= t0) return std::nullopt;
  std::optional<Rational> best;
  for (const auto& r : f.fixed_points()) {
    if (r.hi && *r.hi <= t0) continue;
    Rational candidate = (r.lo && *r.lo > t0) ? *r.lo : target;
    if (r.hi && candidate > *r.hi) candidate = *r.hi;
    if (candidate > t0 && candidate <= target && (!best || candidate < *best)) best = candidate;
  }
  return best;
}

}  // namespace

HullMembership hull_of_cyclic_membership(const PlAut& f, const PlAut& g, long k_range, std::uint64_t search_cap) {
  if (f.is_identity()) throw std::invalid_argument("hull of <f> needs f different from the identity");
  if (k_range < 0) throw std::invalid_argument("k_range must be non-negative");

  const bool f_positive = compare(PlAut::identity(), f, search_cap) == Ordering::Less;
  std::optional<long> lower;
  std::optional<long> upper;
  PlAut fk = power(f, -k_range);
  for (long k = -k_range; k <= k_range; ++k) {
    const Ordering c = compare(fk, g, search_cap);
    if (c != Ordering::Greater) {
      if (!lower || (f_positive ? k > *lower : k < *lower)) lower = k;
    }
    if (c != Ordering::Less) {
      if (!upper || (f_positive ? k < *upper : k > *upper)) upper = k;
    }
    fk = compose(f, fk);
  }
  if (lower && upper) return HullIn{*lower, *upper};

  const Rational t0 = well_order::unrank(0);
  const Rational g0 = g.apply(t0);
  if (auto p = barrier(f, t0, g0)) {
    return HullNotIn{t0, g0, true, orbit_bound_certificate(f, t0, *p)};
  }
  const PlAut mirrored = reflect(f);
  if (auto p = barrier(mirrored, -t0, -g0)) {
    return HullNotIn{t0, g0, false, orbit_bound_certificate(mirrored, -t0, *p)};
  }
  std::ostringstream why;
  why << "no bracketing powers within |k| <= " << k_range << " and no fixed point of f separates " << to_string(t0)
      << " from " << to_string(g0);
  return HullUnknown{why.str()};
}

HullExample example_hull_build() {
  HullExample ex{0, 1, 2, 3, 4, PlAut::identity(), PlAut::identity()};
  if (ex.a != well_order::unrank(0)) throw std::logic_error("a must be the first rational of the well-order");
  // f: t+2 left of a, a->c and d->d linearly, identity right of d.
  ex.f = PlAut({{ex.a, ex.c}, {ex.d, ex.d}}, 1, 1);
  // g: t+1 left of a, a->b and b->e linearly, t+3 right of b.
  ex.g = PlAut({{ex.a, ex.b}, {ex.b, ex.e}}, 1, 1);

  const bool ok = ex.a < ex.b && ex.b < ex.c && ex.c < ex.d && ex.d < ex.e && ex.f(ex.a) == ex.c &&
                  ex.f(ex.d) == ex.d && ex.g(ex.a) == ex.b && ex.g(ex.b) == ex.e && ex.g(ex.g(ex.a)) == ex.e;
  if (!ok) throw std::logic_error("hull example violates its point constraints");
  return ex;
}

}  // namespace inpkit::plaut
