#include "inpkit/free_group.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace inpkit::free {

namespace {

// Appends a syllable to an already reduced stack, cancelling as needed.
void push_reduced(std::vector<Syllable>& out, const Generator gen, const Integer& exp) {
  if (exp == 0) return;
  if (!out.empty() && out.back().gen == gen) {
    out.back().exp += exp;
    if (out.back().exp == 0) out.pop_back();
    return;
  }
  out.push_back({gen, exp});
}

}  // namespace

FreeWord::FreeWord(std::vector<Syllable> syllables) {
  syllables_.reserve(syllables.size());
  for (auto& s : syllables) push_reduced(syllables_, s.gen, s.exp);
}

FreeWord::FreeWord(std::initializer_list<std::pair<Generator, long>> syllables) {
  for (const auto& [gen, exp] : syllables) push_reduced(syllables_, gen, Integer(exp));
}

FreeWord FreeWord::generator_power(Generator gen, Integer exp) {
  FreeWord w;
  push_reduced(w.syllables_, gen, exp);
  return w;
}

Integer FreeWord::length() const {
  Integer total = 0;
  for (const auto& s : syllables_) total += abs(s.exp);
  return total;
}

Generator FreeWord::rank() const {
  Generator r = 0;
  for (const auto& s : syllables_) r = std::max(r, s.gen + 1);
  return r;
}

bool operator<(const FreeWord& a, const FreeWord& b) {
  return std::lexicographical_compare(
      a.syllables_.begin(), a.syllables_.end(), b.syllables_.begin(), b.syllables_.end(),
      [](const Syllable& l, const Syllable& r) { return l.gen != r.gen ? l.gen < r.gen : l.exp < r.exp; });
}

std::ostream& operator<<(std::ostream& os, const FreeWord& w) {
  if (w.is_identity()) return os << 'e';
  bool first = true;
  for (const auto& s : w.syllables()) {
    if (!first) os << ' ';
    first = false;
    os << 'x' << s.gen;
    if (s.exp != 1) os << '^' << s.exp.get_str();
  }
  return os;
}

std::string to_string(const FreeWord& w) {
  std::ostringstream os;
  os << w;
  return os.str();
}

FreeWord parse_word(const std::string& text) {
  std::vector<Syllable> out;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("bad free word '" + text + "': " + why);
  };
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*')) ++i;
  };
  skip();
  if (i < text.size() && text[i] == 'e') {
    ++i;
    skip();
    if (i != text.size()) fail("trailing input after identity");
    return {};
  }
  while (i < text.size()) {
    if (text[i] != 'x') fail("expected 'x'");
    ++i;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) fail("missing generator index");
    const Generator gen = std::stoull(text.substr(start, i - start));
    Integer exp = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      exp = parse_integer(text.substr(start, i - start));
    }
    out.push_back({gen, exp});
    skip();
  }
  return FreeWord(std::move(out));
}

FreeWord mul(const FreeWord& u, const FreeWord& v) {
  std::vector<Syllable> out = u.syllables();
  for (const auto& s : v.syllables()) push_reduced(out, s.gen, s.exp);
  return FreeWord(std::move(out));
}

FreeWord inv(const FreeWord& u) {
  std::vector<Syllable> out;
  out.reserve(u.syllable_count());
  for (auto it = u.syllables().rbegin(); it != u.syllables().rend(); ++it) out.push_back({it->gen, -it->exp});
  return FreeWord(std::move(out));
}

FreeWord pow(const FreeWord& u, const Integer& k) {
  if (k < 0) return pow(inv(u), Integer(-k));
  FreeWord result;
  FreeWord base = u;
  Integer e = k;
  while (e > 0) {
    if (is_odd(e)) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

FreeWord conjugate(const FreeWord& v, const FreeWord& u) { return mul(mul(u, v), inv(u)); }

AbelianVector::AbelianVector(std::map<Generator, Integer> coords) {
  for (auto& [g, c] : coords) {
    if (c != 0) coords_.emplace(g, std::move(c));
  }
}

Integer AbelianVector::operator[](Generator gen) const {
  auto it = coords_.find(gen);
  return it == coords_.end() ? Integer(0) : it->second;
}

AbelianVector AbelianVector::operator+(const AbelianVector& rhs) const {
  std::map<Generator, Integer> sum = coords_;
  for (const auto& [g, c] : rhs.coords_) sum[g] += c;
  return AbelianVector(std::move(sum));
}

AbelianVector AbelianVector::operator-() const {
  std::map<Generator, Integer> neg;
  for (const auto& [g, c] : coords_) neg.emplace(g, -c);
  return AbelianVector(std::move(neg));
}

std::ostream& operator<<(std::ostream& os, const AbelianVector& v) {
  os << '{';
  bool first = true;
  for (const auto& [g, c] : v.coords()) {
    if (!first) os << ", ";
    first = false;
    os << g << ": " << c.get_str();
  }
  return os << '}';
}

AbelianVector abelianize(const FreeWord& u) {
  std::map<Generator, Integer> sums;
  for (const auto& s : u.syllables()) sums[s.gen] += s.exp;
  return AbelianVector(std::move(sums));
}

}  // namespace inpkit::free
