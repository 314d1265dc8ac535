#include "inpkit/serialize.hpp"

namespace inpkit::serialize {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

json range(const patterns::Range& r) {
  return {{"lo", r.lo ? integer(*r.lo) : json(nullptr)}, {"hi", r.hi ? integer(*r.hi) : json(nullptr)}};
}

json path(const patterns::Path& p) {
  json out = json::array();
  for (auto v : p) out.push_back(v);
  return out;
}

}  // namespace

json integer(const Integer& v) {
  if (auto small = to_int64(v)) return *small;
  return v.get_str();
}

Integer integer_from(const json& j) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  return parse_integer(j.get<std::string>());
}

json element(const patterns::Element& e) {
  return std::visit(overloaded{[](const kb::KbElement& g) -> json {
                                 return {{"group", "klein-bottle"}, {"n", integer(g.n)}, {"m", integer(g.m)}};
                               },
                               [](const free::FreeWord& w) -> json {
                                 json syl = json::array();
                                 for (const auto& s : w.syllables()) syl.push_back({s.gen, integer(s.exp)});
                                 return {{"group", "free"}, {"word", free::to_string(w)}, {"syllables", syl}};
                               }},
                    e);
}

patterns::Element element_from(const json& j) {
  if (j.at("group") == "klein-bottle") return kb::KbElement{integer_from(j.at("n")), integer_from(j.at("m"))};
  std::vector<free::Syllable> syl;
  for (const auto& s : j.at("syllables")) syl.push_back({s.at(0).get<free::Generator>(), integer_from(s.at(1))});
  return free::FreeWord(std::move(syl));
}

json rational(const plaut::Rational& q) { return q.get_str(); }

json plaut(const plaut::PlAut& f) {
  json knots = json::array();
  for (const auto& [x, y] : f.knots()) knots.push_back({rational(x), rational(y)});
  return {{"left_slope", rational(f.left_slope())}, {"knots", knots}, {"right_slope", rational(f.right_slope())}};
}

json orbit_certificate(const plaut::OrbitCertificate& c) {
  json samples = json::array();
  for (const auto& [k, v] : c.samples) samples.push_back({k, rational(v)});
  return {{"start", rational(c.start)},
          {"fixed_point", rational(c.fixed_point)},
          {"image_of_fixed_point", rational(c.image_of_fixed_point)},
          {"increasing", c.increasing},
          {"sample_radius", c.sample_radius},
          {"samples", samples}};
}

json defset(const patterns::DefSet& s) {
  namespace node = patterns::node;
  return std::visit(
      overloaded{
          [](const node::Interval& i) -> json {
            return {{"kind", "interval"}, {"lo", element(i.interval.lo())}, {"hi", element(i.interval.hi())}};
          },
          [](const node::Coset& c) -> json {
            return {{"kind", "coset"}, {"subgroup", c.coset.subgroup.describe()}, {"rep", element(c.coset.rep)}};
          },
          [](const node::PowerSet& p) -> json {
            return {{"kind", "power-set"}, {"generator", p.gen}, {"exponents", range(p.exponents)}};
          },
          [](const node::Translate& t) -> json {
            return {{"kind", "translate"},
                    {"side", t.side == patterns::Side::Left ? "left" : "right"},
                    {"by", element(t.by)},
                    {"inner", defset(*t.inner)}};
          },
          [](const node::Product& p) -> json {
            json f = json::array();
            for (const auto& x : p.factors) f.push_back(defset(x));
            return {{"kind", "product"}, {"factors", f}};
          },
          [](const node::ConjClosure& c) -> json { return {{"kind", "conj-closure"}, {"inner", defset(*c.inner)}}; },
          [](const node::Power& p) -> json { return {{"kind", "power"}, {"k", p.k}, {"inner", defset(*p.inner)}}; },
          [](const node::Singleton& s) -> json { return {{"kind", "singleton"}, {"element", element(s.element)}}; },
      },
      s.node());
}

json certificate(const patterns::Certificate& c) {
  json out = {{"kind", patterns::to_string(c.kind)}, {"detail", c.detail}};
  if (c.generator) out["generator"] = *c.generator;
  return out;
}

json witness(const patterns::Witness& w) {
  json parts = json::array();
  for (const auto& p : w.parts) parts.push_back(element(p));
  json out = {{"rule", w.rule}, {"parts", parts}};
  if (!w.children.empty()) {
    json children = json::array();
    for (const auto& c : w.children) children.push_back(witness(c));
    out["children"] = children;
  }
  return out;
}

json row(const patterns::Row& r) {
  json params = json::array();
  for (const auto& p : r.params) {
    json one = json::array();
    for (const auto& e : p) one.push_back(element(e));
    params.push_back(one);
  }
  json cells = json::array();
  for (const auto& c : r.cells) cells.push_back(defset(c));
  return {{"formula", r.formula}, {"k", r.k}, {"params", params}, {"cells", cells}};
}

json pattern(const patterns::PatternInstance& p) {
  json rows = json::array();
  for (const auto& r : p.rows) rows.push_back(row(r));
  json grid = json::array();
  for (auto g : p.grid()) grid.push_back(g);
  return {{"name", p.name}, {"depth", p.depth()}, {"grid", grid}, {"ict", p.ict}, {"rows", rows}};
}

json row_check(const patterns::RowCertified& r) {
  json subsets = json::array();
  for (const auto& s : r.subsets) {
    json cells = json::array();
    for (auto c : s.cells) cells.push_back(c);
    subsets.push_back({{"cells", cells}, {"pair", {s.first, s.second}}, {"certificate", certificate(s.certificate)}});
  }
  return {{"status", "certified"}, {"subsets", subsets}};
}

json verdict(const patterns::Verdict& v) {
  return std::visit(
      overloaded{
          [](const patterns::Verified& ok) -> json {
            json rows = json::array();
            for (const auto& r : ok.rows) rows.push_back(row_check(r));
            json paths = json::array();
            for (const auto& p : ok.paths) {
              json mem = json::array();
              for (const auto& w : p.memberships) mem.push_back(witness(w));
              paths.push_back(
                  {{"eta", path(p.path)}, {"witness", element(p.element)}, {"from_hint", p.from_hint}, {"memberships", mem}});
            }
            return {{"verdict", "Verified"}, {"rows", rows}, {"paths", paths}};
          },
          [](const patterns::Refuted& r) -> json {
            json out = {{"verdict", "Refuted"}, {"reason", r.reason}};
            if (r.row) out["row"] = *r.row;
            if (r.path) out["eta"] = path(*r.path);
            if (r.element) out["element"] = element(*r.element);
            if (r.certificate) out["certificate"] = certificate(*r.certificate);
            return out;
          },
          [](const patterns::Inconclusive& u) -> json { return {{"verdict", "Unknown"}, {"inconclusive", u.checks}}; },
      },
      v);
}

}  // namespace inpkit::serialize
