#pragma once

// JSON shapes for elements, sets, patterns and verdicts. See docs/json-schema.md.

#include "json.hpp"

#include "inpkit/orders.hpp"
#include "inpkit/patterns.hpp"
#include "inpkit/plaut.hpp"

namespace inpkit::serialize {

using nlohmann::json;

/// Integers that fit in 64 bits are JSON numbers; larger ones are decimal strings.
json integer(const Integer& v);
Integer integer_from(const json& j);

json element(const patterns::Element& e);
patterns::Element element_from(const json& j);

json rational(const plaut::Rational& q);
json plaut(const plaut::PlAut& f);
json orbit_certificate(const plaut::OrbitCertificate& c);

json defset(const patterns::DefSet& s);
json certificate(const patterns::Certificate& c);
json witness(const patterns::Witness& w);
json row(const patterns::Row& r);
json pattern(const patterns::PatternInstance& p);
json row_check(const patterns::RowCertified& r);
json verdict(const patterns::Verdict& v);

}  // namespace inpkit::serialize
