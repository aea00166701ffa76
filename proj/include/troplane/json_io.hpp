#pragma once

#include <json.hpp>
#include <string_view>

#include "troplane/divisor.hpp"
#include "troplane/realize.hpp"
#include "troplane/valuation.hpp"

namespace troplane {

using Json = nlohmann::json;

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);  // "p/q", "p", or an integer

Json to_json(const RationalPoint& p);
RationalPoint point_from_json(const Json& j);

// {vertices, bounded_edges:[{v, dir, len, weight}], rays:[{v, dir, weight}],
//  newton, dual:{cells:[[[i,j],...],...]}}
Json to_json(const TropicalCurve& c);
// Rebuilds from the dual cells and vertex positions, then checks the listed
// edges and rays against the rebuilt curve. Throws InvalidInput.
TropicalCurve curve_from_json(const Json& j);

// Curve JSON, polynomial JSON ({"terms":[{"exp","val"}]}) or polynomial text.
TropicalCurve read_curve(std::string_view text);

// {chips:[{pt:["x","y"], mult:n}]}
Json to_json(const Divisor& d);
Divisor divisor_from_json(const Json& j);
Divisor read_divisor(std::string_view text);

// {terms:[{exp:[i,j], coeff:[{e:"q", c:"p/q"}]}]}; c may also name a
// parameter, optionally signed or scaled: "a", "-beta", "2*gamma".
GenericPolynomial generic_from_json(const Json& j);
// Puiseux JSON or infix text.
GenericPolynomial read_generic(std::string_view text);
Json to_json(const PuiseuxPolynomial& f);

Json to_json(const DivisorCell& cell);
Json to_json(const RealizabilityVerdict& v);
Json to_json(const CounterexampleReport& r);
Json to_json(const LocalDims& d);
Json to_json(const IntersectionValuations& v);

}  // namespace troplane
