#include "troplane/json_io.hpp"

#include "troplane/error.hpp"

namespace troplane {

namespace {

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

bool looks_like_json(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string_view::npos && text[first] == '{';
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw Error(Errc::InvalidInput, std::string("missing field \"") + name + "\"");
  return j.at(name);
}

LatticeVector lattice_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw Error(Errc::InvalidInput, "expected an integer pair, got " + j.dump());
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

Json to_json(const LatticeVector& v) { return Json::array({v.x, v.y}); }

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error(Errc::NotRational, "expected an exact rational string, got " + j.dump());
}

Json to_json(const RationalPoint& p) { return Json::array({to_json(p.x), to_json(p.y)}); }

RationalPoint point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(Errc::InvalidInput, "expected a point, got " + j.dump());
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

Json to_json(const TropicalCurve& c) {
  Json out;
  out["vertices"] = Json::array();
  for (const auto& v : c.vertices) out["vertices"].push_back(to_json(v));
  out["bounded_edges"] = Json::array();
  for (const auto& e : c.edges)
    out["bounded_edges"].push_back(
        {{"v", {e.v[0], e.v[1]}}, {"dir", to_json(e.dir)}, {"len", to_json(e.length)}, {"weight", e.weight}});
  out["rays"] = Json::array();
  for (const auto& r : c.rays) out["rays"].push_back({{"v", r.v}, {"dir", to_json(r.dir)}, {"weight", r.weight}});
  out["newton"] = Json::array();
  for (const auto& v : c.newton.vertices()) out["newton"].push_back(to_json(v));
  Json cells = Json::array();
  for (const auto& cell : c.dual.cells()) {
    Json poly = Json::array();
    for (const auto& v : cell.vertices()) poly.push_back(to_json(v));
    cells.push_back(poly);
  }
  out["dual"] = {{"cells", cells}};
  return out;
}

TropicalCurve curve_from_json(const Json& j) {
  std::vector<LatticePolygon> cells;
  for (const auto& cell : field(field(j, "dual"), "cells")) {
    std::vector<LatticeVector> pts;
    for (const auto& v : cell) pts.push_back(lattice_from_json(v));
    cells.push_back(LatticePolygon::hull(pts));
  }
  std::vector<RationalPoint> positions;
  for (const auto& v : field(j, "vertices")) positions.push_back(point_from_json(v));
  Subdivision dual(cells);
  if (positions.size() != dual.cells().size())
    throw Error(Errc::InvalidInput, "one vertex per dual cell is required");
  // Vertex i is dual to cell i in the listed order; the subdivision sorts its
  // cells, so positions follow the cells.
  std::vector<RationalPoint> ordered(positions.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto it = std::find(dual.cells().begin(), dual.cells().end(), cells[i]);
    ordered[it - dual.cells().begin()] = positions[i];
  }
  auto c = make_curve(dual, ordered);
  auto mismatch = [](const std::string& what) { throw Error(Errc::InvalidInput, what + " disagree with the dual cells"); };
  if (j.contains("bounded_edges")) {
    const auto& edges = j.at("bounded_edges");
    if (edges.size() != c.edges.size()) mismatch("bounded edges");
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (edges[k].contains("len") && rational_from_json(edges[k].at("len")) != c.edges[k].length) mismatch("edge lengths");
      if (edges[k].contains("dir") && lattice_from_json(edges[k].at("dir")) != c.edges[k].dir) mismatch("edge directions");
    }
  }
  if (j.contains("rays")) {
    const auto& rays = j.at("rays");
    if (rays.size() != c.rays.size()) mismatch("rays");
    for (std::size_t k = 0; k < rays.size(); ++k)
      if (rays[k].contains("dir") && lattice_from_json(rays[k].at("dir")) != c.rays[k].dir) mismatch("ray directions");
  }
  return c;
}

TropicalCurve read_curve(std::string_view text) {
  if (looks_like_json(text)) {
    auto doc = parse_document(text);
    if (doc.contains("vertices")) return curve_from_json(doc);
  }
  return curve_of(parse_polynomial(text));
}

Json to_json(const Divisor& d) {
  Json chips = Json::array();
  for (const auto& [p, m] : d.chips()) chips.push_back({{"pt", to_json(p)}, {"mult", m}});
  return {{"chips", chips}};
}

Divisor divisor_from_json(const Json& j) {
  Divisor d;
  for (const auto& chip : field(j, "chips")) {
    const auto& m = field(chip, "mult");
    if (!m.is_number_integer()) throw Error(Errc::InvalidInput, "chip multiplicity must be an integer");
    d.add(point_from_json(field(chip, "pt")), m.get<std::int64_t>());
  }
  return d;
}

Divisor read_divisor(std::string_view text) { return divisor_from_json(parse_document(text)); }

GenericPolynomial generic_from_json(const Json& j) {
  GenericPolynomial f;
  for (const auto& term : field(j, "terms")) {
    auto e = lattice_from_json(field(term, "exp"));
    auto& dst = f.terms[e];
    for (const auto& c : field(term, "coeff")) {
      ParameterTerm t;
      t.exponent = rational_from_json(field(c, "e"));
      const auto& value = field(c, "c");
      if (value.is_string()) {
        std::string s = value.get<std::string>();
        auto star = s.find('*');
        bool named = !s.empty() && (std::isalpha(static_cast<unsigned char>(s.back())) || s.back() == '_' ||
                                    star != std::string::npos);
        if (named) {
          std::string scale = star == std::string::npos ? "" : s.substr(0, star);
          std::string name = star == std::string::npos ? s : s.substr(star + 1);
          bool negative = false;
          if (scale.empty() && !name.empty() && name[0] == '-') negative = true, name = name.substr(1);
          t.coeff = scale.empty() ? Rational(1) : parse_rational(scale);
          if (negative) t.coeff = -t.coeff;
          t.symbol = name;
        } else {
          t.coeff = parse_rational(s);
        }
      } else {
        t.coeff = rational_from_json(value);
      }
      dst.push_back(t);
    }
  }
  return f;
}

GenericPolynomial read_generic(std::string_view text) {
  if (looks_like_json(text)) return generic_from_json(parse_document(text));
  return parse_generic(text);
}

Json to_json(const PuiseuxPolynomial& f) {
  Json terms = Json::array();
  for (const auto& [e, s] : f.terms) {
    Json coeff = Json::array();
    for (const auto& [x, c] : s.terms()) coeff.push_back({{"e", to_json(x)}, {"c", to_json(c)}});
    terms.push_back({{"exp", to_json(e)}, {"coeff", coeff}, {"order", to_json(s.order())}});
  }
  return {{"terms", terms}};
}

Json to_json(const DivisorCell& cell) {
  return {{"pinned", cell.pinned}, {"edges", cell.free},     {"dim", cell.dimension},
          {"exposed", cell.exposed}, {"maximal", cell.maximal}, {"internal", cell.internal}};
}

Json to_json(const RealizabilityVerdict& v) {
  Json out;
  out["status"] = verdict_name(v.status);
  if (v.witness) out["witness"] = to_json(*v.witness);
  out["subdivisions"] = v.subdivisions;
  out["matchings"] = v.matchings;
  out["covered"] = v.covered;
  Json certs = Json::array();
  for (const auto& s : v.certificate) {
    Json assignment = Json::array();
    for (const auto& p : s.assignment)
      assignment.push_back({{"chip", to_json(p.chip)},
                            {"segment", p.segment},
                            {"other_segment", p.other_segment},
                            {"multiplicity", p.multiplicity}});
    Json rows = Json::array();
    for (std::size_t i = 0; i < s.rows.rows.size(); ++i) {
      const auto& r = s.rows.rows[i];
      Json coeffs = Json::array();
      for (const auto& c : r.coeffs) coeffs.push_back(to_json(c));
      const char* rel = r.rel == Relation::Equal ? "=" : r.rel == Relation::Less ? "<" : "<=";
      rows.push_back({{"coeffs", coeffs}, {"rel", rel}, {"rhs", to_json(r.rhs)}, {"label", r.label},
                      {"multiplier", to_json(s.multipliers[i])}});
    }
    certs.push_back({{"subdivision", s.subdivision},
                     {"system", s.system},
                     {"assignment", assignment},
                     {"matchings", s.matchings},
                     {"rows", rows}});
  }
  out["certificate"] = certs;
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

Json to_json(const CounterexampleReport& r) {
  Json out;
  out["equivalent_to_self_intersection"] = r.equivalent;
  out["internal"] = r.internal;
  out["rst"] = to_json(r.rst);
  out["certificates_verified"] = r.rst.status == Verdict::NotInRst && verify_certificates(r.rst);
  if (r.exposed) out["exposed"] = to_json(*r.exposed);
  if (r.balancing) {
    Json b = Json::array();
    for (const auto& x : *r.balancing) b.push_back(to_json(x));
    out["balancing_defect"] = b;
  }
  out["certified"] = r.certified;
  out["note"] = r.note;
  return out;
}

Json to_json(const LocalDims& d) {
  Json basis = Json::array();
  for (const auto& v : d.kernel_basis) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(to_json(x));
    basis.push_back(row);
  }
  return {{"kernel", d.kernel}, {"image", d.image}, {"total_image", d.total_image}, {"kernel_basis", basis}};
}

Json to_json(const IntersectionValuations& v) {
  Json out;
  Json xs = Json::array(), ys = Json::array();
  for (const auto& x : v.x) xs.push_back(to_json(x));
  for (const auto& y : v.y) ys.push_back(to_json(y));
  out["x"] = xs;
  out["y"] = ys;
  out["trials"] = v.trials;
  if (v.divisor) out["divisor"] = to_json(*v.divisor);
  else out["unpaired"] = true;
  return out;
}

}  // namespace troplane
