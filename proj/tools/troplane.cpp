// Command-line front end. Results go to stdout as JSON; failures go to
// stderr as {"error", "detail"}.
//
// Exit codes: 0 success, 2 invalid input, 3 negative verdict, 4 internal
// limit (polygon too large, truncation too low, genericity failure).

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "troplane/error.hpp"
#include "troplane/json_io.hpp"
#include "troplane/render.hpp"

using namespace troplane;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 2;
constexpr int kNegative = 3;
constexpr int kLimit = 4;

// A file path, "-" for stdin, or the literal text itself.
std::string slurp(const std::string& arg) {
  std::ostringstream buf;
  if (arg == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    buf << in.rdbuf();
    return buf.str();
  }
  return arg;
}

std::vector<Rational> rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

RationalPoint rational_pair(const std::string& text) {
  auto v = rational_list(text);
  if (v.size() != 2) throw Error(Errc::InvalidInput, "expected \"x,y\", got \"" + text + "\"");
  return {v[0], v[1]};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidInput, "cannot write " + path);
  out << content;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int fail(std::string_view code, const std::string& detail, int status) {
  std::cerr << Json{{"error", code}, {"detail", detail}}.dump() << "\n";
  return status;
}

int status_of(Errc code) {
  switch (code) {
    case Errc::PolygonTooLarge:
    case Errc::OrderTooLow:
    case Errc::GenericityFailure: return kLimit;
    default: return kInvalid;
  }
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("TROPLANE_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw Error(Errc::InvalidInput, std::string("TROPLANE_SEED is not an integer: ") + s);
    }
  }
  return ValuationOptions{}.seed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical plane curves, divisors and realizability"};
  app.require_subcommand(1);
  int status = kOk;

  std::string curve_in, other_in, divisor_in, second_in, svg_out;

  auto* curve_cmd = app.add_subcommand("curve", "Curve of a tropical polynomial");
  curve_cmd->add_option("-p,--poly,-i,--input", curve_in, "polynomial or curve (file or text)")->required();
  curve_cmd->add_option("--svg", svg_out, "also write an SVG figure");
  curve_cmd->callback([&] {
    auto c = read_curve(slurp(curve_in));
    auto j = to_json(c);
    j["genus"] = genus(c);
    j["smooth"] = is_smooth(c);
    emit(j);
    if (!svg_out.empty()) write_file(svg_out, render_svg({c}, std::nullopt));
  });

  auto* inter_cmd = app.add_subcommand("intersect", "Stable intersection of two curves");
  inter_cmd->add_option("-a,--first", curve_in, "first curve")->required();
  inter_cmd->add_option("-b,--second", other_in, "second curve")->required();
  inter_cmd->add_option("--svg", svg_out, "also write an SVG figure");
  inter_cmd->callback([&] {
    auto a = read_curve(slurp(curve_in));
    auto b = read_curve(slurp(other_in));
    auto d = stable_intersection(a, b);
    auto j = to_json(d);
    j["degree"] = d.degree();
    emit(j);
    if (!svg_out.empty()) write_file(svg_out, render_svg({a, b}, d));
  });

  auto* self_cmd = app.add_subcommand("self-intersect", "Stable self-intersection divisor");
  self_cmd->add_option("-i,--input,-c,--curve", curve_in, "curve")->required();
  self_cmd->callback([&] {
    auto d = self_intersection(read_curve(slurp(curve_in)));
    auto j = to_json(d);
    j["degree"] = d.degree();
    emit(j);
  });

  auto* equiv_cmd = app.add_subcommand("equiv", "Linear equivalence of two divisors");
  equiv_cmd->add_option("-c,--curve", curve_in, "curve")->required();
  equiv_cmd->add_option("--d1", divisor_in, "first divisor")->required();
  equiv_cmd->add_option("--d2", second_in, "second divisor")->required();
  equiv_cmd->callback([&] {
    auto c = read_curve(slurp(curve_in));
    bool eq = linearly_equivalent(c, read_divisor(slurp(divisor_in)), read_divisor(slurp(second_in)));
    emit({{"equivalent", eq}});
    if (!eq) status = kNegative;
  });

  auto* classify_cmd = app.add_subcommand("classify", "Internal/exposed classification of a divisor");
  classify_cmd->add_option("-c,--curve", curve_in, "curve")->required();
  classify_cmd->add_option("-d,--divisor", divisor_in, "divisor")->required();
  classify_cmd->callback([&] {
    auto c = read_curve(slurp(curve_in));
    auto d = read_divisor(slurp(divisor_in));
    Json j;
    j["internal"] = is_internal(c, d);
    if (genus(c) == 1) j["cell"] = to_json(cell_of(c, d));
    emit(j);
    if (!j["internal"].get<bool>()) status = kNegative;
  });

  bool alt = false, certify = false, decide = false;
  auto* realize_cmd = app.add_subcommand("realize", "Realizability by intersecting with a deformed copy");
  realize_cmd->add_option("-c,--curve", curve_in, "curve")->required();
  realize_cmd->add_option("-d,--divisor", divisor_in, "divisor")->required();
  realize_cmd->add_flag("--alt-subdivisions", alt, "also try other unimodular triangulations");
  realize_cmd->add_flag("--certify", certify, "full counterexample report");
  realize_cmd->add_flag("--decide", decide, "decision procedure (internal divisors are realizable)");
  realize_cmd->add_option("--svg", svg_out, "also write an SVG figure");
  realize_cmd->callback([&] {
    auto c = read_curve(slurp(curve_in));
    auto d = read_divisor(slurp(divisor_in));
    RealizabilityVerdict v;
    if (certify) {
      auto report = certify_counterexample(c, d);
      emit(to_json(report));
      v = report.rst;
      if (!report.equivalent) v.status = Verdict::NotEquivalent;
    } else {
      v = decide ? realizable_internal(c, d) : rst_membership(c, d, {.alt_subdivisions = alt});
      auto j = to_json(v);
      if (v.status == Verdict::NotInRst) j["certificates_verified"] = verify_certificates(v);
      emit(j);
    }
    if (v.status == Verdict::NotInRst || v.status == Verdict::NotEquivalent) status = kNegative;
    if (!svg_out.empty()) {
      std::vector<TropicalCurve> scene{c};
      if (v.witness) scene.push_back(*v.witness);
      write_file(svg_out, render_svg(scene, d));
    }
  });

  std::string eta = "0,0", lengths, family_in;
  bool dims = false;
  auto* psi_cmd = app.add_subcommand("psi", "Intersection divisor with a member of a curve family");
  psi_cmd->add_option("-c,--curve", curve_in, "fixed curve")->required();
  psi_cmd->add_option("--family", family_in, "curve whose family is deformed (default: the fixed curve)");
  psi_cmd->add_option("--eta", eta, "translation \"x,y\"");
  psi_cmd->add_option("--lengths", lengths, "bounded edge lengths in edge order, comma separated");
  psi_cmd->add_flag("--dims", dims, "local kernel and image dimensions");
  psi_cmd->callback([&] {
    auto c = read_curve(slurp(curve_in));
    auto family = family_of(family_in.empty() ? c : read_curve(slurp(family_in)));
    auto p = point_of(family);
    p.shift = rational_pair(eta);
    if (!lengths.empty()) p.lengths = rational_list(lengths);
    if (p.lengths.size() != family.graph.edges.size())
      throw Error(Errc::InvalidInput, "expected " + std::to_string(family.graph.edges.size()) + " lengths");
    Json j;
    j["member"] = to_json(member(family, p));
    j["divisor"] = to_json(intersection_divisor(c, family, p));
    if (dims) j["dims"] = to_json(local_dims(c, family, p));
    emit(j);
  });

  auto* val_cmd = app.add_subcommand("valuation", "Puiseux-series computations");
  val_cmd->require_subcommand(1);
  std::string f_in, g_in;
  int trials = 3, r = 1;
  std::string trunc = "8";
  std::optional<std::uint64_t> seed;
  auto* val_inter = val_cmd->add_subcommand("intersect", "Valuations of the intersection points of V(f), V(g)");
  val_inter->add_option("-f", f_in, "first polynomial")->required();
  val_inter->add_option("-g", g_in, "second polynomial")->required();
  val_inter->add_option("--trials", trials, "independent generic samples")->check(CLI::PositiveNumber);
  val_inter->add_option("--trunc", trunc, "truncation order");
  val_inter->add_option("--seed", seed, "sampling seed (default TROPLANE_SEED)");
  val_inter->callback([&] {
    ValuationOptions opts;
    opts.trials = trials;
    opts.order = parse_rational(trunc);
    opts.seed = seed ? *seed : default_seed();
    emit(to_json(tropicalize_intersection(read_generic(slurp(f_in)), read_generic(slurp(g_in)), opts)));
  });
  auto* val_perturb = val_cmd->add_subcommand("perturb", "Compare trop(f1 + t^r f2) with trop(f1)");
  val_perturb->add_option("-f", f_in, "f1")->required();
  val_perturb->add_option("-g", g_in, "f2")->required();
  val_perturb->add_option("-r", r, "power of t");
  val_perturb->add_option("--trunc", trunc, "truncation order");
  val_perturb->callback([&] {
    auto order = parse_rational(trunc);
    auto f1 = read_generic(slurp(f_in));
    auto f2 = read_generic(slurp(g_in));
    if (!f1.symbols().empty() || !f2.symbols().empty())
      throw Error(Errc::InvalidInput, "perturb takes polynomials without parameters");
    auto report = perturb_by_multiple(instantiate(f1, {}, order), instantiate(f2, {}, order), r);
    emit({{"h", to_json(report.h)},
          {"same_tropicalization", report.same_tropicalization},
          {"minimal_r", report.minimal_r}});
  });

  std::vector<std::string> curves_in;
  std::string viewport, out_path;
  bool labels = false;
  auto* render_cmd = app.add_subcommand("render", "SVG figure of curves and a divisor");
  render_cmd->add_option("-c,--curve", curves_in, "curve (repeatable)");
  render_cmd->add_option("-d,--divisor", divisor_in, "divisor");
  render_cmd->add_option("--viewport", viewport, "\"xmin,ymin,xmax,ymax\"");
  render_cmd->add_flag("--labels", labels, "label vertex coordinates");
  render_cmd->add_option("-o,--output", out_path, "output file (default stdout)");
  render_cmd->callback([&] {
    std::vector<TropicalCurve> curves;
    for (const auto& s : curves_in) curves.push_back(read_curve(slurp(s)));
    std::optional<Divisor> d;
    if (!divisor_in.empty()) d = read_divisor(slurp(divisor_in));
    RenderSpec spec;
    spec.vertex_labels = labels;
    if (!viewport.empty()) {
      auto v = rational_list(viewport);
      if (v.size() != 4) throw Error(Errc::InvalidInput, "viewport needs four numbers");
      spec.viewport = Viewport{v[0], v[1], v[2], v[3]};
    }
    auto svg = render_svg(curves, d, spec);
    if (out_path.empty()) std::cout << svg;
    else write_file(out_path, svg);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << app.help();
    return fail("USAGE", e.what(), kInvalid);
  } catch (const Error& e) {
    return fail(errc_name(e.code()), e.detail(), status_of(e.code()));
  } catch (const nlohmann::json::exception& e) {
    return fail("INVALID_INPUT", e.what(), kInvalid);
  } catch (const std::exception& e) {
    return fail("INVALID_INPUT", e.what(), kInvalid);
  }
  return status;
}
