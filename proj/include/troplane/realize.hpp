#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "troplane/divisor.hpp"
#include "troplane/lp.hpp"

namespace troplane {

// All curves with the dual subdivision of a smooth curve, parametrized by a
// translation and the bounded edge lengths.
struct CurveFamily {
  TropicalCurve origin;
  DualGraph graph;
  // Two rows per independent cycle: the signed edge directions summed
  // around it, over the bounded edges.
  std::vector<std::vector<Rational>> closure;
  int closure_rank = 0;

  int free_lengths() const { return static_cast<int>(graph.edges.size()) - closure_rank; }
};

// lengths are indexed like the bounded edges; base_vertex defaults to the
// vertex minimizing <v, shift> (vertex 0 when shift = 0). The base vertex is
// placed at its original position plus shift.
struct FamilyPoint {
  RationalPoint shift;
  std::vector<Rational> lengths;
  std::optional<int> base_vertex;
};

CurveFamily family_of(const TropicalCurve& c);
FamilyPoint point_of(const CurveFamily& f);  // shift = 0, original lengths
TropicalCurve member(const CurveFamily& f, const FamilyPoint& p);

// Unique vertex minimizing <v, shift>; throws Tie.
int lowest_vertex(const TropicalCurve& c, const RationalPoint& shift);

struct UnboundedRegion {
  LatticeVector monomial;  // Newton polygon vertex whose region it is
  LatticeVector first_ray;  // bounding rays of its recession cone,
  LatticeVector second_ray; // counterclockwise
};

// The unbounded region whose recession cone contains shift in its interior.
// Throws OnConeBoundary.
UnboundedRegion unbounded_region(const TropicalCurve& c, const RationalPoint& shift);

// Whether p lies in the open region of the complement of c belonging to the
// monomial.
bool in_region(const TropicalCurve& c, const LatticeVector& monomial, const RationalPoint& p);

// Vertices of other fixed by the propagation rules, seeded by its vertex
// minimizing <v, shift>. Throws NotProper.
std::vector<int> pinned_vertices(const TropicalCurve& c, const TropicalCurve& other,
                                 const RationalPoint& shift);

Divisor intersection_divisor(const TropicalCurve& c, const CurveFamily& f, const FamilyPoint& p);

struct LocalDims {
  int kernel = 0;       // with shift fixed
  int image = 0;        // with shift fixed
  int total_image = 0;  // shift directions included
  std::vector<std::vector<Rational>> kernel_basis;  // in length coordinates
};

// Rank and nullity of the local linear map from the length space (base vertex
// fixed) to chip coordinates. Throws NotLinearHere.
LocalDims local_dims(const TropicalCurve& c, const CurveFamily& f, const FamilyPoint& p);

// Integer basis of the length vectors that keep every cycle closed.
std::vector<std::vector<Rational>> length_space(const CurveFamily& f);

enum class Verdict { RealizableWitness, RealizableByTheorem, NotInRst, NotEquivalent, Unknown };
std::string verdict_name(Verdict v);

// Chip of the query divisor matched to a crossing of a segment of c with a
// segment of the candidate curve.
struct ChipPair {
  RationalPoint chip;
  int segment = 0;
  int other_segment = 0;
  std::int64_t multiplicity = 0;
};

struct InfeasibleStratum {
  int subdivision = 0;
  std::vector<ChipPair> assignment;
  std::string system;  // "chips" or "crossings"
  LinearSystem rows;
  std::vector<Rational> multipliers;
  std::uint64_t matchings = 0;  // complete matchings ruled out
};

struct RealizabilityVerdict {
  Verdict status = Verdict::Unknown;
  std::optional<TropicalCurve> witness;
  std::vector<InfeasibleStratum> certificate;
  int subdivisions = 0;
  std::uint64_t matchings = 0;  // total complete matchings over all subdivisions
  std::uint64_t covered = 0;    // matchings ruled out by certificates
  std::string note;
};

struct RstOptions {
  bool alt_subdivisions = false;
};

// Regular unimodular triangulations of the Newton polygon of c, starting with
// its own subdivision. Throws PolygonTooLarge above 12 lattice points.
std::vector<Subdivision> unimodular_triangulations(const TropicalCurve& c);

RealizabilityVerdict rst_membership(const TropicalCurve& c, const Divisor& d, RstOptions opts = {});

// Re-checks every certificate and the matching count of a NOT_IN_RST verdict.
bool verify_certificates(const RealizabilityVerdict& v);

RealizabilityVerdict realizable_internal(const TropicalCurve& c, const Divisor& d);

struct LocalCone {
  std::vector<std::vector<std::int64_t>> base;
  std::vector<std::pair<std::string, std::vector<std::int64_t>>> attached;
};

// Sum of the attached generators reduced modulo the span of the base ones.
std::vector<Rational> balancing_defect(const LocalCone& cone);

// Generators around an exposed cell: base = the free chips moving along their
// rays, attached = both pinned chips moving away from each other along the
// cycle, towards each other, and out along their rays at equal speed.
// Coordinates list pinned chips first, then free chips, in point order.
LocalCone equal_speed_cone(const TropicalCurve& c, const Divisor& exposed);

bool equivalent_to_self_intersection(const TropicalCurve& c, const Divisor& d);

struct CounterexampleReport {
  bool equivalent = false;
  bool internal = false;
  RealizabilityVerdict rst;
  std::optional<Divisor> exposed;  // neighbouring exposed divisor used for balancing
  std::optional<std::vector<Rational>> balancing;
  bool certified = false;  // all three components hold
  std::string note;
};

CounterexampleReport certify_counterexample(const TropicalCurve& c, const Divisor& d);

}  // namespace troplane
