#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hda/carrier.hpp"
#include "hda/cubeset.hpp"
#include "hda/rational.hpp"

namespace hda {

struct Breakpoint {
  Rational t;
  Coords x;

  bool operator==(const Breakpoint&) const = default;
};

// A linear interpolation of breakpoints inside one cube.
struct Segment {
  CubeIndex cube = 0;
  std::vector<Breakpoint> points;

  bool operator==(const Segment&) const = default;
};

// A piecewise-linear directed path given by an explicit presentation.
// Segment time ranges abut; the domain is [front time, back time].
struct PLPath {
  std::vector<Segment> segments;

  const Rational& t_begin() const { return segments.front().points.front().t; }
  const Rational& t_end() const { return segments.back().points.back().t; }

  bool operator==(const PLPath&) const = default;
};

// Throws DomainError describing the first defect: empty path, a segment with
// fewer than two breakpoints, wrong coordinate counts or values, times not
// strictly increasing, decreasing coordinates, or a junction whose end
// points differ ("junction k" names the boundary after segment k, 0-based).
void validate_path(const CubeSet& x, const PLPath& p);

Point start_point(const CubeSet& x, const PLPath& p);
Point end_point(const CubeSet& x, const PLPath& p);

// The constant path at a point on [t0, t1].
PLPath constant_path(const Point& p, const Rational& t0 = 0, const Rational& t1 = 1);

// A single linear segment from a to b in cube c over [t0, t1].
PLPath linear_path(CubeIndex c, Coords a, Coords b, const Rational& t0 = 0, const Rational& t1 = 1);

Point evaluate(const CubeSet& x, const PLPath& p, const Rational& t);

// Every breakpoint time, sorted and without duplicates.
std::vector<Rational> breakpoint_times(const PLPath& p);

// A breakpoint interval restricted to the face that carries its interior:
// coordinates staying at 0 or 1 are dropped.
struct LinearPiece {
  CubeIndex carrier = 0;
  Coords a;
  Coords b;
  Rational t0;
  Rational t1;
};

std::vector<LinearPiece> linear_pieces(const CubeSet& x, const PLPath& p);

// Times at which some coordinate equals 1/2, sorted and without duplicates.
std::vector<Rational> half_crossing_times(const PLPath& p);

// Breakpoint times together with the half crossings.
std::vector<Rational> event_times(const PLPath& p);

// Pointwise equality on the union of breakpoint times and the midpoints
// between them. Domains must agree.
bool same_trace(const CubeSet& x, const PLPath& p, const PLPath& q);

bool is_strict(const CubeSet& x, const PLPath& p);

struct TameWitness {
  bool tame = false;
  // Times at which the path sits on a vertex and may be cut; includes both
  // end points when tame.
  std::vector<Rational> vertex_times;
  // One carrier cube per piece between consecutive vertex times.
  std::vector<CubeIndex> cubes;
};

TameWitness tame_witness(const CubeSet& x, const PLPath& p);
inline bool is_tame(const CubeSet& x, const PLPath& p) { return tame_witness(x, p).tame; }

// Membership in T_c: a presentation through exactly the cubes c_1..c_n,
// each traversed from its bottom to its top vertex.
bool is_in_chain(const CubeSet& x, const PLPath& p, const std::vector<CubeIndex>& cubes);

// q is shifted in time so that it starts where p ends.
PLPath concatenate(const CubeSet& x, const PLPath& p, const PLPath& q);

// A piecewise-linear, non-decreasing surjection phi from [s0, s1] onto the
// domain of a path; knots have strictly increasing s.
struct PLMap {
  std::vector<std::pair<Rational, Rational>> knots;
};

// s -> p(phi(s)).
PLPath reparametrize(const CubeSet& x, const PLPath& p, const PLMap& phi);

enum class FlowKind { Paper, Rational };

// x + t x (1 - x), exact. Defined for t in [0,1].
Rational rational_flow(const Rational& t, const Rational& x);
// x e^t / (1 - x + x e^t).
double paper_flow(double t, double x);
Rational apply_flow(FlowKind kind, const Rational& t, const Rational& x);

constexpr int kDefaultSamples = 16;

// Applies the flow at the normalized time of the path to every coordinate,
// sampled at samples + 1 equally spaced times per segment together with all
// breakpoints.
PLPath strictify(const CubeSet& x, const PLPath& p, FlowKind flow = FlowKind::Rational,
                 int samples = kDefaultSamples);

// Same samples, flow time scaled by s in [0,1].
PLPath strictify_homotopy(const CubeSet& x, const PLPath& p, const Rational& s,
                          FlowKind flow = FlowKind::Rational, int samples = kDefaultSamples);

Rational l1_length(const CubeSet& x, const PLPath& p);

// Retimes by cumulative l1 arc length from 0, dropping pauses. With
// normalize the domain becomes [0,1], otherwise [0, length].
PLPath naturalize(const CubeSet& x, const PLPath& p, bool normalize = true);

// Unit l1 speed from time 0 on every breakpoint interval.
bool is_natural(const CubeSet& x, const PLPath& p);

struct KinkSequence {
  std::vector<Point> points;

  bool operator==(const KinkSequence&) const = default;
};

// Empty when every consecutive pair shares a cube with x_i <= x_{i+1} and
// l1 distance exactly 1; otherwise a description of the first bad step.
std::optional<std::string> check_kinks(const CubeSet& x, const KinkSequence& s);

// Samples a natural tame path with integral length at integral times.
KinkSequence path_to_kinks(const CubeSet& x, const PLPath& p);

// Joins consecutive kink points by unit segments in their minimal common
// cube. Refuses sets that are not proper and non-self-linked.
PLPath kinks_to_path(const CubeSet& x, const KinkSequence& s);

// kinks_to_path(path_to_kinks(naturalize(p, false))).
PLPath linearize(const CubeSet& x, const PLPath& p);

}  // namespace hda
