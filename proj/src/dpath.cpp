#include "hda/dpath.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hda/error.hpp"

namespace hda {

namespace {

std::string seg_label(std::size_t k) { return "segment " + std::to_string(k); }

Coords interpolate(const Breakpoint& a, const Breakpoint& b, const Rational& t) {
  return lerp(a.x, b.x, (t - a.t) / (b.t - a.t));
}

// Coordinates of segment s at time t, t inside its range.
Coords segment_at(const Segment& s, const Rational& t) {
  const auto& pts = s.points;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    if (t <= pts[k + 1].t) {
      if (t == pts[k + 1].t) return pts[k + 1].x;
      return interpolate(pts[k], pts[k + 1], t);
    }
  }
  return pts.back().x;
}

bool ends_on_vertex(const CubeSet& x, const CubeIndex c, const Coords& y) {
  return x.dim(canonicalize(x, Point{c, y}).cube) == 0;
}

// Follows a run of pieces inside cube c, tracking every representative of
// the current end point. True when some lift survives the whole run.
bool lifts_into(const CubeSet& x, const std::vector<LinearPiece>& run, CubeIndex c, const Point& start) {
  std::vector<Coords> states = representatives(x, start, c);
  for (const auto& piece : run) {
    std::vector<Coords> next;
    for (const auto& g : face_embeddings(x, piece.carrier, c)) {
      const Coords ya = embed(g, piece.a);
      if (std::find(states.begin(), states.end(), ya) != states.end()) next.push_back(embed(g, piece.b));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.empty()) return false;
    states = std::move(next);
  }
  return true;
}

Rational phi_at(const PLMap& phi, const Rational& s) {
  const auto& k = phi.knots;
  for (std::size_t i = 0; i + 1 < k.size(); ++i) {
    if (s <= k[i + 1].first) {
      return k[i].second + (s - k[i].first) * (k[i + 1].second - k[i].second) / (k[i + 1].first - k[i].first);
    }
  }
  return k.back().second;
}

// Smallest (or largest) s with phi(s) = tau.
Rational preimage(const PLMap& phi, const Rational& tau, bool largest) {
  const auto& k = phi.knots;
  auto solve = [&](std::size_t i) -> Rational {
    const auto& [s0, t0] = k[i];
    const auto& [s1, t1] = k[i + 1];
    if (t0 == t1) return largest ? s1 : s0;
    return s0 + (tau - t0) * (s1 - s0) / (t1 - t0);
  };
  if (largest) {
    for (std::size_t i = k.size() - 1; i-- > 0;) {
      if (k[i].second <= tau && tau <= k[i + 1].second) return solve(i);
    }
  } else {
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      if (k[i].second <= tau && tau <= k[i + 1].second) return solve(i);
    }
  }
  throw DomainError("time " + to_string(tau) + " is not in the image of the reparametrization");
}

}  // namespace

void validate_path(const CubeSet& x, const PLPath& p) {
  if (p.segments.empty()) throw DomainError("path has no segments");
  for (std::size_t k = 0; k < p.segments.size(); ++k) {
    const auto& seg = p.segments[k];
    if (seg.cube >= x.size()) throw DomainError(seg_label(k) + ": unknown cube");
    const auto n = static_cast<std::size_t>(x.dim(seg.cube));
    if (seg.points.size() < 2) throw DomainError(seg_label(k) + ": needs at least two breakpoints");
    for (std::size_t j = 0; j < seg.points.size(); ++j) {
      const auto& bp = seg.points[j];
      if (bp.x.size() != n) {
        throw DomainError(seg_label(k) + ", breakpoint " + std::to_string(j) + ": expected " +
                          std::to_string(n) + " coordinates in '" + x.id(seg.cube) + "'");
      }
      for (const auto& v : bp.x) {
        if (v < 0 || v > 1) {
          throw DomainError(seg_label(k) + ", breakpoint " + std::to_string(j) + ": coordinate " +
                            to_string(v) + " outside [0,1]");
        }
      }
      if (j == 0) continue;
      const auto& prev = seg.points[j - 1];
      if (!(prev.t < bp.t)) {
        throw DomainError(seg_label(k) + ", breakpoint " + std::to_string(j) + ": time " + to_string(bp.t) +
                          " does not increase");
      }
      if (!leq(prev.x, bp.x)) {
        throw DomainError(seg_label(k) + ", breakpoint " + std::to_string(j) + ": coordinates decrease");
      }
    }
  }
  for (std::size_t k = 0; k + 1 < p.segments.size(); ++k) {
    const auto& end = p.segments[k].points.back();
    const auto& begin = p.segments[k + 1].points.front();
    if (end.t != begin.t) {
      throw DomainError("junction " + std::to_string(k) + ": segment ends at t=" + to_string(end.t) +
                        " but the next starts at t=" + to_string(begin.t));
    }
    const Point a = canonicalize(x, Point{p.segments[k].cube, end.x});
    const Point b = canonicalize(x, Point{p.segments[k + 1].cube, begin.x});
    if (a != b) {
      throw DomainError("junction " + std::to_string(k) + ": end point in '" + x.id(a.cube) +
                        "' differs from start point in '" + x.id(b.cube) + "'");
    }
  }
}

Point start_point(const CubeSet& x, const PLPath& p) {
  const auto& s = p.segments.front();
  return canonicalize(x, Point{s.cube, s.points.front().x});
}

Point end_point(const CubeSet& x, const PLPath& p) {
  const auto& s = p.segments.back();
  return canonicalize(x, Point{s.cube, s.points.back().x});
}

PLPath constant_path(const Point& p, const Rational& t0, const Rational& t1) {
  return PLPath{{Segment{p.cube, {{t0, p.coords}, {t1, p.coords}}}}};
}

PLPath linear_path(CubeIndex c, Coords a, Coords b, const Rational& t0, const Rational& t1) {
  return PLPath{{Segment{c, {{t0, std::move(a)}, {t1, std::move(b)}}}}};
}

Point evaluate(const CubeSet& x, const PLPath& p, const Rational& t) {
  if (t < p.t_begin() || t > p.t_end()) {
    throw DomainError("time " + to_string(t) + " outside the path domain [" + to_string(p.t_begin()) + ", " +
                      to_string(p.t_end()) + "]");
  }
  for (const auto& seg : p.segments) {
    if (t <= seg.points.back().t) return canonicalize(x, Point{seg.cube, segment_at(seg, t)});
  }
  const auto& last = p.segments.back();
  return canonicalize(x, Point{last.cube, last.points.back().x});
}

std::vector<Rational> breakpoint_times(const PLPath& p) {
  std::vector<Rational> out;
  for (const auto& seg : p.segments) {
    for (const auto& bp : seg.points) out.push_back(bp.t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool same_trace(const CubeSet& x, const PLPath& p, const PLPath& q) {
  if (p.t_begin() != q.t_begin() || p.t_end() != q.t_end()) return false;
  auto times = breakpoint_times(p);
  auto tq = breakpoint_times(q);
  times.insert(times.end(), tq.begin(), tq.end());
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (evaluate(x, p, times[i]) != evaluate(x, q, times[i])) return false;
    if (i + 1 < times.size()) {
      const Rational mid = (times[i] + times[i + 1]) / 2;
      if (evaluate(x, p, mid) != evaluate(x, q, mid)) return false;
    }
  }
  return true;
}

std::vector<LinearPiece> linear_pieces(const CubeSet& x, const PLPath& p) {
  std::vector<LinearPiece> out;
  for (const auto& seg : p.segments) {
    for (std::size_t k = 0; k + 1 < seg.points.size(); ++k) {
      const auto& pa = seg.points[k];
      const auto& pb = seg.points[k + 1];
      FacePartition fp = FacePartition::identity(x.dim(seg.cube));
      LinearPiece piece{0, {}, {}, pa.t, pb.t};
      for (std::size_t i = 0; i < pa.x.size(); ++i) {
        if (pa.x[i] == pb.x[i] && is_zero_or_one(pa.x[i])) {
          fp.slots[i] = pa.x[i] == 0 ? Slot::Zero : Slot::One;
        } else {
          piece.a.push_back(pa.x[i]);
          piece.b.push_back(pb.x[i]);
        }
      }
      piece.carrier = face(x, seg.cube, fp);
      out.push_back(std::move(piece));
    }
  }
  return out;
}

std::vector<Rational> half_crossing_times(const PLPath& p) {
  std::vector<Rational> out;
  for (const auto& seg : p.segments) {
    for (std::size_t k = 0; k + 1 < seg.points.size(); ++k) {
      const auto& a = seg.points[k];
      const auto& b = seg.points[k + 1];
      for (std::size_t i = 0; i < a.x.size(); ++i) {
        if (a.x[i] == b.x[i]) {
          if (a.x[i] == half()) {
            out.push_back(a.t);
            out.push_back(b.t);
          }
        } else if (a.x[i] <= half() && half() <= b.x[i]) {
          out.push_back(a.t + (half() - a.x[i]) / (b.x[i] - a.x[i]) * (b.t - a.t));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Rational> event_times(const PLPath& p) {
  auto out = breakpoint_times(p);
  auto half_times = half_crossing_times(p);
  out.insert(out.end(), half_times.begin(), half_times.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_strict(const CubeSet& x, const PLPath& p) {
  (void)x;
  for (const auto& seg : p.segments) {
    for (std::size_t k = 0; k + 1 < seg.points.size(); ++k) {
      const auto& a = seg.points[k].x;
      const auto& b = seg.points[k + 1].x;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) continue;
        if (a[i] == b[i] && is_zero_or_one(a[i])) continue;
        return false;
      }
    }
  }
  return true;
}

TameWitness tame_witness(const CubeSet& x, const PLPath& p) {
  TameWitness w;
  const Point start = start_point(x, p);
  if (x.dim(start.cube) != 0 || x.dim(end_point(x, p).cube) != 0) return w;

  const auto pieces = linear_pieces(x, p);
  w.vertex_times.push_back(p.t_begin());
  Point run_start = start;
  std::vector<LinearPiece> run;

  auto close_run = [&](const LinearPiece& last) -> bool {
    std::set<CubeIndex> needed;
    for (const auto& pc : run) needed.insert(pc.carrier);
    std::vector<CubeIndex> order(x.size());
    for (CubeIndex c = 0; c < x.size(); ++c) order[c] = c;
    std::stable_sort(order.begin(), order.end(), [&](CubeIndex a, CubeIndex b) { return x.dim(a) < x.dim(b); });
    for (CubeIndex c : order) {
      bool contains = true;
      for (CubeIndex e : needed) contains = contains && x.is_face_of(e, c);
      if (!contains || !lifts_into(x, run, c, run_start)) continue;
      w.cubes.push_back(c);
      w.vertex_times.push_back(last.t1);
      run_start = canonicalize(x, Point{last.carrier, last.b});
      run.clear();
      return true;
    }
    return false;
  };

  for (const auto& piece : pieces) {
    if (x.dim(piece.carrier) == 0) {
      w.cubes.push_back(piece.carrier);
      w.vertex_times.push_back(piece.t1);
      continue;
    }
    run.push_back(piece);
    if (ends_on_vertex(x, piece.carrier, piece.b) && !close_run(piece)) {
      w.vertex_times.clear();
      w.cubes.clear();
      return w;
    }
  }
  if (!run.empty()) {
    w.vertex_times.clear();
    w.cubes.clear();
    return w;
  }
  w.tame = true;
  return w;
}

bool is_in_chain(const CubeSet& x, const PLPath& p, const std::vector<CubeIndex>& cubes) {
  const Point start = start_point(x, p);
  const auto pieces = linear_pieces(x, p);
  if (cubes.empty()) {
    if (x.dim(start.cube) != 0) return false;
    for (const auto& pc : pieces) {
      if (pc.carrier != start.cube) return false;
    }
    return true;
  }
  if (start != vertex_point(x.source_vertex(cubes.front()))) return false;

  using State = std::pair<std::size_t, Coords>;
  auto ones = [&](std::size_t i) { return Coords(static_cast<std::size_t>(x.dim(cubes[i])), Rational(1)); };
  auto zeros = [&](std::size_t i) { return Coords(static_cast<std::size_t>(x.dim(cubes[i])), Rational(0)); };
  auto close = [&](std::set<State>& states) {
    std::vector<State> extra;
    for (const auto& [i, y] : states) {
      if (i + 1 < cubes.size() && y == ones(i)) extra.emplace_back(i + 1, zeros(i + 1));
    }
    states.insert(extra.begin(), extra.end());
  };

  std::set<State> states{{0, zeros(0)}};
  for (const auto& pc : pieces) {
    close(states);
    std::set<State> next;
    for (const auto& [i, y] : states) {
      for (const auto& g : face_embeddings(x, pc.carrier, cubes[i])) {
        if (embed(g, pc.a) == y) next.emplace(i, embed(g, pc.b));
      }
    }
    if (next.empty()) return false;
    states = std::move(next);
  }
  close(states);
  return states.count({cubes.size() - 1, ones(cubes.size() - 1)}) > 0;
}

PLPath concatenate(const CubeSet& x, const PLPath& p, const PLPath& q) {
  if (end_point(x, p) != start_point(x, q)) throw DomainError("concatenation: end point differs from start point");
  PLPath out = p;
  const Rational shift = p.t_end() - q.t_begin();
  for (auto seg : q.segments) {
    for (auto& bp : seg.points) bp.t += shift;
    out.segments.push_back(std::move(seg));
  }
  return out;
}

PLPath reparametrize(const CubeSet& x, const PLPath& p, const PLMap& phi) {
  (void)x;
  const auto& k = phi.knots;
  if (k.size() < 2) throw DomainError("reparametrization needs at least two knots");
  for (std::size_t i = 0; i + 1 < k.size(); ++i) {
    if (!(k[i].first < k[i + 1].first)) throw DomainError("reparametrization knots must have increasing s");
    if (k[i].second > k[i + 1].second) throw DomainError("reparametrization must be non-decreasing");
  }
  if (k.front().second != p.t_begin() || k.back().second != p.t_end()) {
    throw DomainError("reparametrization must map onto the path domain");
  }

  PLPath out;
  Rational lo = k.front().first;
  for (std::size_t si = 0; si < p.segments.size(); ++si) {
    const auto& seg = p.segments[si];
    const bool last = si + 1 == p.segments.size();
    const Rational hi = last ? k.back().first : preimage(phi, seg.points.back().t, true);
    std::vector<Rational> ss{lo, hi};
    for (const auto& [s, t] : k) {
      if (lo < s && s < hi) ss.push_back(s);
    }
    for (std::size_t j = 1; j + 1 < seg.points.size(); ++j) {
      ss.push_back(preimage(phi, seg.points[j].t, false));
      ss.push_back(preimage(phi, seg.points[j].t, true));
    }
    std::sort(ss.begin(), ss.end());
    ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
    Segment ns{seg.cube, {}};
    for (const auto& s : ss) ns.points.push_back({s, segment_at(seg, phi_at(phi, s))});
    out.segments.push_back(std::move(ns));
    lo = hi;
  }
  return out;
}

Rational rational_flow(const Rational& t, const Rational& x) { return x + t * x * (1 - x); }

double paper_flow(double t, double x) {
  const double e = std::exp(t);
  return x * e / (1.0 - x + x * e);
}

Rational apply_flow(FlowKind kind, const Rational& t, const Rational& x) {
  if (kind == FlowKind::Rational) return rational_flow(t, x);
  if (is_zero_or_one(x)) return x;
  return Rational(paper_flow(t.get_d(), x.get_d()));
}

PLPath strictify_homotopy(const CubeSet& x, const PLPath& p, const Rational& s, FlowKind flow, int samples) {
  (void)x;
  if (samples <= 0) throw DomainError("samples must be positive");
  if (s < 0 || s > 1) throw DomainError("homotopy parameter outside [0,1]");
  const Rational t0 = p.t_begin();
  const Rational span = p.t_end() - t0;
  PLPath out;
  for (const auto& seg : p.segments) {
    const Rational a = seg.points.front().t;
    const Rational b = seg.points.back().t;
    std::vector<Rational> times;
    for (int k = 0; k <= samples; ++k) times.push_back(a + (b - a) * ratio(k, samples));
    for (const auto& bp : seg.points) times.push_back(bp.t);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    Segment ns{seg.cube, {}};
    for (const auto& t : times) {
      const Rational tau = s * (t - t0) / span;
      Coords y = segment_at(seg, t);
      for (auto& v : y) v = apply_flow(flow, tau, v);
      ns.points.push_back({t, std::move(y)});
    }
    out.segments.push_back(std::move(ns));
  }
  return out;
}

PLPath strictify(const CubeSet& x, const PLPath& p, FlowKind flow, int samples) {
  return strictify_homotopy(x, p, Rational(1), flow, samples);
}

Rational l1_length(const CubeSet& x, const PLPath& p) {
  (void)x;
  Rational total = 0;
  for (const auto& seg : p.segments) {
    for (std::size_t k = 0; k + 1 < seg.points.size(); ++k) total += l1_distance(seg.points[k].x, seg.points[k + 1].x);
  }
  return total;
}

PLPath naturalize(const CubeSet& x, const PLPath& p, bool normalize) {
  const Rational total = l1_length(x, p);
  if (total == 0) throw DomainError("cannot naturalize a path of length zero");
  PLPath out;
  Rational run = 0;
  for (const auto& seg : p.segments) {
    Segment ns{seg.cube, {{run, seg.points.front().x}}};
    for (std::size_t k = 1; k < seg.points.size(); ++k) {
      const Rational step = l1_distance(seg.points[k - 1].x, seg.points[k].x);
      if (step == 0) continue;
      run += step;
      ns.points.push_back({run, seg.points[k].x});
    }
    if (ns.points.size() >= 2) out.segments.push_back(std::move(ns));
  }
  if (normalize) {
    for (auto& seg : out.segments) {
      for (auto& bp : seg.points) bp.t /= total;
    }
  }
  return out;
}

bool is_natural(const CubeSet& x, const PLPath& p) {
  (void)x;
  if (p.t_begin() != 0) return false;
  for (const auto& seg : p.segments) {
    for (std::size_t k = 0; k + 1 < seg.points.size(); ++k) {
      const auto& a = seg.points[k];
      const auto& b = seg.points[k + 1];
      if (l1_distance(a.x, b.x) != b.t - a.t) return false;
    }
  }
  return true;
}

namespace {

struct Step {
  CubeIndex cube;
  Coords from;
  Coords to;
};

// The lowest-dimensional common cube with ordered representatives at unit
// l1 distance.
std::optional<Step> unit_step(const CubeSet& x, const Point& p, const Point& q) {
  for (CubeIndex c : common_cubes(x, p, q)) {
    for (const auto& a : representatives(x, p, c)) {
      for (const auto& b : representatives(x, q, c)) {
        if (leq(a, b) && l1_distance(a, b) == 1) return Step{c, a, b};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> check_kinks(const CubeSet& x, const KinkSequence& s) {
  if (s.points.empty()) return "kink sequence is empty";
  std::vector<Point> pts;
  for (const auto& pt : s.points) pts.push_back(canonicalize(x, pt));
  if (x.dim(pts.front().cube) != 0) return "first kink point is not a vertex";
  if (x.dim(pts.back().cube) != 0) return "last kink point is not a vertex";
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!unit_step(x, pts[i], pts[i + 1])) {
      return "step " + std::to_string(i) + ": no common cube with an ordered unit l1 step";
    }
  }
  return std::nullopt;
}

KinkSequence path_to_kinks(const CubeSet& x, const PLPath& p) {
  if (!is_natural(x, p)) throw DomainError("path is not natural (unit l1 speed from time 0)");
  const Rational length = p.t_end();
  if (length.get_den() != 1) throw DomainError("natural path has non-integral length " + to_string(length));
  if (!is_tame(x, p)) throw DomainError("path is not tame");
  KinkSequence out;
  const long n = length.get_num().get_si();
  for (long k = 0; k <= n; ++k) out.points.push_back(evaluate(x, p, Rational(k)));
  return out;
}

PLPath kinks_to_path(const CubeSet& x, const KinkSequence& s) {
  if (!is_proper(x) || !is_non_self_linked(x)) {
    throw DomainError("kink sequences are only supported on proper non-self-linked sets");
  }
  if (s.points.size() < 2) throw DomainError("kink sequence needs at least two points");
  if (auto err = check_kinks(x, s)) throw DomainError(*err);
  PLPath out;
  for (std::size_t i = 0; i + 1 < s.points.size(); ++i) {
    auto step = unit_step(x, canonicalize(x, s.points[i]), canonicalize(x, s.points[i + 1]));
    const Rational t(static_cast<long>(i));
    out.segments.push_back(Segment{step->cube, {{t, step->from}, {t + 1, step->to}}});
  }
  return out;
}

PLPath linearize(const CubeSet& x, const PLPath& p) {
  return kinks_to_path(x, path_to_kinks(x, naturalize(x, p, false)));
}

}  // namespace hda
