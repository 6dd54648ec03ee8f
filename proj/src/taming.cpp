#include "hda/taming.hpp"

#include <algorithm>

#include "hda/error.hpp"

namespace hda {

namespace {

Coords free_part(const FacePartition& fp, const Coords& y) {
  Coords out;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (fp.slots[i] == Slot::Free) out.push_back(y[i]);
  }
  return out;
}

bool within_collar(const FacePartition& fp, const Coords& y) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (fp.slots[i] == Slot::Zero && !(y[i] < half())) return false;
    if (fp.slots[i] == Slot::One && !(y[i] > half())) return false;
  }
  return true;
}

struct Affine {
  Rational value;  // at the reference time
  Rational slope;

  Rational at(const Rational& dt) const { return value + slope * dt; }
};

std::vector<Affine> fit(const Coords& y1, const Coords& y2, const Rational& dt) {
  std::vector<Affine> out;
  for (std::size_t i = 0; i < y1.size(); ++i) out.push_back({y1[i], (y2[i] - y1[i]) / dt});
  return out;
}

// Offsets (from the reference time) where two of the affine functions meet.
void meeting_offsets(const std::vector<Affine>& fs, std::vector<Rational>& out) {
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t k = i + 1; k < fs.size(); ++k) {
      if (fs[i].slope != fs[k].slope) out.push_back((fs[k].value - fs[i].value) / (fs[i].slope - fs[k].slope));
    }
  }
}

Rational surface(const std::vector<Affine>& lower, const std::vector<Affine>& upper, const Rational& dt) {
  Rational lo = lower.front().at(dt);
  for (const auto& f : lower) lo = std::min(lo, f.at(dt));
  Rational hi = upper.front().at(dt);
  for (const auto& f : upper) hi = std::max(hi, f.at(dt));
  return lo + hi;
}

}  // namespace

std::optional<Coords> collar_coordinates(const CubeSet& x, const Point& p, CubeIndex d) {
  for (const auto& fp : FacePartition::all(x.dim(p.cube))) {
    const CubeIndex g = face(x, p.cube, fp);
    if (!x.is_face_of(g, d) || !within_collar(fp, p.coords)) continue;
    const auto placements = face_embeddings(x, g, d);
    if (placements.empty()) continue;
    return embed(placements.front(), free_part(fp, p.coords));
  }
  return std::nullopt;
}

std::optional<Rational> surface_value(const CubeSet& x, const Point& p, CubeIndex cj, CubeIndex cnext) {
  auto a = collar_coordinates(x, p, cj);
  auto b = collar_coordinates(x, p, cnext);
  if (!a || !b) return std::nullopt;
  return *std::min_element(a->begin(), a->end()) + *std::max_element(b->begin(), b->end());
}

CrossingProfile crossing_times(const CubeSet& x, const PLPath& p, const CubeChain& c) {
  validate_chain(x, c);
  CrossingProfile out;
  if (c.cubes.size() < 2) return out;
  const auto events = event_times(p);

  for (std::size_t j = 0; j + 1 < c.cubes.size(); ++j) {
    const CubeIndex cj = c.cubes[j];
    const CubeIndex cn = c.cubes[j + 1];
    std::vector<Rational> roots;
    for (const auto& t : events) {
      auto m = surface_value(x, evaluate(x, p, t), cj, cn);
      if (m && *m == 1) roots.push_back(t);
    }
    for (std::size_t k = 0; k + 1 < events.size(); ++k) {
      const Rational& a = events[k];
      const Rational& b = events[k + 1];
      const Rational t1 = a + (b - a) / 3;
      const Rational t2 = a + 2 * (b - a) / 3;
      const Point p1 = evaluate(x, p, t1);
      const Point p2 = evaluate(x, p, t2);
      auto l1 = collar_coordinates(x, p1, cj);
      auto l2 = collar_coordinates(x, p2, cj);
      auto u1 = collar_coordinates(x, p1, cn);
      auto u2 = collar_coordinates(x, p2, cn);
      if (!l1 || !l2 || !u1 || !u2) continue;
      const auto lower = fit(*l1, *l2, t2 - t1);
      const auto upper = fit(*u1, *u2, t2 - t1);

      // Between kinks of the min and the max the surface value is affine.
      std::vector<Rational> cuts{a - t1, b - t1};
      std::vector<Rational> kinks;
      meeting_offsets(lower, kinks);
      meeting_offsets(upper, kinks);
      for (const auto& o : kinks) {
        if (a - t1 < o && o < b - t1) cuts.push_back(o);
      }
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Rational m0 = surface(lower, upper, cuts[i]);
        const Rational m1 = surface(lower, upper, cuts[i + 1]);
        if (m0 == 1 && m1 == 1) {
          roots.push_back(t1 + cuts[i]);
          roots.push_back(t1 + cuts[i + 1]);
        } else if ((m0 < 1 && m1 > 1) || (m0 > 1 && m1 < 1)) {
          roots.push_back(t1 + cuts[i] + (1 - m0) / (m1 - m0) * (cuts[i + 1] - cuts[i]));
        } else if (m0 == 1 && i > 0) {
          roots.push_back(t1 + cuts[i]);
        }
      }
    }
    if (roots.empty()) {
      throw DomainError("path never crosses from '" + x.id(cj) + "' to '" + x.id(cn) + "'");
    }
    out.enter.push_back(*std::min_element(roots.begin(), roots.end()));
    out.leave.push_back(*std::max_element(roots.begin(), roots.end()));
  }

  Rational last = p.t_begin();
  for (std::size_t j = 0; j < out.enter.size(); ++j) {
    if (!(out.enter[j] > last)) throw DomainError("crossing times are not strictly ascending");
    last = out.leave[j];
  }
  if (!(last < p.t_end())) throw DomainError("crossing times are not strictly ascending");
  return out;
}

Segment tame_piece(const CubeSet& x, const PLPath& p, CubeIndex d, const Rational& a, const Rational& b) {
  if (!(a < b)) throw DomainError("taming interval must have positive length");
  std::vector<Rational> times{a};
  for (const auto& t : event_times(p)) {
    if (a < t && t < b) times.push_back(t);
  }
  times.push_back(b);

  std::vector<Coords> rel;
  for (const auto& t : times) {
    auto r = collar_coordinates(x, evaluate(x, p, t), d);
    if (!r) throw DomainError("path leaves the collar of '" + x.id(d) + "' at t=" + to_string(t));
    rel.push_back(std::move(*r));
  }
  const Coords& first = rel.front();
  const Coords& final_ = rel.back();
  Segment out{d, {}};
  for (std::size_t k = 0; k < times.size(); ++k) {
    Coords q(first.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      const Rational den = final_[i] - first[i];
      if (den == 0) {
        throw DomainError("coordinate " + std::to_string(i + 1) + " of '" + x.id(d) + "' does not move on [" +
                          to_string(a) + ", " + to_string(b) + "]");
      }
      q[i] = (rel[k][i] - first[i]) / den;
    }
    out.points.push_back({times[k], std::move(q)});
  }
  return out;
}

PLPath tame(const CubeSet& x, const PLPath& p, const CubeChain& c) {
  if (!is_strict(x, p)) throw DomainError("taming needs a strict path");
  if (!subordinate_to_collar(x, p, c)) throw DomainError("path is not subordinate to the collar of the chain");
  if (c.cubes.empty()) return constant_path(vertex_point(c.from), p.t_begin(), p.t_end());

  const auto profile = crossing_times(x, p, c);
  const auto vertices = vertex_sequence(x, c);
  const std::size_t n = c.cubes.size();
  PLPath out;
  for (std::size_t j = 0; j < n; ++j) {
    const Rational a = j == 0 ? p.t_begin() : profile.leave[j - 1];
    const Rational b = j + 1 == n ? p.t_end() : profile.enter[j];
    out.segments.push_back(tame_piece(x, p, c.cubes[j], a, b));
    if (j + 1 < n && profile.enter[j] < profile.leave[j]) {
      out.segments.push_back(constant_path(vertex_point(vertices[j + 1]), profile.enter[j], profile.leave[j]).segments.front());
    }
  }
  validate_path(x, out);
  return out;
}

PLPath taming_homotopy(const CubeSet& x, const PLPath& p, const CubeChain& c, const Rational& s) {
  if (s < 0 || s > 1) throw DomainError("homotopy parameter outside [0,1]");
  const PLPath q = tame(x, p, c);
  if (s == 0) return p;
  if (s == 1) return q;

  const auto pp = linear_pieces(x, p);
  const auto pq = linear_pieces(x, q);
  auto times = breakpoint_times(p);
  const auto tq = breakpoint_times(q);
  times.insert(times.end(), tq.begin(), tq.end());
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  std::vector<CubeIndex> by_dim(x.size());
  for (CubeIndex k = 0; k < x.size(); ++k) by_dim[k] = k;
  std::stable_sort(by_dim.begin(), by_dim.end(), [&](CubeIndex u, CubeIndex v) { return x.dim(u) < x.dim(v); });

  auto covering = [](const std::vector<LinearPiece>& pieces, const Rational& t0, const Rational& t1) -> const LinearPiece& {
    for (const auto& pc : pieces) {
      if (pc.t0 <= t0 && t1 <= pc.t1) return pc;
    }
    throw DomainError("no linear piece covers the interval");
  };
  auto at = [](const LinearPiece& pc, const Rational& t) { return lerp(pc.a, pc.b, (t - pc.t0) / (pc.t1 - pc.t0)); };

  PLPath out;
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    const Rational& t0 = times[k];
    const Rational& t1 = times[k + 1];
    const auto& a = covering(pp, t0, t1);
    const auto& b = covering(pq, t0, t1);
    std::optional<CubeIndex> common;
    for (CubeIndex cube : by_dim) {
      if (x.is_face_of(a.carrier, cube) && x.is_face_of(b.carrier, cube)) {
        common = cube;
        break;
      }
    }
    if (!common) throw DomainError("no cube contains both the path and its taming at t=" + to_string(t0));
    const auto ga = face_embeddings(x, a.carrier, *common).front();
    const auto gb = face_embeddings(x, b.carrier, *common).front();
    Segment seg{*common, {}};
    for (const auto& t : {t0, t1}) seg.points.push_back({t, lerp(embed(ga, at(a, t)), embed(gb, at(b, t)), s)});
    out.segments.push_back(std::move(seg));
  }
  validate_path(x, out);
  return out;
}

}  // namespace hda
