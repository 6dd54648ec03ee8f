#include "hda/carrier.hpp"

#include <algorithm>

#include "hda/error.hpp"

namespace hda {

int FacePartition::dim() const {
  return static_cast<int>(std::count(slots.begin(), slots.end(), Slot::Free));
}

FacePartition FacePartition::identity(int n) {
  return FacePartition{std::vector<Slot>(static_cast<std::size_t>(n), Slot::Free)};
}

std::vector<FacePartition> FacePartition::all(int n) {
  std::vector<FacePartition> out;
  for (int k = n; k >= 0; --k) {
    auto part = with_dim(n, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

namespace {

void fill_partitions(std::vector<Slot>& slots, std::size_t at, int free_left,
                     std::vector<FacePartition>& out) {
  const std::size_t remaining = slots.size() - at;
  if (free_left < 0 || static_cast<std::size_t>(free_left) > remaining) return;
  if (at == slots.size()) {
    out.push_back(FacePartition{slots});
    return;
  }
  for (Slot s : {Slot::Zero, Slot::Free, Slot::One}) {
    slots[at] = s;
    fill_partitions(slots, at + 1, free_left - (s == Slot::Free ? 1 : 0), out);
  }
}

}  // namespace

std::vector<FacePartition> FacePartition::with_dim(int n, int k) {
  std::vector<FacePartition> out;
  std::vector<Slot> slots(static_cast<std::size_t>(n), Slot::Zero);
  fill_partitions(slots, 0, k, out);
  return out;
}

CubeIndex face(const CubeSet& x, CubeIndex c, const FacePartition& fp) {
  if (fp.n() != x.dim(c)) {
    throw DomainError("face partition over " + std::to_string(fp.n()) + " indices applied to " +
                      std::to_string(x.dim(c)) + "-cube '" + x.id(c) + "'");
  }
  for (int i = fp.n(); i >= 1; --i) {
    const Slot s = fp.slots[static_cast<std::size_t>(i - 1)];
    if (s != Slot::Free) c = x.face(c, i, s == Slot::One ? 1 : 0);
  }
  return c;
}

std::vector<FacePartition> face_embeddings(const CubeSet& x, CubeIndex f, CubeIndex c) {
  std::vector<FacePartition> out;
  if (x.dim(f) > x.dim(c) || !x.is_face_of(f, c)) return out;
  for (auto& fp : FacePartition::with_dim(x.dim(c), x.dim(f))) {
    if (face(x, c, fp) == f) out.push_back(std::move(fp));
  }
  return out;
}

Coords embed(const FacePartition& fp, const Coords& y) {
  Coords out;
  out.reserve(fp.slots.size());
  std::size_t k = 0;
  for (Slot s : fp.slots) {
    switch (s) {
      case Slot::Zero:
        out.emplace_back(0);
        break;
      case Slot::One:
        out.emplace_back(1);
        break;
      case Slot::Free:
        out.push_back(y.at(k++));
        break;
    }
  }
  return out;
}

Point canonicalize(const CubeSet& x, Point p) {
  if (p.cube >= x.size()) throw DomainError("point refers to an unknown cube");
  if (p.coords.size() != static_cast<std::size_t>(x.dim(p.cube))) {
    throw DomainError("point in '" + x.id(p.cube) + "' has " + std::to_string(p.coords.size()) +
                      " coordinates, expected " + std::to_string(x.dim(p.cube)));
  }
  for (const auto& v : p.coords) {
    if (v < 0 || v > 1) {
      throw DomainError("coordinate " + to_string(v) + " outside [0,1] in '" + x.id(p.cube) + "'");
    }
  }
  std::size_t i = 0;
  while (i < p.coords.size()) {
    if (is_zero_or_one(p.coords[i])) {
      const int alpha = p.coords[i] == 1 ? 1 : 0;
      p.cube = x.face(p.cube, static_cast<int>(i) + 1, alpha);
      p.coords.erase(p.coords.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  return p;
}

Point vertex_point(CubeIndex v) { return Point{v, {}}; }

std::vector<Coords> representatives(const CubeSet& x, const Point& p, CubeIndex c) {
  std::vector<Coords> out;
  for (const auto& fp : face_embeddings(x, p.cube, c)) out.push_back(embed(fp, p.coords));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<CubeIndex> carriers(const CubeSet& x, const Point& p) {
  std::vector<CubeIndex> out;
  for (CubeIndex c = 0; c < x.size(); ++c) {
    if (x.is_face_of(p.cube, c)) out.push_back(c);
  }
  return out;
}

namespace {

bool coords_in_collar(const Coords& y, const FacePartition& fp) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (fp.slots[i] == Slot::Zero && !(y[i] < half())) return false;
    if (fp.slots[i] == Slot::One && !(y[i] > half())) return false;
  }
  return true;
}

FacePartition minimal_partition(const Coords& y) {
  FacePartition fp;
  fp.slots.reserve(y.size());
  for (const auto& v : y) {
    const int s = cmp(v, half());
    fp.slots.push_back(s < 0 ? Slot::Zero : s == 0 ? Slot::Free : Slot::One);
  }
  return fp;
}

}  // namespace

bool in_collar(const CubeSet& x, const Point& p, CubeIndex c, const FacePartition& fp) {
  if (fp.n() != x.dim(c)) throw DomainError("face partition does not match cube '" + x.id(c) + "'");
  for (const auto& y : representatives(x, p, c)) {
    if (coords_in_collar(y, fp)) return true;
  }
  return false;
}

CubeIndex minimal_collar_face(const CubeSet& x, const Point& p) {
  return face(x, p.cube, minimal_partition(p.coords));
}

bool in_collar(const CubeSet& x, const Point& p, CubeIndex d) {
  return x.is_face_of(minimal_collar_face(x, p), d);
}

bool in_star(const CubeSet& x, const Point& p, CubeIndex v) {
  if (x.dim(v) != 0) throw DomainError("'" + x.id(v) + "' is not a vertex");
  return minimal_collar_face(x, p) == v;
}

std::vector<CubeIndex> common_cubes(const CubeSet& x, const Point& p, const Point& q) {
  std::vector<CubeIndex> out;
  for (CubeIndex c = 0; c < x.size(); ++c) {
    if (x.is_face_of(p.cube, c) && x.is_face_of(q.cube, c)) out.push_back(c);
  }
  std::stable_sort(out.begin(), out.end(), [&](CubeIndex a, CubeIndex b) { return x.dim(a) < x.dim(b); });
  return out;
}

namespace {

struct Placement {
  Coords first;
  Coords second;
  bool ordered = false;
};

std::optional<Placement> place(const CubeSet& x, const Point& p, const Point& q) {
  std::optional<Placement> fallback;
  for (CubeIndex c : common_cubes(x, p, q)) {
    const auto rp = representatives(x, p, c);
    const auto rq = representatives(x, q, c);
    for (const auto& a : rp) {
      for (const auto& b : rq) {
        if (leq(a, b)) return Placement{a, b, true};
        if (!fallback) fallback = Placement{a, b, false};
      }
    }
  }
  return fallback;
}

}  // namespace

Rational l1_distance_in_cube(const CubeSet& x, const Point& p, const Point& q) {
  auto pl = place(x, p, q);
  if (!pl) throw DomainError("points have no common carrier cube");
  return l1_distance(pl->first, pl->second);
}

bool leq_in_cube(const CubeSet& x, const Point& p, const Point& q) {
  auto pl = place(x, p, q);
  if (!pl) throw DomainError("points have no common carrier cube");
  return pl->ordered;
}

std::optional<long> hyperplane_level(const CubeSet& x, const Point& p) {
  (void)x;
  Rational sum = 0;
  for (const auto& v : p.coords) sum += v;
  if (sum.get_den() != 1) return std::nullopt;
  return sum.get_num().get_si();
}

}  // namespace hda
