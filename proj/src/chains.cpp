#include "hda/chains.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "hda/carrier.hpp"
#include "hda/error.hpp"

namespace hda {

void validate_chain(const CubeSet& x, const CubeChain& c) {
  if (c.from >= x.size() || c.to >= x.size()) throw DomainError("chain refers to an unknown vertex");
  if (x.dim(c.from) != 0 || x.dim(c.to) != 0) throw DomainError("chain end points must be vertices");
  CubeIndex at = c.from;
  for (std::size_t i = 0; i < c.cubes.size(); ++i) {
    const CubeIndex cube = c.cubes[i];
    if (cube >= x.size()) throw DomainError("chain refers to an unknown cube");
    if (x.dim(cube) == 0) throw DomainError("chain entry " + std::to_string(i) + " is a vertex");
    if (x.source_vertex(cube) != at) {
      throw DomainError("chain entry " + std::to_string(i) + " ('" + x.id(cube) + "') does not start at '" +
                        x.id(at) + "'");
    }
    at = x.target_vertex(cube);
  }
  if (at != c.to) throw DomainError("chain ends at '" + x.id(at) + "', not at '" + x.id(c.to) + "'");
}

int chain_length(const CubeSet& x, const CubeChain& c) {
  int n = 0;
  for (CubeIndex cube : c.cubes) n += x.dim(cube);
  return n;
}

std::vector<CubeIndex> vertex_sequence(const CubeSet& x, const CubeChain& c) {
  std::vector<CubeIndex> out{c.from};
  for (CubeIndex cube : c.cubes) out.push_back(x.target_vertex(cube));
  return out;
}

std::string chain_label(const CubeSet& x, const CubeChain& c) {
  if (c.cubes.empty()) return "()";
  std::string out;
  for (std::size_t i = 0; i < c.cubes.size(); ++i) {
    if (i > 0) out += '|';
    out += x.id(c.cubes[i]);
  }
  return out;
}

bool chain_less(const CubeSet& x, const CubeChain& a, const CubeChain& b) {
  return std::lexicographical_compare(a.cubes.begin(), a.cubes.end(), b.cubes.begin(), b.cubes.end(),
                                      [&](CubeIndex p, CubeIndex q) { return x.id(p) < x.id(q); });
}

namespace {

FacePartition mask_partition(int n, unsigned mask, Slot inside, Slot outside) {
  FacePartition fp;
  for (int i = 0; i < n; ++i) fp.slots.push_back((mask >> i) & 1U ? inside : outside);
  return fp;
}

void sort_chains(const CubeSet& x, std::vector<CubeChain>& chains) {
  std::sort(chains.begin(), chains.end(), [&](const CubeChain& a, const CubeChain& b) { return chain_less(x, a, b); });
}

}  // namespace

std::vector<CubeChain> elementary_refinements(const CubeSet& x, const CubeChain& c) {
  std::vector<CubeChain> out;
  std::set<std::vector<CubeIndex>> seen;
  for (std::size_t pos = 0; pos < c.cubes.size(); ++pos) {
    const CubeIndex d = c.cubes[pos];
    const int n = x.dim(d);
    for (unsigned j0 = 1; j0 + 1 < (1U << n); ++j0) {
      const CubeIndex lower = face(x, d, mask_partition(n, j0, Slot::Zero, Slot::Free));
      const CubeIndex upper = face(x, d, mask_partition(n, j0, Slot::Free, Slot::One));
      CubeChain r{c.from, c.to, {}};
      r.cubes.reserve(c.cubes.size() + 1);
      r.cubes.insert(r.cubes.end(), c.cubes.begin(), c.cubes.begin() + static_cast<std::ptrdiff_t>(pos));
      r.cubes.push_back(lower);
      r.cubes.push_back(upper);
      r.cubes.insert(r.cubes.end(), c.cubes.begin() + static_cast<std::ptrdiff_t>(pos) + 1, c.cubes.end());
      if (seen.insert(r.cubes).second) out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<CubeChain> refinements(const CubeSet& x, const CubeChain& c) {
  std::set<std::vector<CubeIndex>> seen{c.cubes};
  std::vector<CubeChain> out{c};
  std::deque<CubeChain> queue{c};
  while (!queue.empty()) {
    CubeChain cur = std::move(queue.front());
    queue.pop_front();
    for (auto& r : elementary_refinements(x, cur)) {
      if (seen.insert(r.cubes).second) {
        out.push_back(r);
        queue.push_back(std::move(r));
      }
    }
  }
  sort_chains(x, out);
  return out;
}

namespace {

// Whether fine[j..] begins with an ordered splitting of d: each piece is the
// face of d that is free on its block, at 1 on earlier blocks and at 0 on
// later ones. Returns the positions right after every complete splitting.
void splittings(const CubeSet& x, CubeIndex d, const std::vector<CubeIndex>& fine, std::size_t j, unsigned done,
                unsigned all, std::set<std::size_t>& ends) {
  if (done == all) {
    ends.insert(j);
    return;
  }
  if (j >= fine.size()) return;
  const int n = x.dim(d);
  const int k = x.dim(fine[j]);
  const unsigned rest = all & ~done;
  for (unsigned block = rest; block != 0; block = (block - 1) & rest) {
    if (std::popcount(block) != k) continue;
    FacePartition fp;
    for (int i = 0; i < n; ++i) {
      const unsigned bit = 1U << i;
      fp.slots.push_back(block & bit ? Slot::Free : done & bit ? Slot::One : Slot::Zero);
    }
    if (face(x, d, fp) == fine[j]) splittings(x, d, fine, j + 1, done | block, all, ends);
  }
}

}  // namespace

bool refines(const CubeSet& x, const CubeChain& fine, const CubeChain& coarse) {
  if (fine.from != coarse.from || fine.to != coarse.to) throw DomainError("chains have different end points");
  if (chain_length(x, fine) != chain_length(x, coarse)) return false;
  // reach holds the positions in `fine` reachable after splitting a prefix of `coarse`.
  std::set<std::size_t> reach{0};
  for (CubeIndex d : coarse.cubes) {
    std::set<std::size_t> next;
    const unsigned all = (1U << x.dim(d)) - 1;
    for (std::size_t j : reach) splittings(x, d, fine.cubes, j, 0, all, next);
    if (next.empty()) return false;
    reach = std::move(next);
  }
  return reach.count(fine.cubes.size()) > 0;
}

RefinementPoset enumerate_chains(const CubeSet& x, CubeIndex from, CubeIndex to, int max_length) {
  if (from >= x.size() || to >= x.size() || x.dim(from) != 0 || x.dim(to) != 0) {
    throw DomainError("chain end points must be vertices");
  }
  if (max_length < 0) throw DomainError("max length must be non-negative");

  std::vector<std::vector<CubeIndex>> incoming(x.size());
  for (CubeIndex c = 0; c < x.size(); ++c) {
    if (x.dim(c) > 0) incoming[x.target_vertex(c)].push_back(c);
  }
  std::vector<char> reaches(x.size(), 0);
  std::vector<CubeIndex> stack{to};
  reaches[to] = 1;
  while (!stack.empty()) {
    const CubeIndex v = stack.back();
    stack.pop_back();
    for (CubeIndex c : incoming[v]) {
      const CubeIndex s = x.source_vertex(c);
      if (!reaches[s]) {
        reaches[s] = 1;
        stack.push_back(s);
      }
    }
  }

  RefinementPoset poset;
  poset.from = from;
  poset.to = to;
  poset.max_length = max_length;
  poset.nerve_guarantee = is_proper(x) && is_non_self_linked(x);

  std::vector<CubeIndex> current;
  std::function<void(CubeIndex, int)> extend = [&](CubeIndex v, int length) {
    if (v == to) poset.chains.push_back(CubeChain{from, to, current});
    for (CubeIndex c : x.cubes_from(v)) {
      const CubeIndex t = x.target_vertex(c);
      if (!reaches[t]) continue;
      if (length + x.dim(c) > max_length) {
        poset.truncated = true;
        continue;
      }
      current.push_back(c);
      extend(t, length + x.dim(c));
      current.pop_back();
    }
  };
  if (reaches[from]) extend(from, 0);

  sort_chains(x, poset.chains);
  std::map<std::vector<CubeIndex>, std::size_t> index;
  for (std::size_t i = 0; i < poset.chains.size(); ++i) index.emplace(poset.chains[i].cubes, i);
  for (std::size_t i = 0; i < poset.chains.size(); ++i) {
    for (const auto& r : elementary_refinements(x, poset.chains[i])) {
      auto it = index.find(r.cubes);
      if (it != index.end()) poset.covers.emplace_back(i, it->second);
    }
  }
  std::sort(poset.covers.begin(), poset.covers.end());
  poset.covers.erase(std::unique(poset.covers.begin(), poset.covers.end()), poset.covers.end());
  return poset;
}

namespace {

void check_endpoints(const CubeSet& x, const PLPath& p, const CubeChain& c) {
  if (start_point(x, p) != vertex_point(c.from) || end_point(x, p) != vertex_point(c.to)) {
    throw DomainError("path end points do not match the chain");
  }
}

}  // namespace

CubeChain finest_chain(const CubeSet& x, const PLPath& p) {
  if (!is_strict(x, p)) throw DomainError("finest_chain needs a strict path");
  const Point a = start_point(x, p);
  const Point b = end_point(x, p);
  if (x.dim(a.cube) != 0 || x.dim(b.cube) != 0) throw DomainError("path must run between vertices");
  const std::vector<Rational> times = half_crossing_times(p);
  CubeChain out{a.cube, b.cube, {}};
  for (const auto& t : times) {
    const CubeIndex m = minimal_collar_face(x, evaluate(x, p, t));
    if (x.dim(m) > 0) out.cubes.push_back(m);
  }
  validate_chain(x, out);
  return out;
}

bool subordinate_to_collar(const CubeSet& x, const PLPath& p, const CubeChain& c) {
  validate_chain(x, c);
  check_endpoints(x, p, c);

  // Collar and star membership is constant on each event time and on each
  // open interval between consecutive events.
  const std::vector<Rational> events = event_times(p);
  std::vector<Point> atoms;
  for (std::size_t k = 0; k < events.size(); ++k) {
    atoms.push_back(evaluate(x, p, events[k]));
    if (k + 1 < events.size()) atoms.push_back(evaluate(x, p, (events[k] + events[k + 1]) / 2));
  }
  const std::size_t count = atoms.size();
  const auto vertices = vertex_sequence(x, c);

  if (c.cubes.empty()) {
    return std::all_of(atoms.begin(), atoms.end(), [&](const Point& q) { return in_star(x, q, c.from); });
  }

  std::vector<char> reach(count, 0);
  reach[0] = 1;
  for (std::size_t i = 1; i <= c.cubes.size(); ++i) {
    const CubeIndex d = c.cubes[i - 1];
    const bool last = i == c.cubes.size();
    std::vector<char> next(count, 0);
    bool open = false;
    for (std::size_t b = 0; b < count; ++b) {
      const bool inside = in_collar(x, atoms[b], d);
      const bool from_before = inside && open;
      const bool same_atom = inside && reach[b] && b % 2 == 1;
      const bool cut_ok = last ? b + 1 == count : in_star(x, atoms[b], vertices[i]);
      next[b] = (from_before || same_atom) && cut_ok;
      open = inside && (open || reach[b]);
    }
    reach = std::move(next);
    if (std::none_of(reach.begin(), reach.end(), [](char v) { return v != 0; })) return false;
  }
  return reach[count - 1] != 0;
}

namespace {

// Lower faces of c (no coordinate at 1), keyed by cube.
std::map<CubeIndex, std::vector<FacePartition>> lower_faces(const CubeSet& x, CubeIndex c) {
  std::map<CubeIndex, std::vector<FacePartition>> out;
  for (const auto& fp : FacePartition::all(x.dim(c))) {
    if (std::find(fp.slots.begin(), fp.slots.end(), Slot::One) != fp.slots.end()) continue;
    out[face(x, c, fp)].push_back(fp);
  }
  return out;
}

FacePartition upper_complement(const FacePartition& lower) {
  FacePartition out;
  for (Slot s : lower.slots) out.slots.push_back(s == Slot::Zero ? Slot::Free : Slot::One);
  return out;
}

void split_head(const CubeSet& x, std::vector<CubeIndex>& rest, CubeIndex d,
                const std::map<CubeIndex, std::vector<FacePartition>>& lower) {
  const CubeIndex head = rest.front();
  rest.erase(rest.begin());
  if (head == d) return;
  const auto& fps = lower.at(d);
  if (fps.size() != 1) throw DomainError("face '" + x.id(d) + "' occurs more than once in '" + x.id(head) + "'");
  rest.insert(rest.begin(), face(x, head, upper_complement(fps.front())));
}

}  // namespace

CcrResult ccr_recursive(const CubeSet& x, const CubeChain& a, const CubeChain& b) {
  if (a.from != b.from || a.to != b.to) throw DomainError("chains have different end points");
  if (chain_length(x, a) != chain_length(x, b)) return {};
  std::vector<CubeIndex> ra = a.cubes;
  std::vector<CubeIndex> rb = b.cubes;
  CubeChain out{a.from, a.to, {}};
  while (!ra.empty() && !rb.empty()) {
    const auto la = lower_faces(x, ra.front());
    const auto lb = lower_faces(x, rb.front());
    int best = 0;
    std::vector<CubeIndex> tops;
    for (const auto& [f, fps] : la) {
      if (!lb.count(f)) continue;
      if (x.dim(f) > best) {
        best = x.dim(f);
        tops.clear();
      }
      if (x.dim(f) == best) tops.push_back(f);
    }
    if (best == 0) return {};
    if (tops.size() != 1) throw DomainError("maximal common lower face is not unique");
    const CubeIndex d = tops.front();
    split_head(x, ra, d, la);
    split_head(x, rb, d, lb);
    out.cubes.push_back(d);
  }
  if (!ra.empty() || !rb.empty()) return {};
  return {CcrResult::Kind::Chain, out};
}

CcrResult ccr_brute_force(const CubeSet& x, const CubeChain& a, const CubeChain& b) {
  if (a.from != b.from || a.to != b.to) throw DomainError("chains have different end points");
  std::set<std::vector<CubeIndex>> below_b;
  for (const auto& r : refinements(x, b)) below_b.insert(r.cubes);
  std::vector<CubeChain> common;
  for (const auto& r : refinements(x, a)) {
    if (below_b.count(r.cubes)) common.push_back(r);
  }
  if (common.empty()) return {};
  std::vector<CubeChain> maximal;
  for (const auto& m : common) {
    bool dominated = false;
    for (const auto& e : common) {
      if (!(e == m) && refines(x, m, e)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) maximal.push_back(m);
  }
  if (maximal.size() != 1) return {CcrResult::Kind::NoCoarsest, std::nullopt};
  return {CcrResult::Kind::Chain, maximal.front()};
}

CcrResult coarsest_common_refinement(const CubeSet& x, const CubeChain& a, const CubeChain& b) {
  if (is_proper(x) && is_non_self_linked(x)) return ccr_recursive(x, a, b);
  return ccr_brute_force(x, a, b);
}

bool common_refinement_exists(const CubeSet& x, const std::vector<CubeChain>& chains) {
  if (chains.empty()) return true;
  for (const auto& c : chains) {
    if (c.from != chains.front().from || c.to != chains.front().to) throw DomainError("chains have different end points");
  }
  std::set<std::vector<CubeIndex>> common;
  for (const auto& r : refinements(x, chains.front())) common.insert(r.cubes);
  for (std::size_t i = 1; i < chains.size() && !common.empty(); ++i) {
    std::set<std::vector<CubeIndex>> next;
    for (const auto& r : refinements(x, chains[i])) {
      if (common.count(r.cubes)) next.insert(r.cubes);
    }
    common = std::move(next);
  }
  return !common.empty();
}

}  // namespace hda
