#include "hda/io.hpp"

#include <algorithm>
#include <charconv>

#include <json.hpp>

#include "hda/error.hpp"

namespace hda {

namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

Json load(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    int line = 1;
    int column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw FormatError(what, line, column);
  }
}

bool is_scalar(const OrderedJson& j) { return !j.is_structured() || j.empty(); }

// Arrays of scalars, or of arrays of scalars, fit on one line.
bool is_flat(const OrderedJson& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const OrderedJson& e) {
           return is_scalar(e) || (e.is_array() && std::all_of(e.begin(), e.end(), is_scalar));
         });
}

void write_inline(const OrderedJson& j, std::string& out) {
  if (is_scalar(j)) {
    out += j.dump();
    return;
  }
  out += "[";
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (i) out += ", ";
    write_inline(j[i], out);
  }
  out += "]";
}

// Two-space indentation with flat arrays kept on one line.
void write_json(const OrderedJson& j, int indent, std::string& out) {
  if (is_flat(j) && j.size() <= 2) {
    write_inline(j, out);
    return;
  }
  if (j.is_array() && std::all_of(j.begin(), j.end(), is_scalar)) {
    write_inline(j, out);
    return;
  }
  if (!j.is_structured() || j.empty()) {
    out += j.dump();
    return;
  }
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  out += j.is_array() ? "[\n" : "{\n";
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += pad;
    if (j.is_object()) out += OrderedJson(it.key()).dump() + ": ";
    write_json(*it, indent + 2, out);
  }
  out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + (j.is_array() ? "]" : "}");
}

std::string dump(const OrderedJson& j) {
  std::string out;
  write_json(j, 0, out);
  return out + "\n";
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw FormatError(where + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError("missing field '" + std::string(key) + "' in " + where);
  return *it;
}

const Json& array_of(const Json& j, const std::string& where) {
  if (!j.is_array()) throw FormatError(where + " must be an array");
  return j;
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw FormatError(where + " must be a string");
  return j.get<std::string>();
}

long as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw FormatError(where + " must be an integer");
  return j.get<long>();
}

bool as_bool(const Json& j, const std::string& where) {
  if (!j.is_boolean()) throw FormatError(where + " must be true or false");
  return j.get<bool>();
}

Rational as_rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw FormatError(where + " must be a rational string such as \"1/3\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const FormatError& e) {
    throw FormatError(where + ": " + e.what());
  }
}

Coords as_coords(const Json& j, const std::string& where) {
  Coords out;
  for (std::size_t i = 0; i < array_of(j, where).size(); ++i) {
    out.push_back(as_rational(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

CubeIndex cube_ref(const CubeSet& x, const Json& j, const std::string& where) {
  const auto id = as_string(j, where);
  auto c = x.find(id);
  if (!c) throw DomainError(where + ": unknown cube '" + id + "'");
  return *c;
}

OrderedJson coords_json(const Coords& c) {
  auto out = OrderedJson::array();
  for (const auto& v : c) out.push_back(to_string(v));
  return out;
}

std::string face_key(int i, int alpha) { return "d" + std::to_string(alpha) + "_" + std::to_string(i); }

// "d<alpha>_<i>" -> (i, alpha)
std::optional<std::pair<int, int>> parse_face_key(const std::string& key) {
  if (key.size() < 4 || key[0] != 'd' || (key[1] != '0' && key[1] != '1') || key[2] != '_') return std::nullopt;
  int i = 0;
  const char* first = key.data() + 3;
  const char* last = key.data() + key.size();
  auto [ptr, ec] = std::from_chars(first, last, i);
  if (ec != std::errc() || ptr != last || i < 1 || key[3] == '0') return std::nullopt;
  return std::make_pair(i, key[1] - '0');
}

}  // namespace

CubeSetDocument parse_cubeset(std::string_view text, bool validate) {
  const Json doc = load(text);
  const Json& cubes = array_of(field(doc, "cubes", "cube set"), "cubes");
  std::vector<CubeSpec> specs;
  for (std::size_t k = 0; k < cubes.size(); ++k) {
    const std::string where = "cubes[" + std::to_string(k) + "]";
    const Json& entry = cubes[k];
    CubeSpec spec;
    spec.id = as_string(field(entry, "id", where), where + ".id");
    const long dim = as_int(field(entry, "dim", where), where + ".dim");
    if (dim < 0 || dim > 64) throw FormatError(where + ".dim out of range");
    spec.dim = static_cast<int>(dim);
    spec.faces.assign(2 * static_cast<std::size_t>(dim), {});
    const Json& faces = field(entry, "faces", where);
    if (!faces.is_object()) throw FormatError(where + ".faces must be an object");
    for (const auto& [key, value] : faces.items()) {
      auto ia = parse_face_key(key);
      if (!ia || ia->first > spec.dim) throw FormatError(where + ": unexpected face key '" + key + "'");
      spec.faces[2 * static_cast<std::size_t>(ia->first - 1) + static_cast<std::size_t>(ia->second)] =
          as_string(value, where + ".faces." + key);
    }
    for (int i = 1; i <= spec.dim; ++i) {
      for (int alpha = 0; alpha <= 1; ++alpha) {
        if (spec.faces[2 * static_cast<std::size_t>(i - 1) + static_cast<std::size_t>(alpha)].empty()) {
          throw FormatError(where + ": missing face '" + face_key(i, alpha) + "'");
        }
      }
    }
    specs.push_back(std::move(spec));
  }

  CubeSetDocument out{CubeSet(std::move(specs)), std::nullopt, std::nullopt};
  for (const char* key : {"start", "end"}) {
    auto it = doc.find(key);
    if (it == doc.end()) continue;
    const CubeIndex v = cube_ref(out.cubes, *it, key);
    if (out.cubes.dim(v) != 0) throw DomainError(std::string(key) + " must be a vertex");
    (std::string_view(key) == "start" ? out.start : out.end) = v;
  }
  if (validate) {
    const auto violations = hda::validate(out.cubes);
    if (!violations.empty()) {
      std::string what = "cube set fails validation:";
      for (const auto& v : violations) what += "\n  " + v.message;
      throw DomainError(what);
    }
  }
  return out;
}

std::string write_cubeset(const CubeSet& x, std::optional<CubeIndex> start, std::optional<CubeIndex> end) {
  OrderedJson doc;
  auto cubes = OrderedJson::array();
  for (CubeIndex c = 0; c < x.size(); ++c) {
    OrderedJson faces = OrderedJson::object();
    for (int i = 1; i <= x.dim(c); ++i) {
      for (int alpha = 0; alpha <= 1; ++alpha) faces[face_key(i, alpha)] = x.id(x.face(c, i, alpha));
    }
    OrderedJson entry;
    entry["id"] = x.id(c);
    entry["dim"] = x.dim(c);
    entry["faces"] = std::move(faces);
    cubes.push_back(std::move(entry));
  }
  doc["cubes"] = std::move(cubes);
  if (start) doc["start"] = x.id(*start);
  if (end) doc["end"] = x.id(*end);
  return dump(doc);
}

PLPath parse_path(const CubeSet& x, std::string_view text) {
  const Json doc = load(text);
  const std::string start = as_string(field(doc, "start", "path"), "start");
  const Json& segments = array_of(field(doc, "segments", "path"), "segments");
  PLPath p;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const std::string where = "segments[" + std::to_string(k) + "]";
    Segment seg;
    seg.cube = cube_ref(x, field(segments[k], "cube", where), where + ".cube");
    const Json& bps = array_of(field(segments[k], "breakpoints", where), where + ".breakpoints");
    for (std::size_t b = 0; b < bps.size(); ++b) {
      const std::string at = where + ".breakpoints[" + std::to_string(b) + "]";
      if (!bps[b].is_array() || bps[b].size() != 2) throw FormatError(at + " must be a pair [t, [x, ...]]");
      seg.points.push_back({as_rational(bps[b][0], at + "[0]"), as_coords(bps[b][1], at + "[1]")});
    }
    p.segments.push_back(std::move(seg));
  }
  validate_path(x, p);
  const Point s = start_point(x, p);
  if (x.id(s.cube) != start) {
    throw DomainError("path starts in '" + x.id(s.cube) + "' but the document says '" + start + "'");
  }
  return p;
}

std::string write_path(const CubeSet& x, const PLPath& p) {
  validate_path(x, p);
  OrderedJson doc;
  doc["start"] = x.id(start_point(x, p).cube);
  auto segments = OrderedJson::array();
  for (const auto& seg : p.segments) {
    auto bps = OrderedJson::array();
    for (const auto& b : seg.points) bps.push_back(OrderedJson::array({to_string(b.t), coords_json(b.x)}));
    OrderedJson entry;
    entry["cube"] = x.id(seg.cube);
    entry["breakpoints"] = std::move(bps);
    segments.push_back(std::move(entry));
  }
  doc["segments"] = std::move(segments);
  return dump(doc);
}

CubeChain parse_chain(const CubeSet& x, std::string_view text) {
  const Json doc = load(text);
  CubeChain c;
  c.from = cube_ref(x, field(doc, "from", "chain"), "from");
  c.to = cube_ref(x, field(doc, "to", "chain"), "to");
  const Json& cubes = array_of(field(doc, "cubes", "chain"), "cubes");
  for (std::size_t k = 0; k < cubes.size(); ++k) {
    c.cubes.push_back(cube_ref(x, cubes[k], "cubes[" + std::to_string(k) + "]"));
  }
  validate_chain(x, c);
  return c;
}

std::string write_chain(const CubeSet& x, const CubeChain& c) {
  OrderedJson doc;
  doc["from"] = x.id(c.from);
  doc["to"] = x.id(c.to);
  auto cubes = OrderedJson::array();
  for (auto k : c.cubes) cubes.push_back(x.id(k));
  doc["cubes"] = std::move(cubes);
  return dump(doc);
}

PosetDocument to_document(const CubeSet& x, const RefinementPoset& poset) {
  PosetDocument doc;
  doc.from = x.id(poset.from);
  doc.to = x.id(poset.to);
  doc.max_length = poset.max_length;
  doc.truncated = poset.truncated;
  doc.nerve_guarantee = poset.nerve_guarantee;
  for (const auto& c : poset.chains) {
    std::vector<std::string> ids;
    for (auto k : c.cubes) ids.push_back(x.id(k));
    doc.chains.push_back(std::move(ids));
  }
  doc.covers = poset.covers;
  return doc;
}

RefinementPoset from_document(const CubeSet& x, const PosetDocument& doc) {
  RefinementPoset out;
  out.from = x.index(doc.from);
  out.to = x.index(doc.to);
  out.max_length = doc.max_length;
  out.truncated = doc.truncated;
  out.nerve_guarantee = doc.nerve_guarantee;
  for (const auto& ids : doc.chains) {
    CubeChain c{out.from, out.to, {}};
    for (const auto& id : ids) c.cubes.push_back(x.index(id));
    validate_chain(x, c);
    out.chains.push_back(std::move(c));
  }
  out.covers = doc.covers;
  return out;
}

PosetDocument parse_poset(std::string_view text) {
  const Json doc = load(text);
  PosetDocument out;
  out.from = as_string(field(doc, "from", "poset"), "from");
  out.to = as_string(field(doc, "to", "poset"), "to");
  out.max_length = static_cast<int>(as_int(field(doc, "max_length", "poset"), "max_length"));
  out.truncated = as_bool(field(doc, "truncated", "poset"), "truncated");
  out.nerve_guarantee = as_bool(field(doc, "nerve_guarantee", "poset"), "nerve_guarantee");
  const Json& chains = array_of(field(doc, "chains", "poset"), "chains");
  for (std::size_t k = 0; k < chains.size(); ++k) {
    const std::string where = "chains[" + std::to_string(k) + "]";
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < array_of(chains[k], where).size(); ++i) {
      ids.push_back(as_string(chains[k][i], where + "[" + std::to_string(i) + "]"));
    }
    out.chains.push_back(std::move(ids));
  }
  const Json& covers = array_of(field(doc, "covers", "poset"), "covers");
  for (std::size_t k = 0; k < covers.size(); ++k) {
    const std::string where = "covers[" + std::to_string(k) + "]";
    if (!covers[k].is_array() || covers[k].size() != 2) throw FormatError(where + " must be a pair");
    const long a = as_int(covers[k][0], where + "[0]");
    const long b = as_int(covers[k][1], where + "[1]");
    const auto n = static_cast<long>(out.chains.size());
    if (a < 0 || b < 0 || a >= n || b >= n) throw DomainError(where + " refers to a missing chain");
    out.covers.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  }
  return out;
}

std::string write_poset(const PosetDocument& doc) {
  OrderedJson out;
  out["from"] = doc.from;
  out["to"] = doc.to;
  out["max_length"] = doc.max_length;
  out["truncated"] = doc.truncated;
  out["nerve_guarantee"] = doc.nerve_guarantee;
  out["chains"] = doc.chains;
  auto covers = OrderedJson::array();
  for (const auto& [a, b] : doc.covers) covers.push_back(OrderedJson::array({a, b}));
  out["covers"] = std::move(covers);
  return dump(out);
}

std::vector<std::string> poset_labels(const PosetDocument& doc) {
  std::vector<std::string> out;
  for (const auto& ids : doc.chains) {
    std::string label;
    for (const auto& id : ids) label += (label.empty() ? "" : "|") + id;
    out.push_back(label.empty() ? "()" : label);
  }
  return out;
}

SimplicialComplex parse_complex(std::string_view text) {
  const Json doc = load(text);
  const long n = as_int(field(doc, "vertices", "complex"), "vertices");
  if (n < 0) throw FormatError("vertices must be non-negative");
  std::vector<Simplex> simplices;
  const Json& maximal = array_of(field(doc, "maximal_simplices", "complex"), "maximal_simplices");
  for (std::size_t k = 0; k < maximal.size(); ++k) {
    const std::string where = "maximal_simplices[" + std::to_string(k) + "]";
    Simplex s;
    for (std::size_t i = 0; i < array_of(maximal[k], where).size(); ++i) {
      const long v = as_int(maximal[k][i], where + "[" + std::to_string(i) + "]");
      if (v < 0) throw FormatError(where + " has a negative vertex");
      s.push_back(static_cast<std::uint32_t>(v));
    }
    simplices.push_back(std::move(s));
  }
  auto k = make_complex(static_cast<std::size_t>(n), std::move(simplices));
  if (auto it = doc.find("labels"); it != doc.end()) {
    for (std::size_t i = 0; i < array_of(*it, "labels").size(); ++i) {
      k.labels.push_back(as_string((*it)[i], "labels[" + std::to_string(i) + "]"));
    }
    if (!k.labels.empty() && k.labels.size() != k.num_vertices) {
      throw FormatError("labels must name every vertex");
    }
  }
  k.approximate = as_bool(field(doc, "approximate", "complex"), "approximate");
  k.nerve_guarantee = as_bool(field(doc, "nerve_guarantee", "complex"), "nerve_guarantee");
  return k;
}

std::string write_complex(const SimplicialComplex& k) {
  OrderedJson out;
  out["vertices"] = k.num_vertices;
  out["labels"] = k.labels;
  out["maximal_simplices"] = k.maximal;
  out["approximate"] = k.approximate;
  out["nerve_guarantee"] = k.nerve_guarantee;
  return dump(out);
}

HomologyReport homology_report(const SimplicialComplex& k, std::size_t budget) {
  HomologyReport r;
  r.homology = homology(k, budget);
  for (std::size_t d = 0; d < r.homology.betti.size(); ++d) {
    r.euler += (d % 2 == 0 ? 1L : -1L) * static_cast<long>(r.homology.betti[d]);
  }
  r.components = r.homology.betti.empty() ? 0 : r.homology.betti.front();
  r.approximate = k.approximate;
  r.nerve_guarantee = k.nerve_guarantee;
  return r;
}

HomologyReport parse_homology(std::string_view text) {
  const Json doc = load(text);
  HomologyReport r;
  const Json& betti = array_of(field(doc, "betti", "homology"), "betti");
  for (std::size_t d = 0; d < betti.size(); ++d) {
    const long b = as_int(betti[d], "betti[" + std::to_string(d) + "]");
    if (b < 0) throw FormatError("betti numbers must be non-negative");
    r.homology.betti.push_back(static_cast<std::size_t>(b));
  }
  const Json& torsion = array_of(field(doc, "torsion", "homology"), "torsion");
  for (std::size_t d = 0; d < torsion.size(); ++d) {
    const std::string where = "torsion[" + std::to_string(d) + "]";
    std::vector<Integer> factors;
    for (std::size_t i = 0; i < array_of(torsion[d], where).size(); ++i) {
      const Rational v = as_rational(torsion[d][i], where + "[" + std::to_string(i) + "]");
      if (v.get_den() != 1) throw FormatError(where + " must hold integers");
      factors.push_back(v.get_num());
    }
    r.homology.torsion.push_back(std::move(factors));
  }
  r.euler = as_int(field(doc, "euler", "homology"), "euler");
  const long comps = as_int(field(doc, "components", "homology"), "components");
  if (comps < 0) throw FormatError("components must be non-negative");
  r.components = static_cast<std::size_t>(comps);
  r.approximate = as_bool(field(doc, "approximate", "homology"), "approximate");
  r.nerve_guarantee = as_bool(field(doc, "nerve_guarantee", "homology"), "nerve_guarantee");
  return r;
}

std::string write_homology(const HomologyReport& r) {
  OrderedJson out;
  out["betti"] = r.homology.betti;
  auto torsion = OrderedJson::array();
  for (const auto& factors : r.homology.torsion) {
    auto row = OrderedJson::array();
    for (const auto& v : factors) row.push_back(v.get_str());
    torsion.push_back(std::move(row));
  }
  out["torsion"] = std::move(torsion);
  out["euler"] = r.euler;
  out["components"] = r.components;
  out["approximate"] = r.approximate;
  out["nerve_guarantee"] = r.nerve_guarantee;
  return dump(out);
}

KinkSequence parse_kinks(const CubeSet& x, std::string_view text) {
  const Json doc = load(text);
  const Json& points = array_of(field(doc, "points", "kinks"), "points");
  KinkSequence s;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const std::string where = "points[" + std::to_string(k) + "]";
    Point p{cube_ref(x, field(points[k], "cube", where), where + ".cube"),
            as_coords(field(points[k], "coords", where), where + ".coords")};
    s.points.push_back(canonicalize(x, std::move(p)));
  }
  return s;
}

std::string write_kinks(const CubeSet& x, const KinkSequence& s) {
  auto points = OrderedJson::array();
  for (const auto& p : s.points) {
    OrderedJson entry;
    entry["cube"] = x.id(p.cube);
    entry["coords"] = coords_json(p.coords);
    points.push_back(std::move(entry));
  }
  OrderedJson out;
  out["points"] = std::move(points);
  return dump(out);
}

}  // namespace hda
