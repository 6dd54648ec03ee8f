#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "hda/chains.hpp"
#include "hda/error.hpp"
#include "hda/generators.hpp"
#include "hda/io.hpp"
#include "hda/nerve.hpp"
#include "hda/pv.hpp"
#include "hda/taming.hpp"

namespace {

using namespace hda;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
}

std::vector<long> parse_longs(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw FormatError("bad integer list '" + text + "'");
    }
  }
  return out;
}

CubeSetDocument generate(const std::string& kind, int n, const std::vector<std::string>& omit, int grid_dim) {
  auto with_ends = [](CubeSet x, const std::string& a, const std::string& b) {
    CubeSetDocument doc{std::move(x), std::nullopt, std::nullopt};
    doc.start = doc.cubes.index(a);
    doc.end = doc.cubes.index(b);
    return doc;
  };
  if (kind == "full-cube" || kind == "boundary-cube") {
    auto x = kind == "full-cube" ? full_cube(n) : boundary_cube(n);
    return with_ends(std::move(x), "v" + std::string(n, '0'), "v" + std::string(n, '1'));
  }
  if (kind == "z-complex") return with_ends(z_complex(n), "c0", "c0");
  if (kind == "q-complex") return with_ends(q_complex(n), "c0_0", "c0_" + std::to_string(n));
  if (kind == "glued-squares") return with_ends(glued_squares(), "v00", "v11");
  if (kind == "grid") {
    std::vector<long> extent(static_cast<std::size_t>(grid_dim), n);
    std::vector<std::vector<long>> omitted;
    for (const auto& o : omit) omitted.push_back(parse_longs(o));
    std::string lo = "v", hi = "v";
    for (int i = 0; i < grid_dim; ++i) {
      lo += (i ? ",0" : "0");
      hi += (i ? "," : "") + std::to_string(n);
    }
    return with_ends(grid(extent, omitted), lo, hi);
  }
  throw DomainError("unknown generator '" + kind + "'");
}

CubeSet load_cubes(const std::string& path) {
  if (path.empty()) throw FormatError("--cubes is required for this command");
  return parse_cubeset(read_input(path)).cubes;
}

std::string check_report(const CubeSet& x, bool& ok) {
  const auto violations = validate(x);
  nlohmann::ordered_json out;
  out["cubes"] = x.size();
  out["valid"] = violations.empty();
  out["violations"] = nlohmann::ordered_json::array();
  for (const auto& v : violations) out["violations"].push_back(v.message);
  if (violations.empty()) {
    out["proper"] = is_proper(x);
    out["non_self_linked"] = is_non_self_linked(x);
  }
  ok = violations.empty();
  return out.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directed paths, cube chains and schedule homology for higher dimensional automata"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output;
  app.add_option("-o,--output", output, "Write the result to this file instead of stdout");

  std::string input;
  std::string cubes_file;

  auto* check = app.add_subcommand("check", "Validate a cube set and report properness");
  check->add_option("cubeset", input, "Cube set document (stdin when omitted)");

  std::string kind;
  int gen_n = 0;
  int grid_dim = 2;
  std::vector<std::string> omit;
  auto* gen = app.add_subcommand("gen", "Generate a cube set");
  gen->add_option("kind", kind, "full-cube | boundary-cube | z-complex | q-complex | glued-squares | grid")
      ->required();
  gen->add_option("n", gen_n, "Size parameter")->check(CLI::NonNegativeNumber);
  gen->add_option("--grid-dim", grid_dim, "Dimension of the grid")->check(CLI::PositiveNumber);
  gen->add_option("--omit", omit, "Grid cell to leave out, as a comma separated bottom corner");

  std::string from_id, to_id;
  int max_len = -1;
  auto* chains = app.add_subcommand("chains", "Enumerate the cube-chain refinement poset");
  chains->add_option("cubeset", input, "Cube set document (stdin when omitted)");
  chains->add_option("--from", from_id, "Start vertex (default: the document's start)");
  chains->add_option("--to", to_id, "End vertex (default: the document's end)");
  chains->add_option("--max-len", max_len, "Largest chain length to enumerate")->required();

  bool order = false, covering = false;
  auto* nerve = app.add_subcommand("nerve", "Build a simplicial complex from a poset");
  nerve->add_option("poset", input, "Poset document (stdin when omitted)");
  auto* order_flag = nerve->add_flag("--order", order, "Order complex");
  nerve->add_flag("--covering", covering, "Covering nerve")->excludes(order_flag);

  std::size_t budget = kDefaultSimplexBudget;
  auto* hom = app.add_subcommand("homology", "Integer homology of a complex");
  hom->add_option("complex", input, "Complex document (stdin when omitted)");
  hom->add_option("--budget", budget, "Largest number of simplices to build");

  std::string flow = "rational";
  int samples = kDefaultSamples;
  auto* strict = app.add_subcommand("strictify", "Make a path strict with the flow");
  strict->add_option("path", input, "Path document (stdin when omitted)");
  strict->add_option("--cubes", cubes_file, "Cube set document")->required();
  strict->add_option("--flow", flow, "paper | rational")->check(CLI::IsMember({"paper", "rational"}));
  strict->add_option("--samples", samples, "Samples per segment")->check(CLI::PositiveNumber);

  std::string chain_file;
  auto* tame_cmd = app.add_subcommand("tame", "Tame a strict path along a cube chain");
  tame_cmd->add_option("path", input, "Path document (stdin when omitted)");
  tame_cmd->add_option("--cubes", cubes_file, "Cube set document")->required();
  tame_cmd->add_option("--chain", chain_file, "Chain document (default: the finest chain of the path)");

  bool keep_length = false;
  auto* natural = app.add_subcommand("naturalize", "Reparametrize by l1 arc length");
  natural->add_option("path", input, "Path document (stdin when omitted)");
  natural->add_option("--cubes", cubes_file, "Cube set document")->required();
  natural->add_flag("--length", keep_length, "Keep the domain [0, length] instead of [0, 1]");

  auto* seq = app.add_subcommand("seq", "Convert between paths and kink sequences");
  seq->require_subcommand(1);
  auto* seq_to = seq->add_subcommand("to", "Path to kink sequence (naturalized first when needed)");
  seq_to->add_option("path", input, "Path document (stdin when omitted)");
  seq_to->add_option("--cubes", cubes_file, "Cube set document")->required();
  auto* seq_from = seq->add_subcommand("from", "Kink sequence to path");
  seq_from->add_option("kinks", input, "Kink document (stdin when omitted)");
  seq_from->add_option("--cubes", cubes_file, "Cube set document")->required();

  auto* pv = app.add_subcommand("pv", "PV programs");
  pv->require_subcommand(1);
  auto* pv_build = pv->add_subcommand("build", "Build the state space of a PV program");
  pv_build->add_option("file", input, "PV program (stdin when omitted)");

  auto* finest = app.add_subcommand("finest", "Finest cube chain of a strict path");
  finest->add_option("path", input, "Path document (stdin when omitted)");
  finest->add_option("--cubes", cubes_file, "Cube set document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) {
      const auto doc = parse_cubeset(read_input(input), false);
      bool ok = true;
      write_output(output, check_report(doc.cubes, ok));
      return ok ? 0 : 1;
    }
    if (*gen) {
      const auto doc = generate(kind, gen_n, omit, grid_dim);
      write_output(output, write_cubeset(doc.cubes, doc.start, doc.end));
    } else if (*chains) {
      const auto doc = parse_cubeset(read_input(input));
      const CubeSet& x = doc.cubes;
      if (from_id.empty() && !doc.start) throw DomainError("no --from given and the cube set has no start");
      if (to_id.empty() && !doc.end) throw DomainError("no --to given and the cube set has no end");
      const CubeIndex from = from_id.empty() ? *doc.start : x.index(from_id);
      const CubeIndex to = to_id.empty() ? *doc.end : x.index(to_id);
      write_output(output, write_poset(to_document(x, enumerate_chains(x, from, to, max_len))));
    } else if (*nerve) {
      if (!order && !covering) throw FormatError("choose --order or --covering");
      const auto doc = parse_poset(read_input(input));
      auto k = order ? order_complex(doc.chains.size(), doc.covers) : covering_nerve(doc.chains.size(), doc.covers);
      k.labels = poset_labels(doc);
      k.approximate = doc.truncated;
      k.nerve_guarantee = doc.nerve_guarantee;
      write_output(output, write_complex(k));
    } else if (*hom) {
      write_output(output, write_homology(homology_report(parse_complex(read_input(input)), budget)));
    } else if (*strict) {
      const auto x = load_cubes(cubes_file);
      const auto p = parse_path(x, read_input(input));
      const auto kind_of_flow = flow == "paper" ? FlowKind::Paper : FlowKind::Rational;
      write_output(output, write_path(x, strictify(x, p, kind_of_flow, samples)));
    } else if (*tame_cmd) {
      const auto x = load_cubes(cubes_file);
      const auto p = parse_path(x, read_input(input));
      const auto c = chain_file.empty() ? finest_chain(x, p) : parse_chain(x, read_input(chain_file));
      write_output(output, write_path(x, tame(x, p, c)));
    } else if (*natural) {
      const auto x = load_cubes(cubes_file);
      write_output(output, write_path(x, naturalize(x, parse_path(x, read_input(input)), !keep_length)));
    } else if (*seq_to) {
      const auto x = load_cubes(cubes_file);
      const auto p = parse_path(x, read_input(input));
      write_output(output, write_kinks(x, path_to_kinks(x, is_natural(x, p) ? p : naturalize(x, p, false))));
    } else if (*seq_from) {
      const auto x = load_cubes(cubes_file);
      write_output(output, write_path(x, kinks_to_path(x, parse_kinks(x, read_input(input)))));
    } else if (*pv_build) {
      const auto model = pv_to_euclidean(parse_pv(read_input(input)));
      write_output(output, write_cubeset(model.cubes, model.start, model.end));
    } else if (*finest) {
      const auto x = load_cubes(cubes_file);
      write_output(output, write_chain(x, finest_chain(x, parse_path(x, read_input(input)))));
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
