// coxroll: command-line front end.
//
// Exit status: 0 success, 1 domain/input error (or a failed check), 2 usage error.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "coxroll/andreev.hpp"
#include "coxroll/develop.hpp"
#include "coxroll/io/json.hpp"
#include "coxroll/io/svg.hpp"
#include "coxroll/reduction.hpp"
#include "coxroll/rolling.hpp"

using namespace coxroll;
using io::Json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CoxeterMatrix load_scheme(const std::string& path) {
  try {
    return parse_scheme(read_file(path));
  } catch (const ParseError& e) {
    throw IoError(path + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot write " + out_path);
  out << text;
}

std::string num(double x) {
  std::ostringstream s;
  s << std::setprecision(10) << io::round12(x);
  return s.str();
}

std::string degrees(double x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << x * 180.0 / std::numbers::pi;
  return s.str();
}

double root_tolerance() {
  const char* env = std::getenv("COXROLL_TOLERANCE");
  if (!env || !*env) return kRootTolerance;
  char* end = nullptr;
  double t = std::strtod(env, &end);
  if (*end != '\0' || !(t > 0)) throw UsageError(std::string("COXROLL_TOLERANCE is not a positive number: ") + env);
  return t;
}

int to_index(int one_based, int rank, const char* what) {
  if (one_based < 1 || one_based > rank)
    throw UsageError(std::string(what) + " must be between 1 and " + std::to_string(rank));
  return one_based - 1;
}

// ---------------------------------------------------------------------------

struct Options {
  std::string input;
  std::string output;
  std::string format = "text";
  std::vector<int> mirrors;
  int second_mirror = 1;
  bool check_table = false;
  bool full = false;
  bool two_stage = false;
  int max_nodes = 64;
  int max_tiles = kDefaultMaxTiles;
  int jobs = 1;
};

int run_classify(const Options& o) {
  CoxeterMatrix m = load_scheme(o.input);
  CoxeterType t = classify(m);
  if (o.format == "json") {
    Signature s = signature(m.cosine_matrix());
    Json comps = Json::array();
    for (const auto& cc : classify_components(m))
      comps.push_back({{"nodes", io::one_based(cc.nodes)}, {"type", cc.type.name()}});
    Json j{{"type", t.str()},
           {"finite", t.finite()},
           {"signature", {s.positive, s.negative, s.zero}},
           {"components", comps}};
    emit(j.dump(2) + "\n", o.output);
  } else {
    emit(t.str() + "\n", o.output);
  }
  return 0;
}

int run_reduce(const Options& o) {
  CoxeterMatrix m = load_scheme(o.input);
  if (o.mirrors.size() != 1) throw UsageError("reduce takes exactly one --mirror");
  const int k = to_index(o.mirrors[0], m.rank(), "--mirror");
  CoxeterType t = classify(m);
  if (!t.finite()) throw NotFinite("the group of " + t.str() + " is infinite");
  RootSystem rs = generate_roots(m, root_tolerance());
  CoxeterType delta = oracle_reduce(m, rs, k);
  ReductionResult table{t, MirrorOrbit::Single, {}};
  bool agree = true;
  if (o.check_table) {
    table = table_reduce_matrix(m, rs, k);
    agree = table.result == delta;
  }
  if (o.format == "json") {
    Json j = io::reduction_json({t, table.orbit, delta});
    if (o.check_table) {
      j["table"] = table.result.str();
      j["table_agrees"] = agree;
    }
    emit(j.dump(2) + "\n", o.output);
  } else {
    std::string line = delta.str();
    if (o.check_table) line += agree ? ", table: OK" : ", table: " + table.result.str() + " (MISMATCH)";
    emit(line + "\n", o.output);
  }
  return agree ? 0 : 1;
}

int run_roll(const Options& o) {
  CoxeterMatrix m = load_scheme(o.input);
  if (o.mirrors.size() != 1) throw UsageError("roll takes exactly one --mirror");
  const int k = to_index(o.mirrors[0], m.rank(), "--mirror");
  if (o.max_nodes < 1) throw UsageError("--max-nodes must be positive");
  auto comps = components(rolling_scheme(m));
  const Component& c = component_of(comps, k);
  DevelopmentTree t = unfold(c, k, o.max_nodes);
  if (o.format == "text") {
    std::ostringstream s;
    s << "component " << io::one_based(c.facets).dump() << ", cycle rank " << c.cycle_rank << "\n";
    s << t.nodes.size() << " nodes, " << (t.complete ? "complete" : "truncated") << "\n";
    for (const auto& n : t.nodes) {
      s << n.id << " facet " << n.facet + 1 << " depth " << n.depth;
      if (n.parent >= 0) s << " parent " << n.parent;
      s << "\n";
    }
    emit(s.str(), o.output);
  } else {
    Json j = io::tree_json(t);
    j["mirror"] = k + 1;
    j["cycle_rank"] = c.cycle_rank;
    emit(j.dump(2) + "\n", o.output);
  }
  return 0;
}

std::string describe_chamber(const GeometricChamber& ch) {
  std::ostringstream s;
  s << to_string(ch.space.kind) << " chamber in dimension " << ch.space.dim << ": " << ch.facet_count() << " facets, "
    << ch.vertex_count() << " vertices, labels " << io::labels_json(ch.labels).dump() << "\n";
  return s.str();
}

std::string describe_figure(const DevelopedFigure& df) {
  std::ostringstream s;
  s << "mirror " << df.mirror_facet + 1 << ": " << to_string(df.chart.mirror.kind) << " of dimension "
    << df.dimension() << ", " << df.tiles.size() << " tiles, " << df.walls.size() << " wall pieces, "
    << (df.truncated ? "truncated" : "complete") << "\n";
  if (df.truncated || df.full) return s.str();
  if (df.dimension() <= 2) {
    PolygonMeasure pm = measure_polygon(df);
    s << "  walls " << pm.wall_count << ", length " << num(pm.length) << "\n";
    if (df.dimension() == 2) {
      s << "  sides";
      for (double x : pm.sides) s << " " << num(x);
      s << "\n  angles (deg)";
      for (double a : pm.angles) s << " " << degrees(a);
      s << "\n";
      for (const auto& bp : boundary_points(df)) {
        try {
          MeetingVariant mv = classify_meeting(df, bp.point);
          s << "  boundary point at chamber vertex " << bp.chamber_vertex + 1 << ": meeting " << mv.tag << " ("
            << mv.vertex_type.str() << "), incidence (deg)";
          for (double a : mv.incidence) s << " " << degrees(a);
          s << "\n";
        } catch (const DomainError&) {
        }
      }
    }
  } else {
    s << "  developed " << describe_chamber(rechamber(df));
  }
  return s.str();
}

// One development per requested mirror, computed on `jobs` threads and
// reported in the order the mirrors were given.
int run_develop(const Options& o) {
  CoxeterMatrix m = load_scheme(o.input);
  if (o.mirrors.empty()) throw UsageError("develop needs --mirror");
  if (o.format == "svg" && o.mirrors.size() != 1) throw UsageError("svg output takes exactly one --mirror");
  if (o.two_stage && o.full) throw UsageError("--two-stage and --full are exclusive");
  if (o.max_tiles < 1 || o.jobs < 1) throw UsageError("--max-tiles and --jobs must be positive");
  std::vector<int> ks;
  for (int k : o.mirrors) ks.push_back(to_index(k, m.rank(), "--mirror"));
  GeometricChamber ch = realize_simplex(m);

  struct Outcome {
    std::string text;
    Json json;
    std::string error;
    bool domain = true;
  };
  std::vector<Outcome> results(ks.size());
  auto work = [&](size_t i) {
    Outcome& r = results[i];
    try {
      if (o.two_stage) {
        TwoStageResult t;
        t.simplex = ch;
        t.first = roll_onto_mirror(ch, ks[i], o.max_tiles);
        t.middle = rechamber(t.first);
        const int second = to_index(o.second_mirror, t.middle.facet_count(), "--second-mirror");
        t.second = roll_onto_mirror(t.middle, second, o.max_tiles);
        if (o.format == "svg") r.text = io::figure_svg(t.second);
        r.text += o.format == "text" ? "stage 1 " + describe_figure(t.first) + "middle " + describe_chamber(t.middle) +
                                           "stage 2 " + describe_figure(t.second)
                                     : "";
        r.json = {{"first", io::figure_json(t.first)}, {"middle", io::chamber_json(t.middle)},
                  {"second", io::figure_json(t.second)}};
        if (!t.second.truncated && t.second.dimension() <= 2)
          r.json["second"]["measure"] = io::measure_json(measure_polygon(t.second));
      } else {
        DevelopedFigure df = o.full ? full_development(ch, ks[i], o.max_tiles) : roll_onto_mirror(ch, ks[i], o.max_tiles);
        if (o.format == "svg") r.text = io::figure_svg(df);
        if (o.format == "text") r.text = describe_figure(df);
        r.json = io::figure_json(df);
        if (!df.truncated && !df.full && df.dimension() <= 2) r.json["measure"] = io::measure_json(measure_polygon(df));
      }
    } catch (const UsageError& e) {
      r.error = e.what();
      r.domain = false;
    } catch (const Error& e) {
      r.error = e.what();
    }
  };
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  const size_t workers = std::min<size_t>(static_cast<size_t>(o.jobs), ks.size());
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (size_t i = next++; i < ks.size(); i = next++) work(i);
    });
  for (auto& t : pool) t.join();

  for (const auto& r : results) {
    if (r.error.empty()) continue;
    if (!r.domain) throw UsageError(r.error);
    throw DomainError(r.error);
  }
  if (o.format == "json") {
    Json j;
    if (results.size() == 1) {
      j = results[0].json;
    } else {
      j = Json::array();
      for (const auto& r : results) j.push_back(r.json);
    }
    Json top{{"chamber", io::chamber_json(ch)}, {"development", j}};
    emit(top.dump(2) + "\n", o.output);
  } else {
    std::string all = o.format == "text" ? describe_chamber(ch) : "";
    for (const auto& r : results) all += r.text;
    emit(all, o.output);
  }
  return 0;
}

int run_andreev(const Options& o) {
  PlanarAngleMap pm;
  try {
    pm = parse_map(read_file(o.input));
  } catch (const ParseError& e) {
    throw IoError(o.input + ": " + e.what());
  }
  AndreevVerdict v = check_all(pm);
  if (o.format == "json") {
    emit(io::verdict_json(v).dump(2) + "\n", o.output);
  } else {
    std::ostringstream s;
    s << (v.pass ? "PASS" : "FAIL") << "\n";
    if (v.simplex_warning) s << "warning: 4 or fewer vertices; simplices fall outside the theorem\n";
    for (const auto& x : v.violations) {
      s << x.condition << ":";
      for (int w : x.witness) s << " " << w + 1;
      s << " (" << x.detail << ")\n";
    }
    emit(s.str(), o.output);
  }
  return v.pass ? 0 : 1;
}

int run_equipment(const Options& o) {
  Equipment eq = equipment_of(load_scheme(o.input));
  if (o.format == "json") {
    emit(io::equipment_json(eq).dump(2) + "\n", o.output);
  } else {
    std::ostringstream s;
    for (const auto& st : eq.strata) s << io::one_based(st.generators).dump() << " " << st.type.str() << "\n";
    emit(s.str(), o.output);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Developments of Coxeter polyhedra by rolling along mirrors"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> text_json{"text", "json"};

  auto common = [&](CLI::App* sub, const std::string& what, const std::vector<std::string>& formats,
                    const std::string& default_format) {
    sub->add_option("input", o.input, what)->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--output", o.output, "Write to this file instead of stdout");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
    sub->preparse_callback([&o, default_format](size_t) { o.format = default_format; });
  };

  auto* classify_cmd = app.add_subcommand("classify", "Type of a Coxeter scheme");
  common(classify_cmd, "Scheme file", text_json, "text");

  auto* reduce_cmd = app.add_subcommand("reduce", "Type of the reflection group induced on a mirror");
  common(reduce_cmd, "Scheme file", text_json, "text");
  reduce_cmd->add_option("--mirror", o.mirrors, "Generator whose mirror is reduced (1-based)")->required()->expected(1);
  reduce_cmd->add_flag("--check-table", o.check_table, "Compare with the reduction table");

  auto* roll_cmd = app.add_subcommand("roll", "Development tree of a mirror's rolling component");
  common(roll_cmd, "Scheme file", text_json, "json");
  roll_cmd->add_option("--mirror", o.mirrors, "Generator to roll on (1-based)")->required()->expected(1);
  roll_cmd->add_option("--max-nodes", o.max_nodes, "Node cap for cyclic components")->capture_default_str();

  auto* develop_cmd = app.add_subcommand("develop", "Geometric development of a simplex onto a mirror");
  common(develop_cmd, "Scheme file", {"text", "json", "svg"}, "text");
  develop_cmd->add_option("--mirror", o.mirrors, "Facet(s) to roll on (1-based)")->required();
  develop_cmd->add_flag("--full", o.full, "Tile the whole mirror");
  develop_cmd->add_flag("--two-stage", o.two_stage, "Develop, re-chamber, and develop again");
  develop_cmd->add_option("--second-mirror", o.second_mirror, "Facet of the developed chamber for stage 2 (1-based)")
      ->capture_default_str();
  develop_cmd->add_option("--max-tiles", o.max_tiles, "Tile cap")->capture_default_str();
  develop_cmd->add_option("--jobs", o.jobs, "Threads for several mirrors")->capture_default_str();

  auto* andreev_cmd = app.add_subcommand("andreev", "Check Andreev's conditions on a labeled planar map");
  common(andreev_cmd, "Map file", text_json, "text");

  auto* equipment_cmd = app.add_subcommand("equipment", "Finite strata of a scheme and their types");
  common(equipment_cmd, "Scheme file", text_json, "text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*classify_cmd) return run_classify(o);
    if (*reduce_cmd) return run_reduce(o);
    if (*roll_cmd) return run_roll(o);
    if (*develop_cmd) return run_develop(o);
    if (*andreev_cmd) return run_andreev(o);
    if (*equipment_cmd) return run_equipment(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
