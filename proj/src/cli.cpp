#include "sparsemaps/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sparsemaps/decompose.hpp"
#include "sparsemaps/defect_table.hpp"
#include "sparsemaps/enumerate.hpp"
#include "sparsemaps/oracle.hpp"
#include "sparsemaps/sample.hpp"
#include "sparsemaps/stats.hpp"
#include "sparsemaps/suites.hpp"

#ifndef SPARSEMAPS_VERSION
#define SPARSEMAPS_VERSION "0.0.0"
#endif

namespace sparsemaps {

namespace {

using json = nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Kernels up to this many edges are filled in from the exhaustive census.
constexpr std::uint64_t oracle_fill_edges = 5;
constexpr std::uint64_t default_table_samples = 2000;

json config_object(const RunConfig& c) {
  json j;
  j["subcommand"] = c.subcommand;
  j["n"] = c.n;
  j["faces"] = c.faces;
  j["genus"] = c.genus;
  j["s"] = c.s;
  j["count"] = c.count;
  j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  j["mode"] = c.mode;
  j["backend"] = c.backend;
  j["table"] = c.table;
  j["input"] = c.input;
  j["output"] = c.output;
  j["format"] = c.format;
  j["suite"] = c.suite;
  j["samples"] = c.samples;
  j["table_samples"] = c.table_samples;
  j["oracle_edges"] = c.oracle_edges;
  j["threads"] = c.threads;
  return j;
}

json artifact_header(const RunConfig& c) {
  json j;
  j["tool"] = "sparsemaps";
  j["version"] = tool_version();
  j["config"] = config_object(c);
  return j;
}

std::string provenance_line(const RunConfig& c) {
  return "# sparsemaps " + tool_version() + " config=" + config_json(c) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes to the output path when set, otherwise to `out`.
void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.output, std::ios::binary);
  if (!file) throw UsageError("cannot write " + c.output);
  file << text;
}

std::uint64_t require_seed(const RunConfig& c) {
  if (!c.seed) throw UsageError(c.subcommand + " needs --seed");
  return *c.seed;
}

Mode parse_mode(const std::string& text) {
  if (text == "exact") return Mode::Exact;
  if (text == "approximate") return Mode::Approximate;
  throw UsageError("mode must be exact or approximate");
}

Backend parse_backend(const std::string& text) {
  if (text == "auto") return Backend::Auto;
  if (text == "exact") return Backend::Exact;
  if (text == "log") return Backend::Log;
  throw UsageError("backend must be auto, exact or log");
}

void check_signature(const RunConfig& c) {
  if (c.n == 0) throw UsageError("--n must be positive");
  if (c.faces == 0) throw UsageError("--faces must be positive");
  if (c.faces + 2 * c.genus > c.n + 1) throw UsageError("no map has these edges, faces and genus");
}

bool needs_table(std::uint64_t faces, std::uint64_t genus) { return faces + 2 * genus > 2; }

// Loads the table (or starts empty), then adds closed forms and census
// entries for small kernels.
DefectTable prepare_table(const RunConfig& c, bool require_exact) {
  DefectTable table;
  if (!c.table.empty()) table = DefectTable::load(c.table);
  if (!needs_table(c.faces, c.genus)) return table;
  table.add_closed_form(c.faces, c.genus);
  const std::uint64_t s = c.faces + 2 * c.genus;
  std::uint64_t largest = 0;
  for (auto d : table.missing(c.n, c.faces, c.genus, require_exact)) largest = std::max(largest, 3 * s - d - 6);
  if (largest > 0 && largest <= oracle_fill_edges) {
    OracleOptions options;
    options.collect_kernels = false;
    DefectTable census = oracle_defect_table(oracle_enumerate(largest, options));
    for (const auto& [key, entry] : census.entries()) table.set(key, entry);
  }
  return table;
}

std::string provenance_list(const std::set<std::string>& names) {
  std::string text;
  for (const auto& p : names) text += (text.empty() ? "" : "+") + p;
  return text;
}

int run_count(const RunConfig& c, std::ostream& out) {
  check_signature(c);
  const Backend backend = parse_backend(c.backend);
  DefectTable table = prepare_table(c, backend == Backend::Exact);
  EnumValue total = total_count(c.n, c.faces, c.genus, table, backend);
  if (c.format.empty() || c.format == "text") {
    emit(c, out, total.to_string() + "\n");
    return exit_ok;
  }
  if (c.format != "csv") throw UsageError("count formats: text, csv");
  std::ostringstream csv;
  csv << std::setprecision(12);
  csv << provenance_line(c);
  csv << "n,faces,genus,defect,kernel_edges,kernel_count,log_phi_sum,share,value,relative_error,provenance\n";
  const double log_total = total.is_zero() ? -INFINITY : total.log();
  std::set<std::string> used;
  if (needs_table(c.faces, c.genus)) {
    const std::uint64_t s = c.faces + 2 * c.genus;
    for (auto d : relevant_defects(c.n, s)) {
      const DefectEntry* e = table.find(c.faces, c.genus, d);
      const std::uint64_t k = 3 * s - d - 6;
      EnumValue kernels = e->value();
      EnumValue ph = phi_sum(c.n, k, Backend::Log);
      double share = kernels.is_zero() ? 0.0 : std::exp(e->log() + ph.log() - log_total);
      if (!kernels.is_zero()) used.insert(to_string(e->provenance));
      csv << c.n << ',' << c.faces << ',' << c.genus << ',' << d << ',' << k << ',' << kernels.to_string() << ','
          << ph.log() << ',' << share << ",," << (e->is_exact() ? 0.0 : e->log_stderr) << ','
          << to_string(e->provenance) << '\n';
    }
  } else {
    used.insert(to_string(Provenance::ClosedForm));
  }
  csv << c.n << ',' << c.faces << ',' << c.genus << ",total,,,,1," << total.to_string() << ','
      << (total.is_exact() ? 0.0 : total.relative_error()) << ',' << provenance_list(used) << '\n';
  emit(c, out, csv.str());
  return exit_ok;
}

// Core edges of a map by iterated leaf removal, as a per-dart mask.
std::vector<bool> core_dart_mask(const RootedMap& map) {
  std::vector<std::uint32_t> vertex_of;
  std::size_t v = cycle_labels(map.sigma(), vertex_of);
  std::vector<std::uint64_t> degree(v, 0);
  for (std::size_t d = 0; d < map.dart_count(); ++d) ++degree[vertex_of[d]];
  std::vector<std::vector<Dart>> darts_at(v);
  for (Dart d = 0; d < map.dart_count(); ++d) darts_at[vertex_of[d]].push_back(d);
  std::vector<bool> alive(map.dart_count(), true);
  std::vector<std::uint32_t> leaves;
  for (std::uint32_t i = 0; i < v; ++i)
    if (degree[i] == 1) leaves.push_back(i);
  while (!leaves.empty()) {
    std::uint32_t leaf = leaves.back();
    leaves.pop_back();
    if (degree[leaf] != 1) continue;
    for (Dart d : darts_at[leaf]) {
      if (!alive[d]) continue;
      Dart other = map.alpha(d);
      alive[d] = alive[other] = false;
      degree[leaf] = 0;
      if (--degree[vertex_of[other]] == 1) leaves.push_back(vertex_of[other]);
      break;
    }
  }
  return alive;
}

// Graphviz rendering with core edges in red and the root edge bold.
std::string core_dot(const RootedMap& map, std::size_t index) {
  std::vector<std::uint32_t> vertex_of;
  std::size_t v = cycle_labels(map.sigma(), vertex_of);
  auto core = core_dart_mask(map);
  std::ostringstream dot;
  dot << "graph sample" << index << " {\n";
  for (std::size_t i = 0; i < v; ++i) dot << "  v" << i << ";\n";
  for (Dart d = 0; d < map.dart_count(); ++d) {
    Dart e = map.alpha(d);
    if (d > e) continue;
    dot << "  v" << vertex_of[d] << " -- v" << vertex_of[e];
    std::vector<std::string> attrs;
    if (core[d]) attrs.push_back("color=red");
    if (d == map.root() || e == map.root()) attrs.push_back("penwidth=3");
    if (!attrs.empty()) {
      dot << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) dot << (i ? ", " : "") << attrs[i];
      dot << "]";
    }
    dot << ";\n";
  }
  dot << "}\n";
  return dot.str();
}

struct Drawn {
  std::optional<Decomposition> decomposition;
  std::optional<RootedMap> map;
};

// Runs job(i) for i < count on a bounded pool; results land by index.
template <typename Job>
void parallel_for(std::uint64_t count, std::uint64_t threads, Job job) {
  threads = std::max<std::uint64_t>(1, std::min(threads, count));
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::uint64_t i = next++; i < count; i = next++) {
      try {
        job(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::uint64_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

struct SampleRow {
  EulerSignature signature;
  std::uint64_t defect = 0, kernel_edges = 0, core_edges = 0, loops = 0, root_degree = 0;
};

SampleRow describe(const RootedMap& map, const std::optional<Decomposition>& dec) {
  SampleRow row;
  row.signature = euler_signature(map);
  row.loops = loop_count(map);
  std::vector<std::uint32_t> vertex_of;
  cycle_labels(map.sigma(), vertex_of);
  row.root_degree = vertex_degrees(map)[vertex_of[map.root()]];
  if (dec) {
    row.core_edges = dec->core_edges();
    row.defect = dec->defect();
    row.kernel_edges = dec->kernel ? dec->kernel->edge_count() : 0;
  }
  return row;
}

std::optional<Decomposition> try_decompose(const RootedMap& map) {
  try {
    return decompose(map);
  } catch (const DecomposeError& e) {
    if (e.kind() == DecomposeError::Kind::TreeMap) return std::nullopt;
    throw;
  }
}

int run_sample(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_signature(c);
  const std::uint64_t seed = require_seed(c);
  const Mode mode = parse_mode(c.mode);
  const std::string format = c.format.empty() ? "map" : c.format;
  if (format != "map" && format != "decomposition" && format != "csv" && format != "dot")
    throw UsageError("sample formats: map, decomposition, csv, dot");
  if (format == "decomposition" && !needs_table(c.faces, c.genus) && c.faces == 1)
    throw UsageError("plane trees have no decomposition");
  DefectTable table = prepare_table(c, mode == Mode::Exact);
  if (mode == Mode::Approximate && c.faces == 1 && needs_table(c.faces, c.genus) &&
      !table.missing(c.n, c.faces, c.genus, false).empty()) {
    Rng table_rng(seed, 0);
    const std::uint64_t budget = c.table_samples ? c.table_samples : default_table_samples;
    err << "estimating defect weights from " << budget << " trivalent samples\n";
    extend_unicellular_estimates(table, c.n, c.genus, budget, table_rng);
  }
  MapSampler sampler(c.n, c.faces, c.genus, mode, table);
  std::vector<Drawn> drawn(c.count);
  parallel_for(c.count, c.threads, [&](std::uint64_t i) {
    Rng rng(seed, i + 1);
    if (sampler.tree_case()) {
      drawn[i].map = sampler.sample(rng);
      return;
    }
    drawn[i].decomposition = sampler.sample_decomposition(rng);
    if (format != "decomposition") drawn[i].map = recompose(*drawn[i].decomposition, c.n);
  });

  std::ostringstream text;
  if (format == "csv") {
    text << provenance_line(c);
    text << "index,edges,faces,genus,vertices,defect,kernel_edges,core_edges,loops,root_degree\n";
    for (std::size_t i = 0; i < drawn.size(); ++i) {
      SampleRow row = describe(*drawn[i].map, drawn[i].decomposition);
      text << i << ',' << row.signature.edges << ',' << row.signature.faces << ',' << row.signature.genus << ','
           << row.signature.vertices << ',' << row.defect << ',' << row.kernel_edges << ',' << row.core_edges << ','
           << row.loops << ',' << row.root_degree << '\n';
    }
  } else if (format == "dot") {
    text << "// sparsemaps " << tool_version() << " config=" << config_json(c) << "\n";
    for (std::size_t i = 0; i < drawn.size(); ++i) text << core_dot(*drawn[i].map, i);
  } else {
    json doc = artifact_header(c);
    json samples = json::array();
    for (const auto& d : drawn)
      samples.push_back(json::parse(format == "map" ? serialize(*d.map) : decomposition_to_json(*d.decomposition)));
    doc["samples"] = std::move(samples);
    text << doc.dump() << "\n";
  }
  emit(c, out, text.str());
  return exit_ok;
}

// Map documents and decomposition documents from a file: a bare document or
// an artifact with a "samples" array.
std::vector<RootedMap> load_maps(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
  std::vector<json> items;
  if (doc.contains("samples"))
    items.assign(doc["samples"].begin(), doc["samples"].end());
  else
    items.push_back(doc);
  std::vector<RootedMap> maps;
  for (const auto& item : items) {
    if (item.contains("alpha")) {
      maps.push_back(deserialize(item.dump()));
    } else {
      Decomposition dec = decomposition_from_json(item.dump());
      maps.push_back(recompose(dec, dec.forest.edges()));
    }
  }
  return maps;
}

int run_decompose(const RunConfig& c, std::ostream& out) {
  if (c.input.empty()) throw UsageError("decompose needs --input");
  auto maps = load_maps(c.input);
  json doc = artifact_header(c);
  json decs = json::array();
  for (const auto& map : maps) decs.push_back(json::parse(decomposition_to_json(decompose(map))));
  doc["samples"] = std::move(decs);
  emit(c, out, doc.dump() + "\n");
  return exit_ok;
}

int run_stats(const RunConfig& c, std::ostream& out) {
  if (c.input.empty()) throw UsageError("stats needs --input");
  auto maps = load_maps(c.input);
  std::map<std::string, std::vector<double>> columns;
  const std::vector<std::string> order = {"edges",        "faces",      "genus", "vertices",   "defect",
                                          "kernel_edges", "core_edges", "loops", "root_degree"};
  for (const auto& map : maps) {
    SampleRow row = describe(map, try_decompose(map));
    const std::vector<std::uint64_t> values = {row.signature.edges, row.signature.faces, row.signature.genus,
                                               row.signature.vertices, row.defect, row.kernel_edges,
                                               row.core_edges, row.loops, row.root_degree};
    for (std::size_t i = 0; i < order.size(); ++i) columns[order[i]].push_back(static_cast<double>(values[i]));
  }
  std::ostringstream csv;
  csv << std::setprecision(10);
  csv << provenance_line(c);
  csv << "quantity,count,mean,variance,min,max\n";
  for (const auto& name : order) {
    const auto& xs = columns[name];
    if (xs.empty()) continue;
    Moments m = moments(xs);
    auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    csv << name << ',' << xs.size() << ',' << m.mean << ',' << m.variance << ',' << *lo << ',' << *hi << '\n';
  }
  emit(c, out, csv.str());
  return exit_ok;
}

std::vector<std::string> selected_suites(const std::string& selection) {
  std::vector<std::string> names;
  if (selection == "all" || selection == "acceptance") {
    for (const auto& info : suite_catalog())
      if (selection == "all" || info.criterion > 0) names.push_back(info.name);
  } else {
    std::stringstream list(selection);
    for (std::string name; std::getline(list, name, ',');)
      if (!name.empty()) names.push_back(name);
  }
  if (names.empty()) throw UsageError("verify needs --suite");
  return names;
}

int run_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  SuiteConfig sc;
  sc.n = c.n;
  sc.s = c.s;
  sc.faces = c.faces;
  sc.genus = c.genus;
  sc.samples = c.samples;
  sc.seed = require_seed(c);
  sc.table_samples = c.table_samples;
  auto names = selected_suites(c.suite);
  for (const auto& name : names) {
    bool known = std::any_of(suite_catalog().begin(), suite_catalog().end(),
                             [&](const SuiteInfo& info) { return info.name == name; });
    if (!known) throw UsageError("unknown suite " + name);
  }
  std::ostream& summary = c.output.empty() ? err : out;
  std::ostringstream csv;
  csv << provenance_line(c) << "suite," << report_csv_header() << "\n";
  bool failed = false;
  for (const auto& name : names) {
    SuiteResult result = run_suite(name, sc, &summary);
    for (const auto& r : result.reports) {
      csv << name << ',' << report_csv_row(r) << "\n";
      summary << "  " << report_summary(r) << "\n";
    }
    summary << to_string(result.verdict) << " " << name << " (" << std::fixed << std::setprecision(1)
            << result.runtime_seconds << " s)\n";
    summary.unsetf(std::ios::fixed);
    failed = failed || result.verdict == Verdict::Fail;
  }
  emit(c, out, csv.str());
  return failed ? exit_test_failure : exit_ok;
}

int run_table(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.output.empty()) throw UsageError("table needs --output");
  DefectTable table;
  if (!c.table.empty()) table = DefectTable::load(c.table);
  if (c.oracle_edges > 0) {
    if (c.oracle_edges > oracle_budget) throw UnsupportedError("census is limited to " + std::to_string(oracle_budget) + " edges");
    OracleOptions options;
    options.collect_kernels = false;
    err << "enumerating maps with up to " << c.oracle_edges << " edges\n";
    DefectTable census = oracle_defect_table(oracle_enumerate(c.oracle_edges, options));
    for (const auto& [key, entry] : census.entries()) table.set(key, entry);
    for (std::uint64_t f = 1; f <= 2 * c.oracle_edges + 6; ++f)
      for (std::uint64_t g = 0; g <= c.oracle_edges + 2; ++g) table.add_closed_form(f, g);
  }
  if (c.samples > 0) {
    if (c.faces != 1 || c.genus == 0 || c.n == 0)
      throw UsageError("Monte Carlo entries need --faces 1, --genus >= 1 and --n");
    Rng rng(require_seed(c), 0);
    extend_unicellular_estimates(table, c.n, c.genus, c.samples, rng);
  }
  table.save(c.output);
  out << "wrote " << table.size() << " entries\n";
  return exit_ok;
}

}  // namespace

std::string tool_version() { return SPARSEMAPS_VERSION; }

std::string config_json(const RunConfig& config) { return config_object(config).dump(); }

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.threads == 0) throw UsageError("--threads must be positive");
    if (c.subcommand == "count") return run_count(c, out);
    if (c.subcommand == "sample") return run_sample(c, out, err);
    if (c.subcommand == "decompose") return run_decompose(c, out);
    if (c.subcommand == "stats") return run_stats(c, out);
    if (c.subcommand == "verify") return run_verify(c, out, err);
    if (c.subcommand == "table") return run_table(c, out, err);
    throw UsageError("unknown subcommand " + c.subcommand);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return exit_unsupported;
  } catch (const SampleError& e) {
    err << "sample error: " << e.what() << "\n";
    bool usage = e.kind() == SampleError::Kind::DomainError || e.kind() == SampleError::Kind::ParityError;
    return usage ? exit_usage : exit_unsupported;
  } catch (const EnumError& e) {
    err << "count error: " << e.what() << "\n";
    bool usage = e.kind() == EnumError::Kind::DomainError || e.kind() == EnumError::Kind::ParseError;
    return usage ? exit_usage : exit_unsupported;
  } catch (const MapError& e) {
    err << "map error: " << e.what() << "\n";
    return exit_usage;
  } catch (const DecomposeError& e) {
    err << "decompose error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact counting, uniform sampling and statistical checks for rooted maps", "sparsemaps"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);
  RunConfig c;
  std::uint64_t seed = 0;

  auto signature = [&](CLI::App* sub, bool required) {
    auto* n = sub->add_option("--n", c.n, "number of edges");
    if (required) n->required();
    sub->add_option("--faces", c.faces, "number of faces")->capture_default_str();
    sub->add_option("--genus", c.genus, "genus")->capture_default_str();
  };
  auto seeded = [&](CLI::App* sub) { return sub->add_option("--seed", seed, "random seed"); };

  auto* count = app.add_subcommand("count", "number of rooted maps with the given signature");
  signature(count, true);
  count->add_option("--table", c.table, "defect table file or directory");
  count->add_option("--backend", c.backend, "auto, exact or log")->capture_default_str();
  count->add_option("--format", c.format, "text or csv");
  count->add_option("--output", c.output, "output file");

  auto* sample = app.add_subcommand("sample", "uniform random maps");
  signature(sample, true);
  sample->add_option("--count", c.count, "number of samples")->capture_default_str();
  auto* sample_seed = seeded(sample)->required();
  sample->add_option("--mode", c.mode, "exact or approximate")->capture_default_str();
  sample->add_option("--table", c.table, "defect table file or directory");
  sample->add_option("--table-samples", c.table_samples, "trivalent samples for estimated defect weights");
  sample->add_option("--format", c.format, "map, decomposition, csv or dot");
  sample->add_option("--output", c.output, "output file");
  sample->add_option("--threads", c.threads, "worker threads")->capture_default_str();

  auto* dec = app.add_subcommand("decompose", "kernel, chains and forest of stored maps");
  dec->add_option("--input", c.input, "map document or sample artifact")->required();
  dec->add_option("--output", c.output, "output file");

  auto* stats = app.add_subcommand("stats", "summary statistics of stored samples");
  stats->add_option("--input", c.input, "sample artifact")->required();
  stats->add_option("--output", c.output, "output file");

  auto* verify = app.add_subcommand("verify", "run statistical suites");
  verify->add_option("--suite", c.suite, "suite name, comma list, acceptance or all")->required();
  auto* verify_faces = verify->add_option("--faces", c.faces, "number of faces");
  verify->add_option("--n", c.n, "number of edges");
  verify->add_option("--s", c.s, "faces plus twice the genus");
  verify->add_option("--genus", c.genus, "genus");
  verify->add_option("--samples", c.samples, "sample size");
  verify->add_option("--table-samples", c.table_samples, "trivalent samples for estimated defect weights");
  auto* verify_seed = seeded(verify)->required();
  verify->add_option("--output", c.output, "CSV output file");

  auto* table = app.add_subcommand("table", "build a defect table");
  table->add_option("--oracle", c.oracle_edges, "census size in edges");
  table->add_option("--table", c.table, "existing table to extend");
  table->add_option("--n", c.n, "edge count the estimates must cover");
  table->add_option("--faces", c.faces, "number of faces");
  table->add_option("--genus", c.genus, "genus");
  table->add_option("--samples", c.samples, "trivalent samples for Monte Carlo entries");
  auto* table_seed = seeded(table);
  table->add_option("--output", c.output, "output file or directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
  }
  for (auto* sub : {count, sample, dec, stats, verify, table})
    if (sub->parsed()) c.subcommand = sub->get_name();
  if (sample_seed->count() || verify_seed->count() || table_seed->count()) c.seed = seed;
  if (verify->parsed() && verify_faces->count() == 0) c.faces = 0;
  return run(c, out, err);
}

}  // namespace sparsemaps
