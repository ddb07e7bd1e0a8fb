// pprloc: command-line driver for the localization toolkit.
//
// Exit codes: 0 success, 1 usage error, 2 runtime failure.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pprloc/bipartite.hpp"
#include "pprloc/bounds.hpp"
#include "pprloc/degseq.hpp"
#include "pprloc/graph.hpp"
#include "pprloc/graphgen.hpp"
#include "pprloc/localization.hpp"
#include "pprloc/solver.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace pprloc;

namespace {

constexpr const char* kVersion = "0.1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::uint64_t h = 1469598103934665603ull;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << x;
  return s.str();
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fmt_double(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

// Flags shared across subcommands; each subcommand registers the subset it uses.
struct Flags {
  std::size_t n = 0;
  long long d = 0;  // 0: ceil(sqrt(n))
  long long delta = 2;
  double p = 0.5;
  std::vector<double> alpha = {0.85};
  std::vector<double> eps = {1e-4};
  std::vector<double> eps_grid;
  std::string norm = "L1";
  std::uint64_t seed = 1;
  std::string seed_node = "max-degree";
  std::string generator;  // gen-graph: chung-lu, pipeline: exact
  std::string out;
  std::string input;
  std::string graph;
  std::string sequence;
  bool directed = false;
  bool lcc = false;
  bool undirected_bound = true;
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> ks;
  bool table = false;
  std::string vector_out;
  double min_lcc = 0.95;
  int max_restarts = 20;
  std::size_t small_side = 2;
};

json manifest_for(const CLI::App& sub, const Flags& f, const std::vector<std::string>& inputs) {
  json m;
  m["subcommand"] = sub.get_name();
  json flags = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_name() == "--help" || opt->get_lnames().empty()) continue;
    const auto& name = opt->get_lnames().front();
    const auto res = opt->results();
    if (opt->get_type_size() == 0) {
      flags[name] = opt->count() > 0;
    } else if (!res.empty()) {
      flags[name] = res.size() == 1 ? json(res.front()) : json(res);
    } else {
      flags[name] = opt->get_default_str();
    }
  }
  m["flags"] = flags;
  m["seeds"] = json{{"prng", f.seed}};
  json hashes = json::object();
  for (const auto& path : inputs)
    if (!path.empty()) hashes[path] = "fnv1a64:" + hex64(fnv1a_file(path));
  m["input_hashes"] = hashes;
  m["version"] = kVersion;
  m["timestamp"] = utc_timestamp();
  return m;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

void write_manifest(const std::string& output, const json& manifest) {
  write_text(output + ".manifest.json", manifest.dump(2) + "\n");
}

// Writes `content` to --out (plus its manifest) or to stdout.
void emit(const Flags& f, const std::string& content, const json& manifest) {
  if (f.out.empty()) {
    std::cout << content;
    return;
  }
  write_text(f.out, content);
  write_manifest(f.out, manifest);
}

std::size_t worker_cap() {
  std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PPR_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) cap = std::min<std::size_t>(cap, static_cast<std::size_t>(v));
  }
  return cap;
}

// Runs job(i) for i in [0, count) on up to PPR_THREADS workers.
template <class Job>
void parallel_for(std::size_t count, Job job) {
  const std::size_t workers = std::min(worker_cap(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

Degree default_d(const Flags& f) {
  if (f.d > 0) return f.d;
  return static_cast<Degree>(std::ceil(std::sqrt(static_cast<double>(f.n))));
}

NodeId resolve_seed_node(const Graph& g, const std::string& sel) {
  if (sel == "max-degree") return g.max_degree_node();
  std::uint64_t id = 0;
  try {
    std::size_t used = 0;
    id = std::stoull(sel, &used);
    if (used != sel.size()) throw std::invalid_argument(sel);
  } catch (const std::exception&) {
    throw UsageError("--seed-node must be a node id or 'max-degree', got '" + sel + "'");
  }
  const auto ids = g.original_ids();
  const auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) throw std::runtime_error("seed node " + sel + " is not in the graph");
  return static_cast<NodeId>(it - ids.begin());
}

std::vector<double> eps_grid_of(const Flags& f) { return f.eps_grid.empty() ? default_eps_grid() : f.eps_grid; }

json degree_stats(const Graph& g) {
  return json{{"n", g.num_nodes()}, {"edges", g.num_edges()}, {"max_degree", g.max_degree()},
              {"min_degree", g.min_degree()}};
}

DegreeSequence sequence_from_flags(const Flags& f) {
  if (!f.sequence.empty()) {
    std::ifstream in(f.sequence);
    if (!in) throw std::runtime_error("cannot open sequence '" + f.sequence + "'");
    return read_sequence(in);
  }
  if (f.n == 0) throw UsageError("need --sequence or --n");
  return generate_rank_skewed(f.n, default_d(f), f.delta, f.p);
}

Generated generate_graph(const DegreeSequence& seq, const std::string& generator, std::uint64_t seed,
                         int max_restarts) {
  if (generator == "chung-lu") return generate_chung_lu(seq, seed);
  if (generator == "exact") return generate_exact_degree(repair_parity(seq), {seed, max_restarts});
  throw UsageError("--generator must be chung-lu or exact");
}

// ---------------------------------------------------------------------------
// Subcommands

int run_ingest(const CLI::App& sub, const Flags& f) {
  auto loaded = load_edge_list(f.input, f.directed);
  Graph g = std::move(loaded.graph);
  double lcc_fraction = 1.0;
  if (f.lcc) {
    if (g.directed()) throw UsageError("--lcc applies to undirected graphs");
    auto comp = largest_connected_component(g);
    lcc_fraction = comp.fraction;
    g = std::move(comp.graph);
  }
  json report = degree_stats(g);
  report["directed"] = g.directed();
  report["duplicates_dropped"] = loaded.stats.duplicates_dropped;
  report["self_loops_dropped"] = loaded.stats.self_loops_dropped;
  report["isolated_removed"] = loaded.stats.isolated_removed;
  report["lcc_fraction"] = lcc_fraction;
  if (!f.out.empty()) {
    const bool binary = fs::path(f.out).extension() == ".bin";
    std::ofstream out(f.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + f.out + "'");
    if (binary)
      write_binary(g, out);
    else
      write_edge_list(g, out);
    write_manifest(f.out, manifest_for(sub, f, {f.input}));
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

int run_gen_degseq(const CLI::App& sub, const Flags& f) {
  if (f.n == 0) throw UsageError("--n is required");
  const auto seq = generate_rank_skewed(f.n, default_d(f), f.delta, f.p);
  std::ostringstream s;
  write_sequence(seq, s);
  emit(f, s.str(), manifest_for(sub, f, {}));
  if (!f.out.empty())
    std::cout << json{{"n", seq.size()}, {"d", seq.max()}, {"delta", f.delta}, {"p", f.p}, {"sum", seq.sum()},
                      {"graphical", is_graphical_erdos_gallai(seq)}}
                     .dump(2)
              << "\n";
  return 0;
}

int run_fit_degseq(const CLI::App& sub, const Flags& f) {
  DegreeSequence seq;
  if (!f.graph.empty()) {
    const auto g = load_graph(f.graph).graph;
    std::vector<Degree> d;
    for (auto x : g.degrees()) d.push_back(static_cast<Degree>(x));
    seq = make_sequence(std::move(d));
  } else if (!f.input.empty()) {
    std::ifstream in(f.input);
    if (!in) throw std::runtime_error("cannot open '" + f.input + "'");
    seq = read_sequence(in);
  } else {
    throw UsageError("need --input (sequence file) or --graph");
  }
  Rng rng(f.seed);
  const auto fit = fit_rank_skew(seq, rng);
  const double n = static_cast<double>(seq.size());
  const auto an = skew_analytics_from_exponent(fit.log_d / std::log(n), fit.p);
  json r{{"n", seq.size()},
         {"p", fit.p},
         {"d", std::exp(fit.log_d)},
         {"log_n_d", an.log_n_d},
         {"log_n_cp", an.log_n_cp},
         {"sublinear", an.sublinear},
         {"inlier_fraction", fit.inlier_fraction},
         {"samples_used", fit.samples_used},
         {"max_degree", seq.max()},
         {"min_degree", seq.min()}};
  emit(f, r.dump(2) + "\n", manifest_for(sub, f, {f.graph.empty() ? f.input : f.graph}));
  return 0;
}

int run_gen_graph(const CLI::App& sub, const Flags& f) {
  if (f.out.empty()) throw UsageError("--out is required");
  const auto seq = sequence_from_flags(f);
  const auto gen = generate_graph(seq, f.generator, f.seed, f.max_restarts);
  std::ostringstream s;
  write_edge_list(gen.graph, s);
  write_text(f.out, s.str());
  json m = manifest_for(sub, f, {f.sequence});
  m["generator"] = f.generator;
  m["seed_used"] = gen.seed_used;
  m["restarts"] = gen.restarts;
  m["clipped"] = gen.clipped;
  m["fallback"] = gen.fallback;
  write_manifest(f.out, m);
  json r = degree_stats(gen.graph);
  const auto degs = gen.graph.degrees();
  r["isolated"] = std::count(degs.begin(), degs.end(), std::size_t{0});
  r["seed_used"] = gen.seed_used;
  r["restarts"] = gen.restarts;
  std::cout << r.dump(2) << "\n";
  return 0;
}

int run_solve(const CLI::App& sub, const Flags& f) {
  const auto g = load_graph(f.graph).graph;
  const NodeId s = resolve_seed_node(g, f.seed_node);
  const PprProblem prob{g, f.alpha.front(), s};
  SolveOptions opt;
  opt.eps = f.eps.front();
  const auto rep = gauss_southwell_solve(prob, opt);
  json r{{"alpha", prob.alpha},
         {"eps", opt.eps},
         {"seed_node", g.original_id(s)},
         {"iterations", rep.iterations},
         {"nnz_solution", rep.nnz_solution},
         {"residual_norm", rep.residual_norm},
         {"converged", rep.converged}};
  if (!f.vector_out.empty()) {
    std::ostringstream v;
    v << "node,value\n";
    for (const auto& [node, value] : rep.solution) v << g.original_id(node) << ',' << fmt_double(value) << '\n';
    write_text(f.vector_out, v.str());
    r["vector"] = f.vector_out;
  }
  emit(f, r.dump(2) + "\n", manifest_for(sub, f, {f.graph}));
  return 0;
}

int run_curve(const CLI::App& sub, const Flags& f) {
  const auto g = load_graph(f.graph).graph;
  const NodeId s = resolve_seed_node(g, f.seed_node);
  const auto grid = eps_grid_of(f);
  const auto curve = localization_curve({g, f.alpha.front(), s}, grid, parse_norm(f.norm));
  std::ostringstream out;
  write_curve_csv(curve, out);
  emit(f, out.str(), manifest_for(sub, f, {f.graph}));
  return 0;
}

int run_bound(const CLI::App& sub, const Flags& f) {
  if (f.n == 0) throw UsageError("--n is required");
  std::ostringstream out;
  out << "alpha,eps,inv_eps,cp,n_thm1,n_thm2,n_final,k_steps,trivial\n";
  for (double a : f.alpha) {
    for (double e : f.eps) {
      BoundInputs in{static_cast<double>(f.n), static_cast<double>(default_d(f)), static_cast<double>(f.delta),
                     f.p, a, e};
      const auto rep = (f.undirected_bound && f.delta >= 2) ? bound_thm2(in) : bound_thm1(in);
      out << fmt_double(a) << ',' << fmt_double(e) << ',' << fmt_double(1.0 / e) << ',' << fmt_double(rep.cp) << ','
          << fmt_double(rep.n_thm1) << ',' << (rep.n_thm2 ? fmt_double(*rep.n_thm2) : std::string("")) << ','
          << fmt_double(rep.n_final) << ',' << fmt_double(rep.k_steps) << ',' << (rep.trivial ? 1 : 0) << '\n';
    }
  }
  emit(f, out.str(), manifest_for(sub, f, {}));
  return 0;
}

int run_bipartite(const CLI::App& sub, const Flags& f) {
  if (f.table) {
    // table defaults: alpha = 0.5, eps = 0.01
    const double alpha = sub.get_option("--alpha")->count() ? f.alpha.front() : 0.5;
    const double eps = sub.get_option("--eps")->count() ? f.eps.front() : 0.01;
    std::vector<std::size_t> ns = f.sizes;
    if (ns.empty())
      for (std::size_t e = 6; e <= 13; ++e) ns.push_back(std::size_t{1} << e);
    const auto rows = local_approx_table(ns, alpha, eps, f.small_side);
    std::ostringstream out;
    out << "graph,norm,local,growth_exponents\n";
    for (const auto& row : rows) {
      out << (row.dense ? "dense" : "sparse") << ',' << to_string(row.norm) << ','
          << (row.local ? (*row.local ? "Yes" : "No") : "?") << ',';
      for (std::size_t i = 0; i < row.series.size(); ++i)
        out << (i ? ";" : "") << to_string(row.series[i].regime) << '='
            << fmt_double(tail_growth_exponent(row.series[i].counts));
      out << '\n';
    }
    emit(f, out.str(), manifest_for(sub, f, {}));
    return 0;
  }
  if (f.sizes.empty() || f.ks.empty()) throw UsageError("need --n and --k (or --table)");
  const double eps = f.eps.front();
  const auto norms = f.norm == "all" ? std::vector<Norm>{Norm::L1, Norm::DegL1, Norm::L2, Norm::DegL2}
                                     : std::vector<Norm>{parse_norm(f.norm)};
  std::ostringstream out;
  for (std::size_t n : f.sizes)
    for (std::size_t k : f.ks)
      for (double a : f.alpha)
        for (Norm norm : norms) {
          const BipartiteSpec spec{n, k, a};
          const auto x = exact_ppr_vector(spec);
          json r{{"n", n},
                 {"k", k},
                 {"alpha", a},
                 {"eps", eps},
                 {"norm", to_string(norm)},
                 {"seed_value", x.seed_value},
                 {"same_side_value", x.same_side_value},
                 {"other_side_value", x.other_side_value},
                 {"min_nnz", bipartite_min_nnz(spec, eps, norm)},
                 {"constructive_nnz", bipartite_constructive_nnz(spec, eps, norm)}};
          if (norm == Norm::L1 && eps < a * a / (1.0 + a)) r["lower_bound"] = prop1_lower_bound(n, a, eps);
          out << r.dump() << '\n';
        }
  emit(f, out.str(), manifest_for(sub, f, {}));
  return 0;
}

int run_clustering(const CLI::App& sub, const Flags& f) {
  const auto g = load_graph(f.graph).graph;
  const auto st = clustering_stats(g);
  json r = degree_stats(g);
  r["triangles"] = st.triangles;
  r["wedges"] = st.wedges;
  r["clustering_coefficient"] = st.coefficient;
  emit(f, r.dump(2) + "\n", manifest_for(sub, f, {f.graph}));
  return 0;
}

// Generate, validate, solve from the max-degree node and write curve and bound
// CSVs into the --out directory.
int run_pipeline(const CLI::App& sub, const Flags& f, const std::string& name) {
  if (name != "figure4") throw UsageError("unknown pipeline '" + name + "' (available: figure4)");
  if (f.n == 0) throw UsageError("--n is required");
  if (f.out.empty()) throw UsageError("--out directory is required");
  const auto seq = repair_parity(generate_rank_skewed(f.n, default_d(f), f.delta, f.p));
  if (!is_graphical_erdos_gallai(seq)) throw std::runtime_error("degree sequence is not graphical");

  Generated gen;
  ComponentResult comp;
  bool ok = false;
  std::uint64_t seed = f.seed;
  for (int attempt = 0; attempt < f.max_restarts && !ok; ++attempt, ++seed) {
    gen = generate_graph(seq, f.generator, seed, f.max_restarts);
    comp = largest_connected_component(gen.graph);
    ok = comp.fraction >= f.min_lcc;
    seed = gen.seed_used;
  }
  if (!ok)
    throw std::runtime_error("largest component holds " + fmt_double(comp.fraction) + " of the nodes, below " +
                             fmt_double(f.min_lcc));
  const Graph& g = comp.graph;
  const NodeId s = g.max_degree_node();
  const auto grid = eps_grid_of(f);
  const Norm norm = parse_norm(f.norm);
  const Degree certified = certify_max_degree(seq, f.delta, f.p);

  struct Cell {
    LocalizationCurve curve;
    std::vector<std::size_t> solver_nnz;
  };
  std::vector<Cell> cells(f.alpha.size());
  parallel_for(f.alpha.size(), [&](std::size_t i) {
    const PprProblem prob{g, f.alpha[i], s};
    cells[i].curve = localization_curve(prob, grid, norm);
    for (double e : grid) {
      SolveOptions opt;
      opt.eps = e;
      cells[i].solver_nnz.push_back(gauss_southwell_solve(prob, opt).nnz_solution);
    }
  });

  fs::create_directories(f.out);
  std::ostringstream curve, bound;
  curve << "alpha,inv_eps,min_nnz,solver_nnz\n";
  bound << "alpha,inv_eps,n_thm1,n_thm2,n_final\n";
  for (std::size_t i = 0; i < f.alpha.size(); ++i) {
    for (std::size_t r = 0; r < grid.size(); ++r) {
      curve << fmt_double(f.alpha[i]) << ',' << fmt_double(1.0 / grid[r]) << ',' << cells[i].curve.min_nnz[r] << ','
            << cells[i].solver_nnz[r] << '\n';
      BoundInputs in{static_cast<double>(g.num_nodes()), static_cast<double>(certified),
                     static_cast<double>(std::max<long long>(f.delta, 2)), f.p, f.alpha[i], grid[r]};
      const auto rep = bound_thm2(in);
      bound << fmt_double(f.alpha[i]) << ',' << fmt_double(1.0 / grid[r]) << ',' << fmt_double(rep.n_thm1) << ','
            << fmt_double(*rep.n_thm2) << ',' << fmt_double(rep.n_final) << '\n';
    }
  }
  const std::string curve_path = (fs::path(f.out) / "curve.csv").string();
  const std::string bound_path = (fs::path(f.out) / "bound.csv").string();
  write_text(curve_path, curve.str());
  write_text(bound_path, bound.str());
  json m = manifest_for(sub, f, {});
  m["pipeline"] = name;
  m["generator"] = f.generator;
  m["seed_used"] = gen.seed_used;
  m["lcc_fraction"] = comp.fraction;
  m["lcc_nodes"] = g.num_nodes();
  m["seed_node"] = s;
  m["certified_d"] = certified;
  m["outputs"] = {"curve.csv", "bound.csv"};
  write_text((fs::path(f.out) / "manifest.json").string(), m.dump(2) + "\n");
  std::cout << json{{"lcc_fraction", comp.fraction}, {"lcc_nodes", g.num_nodes()}, {"seed_used", gen.seed_used},
                    {"certified_d", certified}, {"outputs", {curve_path, bound_path}}}
                   .dump(2)
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seeded PageRank localization toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Flags f;
  std::string pipeline_name;

  auto add_n = [&](CLI::App* s) { s->add_option("--n", f.n, "number of nodes"); };
  auto add_skew = [&](CLI::App* s) {
    add_n(s);
    s->add_option("--d", f.d, "maximum degree (default ceil(sqrt(n)))");
    s->add_option("--delta", f.delta, "minimum degree")->capture_default_str();
    s->add_option("--p", f.p, "rank-skew decay exponent")->capture_default_str();
  };
  auto add_out = [&](CLI::App* s) { s->add_option("--out", f.out, "output path (default stdout)"); };
  auto add_seed = [&](CLI::App* s) { s->add_option("--seed", f.seed, "PRNG seed")->capture_default_str(); };
  auto add_graph = [&](CLI::App* s) {
    s->add_option("--graph", f.graph, "edge list or PPRG1 cache")->required()->check(CLI::ExistingFile);
  };
  auto add_alpha = [&](CLI::App* s, bool many) {
    auto* o = s->add_option("--alpha", f.alpha, "teleport-survival parameter")->capture_default_str();
    if (!many) o->expected(1);
  };
  auto add_eps = [&](CLI::App* s, bool many) {
    auto* o = s->add_option("--eps", f.eps, "1-norm accuracy")->capture_default_str();
    if (!many) o->expected(1);
  };
  auto add_seed_node = [&](CLI::App* s) {
    s->add_option("--seed-node", f.seed_node, "node id or max-degree")->capture_default_str();
  };
  auto add_generator = [&](CLI::App* s, const char* fallback) {
    s->add_option("--generator", f.generator, std::string("chung-lu or exact (default ") + fallback + ")")
        ->check(CLI::IsMember({"chung-lu", "exact"}));
    s->add_option("--max-restarts", f.max_restarts, "restart budget")->capture_default_str();
  };

  auto* ingest = app.add_subcommand("ingest", "clean an edge list; write an edge list or .bin cache");
  ingest->add_option("--input", f.input, "SNAP edge list")->required()->check(CLI::ExistingFile);
  ingest->add_flag("--directed", f.directed, "keep edge direction (default: symmetrize)");
  ingest->add_flag("--lcc", f.lcc, "keep only the largest connected component");
  add_out(ingest);

  auto* gen_degseq = app.add_subcommand("gen-degseq", "rank-skewed degree sequence");
  add_skew(gen_degseq);
  add_out(gen_degseq);

  auto* fit = app.add_subcommand("fit-degseq", "fit (d, p) to a degree profile");
  fit->add_option("--input", f.input, "sequence file")->check(CLI::ExistingFile);
  fit->add_option("--graph", f.graph, "graph whose degrees to fit")->check(CLI::ExistingFile);
  add_seed(fit);
  add_out(fit);

  auto* gen_graph = app.add_subcommand("gen-graph", "random graph with a target degree sequence");
  gen_graph->add_option("--sequence", f.sequence, "sequence file")->check(CLI::ExistingFile);
  add_skew(gen_graph);
  add_generator(gen_graph, "chung-lu");
  add_seed(gen_graph);
  add_out(gen_graph);

  auto* solve = app.add_subcommand("solve", "Gauss-Southwell solve");
  add_graph(solve);
  add_alpha(solve, false);
  add_eps(solve, false);
  add_seed_node(solve);
  solve->add_option("--vector", f.vector_out, "write the solution as node,value CSV");
  add_out(solve);

  auto* curve = app.add_subcommand("curve", "localization curve of the exact vector");
  add_graph(curve);
  add_alpha(curve, false);
  curve->add_option("--eps-grid", f.eps_grid, "decreasing accuracies (default 1e-1..1e-8)");
  curve->add_option("--norm", f.norm, "L1, L2, DegL1 or DegL2")->capture_default_str();
  add_seed_node(curve);
  add_out(curve);

  auto* bound = app.add_subcommand("bound", "sparsity bounds over alpha x eps grids");
  add_skew(bound);
  add_alpha(bound, true);
  add_eps(bound, true);
  bound->add_flag("!--general", f.undirected_bound, "use the general (directed) bound");
  add_out(bound);

  auto* bip = app.add_subcommand("bipartite", "closed-form complete-bipartite analysis");
  bip->add_option("--n", f.sizes, "graph sizes");
  bip->add_option("--k", f.ks, "seed-side sizes");
  add_alpha(bip, true);
  add_eps(bip, false);
  bip->add_option("--norm", f.norm, "L1, L2, DegL1, DegL2 or all")->capture_default_str();
  bip->add_flag("--table", f.table, "local-approximability summary over doubling n");
  bip->add_option("--small-side", f.small_side, "partition size of sparse regimes")->capture_default_str();
  add_out(bip);

  auto* clus = app.add_subcommand("clustering", "triangle count and global clustering coefficient");
  add_graph(clus);
  add_out(clus);

  auto* pipe = app.add_subcommand("pipeline", "end-to-end experiment");
  pipe->add_option("name", pipeline_name, "pipeline name (figure4)")->required();
  add_skew(pipe);
  add_alpha(pipe, true);
  pipe->add_option("--eps-grid", f.eps_grid, "decreasing accuracies (default 1e-1..1e-8)");
  pipe->add_option("--norm", f.norm, "L1, L2, DegL1 or DegL2")->capture_default_str();
  add_generator(pipe, "exact");
  add_seed(pipe);
  pipe->add_option("--min-lcc", f.min_lcc, "required largest-component fraction")->capture_default_str();
  add_out(pipe);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return 1;
  }

  try {
    if (ingest->parsed()) return run_ingest(*ingest, f);
    if (gen_degseq->parsed()) return run_gen_degseq(*gen_degseq, f);
    if (fit->parsed()) return run_fit_degseq(*fit, f);
    if (f.generator.empty()) f.generator = pipe->parsed() ? "exact" : "chung-lu";
    if (gen_graph->parsed()) return run_gen_graph(*gen_graph, f);
    if (solve->parsed()) return run_solve(*solve, f);
    if (curve->parsed()) return run_curve(*curve, f);
    if (bound->parsed()) return run_bound(*bound, f);
    if (bip->parsed()) return run_bipartite(*bip, f);
    if (clus->parsed()) return run_clustering(*clus, f);
    if (pipe->parsed()) return run_pipeline(*pipe, f, pipeline_name);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
