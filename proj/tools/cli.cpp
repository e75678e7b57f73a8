#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <thread>

#include "fodist/cfi.hpp"
#include "fodist/similarity.hpp"
#include "fodist/solver.hpp"
#include "fodist/strategy.hpp"
#include "fodist/wl.hpp"

namespace fodist::cli {

using json = nlohmann::json;

namespace {

constexpr int kMaxNamedOrder = 4096;

int named_order(const std::string& digits) {
  const long v = std::stol(digits);
  if (v > kMaxNamedOrder) throw ParseError("graph name: order " + digits + " too large");
  return static_cast<int>(v);
}

std::vector<std::string> split_top_level(const std::string& spec) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : spec) {
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (c == '+' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

Graph read_graph_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string text = ss.str();
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    try {
      return parse_graph6(line);
    } catch (const ParseError&) {
      break;
    }
  }
  return parse_edge_list(text);
}

ResolvedGraph resolve_part(const std::string& part) {
  static const std::regex named(R"(([KPCE])(\d+))");
  static const std::regex bipartite(R"(K\{(\d+),(\d+)\})");
  static const std::regex cfi(R"(CFI([01])\((.+)\))");
  std::smatch m;
  if (part.empty()) throw ParseError("empty graph specification");
  if (part[0] == '@') return {read_graph_file(part.substr(1)), std::nullopt};
  if (part.size() > 3 && part.ends_with(".g6")) return {read_graph_file(part), std::nullopt};
  if (std::regex_match(part, m, named)) {
    const int n = named_order(m[2]);
    switch (part[0]) {
      case 'K': return {complete_graph(n), std::nullopt};
      case 'P': return {path_graph(n), std::nullopt};
      case 'C':
        if (n < 3) throw ParseError("cycle needs at least 3 vertices");
        return {cycle_graph(n), std::nullopt};
      default: return {empty_graph(n), std::nullopt};
    }
  }
  if (std::regex_match(part, m, bipartite)) return {complete_bipartite(named_order(m[1]), named_order(m[2])), std::nullopt};
  if (std::regex_match(part, m, cfi)) {
    Graph seed = resolve_graph(m[2]).graph;
    CfiInstance inst;
    try {
      inst = cfi_pair(seed);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("CFI seed: ") + e.what());
    }
    return {m[1] == "0" ? inst.g : inst.h, seed};
  }
  return {parse_graph6(part), std::nullopt};
}

json bound(const std::string& name, int value, int limit) {
  return json{{"name", name}, {"value", value}, {"limit", limit}, {"pass", value <= limit}};
}

json report(const std::string& cmd, const std::vector<Graph>& inputs) {
  json r;
  r["cmd"] = cmd;
  r["inputs"] = json::array();
  for (const auto& g : inputs) r["inputs"].push_back(write_graph6(g));
  r["results"] = json::object();
  r["bounds"] = json::array();
  r["stats"] = json::object();
  return r;
}

json stats_json(const SolveStats& s) {
  return json{{"nodes", s.nodes}, {"memo", s.memo_entries}, {"millis", s.millis}};
}

std::string ratio_str(const Ratio& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

int alt_budget(const std::string& alt) {
  if (alt == "inf") return kUnlimited;
  if (alt == "0") return 0;
  if (alt == "1") return 1;
  throw CLI::ValidationError("--alt", "expected 0, 1 or inf");
}

std::string rank_key(int alt) { return alt == kUnlimited ? "D" : "D" + std::to_string(alt); }

int same_order_limit(int n, int alt) { return alt == 0 ? (n + 5) / 2 : (n + 3) / 2; }

std::string limit_name(int alt) { return alt == 0 ? "no_alternation_rank" : "same_order_rank"; }

SolveResult solve(const Graph& g, const Graph& h, int alt, bool formula) {
  return alt == kUnlimited ? rank_D(g, h, formula) : rank_Dk(g, h, alt, formula);
}

int default_jobs() {
  if (const char* env = std::getenv("FODIST_JOBS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
    }
  }
  return 1;
}

// ------------------------------------------------------------- commands

int cmd_rank(const std::vector<std::string>& specs, const std::string& alt_s, bool pebbles, bool formula,
             std::ostream& out) {
  Graph g = resolve_graph(specs[0]).graph;
  Graph h = resolve_graph(specs[1]).graph;
  const int alt = alt_budget(alt_s);
  json r = report("rank", {g, h});
  SolveResult res = solve(g, h, alt, formula);
  r["results"][rank_key(alt)] = res.rank;
  r["results"]["alternations_used"] = res.alternations_used;
  if (formula && res.formula) r["results"]["formula"] = to_string(*res.formula);
  if (pebbles) r["results"]["V"] = pebble_V(g, h);
  if (g.order() == h.order()) r["bounds"].push_back(bound(limit_name(alt), res.rank, same_order_limit(g.order(), alt)));
  r["stats"] = stats_json(res.stats);
  out << r.dump() << '\n';
  return kOk;
}

int cmd_sweep(int n, const std::string& alt_s, bool bound_check, int jobs, std::ostream& out) {
  if (n < 2 || n > 7) throw CLI::ValidationError("order", "sweep supports 2 <= n <= 7");
  const int alt = alt_budget(alt_s);
  const auto& cat = graph_catalogue(n);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < cat.size(); ++i)
    for (std::size_t j = i + 1; j < cat.size(); ++j) pairs.emplace_back(i, j);
  std::vector<SolveResult> results(pairs.size());
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(pairs.size())));
  auto work = [&](int w) {
    for (std::size_t p = static_cast<std::size_t>(w); p < pairs.size(); p += static_cast<std::size_t>(workers))
      results[p] = solve(cat[pairs[p].first], cat[pairs[p].second], alt, false);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  const int limit = same_order_limit(n, alt);
  int best = 0;
  std::size_t argmax = 0;
  std::size_t attained = 0;
  std::size_t violations = 0;
  SolveStats total;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& res = results[p];
    json line = report("sweep", {cat[pairs[p].first], cat[pairs[p].second]});
    line["results"][rank_key(alt)] = res.rank;
    line["bounds"].push_back(bound(limit_name(alt), res.rank, limit));
    line["stats"] = stats_json(res.stats);
    out << line.dump() << '\n';
    if (res.rank > limit) ++violations;
    if (res.rank > best) {
      best = res.rank;
      argmax = p;
      attained = 0;
    }
    if (res.rank == best) ++attained;
    total.nodes += res.stats.nodes;
    total.memo_entries += res.stats.memo_entries;
    total.millis += res.stats.millis;
  }
  json summary = report("sweep-summary", {});
  summary["results"] = {{"order", n}, {"pairs", pairs.size()}, {"max", best}, {"attained_by", attained}, {"violations", violations}};
  if (!pairs.empty())
    summary["results"]["argmax"] = {write_graph6(cat[pairs[argmax].first]), write_graph6(cat[pairs[argmax].second])};
  summary["bounds"].push_back(bound(limit_name(alt), best, limit));
  summary["stats"] = stats_json(total);
  out << summary.dump() << '\n';
  return bound_check && violations > 0 ? kFailure : kOk;
}

int cmd_classify(const std::string& spec, std::ostream& out) {
  Graph g = resolve_graph(spec).graph;
  json r = report("classify", {g});
  auto part = similarity_partition(g);
  std::vector<std::size_t> sizes;
  for (const auto& c : part.classes) sizes.push_back(c.count());
  std::sort(sizes.rbegin(), sizes.rend());
  auto cls = classify(g);
  r["results"]["class_sizes"] = sizes;
  r["results"]["sigma"] = cls.sigma;
  r["results"]["class"] = membership_name(cls.membership);
  r["results"]["in_s"] = cls.in_s;
  r["results"]["maximal_homogeneous"] = cls.maximal_homogeneous;
  auto d = defining_rank_report(g);
  if (d.exact) {
    r["results"]["D"] = d.lower;
  } else {
    r["results"]["D_interval"] = {d.lower, d.upper};
    r["results"]["lower_source"] = d.lower_from_search ? "identification_rank" : "trivial";
    r["bounds"].push_back(bound("defining_rank_upper", d.lower, d.upper));
  }
  out << r.dump() << '\n';
  return kOk;
}

int cmd_wl(const std::vector<std::string>& specs, int k, const std::string& variant_s, bool canon, bool optdim,
           std::ostream& out) {
  WlVariant variant;
  if (variant_s == "set") {
    variant = WlVariant::Set;
  } else if (variant_s == "multiset") {
    variant = WlVariant::Multiset;
  } else {
    throw CLI::ValidationError("--variant", "expected set or multiset");
  }
  std::vector<ResolvedGraph> in;
  for (const auto& s : specs) in.push_back(resolve_graph(s));
  std::vector<Graph> graphs;
  for (const auto& r : in) graphs.push_back(r.graph);
  json r = report("wl", graphs);
  r["results"]["variant"] = variant_name(variant);
  const auto start = std::chrono::steady_clock::now();

  if (canon) {
    r["results"]["k"] = k;
    r["results"]["certificates"] = json::array();
    std::vector<std::string> certs;
    for (const auto& g : graphs) certs.push_back(wl_canonical_form(g, k, variant).serialize());
    for (const auto& c : certs) r["results"]["certificates"].push_back(c);
    if (certs.size() == 2) r["results"]["identical"] = certs[0] == certs[1];
  } else {
    if (graphs.size() != 2) throw CLI::ValidationError("graphs", "iso test and --optdim need two graphs");
    if (graphs[0].order() != graphs[1].order()) throw std::invalid_argument("wl: orders differ");
    if (optdim) {
      const int dim = wl_optimal_dimension(graphs[0], graphs[1], variant);
      r["results"]["optimal_dimension"] = dim;
      r["bounds"].push_back(bound("dimension_cap", dim, wl_dimension_cap(graphs[0].order())));
      if (in[0].cfi_seed && in[1].cfi_seed && *in[0].cfi_seed == *in[1].cfi_seed && in[0].cfi_seed->order() <= 16) {
        const int s = separator_size(*in[0].cfi_seed).size;
        r["results"]["separator_floor"] = s;
        r["results"]["meets_separator_floor"] = dim >= s;
      }
    } else {
      auto st = wl_stabilize(graphs[0], graphs[1], k, variant);
      r["results"]["k"] = k;
      r["results"]["steps"] = st.steps;
      r["results"]["decision"] =
          wl_iso_test(graphs[0], graphs[1], k, variant) == WlVerdict::Isomorphic ? "isomorphic" : "non-isomorphic";
    }
  }
  r["stats"]["millis"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out << r.dump() << '\n';
  return kOk;
}

int cmd_cfi(const std::vector<std::string>& seed_spec, const std::vector<long long>& random, bool certify,
            const std::string& prefix, std::ostream& out) {
  Graph seed;
  std::optional<long long> rng_seed;
  if (!random.empty()) {
    seed = random_regular(static_cast<int>(random[0]), static_cast<int>(random[1]), static_cast<std::uint64_t>(random[2]));
    rng_seed = random[2];
  } else if (seed_spec.size() == 1) {
    seed = resolve_graph(seed_spec[0]).graph;
  } else {
    throw CLI::ValidationError("seed", "give a seed graph or --random d m seed");
  }
  CfiInstance inst = cfi_pair(seed);
  json r = report("cfi", {seed});
  if (rng_seed) r["seed"] = *rng_seed;
  r["results"]["order"] = inst.g.order();
  r["results"]["maxdeg"] = inst.g.max_degree();
  r["results"]["connected"] = is_connected(inst.g) && is_connected(inst.h);
  r["results"]["noniso"] = true;
  r["results"]["certificate_k"] = inst.certificate_k;
  r["results"]["twist"] = {inst.twist.first, inst.twist.second};
  r["results"]["pair"] = {write_graph6(inst.g), write_graph6(inst.h)};
  if (certify) {
    auto c = lower_bound_certificate(seed);
    r["results"]["s"] = c.s;
    r["results"]["i_v"] = ratio_str(c.i_v);
    r["results"]["i_e"] = ratio_str(c.i_e);
    r["results"]["certified_lower"] = ratio_str(c.certified_lower);
    r["results"]["degree"] = c.degree;
  }
  if (!prefix.empty()) {
    std::ofstream g6(prefix + ".g6");
    g6 << write_graph6(inst.g) << '\n' << write_graph6(inst.h) << '\n';
    json side = json::object();
    for (std::size_t v = 0; v < inst.labels.size(); ++v) side[std::to_string(v)] = inst.labels[v].to_string();
    std::ofstream js(prefix + ".json");
    js << side.dump(2) << '\n';
    if (!g6 || !js) throw std::runtime_error("cfi: cannot write " + prefix + ".*");
    r["results"]["files"] = {prefix + ".g6", prefix + ".json"};
  }
  out << r.dump() << '\n';
  return kOk;
}

// --------------------------------------------------------------- play

const char* side_name(Side s) { return s == Side::G ? "g" : "h"; }

// First move that wins the remaining rounds, else any legal move.
std::pair<Side, int> optimal_spoiler_move(GameSolver& solver, const std::vector<PebblePair>& history, int left) {
  std::optional<std::pair<Side, int>> fallback;
  for (Side side : {Side::G, Side::H}) {
    for (int v : solver.spoiler_moves(history, side)) {
      if (!fallback) fallback = {side, v};
      bool wins = true;
      for (int u : solver.alive_replies(history, side, v, false)) {
        GameConfig cfg{history, side, kUnlimited};
        cfg.pairs.push_back(side == Side::G ? PebblePair{v, u} : PebblePair{u, v});
        if (left <= 1 || !solver.spoiler_wins(cfg, left - 1)) {
          wins = false;
          break;
        }
      }
      if (wins) return {side, v};
    }
  }
  if (fallback) return *fallback;
  return {solver.g().order() > 0 ? Side::G : Side::H, 0};
}

std::optional<std::string> prompt(std::istream& in, std::ostream& err, const std::string& text) {
  err << text << std::flush;
  std::string line;
  if (!std::getline(in, line)) return std::nullopt;
  return line;
}

int cmd_play(const std::vector<std::string>& specs, const std::string& as, const std::string& engine, int rounds,
             std::istream& in, std::ostream& out, std::ostream& err) {
  Graph g = resolve_graph(specs[0]).graph;
  Graph h = resolve_graph(specs[1]).graph;
  if (as != "spoiler" && as != "duplicator") throw CLI::ValidationError("--as", "expected spoiler or duplicator");
  if (engine != "optimal" && engine != "constructive") throw CLI::ValidationError("--engine", "expected optimal or constructive");
  if (as == "spoiler" && engine == "constructive")
    throw CLI::ValidationError("--engine", "the constructive engine only plays Spoiler");
  if (rounds < 1) throw CLI::ValidationError("--rounds", "must be positive");

  std::optional<SpoilerPlan> plan;
  std::optional<GameSolver> spoiler_solver;
  std::optional<OptimalDuplicator> duplicator;
  if (as == "duplicator" && engine == "constructive") plan.emplace(g, h, false);
  if (as == "duplicator" && engine == "optimal") spoiler_solver.emplace(g, h);
  if (as == "spoiler") duplicator.emplace(g, h, rounds);

  std::vector<PebblePair> history;
  json transcript = json::array();
  Side last = Side::None;
  int alternations = 0;
  std::string winner = "duplicator";
  bool aborted = false;
  std::string note;

  for (int round = 1; round <= rounds; ++round) {
    Side side = Side::None;
    int vertex = -1;
    if (as == "spoiler") {
      while (side == Side::None) {
        auto line = prompt(in, err, "round " + std::to_string(round) + " move (g|h vertex)> ");
        if (!line) break;
        std::istringstream ls(*line);
        std::string s;
        int v = -1;
        if (ls >> s >> v && (s == "g" || s == "h")) {
          const Graph& target = s == "g" ? g : h;
          if (v >= 0 && v < target.order()) {
            side = s == "g" ? Side::G : Side::H;
            vertex = v;
            continue;
          }
        }
        err << "illegal move: " << *line << '\n';
      }
      if (side == Side::None) {
        aborted = true;
        break;
      }
    } else if (plan) {
      SpoilerMove mv = plan->next_move(history);
      if (mv.kind != SpoilerMove::Kind::Place) {
        note = mv.kind == SpoilerMove::Kind::Resign ? "spoiler resigned" : "spoiler claimed the win";
        break;
      }
      side = mv.side;
      vertex = mv.vertex;
    } else {
      std::tie(side, vertex) = optimal_spoiler_move(*spoiler_solver, history, rounds - round + 1);
    }
    const Graph& target = side == Side::G ? h : g;

    int reply = -1;
    if (target.order() == 0) {
      reply = -1;
    } else if (as == "spoiler") {
      reply = duplicator->reply(history, side, vertex);
    } else {
      err << "spoiler picks " << side_name(side) << " " << vertex << '\n';
      while (reply < 0) {
        auto line = prompt(in, err, std::string("reply in ") + side_name(other(side)) + "> ");
        if (!line) break;
        std::istringstream ls(*line);
        int v = -1;
        if (ls >> v && v >= 0 && v < target.order()) {
          reply = v;
          continue;
        }
        err << "illegal vertex: " << *line << '\n';
      }
      if (reply < 0) {
        aborted = true;
        break;
      }
    }

    if (last != Side::None && side != last) ++alternations;
    last = side;
    bool alive = false;
    if (reply >= 0) {
      history.push_back(side == Side::G ? PebblePair{vertex, reply} : PebblePair{reply, vertex});
      alive = is_alive(g, h, history);
    }
    json entry{{"round", round}, {"side", side_name(side)}, {"vertex", vertex}, {"reply", reply}, {"alive", alive}};
    out << entry.dump() << '\n';
    transcript.push_back(entry);
    if (!alive) {
      winner = "spoiler";
      break;
    }
  }

  json r = report("play", {g, h});
  r["results"] = {{"winner", aborted ? "none" : winner},
                  {"rounds", transcript.size()},
                  {"alternations", alternations},
                  {"aborted", aborted},
                  {"transcript", transcript}};
  if (!note.empty()) r["results"]["note"] = note;
  out << r.dump() << '\n';
  return kOk;
}

json error_json(const std::string& kind, const std::string& what) {
  return json{{"cmd", "error"}, {"error", kind}, {"message", what}};
}

}  // namespace

ResolvedGraph resolve_graph(const std::string& spec) {
  auto parts = split_top_level(spec);
  ResolvedGraph acc = resolve_part(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    acc.graph = disjoint_union(acc.graph, resolve_part(parts[i]).graph);
    acc.cfi_seed.reset();
  }
  return acc;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"First-order distinguishability of finite graphs"};
  app.require_subcommand(1);
  int code = kOk;

  std::vector<std::string> rank_graphs;
  std::string rank_alt = "inf";
  bool rank_pebbles = false;
  bool rank_formula = false;
  auto* rank = app.add_subcommand("rank", "Quantifier rank of a distinguishing formula");
  rank->add_option("graphs", rank_graphs, "Two graphs")->required()->expected(2);
  rank->add_option("--alt", rank_alt, "Alternation budget: 0, 1 or inf");
  rank->add_flag("--pebbles", rank_pebbles, "Also report the pebble number");
  rank->add_flag("--formula", rank_formula, "Emit a distinguishing formula");
  rank->callback([&] { code = cmd_rank(rank_graphs, rank_alt, rank_pebbles, rank_formula, out); });

  int sweep_n = 0;
  std::string sweep_alt = "inf";
  bool sweep_check = false;
  int sweep_jobs = default_jobs();
  auto* sweep = app.add_subcommand("sweep", "All non-isomorphic pairs of one order");
  sweep->add_option("order", sweep_n, "Order, 2 to 7")->required();
  sweep->add_option("--alt", sweep_alt, "Alternation budget: 0, 1 or inf");
  sweep->add_flag("--bound-check", sweep_check, "Exit 1 when a bound is violated");
  sweep->add_option("--jobs", sweep_jobs, "Worker threads (default FODIST_JOBS or 1)");
  sweep->callback([&] { code = cmd_sweep(sweep_n, sweep_alt, sweep_check, sweep_jobs, out); });

  std::string classify_graph;
  auto* cls = app.add_subcommand("classify", "Similarity classes and defining rank");
  cls->add_option("graph", classify_graph, "Graph")->required();
  cls->callback([&] { code = cmd_classify(classify_graph, out); });

  std::vector<std::string> wl_graphs;
  int wl_k = 2;
  std::string wl_variant = "set";
  bool wl_canon = false;
  bool wl_optdim = false;
  auto* wl = app.add_subcommand("wl", "Weisfeiler-Lehman refinement");
  wl->add_option("graphs", wl_graphs, "One or two graphs")->required()->expected(1, 2);
  wl->add_option("--k", wl_k, "Dimension")->check(CLI::PositiveNumber);
  wl->add_option("--variant", wl_variant, "set or multiset");
  wl->add_flag("--canon", wl_canon, "Canonical certificates");
  wl->add_flag("--optdim", wl_optdim, "Least separating dimension");
  wl->callback([&] { code = cmd_wl(wl_graphs, wl_k, wl_variant, wl_canon, wl_optdim, out); });

  std::vector<std::string> cfi_seed;
  std::vector<long long> cfi_random;
  bool cfi_certify = false;
  std::string cfi_out;
  auto* cfi = app.add_subcommand("cfi", "CFI pair from a regular seed");
  cfi->add_option("seed", cfi_seed, "Seed graph")->expected(0, 1);
  cfi->add_option("--random", cfi_random, "d m seed: random regular seed graph")->expected(3);
  cfi->add_flag("--certify", cfi_certify, "Separator and expansion report for the seed");
  cfi->add_option("--out", cfi_out, "Write PREFIX.g6 and PREFIX.json");
  cfi->callback([&] { code = cmd_cfi(cfi_seed, cfi_random, cfi_certify, cfi_out, out); });

  std::vector<std::string> play_graphs;
  std::string play_as = "spoiler";
  std::string play_engine = "optimal";
  int play_rounds = 3;
  auto* play = app.add_subcommand("play", "Play the game in the terminal");
  play->add_option("graphs", play_graphs, "Two graphs")->required()->expected(2);
  play->add_option("--as", play_as, "spoiler or duplicator");
  play->add_option("--engine", play_engine, "optimal or constructive");
  play->add_option("--rounds", play_rounds, "Number of rounds");
  play->callback([&] { code = cmd_play(play_graphs, play_as, play_engine, play_rounds, in, out, err); });

  std::vector<std::string> argv_store{"fodist"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  } catch (const ParseError& e) {
    out << error_json("parse", e.what()).dump() << '\n';
    return kParseError;
  } catch (const IsomorphicInputError& e) {
    out << error_json("isomorphic", e.what()).dump() << '\n';
    return kIsomorphic;
  } catch (const ResourceLimitError& e) {
    out << error_json("resource", e.what()).dump() << '\n';
    return kResourceCap;
  } catch (const std::exception& e) {
    out << error_json("failure", e.what()).dump() << '\n';
    return kFailure;
  }
  return code;
}

}  // namespace fodist::cli
