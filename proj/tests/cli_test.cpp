#include "cli.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fodist/cfi.hpp"
#include "fodist/formula.hpp"
#include "test_support.hpp"

namespace fodist {
namespace {

using json = nlohmann::json;

struct Run {
  int code = 0;
  std::vector<json> lines;
  std::string raw;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, in, out, err);
  r.raw = out.str();
  std::istringstream lines(r.raw);
  std::string line;
  while (std::getline(lines, line))
    if (!line.empty() && line[0] == '{') r.lines.push_back(json::parse(line));
  return r;
}

json strip_timing(json j) {
  if (j.contains("stats")) j["stats"].erase("millis");
  return j;
}

TEST(ResolveGraph, NamesUnionsAndFiles) {
  EXPECT_EQ(cli::resolve_graph("K3").graph, complete_graph(3));
  EXPECT_EQ(cli::resolve_graph("E4").graph, empty_graph(4));
  EXPECT_EQ(cli::resolve_graph("K{1,3}").graph, complete_bipartite(1, 3));
  EXPECT_EQ(cli::resolve_graph("K2+E2").graph, disjoint_union(complete_graph(2), empty_graph(2)));
  EXPECT_EQ(cli::resolve_graph(write_graph6(path_graph(5))).graph, path_graph(5));
  auto cfi = cli::resolve_graph("CFI1(K4)");
  EXPECT_EQ(cfi.graph.order(), 28);
  ASSERT_TRUE(cfi.cfi_seed.has_value());
  EXPECT_EQ(*cfi.cfi_seed, complete_graph(4));
  EXPECT_THROW(cli::resolve_graph("nope!"), ParseError);
  EXPECT_THROW(cli::resolve_graph("C2"), ParseError);
  EXPECT_THROW(cli::resolve_graph("CFI0(P3)"), ParseError);

  auto dir = std::filesystem::temp_directory_path() / "fodist_cli_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "p4.g6");
    f << write_graph6(path_graph(4)) << '\n';
  }
  {
    std::ofstream f(dir / "edges.txt");
    f << write_edge_list(cycle_graph(5));
  }
  EXPECT_EQ(cli::resolve_graph((dir / "p4.g6").string()).graph, path_graph(4));
  EXPECT_EQ(cli::resolve_graph("@" + (dir / "edges.txt").string()).graph, cycle_graph(5));
  EXPECT_THROW(cli::resolve_graph("@" + (dir / "missing").string()), ParseError);
}

TEST(RankCommand, Examples) {
  auto r = run({"rank", "K3", "P3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.lines[0]["results"]["D"], 2);

  auto ex = run({"rank", "--alt", "1", "K2+E2", "K3+E1"});
  ASSERT_EQ(ex.code, 0);
  EXPECT_EQ(ex.lines[0]["results"]["D1"], 3);
  EXPECT_EQ(ex.lines[0]["bounds"][0]["limit"], 3);
  EXPECT_EQ(ex.lines[0]["bounds"][0]["pass"], true);

  EXPECT_EQ(run({"rank", "P4", "P4"}).code, cli::kIsomorphic);
  EXPECT_EQ(run({"rank", "P4", "??"}).code, cli::kParseError);
  EXPECT_EQ(run({"rank", "K17", "E17"}).code, cli::kResourceCap);
}

TEST(RankCommand, FormulaAndPebbles) {
  auto r = run({"rank", "--pebbles", "--formula", "K2+E2", "K3+E1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.lines[0]["results"]["V"], 2);
  Formula f = parse_formula(r.lines[0]["results"]["formula"].get<std::string>());
  EXPECT_EQ(quantifier_rank(f), 3);
  EXPECT_TRUE(evaluate(f, disjoint_union(complete_graph(2), empty_graph(2))));
  EXPECT_FALSE(evaluate(f, disjoint_union(complete_graph(3), empty_graph(1))));
}

TEST(SweepCommand, Examples) {
  auto four = run({"sweep", "4", "--bound-check"});
  ASSERT_EQ(four.code, 0);
  const auto& summary = four.lines.back();
  EXPECT_EQ(summary["cmd"], "sweep-summary");
  EXPECT_EQ(summary["results"]["max"], 3);
  EXPECT_EQ(summary["results"]["violations"], 0);
  EXPECT_EQ(four.lines.size(), 55U + 1U);
  const std::string a = write_graph6(disjoint_union(complete_graph(2), empty_graph(2)));
  const std::string b = write_graph6(disjoint_union(complete_graph(3), empty_graph(1)));
  bool found = false;
  for (const auto& line : four.lines) {
    if (line["cmd"] != "sweep") continue;
    auto in = line["inputs"];
    Graph g = parse_graph6(in[0].get<std::string>());
    Graph h = parse_graph6(in[1].get<std::string>());
    const bool match = (is_isomorphic(g, parse_graph6(a)) && is_isomorphic(h, parse_graph6(b))) ||
                       (is_isomorphic(g, parse_graph6(b)) && is_isomorphic(h, parse_graph6(a)));
    if (match) {
      found = true;
      EXPECT_EQ(line["results"]["D"], 3);
    }
  }
  EXPECT_TRUE(found);

  auto five = run({"sweep", "5", "--alt", "0", "--bound-check"});
  EXPECT_EQ(five.code, 0);
  EXPECT_EQ(five.lines.back()["results"]["violations"], 0);
  EXPECT_EQ(five.lines.back()["bounds"][0]["limit"], 5);

  auto two = run({"sweep", "2"});
  ASSERT_EQ(two.lines.size(), 2U);
  EXPECT_EQ(two.lines[0]["results"]["D"], 2);
  EXPECT_EQ(two.lines[0]["bounds"][0]["limit"], 2);

  EXPECT_NE(run({"sweep", "9"}).code, 0);
}

TEST(SweepCommand, ParallelOutputMatchesSequential) {
  auto one = run({"sweep", "5", "--jobs", "1"});
  auto four = run({"sweep", "5", "--jobs", "4"});
  ASSERT_EQ(one.lines.size(), four.lines.size());
  for (std::size_t i = 0; i < one.lines.size(); ++i) EXPECT_EQ(strip_timing(one.lines[i]), strip_timing(four.lines[i]));
}

TEST(ClassifyCommand, Examples) {
  auto e5 = run({"classify", "E5"}).lines[0]["results"];
  EXPECT_EQ(e5["sigma"], 5);
  EXPECT_EQ(e5["class"], "S1");
  EXPECT_EQ(e5["D"], 6);
  auto p4 = run({"classify", "P4"}).lines[0]["results"];
  EXPECT_EQ(p4["sigma"], 1);
  EXPECT_EQ(p4["class"], "none");
  EXPECT_EQ(p4["D_interval"][1], 4);
  auto mixed = run({"classify", "E4+K2"}).lines[0]["results"];
  EXPECT_EQ(mixed["class"], "S2");
  EXPECT_EQ(mixed["D"], 6);
}

TEST(WlCommand, Examples) {
  auto r = run({"wl", "--k", "2", "K2", "E2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.lines[0]["results"]["decision"], "non-isomorphic");

  auto opt = run({"wl", "--optdim", "CFI0(K4)", "CFI1(K4)"});
  ASSERT_EQ(opt.code, 0);
  EXPECT_GE(opt.lines[0]["results"]["optimal_dimension"].get<int>(), 2);
  EXPECT_EQ(opt.lines[0]["results"]["separator_floor"], 2);
  EXPECT_EQ(opt.lines[0]["results"]["meets_separator_floor"], true);

  std::mt19937_64 rng(4);
  Graph g = testing_support::random_graph(7, 0.5, rng);
  Graph h = permute(g, testing_support::random_permutation(7, rng));
  auto ca = run({"wl", "--canon", write_graph6(g)});
  auto cb = run({"wl", "--canon", write_graph6(h)});
  EXPECT_EQ(ca.lines[0]["results"]["certificates"], cb.lines[0]["results"]["certificates"]);
  auto both = run({"wl", "--canon", write_graph6(g), write_graph6(h)});
  EXPECT_EQ(both.lines[0]["results"]["identical"], true);

  EXPECT_EQ(run({"wl", "K2", "K3"}).code, cli::kFailure);
}

TEST(CfiCommand, Examples) {
  auto k4 = run({"cfi", "K4"});
  ASSERT_EQ(k4.code, 0);
  auto res = k4.lines[0]["results"];
  EXPECT_EQ(res["order"], 28);
  EXPECT_EQ(res["maxdeg"], 4);
  EXPECT_EQ(res["noniso"], true);
  ASSERT_EQ(res["pair"].size(), 2U);
  EXPECT_EQ(parse_graph6(res["pair"][0].get<std::string>()).order(), 28);

  auto rnd = run({"cfi", "--random", "3", "4", "7"});
  ASSERT_EQ(rnd.code, 0);
  EXPECT_EQ(rnd.lines[0]["results"]["pair"], res["pair"]);
  EXPECT_EQ(rnd.lines[0]["seed"], 7);

  auto c5 = run({"cfi", "C5", "--certify"});
  ASSERT_EQ(c5.code, 0);
  auto cr = c5.lines[0]["results"];
  EXPECT_EQ(cr["order"], 20);
  EXPECT_EQ(cr["s"], 2);
  EXPECT_TRUE(cr.contains("i_v"));
  EXPECT_TRUE(cr.contains("i_e"));
  EXPECT_TRUE(cr.contains("certified_lower"));

  EXPECT_EQ(run({"cfi", "P3"}).code, cli::kFailure);

  auto prefix = (std::filesystem::temp_directory_path() / "fodist_cfi_k4").string();
  ASSERT_EQ(run({"cfi", "K4", "--out", prefix}).code, 0);
  std::ifstream g6(prefix + ".g6");
  std::string first, second;
  std::getline(g6, first);
  std::getline(g6, second);
  EXPECT_EQ(first, res["pair"][0].get<std::string>());
  EXPECT_EQ(second, res["pair"][1].get<std::string>());
  std::ifstream side(prefix + ".json");
  json labels = json::parse(side);
  EXPECT_EQ(labels.size(), 28U);
  EXPECT_EQ(labels["0"], "middle(0,{})");
}

TEST(PlayCommand, ConstructiveSpoilerBeatsAnyHuman) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    std::string input;
    for (int i = 0; i < 6; ++i) input += std::to_string(rng() % 3) + "\n";
    auto r = run({"play", "K3", "P3", "--as", "duplicator", "--engine", "constructive", "--rounds", "5"}, input);
    ASSERT_EQ(r.code, 0);
    auto res = r.lines.back()["results"];
    EXPECT_EQ(res["winner"], "spoiler");
    EXPECT_LE(res["rounds"].get<int>(), 2);
  }
}

TEST(PlayCommand, IsomorphismFollowingHumanSurvives) {
  // P4 against itself: the identity reply never loses.
  std::string moves = "g 0\nh 3\ng 1\nh 2\ng 3\n";
  auto r = run({"play", "P4", "P4", "--as", "spoiler", "--rounds", "5"}, moves);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.lines.back()["results"]["winner"], "duplicator");

  std::string replies = "0\n1\n2\n3\n0\n1\n2\n3\n";
  // Optimal Spoiler on isomorphic inputs cannot win; the human echoes its move.
  auto spoiler_side = run({"play", "E4", "E4", "--as", "duplicator", "--engine", "optimal", "--rounds", "4"}, replies);
  ASSERT_EQ(spoiler_side.code, 0);
  EXPECT_EQ(spoiler_side.lines.back()["results"]["winner"], "duplicator");
}

TEST(PlayCommand, IllegalInputIsRepromptedAndEofAborts) {
  auto r = run({"play", "P4", "K{1,3}", "--as", "spoiler", "--rounds", "3"}, "g 99\nx\ng 0\n");
  ASSERT_EQ(r.code, 0);
  auto res = r.lines.back()["results"];
  EXPECT_EQ(res["transcript"].size(), 1U);
  EXPECT_EQ(res["transcript"][0]["vertex"], 0);
  EXPECT_EQ(res["aborted"], true);

  auto d = run({"play", "K3", "P3", "--as", "duplicator", "--engine", "constructive"}, "99\n");
  EXPECT_EQ(d.lines.back()["results"]["aborted"], true);
  EXPECT_EQ(d.lines.back()["results"]["rounds"], 0);
  EXPECT_NE(run({"play", "K3", "P3", "--as", "spoiler", "--engine", "constructive"}).code, 0);
}

TEST(Cli, DeterministicReports) {
  for (const auto& args : std::vector<std::vector<std::string>>{{"rank", "--formula", "C5", "P5"},
                                                                 {"classify", "K{2,3}"},
                                                                 {"cfi", "C4", "--certify"},
                                                                 {"wl", "--k", "3", "C6", "K3+K3"}}) {
    auto a = run(args);
    auto b = run(args);
    ASSERT_EQ(a.lines.size(), b.lines.size());
    for (std::size_t i = 0; i < a.lines.size(); ++i) EXPECT_EQ(strip_timing(a.lines[i]), strip_timing(b.lines[i]));
  }
}

}  // namespace
}  // namespace fodist
