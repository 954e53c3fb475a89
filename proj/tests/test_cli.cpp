#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cssample/cli.hpp"

using json = nlohmann::json;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args,
                  const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = css::dispatch(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

const std::string kPairsStream = "1 2 3\n1 2 4\n1 2 5\n";
const std::string kK4Incidence = "1: 2 3 4\n2: 1 3 4\n3: 1 2 4\n4: 1 2 3\n";
const std::string kCycleIncidence = "1: 2 4\n2: 1 3\n3: 2 4\n4: 1 3\n";

}  // namespace

TEST_CASE("cli sample: q = 1 lists every pair, manifest first") {
  auto r = run_cli({"sample", "--input", "-", "--k", "2", "--q", "1", "--seed",
                    "7"},
                   "3 1 2\n");
  CHECK(r.code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);

  json manifest = json::parse(lines[0]);
  CHECK(manifest["tool"] == "cssample");
  CHECK(manifest["version"] == std::string(css::kToolVersion));
  CHECK(manifest["subcommand"] == "sample");
  CHECK(manifest["flags"]["k"] == "2");
  CHECK(manifest["flags"]["q"] == "1");
  CHECK(manifest["seed"] == 7);
  CHECK(manifest["input_digest"].get<std::string>().size() == 16);

  json data = json::parse(lines[1]);
  CHECK(data["transaction"] == 1);
  CHECK(data["subsets"] == json::parse("[[1,2],[1,3],[2,3]]"));
}

TEST_CASE("cli sample: full bucket range covers all k-subsets") {
  auto r = run_cli({"sample", "--input", "-", "--k", "4", "--q", "7", "--seed",
                    "3", "--range", "0:7"},
                   "1 2 3 4\n");
  CHECK(r.code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(json::parse(lines[1])["subsets"] == json::parse("[[1,2,3,4]]"));

  // The same window split at an interior point partitions that output.
  auto left = run_cli({"sample", "--input", "-", "--k", "4", "--q", "7",
                       "--seed", "3", "--range", "0:4"},
                      "1 2 3 4\n");
  auto right = run_cli({"sample", "--input", "-", "--k", "4", "--q", "7",
                        "--seed", "3", "--range", "4:7"},
                       "1 2 3 4\n");
  const auto nl = json::parse(lines_of(left.out)[1])["subsets"].size();
  const auto nr = json::parse(lines_of(right.out)[1])["subsets"].size();
  CHECK(nl + nr == 1);
}

TEST_CASE("cli sample: tradeoff mode emits the same subsets") {
  const std::string input = "1 2 3 4 5\n2 3 9 11 40 41\n";
  auto plain = run_cli(
      {"sample", "--input", "-", "--k", "4", "--q", "3", "--seed", "5"}, input);
  auto traded = run_cli({"sample", "--input", "-", "--k", "4", "--q", "3",
                         "--seed", "5", "--tradeoff", "1"},
                        input);
  CHECK(plain.code == 0);
  CHECK(traded.code == 0);
  auto pl = lines_of(plain.out);
  auto tl = lines_of(traded.out);
  REQUIRE(pl.size() == tl.size());
  for (std::size_t i = 1; i < pl.size(); ++i) CHECK(pl[i] == tl[i]);
}

TEST_CASE("cli estimate agrees with cli oracle at pinned q = 1") {
  auto est = run_cli({"estimate", "--input", "-", "--k", "2", "--alpha", "0.5",
                      "--epsilon", "0.5", "--delta", "0.3", "--min-support",
                      "2", "--m", "3", "--b-max", "3", "--seed", "9",
                      "--force-q", "1", "--force-s", "1"},
                     kPairsStream);
  CHECK(est.code == 0);
  json doc = json::parse(est.out);
  CHECK(doc["manifest"]["subcommand"] == "estimate");
  CHECK(doc["manifest"]["flags"]["force-q"] == "1");
  CHECK(doc["f_hat"] == 1.0);
  CHECK(doc["z_hat"] == 7.0);
  // m = 3 gives 2 runs per copy; delta = 0.3 gives 3 copies.
  CHECK(doc["runs"].size() == 6);
  CHECK(doc["copies"].size() == 3);

  auto oracle = run_cli(
      {"oracle", "--input", "-", "--k", "2", "--min-support", "2"},
      kPairsStream);
  CHECK(oracle.code == 0);
  json odoc = json::parse(oracle.out);
  CHECK(odoc["f"] == 1);
  CHECK(odoc["z"] == 7);
  CHECK(odoc["manifest"]["seed"] == 0);
  CHECK(doc["f_hat"].get<double>() == odoc["f"].get<double>());
}

TEST_CASE("cli estimate signals failure with exit 1 and a full report") {
  auto r = run_cli({"estimate", "--input", "-", "--k", "2", "--alpha", "0.5",
                    "--epsilon", "0.5", "--delta", "0.3", "--min-support", "2",
                    "--m", "3", "--b-max", "3", "--seed", "9", "--force-s",
                    "1000000"},
                   kPairsStream);
  CHECK(r.code == 1);
  json doc = json::parse(r.out);
  CHECK(doc["f_hat"].is_null());
  for (const auto& run : doc["runs"]) CHECK(run["sentinel"] == true);
}

TEST_CASE("cli graph cliques matches its oracle on the complete graph") {
  auto r = run_cli({"graph", "cliques", "--input", "-", "--k", "3", "--gamma",
                    "0.5", "--epsilon", "0.5", "--delta", "0.3", "--max-degree",
                    "3", "--seed", "4", "--force-q", "1", "--force-s", "1",
                    "--oracle"},
                   kK4Incidence);
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["manifest"]["subcommand"] == "graph cliques");
  CHECK(doc["k_cliques_hat"] == 4.0);
  CHECK(doc["oracle"]["k_cliques"] == 4);
  CHECK(doc["oracle"]["stars"] == 12);
}

TEST_CASE("cli graph bicliques matches its oracle on the 4-cycle") {
  auto r = run_cli({"graph", "bicliques", "--input", "-", "--j", "2",
                    "--min-left", "2", "--gamma", "0.5", "--epsilon", "0.5",
                    "--delta", "0.3", "--max-degree", "2", "--seed", "4",
                    "--force-q", "1", "--force-s", "1", "--oracle"},
                   kCycleIncidence);
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["bicliques_hat"] == 2.0);
  CHECK(doc["oracle"]["bicliques"] == 2);
  CHECK(doc["oracle"]["adjacencies"] == 2);
}

TEST_CASE("cli sketch reports counters and a query estimate") {
  auto r = run_cli({"sketch", "--input", "-", "--k", "2", "--width", "8",
                    "--depth", "2", "--workers", "2", "--kind", "countmin",
                    "--seed", "5", "--query", "1,2"},
                   "1 2 3\n1 2 3\n");
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["kind"] == "countmin");
  CHECK(doc["counters"].size() == 16);
  long long sum = 0;
  for (const auto& c : doc["counters"]) sum += c.get<long long>();
  CHECK(sum == 12);  // 2 rows x 3 pairs x 2 transactions
  CHECK(doc["query"] == json::parse("[1,2]"));
  CHECK(doc["estimate"].get<long long>() >= 2);
}

TEST_CASE("cli usage errors exit 2 with help on stderr") {
  {
    auto r = run_cli({"sample", "--nope"});
    CHECK(r.code == 2);
    CHECK(r.err.find("error:") != std::string::npos);
    CHECK(r.err.find("Usage") != std::string::npos);
  }
  {
    auto r = run_cli({"sample", "--input", "-", "--k", "2", "--q", "4",
                      "--seed", "1", "--tradeoff", "1", "--range", "0:2"});
    CHECK(r.code == 2);  // mutually exclusive flags
  }
  {
    auto r = run_cli({"sample", "--input", "-", "--q", "4", "--seed", "1"});
    CHECK(r.code == 2);  // missing required --k
  }
  {
    auto r = run_cli({"frobnicate"});
    CHECK(r.code == 2);
  }
  {
    auto r = run_cli({"graph"});
    CHECK(r.code == 2);  // graph requires a nested subcommand
  }
  {
    auto r = run_cli({});
    CHECK(r.code == 2);
  }
}

TEST_CASE("cli domain errors exit 2 before any output") {
  {
    auto r = run_cli({"sample", "--input", "-", "--k", "1", "--q", "4",
                      "--seed", "1"},
                     "1 2\n");
    CHECK(r.code == 2);
    CHECK(r.out.empty());
  }
  {
    auto r = run_cli({"sample", "--input", "-", "--k", "4", "--q", "7",
                      "--seed", "1", "--range", "5:2"},
                     "1 2 3 4\n");
    CHECK(r.code == 2);
    CHECK(r.out.empty());
  }
  {
    auto r = run_cli({"sample", "--input", "-", "--k", "4", "--q", "7",
                      "--seed", "1", "--range", "0:9"},
                     "1 2 3 4\n");
    CHECK(r.code == 2);
  }
  {
    auto r = run_cli({"estimate", "--input", "-", "--k", "2", "--alpha", "0",
                      "--epsilon", "0.5", "--delta", "0.3", "--min-support",
                      "2", "--m", "3", "--b-max", "3", "--seed", "9"},
                     kPairsStream);
    CHECK(r.code == 2);
    CHECK(r.out.empty());
  }
  {
    auto r = run_cli({"sketch", "--input", "-", "--k", "2", "--width", "9",
                      "--depth", "2", "--workers", "2", "--kind", "countmin",
                      "--seed", "5"},
                     "1 2\n");
    CHECK(r.code == 2);  // workers must divide width
  }
  {
    auto r = run_cli({"sketch", "--input", "-", "--k", "2", "--width", "8",
                      "--depth", "2", "--workers", "2", "--kind", "countmin",
                      "--seed", "5", "--query", "1,2,3"},
                     "1 2\n");
    CHECK(r.code == 2);  // query size != k
  }
}

TEST_CASE("cli input errors exit 1 with the offending position") {
  {
    auto r = run_cli({"sample", "--input", "-", "--k", "2", "--q", "4",
                      "--seed", "1"},
                     "1 x\n");
    CHECK(r.code == 1);
    CHECK(r.err.find("line 1, column 3") != std::string::npos);
  }
  {
    auto r = run_cli({"estimate", "--input", "-", "--k", "2", "--alpha", "0.5",
                      "--epsilon", "0.5", "--delta", "0.3", "--min-support",
                      "2", "--m", "3", "--b-max", "2", "--seed", "9"},
                     kPairsStream);
    CHECK(r.code == 1);  // transactions exceed the declared b-max
    CHECK(r.err.find("line 1") != std::string::npos);
  }
  {
    auto r = run_cli({"sample", "--input", "/nonexistent/path.txt", "--k", "2",
                      "--q", "4", "--seed", "1"});
    CHECK(r.code == 1);
    CHECK(r.err.find("cannot open input") != std::string::npos);
  }
  {
    auto r = run_cli({"graph", "cliques", "--input", "-", "--k", "3",
                      "--gamma", "0.5", "--epsilon", "0.5", "--delta", "0.3",
                      "--max-degree", "2", "--seed", "4"},
                     kK4Incidence);
    CHECK(r.code == 1);  // declared degree bound below the true degree
  }
}

TEST_CASE("cli version flag prints the tool version") {
  auto r = run_cli({"--version"});
  CHECK(r.code == 0);
  CHECK(r.out.find(css::kToolVersion) != std::string::npos);
}

TEST_CASE("cli runs are byte-identical across repeats") {
  const std::vector<std::vector<std::string>> invocations = {
      {"sample", "--input", "-", "--k", "3", "--q", "5", "--seed", "11"},
      {"estimate", "--input", "-", "--k", "2", "--alpha", "0.5", "--epsilon",
       "0.5", "--delta", "0.3", "--min-support", "2", "--m", "3", "--b-max",
       "3", "--seed", "11"},
  };
  for (const auto& args : invocations) {
    auto a = run_cli(args, kPairsStream);
    auto b = run_cli(args, kPairsStream);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}
