#include <catch_amalgamated.hpp>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "scall/cli.hpp"
#include "scall/report_json.hpp"
#include "support/fixtures.hpp"

using namespace scall;
using namespace scall::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("scall_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& content) const {
    const auto p = path_ / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

}  // namespace

TEST_CASE("validate command") {
  TempDir dir;
  CHECK(run({"validate", data_path("e1.json")}).code == kExitOk);

  Json bad = e1_doc();
  bad["K"][0][1] = 3;
  const auto r = run({"validate", dir.write("bad.json", bad.dump())});
  CHECK(r.code == kExitDomainFailure);
  CHECK(r.out.find("ASYMMETRIC_K") != std::string::npos);

  const auto js = run({"validate", dir.write("bad2.json", bad.dump()), "--json"});
  CHECK(js.code == kExitDomainFailure);
  CHECK(Json::parse(js.out)["valid"] == false);

  CHECK(run({"validate", dir.write("junk.json", "this is not json")}).code == kExitInputFailure);
  CHECK(run({"validate", dir.file("missing.json")}).code == kExitInputFailure);
}

TEST_CASE("weights command") {
  TempDir dir;
  Json doc = e1_doc();
  doc["resources"].push_back({{"id", "r2"}, {"name", "time"}, {"unit", "ms"}});
  doc["T"] = Json::parse("[[[2,1],[4,1]],[[3,1],[1,1]]]");
  doc["R"] = Json::parse("[[5,5],[5,5]]");

  doc["comparison"] = Json::parse("[[1,1,1],[1,1,1],[1,1,1]]");
  auto r = run({"weights", dir.write("ones.json", doc.dump()), "--json"});
  REQUIRE(r.code == kExitOk);
  auto j = Json::parse(r.out);
  for (const auto& w : j["weights"]) CHECK(w.get<double>() == Catch::Approx(1.0 / 3).margin(1e-12));
  CHECK(j["cr"].get<double>() == Catch::Approx(0.0).margin(1e-12));

  doc["comparison"] = Json::parse(R"([[1,2,4],["1/2",1,2],["1/4","1/2",1]])");
  r = run({"weights", dir.write("cons.json", doc.dump()), "--json"});
  REQUIRE(r.code == kExitOk);
  j = Json::parse(r.out);
  CHECK(j["weights"][0].get<double>() == Catch::Approx(4.0 / 7).margin(1e-9));
  CHECK(j["weights"][2].get<double>() == Catch::Approx(1.0 / 7).margin(1e-9));

  doc["comparison"] = Json::parse(R"([[1,9,"1/9"],["1/9",1,9],[9,"1/9",1]])");
  r = run({"weights", dir.write("cyc.json", doc.dump())});
  CHECK(r.code == kExitDomainFailure);
  CHECK(r.out.find("CR = ") != std::string::npos);

  doc.erase("comparison");
  r = run({"weights", dir.write("none.json", doc.dump())});
  CHECK(r.code == kExitDomainFailure);
  CHECK(r.err.find("--uniform-weights") != std::string::npos);
}

TEST_CASE("allocate command") {
  TempDir dir;
  auto r = run({"allocate", data_path("e1.json"), "--method", "exhaustive", "--json"});
  REQUIRE(r.code == kExitOk);
  auto j = Json::parse(r.out);
  CHECK(j["best"]["allocation"] == Json::array({"h1", "h1"}));
  CHECK(j["best"]["result"]["w"] == 2.5);

  r = run({"allocate", data_path("e1.json"), "--seed", "7", "--json"});
  REQUIRE(r.code == kExitOk);
  CHECK(Json::parse(r.out)["best"]["result"]["w"] == 2.5);

  r = run({"allocate", data_path("e1.json"), "--method", "exhaustive"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("w = 2.5") != std::string::npos);
  CHECK(r.out.find("residual") != std::string::npos);

  Json tight = e1_doc();
  tight["R"] = Json::parse("[[1],[1]]");
  r = run({"allocate", dir.write("tight.json", tight.dump()), "--method", "exhaustive"});
  CHECK(r.code == kExitDomainFailure);
  CHECK(r.err.find("NO_FEASIBLE_ALLOCATION") != std::string::npos);

  ::setenv("SCALL_EXHAUSTIVE_CAP", "100", 1);
  r = run({"allocate", data_path("auv.json"), "--method", "exhaustive"});
  ::unsetenv("SCALL_EXHAUSTIVE_CAP");
  CHECK(r.code == kExitInputFailure);
  CHECK(r.err.find("SPACE_TOO_LARGE") != std::string::npos);

  CHECK(run({"allocate", data_path("e1.json"), "--method", "magic"}).code == kExitInputFailure);
  CHECK(run({"allocate"}).code == kExitInputFailure);
  CHECK(run({"frobnicate"}).code == kExitInputFailure);
  CHECK(run({}).code == kExitInputFailure);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("allocate json round-trips") {
  const auto model = auv_model();
  const auto r = run({"allocate", data_path("auv.json"), "--seed", "42", "--json"});
  REQUIRE(r.code == kExitOk);
  const auto doc = Json::parse(r.out);
  const SearchReport report = search_report_from_json(model, doc);
  CHECK(search_report_to_json(model, report).dump(2) + "\n" == r.out);
  CHECK(doc["best"]["result"]["w"].get<double>() == Catch::Approx(561.3353921139876).epsilon(1e-12));
}

TEST_CASE("auv alternatives") {
  const auto r = run({"allocate", data_path("auv.json"), "--alternatives", "5", "--json"});
  REQUIRE(r.code == kExitOk);
  const auto alts = Json::parse(r.out)["alternatives"];
  CHECK(alts.size() == 5);
  for (std::size_t a = 1; a < alts.size(); ++a) {
    CHECK(alts[a - 1]["result"]["w"].get<double>() <= alts[a]["result"]["w"].get<double>());
    CHECK(alts[a - 1]["allocation"] != alts[a]["allocation"]);
  }
}

TEST_CASE("bench command") {
  TempDir dir;
  const auto csv = dir.file("bench.csv");
  const auto r = run({"bench", "--instances", "4", "--n", "3..4", "--m", "3..3", "--csv", csv});
  REQUIRE(r.code == kExitOk);
  CHECK(Json::parse(r.out)["instances"] == 4);
  const std::string text = read_file(csv);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);

  CHECK(run({"bench", "--n", "5..3"}).code == kExitInputFailure);
  CHECK(run({"bench", "--n", "x"}).code == kExitInputFailure);
}
