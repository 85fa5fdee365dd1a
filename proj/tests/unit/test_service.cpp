#include <catch_amalgamated.hpp>

#include <set>
#include <thread>

#include "httplib.h"
#include "scall/service.hpp"
#include "support/fixtures.hpp"

using namespace scall;
using namespace scall::testing;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const char* kConsistent3 = R"({"comparison": [[1, 2, 4], [0.5, 1, 2], [0.25, 0.5, 1]]})";
const char* kCycle = R"({"comparison": [[1, 9, "1/9"], ["1/9", 1, 9], [9, "1/9", 1]]})";

std::string allocate_body(const Json& model, Json extra = Json::object()) {
  extra["model"] = model;
  return extra.dump();
}

Json body_of(const HttpResponse& r) { return Json::parse(r.body); }

Json strip_timing(Json j) {
  j.erase("elapsedMs");
  return j;
}

}  // namespace

TEST_CASE("validate endpoint") {
  AllocationService svc;
  const auto ok = svc.validate(e1_doc().dump());
  CHECK(ok.status == 200);
  CHECK(body_of(ok)["valid"] == true);
  CHECK(body_of(ok)["report"].empty());

  Json bad = e1_doc();
  bad["K"][0][1] = 3;
  const auto r = svc.validate(bad.dump());
  CHECK(r.status == 200);
  const auto j = body_of(r);
  CHECK(j["valid"] == false);
  REQUIRE(j["report"].size() >= 1);
  CHECK(j["report"][0]["code"] == "ASYMMETRIC_K");

  const auto junk = svc.validate("not json");
  CHECK(junk.status == 400);
  CHECK(body_of(junk)["error"] == "MALFORMED_BODY");
}

TEST_CASE("ahp endpoint") {
  AllocationService svc;
  const auto ones = svc.ahp(R"({"comparison": [[1,1,1],[1,1,1],[1,1,1]]})");
  REQUIRE(ones.status == 200);
  for (const auto& w : body_of(ones)["weights"]) CHECK_THAT(w.get<double>(), WithinAbs(1.0 / 3, 1e-12));

  const auto cons = svc.ahp(kConsistent3);
  REQUIRE(cons.status == 200);
  const auto j = body_of(cons);
  CHECK_THAT(j["weights"][0].get<double>(), WithinAbs(4.0 / 7, 1e-9));
  CHECK_THAT(j["weights"][1].get<double>(), WithinAbs(2.0 / 7, 1e-9));
  CHECK_THAT(j["weights"][2].get<double>(), WithinAbs(1.0 / 7, 1e-9));
  CHECK_THAT(j["fc"].get<double>(), WithinAbs(1.0 / 7, 1e-9));
  CHECK_THAT(j["lambdaMax"].get<double>(), WithinAbs(3.0, 1e-9));
  CHECK(j["cr"].get<double>() < 1e-9);

  const auto cyc = svc.ahp(kCycle);
  CHECK(cyc.status == 422);
  const auto c = body_of(cyc);
  CHECK(c["error"] == "INCONSISTENT_COMPARISON");
  CHECK(c["cr"].get<double>() > 0.1);

  CHECK(svc.ahp(R"({"comparison": [[1,3],[3,1]]})").status == 400);
  CHECK(svc.ahp(R"({"comparison": [[1,3],[1]]})").status == 400);
  CHECK(svc.ahp(R"({"matrix": []})").status == 400);
  CHECK(svc.ahp("[").status == 400);
}

TEST_CASE("allocate endpoint") {
  AllocationService svc;
  const auto ex = svc.allocate(allocate_body(e1_doc(), {{"method", "exhaustive"}}));
  REQUIRE(ex.status == 200);
  const auto j = body_of(ex);
  CHECK(j["best"]["allocation"] == Json::array({"h1", "h1"}));
  CHECK_THAT(j["best"]["result"]["w"].get<double>(), WithinRel(2.5, 1e-12));
  CHECK(j["tradeoff"]["fc"] == 0.5);

  const auto ga = svc.allocate(allocate_body(e1_doc(), {{"seed", 7}}));
  REQUIRE(ga.status == 200);
  CHECK_THAT(body_of(ga)["best"]["result"]["w"].get<double>(), WithinRel(2.5, 1e-12));
  CHECK(body_of(ga)["method"] == "ga");
}

TEST_CASE("allocate errors") {
  AllocationService svc;
  Json tight = e1_doc();
  tight["R"] = Json::parse("[[1],[1]]");
  const auto none = svc.allocate(allocate_body(tight, {{"method", "exhaustive"}}));
  CHECK(none.status == 409);
  CHECK(body_of(none)["error"] == "NO_FEASIBLE_ALLOCATION");
  CHECK(body_of(none)["detail"]["allocation"] == Json::array({"h1", "h2"}));
  CHECK(svc.allocate(allocate_body(tight)).status == 409);

  Json bad = e1_doc();
  bad["C"][0][1] = 5;
  const auto invalid = svc.allocate(allocate_body(bad));
  CHECK(invalid.status == 422);
  CHECK(body_of(invalid)["error"] == "INVALID_MODEL");

  Json no_cmp = e1_doc();
  no_cmp.erase("comparison");
  CHECK(body_of(svc.allocate(allocate_body(no_cmp)))["error"] == "MISSING_COMPARISON");
  CHECK(svc.allocate(allocate_body(no_cmp, {{"uniformWeights", true}})).status == 200);

  Json auv = auv_doc();
  auv["comparison"] = Json::parse(R"([[1,9,"1/9",1],["1/9",1,9,1],[9,"1/9",1,1],[1,1,1,1]])");
  const auto inc = svc.allocate(allocate_body(auv));
  CHECK(inc.status == 422);
  CHECK(body_of(inc)["error"] == "INCONSISTENT_COMPARISON");
  CHECK(body_of(inc)["detail"]["cr"].get<double>() >= 0.1);

  CHECK(svc.allocate(allocate_body(e1_doc(), {{"method", "annealing"}})).status == 400);
  CHECK(svc.allocate(allocate_body(e1_doc(), {{"alternatives", 0}})).status == 400);
  CHECK(svc.allocate(allocate_body(e1_doc(), {{"gaConfig", {{"populationSize", 1}}}})).status == 400);
  CHECK(svc.allocate(R"({"method": "ga"})").status == 400);

  ServiceConfig small;
  small.exhaustive_cap = 1000;
  const auto big = AllocationService(small).allocate(allocate_body(auv_doc(), {{"method", "exhaustive"}}));
  CHECK(big.status == 413);
  CHECK(body_of(big)["error"] == "SPACE_TOO_LARGE");

  ServiceConfig hurried;
  hurried.request_timeout = std::chrono::milliseconds(0);
  const auto late = AllocationService(hurried).allocate(allocate_body(auv_doc(), {{"method", "exhaustive"}}));
  CHECK(late.status == 504);
  CHECK(body_of(late)["error"] == "TIMEOUT");
}

TEST_CASE("auv alternatives through the service") {
  AllocationService svc;
  const auto r = svc.allocate(allocate_body(auv_doc(), {{"method", "ga"}, {"alternatives", 5}, {"seed", 3}}));
  REQUIRE(r.status == 200);
  const auto alts = body_of(r)["alternatives"];
  CHECK(alts.size() >= 1);
  CHECK(alts.size() <= 5);
  std::set<std::string> seen;
  double last = 0.0;
  for (const auto& a : alts) {
    CHECK(seen.insert(a["allocation"].dump()).second);
    CHECK(a["result"]["w"].get<double>() >= last);
    last = a["result"]["w"].get<double>();
  }
}

TEST_CASE("same request, same bytes") {
  const std::string body = allocate_body(auv_doc(), {{"seed", 11}, {"alternatives", 3}});
  const auto a = AllocationService().allocate(body);
  const auto b = AllocationService().allocate(body);
  REQUIRE(a.status == 200);
  CHECK(strip_timing(body_of(a)).dump() == strip_timing(body_of(b)).dump());
}

TEST_CASE("http routes") {
  AllocationService svc;
  httplib::Server server;
  mount_routes(server, svc);
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  const auto health = client.Get("/api/v1/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(health->get_header_value("Access-Control-Allow-Origin") == "*");

  const auto v = client.Post("/api/v1/validate", e1_doc().dump(), "application/json");
  REQUIRE(v);
  CHECK(v->status == 200);
  CHECK(Json::parse(v->body)["valid"] == true);

  const auto a = client.Post("/api/v1/allocate", allocate_body(e1_doc(), {{"method", "exhaustive"}}),
                             "application/json");
  REQUIRE(a);
  CHECK(a->status == 200);
  CHECK(Json::parse(a->body)["best"]["allocation"] == Json::array({"h1", "h1"}));

  const auto w = client.Post("/api/v1/ahp", kCycle, "application/json");
  REQUIRE(w);
  CHECK(w->status == 422);

  const auto junk = client.Post("/api/v1/validate", "not json", "application/json");
  REQUIRE(junk);
  CHECK(junk->status == 400);

  const auto pre = client.Options("/api/v1/allocate");
  REQUIRE(pre);
  CHECK(pre->status == 204);
  CHECK(pre->get_header_value("Access-Control-Allow-Methods").find("POST") != std::string::npos);

  server.stop();
  th.join();
}
