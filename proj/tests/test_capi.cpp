#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <json.hpp>

#include "germlab/germlab.h"

using nlohmann::json;

namespace {

// Takes ownership of a library string.
std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  germlab_free_string(s);
  return out;
}

}  // namespace

TEST_CASE("version and error reporting") {
  CHECK(std::strlen(germlab_version()) > 0);
  germlab_sequence* a = nullptr;
  CHECK(germlab_sequence_family("nope", nullptr, &a) == GERMLAB_INVALID_ARGUMENT);
  CHECK(a == nullptr);
  CHECK(std::string(germlab_last_error()).find("nope") != std::string::npos);
  CHECK(germlab_sequence_family("geometric", "{\"q\": 2}", &a) == GERMLAB_INVALID_ARGUMENT);
  CHECK(germlab_sequence_family("harmonic", "{\"c\": 1}", &a) == GERMLAB_SCHEMA);
  CHECK(std::string(germlab_last_error()).find("params.c: unknown field") != std::string::npos);
  CHECK(germlab_sequence_family("harmonic", "{", &a) == GERMLAB_PARSE);
  CHECK(germlab_sequence_family(nullptr, nullptr, &a) == GERMLAB_INVALID_ARGUMENT);
  CHECK(germlab_sequence_family("harmonic", nullptr, nullptr) == GERMLAB_INVALID_ARGUMENT);
  germlab_sequence_free(nullptr);
  germlab_germ_free(nullptr);
  germlab_map_free(nullptr);
  germlab_dirset_free(nullptr);
  germlab_schedule_free(nullptr);
}

TEST_CASE("schedules") {
  germlab_schedule* s = nullptr;
  REQUIRE(germlab_schedule_create(1.0, 0.5, 10, &s) == GERMLAB_OK);
  char* txt = nullptr;
  REQUIRE(germlab_schedule_to_json(s, &txt) == GERMLAB_OK);
  const json j = json::parse(take(txt));
  CHECK(j == json{{"t0", 1.0}, {"r", 0.5}, {"depth", 10}});
  germlab_schedule* s2 = nullptr;
  REQUIRE(germlab_schedule_from_json(j.dump().c_str(), &s2) == GERMLAB_OK);
  germlab_schedule_free(s2);
  germlab_schedule_free(s);
  CHECK(germlab_schedule_create(1.0, 2.0, 10, &s) == GERMLAB_INVALID_ARGUMENT);
  CHECK(germlab_schedule_from_json("{\"t0\": 1, \"r\": 0.5, \"depth\": 4, \"x\": 1}", &s) == GERMLAB_SCHEMA);
}

TEST_CASE("sequences") {
  germlab_sequence* a = nullptr;
  REQUIRE(germlab_sequence_family("geometric", "{\"q\": 0.5}", &a) == GERMLAB_OK);
  double v = 0.0;
  REQUIRE(germlab_sequence_value(a, 3, &v) == GERMLAB_OK);
  CHECK(v == 0.125);
  char* rep = nullptr;
  germlab_outcome o = GERMLAB_PASS;
  REQUIRE(germlab_ssp_sequence(a, 10000, 1e-2, 0, 8, &rep, &o) == GERMLAB_OK);
  CHECK(o == GERMLAB_FAIL);
  const json r = json::parse(take(rep));
  CHECK(r["outcome"] == "fail");
  CHECK(r["analysis"].is_string());
  char* doc = nullptr;
  REQUIRE(germlab_sequence_to_json(a, &doc) == GERMLAB_OK);
  germlab_sequence* b = nullptr;
  REQUIRE(germlab_sequence_from_json(take(doc).c_str(), &b) == GERMLAB_OK);
  double w = 0.0;
  REQUIRE(germlab_sequence_value(b, 7, &w) == GERMLAB_OK);
  CHECK(w == std::ldexp(1.0, -7));
  germlab_sequence_free(b);
  germlab_sequence_free(a);

  REQUIRE(germlab_sequence_family("harmonic", nullptr, &a) == GERMLAB_OK);
  REQUIRE(germlab_ssp_sequence(a, 10000, 1e-2, 0, 8, &rep, &o) == GERMLAB_OK);
  CHECK(o == GERMLAB_PASS);
  germlab_free_string(rep);
  germlab_sequence_free(a);
}

TEST_CASE("germs, directions and dimensions") {
  germlab_germ* g = nullptr;
  REQUIRE(germlab_germ_from_json("{\"kind\": \"sector\", \"theta1\": 0, \"theta2\": 0.7}", nullptr, 8,
                                 GERMLAB_DEFAULT_SEED, &g) == GERMLAB_OK);
  CHECK(germlab_germ_dim(g) == 2);
  const double p[2] = {0.0, -0.5};
  double d = -1.0;
  REQUIRE(germlab_germ_distance(g, p, 2, &d) == GERMLAB_OK);
  CHECK(d == doctest::Approx(0.5));
  CHECK(germlab_germ_distance(g, p, 3, &d) == GERMLAB_INVALID_ARGUMENT);

  char* rep = nullptr;
  germlab_outcome o = GERMLAB_FAIL;
  REQUIRE(germlab_ssp_germ(g, nullptr, 0.025, 0.05, &rep, &o) == GERMLAB_OK);
  CHECK(o == GERMLAB_PASS);
  germlab_free_string(rep);

  germlab_dirset* ds = nullptr;
  REQUIRE(germlab_direction(g, nullptr, 0.025, &ds, &rep) == GERMLAB_OK);
  germlab_free_string(rep);
  CHECK(germlab_dirset_size(ds) > 5);
  REQUIRE(germlab_dimension(ds, nullptr, 0, &rep) == GERMLAB_OK);
  CHECK(json::parse(take(rep))["result"]["dimension"] == 1);
  char* dj = nullptr;
  REQUIRE(germlab_dirset_to_json(ds, &dj) == GERMLAB_OK);
  germlab_dirset* ds2 = nullptr;
  REQUIRE(germlab_dirset_from_json(take(dj).c_str(), &ds2) == GERMLAB_OK);
  CHECK(germlab_dirset_size(ds2) == germlab_dirset_size(ds));
  germlab_dirset_free(ds2);
  germlab_dirset_free(ds);

  char* gj = nullptr;
  REQUIRE(germlab_germ_to_json(g, &gj) == GERMLAB_OK);
  germlab_germ* g2 = nullptr;
  REQUIRE(germlab_germ_from_json(take(gj).c_str(), nullptr, 8, 1, &g2) == GERMLAB_OK);
  REQUIRE(germlab_germ_distance(g2, p, 2, &d) == GERMLAB_OK);
  CHECK(d >= 0.5);
  germlab_germ_free(g2);
  germlab_germ_free(g);

  CHECK(germlab_germ_from_json("{\"kind\": \"ray\"}", nullptr, 8, 1, &g) == GERMLAB_SCHEMA);
}

TEST_CASE("maps, extension and pseudo-derivative") {
  germlab_map* f = nullptr;
  REQUIRE(germlab_map_from_json("{\"kind\": \"rotation\", \"params\": {\"angle\": 1.5707963267948966}}", &f) ==
          GERMLAB_OK);
  CHECK(germlab_map_dim_in(f) == 2);
  CHECK(germlab_map_dim_out(f) == 2);
  const double x[2] = {1.0, 0.0};
  double y[2] = {0.0, 0.0};
  REQUIRE(germlab_map_eval(f, x, 2, y, 2) == GERMLAB_OK);
  CHECK(std::abs(y[0]) <= 1e-15);
  CHECK(y[1] == 1.0);
  CHECK(germlab_map_eval(f, x, 1, y, 2) == GERMLAB_INVALID_ARGUMENT);
  char* rep = nullptr;
  germlab_outcome o = GERMLAB_FAIL;
  REQUIRE(germlab_pseudo_derivative(f, nullptr, 1e-3, 20, &rep, &o) == GERMLAB_OK);
  CHECK(o == GERMLAB_PASS);
  germlab_free_string(rep);
  germlab_map_free(f);

  germlab_map* ext = nullptr;
  REQUIRE(germlab_extend("{\"points\": [0, 1, 3], \"values\": [0, 1, 2]}", 0.0, nullptr, "[0.5, 2, 5]", &ext,
                         &rep) == GERMLAB_OK);
  const json r = json::parse(take(rep));
  CHECK(r["result"]["max_anchor_deviation"] == 0.0);
  const double pt[1] = {3.0};
  double v = 0.0;
  REQUIRE(germlab_map_eval(ext, pt, 1, &v, 1) == GERMLAB_OK);
  CHECK(v == 2.0);
  germlab_map_free(ext);
  CHECK(germlab_extend("{\"points\": [0, 1], \"values\": [0, 5]}", 1.0, "inf", nullptr, nullptr, &rep) ==
        GERMLAB_INVALID_ARGUMENT);
  CHECK(germlab_extend("{\"points\": [0, 1], \"values\": [0, 1]}", 1.0, "middle", nullptr, nullptr, &rep) !=
        GERMLAB_OK);
}

TEST_CASE("harnesses through the C API") {
  germlab_germ *a = nullptr, *b = nullptr;
  REQUIRE(germlab_germ_from_json("{\"kind\": \"ray\", \"dir\": [1, 0]}", nullptr, 8, 1, &a) == GERMLAB_OK);
  REQUIRE(germlab_germ_from_json("{\"kind\": \"ray\", \"dir\": [0, 1]}", nullptr, 8, 1, &b) == GERMLAB_OK);
  germlab_map* rot = nullptr;
  REQUIRE(germlab_map_from_json("{\"kind\": \"rotation\", \"params\": {\"angle\": 1.5707963267948966}}", &rot) ==
          GERMLAB_OK);
  char* rep = nullptr;
  germlab_outcome o = GERMLAB_FAIL;
  REQUIRE(germlab_cone_invariance(a, b, rot, nullptr, &rep, &o) == GERMLAB_OK);
  CHECK(o == GERMLAB_PASS);
  germlab_free_string(rep);
  REQUIRE(germlab_weak_transversality(a, b, rot, "{\"eps\": 0.025}", &rep, &o) == GERMLAB_OK);
  CHECK(o == GERMLAB_PASS);
  germlab_free_string(rep);
  REQUIRE(germlab_transversality(a, b, nullptr, nullptr, &rep, &o) == GERMLAB_OK);
  CHECK(o == GERMLAB_PASS);
  CHECK(json::parse(take(rep))["result"]["transverse"] == true);
  CHECK(germlab_cone_invariance(a, b, rot, "{\"bogus\": 1}", &rep, &o) == GERMLAB_SCHEMA);
  germlab_map_free(rot);
  germlab_germ_free(a);
  germlab_germ_free(b);
}

TEST_CASE("demos and evidence") {
  char* names = nullptr;
  REQUIRE(germlab_demo_names(&names) == GERMLAB_OK);
  const json n = json::parse(take(names));
  REQUIRE(n.is_array());
  CHECK(n.size() == 10);
  char* rep = nullptr;
  germlab_outcome o = GERMLAB_FAIL;
  REQUIRE(germlab_demo("blowup", 7, &rep, &o) == GERMLAB_OK);
  CHECK(o == GERMLAB_PASS);
  const std::string report = take(rep);
  const json r = json::parse(report);
  CHECK(r["demo"] == "blowup");
  char* csv = nullptr;
  REQUIRE(germlab_report_evidence_csv(report.c_str(), &csv) == GERMLAB_OK);
  const std::string c = take(csv);
  CHECK(c.rfind("X,Y,x,y\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : c) lines += ch == '\n';
  CHECK(lines == r["evidence"]["rows"].size() + 1);
  CHECK(germlab_demo("nope", 1, &rep, &o) == GERMLAB_INVALID_ARGUMENT);
}
