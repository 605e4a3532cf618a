#include <doctest.h>

#include "odba/io.hpp"
#include "odba/reference_states.hpp"

using namespace odba;

namespace {

json base_config() {
  return json::parse(R"({
    "N": 2, "eta": 0.3,
    "boundary": {"kind": "I", "zeta": 0.1, "c": 1.0, "c1": -0.5},
    "dual": {"zeta": -0.1, "c": -0.5, "c1": -0.7}
  })");
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig cfg = parse_config(base_config());
  CHECK(cfg.spec.n_sites == 2);
  CHECK(cfg.spec.is_homogeneous());
  CHECK(cfg.pair.kind() == BoundaryKind::I);
  CHECK(cfg.pair.plus.c1 == cplx(-0.7));
  CHECK(cfg.tolerances.newton == 1e-12);
  CHECK(cfg.rng_seed == 1);
}

TEST_CASE("config round trip") {
  json j = base_config();
  j["theta"] = json::array({json::array({0.1, 0.02}), -0.05});
  j["boundary"]["kind"] = "III";
  j["rng_seed"] = 17;
  const RunConfig a = parse_config(j);
  const RunConfig b = parse_config(json::parse(dump(config_to_json(a))));
  CHECK(a.spec.theta == b.spec.theta);
  CHECK(a.pair.minus.c2 == b.pair.minus.c2);
  CHECK(a.pair.plus.zeta == b.pair.plus.zeta);
  CHECK(b.pair.kind() == BoundaryKind::III);
  CHECK(b.rng_seed == 17);
  CHECK(dump(config_to_json(a)) == dump(config_to_json(b)));
}

TEST_CASE("reference config matches the benchmark parameters") {
  const RunConfig ref = reference_config();
  const RunConfig parsed = parse_config(base_config());
  CHECK(dump(config_to_json(ref)) == dump(config_to_json(parsed)));
}

TEST_CASE("strict config parsing") {
  auto rejects = [](json j) { CHECK_THROWS_AS(parse_config(j), ConfigError); };
  json j = base_config();
  j["etta"] = 0.3;
  rejects(j);
  j = base_config();
  j["boundary"]["zeta_prime"] = 0.1;
  rejects(j);
  j = base_config();
  j["eta"] = 0.0;
  rejects(j);
  j = base_config();
  j["boundary"]["c"] = 0.0;
  rejects(j);
  j = base_config();
  j["dual"]["c1"] = 0.0;
  rejects(j);
  j = base_config();
  j["theta"] = json::array({0.1});
  rejects(j);
  j = base_config();
  j["boundary"]["kind"] = "IV";
  rejects(j);
  j = base_config();
  j["N"] = 0;
  rejects(j);
  j = base_config();
  j["eta"] = "0.3";
  rejects(j);
  j = base_config();
  j.erase("dual");
  rejects(j);
}

TEST_CASE("seed files") {
  std::vector<BetheState> states;
  for (const auto& r : reference_states()) states.push_back(r.state);
  const auto back = parse_states(json::parse(dump(states_to_json(states))), 2);
  REQUIRE(back.size() == 9);
  for (size_t i = 0; i < 9; ++i) {
    CHECK(back[i].sector == states[i].sector);
    CHECK(back[i].lambda1 == states[i].lambda1);
    CHECK(back[i].lambda2 == states[i].lambda2);
  }
  json bad = states_to_json(states);
  bad[0]["lambda1"].erase(0);
  CHECK_THROWS_AS(parse_states(bad, 2), ConfigError);
  bad = states_to_json(states);
  bad[0]["M"] = 5;
  CHECK_THROWS_AS(parse_states(bad, 2), ConfigError);
  CHECK_THROWS_AS(parse_states(json::object(), 2), ConfigError);
}

TEST_CASE("serializer writes 17 significant digits and no NaN") {
  json j = {{"x", 0.1}, {"z", complex_to_json(cplx(1.0 / 3.0, -2.0))}, {"bad", std::nan("")}};
  const std::string s = dump(j);
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("[0.33333333333333331, -2]") != std::string::npos);
  CHECK(s.find("null") != std::string::npos);
  CHECK(s.find("nan") == std::string::npos);
  CHECK(s.back() == '\n');
  CHECK(complex_from_json(json::parse(s)["z"], "z") == cplx(1.0 / 3.0, -2.0));
}
