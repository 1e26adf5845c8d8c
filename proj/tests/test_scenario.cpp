#include <doctest.h>

#include <string>

#include "sr/scenario.hpp"

using sr::Scenario;

TEST_CASE("round trip: serialize then parse yields an identical scenario") {
  Scenario s;
  s.name = "roundtrip";
  s.mode = sr::Mode::Doppler;
  s.j = sr::HalfInt::from_twice(9);
  s.C = 12.5;
  s.rho_size = 7.25;
  s.Delta_D = 321.0;
  s.quad_order = 48;
  s.ablation_preset = "same+cross";
  s.t_end = 6.5;
  s.integrator.rel_tol = 1e-8;
  s.gamma_SI = 2.5;
  const Scenario back = sr::scenario_from_text(sr::scenario_to_text(s));
  CHECK(back == s);
  CHECK(sr::scenario_hash(back) == sr::scenario_hash(s));
}

TEST_CASE("hash is sensitive to every physics field") {
  Scenario s;
  const auto h0 = sr::scenario_hash(s);
  Scenario c = s;
  c.C += 1.0;
  CHECK(sr::scenario_hash(c) != h0);
  Scenario j = s;
  j.j = sr::HalfInt::from_twice(3);
  CHECK(sr::scenario_hash(j) != h0);
  Scenario t = s;
  t.integrator.rel_tol *= 0.5;
  CHECK(sr::scenario_hash(t) != h0);
}

TEST_CASE("schema violations name the offending field") {
  auto message_of = [](const std::string& text) {
    try {
      (void)sr::scenario_from_text(text);
    } catch (const std::exception& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message_of(R"({"C": -1})").find("C") != std::string::npos);
  CHECK(message_of(R"({"rho_size": 0})").find("rho_size") !=
        std::string::npos);
  CHECK(message_of(R"({"mode": "warp"})").find("mode") != std::string::npos);
  CHECK(message_of(R"({"bogus_field": 1})").find("bogus_field") !=
        std::string::npos);
  CHECK(message_of(R"({"mode": "doppler", "Delta_D": 0})").find("Delta_D") !=
        std::string::npos);
  CHECK(message_of(R"({"ablation_preset": "nope"})").find("preset") !=
        std::string::npos);
  CHECK(message_of("{not json").find("JSON") != std::string::npos);
  CHECK(message_of(R"({"integrator": {"oops": 1}})").find("integrator.oops") !=
        std::string::npos);
}

TEST_CASE("defaults are valid and parse from the empty object") {
  const Scenario s = sr::scenario_from_text("{}");
  CHECK(s.mode == sr::Mode::TwoBody);
  CHECK(s.C == 10.0);
  CHECK(s.rho_size == 10.0);
  CHECK_NOTHROW(sr::validate(s));
}

TEST_CASE("presets exist and their scenarios validate") {
  const auto names = sr::preset_names();
  CHECK(names.size() >= 8);
  for (const char* want :
       {"fig2b", "fig2c", "fig3a", "fig4", "fig5", "fig6a", "fig6b", "lics"}) {
    bool found = false;
    for (const auto& n : names) found = found || (n == want);
    CHECK_MESSAGE(found, want);
    CHECK_NOTHROW((void)sr::preset_text(want));
  }
  CHECK_THROWS((void)sr::preset_text("missing-preset"));
}

TEST_CASE("mode names round trip") {
  for (sr::Mode m : {sr::Mode::Dicke, sr::Mode::TwoBody, sr::Mode::Doppler})
    CHECK(sr::mode_from_name(sr::mode_name(m)) == m);
  CHECK_THROWS(sr::mode_from_name("other"));
}
