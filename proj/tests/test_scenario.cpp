#include <cmath>

#include "coopsense/scenario.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coopsense;

TEST_CASE("monostatic delay for a 100 m target") {
  const SceneConfig cfg;
  const TruthParams t = derive_truth(cfg, oracle::target_at(100.0, 30.0, 0.0));
  CHECK(t.r1 == doctest::Approx(100.0));
  CHECK(t.tau1 == doctest::Approx(2.0 * 100.0 / 3e8).epsilon(1e-12));  // 666.67 ns
  CHECK(t.tau1 * 1e9 == doctest::Approx(666.6667).epsilon(1e-6));
}

TEST_CASE("isoceles geometry gives a 60 degree angle") {
  SceneConfig cfg;
  cfg.baseline = 200.0;
  // r1 = r2 = baseline: equilateral triangle.
  const double th = kPi / 3.0;
  Target t;
  t.position = {200.0 * std::cos(th), 200.0 * std::sin(th)};
  const TruthParams tp = derive_truth(cfg, t);
  CHECK(tp.r1 == doctest::Approx(200.0));
  CHECK(tp.r2 == doctest::Approx(200.0));
  CHECK(tp.theta == doctest::Approx(kPi / 3.0));
}

TEST_CASE("Doppler of a 15 m/s radial target at 4 GHz") {
  const SceneConfig cfg;
  const TruthParams t = derive_truth(cfg, oracle::target_at(70.0, 25.0, 15.0));
  CHECK(t.v1 == doctest::Approx(15.0));
  CHECK(t.doppler_active == doctest::Approx(400.0).epsilon(1e-9));
}

TEST_CASE("delay deviation equals the range difference over c") {
  const SceneConfig cfg;
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    Target t;
    t.position = {20.0 + 300.0 * rng.uniform(), 5.0 + 200.0 * rng.uniform()};
    t.velocity = {40.0 * rng.uniform() - 20.0, 40.0 * rng.uniform() - 20.0};
    const TruthParams tp = derive_truth(cfg, t);
    CHECK(tp.delay_offset() == doctest::Approx((tp.r2 - tp.r1) / kSpeedOfLight).epsilon(1e-12));
    CHECK(tp.theta > 0.0);
    CHECK(tp.theta < kPi);
    CHECK(std::abs(tp.omega_steer) < 2.0 * kPi * cfg.element_spacing / cfg.wavelength + 1e-12);
  }
}

TEST_CASE("degenerate geometry is rejected") {
  const SceneConfig cfg;
  Target at_station1;
  at_station1.position = {0.0, 0.0};
  CHECK_THROWS_AS(derive_truth(cfg, at_station1), std::invalid_argument);
  Target at_station2;
  at_station2.position = {cfg.baseline, 0.0};
  CHECK_THROWS_AS(derive_truth(cfg, at_station2), std::invalid_argument);
}

TEST_CASE("resolutions from the default numerology") {
  SceneConfig cfg;
  // 123 MHz bandwidth exactly, as quoted for this numerology.
  cfg.subcarrier_spacing = 123e6 / cfg.n_subcarriers;
  auto [dr, dv] = resolutions(cfg);
  CHECK(dr == doctest::Approx(1.2195).epsilon(1e-3));

  const SceneConfig def;
  std::tie(dr, dv) = resolutions(def);
  CHECK(dv == doctest::Approx(13.44).epsilon(1e-2));

  // Doubling the bandwidth halves the range resolution.
  SceneConfig doubled;
  doubled.subcarrier_spacing *= 2.0;
  CHECK(resolutions(doubled).first == doctest::Approx(resolutions(def).first / 2.0));
}

TEST_CASE("validate_config flags each violated invariant") {
  CHECK(validate_config(SceneConfig{}).ok());

  SceneConfig bad;
  bad.idft_points = bad.n_subcarriers - 1;
  auto report = validate_config(bad);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations[0] == "idft_points below subcarrier count");

  bad = SceneConfig{};
  bad.element_spacing = bad.wavelength;
  report = validate_config(bad);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations[0] == "ambiguous array spacing");

  bad = SceneConfig{};
  bad.carrier_passive = bad.carrier_active;
  CHECK_FALSE(validate_config(bad).ok());

  bad = SceneConfig{};
  bad.aoa_window = 0.0;
  CHECK_FALSE(validate_config(bad).ok());
}

TEST_CASE("scene JSON round-trips") {
  Scene scene;
  scene.config.snr_active_db = std::numeric_limits<double>::infinity();
  scene.targets.push_back(oracle::target_at(100.0, 30.0, 25.0));
  scene.targets[0].reflectivity_active = {0.5, -0.25};

  const std::string path = "scene_roundtrip_test.json";
  save_scene(scene, path);
  const Scene loaded = load_scene(path);
  std::remove(path.c_str());

  CHECK(loaded.config.n_subcarriers == scene.config.n_subcarriers);
  CHECK(std::isinf(loaded.config.snr_active_db));
  REQUIRE(loaded.targets.size() == 1);
  CHECK(loaded.targets[0].position.x == doctest::Approx(scene.targets[0].position.x));
  CHECK(loaded.targets[0].reflectivity_active.imag() == doctest::Approx(-0.25));
}

TEST_CASE("both Doppler deviation conventions are reported") {
  const SceneConfig cfg;
  const TruthParams t = derive_truth(cfg, oracle::target_at(100.0, 30.0, 25.0));
  // The definitional difference and the printed expansion disagree; the
  // pipeline uses the former, both stay inspectable.
  CHECK(t.doppler_offset() == doctest::Approx(t.doppler_passive - t.doppler_active));
  CHECK(doppler_offset_expanded(cfg, t) != doctest::Approx(t.doppler_offset()));
}
