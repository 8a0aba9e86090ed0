#include "afdm/sim.hpp"

#include <gtest/gtest.h>

#include <filesystem>

namespace afdm {
namespace {

SimConfig small_config(int n = 32) {
  SimConfig c;
  c.n = n;
  c.snr_grid_db = {0, 7, 14};
  c.frames_per_point = 200;
  c.seed = 11;
  return c;
}

SimConfig ideal_of(SimConfig c) {
  c.psi = 0.0;
  c.phi_deg = 0.0;
  c.sigma_eps_sq = 0.0;
  c.detector = DetectorChoice::widely_linear;
  return c;
}

const BerCurve& curve(const std::vector<BerCurve>& cs, const std::string& name) {
  for (const auto& c : cs)
    if (c.detector == name) return c;
  throw std::runtime_error("no curve " + name);
}

TEST(Config, ParsesAllKeys) {
  const SimConfig c = parse_sim_config(R"(
    # comment line
    N = 64
    M = 16
    P = 2
    two_n_c1 = 13
    c2 = 0.0002
    doppler_mode = fractional
    psi = 0.05   # trailing comment
    phi = 4
    sigma_eps_sq = 0.01
    snr_grid_db = 0, 5, 10
    frames_per_point = 7
    seed = 99
    detector = naive
    knowledge = mismatched
    cpp_len = 4
    alpha_max = 1.5
    delays = 0, 3
  )");
  EXPECT_EQ(c.n, 64);
  EXPECT_EQ(c.m, 16);
  EXPECT_EQ(c.p, 2);
  EXPECT_EQ(c.two_n_c1, 13);
  EXPECT_DOUBLE_EQ(c.c2, 2e-4);
  EXPECT_EQ(c.doppler_mode, DopplerMode::fractional);
  EXPECT_DOUBLE_EQ(c.psi, 0.05);
  EXPECT_DOUBLE_EQ(c.phi_deg, 4.0);
  EXPECT_DOUBLE_EQ(c.sigma_eps_sq, 0.01);
  EXPECT_EQ(c.snr_grid_db, (std::vector<double>{0, 5, 10}));
  EXPECT_EQ(c.frames_per_point, 7);
  EXPECT_EQ(c.seed, 99u);
  EXPECT_EQ(c.detector, DetectorChoice::naive);
  EXPECT_EQ(c.knowledge, Knowledge::mismatched);
  EXPECT_EQ(c.effective_cpp_len(), 4);
  EXPECT_DOUBLE_EQ(c.alpha_max, 1.5);
  EXPECT_EQ(c.path_delays(), (std::vector<int>{0, 3}));
}

TEST(Config, DescribeRoundTrips) {
  SimConfig c;
  c.psi = 0.123456789;
  c.snr_grid_db = {-1.5, 3.25};
  std::string text;
  for (const auto& [k, v] : describe(c)) text += k + " = " + v + "\n";
  const SimConfig back = parse_sim_config(text);
  EXPECT_EQ(describe(back), describe(c));
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse_sim_config("Nn = 64\n"), std::invalid_argument);
  EXPECT_THROW(parse_sim_config("N = 64\nN = 32\n"), std::invalid_argument);
  EXPECT_THROW(parse_sim_config("N 64\n"), std::invalid_argument);
  EXPECT_THROW(parse_sim_config("N = sixty\n"), std::invalid_argument);
  EXPECT_THROW(parse_sim_config("N = 63\n"), std::invalid_argument);
  EXPECT_THROW(parse_sim_config("M = 8\n"), std::invalid_argument);
  EXPECT_THROW(parse_sim_config("detector = mmse\n"), std::invalid_argument);
  EXPECT_THROW(parse_sim_config("snr_grid_db = 4, 2\n"), std::invalid_argument);
  EXPECT_THROW(parse_sim_config("sigma_eps_sq = -1\n"), std::invalid_argument);
  EXPECT_THROW(parse_sim_config("delays = 0, 1\n"), std::invalid_argument);
  try {
    parse_sim_config("bogus = 1\n");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("bogus"), std::string::npos);
  }
}

TEST(Config, MissingFileNamesPath) {
  try {
    load_sim_config("/nonexistent/afdm.conf");
    FAIL();
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/afdm.conf"), std::string::npos);
  }
}

TEST(Config, ShippedConfigsLoad) {
  const std::filesystem::path dir = AFDM_SOURCE_DIR "/configs";
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".conf") continue;
    EXPECT_NO_THROW(load_sim_config(entry.path().string())) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 5);
}

TEST(SnrConvention, NoiseVariance) {
  EXPECT_DOUBLE_EQ(snr_to_noise_var(0.0, 4).sigma_n_sq, 1.0);
  EXPECT_NEAR(snr_to_noise_var(10.0, 4).sigma_n_sq, 0.1, 1e-15);
  EXPECT_NEAR(snr_to_noise_var(10.0, 4).ebn0_db, 10.0 - 3.0103, 1e-4);
  EXPECT_NEAR(snr_to_noise_var(0.0, 16).ebn0_db, -6.0206, 1e-4);
}

TEST(RunFrame, NoErrorsAtHighSnrWithIdealHardware) {
  SimConfig c = ideal_of(small_config());
  c.p = 1;
  c.snr_grid_db = {60};
  const SweepContext ctx(c);
  for (std::uint64_t f = 0; f < 50; ++f) {
    const auto o = run_frame(ctx, f);
    ASSERT_EQ(o.widely_linear_errors.size(), 1u);
    EXPECT_EQ(o.widely_linear_errors[0], 0u);
    EXPECT_TRUE(o.naive_errors.empty());
    EXPECT_EQ(o.bits, 64u);
  }
}

TEST(RunFrame, Deterministic) {
  const SimConfig c = small_config();
  const auto a = run_frame(c, 17, 5);
  const auto b = run_frame(c, 17, 5);
  EXPECT_EQ(a.widely_linear_errors, b.widely_linear_errors);
  EXPECT_EQ(a.naive_errors, b.naive_errors);
  const SweepContext ctx(c);
  const auto d1 = draw_frame(ctx, 3);
  const auto d2 = draw_frame(ctx, 4);
  EXPECT_NE(d1.bits, d2.bits);
  EXPECT_NE(d1.cfo.epsilon, d2.cfo.epsilon);
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
  SimConfig c = small_config();
  c.frames_per_point = 40;
  const auto one = run_sweep(c, 1);
  const auto four = run_sweep(c, 4);
  ASSERT_EQ(one.size(), 2u);
  ASSERT_EQ(four.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(format_ber_csv(one[i]), format_ber_csv(four[i]));
}

TEST(Sweep, BerDecreasesWithSnr) {
  const auto curves = run_sweep(small_config());
  for (const auto& c : curves) {
    EXPECT_TRUE(is_non_increasing_wilson(c)) << c.detector;
    EXPECT_GT(c.points.front().ber, c.points.back().ber) << c.detector;
  }
}

TEST(Sweep, GenieWidelyLinearTracksIdealHardware) {
  SimConfig c = small_config();
  c.snr_grid_db = {12};
  c.detector = DetectorChoice::widely_linear;
  const auto impaired = run_sweep(c).front().points.front();
  const auto ideal = run_sweep(ideal_of(c)).front().points.front();
  ASSERT_GT(ideal.bit_errors, 0u);
  EXPECT_LT(impaired.ber, 2.0 * ideal.ber);
  EXPECT_GT(impaired.ber, 0.5 * ideal.ber);
}

TEST(Sweep, NaiveIsWorseUnderImpairments) {
  SimConfig c = small_config(16);
  c.snr_grid_db = {15};
  c.frames_per_point = 4000;
  const auto curves = run_sweep(c);
  const auto& wl = curve(curves, "widely_linear").points.front();
  const auto& nv = curve(curves, "naive").points.front();
  EXPECT_GT(two_proportion_z(nv.bit_errors, nv.bits_total, wl.bit_errors, wl.bits_total), 1.645);
}

TEST(Sweep, MismatchedCfoKnowledgeHurts) {
  SimConfig c = small_config();
  c.snr_grid_db = {14};
  c.detector = DetectorChoice::widely_linear;
  const auto genie = run_sweep(c).front().points.front();
  c.knowledge = Knowledge::mismatched;
  const auto blind = run_sweep(c).front().points.front();
  EXPECT_GT(blind.ber, genie.ber);
}

TEST(Sweep, EvaluationGridConfigurationsRun) {
  for (int n : {128, 256}) {
    for (auto mode : {DopplerMode::integer, DopplerMode::fractional}) {
      SimConfig c;
      c.n = n;
      c.doppler_mode = mode;
      c.two_n_c1 = mode == DopplerMode::integer ? 5 : 13;
      c.snr_grid_db = {0, 14};
      c.frames_per_point = 2;
      const auto curves = run_sweep(c);
      ASSERT_EQ(curves.size(), 2u);
      for (const auto& cv : curves)
        for (const auto& p : cv.points) EXPECT_EQ(p.bits_total, 2u * 2u * n);
    }
  }
}

TEST(Sweep, MetadataAndCsvRoundTrip) {
  SimConfig c = small_config();
  c.frames_per_point = 5;
  c.detector = DetectorChoice::naive;
  const auto curves = run_sweep(c);
  ASSERT_EQ(curves.size(), 1u);
  const std::string path = (std::filesystem::temp_directory_path() / "afdm_sim_roundtrip.csv").string();
  write_ber_csv(curves[0], path);
  const BerCurve back = read_ber_csv(path);
  EXPECT_EQ(back.detector, "naive");
  EXPECT_EQ(format_ber_csv(back), format_ber_csv(curves[0]));
  const std::string text = format_ber_csv(curves[0]);
  EXPECT_EQ(text.rfind("snr_db,bit_errors,bits_total,ber\n", 0), 0u);
  EXPECT_NE(text.find("# snr_convention="), std::string::npos);
  EXPECT_NE(text.find("# ebn0_db="), std::string::npos);
  EXPECT_NE(text.find("# seed=11\n"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Statistics, WilsonAndCrossing) {
  const auto w = wilson_interval(10, 1000);
  EXPECT_LT(w.lower, 0.01);
  EXPECT_GT(w.upper, 0.01);
  EXPECT_NEAR(w.lower, 0.00544, 1e-4);
  EXPECT_NEAR(w.upper, 0.01831, 1e-4);
  EXPECT_EQ(wilson_interval(0, 0).upper, 1.0);

  BerCurve c;
  c.points = {{0, 100, 1000, 0.1}, {10, 1, 1000, 0.001}};
  EXPECT_NEAR(*snr_at_ber(c, 0.01), 5.0, 1e-12);
  EXPECT_FALSE(snr_at_ber(c, 1e-4).has_value());
  EXPECT_TRUE(is_non_increasing_wilson(c));
  std::swap(c.points[0].bit_errors, c.points[1].bit_errors);
  EXPECT_FALSE(is_non_increasing_wilson(c));

  EXPECT_GT(two_proportion_z(200, 10000, 100, 10000), 1.645);
  EXPECT_LT(two_proportion_z(100, 10000, 100, 10000), 1e-12);
}

}  // namespace
}  // namespace afdm
