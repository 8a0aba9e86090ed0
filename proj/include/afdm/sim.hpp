// Monte Carlo BER sweeps.
//
// Every frame draws its channel, CFO, bits and noise from streams keyed on
// (seed, frame index), so frames are independent work units and the totals
// do not depend on the thread schedule. All SNR points and detectors of one
// frame share those draws; noise is a fixed unit-variance vector scaled per
// SNR point.
#pragma once

#include "afdm/daft.hpp"
#include "afdm/detector.hpp"
#include "afdm/impairments.hpp"
#include "afdm/modem.hpp"
#include "afdm/rng.hpp"
#include "afdm/types.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace afdm {

enum class DetectorChoice { widely_linear, naive, both };
enum class Knowledge { genie, mismatched };

struct SimConfig {
  int n = 128;
  int m = 4;
  int p = 3;
  std::int64_t two_n_c1 = 5;
  double c2 = 1e-4;
  DopplerMode doppler_mode = DopplerMode::integer;
  double psi = 0.1;
  double phi_deg = 8.0;
  double sigma_eps_sq = 0.1;
  std::vector<double> snr_grid_db{0, 2, 4, 6, 8, 10, 12, 14};
  int frames_per_point = 4000;
  std::uint64_t seed = 1;
  DetectorChoice detector = DetectorChoice::both;
  Knowledge knowledge = Knowledge::genie;
  int cpp_len = -1;  // -1: max delay + 1
  double alpha_max = 2.0;
  std::vector<int> delays;  // empty: 0, 1, ..., P - 1

  AfdmParams afdm_params() const { return AfdmParams(n, two_n_c1, c2); }
  ImpairmentParams impairments() const {
    return ImpairmentParams(psi, phi_deg * std::numbers::pi / 180.0, sigma_eps_sq);
  }
  std::vector<int> path_delays() const {
    if (!delays.empty()) return delays;
    std::vector<int> d(p);
    for (int i = 0; i < p; ++i) d[i] = i;
    return d;
  }
  int effective_cpp_len() const {
    if (cpp_len >= 0) return cpp_len;
    const auto d = path_delays();
    return *std::max_element(d.begin(), d.end()) + 1;
  }
  ChannelConfig channel_config() const {
    return {n, p, alpha_max, doppler_mode, path_delays(), effective_cpp_len()};
  }

  void validate() const {
    afdm_params();
    Constellation{m};
    require(p >= 1, "SimConfig: P must be >= 1");
    require(frames_per_point >= 1, "SimConfig: frames_per_point must be >= 1");
    require(!snr_grid_db.empty(), "SimConfig: snr_grid_db must not be empty");
    for (std::size_t i = 1; i < snr_grid_db.size(); ++i)
      require(snr_grid_db[i] > snr_grid_db[i - 1], "SimConfig: snr_grid_db must be strictly increasing");
    require(sigma_eps_sq >= 0.0, "SimConfig: sigma_eps_sq must be >= 0");
    require(alpha_max >= 0.0, "SimConfig: alpha_max must be >= 0");
    require(static_cast<int>(path_delays().size()) == p, "SimConfig: delays must list P entries");
    require(effective_cpp_len() >= 0 && effective_cpp_len() <= n, "SimConfig: cpp_len out of range");
  }
};

// ---- config text -----------------------------------------------------------

inline std::string to_string(DopplerMode m) { return m == DopplerMode::integer ? "integer" : "fractional"; }
inline std::string to_string(DetectorChoice d) {
  switch (d) {
    case DetectorChoice::widely_linear: return "widely_linear";
    case DetectorChoice::naive: return "naive";
    default: return "both";
  }
}
inline std::string to_string(Knowledge k) { return k == Knowledge::genie ? "genie" : "mismatched"; }

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_floating_point_v<T>) out += format_double(v[i]);
    else out += std::to_string(v[i]);
  }
  return out;
}

inline double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty()) throw std::invalid_argument("config: '" + key + "' expects a number, got '" + v + "'");
  return d;
}

inline long long parse_int(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long long i = 0;
  try {
    i = std::stoll(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty()) throw std::invalid_argument("config: '" + key + "' expects an integer, got '" + v + "'");
  return i;
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace detail

// Flat `key = value` text. `#` starts a comment; lists are comma separated.
// Unknown or repeated keys are errors.
inline SimConfig parse_sim_config(const std::string& text) {
  SimConfig cfg;
  std::map<std::string, int> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    if (seen[key]++) throw std::invalid_argument("config: duplicate key '" + key + "'");

    using detail::parse_double;
    using detail::parse_int;
    if (key == "N") cfg.n = static_cast<int>(parse_int(key, val));
    else if (key == "M") cfg.m = static_cast<int>(parse_int(key, val));
    else if (key == "P") cfg.p = static_cast<int>(parse_int(key, val));
    else if (key == "two_n_c1") cfg.two_n_c1 = parse_int(key, val);
    else if (key == "c2") cfg.c2 = parse_double(key, val);
    else if (key == "doppler_mode") {
      if (val == "integer") cfg.doppler_mode = DopplerMode::integer;
      else if (val == "fractional") cfg.doppler_mode = DopplerMode::fractional;
      else throw std::invalid_argument("config: doppler_mode must be integer|fractional, got '" + val + "'");
    } else if (key == "psi") cfg.psi = parse_double(key, val);
    else if (key == "phi") cfg.phi_deg = parse_double(key, val);
    else if (key == "sigma_eps_sq") cfg.sigma_eps_sq = parse_double(key, val);
    else if (key == "snr_grid_db") {
      cfg.snr_grid_db.clear();
      for (const auto& s : detail::split_list(val)) cfg.snr_grid_db.push_back(parse_double(key, s));
    } else if (key == "frames_per_point") cfg.frames_per_point = static_cast<int>(parse_int(key, val));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(key, val));
    else if (key == "detector") {
      if (val == "widely_linear") cfg.detector = DetectorChoice::widely_linear;
      else if (val == "naive") cfg.detector = DetectorChoice::naive;
      else if (val == "both") cfg.detector = DetectorChoice::both;
      else throw std::invalid_argument("config: detector must be widely_linear|naive|both, got '" + val + "'");
    } else if (key == "knowledge") {
      if (val == "genie") cfg.knowledge = Knowledge::genie;
      else if (val == "mismatched") cfg.knowledge = Knowledge::mismatched;
      else throw std::invalid_argument("config: knowledge must be genie|mismatched, got '" + val + "'");
    } else if (key == "cpp_len") cfg.cpp_len = static_cast<int>(parse_int(key, val));
    else if (key == "alpha_max") cfg.alpha_max = parse_double(key, val);
    else if (key == "delays") {
      cfg.delays.clear();
      for (const auto& s : detail::split_list(val)) cfg.delays.push_back(static_cast<int>(parse_int(key, s)));
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

inline SimConfig load_sim_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_sim_config(ss.str());
  } catch (const std::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

// Key/value echo of every field, in a fixed order. Parsing the joined
// `key = value` lines reproduces the config.
inline std::vector<std::pair<std::string, std::string>> describe(const SimConfig& c) {
  using detail::format_double;
  return {{"N", std::to_string(c.n)},
          {"M", std::to_string(c.m)},
          {"P", std::to_string(c.p)},
          {"two_n_c1", std::to_string(c.two_n_c1)},
          {"c2", format_double(c.c2)},
          {"doppler_mode", to_string(c.doppler_mode)},
          {"psi", format_double(c.psi)},
          {"phi", format_double(c.phi_deg)},
          {"sigma_eps_sq", format_double(c.sigma_eps_sq)},
          {"snr_grid_db", detail::join(c.snr_grid_db)},
          {"frames_per_point", std::to_string(c.frames_per_point)},
          {"seed", std::to_string(c.seed)},
          {"detector", to_string(c.detector)},
          {"knowledge", to_string(c.knowledge)},
          {"cpp_len", std::to_string(c.effective_cpp_len())},
          {"alpha_max", format_double(c.alpha_max)},
          {"delays", detail::join(c.path_delays())}};
}

// ---- SNR convention --------------------------------------------------------

struct NoiseLevel {
  double sigma_n_sq = 1.0;
  double ebn0_db = 0.0;
};

// Symbol SNR with unit-power symbols and unit average channel energy:
// sigma_n^2 = 10^(-snr/10). Eb/N0 = SNR - 10 log10(log2 M).
inline NoiseLevel snr_to_noise_var(double snr_db, int order) {
  const double bits = std::log2(static_cast<double>(order));
  return {std::pow(10.0, -snr_db / 10.0), snr_db - 10.0 * std::log10(bits)};
}

// ---- per-frame work ----------------------------------------------------------

// Everything shared by all frames of one sweep.
class SweepContext {
 public:
  explicit SweepContext(SimConfig cfg)
      : cfg_(std::move(cfg)), params_((cfg_.validate(), cfg_.afdm_params())),
        iq_(cfg_.impairments()), constellation_(cfg_.m), channel_cfg_(cfg_.channel_config()),
        daft_(daft_matrix(params_)), conj_op_(conj_operator(params_)),
        unit_noise_cov_(build_noise_covariance(conj_op_, iq_.mu(), iq_.nu(), 1.0)) {
    for (double snr : cfg_.snr_grid_db) noise_.push_back(snr_to_noise_var(snr, cfg_.m));
  }

  const SimConfig& config() const { return cfg_; }
  const AfdmParams& params() const { return params_; }
  const ImpairmentParams& iq() const { return iq_; }
  const Constellation& constellation() const { return constellation_; }
  const ChannelConfig& channel_config() const { return channel_cfg_; }
  const CMatrix& daft() const { return daft_; }
  const CMatrix& conj_op() const { return conj_op_; }
  const RMatrix& unit_noise_cov() const { return unit_noise_cov_; }
  const std::vector<NoiseLevel>& noise_levels() const { return noise_; }
  int bits_per_frame() const { return params_.n * constellation_.bits_per_symbol(); }

  bool runs_widely_linear() const { return cfg_.detector != DetectorChoice::naive; }
  bool runs_naive() const { return cfg_.detector != DetectorChoice::widely_linear; }

 private:
  SimConfig cfg_;
  AfdmParams params_;
  ImpairmentParams iq_;
  Constellation constellation_;
  ChannelConfig channel_cfg_;
  CMatrix daft_;
  CMatrix conj_op_;
  RMatrix unit_noise_cov_;
  std::vector<NoiseLevel> noise_;
};

struct FrameOutcome {
  std::uint64_t bits = 0;  // per SNR point
  std::vector<std::uint64_t> widely_linear_errors;  // one per SNR point; empty if not run
  std::vector<std::uint64_t> naive_errors;
};

struct FrameDraws {
  ChannelRealization channel;
  CfoRealization cfo;
  Bits bits;
  CVector unit_noise;  // CN(0, 1) over the whole frame including the prefix
};

inline FrameDraws draw_frame(const SweepContext& ctx, std::uint64_t frame_index) {
  const auto& cfg = ctx.config();
  FrameDraws d;
  Rng ch_rng = make_stream(cfg.seed, frame_index, Stream::channel);
  d.channel = sample_channel(ctx.channel_config(), ch_rng);
  Rng cfo_rng = make_stream(cfg.seed, frame_index, Stream::cfo);
  d.cfo = draw_residual_cfo(cfg.sigma_eps_sq, cfo_rng);
  Rng bit_rng = make_stream(cfg.seed, frame_index, Stream::bits);
  std::uniform_int_distribution<int> coin(0, 1);
  d.bits.resize(ctx.bits_per_frame());
  for (auto& b : d.bits) b = static_cast<std::uint8_t>(coin(bit_rng));
  Rng noise_rng = make_stream(cfg.seed, frame_index, Stream::noise);
  d.unit_noise = draw_proper_noise(ctx.params().n + ctx.channel_config().cpp_len, 1.0, noise_rng);
  return d;
}

inline std::uint64_t count_bit_errors(const Bits& a, const Bits& b) {
  std::uint64_t e = 0;
  for (std::size_t i = 0; i < a.size(); ++i) e += a[i] != b[i];
  return e;
}

// modulate -> channel with impairments -> demodulate -> detect -> demap,
// repeated for every SNR point of the grid on the same draws.
inline FrameOutcome run_frame(const SweepContext& ctx, std::uint64_t frame_index) {
  const auto& cfg = ctx.config();
  const auto& p = ctx.params();
  const int cpp = ctx.channel_config().cpp_len;
  const FrameDraws d = draw_frame(ctx, frame_index);

  const CVector x = map_bits(d.bits, ctx.constellation());
  const Frame frame = modulate(p, ctx.daft(), x, cpp);

  const CfoRealization known_cfo = cfg.knowledge == Knowledge::genie ? d.cfo : CfoRealization{0.0};
  const CMatrix h_eff = build_heff(ctx.daft(), d.channel, known_cfo);
  const cplx mu = ctx.iq().mu();
  const cplx nu = ctx.iq().nu();

  std::optional<WoodburyDetector> wl;
  std::optional<NaiveLmmseDetector> naive;
  if (ctx.runs_widely_linear()) wl.emplace(build_composite_channel(h_eff, ctx.conj_op(), mu, nu));
  if (ctx.runs_naive()) naive.emplace(h_eff, mu, nu);

  FrameOutcome out;
  out.bits = d.bits.size();
  for (const auto& level : ctx.noise_levels()) {
    const CVector w = std::sqrt(level.sigma_n_sq) * d.unit_noise;
    const CVector r = apply_channel_linear(frame.time_signal, cpp, d.channel, d.cfo, ctx.iq(), w);
    const CVector y = demodulate(p, ctx.daft(), r, cpp);
    if (wl) {
      const RVector est = wl->detect(level.sigma_n_sq * ctx.unit_noise_cov(), stack(y));
      out.widely_linear_errors.push_back(
          count_bit_errors(d.bits, demap_hard(reassemble_complex(est), ctx.constellation())));
    }
    if (naive) {
      const CVector est = naive->detect(y, level.sigma_n_sq);
      out.naive_errors.push_back(count_bit_errors(d.bits, demap_hard(est, ctx.constellation())));
    }
  }
  return out;
}

inline FrameOutcome run_frame(const SimConfig& cfg, std::uint64_t frame_index, std::uint64_t base_seed) {
  SimConfig c = cfg;
  c.seed = base_seed;
  return run_frame(SweepContext(std::move(c)), frame_index);
}

// ---- sweeps ------------------------------------------------------------------

struct BerPoint {
  double snr_db = 0.0;
  std::uint64_t bit_errors = 0;
  std::uint64_t bits_total = 0;
  double ber = 0.0;
};

struct BerCurve {
  std::string detector;
  std::vector<BerPoint> points;
  std::vector<std::pair<std::string, std::string>> metadata;
};

// AFDM_THREADS caps the worker count; otherwise the hardware count is used.
inline unsigned default_thread_count() {
  if (const char* env = std::getenv("AFDM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline std::vector<BerCurve> run_sweep(const SimConfig& cfg, unsigned threads = 0) {
  const SweepContext ctx(cfg);
  const int frames = cfg.frames_per_point;
  if (threads == 0) threads = default_thread_count();
  threads = std::min<unsigned>(threads, static_cast<unsigned>(frames));

  std::vector<FrameOutcome> outcomes(frames);
  std::atomic<int> next{0};
  std::mutex err_mu;
  int err_frame = -1;
  std::string err_msg;

  auto worker = [&] {
    for (int f = next++; f < frames; f = next++) {
      try {
        outcomes[f] = run_frame(ctx, static_cast<std::uint64_t>(f));
      } catch (const std::exception& e) {
        std::lock_guard lock(err_mu);
        if (err_frame < 0 || f < err_frame) {
          err_frame = f;
          err_msg = e.what();
        }
        next = frames;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (err_frame >= 0)
    throw std::runtime_error("frame " + std::to_string(err_frame) + ": " + err_msg);

  auto meta = describe(cfg);
  const NoiseLevel offset = snr_to_noise_var(0.0, cfg.m);
  meta.emplace_back("snr_convention", "symbol_snr sigma_n_sq=10^(-snr_db/10)");
  meta.emplace_back("ebn0_db", "snr_db" + detail::format_double(offset.ebn0_db));
  const auto mu = ctx.iq().mu();
  const auto nu = ctx.iq().nu();
  meta.emplace_back("mu", detail::format_double(mu.real()) + "," + detail::format_double(mu.imag()));
  meta.emplace_back("nu", detail::format_double(nu.real()) + "," + detail::format_double(nu.imag()));

  auto make_curve = [&](const std::string& name, auto errors_of) {
    BerCurve c;
    c.detector = name;
    for (std::size_t i = 0; i < cfg.snr_grid_db.size(); ++i) {
      BerPoint pt;
      pt.snr_db = cfg.snr_grid_db[i];
      for (const auto& o : outcomes) {
        pt.bit_errors += errors_of(o)[i];
        pt.bits_total += o.bits;
      }
      pt.ber = static_cast<double>(pt.bit_errors) / static_cast<double>(pt.bits_total);
      c.points.push_back(pt);
    }
    c.metadata = meta;
    c.metadata.emplace_back("curve", name);
    return c;
  };

  std::vector<BerCurve> curves;
  if (ctx.runs_widely_linear())
    curves.push_back(make_curve("widely_linear", [](const FrameOutcome& o) -> const auto& { return o.widely_linear_errors; }));
  if (ctx.runs_naive())
    curves.push_back(make_curve("naive", [](const FrameOutcome& o) -> const auto& { return o.naive_errors; }));
  return curves;
}

// CSV: header, one row per grid point, then `# key=value` metadata lines.
inline std::string format_ber_csv(const BerCurve& c) {
  std::string out = "snr_db,bit_errors,bits_total,ber\n";
  char buf[128];
  for (const auto& p : c.points) {
    std::snprintf(buf, sizeof buf, "%.10g,%llu,%llu,%.10g\n", p.snr_db,
                  static_cast<unsigned long long>(p.bit_errors),
                  static_cast<unsigned long long>(p.bits_total), p.ber);
    out += buf;
  }
  for (const auto& [k, v] : c.metadata) out += "# " + k + "=" + v + "\n";
  return out;
}

inline void write_ber_csv(const BerCurve& c, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << format_ber_csv(c);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

inline BerCurve read_ber_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  BerCurve c;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq != std::string::npos) c.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
      continue;
    }
    if (header) {
      header = false;
      continue;
    }
    BerPoint p;
    unsigned long long e = 0, t = 0;
    if (std::sscanf(line.c_str(), "%lf,%llu,%llu,%lf", &p.snr_db, &e, &t, &p.ber) != 4)
      throw std::runtime_error("malformed BER row in '" + path + "': " + line);
    p.bit_errors = e;
    p.bits_total = t;
    c.points.push_back(p);
  }
  for (const auto& [k, v] : c.metadata)
    if (k == "curve") c.detector = v;
  return c;
}

// ---- statistics on BER curves -----------------------------------------------------

struct Interval {
  double lower = 0.0;
  double upper = 1.0;
};

// Wilson score interval for a binomial proportion.
inline Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

// True when no point is significantly above its predecessor: the Wilson
// lower bound at each SNR never exceeds the upper bound of the point before.
inline bool is_non_increasing_wilson(const BerCurve& c) {
  for (std::size_t i = 1; i < c.points.size(); ++i) {
    const auto prev = wilson_interval(c.points[i - 1].bit_errors, c.points[i - 1].bits_total);
    const auto cur = wilson_interval(c.points[i].bit_errors, c.points[i].bits_total);
    if (cur.lower > prev.upper) return false;
  }
  return true;
}

// SNR at which the curve first crosses `target` BER, by linear interpolation
// of log10(BER) against SNR. Empty if it never crosses inside the grid.
inline std::optional<double> snr_at_ber(const BerCurve& c, double target) {
  for (std::size_t i = 1; i < c.points.size(); ++i) {
    const auto& a = c.points[i - 1];
    const auto& b = c.points[i];
    if (a.ber >= target && b.ber <= target) {
      if (a.ber == b.ber) return a.snr_db;
      const double la = std::log10(std::max(a.ber, 1e-300));
      const double lb = std::log10(std::max(b.ber, 1e-300));
      const double lt = std::log10(target);
      return a.snr_db + (la - lt) / (la - lb) * (b.snr_db - a.snr_db);
    }
  }
  return std::nullopt;
}

// One-sided two-proportion z statistic for p_worse > p_better.
inline double two_proportion_z(std::uint64_t e_worse, std::uint64_t n_worse, std::uint64_t e_better,
                               std::uint64_t n_better) {
  const double p1 = static_cast<double>(e_worse) / static_cast<double>(n_worse);
  const double p2 = static_cast<double>(e_better) / static_cast<double>(n_better);
  const double pooled = static_cast<double>(e_worse + e_better) / static_cast<double>(n_worse + n_better);
  const double se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / n_worse + 1.0 / n_better));
  if (se == 0.0) return 0.0;
  return (p1 - p2) / se;
}

}  // namespace afdm
