// Command-line front end: BER sweeps and matrix-structure dumps.
#pragma once

#include "afdm/afdm.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace afdm::cli {

// "<stem>_naive<ext>" next to `path`.
inline std::string naive_sibling(const std::string& path) {
  std::filesystem::path p(path);
  const auto ext = p.extension().string();
  p.replace_extension();
  return p.string() + "_naive" + (ext.empty() ? ".csv" : ext);
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

inline CsvHeader config_header(const SimConfig& cfg) {
  CsvHeader h;
  for (const auto& [k, v] : describe(cfg))
    if (k != "snr_grid_db" && k != "frames_per_point" && k != "detector") h.emplace_back(k, v);
  return h;
}

inline int run_simulate(const std::string& config_path, const std::string& out, unsigned threads,
                        std::ostream& log) {
  const SimConfig cfg = load_sim_config(config_path);
  const auto curves = run_sweep(cfg, threads);
  for (const auto& c : curves) {
    const bool secondary = cfg.detector == DetectorChoice::both && c.detector == "naive";
    const std::string path = secondary ? naive_sibling(out) : out;
    write_ber_csv(c, path);
    log << c.detector << " -> " << path << '\n';
  }
  return 0;
}

inline int run_operator(int n, std::int64_t k, double c2, double threshold, const std::string& out,
                        const std::string& report_path, std::ostream& log) {
  const AfdmParams p(n, k, c2);
  const CMatrix g = conj_operator(p);
  const auto stats = density_stats(g, threshold);
  export_matrix_magnitudes(g, out,
                           {{"N", std::to_string(n)}, {"two_n_c1", std::to_string(k)},
                            {"c2", detail::format_double(c2)}, {"matrix", "AAT"}});
  const ZeroPatternReport rep = zero_pattern_report(n, k, threshold);

  // Outer L(c2) factors are unit-modulus diagonals; the dumped matrix must
  // share the c2 = 0 oracle's zero grid.
  std::size_t c2_mismatch = 0;
  for (int m = 0; m < n; ++m)
    for (int l = 0; l < n; ++l) c2_mismatch += (std::abs(g(m, l)) < threshold) != rep.actual_zero(m, l);

  std::string text = format_zero_pattern_report(rep);
  text += "c2=" + detail::format_double(c2) + "\n";
  text += "c2_pattern_mismatches=" + std::to_string(c2_mismatch) + "\n";
  text += "density=" + detail::format_double(stats.density) + "\n";
  if (!report_path.empty()) write_text(report_path, text);
  log << "density=" << stats.density << " discrepancies=" << rep.discrepancies.size()
      << " odd_sum_discrepancies=" << rep.odd_sum_discrepancies() << '\n';
  return 0;
}

inline int run_heff(const std::string& config_path, double sigma_eps_sq, std::uint64_t frame,
                    const std::string& out, std::ostream& log) {
  SimConfig cfg = load_sim_config(config_path);
  cfg.sigma_eps_sq = sigma_eps_sq;
  cfg.validate();
  const SweepContext ctx(cfg);
  const FrameDraws d = draw_frame(ctx, frame);
  const CMatrix h = build_heff(ctx.daft(), d.channel, d.cfo);
  const CMatrix h0 = build_heff(ctx.daft(), d.channel, CfoRealization{0.0});
  const LeakageMetric lm = leakage_metric(h, h0);
  auto header = config_header(cfg);
  header.emplace_back("matrix", "H_eff");
  header.emplace_back("frame", std::to_string(frame));
  header.emplace_back("epsilon", detail::format_double(d.cfo.epsilon));
  header.emplace_back("leakage", detail::format_double(lm.leakage));
  export_matrix_magnitudes(h, out, header);
  log << "epsilon=" << d.cfo.epsilon << " leakage=" << lm.leakage
      << " support_energy_fraction=" << lm.support_energy_fraction << '\n';
  return 0;
}

inline int run_composite(const std::string& config_path, std::uint64_t frame, const std::string& out,
                         std::ostream& log) {
  const SimConfig cfg = load_sim_config(config_path);
  const SweepContext ctx(cfg);
  const FrameDraws d = draw_frame(ctx, frame);
  const CMatrix h = build_heff(ctx.daft(), d.channel, d.cfo);
  const RMatrix ht = build_composite_channel(h, ctx.conj_op(), ctx.iq().mu(), ctx.iq().nu());
  const auto stats = density_stats(ht);
  auto header = config_header(cfg);
  header.emplace_back("matrix", "H_tilde");
  header.emplace_back("frame", std::to_string(frame));
  header.emplace_back("epsilon", detail::format_double(d.cfo.epsilon));
  export_matrix_magnitudes(ht, out, header);
  log << "density=" << stats.density << " nnz=" << stats.nnz
      << " per_row_max_nnz=" << stats.per_row_max_nnz << '\n';
  return 0;
}

inline int cli_main(int argc, char** argv, std::ostream& log = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"AFDM link-level simulator under receiver IQ imbalance and residual CFO"};
  app.require_subcommand(1);

  std::string config, out, report;
  unsigned threads = 0;
  int n = 0;
  std::int64_t k = 0;
  double c2 = 0.0, threshold = kDefaultZeroThreshold, sigma_eps = 0.0;
  std::uint64_t frame = 0;

  auto* sim = app.add_subcommand("simulate", "Monte Carlo BER sweep");
  sim->add_option("--config", config, "Config file")->required();
  sim->add_option("--out", out, "Output CSV")->required();
  sim->add_option("--threads", threads, "Worker threads (default: AFDM_THREADS or hardware)");

  auto* op = app.add_subcommand("operator", "Dump |A A^T| and the zero-pattern report");
  op->add_option("--n", n, "Block length N")->required();
  op->add_option("--k", k, "Integer 2 N c1")->required();
  op->add_option("--c2", c2, "Second chirp rate");
  op->add_option("--threshold", threshold, "Zero threshold");
  op->add_option("--out", out, "Output CSV")->required();
  op->add_option("--report", report, "Output report (text)");

  auto* heff = app.add_subcommand("heff", "Dump |H_eff| and its CFO leakage");
  heff->add_option("--config", config, "Config file")->required();
  heff->add_option("--sigma-eps", sigma_eps, "Residual CFO variance sigma_eps^2")->required();
  heff->add_option("--frame", frame, "Frame index of the channel draw");
  heff->add_option("--out", out, "Output CSV")->required();

  auto* comp = app.add_subcommand("composite", "Dump |H~| of the real-composite model");
  comp->add_option("--config", config, "Config file")->required();
  comp->add_option("--frame", frame, "Frame index of the channel draw");
  comp->add_option("--out", out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, log, err);
  }

  try {
    if (sim->parsed()) return run_simulate(config, out, threads, log);
    if (op->parsed()) return run_operator(n, k, c2, threshold, out, report, log);
    if (heff->parsed()) return run_heff(config, sigma_eps, frame, out, log);
    if (comp->parsed()) return run_composite(config, frame, out, log);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace afdm::cli
