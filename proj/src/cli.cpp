// ulrs/cli.cpp

// Copyright 2026  The ULRS Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "ulrs/cli.hpp"

#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "ulrs/detector.hpp"
#include "ulrs/dictionary.hpp"
#include "ulrs/eval.hpp"
#include "ulrs/io.hpp"
#include "ulrs/sparse_coding.hpp"
#include "ulrs/vad.hpp"

namespace ulrs::cli {

namespace {

struct RunConfig {
  // learn
  std::string algo = "ksvd";
  Index atoms = 100;
  int sparsity = 3;
  int iters = 30;
  Index dim = 0;
  bool drop_silent = false;
  // common paths
  std::string input;
  std::string output;
  std::string out_prefix;
  std::string dict_path;
  std::string h0_path;
  std::string h1_path;
  std::string noise_path;
  std::string ref_path;
  // detection
  std::string rule = "plain";
  std::string coder = "omp";
  double sigma_n2 = 1.0;
  double sigma_e2 = 0.0;
  double gamma = 0.0;
  double l1_lambda = 0.1;
  double rho = 0.1;
  double rob_lambda = 0.1;
  double omp_residual_tol = 0.0;
  double threshold_c = std::numeric_limits<double>::quiet_NaN();
  double alpha = 0.1;
  int trials = 1000;
  // synth
  int count = 1000;
  double snr_db = 20.0;
  double esr = 0.0;
  // sweep
  int t_min = 1;
  int t_max = 12;
  int learn_sparsity = 3;
  std::uint64_t seed = 0;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

DetectorParams detector_params(const RunConfig& rc) {
  DetectorParams params;
  params.sigma_n2 = rc.sigma_n2;
  params.sigma_e2 = rc.sigma_e2;
  params.gamma = rc.gamma;
  params.threshold_C = rc.threshold_c;
  if (rc.rule == "plain") {
    params.rule = DecisionRule::plain;
  } else if (rc.rule == "sparse") {
    params.rule = DecisionRule::sparse_penalized;
  } else if (rc.rule == "robust") {
    params.rule = DecisionRule::robust;
  } else {
    throw ConfigError("unknown rule: " + rc.rule);
  }
  params.coder = rc.coder == "l1" ? CoderKind::l1 : CoderKind::omp;
  params.solver.sparsity_limit = rc.sparsity;
  params.solver.omp_residual_tol = rc.omp_residual_tol;
  params.solver.l1_penalty = rc.l1_lambda;
  params.solver.robust_rho = rc.rho;
  params.solver.robust_lambda = rc.rob_lambda;
  return params;
}

/// White-noise H0 sampler at sigma_n2, deterministic per trial index.
std::function<Vector(std::uint64_t)> noise_sampler(Index n, double sigma_n2,
                                                   std::uint64_t seed) {
  const double sigma = std::sqrt(sigma_n2);
  return [n, sigma, seed](std::uint64_t trial) {
    std::mt19937_64 engine(seed ^ (0x9E3779B97F4A7C15ULL * (trial + 1)));
    std::normal_distribution<double> normal(0.0, sigma);
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = normal(engine);
    return v;
  };
}

DetectorParams calibrated_params(const RunConfig& rc, const Dictionary& dict) {
  DetectorParams params = detector_params(rc);
  if (!std::isfinite(params.threshold_C)) {
    params.threshold_C = calibrate_threshold(
        [&](const Vector& y) { return decision_statistic(dict, y, params); },
        noise_sampler(dict.dim(), params.sigma_n2, rc.seed), rc.alpha,
        rc.trials);
  }
  return params;
}

std::vector<Vector> load_training(const RunConfig& rc) {
  if (ends_with(rc.input, ".wav")) {
    const vad::AudioBuffer audio = vad::read_wav(rc.input);
    const vad::FrameConfig frame_cfg;
    std::vector<Vector> frames = vad::frame_signal(audio.samples, frame_cfg);
    if (rc.drop_silent) frames = vad::drop_silent_frames(frames);
    std::vector<Vector> features;
    features.reserve(frames.size());
    for (const Vector& f : frames) {
      features.push_back(vad::extract_features(f, frame_cfg));
    }
    return features;
  }
  return io::read_vectors_csv(rc.input);
}

void cmd_learn(const RunConfig& rc) {
  if (rc.algo == "dct") {
    if (rc.dim < 1) throw ConfigError("learn --algo dct requires --dim");
    io::write_dictionary(rc.output, overcomplete_dct(rc.dim, rc.atoms));
    return;
  }
  if (rc.input.empty()) throw ConfigError("learn requires --input");
  const std::vector<Vector> training = load_training(rc);
  if (rc.algo == "ksvd") {
    auto [dict, stats] =
        ksvd_learn(training, rc.atoms, rc.sparsity, rc.iters, rc.seed);
    io::write_dictionary(rc.output, dict);
    std::fprintf(stderr, "ksvd: %d iterations, final rmse %.6g, esr %.6g\n",
                 stats.iterations_run,
                 stats.per_iteration_rmse.empty() ? 0.0
                                                  : stats.per_iteration_rmse.back(),
                 stats.final_esr);
  } else if (rc.algo == "kmeans") {
    auto [dict, stats] = kmeans_learn(training, rc.atoms, rc.iters, rc.seed);
    io::write_dictionary(rc.output, dict);
    std::fprintf(stderr, "kmeans: %d iterations, final rmse %.6g, esr %.6g\n",
                 stats.iterations_run,
                 stats.per_iteration_rmse.empty() ? 0.0
                                                  : stats.per_iteration_rmse.back(),
                 stats.final_esr);
  } else {
    throw ConfigError("unknown learn algorithm: " + rc.algo);
  }
}

void cmd_synth(const RunConfig& rc) {
  SynthConfig cfg;
  cfg.n = rc.dim;
  cfg.num_atoms = rc.atoms;
  cfg.sparsity = rc.sparsity;
  cfg.count = rc.count;
  cfg.snr_db = rc.snr_db;
  cfg.esr = rc.esr;
  cfg.seed = rc.seed;
  const SynthData data = synth_uos(cfg);
  io::write_dictionary(rc.out_prefix + "_dict.txt", data.dict);
  io::write_vectors_csv(rc.out_prefix + "_h1.csv", data.h1);
  io::write_vectors_csv(rc.out_prefix + "_h0.csv", data.h0);
  std::vector<Vector> codes;
  codes.reserve(data.codes.size());
  for (const SparseCode& c : data.codes) codes.push_back(c.coefficients);
  io::write_vectors_csv(rc.out_prefix + "_codes.csv", codes);
}

void cmd_detect(const RunConfig& rc) {
  const Dictionary dict = io::read_dictionary(rc.dict_path);
  const std::vector<Vector> signals = io::read_vectors_csv(rc.input);
  const DetectorParams params = calibrated_params(rc, dict);
  std::vector<Detection> decisions;
  decisions.reserve(signals.size());
  for (const Vector& y : signals) decisions.push_back(sr_decide(y, dict, params));
  io::write_decisions_csv(rc.output, decisions);
}

void cmd_roc(const RunConfig& rc) {
  const Dictionary dict = io::read_dictionary(rc.dict_path);
  const std::vector<Vector> h0 = io::read_vectors_csv(rc.h0_path);
  const std::vector<Vector> h1 = io::read_vectors_csv(rc.h1_path);
  const DetectorParams params = detector_params(rc);
  const RocCurve curve = monte_carlo_roc(
      [&](const Vector& y) { return decision_statistic(dict, y, params); }, h0,
      h1);
  io::write_roc_csv(rc.output, curve);
}

void cmd_sweep(const RunConfig& rc) {
  const std::vector<Vector> training = load_training(rc);
  SweepOptions opts;
  opts.learn_sparsity = rc.learn_sparsity;
  opts.iterations = rc.iters;
  opts.seed = rc.seed;
  io::write_sweep_csv(
      rc.output, sparsity_esr_sweep(training, rc.atoms, rc.t_min, rc.t_max, opts));
}

void cmd_vad(const RunConfig& rc) {
  const Dictionary dict = io::read_dictionary(rc.dict_path);
  vad::AudioBuffer audio = vad::read_wav(rc.input);
  if (!rc.noise_path.empty()) {
    const vad::AudioBuffer noise = vad::read_wav(rc.noise_path);
    audio.samples = vad::mix_noise(audio.samples, noise.samples, rc.snr_db);
  }
  const DetectorParams params = calibrated_params(rc, dict);
  const vad::FrameConfig frame_cfg;
  const std::vector<Detection> decisions =
      vad::vad_run(audio, dict, params, frame_cfg);
  io::write_decisions_csv(rc.output, decisions);
  if (!rc.ref_path.empty()) {
    const std::vector<int> reference = io::read_labels(rc.ref_path);
    const auto [pd, pf] = vad::vad_score(decisions, reference);
    std::printf("pd=%.6g pf=%.6g frames=%zu\n", pd, pf, decisions.size());
  }
}

void add_solver_flags(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--rule", rc.rule, "Decision rule: plain|sparse|robust");
  cmd->add_option("--coder", rc.coder, "Coefficient solver: omp|l1");
  cmd->add_option("--sparsity", rc.sparsity, "Greedy solver sparsity target");
  cmd->add_option("--omp-residual-tol", rc.omp_residual_tol,
                  "Greedy solver residual stop (0 = off)");
  cmd->add_option("--l1-lambda", rc.l1_lambda, "l1 solver penalty");
  cmd->add_option("--rho", rc.rho, "Robust solver coefficient penalty");
  cmd->add_option("--rob-lambda", rc.rob_lambda, "Robust solver error penalty");
  cmd->add_option("--sigma-n2", rc.sigma_n2, "Noise variance");
  cmd->add_option("--sigma-e2", rc.sigma_e2, "Model error variance");
  cmd->add_option("--gamma", rc.gamma, "Sparsity penalty of the sparse rule");
}

void add_calibration_flags(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--threshold-c", rc.threshold_c,
                  "Decision constant C (skips calibration)");
  cmd->add_option("--alpha", rc.alpha, "Target false-alarm rate");
  cmd->add_option("--trials", rc.trials, "Calibration trials");
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  RunConfig rc;
  CLI::App app{"Union-of-low-rank-subspaces detection toolkit"};
  app.require_subcommand(1);

  CLI::App* learn = app.add_subcommand("learn", "Learn or construct a dictionary");
  learn->add_option("--algo", rc.algo, "ksvd|kmeans|dct")->required();
  learn->add_option("--atoms", rc.atoms, "Number of atoms K")->required();
  learn->add_option("--sparsity", rc.sparsity, "Coding sparsity (ksvd)");
  learn->add_option("--iters", rc.iters, "Learning iterations");
  learn->add_option("--dim", rc.dim, "Signal dimension (dct)");
  learn->add_option("--seed", rc.seed, "Random seed");
  learn->add_option("--input", rc.input, "Training vectors (.csv) or audio (.wav)");
  learn->add_flag("--drop-silent", rc.drop_silent,
                  "Drop low-energy frames before feature extraction");
  learn->add_option("--out", rc.output, "Output dictionary path")->required();
  learn->callback([&] { cmd_learn(rc); });

  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  synth->add_option("--dim", rc.dim, "Signal dimension n")->required();
  synth->add_option("--atoms", rc.atoms, "Number of atoms K")->required();
  synth->add_option("--sparsity", rc.sparsity, "Planted code sparsity T");
  synth->add_option("--count", rc.count, "Signals per hypothesis");
  synth->add_option("--snr-db", rc.snr_db, "Signal-to-noise ratio in dB");
  synth->add_option("--esr", rc.esr, "Error-to-signal ratio");
  synth->add_option("--seed", rc.seed, "Random seed");
  synth->add_option("--out-prefix", rc.out_prefix, "Output path prefix")
      ->required();
  synth->callback([&] { cmd_synth(rc); });

  CLI::App* detect = app.add_subcommand("detect", "Run the detector on signals");
  detect->add_option("--dict", rc.dict_path, "Dictionary file")->required();
  detect->add_option("--input", rc.input, "Signals CSV")->required();
  detect->add_option("--seed", rc.seed, "Calibration seed");
  add_solver_flags(detect, rc);
  add_calibration_flags(detect, rc);
  detect->add_option("--out", rc.output, "Decisions CSV")->required();
  detect->callback([&] { cmd_detect(rc); });

  CLI::App* roc = app.add_subcommand("roc", "Empirical ROC of the decision statistic");
  roc->add_option("--dict", rc.dict_path, "Dictionary file")->required();
  roc->add_option("--h0", rc.h0_path, "H0 signals CSV")->required();
  roc->add_option("--h1", rc.h1_path, "H1 signals CSV")->required();
  add_solver_flags(roc, rc);
  roc->add_option("--out", rc.output, "ROC CSV")->required();
  roc->callback([&] { cmd_roc(rc); });

  CLI::App* sweep = app.add_subcommand("sweep", "ESR versus coding sparsity");
  sweep->add_option("--input", rc.input, "Training vectors (.csv) or audio (.wav)")
      ->required();
  sweep->add_option("--atoms", rc.atoms, "Number of atoms K")->required();
  sweep->add_option("--t-min", rc.t_min, "First sparsity");
  sweep->add_option("--t-max", rc.t_max, "Last sparsity");
  sweep->add_option("--learn-sparsity", rc.learn_sparsity, "Training sparsity");
  sweep->add_option("--iters", rc.iters, "Learning iterations");
  sweep->add_option("--seed", rc.seed, "Random seed");
  sweep->add_flag("--drop-silent", rc.drop_silent,
                  "Drop low-energy frames before feature extraction");
  sweep->add_option("--out", rc.output, "Sweep CSV")->required();
  sweep->callback([&] { cmd_sweep(rc); });

  CLI::App* vad_cmd = app.add_subcommand("vad", "Voice activity detection on a wav");
  vad_cmd->add_option("--input", rc.input, "Input wav (16-bit mono 8 kHz)")
      ->required();
  vad_cmd->add_option("--dict", rc.dict_path, "Dictionary file")->required();
  vad_cmd->add_option("--noise", rc.noise_path, "Noise wav to mix in");
  vad_cmd->add_option("--snr-db", rc.snr_db, "Mixing SNR in dB");
  vad_cmd->add_option("--ref", rc.ref_path, "Reference labels (one 0/1 per line)");
  vad_cmd->add_option("--seed", rc.seed, "Calibration seed");
  add_solver_flags(vad_cmd, rc);
  add_calibration_flags(vad_cmd, rc);
  vad_cmd->add_option("--out", rc.output, "Decisions CSV")->required();
  vad_cmd->callback([&] { cmd_vad(rc); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace ulrs::cli
