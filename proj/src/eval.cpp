// ulrs/eval.cpp

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

#include "ulrs/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace ulrs {

void SynthConfig::validate() const {
  if (n < 1) throw ConfigError("synth: n must be >= 1");
  if (num_atoms < 1) throw ConfigError("synth: num_atoms must be >= 1");
  if (sparsity < 1 || sparsity > num_atoms) {
    throw ConfigError("synth: sparsity must satisfy 1 <= T <= K");
  }
  if (count < 1) throw ConfigError("synth: count must be >= 1");
  if (esr < 0) throw ConfigError("synth: esr must be >= 0");
}

SynthData synth_uos(const SynthConfig& cfg) {
  cfg.validate();
  std::mt19937_64 engine(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  Matrix atoms(cfg.n, cfg.num_atoms);
  for (Index j = 0; j < cfg.num_atoms; ++j) {
    double norm = 0.0;
    do {
      for (Index i = 0; i < cfg.n; ++i) atoms(i, j) = normal(engine);
      norm = atoms.col(j).norm();
    } while (norm == 0.0);
  }

  SynthData data{Dictionary::normalized(std::move(atoms)), {}, {}, {}, {}, 0, 0};
  const Matrix& d = data.dict.matrix();

  std::vector<Index> all_atoms(static_cast<size_t>(cfg.num_atoms));
  std::iota(all_atoms.begin(), all_atoms.end(), Index{0});

  data.clean.reserve(static_cast<size_t>(cfg.count));
  data.codes.reserve(static_cast<size_t>(cfg.count));
  double signal_energy = 0.0;
  for (int i = 0; i < cfg.count; ++i) {
    for (int t = 0; t < cfg.sparsity; ++t) {
      std::uniform_int_distribution<Index> pick(t, cfg.num_atoms - 1);
      std::swap(all_atoms[static_cast<size_t>(t)],
                all_atoms[static_cast<size_t>(pick(engine))]);
    }
    Vector coeffs = Vector::Zero(cfg.num_atoms);
    for (int t = 0; t < cfg.sparsity; ++t) {
      coeffs[all_atoms[static_cast<size_t>(t)]] = normal(engine);
    }
    Vector clean = d * coeffs;
    signal_energy += clean.squaredNorm();
    data.codes.push_back(detail::build_sparse_code(d, clean, std::move(coeffs)));
    data.clean.push_back(std::move(clean));
  }
  const double mean_signal_energy = signal_energy / cfg.count;
  if (mean_signal_energy == 0.0) {
    throw ConfigError("synth: drew an all-zero signal set");
  }

  auto draw_pool = [&](int count) {
    std::vector<Vector> pool;
    pool.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
      Vector v(cfg.n);
      for (Index k = 0; k < cfg.n; ++k) v[k] = normal(engine);
      pool.push_back(std::move(v));
    }
    return pool;
  };
  auto pool_component_var = [&](const std::vector<Vector>& pool) {
    double s = 0.0;
    for (const Vector& v : pool) s += v.squaredNorm();
    return s / (static_cast<double>(pool.size()) * static_cast<double>(cfg.n));
  };

  // Error and noise pools are rescaled so the sample ESR / SNR hit the
  // request exactly, not just in expectation.
  std::vector<Vector> errors = draw_pool(cfg.count);
  data.sigma_e2 = cfg.esr * mean_signal_energy;
  double error_scale = 0.0;
  if (cfg.esr > 0.0) {
    error_scale = std::sqrt(data.sigma_e2 / pool_component_var(errors));
  }

  std::vector<Vector> h1_noise = draw_pool(cfg.count);
  const double snr_linear = std::pow(10.0, cfg.snr_db / 10.0);
  data.sigma_n2 = mean_signal_energy / snr_linear;
  const double h1_noise_scale = std::sqrt(data.sigma_n2 / pool_component_var(h1_noise));

  std::vector<Vector> h0_noise = draw_pool(cfg.count);
  const double h0_noise_scale = std::sqrt(data.sigma_n2 / pool_component_var(h0_noise));

  data.h1.reserve(static_cast<size_t>(cfg.count));
  data.h0.reserve(static_cast<size_t>(cfg.count));
  for (int i = 0; i < cfg.count; ++i) {
    const auto u = static_cast<size_t>(i);
    data.h1.push_back(data.clean[u] + error_scale * errors[u] +
                      h1_noise_scale * h1_noise[u]);
    data.h0.push_back(h0_noise_scale * h0_noise[u]);
  }
  return data;
}

RocCurve roc_from_stats(std::vector<double> h0_stats,
                        std::vector<double> h1_stats) {
  if (h0_stats.empty() || h1_stats.empty()) {
    throw ConfigError("roc: both statistic sets must be nonempty");
  }
  std::sort(h0_stats.begin(), h0_stats.end(), std::greater<double>());
  std::sort(h1_stats.begin(), h1_stats.end(), std::greater<double>());
  const double n0 = static_cast<double>(h0_stats.size());
  const double n1 = static_cast<double>(h1_stats.size());

  RocCurve curve;
  size_t i0 = 0;
  size_t i1 = 0;
  while (i0 < h0_stats.size() || i1 < h1_stats.size()) {
    double v;
    if (i0 == h0_stats.size()) {
      v = h1_stats[i1];
    } else if (i1 == h1_stats.size()) {
      v = h0_stats[i0];
    } else {
      v = std::max(h0_stats[i0], h1_stats[i1]);
    }
    // Counts strictly above the threshold v.
    const RocPoint point{static_cast<double>(i0) / n0,
                         static_cast<double>(i1) / n1, v};
    if (!curve.points.empty() && curve.points.back().pf == point.pf) {
      curve.points.back() = point;  // keep the max-pd point at this pf
    } else {
      curve.points.push_back(point);
    }
    while (i0 < h0_stats.size() && h0_stats[i0] == v) ++i0;
    while (i1 < h1_stats.size() && h1_stats[i1] == v) ++i1;
  }
  return curve;
}

RocCurve monte_carlo_roc(const std::function<double(const Vector&)>& statistic,
                         const std::vector<Vector>& h0_set,
                         const std::vector<Vector>& h1_set) {
  std::vector<double> h0_stats;
  h0_stats.reserve(h0_set.size());
  for (const Vector& y : h0_set) h0_stats.push_back(statistic(y));
  std::vector<double> h1_stats;
  h1_stats.reserve(h1_set.size());
  for (const Vector& y : h1_set) h1_stats.push_back(statistic(y));
  return roc_from_stats(std::move(h0_stats), std::move(h1_stats));
}

double auc(const RocCurve& curve) {
  if (curve.points.empty()) throw ConfigError("auc: empty curve");
  double area = 0.0;
  double pf_prev = curve.points.front().pf;
  double pd_prev = curve.points.front().pd;
  if (pf_prev > 0.0) {
    area += pf_prev * pd_prev / 2.0;  // extend from (0, 0)
  }
  for (size_t i = 1; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    area += (p.pf - pf_prev) * (p.pd + pd_prev) / 2.0;
    pf_prev = p.pf;
    pd_prev = p.pd;
  }
  if (pf_prev < 1.0) area += (1.0 - pf_prev) * (1.0 + pd_prev) / 2.0;
  return area;
}

double pd_at_pf(const RocCurve& curve, double pf) {
  double best = 0.0;
  for (const auto& p : curve.points) {
    if (p.pf <= pf) best = std::max(best, p.pd);
  }
  return best;
}

std::vector<std::pair<int, double>> sparsity_esr_sweep(
    const std::vector<Vector>& training, Index num_atoms, int t_min, int t_max,
    const SweepOptions& opts) {
  if (t_min < 1 || t_min > t_max || t_max > num_atoms) {
    throw ConfigError("sweep: need 1 <= t_min <= t_max <= K");
  }
  Dictionary dict =
      ksvd_learn(training, num_atoms, opts.learn_sparsity, opts.iterations,
                 opts.seed)
          .first;
  std::vector<std::pair<int, double>> result;
  result.reserve(static_cast<size_t>(t_max - t_min + 1));
  for (int t = t_min; t <= t_max; ++t) {
    result.emplace_back(t, esr_estimate(dict, training, t));
  }
  return result;
}

}  // namespace ulrs
