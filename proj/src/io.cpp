// ulrs/io.cpp

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

#include "ulrs/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ulrs::io {

namespace {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& token, const std::string& context) {
  try {
    size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw IoError(context + ": cannot parse number '" + token + "'");
  }
}

std::ifstream open_for_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  return in;
}

}  // namespace

void atomic_write(const std::string& path,
                  const std::function<void(std::ostream&)>& writer) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  for (int i = 0; fs::exists(tmp); ++i) {
    tmp = target;
    tmp += ".tmp" + std::to_string(i);
  }
  {
    std::ofstream out(tmp);
    if (!out) throw IoError("cannot open for writing: " + tmp.string());
    try {
      writer(out);
    } catch (...) {
      out.close();
      fs::remove(tmp);
      throw;
    }
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw IoError("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw IoError("cannot rename " + tmp.string() + " to " + path + ": " +
                  ec.message());
  }
}

void write_dictionary(const std::string& path, const Dictionary& dict) {
  atomic_write(path, [&](std::ostream& out) {
    out << "ULRSDICT 1 " << dict.dim() << ' ' << dict.num_atoms() << '\n';
    const Matrix& m = dict.matrix();
    for (Index i = 0; i < m.rows(); ++i) {
      for (Index j = 0; j < m.cols(); ++j) {
        if (j) out << ' ';
        out << format_double(m(i, j));
      }
      out << '\n';
    }
  });
}

Dictionary read_dictionary(const std::string& path) {
  std::ifstream in = open_for_read(path);
  std::string magic;
  int version = 0;
  Index n = 0;
  Index k = 0;
  if (!(in >> magic >> version >> n >> k)) {
    throw IoError(path + ": malformed dictionary header");
  }
  if (magic != "ULRSDICT") throw IoError(path + ": not a ULRSDICT file");
  if (version != 1) {
    throw IoError(path + ": unsupported dictionary format version " +
                  std::to_string(version));
  }
  if (n < 1 || k < 1) throw IoError(path + ": bad dictionary dimensions");
  Matrix m(n, k);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < k; ++j) {
      if (!(in >> m(i, j))) {
        throw IoError(path + ": truncated dictionary payload");
      }
    }
  }
  try {
    return Dictionary(std::move(m));
  } catch (const Error& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_vectors_csv(const std::string& path,
                       const std::vector<Vector>& vectors) {
  atomic_write(path, [&](std::ostream& out) {
    for (const Vector& v : vectors) {
      for (Index i = 0; i < v.size(); ++i) {
        if (i) out << ',';
        out << format_double(v[i]);
      }
      out << '\n';
    }
  });
}

std::vector<Vector> read_vectors_csv(const std::string& path) {
  std::ifstream in = open_for_read(path);
  std::vector<Vector> vectors;
  std::string line;
  Index width = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string token;
    while (std::getline(ss, token, ',')) {
      row.push_back(parse_double(token, path));
    }
    if (width < 0) {
      width = static_cast<Index>(row.size());
    } else if (width != static_cast<Index>(row.size())) {
      throw IoError(path + ": rows have inconsistent lengths");
    }
    Vector v(static_cast<Index>(row.size()));
    for (size_t i = 0; i < row.size(); ++i) v[static_cast<Index>(i)] = row[i];
    vectors.push_back(std::move(v));
  }
  if (vectors.empty()) throw IoError(path + ": no vectors found");
  return vectors;
}

void write_roc_csv(const std::string& path, const RocCurve& curve) {
  atomic_write(path, [&](std::ostream& out) {
    out << "pf,pd,threshold\n";
    for (const RocPoint& p : curve.points) {
      out << format_double(p.pf) << ',' << format_double(p.pd) << ','
          << format_double(p.threshold) << '\n';
    }
  });
}

void write_sweep_csv(const std::string& path,
                     const std::vector<std::pair<int, double>>& sweep) {
  atomic_write(path, [&](std::ostream& out) {
    out << "T,esr\n";
    for (const auto& [t, esr] : sweep) {
      out << t << ',' << format_double(esr) << '\n';
    }
  });
}

void write_decisions_csv(const std::string& path,
                         const std::vector<Detection>& decisions) {
  atomic_write(path, [&](std::ostream& out) {
    out << "frame,t,threshold,decision\n";
    for (size_t i = 0; i < decisions.size(); ++i) {
      const Detection& d = decisions[i];
      out << i << ',' << format_double(d.statistic_t) << ','
          << format_double(d.threshold) << ','
          << (d.decision == Hypothesis::H1 ? 1 : 0) << '\n';
    }
  });
}

std::vector<int> read_labels(const std::string& path) {
  std::ifstream in = open_for_read(path);
  std::vector<int> labels;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    if (token == "0") {
      labels.push_back(0);
    } else if (token == "1") {
      labels.push_back(1);
    } else {
      throw IoError(path + ": label lines must be 0 or 1, got '" + token + "'");
    }
  }
  return labels;
}

}  // namespace ulrs::io
