// ulrs/io.hpp

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

#ifndef ULRS_IO_HPP
#define ULRS_IO_HPP

#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ulrs/detector.hpp"
#include "ulrs/dictionary.hpp"
#include "ulrs/eval.hpp"
#include "ulrs/types.hpp"

namespace ulrs::io {

// All writers are atomic: content goes to a temporary file in the target
// directory which is renamed into place only on success.  Numbers are
// printed with 17 significant digits so a read back reproduces every double
// exactly.

/// Runs `writer` against a temporary stream, then renames over `path`.
void atomic_write(const std::string& path,
                  const std::function<void(std::ostream&)>& writer);

/// Format: line 1 "ULRSDICT 1 <n> <K>", then n lines of K space-separated
/// decimals (row i holds coordinate i of every atom).
void write_dictionary(const std::string& path, const Dictionary& dict);
Dictionary read_dictionary(const std::string& path);

/// One vector per line, comma-separated, no header.
void write_vectors_csv(const std::string& path,
                       const std::vector<Vector>& vectors);
std::vector<Vector> read_vectors_csv(const std::string& path);

/// Header "pf,pd,threshold".
void write_roc_csv(const std::string& path, const RocCurve& curve);

/// Header "T,esr".
void write_sweep_csv(const std::string& path,
                     const std::vector<std::pair<int, double>>& sweep);

/// Header "frame,t,threshold,decision" with decision in {0,1}.
void write_decisions_csv(const std::string& path,
                         const std::vector<Detection>& decisions);

/// One 0/1 label per line.
std::vector<int> read_labels(const std::string& path);

}  // namespace ulrs::io

#endif  // ULRS_IO_HPP
