// Copyright 2026 the osnst authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OSNST_IO_HPP
#define OSNST_IO_HPP

#include <filesystem>
#include <nlohmann/json_fwd.hpp>

#include "osnst/diagnostics.hpp"
#include "osnst/model.hpp"

namespace osnst::io {

// Problem-instance container, little-endian:
//   bytes 0..7   magic "OSNSTPI\0"
//   u32          version (1)
//   u32          flags: bit0 truth, bit1 support, bit2 noise
//   u64 x 3      M, N, L
//   f64 x M*N    phi, row-major
//   f64 x M*L    y, row-major
//   [f64 x N*L   truth, row-major]
//   [u64 count, u64 x count   support indices]
//   [f64 x M*L   noise, row-major]
// A JSON metadata sidecar is written next to it as <path>.json.

void save_instance(const ProblemInstance& p, const std::filesystem::path& path,
                   const nlohmann::json& metadata);
void save_instance(const ProblemInstance& p, const std::filesystem::path& path);

ProblemInstance load_instance(const std::filesystem::path& path);

/// Summary JSON (histories included only when present in the result).
nlohmann::json result_to_json(const RecoveryResult& r);

nlohmann::json rip_report_to_json(const diag::RipReport& r);
nlohmann::json certificate_to_json(const diag::ConvergenceCertificate& c);

}  // namespace osnst::io

#endif  // OSNST_IO_HPP
