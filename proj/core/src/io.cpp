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

#include "osnst/io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>

namespace osnst::io {

namespace {

constexpr char kMagic[8] = {'O', 'S', 'N', 'S', 'T', 'P', 'I', '\0'};
constexpr std::uint32_t kVersion = 1;

void write_bytes(std::ostream& os, const void* data, std::size_t size,
                 const std::filesystem::path& path) {
    os.write(static_cast<const char*>(data),
             static_cast<std::streamsize>(size));
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

void read_bytes(std::istream& is, void* data, std::size_t size,
                const std::filesystem::path& path) {
    is.read(static_cast<char*>(data), static_cast<std::streamsize>(size));
    if (!is) throw std::runtime_error("truncated file: " + path.string());
}

void write_mat(std::ostream& os, const Mat& m,
               const std::filesystem::path& path) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const double v = m(i, j);
            write_bytes(os, &v, sizeof v, path);
        }
    }
}

Mat read_mat(std::istream& is, Eigen::Index rows, Eigen::Index cols,
             const std::filesystem::path& path) {
    Mat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            double v;
            read_bytes(is, &v, sizeof v, path);
            m(i, j) = v;
        }
    }
    return m;
}

}  // namespace

void save_instance(const ProblemInstance& p, const std::filesystem::path& path,
                   const nlohmann::json& metadata) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path.string());

    write_bytes(f, kMagic, sizeof kMagic, path);
    write_bytes(f, &kVersion, sizeof kVersion, path);
    const std::uint32_t flags = (p.truth ? 1u : 0u) |
                                (p.true_support ? 2u : 0u) |
                                (p.noise ? 4u : 0u);
    write_bytes(f, &flags, sizeof flags, path);
    const std::uint64_t dims[3] = {static_cast<std::uint64_t>(p.phi.rows()),
                                   static_cast<std::uint64_t>(p.phi.cols()),
                                   static_cast<std::uint64_t>(p.y.cols())};
    write_bytes(f, dims, sizeof dims, path);
    write_mat(f, p.phi, path);
    write_mat(f, p.y, path);
    if (p.truth) write_mat(f, *p.truth, path);
    if (p.true_support) {
        const std::uint64_t count = p.true_support->size();
        write_bytes(f, &count, sizeof count, path);
        for (int idx : *p.true_support) {
            const std::uint64_t v = static_cast<std::uint64_t>(idx);
            write_bytes(f, &v, sizeof v, path);
        }
    }
    if (p.noise) write_mat(f, *p.noise, path);

    std::ofstream sidecar(path.string() + ".json");
    if (!sidecar) {
        throw std::runtime_error("cannot write sidecar for " + path.string());
    }
    sidecar << metadata.dump(2) << '\n';
}

void save_instance(const ProblemInstance& p,
                   const std::filesystem::path& path) {
    save_instance(p, path, nlohmann::json::object());
}

ProblemInstance load_instance(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path.string());

    char magic[8];
    read_bytes(f, magic, sizeof magic, path);
    if (std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
        throw std::runtime_error("not an instance file: " + path.string());
    }
    std::uint32_t version, flags;
    read_bytes(f, &version, sizeof version, path);
    if (version != kVersion) {
        throw std::runtime_error("unsupported version in " + path.string());
    }
    read_bytes(f, &flags, sizeof flags, path);
    std::uint64_t dims[3];
    read_bytes(f, dims, sizeof dims, path);
    const auto m = static_cast<Eigen::Index>(dims[0]);
    const auto n = static_cast<Eigen::Index>(dims[1]);
    const auto l = static_cast<Eigen::Index>(dims[2]);

    ProblemInstance p;
    p.phi = read_mat(f, m, n, path);
    p.y = read_mat(f, m, l, path);
    if (flags & 1u) p.truth = read_mat(f, n, l, path);
    if (flags & 2u) {
        std::uint64_t count;
        read_bytes(f, &count, sizeof count, path);
        IndexSet support(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            std::uint64_t v;
            read_bytes(f, &v, sizeof v, path);
            support[i] = static_cast<int>(v);
        }
        p.true_support = std::move(support);
    }
    if (flags & 4u) p.noise = read_mat(f, m, l, path);
    return p;
}

nlohmann::json result_to_json(const RecoveryResult& r) {
    nlohmann::json j;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["final_residual"] = r.final_residual;
    j["wall_time_s"] = r.wall_time;
    j["failed"] = r.failed;
    if (r.failed) j["failure"] = r.failure;
    j["clamped"] = r.clamped;
    j["rank_drop"] = r.rank_drop;
    if (!r.residual_history.empty()) {
        j["residual_history"] = r.residual_history;
    }
    if (!r.support_history.empty()) {
        j["support_history"] = r.support_history;
        j["final_support"] = r.support_history.back();
    }
    return j;
}

nlohmann::json rip_report_to_json(const diag::RipReport& r) {
    nlohmann::json j;
    j["s"] = r.s;
    j["delta_s"] = r.delta_s;
    j["gamma_s"] = r.gamma_s;
    j["theta_s"] = r.theta_s;
    j["subsets_examined"] = r.subsets_examined;
    j["exact"] = r.exact;
    if (!r.exact) j["note"] = "Monte-Carlo lower bound";
    return j;
}

nlohmann::json certificate_to_json(const diag::ConvergenceCertificate& c) {
    nlohmann::json j;
    j["level"] = c.level;
    j["delta"] = c.delta;
    j["gamma"] = c.gamma;
    j["theta"] = c.theta;
    j["alpha"] = c.alpha;
    j["rho"] = std::isfinite(c.rho) ? nlohmann::json(c.rho)
                                    : nlohmann::json("inf");
    j["kappa"] = std::isfinite(c.kappa) ? nlohmann::json(c.kappa)
                                        : nlohmann::json("inf");
    j["satisfied"] = c.satisfied;
    return j;
}

}  // namespace osnst::io
