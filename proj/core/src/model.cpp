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

#include "osnst/model.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace osnst {

void ProblemInstance::validate() const {
    if (phi.rows() < 1 || phi.cols() < 1) {
        throw dimension_error("ProblemInstance: empty sensing matrix");
    }
    if (!(phi.rows() < phi.cols())) {
        throw dimension_error("ProblemInstance: expected M < N");
    }
    if (y.rows() != phi.rows()) {
        throw dimension_error("ProblemInstance: y row count != M");
    }
    if (!(y.cols() < phi.rows())) {
        throw dimension_error("ProblemInstance: expected L < M");
    }
    if (truth) {
        if (truth->rows() != phi.cols() || truth->cols() != y.cols()) {
            throw dimension_error("ProblemInstance: truth must be N x L");
        }
        if (!noise) {
            const double err = (y - phi * *truth).norm();
            if (err > 1e-12 * std::max(y.norm(), 1e-300)) {
                throw dimension_error(
                    "ProblemInstance: y != phi * truth for a noiseless "
                    "instance");
            }
        }
    }
    if (noise && (noise->rows() != y.rows() || noise->cols() != y.cols())) {
        throw dimension_error("ProblemInstance: noise must be M x L");
    }
}

FeedbackSchedule FeedbackSchedule::linear(int slope) {
    if (slope < 1) throw dimension_error("FeedbackSchedule: slope must be >= 1");
    FeedbackSchedule s;
    s.kind_ = Kind::Linear;
    s.slope_ = slope;
    return s;
}

FeedbackSchedule FeedbackSchedule::quadratic() {
    FeedbackSchedule s;
    s.kind_ = Kind::Quadratic;
    return s;
}

FeedbackSchedule FeedbackSchedule::table(std::vector<int> counts) {
    if (counts.empty()) {
        throw dimension_error("FeedbackSchedule: empty table");
    }
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] < 1 || (i > 0 && counts[i] < counts[i - 1])) {
            throw dimension_error(
                "FeedbackSchedule: table must be positive and non-decreasing");
        }
    }
    FeedbackSchedule s;
    s.kind_ = Kind::Table;
    s.table_ = std::move(counts);
    return s;
}

FeedbackSchedule FeedbackSchedule::parse(const std::string& text) {
    if (text == "x^2" || text == "x2" || text == "quadratic") {
        return quadratic();
    }
    if (!text.empty() && text.back() == 'x' &&
        text.find(',') == std::string::npos) {
        if (text.size() == 1) return linear(1);
        int slope = 0;
        auto [ptr, ec] =
            std::from_chars(text.data(), text.data() + text.size() - 1, slope);
        if (ec == std::errc() && ptr == text.data() + text.size() - 1) {
            return linear(slope);
        }
    }
    if (text.find(',') != std::string::npos || !text.empty()) {
        std::vector<int> vals;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t comma = text.find(',', pos);
            if (comma == std::string::npos) comma = text.size();
            int v = 0;
            auto [ptr, ec] =
                std::from_chars(text.data() + pos, text.data() + comma, v);
            if (ec != std::errc() || ptr != text.data() + comma) {
                throw dimension_error("FeedbackSchedule: cannot parse '" +
                                      text + "'");
            }
            vals.push_back(v);
            pos = comma + 1;
        }
        return table(std::move(vals));
    }
    throw dimension_error("FeedbackSchedule: cannot parse '" + text + "'");
}

int FeedbackSchedule::raw(int k) const {
    if (k < 1) return 0;
    switch (kind_) {
        case Kind::Linear:
            return slope_ * k;
        case Kind::Quadratic:
            return k * k;
        case Kind::Table: {
            const std::size_t i =
                std::min<std::size_t>(static_cast<std::size_t>(k) - 1,
                                      table_.size() - 1);
            return table_[i];
        }
    }
    return 0;
}

int FeedbackSchedule::eval(int k, int cap) const {
    if (k < 1) throw dimension_error("FeedbackSchedule::eval: k must be >= 1");
    if (cap < 1) throw dimension_error("FeedbackSchedule::eval: cap must be >= 1");
    return std::min(raw(k), cap);
}

std::string FeedbackSchedule::name() const {
    switch (kind_) {
        case Kind::Linear:
            return slope_ == 1 ? "x" : std::to_string(slope_) + "x";
        case Kind::Quadratic:
            return "x^2";
        case Kind::Table: {
            std::string s;
            for (std::size_t i = 0; i < table_.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(table_[i]);
            }
            return s;
        }
    }
    return "?";
}

double residual_norm(const ProblemInstance& p, const Mat& w) {
    if (w.rows() != p.phi.cols() || w.cols() != p.y.cols()) {
        throw dimension_error("residual_norm: estimate must be N x L");
    }
    return (p.y - p.phi * w).norm();
}

}  // namespace osnst
