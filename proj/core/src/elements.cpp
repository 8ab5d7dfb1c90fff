/**
 * Copyright 2026 The timebin-amp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "tbamp/elements.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tbamp {

namespace {

constexpr std::array<Bin, 2> kBins = {Bin::S, Bin::L};
constexpr std::array<Pol, 2> kPols = {Pol::H, Pol::V};

void sort_and_merge(LinearModeMap::Column& column) {
  std::sort(column.begin(), column.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  LinearModeMap::Column merged;
  for (const auto& entry : column) {
    if (!merged.empty() && merged.back().first == entry.first) {
      merged.back().second += entry.second;
    } else {
      merged.push_back(entry);
    }
  }
  std::erase_if(merged, [](const auto& e) { return std::abs(e.second) < kAmplitudePruneTol; });
  column = std::move(merged);
}

// Inner product of two sorted columns.
Complex column_dot(const LinearModeMap::Column& a, const LinearModeMap::Column& b) {
  Complex total{0.0, 0.0};
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      total += std::conj(ia->second) * ib->second;
      ++ia;
      ++ib;
    }
  }
  return total;
}

double factorial(int n) {
  double out = 1.0;
  for (int k = 2; k <= n; ++k) out *= k;
  return out;
}

}  // namespace

LinearModeMap::LinearModeMap(Columns columns) : columns_(std::move(columns)) {
  for (auto& [input, column] : columns_) {
    sort_and_merge(column);
    for (const auto& [output, coeff] : column) outputs_.insert(output);
  }
  for (auto it = columns_.begin(); it != columns_.end(); ++it) {
    for (auto jt = it; jt != columns_.end(); ++jt) {
      const Complex dot = column_dot(it->second, jt->second);
      const double expected = (it == jt) ? 1.0 : 0.0;
      if (std::abs(dot - expected) > kNormTol) {
        throw std::invalid_argument("mode map is not isometric near input " +
                                    to_string(it->first));
      }
    }
  }
}

const LinearModeMap::Column* LinearModeMap::column(const ModeId& mode) const {
  auto it = columns_.find(mode);
  return it == columns_.end() ? nullptr : &it->second;
}

PureState apply_mode_map(const PureState& state, const LinearModeMap& map) {
  PureState::Terms out;
  for (const auto& [basis, amp] : state.terms()) {
    double norm_denominator = 1.0;
    for (const auto& [mode, count] : basis.occupations()) {
      if (map.column(mode) == nullptr && map.has_output(mode)) {
        throw std::invalid_argument("occupied pass-through mode " + to_string(mode) +
                                    " collides with a map output");
      }
      norm_denominator *= factorial(count);
    }
    // |n1,n2,...> = prod a_i^+^{n_i} / sqrt(prod n_i!) |vac>; substitute each
    // operator and let create_photon supply the sqrt(n+1) factors on the way
    // back up.
    PureState term{{FockBasis{}, amp / std::sqrt(norm_denominator)}};
    for (const auto& [mode, count] : basis.occupations()) {
      const LinearModeMap::Column* col = map.column(mode);
      for (int k = 0; k < count; ++k) {
        if (col == nullptr) {
          term = create_photon(term, mode);
        } else {
          PureState next;
          for (const auto& [output, coeff] : *col) {
            next = next + coeff * create_photon(term, output);
          }
          term = std::move(next);
        }
      }
    }
    for (const auto& [rewritten, value] : term.terms()) out[rewritten] += value;
  }
  return PureState(std::move(out));
}

LinearModeMap beam_splitter_map(std::string_view in_a, std::string_view in_b,
                                std::string_view out_a, std::string_view out_b) {
  if (in_a == in_b || out_a == out_b) {
    throw std::invalid_argument("beam splitter requires distinct spatial labels");
  }
  const double c = 1.0 / std::sqrt(2.0);
  LinearModeMap::Columns columns;
  for (Bin bin : kBins) {
    for (Pol pol : kPols) {
      const ModeId oa{std::string(out_a), bin, pol};
      const ModeId ob{std::string(out_b), bin, pol};
      columns[ModeId{std::string(in_a), bin, pol}] = {{oa, c}, {ob, c}};
      columns[ModeId{std::string(in_b), bin, pol}] = {{oa, c}, {ob, -c}};
    }
  }
  return LinearModeMap(std::move(columns));
}

LinearModeMap vbs_map(std::string_view in, std::string_view kept,
                      std::string_view out, double transmission) {
  if (transmission < 0.0 || transmission > 1.0) {
    throw std::domain_error("VBS transmission must lie in [0, 1]");
  }
  if (kept == out) {
    throw std::invalid_argument("VBS requires distinct kept/out labels");
  }
  const double ck = std::sqrt(transmission);
  const double co = std::sqrt(1.0 - transmission);
  LinearModeMap::Columns columns;
  for (Bin bin : kBins) {
    for (Pol pol : kPols) {
      columns[ModeId{std::string(in), bin, pol}] = {
          {ModeId{std::string(kept), bin, pol}, ck},
          {ModeId{std::string(out), bin, pol}, co}};
    }
  }
  return LinearModeMap(std::move(columns));
}

LinearModeMap pbs_map(std::string_view in, std::string_view out_h,
                      std::string_view out_v) {
  if (out_h == out_v) {
    throw std::invalid_argument("PBS requires distinct output labels");
  }
  LinearModeMap::Columns columns;
  for (Bin bin : kBins) {
    columns[ModeId{std::string(in), bin, Pol::H}] = {
        {ModeId{std::string(out_h), bin, Pol::H}, Complex{1.0, 0.0}}};
    columns[ModeId{std::string(in), bin, Pol::V}] = {
        {ModeId{std::string(out_v), bin, Pol::V}, Complex{1.0, 0.0}}};
  }
  return LinearModeMap(std::move(columns));
}

LinearModeMap phase_flip_map(std::string_view spatial, QubitComponent component) {
  const ModeId mode = (component == QubitComponent::SH) ? mode_sh(std::string(spatial))
                                                        : mode_lv(std::string(spatial));
  LinearModeMap::Columns columns;
  columns[mode] = {{mode, Complex{-1.0, 0.0}}};
  return LinearModeMap(std::move(columns));
}

}  // namespace tbamp
