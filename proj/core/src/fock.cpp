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

#include "tbamp/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tbamp {

std::string to_string(const ModeId& mode) {
  std::string out = mode.spatial;
  out += ':';
  out += (mode.bin == Bin::S) ? 'S' : 'L';
  out += (mode.pol == Pol::H) ? 'H' : 'V';
  return out;
}

FockBasis::FockBasis(Occupations occupations) : occ_(std::move(occupations)) {
  for (const auto& [mode, count] : occ_) {
    if (count < 0) {
      throw std::invalid_argument("negative occupation for mode " + to_string(mode));
    }
  }
  std::sort(occ_.begin(), occ_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  // merge duplicates, drop zeros
  Occupations merged;
  merged.reserve(occ_.size());
  for (const auto& entry : occ_) {
    if (!merged.empty() && merged.back().first == entry.first) {
      merged.back().second += entry.second;
    } else {
      merged.push_back(entry);
    }
  }
  std::erase_if(merged, [](const auto& e) { return e.second == 0; });
  occ_ = std::move(merged);
}

int FockBasis::occupation(const ModeId& mode) const {
  auto it = std::lower_bound(occ_.begin(), occ_.end(), mode,
                             [](const auto& e, const ModeId& m) { return e.first < m; });
  if (it != occ_.end() && it->first == mode) return it->second;
  return 0;
}

FockBasis FockBasis::with_photon_added(const ModeId& mode) const {
  FockBasis out;
  out.occ_ = occ_;
  auto it = std::lower_bound(out.occ_.begin(), out.occ_.end(), mode,
                             [](const auto& e, const ModeId& m) { return e.first < m; });
  if (it != out.occ_.end() && it->first == mode) {
    ++it->second;
  } else {
    out.occ_.insert(it, {mode, 1});
  }
  return out;
}

int FockBasis::total_photons() const {
  int total = 0;
  for (const auto& [mode, count] : occ_) total += count;
  return total;
}

int total_photon_number(const FockBasis& basis) { return basis.total_photons(); }

namespace {

void prune(PureState::Terms& terms) {
  std::erase_if(terms, [](const auto& e) { return std::abs(e.second) < kAmplitudePruneTol; });
}

}  // namespace

PureState::PureState(Terms terms) : amps_(std::move(terms)) { prune(amps_); }

PureState::PureState(std::initializer_list<std::pair<const FockBasis, Complex>> terms) {
  for (const auto& [basis, amp] : terms) amps_[basis] += amp;
  prune(amps_);
}

PureState PureState::vacuum() { return PureState{{FockBasis{}, Complex{1.0, 0.0}}}; }

PureState PureState::single_photon(const ModeId& mode, Complex amplitude) {
  return PureState{{FockBasis{{{mode, 1}}}, amplitude}};
}

Complex PureState::amplitude(const FockBasis& basis) const {
  auto it = amps_.find(basis);
  return it == amps_.end() ? Complex{0.0, 0.0} : it->second;
}

double PureState::norm_squared() const {
  double total = 0.0;
  for (const auto& [basis, amp] : amps_) total += std::norm(amp);
  return total;
}

PureState operator+(const PureState& lhs, const PureState& rhs) {
  PureState::Terms terms = lhs.terms();
  for (const auto& [basis, amp] : rhs.terms()) terms[basis] += amp;
  return PureState(std::move(terms));
}

PureState operator*(Complex scale, const PureState& state) {
  PureState::Terms terms;
  for (const auto& [basis, amp] : state.terms()) terms.emplace(basis, scale * amp);
  return PureState(std::move(terms));
}

PureState create_photon(const PureState& state, const ModeId& mode) {
  PureState::Terms terms;
  for (const auto& [basis, amp] : state.terms()) {
    const int n = basis.occupation(mode);
    terms[basis.with_photon_added(mode)] += amp * std::sqrt(static_cast<double>(n + 1));
  }
  return PureState(std::move(terms));
}

Complex inner_product(const PureState& s1, const PureState& s2) {
  Complex total{0.0, 0.0};
  auto it1 = s1.terms().begin();
  auto it2 = s2.terms().begin();
  while (it1 != s1.terms().end() && it2 != s2.terms().end()) {
    if (it1->first < it2->first) {
      ++it1;
    } else if (it2->first < it1->first) {
      ++it2;
    } else {
      total += std::conj(it1->second) * it2->second;
      ++it1;
      ++it2;
    }
  }
  return total;
}

PureState tensor(const PureState& s1, const PureState& s2) {
  const std::set<ModeId> support1 = mode_support(s1);
  for (const ModeId& mode : mode_support(s2)) {
    if (support1.count(mode) != 0) {
      throw std::invalid_argument("tensor product with overlapping mode " + to_string(mode));
    }
  }
  PureState::Terms terms;
  for (const auto& [basis1, amp1] : s1.terms()) {
    for (const auto& [basis2, amp2] : s2.terms()) {
      FockBasis::Occupations merged = basis1.occupations();
      const auto& occ2 = basis2.occupations();
      merged.insert(merged.end(), occ2.begin(), occ2.end());
      terms[FockBasis(std::move(merged))] += amp1 * amp2;
    }
  }
  return PureState(std::move(terms));
}

Normalized normalize(const PureState& state) {
  const double norm = std::sqrt(state.norm_squared());
  if (norm == 0.0) {
    throw std::domain_error("cannot normalize the zero state");
  }
  return Normalized{norm, Complex{1.0 / norm, 0.0} * state};
}

std::set<ModeId> mode_support(const PureState& state) {
  std::set<ModeId> support;
  for (const auto& [basis, amp] : state.terms()) {
    for (const auto& [mode, count] : basis.occupations()) support.insert(mode);
  }
  return support;
}

MixedState::MixedState(std::vector<MixedBranch> branches) : branches_(std::move(branches)) {
  if (branches_.empty()) return;
  double total = 0.0;
  for (const auto& branch : branches_) {
    if (branch.weight < -kNormTol) {
      throw std::invalid_argument("mixed-state branch with negative weight");
    }
    if (std::abs(branch.state.norm_squared() - 1.0) > kNormTol) {
      throw std::invalid_argument("mixed-state branch is not normalized");
    }
    total += branch.weight;
  }
  if (std::abs(total - 1.0) > kNormTol) {
    throw std::invalid_argument("mixed-state weights do not sum to one");
  }
}

}  // namespace tbamp
