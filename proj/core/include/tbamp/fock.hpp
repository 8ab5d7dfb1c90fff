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

#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace tbamp {

using Complex = std::complex<double>;

/// Stored amplitudes below this magnitude are dropped when a state is built.
inline constexpr double kAmplitudePruneTol = 1e-15;
/// Tolerance for unit-norm, weight-sum and isometry checks.
inline constexpr double kNormTol = 1e-12;
/// Tolerance on alpha^2 + beta^2 = 1 for qubit coefficients.
inline constexpr double kCoefficientTol = 1e-9;
/// Squared-overlap threshold for the heralding-correction search.
inline constexpr double kOverlapTol = 1e-10;

/// Time-bin slot of a photon pulse (short or long arrival).
enum class Bin : std::uint8_t { S, L };

/// Polarization label, used to switch paths at polarizing elements.
enum class Pol : std::uint8_t { H, V };

/// One optical mode: spatial channel, time bin and polarization.
///
/// Modes order lexicographically on (spatial, bin, pol) so occupation
/// configurations have a canonical form.
struct ModeId {
  std::string spatial;
  Bin bin = Bin::S;
  Pol pol = Pol::H;

  auto operator<=>(const ModeId&) const = default;
};

/// Renders a mode as "spatial:BP", e.g. "a1:SH" or "out2:LV".
std::string to_string(const ModeId& mode);

/// Short-bin horizontal mode on the given spatial channel.
inline ModeId mode_sh(std::string spatial) {
  return ModeId{std::move(spatial), Bin::S, Pol::H};
}

/// Long-bin vertical mode on the given spatial channel.
inline ModeId mode_lv(std::string spatial) {
  return ModeId{std::move(spatial), Bin::L, Pol::V};
}

/// An occupation-number configuration over modes.
///
/// Zero counts are never stored and entries are kept sorted, so two
/// configurations describing the same physical occupation compare equal.
/// The default-constructed basis is the vacuum.
class FockBasis {
 public:
  using Occupations = std::vector<std::pair<ModeId, int>>;

  FockBasis() = default;
  explicit FockBasis(Occupations occupations);

  int occupation(const ModeId& mode) const;
  FockBasis with_photon_added(const ModeId& mode) const;
  int total_photons() const;
  bool is_vacuum() const { return occ_.empty(); }
  const Occupations& occupations() const { return occ_; }

  auto operator<=>(const FockBasis&) const = default;

 private:
  Occupations occ_;
};

/// Total photon number of a configuration.
int total_photon_number(const FockBasis& basis);

/// A (not necessarily normalized) superposition of Fock configurations,
/// stored as a sparse map from configuration to complex amplitude.
///
/// Values are immutable after construction; all operations below are pure
/// functions, so states can be shared freely across threads.
class PureState {
 public:
  using Terms = std::map<FockBasis, Complex>;

  /// The zero vector (no terms). Distinct from the vacuum state.
  PureState() = default;
  explicit PureState(Terms terms);
  PureState(std::initializer_list<std::pair<const FockBasis, Complex>> terms);

  static PureState vacuum();
  static PureState single_photon(const ModeId& mode, Complex amplitude = 1.0);

  const Terms& terms() const { return amps_; }
  std::size_t term_count() const { return amps_.size(); }
  bool is_zero() const { return amps_.empty(); }
  Complex amplitude(const FockBasis& basis) const;
  double norm_squared() const;

  bool operator==(const PureState&) const = default;

 private:
  Terms amps_;
};

PureState operator+(const PureState& lhs, const PureState& rhs);
PureState operator*(Complex scale, const PureState& state);

/// Applies a creation operator on `mode`: a term with count n picks up a
/// factor sqrt(n+1) and moves to count n+1; linear over terms.
PureState create_photon(const PureState& state, const ModeId& mode);

/// Hermitian inner product <s1|s2> over the shared configurations.
Complex inner_product(const PureState& s1, const PureState& s2);

/// Product state of two states over disjoint mode sets.
/// Throws std::invalid_argument if the supports overlap.
PureState tensor(const PureState& s1, const PureState& s2);

struct Normalized {
  double norm = 0.0;
  PureState state;
};

/// Splits a state into its norm and the unit-norm remainder.
/// Throws std::domain_error on the zero state.
Normalized normalize(const PureState& state);

/// Set of modes occupied in at least one term.
std::set<ModeId> mode_support(const PureState& state);

struct MixedBranch {
  double weight = 0.0;
  PureState state;
};

/// A classical mixture of normalized pure states. Weights are non-negative
/// and sum to one; an empty branch list denotes "no state" and is allowed
/// so callers can represent a conditioned output that never occurs.
class MixedState {
 public:
  MixedState() = default;
  explicit MixedState(std::vector<MixedBranch> branches);

  const std::vector<MixedBranch>& branches() const { return branches_; }
  bool empty() const { return branches_.empty(); }

 private:
  std::vector<MixedBranch> branches_;
};

}  // namespace tbamp
