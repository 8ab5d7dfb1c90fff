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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tbamp/elements.hpp"
#include "tbamp/fock.hpp"

namespace tbamp {

enum class Side : std::uint8_t { A, B };

/// Detector semantics used for post-selection. NumberResolving demands
/// exactly one photon at each heralding detector; Threshold accepts one or
/// more, which lets bunched terms leak into the heralded output.
enum class DetectorModel : std::uint8_t { NumberResolving, Threshold };

/// The four detector pairs per side that herald success. Each pair combines
/// one horizontal-reading detector (D1 or D3) with one vertical-reading
/// detector (D2 or D4).
enum class DetectorPair : std::uint8_t { D1D2, D1D4, D2D3, D3D4 };

/// Detector indices {1..4} of a pair, ascending.
std::array<int, 2> pair_detectors(DetectorPair pair);

/// A joint heralding outcome: one allowed pair on each side.
struct DetectionPattern {
  DetectorPair side_a = DetectorPair::D1D2;
  DetectorPair side_b = DetectorPair::D1D2;

  auto operator<=>(const DetectionPattern&) const = default;

  /// "D1aD2a D1bD2b" style label.
  std::string name() const;
};

/// Spatial channel read out by detector k (1..4) of a side; detector k
/// watches channel a(4+k) or b(4+k), both time bins.
std::string detector_spatial(Side side, int detector);

struct ProtocolConfig {
  double alpha = 0.7071067811865476;
  double beta = 0.7071067811865476;
  double eta = 1.0;
  double t = 0.5;
  DetectorModel detector = DetectorModel::NumberResolving;

  /// Throws std::invalid_argument / std::domain_error on bad values.
  void validate() const;
};

/// One phase-flip correction element on an output channel.
struct PhaseFlip {
  std::string spatial;
  QubitComponent component = QubitComponent::SH;

  bool operator==(const PhaseFlip&) const = default;
};

struct PatternResult {
  DetectionPattern pattern;
  double prob_entangled = 0.0;
  double prob_vacuum = 0.0;
};

struct ProtocolResult {
  double p1 = 0.0;       ///< heralding probability, entangled branch
  double p2 = 0.0;       ///< heralding probability, vacuum branch
  double p_total = 0.0;  ///< eta*p1 + (1-eta)*p2
  double eta_out = 0.0;  ///< fidelity of the heralded mixed state
  bool eta_out_defined = false;
  double g = 0.0;  ///< amplification factor eta_out/eta
  bool g_defined = false;
  double output_fidelity = 0.0;  ///< corrected entangled output vs ideal
  bool output_fidelity_defined = false;
  std::vector<PatternResult> per_pattern;
  MixedState conditioned_output;
};

/// Input branches on channels a1/b1: the delocalized single-photon state
/// (normalized) and the vacuum.
std::pair<PureState, PureState> prepare_input_branches(double alpha, double beta);

/// Auxiliary photon pair (one short-H, one long-V) on channel a2 or b2.
PureState prepare_auxiliary(Side side);

/// The amplifier chain in application order: both VBSs, both balanced
/// splitters, then the four PBSs feeding the eight detector channels.
std::vector<LinearModeMap> build_circuit(double transmission);

/// Applies the elements in order.
PureState evolve_through_circuit(PureState state, const std::vector<LinearModeMap>& circuit);

/// The sixteen heralding patterns, side-a major order.
const std::vector<DetectionPattern>& success_patterns();

struct Postselection {
  double prob = 0.0;
  PureState conditioned;  ///< over out1/out2 only; zero state when prob == 0
};

/// Projects onto the pattern: heralding detectors fire (per the model),
/// every other detector stays silent. `prob` is the outcome probability for
/// a normalized input; `conditioned` is the renormalized remainder on the
/// output channels after the detector modes are consumed.
Postselection postselect(const PureState& state, const DetectionPattern& pattern,
                         DetectorModel model);

/// Searches all sign assignments of {SH, LV} x {out1, out2} phase flips for
/// one that maps `conditioned` onto the ideal delocalized output. Returns
/// the minimal flip list, or nullopt when no assignment reaches squared
/// overlap 1 - kOverlapTol. Requires non-degenerate coefficients (both
/// alpha and beta away from zero); throws std::invalid_argument when the
/// winning set is not unique up to a global phase.
std::optional<std::vector<PhaseFlip>> find_phase_correction(const PureState& conditioned,
                                                            double alpha, double beta);

/// Phase-flip list restoring the heralded output for a pattern. The table
/// is derived once by brute-force search at a reference configuration and
/// cached; derivation failure for any pattern throws std::runtime_error.
const std::vector<PhaseFlip>& correction_for(const DetectionPattern& pattern);

/// Applies a flip list to a state over the output channels.
PureState apply_correction(PureState state, const std::vector<PhaseFlip>& flips);

/// The ideal heralded output: the input qubit delocalized over out1/out2,
/// unit norm.
PureState ideal_output_state(double alpha, double beta);

/// Distribution of photon counts over the eight detector channels
/// (a5..a8, b5..b8), aggregated over time bins; probabilities sum to the
/// squared norm of the state.
std::map<std::array<int, 8>, double> detector_count_distribution(const PureState& state);

/// Evolves both input branches through the circuit, post-selects on all
/// sixteen patterns, applies corrections and aggregates the protocol
/// figures of merit.
ProtocolResult run_protocol(const ProtocolConfig& config);

}  // namespace tbamp
