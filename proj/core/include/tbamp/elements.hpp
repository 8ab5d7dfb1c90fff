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

#include <cstdint>
#include <map>
#include <set>
#include <string_view>
#include <vector>

#include "tbamp/fock.hpp"

namespace tbamp {

/// An isometric linear substitution on creation operators.
///
/// Each explicit input mode is replaced by a linear combination of output
/// modes; modes without a column pass through unchanged. The constructor
/// rejects column sets that are not isometric (pairwise orthonormal within
/// kNormTol), so a LinearModeMap value is always safe to apply.
class LinearModeMap {
 public:
  using Column = std::vector<std::pair<ModeId, Complex>>;
  using Columns = std::map<ModeId, Column>;

  explicit LinearModeMap(Columns columns);

  const Columns& columns() const { return columns_; }

  /// Column for an explicit input mode, or nullptr for pass-through.
  const Column* column(const ModeId& mode) const;

  /// True if some column writes into `mode`.
  bool has_output(const ModeId& mode) const { return outputs_.count(mode) != 0; }

 private:
  Columns columns_;
  std::set<ModeId> outputs_;
};

/// Rewrites every term of `state` through the substitution.
///
/// A term is re-expanded as creation operators acting on vacuum, each
/// operator substituted by its column, and the product multiplied back out.
/// Photons merging into one output mode therefore pick up the correct
/// bosonic sqrt(n!) weights. Norm is preserved.
///
/// Throws std::invalid_argument if an occupied pass-through mode collides
/// with an output mode of the map.
PureState apply_mode_map(const PureState& state, const LinearModeMap& map);

/// Balanced beam splitter acting on every (bin, pol) sublevel:
/// in_a -> (out_a + out_b)/sqrt(2), in_b -> (out_a - out_b)/sqrt(2).
LinearModeMap beam_splitter_map(std::string_view in_a, std::string_view in_b,
                                std::string_view out_a, std::string_view out_b);

/// Variable beam splitter with transmission t on every sublevel:
/// in -> sqrt(t) kept + sqrt(1-t) out. Requires 0 <= t <= 1.
LinearModeMap vbs_map(std::string_view in, std::string_view kept,
                      std::string_view out, double transmission);

/// Polarizing beam splitter: H sublevels route to out_h, V sublevels to
/// out_v, both time bins, unit coefficient.
LinearModeMap pbs_map(std::string_view in, std::string_view out_h,
                      std::string_view out_v);

/// The two sublevels a time-bin qubit can occupy.
enum class QubitComponent : std::uint8_t { SH, LV };

/// Phase flip (-1) on one qubit sublevel of a spatial channel.
LinearModeMap phase_flip_map(std::string_view spatial, QubitComponent component);

}  // namespace tbamp
