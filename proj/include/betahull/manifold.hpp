#pragma once

#include <optional>
#include <string>
#include <vector>

#include "betahull/hull.hpp"

namespace betahull {

enum class BlockKind { GeneralType, CP2bar, K3, T4, ThreeManifoldTimesCircle };

std::string to_string(BlockKind kind);

/// One catalog summand, repeated `multiplicity` times in the connected sum.
struct BuildingBlock {
  BlockKind kind = BlockKind::CP2bar;
  // GeneralType data (minimal complex surface of general type).
  long c1sq = 0;
  long chi = 0;
  long tau = 0;
  long b_plus = 0;
  bool h20_odd = true;
  bool simply_connected = true;
  // ThreeManifoldTimesCircle: first Betti number of the 3-manifold N.
  long b1 = 0;
  std::size_t multiplicity = 1;

  static BuildingBlock general_type(long c1sq, long chi, long tau, long b_plus, bool h20_odd = true,
                                    bool simply_connected = true, std::size_t count = 1);
  static BuildingBlock cp2bar(std::size_t count = 1);
  static BuildingBlock k3(std::size_t count = 1);
  static BuildingBlock t4(std::size_t count = 1);
  static BuildingBlock three_manifold_times_circle(long b1, std::size_t count = 1);

  // Throws InputError on inconsistent data (e.g. c1sq != 2 chi + 3 tau).
  void validate() const;

  // (chi, tau, b+) of a single copy.
  long euler() const;
  long signature() const;
  long positive() const;

  friend bool operator==(const BuildingBlock&, const BuildingBlock&) = default;
};

struct ManifoldModel {
  std::vector<BuildingBlock> summands;
  long chi = 0;
  long tau = 0;
  long b_plus = 0;
  std::vector<std::string> hypothesis_warnings;

  long two_chi_plus_three_tau() const { return 2 * chi + 3 * tau; }
  long two_chi_minus_three_tau() const { return 2 * chi - 3 * tau; }
  std::size_t summand_count() const;
  std::size_t count(BlockKind kind) const;
};

ManifoldModel connected_sum(const std::vector<BuildingBlock>& blocks);

/// Orthogonal +1 / -1 directions appended to the reduced ambient space.
struct AmbientExtension {
  std::size_t extra_plus = 0;
  std::size_t extra_minus = 0;
  friend bool operator==(const AmbientExtension&, const AmbientExtension&) = default;
};

struct GeneratedConfiguration {
  MonopoleConfiguration cfg;
  std::optional<Rational> known_beta;
  std::string provenance;
  std::string ambient;  // e.g. "[[9,0],[0,-1]] + <-1>^4"
};

/// Sign-expansion configuration for a catalog model; throws
/// UnsupportedModelError when no rule applies.
GeneratedConfiguration monopole_configuration(const ManifoldModel& model, const AmbientExtension& extension = {});

}  // namespace betahull
