#pragma once

#include <pomodel/poset.hpp>

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pomodel {

using AttrValue = std::variant<bool, double, std::string>;
using AttrMap = std::map<std::string, AttrValue>;

/// Local states under existed-before, with a chain per process. State
/// [i,k] is the k-th state (0-based) of chain i (1-based); [i,0] is initial.
class StateModel {
public:
  /// Throws InvalidChainPartition, UnknownElement.
  static StateModel build(Poset poset, ChainPartition chains,
                          std::map<std::string, AttrMap> attrs = {});

  const Poset &poset() const noexcept { return poset_; }
  const ChainPartition &partition() const noexcept { return chains_; }
  int chains() const noexcept { return static_cast<int>(chains_.size()); }

  /// n_i: index of the final state of chain i.
  std::size_t final_index(int chain) const {
    return chains_.chains.at(static_cast<std::size_t>(chain - 1)).size() - 1;
  }
  ElementIndex state(int chain, std::size_t k) const {
    return chains_.chains.at(static_cast<std::size_t>(chain - 1)).at(k);
  }
  int chain_of(ElementIndex s) const { return chain_of_.at(s); }
  std::size_t position_of(ElementIndex s) const { return position_of_.at(s); }

  /// Attributes attached to a state; nullptr when none were given.
  const AttrMap *attrs(ElementIndex s) const;
  const std::map<std::string, AttrMap> &all_attrs() const noexcept {
    return attrs_;
  }

private:
  Poset poset_;
  ChainPartition chains_;
  std::vector<int> chain_of_;
  std::vector<std::size_t> position_of_;
  std::map<std::string, AttrMap> attrs_;
};

/// Outcome of a property check. A failing verdict names offending states in
/// `witness`; `detail` explains the role of each.
struct Verdict {
  bool holds = true;
  std::vector<std::string> witness;
  std::string detail;
};

/// All initial states pairwise concurrent.
Verdict check_omega1(const StateModel &sm);
/// All final states pairwise concurrent.
Verdict check_omega2(const StateModel &sm);
/// [i,s] < [j,t] and [j,t-1] < [k,u] imply [i,s] < [k,u], for i != j != k.
/// Witness: [i,s], [j,t], [j,t-1], [k,u].
Verdict check_omega3(const StateModel &sm);
/// No i != j with [i,s-1] < [j,t] and [j,t-1] < [i,s].
/// Witness: [i,s-1], [j,t], [j,t-1], [i,s].
Verdict check_psi(const StateModel &sm);

/// Width-extensibility of a bare poset, checked on antichains of size at
/// most two against a minimum chain partition. The witness is an antichain
/// of size one or two that no width-antichain contains, raised along its
/// chains as far as it keeps failing.
Verdict check_width_extensible(const Poset &p);

/// Same question answered from the definition by enumerating every
/// antichain. Throws OracleBoundExceeded.
Verdict check_width_extensible_by_definition(
    const Poset &p, std::size_t bound = default_oracle_bound());

/// Interleaving-consistency. On width-extensible posets this is decided by
/// psi over a minimum chain partition; otherwise by enumeration.
/// Throws OracleBoundExceeded on the enumeration path.
Verdict check_interleaving_consistent(
    const Poset &p, std::size_t bound = default_oracle_bound());

/// Interleaving-consistency straight from the definition.
Verdict check_interleaving_consistent_by_enumeration(
    const Poset &p, std::size_t bound = default_oracle_bound());

enum class AntichainOrder { Less, Greater, Equal, Incomparable };
const char *to_string(AntichainOrder o);

/// A <= B iff every a in A lies below or at some b in B.
bool antichain_leq(const Poset &p, std::span<const ElementIndex> a,
                   std::span<const ElementIndex> b);

/// Throws NotWidthAntichain.
AntichainOrder compare_width_antichains(const Poset &p,
                                        std::span<const ElementIndex> a,
                                        std::span<const ElementIndex> b);

/// Smallest width-antichain containing antichain `a`, found by raising picks
/// on the free chains of `cp` (which must have width(p) chains). nullopt when
/// no width-antichain contains `a`.
std::optional<std::vector<ElementIndex>>
extend_to_width_antichain(const Poset &p, const ChainPartition &cp,
                          std::span<const ElementIndex> a);

struct PropertyReport {
  std::optional<Verdict> omega1, omega2, omega3, psi, width_extensible,
      interleaving_consistent;
};

struct PropertySelection {
  bool omega1 = true, omega2 = true, omega3 = true, psi = true, we = true,
       ic = true;
};

PropertyReport check_properties(const StateModel &sm,
                                PropertySelection which = {},
                                std::size_t bound = default_oracle_bound());

} // namespace pomodel
