#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pomodel {

using Bitset = boost::dynamic_bitset<>;
using ElementIndex = std::size_t;

enum class Relation { Less, Greater, Equal, Concurrent };

const char *to_string(Relation r);

/// A finite strict partial order over opaque string ids.
///
/// Construction takes any generating relation, closes it transitively and
/// recomputes the cover relation by transitive reduction. Element indices
/// follow declaration order. Instances are immutable once built.
class Poset {
public:
  Poset() = default;

  /// Build from ids and relation pairs over those ids.
  /// Throws DuplicateElement, UnknownElement, CycleError.
  static Poset build(std::vector<std::string> elements,
                     std::span<const std::pair<std::string, std::string>>
                         relations);

  /// Same as build() but with pairs given as indices into `elements`.
  static Poset from_indices(std::vector<std::string> elements,
                            std::span<const std::pair<ElementIndex,
                                                      ElementIndex>>
                                relations);

  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  const std::vector<std::string> &ids() const noexcept { return ids_; }
  const std::string &id(ElementIndex e) const { return ids_.at(e); }

  std::optional<ElementIndex> find(std::string_view id) const;
  /// Throws UnknownElement.
  ElementIndex index_of(std::string_view id) const;

  bool less(ElementIndex a, ElementIndex b) const { return above_[a][b]; }
  bool less_equal(ElementIndex a, ElementIndex b) const {
    return a == b || above_[a][b];
  }
  bool comparable(ElementIndex a, ElementIndex b) const {
    return a == b || above_[a][b] || above_[b][a];
  }
  bool concurrent(ElementIndex a, ElementIndex b) const {
    return !comparable(a, b);
  }
  Relation compare(ElementIndex a, ElementIndex b) const;

  /// Elements strictly above / below `e` in the closure.
  const Bitset &above(ElementIndex e) const { return above_[e]; }
  const Bitset &below(ElementIndex e) const { return below_[e]; }

  /// Cover edges, sorted by (from, to) index.
  const std::vector<std::pair<ElementIndex, ElementIndex>> &
  covers() const noexcept {
    return covers_;
  }

  /// Number of pairs in the closure.
  std::size_t relation_size() const;

  bool is_antichain(std::span<const ElementIndex> members) const;

  /// The induced sub-order on `keep` (in the given order).
  Poset restrict_to(std::span<const ElementIndex> keep) const;

  /// True iff both posets have the same ids and the same closure.
  friend bool operator==(const Poset &a, const Poset &b);

private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, ElementIndex> index_;
  std::vector<Bitset> above_;
  std::vector<Bitset> below_;
  std::vector<std::pair<ElementIndex, ElementIndex>> covers_;
};

/// Chains of a poset, each listed low to high.
struct ChainPartition {
  std::vector<std::vector<ElementIndex>> chains;

  std::size_t size() const noexcept { return chains.size(); }
};

/// Check that `cp` is a partition of `p` into chains listed in increasing
/// order. Throws InvalidChainPartition.
void validate_chain_partition(const Poset &p, const ChainPartition &cp);

struct WidthResult {
  std::size_t width = 0;
  std::vector<ElementIndex> antichain; ///< a maximum antichain, sorted
};

/// Width via minimum chain cover (bipartite matching on the split graph),
/// with a maximum antichain read off the König vertex cover.
WidthResult width(const Poset &p);

/// A partition into width(p) chains, derived from the same matching.
ChainPartition minimum_chain_partition(const Poset &p);

/// Half-open run [lo, end) of positions on one chain.
struct ChainInterval {
  std::size_t lo = 0;
  std::size_t end = 0;

  bool empty() const noexcept { return lo >= end; }
  std::size_t length() const noexcept { return empty() ? 0 : end - lo; }
};

/// Positions on chain `chain` incomparable to `s`. The chain splits into a
/// prefix below s, this run, and a suffix above s, so the run is
/// contiguous. Empty when s lies on the chain itself.
/// Throws BadChainIndex.
ChainInterval incomparable_interval(const Poset &p, const ChainPartition &cp,
                                    ElementIndex s, std::size_t chain);

/// Default element bound for the exponential oracles. Reads
/// POMODEL_ORACLE_BOUND on first use, otherwise 20.
std::size_t default_oracle_bound();

/// Brute-force enumeration of antichains (every antichain exactly once,
/// members sorted, lexicographic by index). With `size_filter` only
/// antichains of that size are reported. Returning false from the visitor
/// stops the enumeration. Throws OracleBoundExceeded.
void for_each_antichain(
    const Poset &p, std::optional<std::size_t> size_filter,
    const std::function<bool(std::span<const ElementIndex>)> &visit,
    std::size_t bound = default_oracle_bound());

std::vector<std::vector<ElementIndex>>
enumerate_antichains(const Poset &p,
                     std::optional<std::size_t> size_filter = std::nullopt,
                     std::size_t bound = default_oracle_bound());

/// Brute-force enumeration of all downsets by subset scan.
/// Throws OracleBoundExceeded.
std::vector<std::vector<ElementIndex>>
enumerate_downsets_bruteforce(const Poset &p,
                              std::size_t bound = default_oracle_bound());

/// Sorted ids for a set of indices.
std::vector<std::string> ids_of(const Poset &p,
                                std::span<const ElementIndex> members);

} // namespace pomodel
