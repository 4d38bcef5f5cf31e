#pragma once

#include <pomodel/error.hpp>
#include <pomodel/event_model.hpp>
#include <pomodel/state_model.hpp>
#include <pomodel/transforms.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pomodel {

/// A consistent cut of an event model given by how many events of each
/// process it contains. Entry i-1 belongs to process i.
using CutVector = std::vector<std::size_t>;

struct EnumerationStats {
  std::uint64_t cuts = 0;
  /// Elementary steps: clock-entry and comparability tests.
  std::uint64_t work = 0;
};

/// Lazily enumerates every downset of an event model exactly once.
///
/// Each nonempty cut has a canonical parent: the cut minus its maximal
/// event of largest index. The enumerator walks that tree depth first,
/// extending a cut only by events whose addition makes them the canonical
/// last event, so no cut is produced twice and no dictionary is needed.
/// Per cut it spends O(n^2) comparability tests for n processes.
class DownsetEnumerator {
public:
  explicit DownsetEnumerator(const EventModel &m);

  std::optional<CutVector> next();
  const EnumerationStats &stats() const noexcept { return stats_; }

private:
  struct Frame {
    CutVector cut;
    std::vector<ElementIndex> children;
    std::size_t pos = 0;
  };

  Frame expand(CutVector cut);
  bool enabled(ElementIndex e, const CutVector &cut);

  const EventModel *model_;
  std::size_t n_;
  std::vector<std::size_t> clock_; // clock_[e * n_ + j]: j-events below e
  std::vector<Frame> stack_;
  bool started_ = false;
  EnumerationStats stats_;
};

/// Thrown when enumeration cannot reconstruct an event model for a state
/// model.
class SETransformFailed : public Error {
public:
  SETransformFailed(const std::string &message, InvalidityReport report)
      : Error("InvalidityReport", message), report_(std::move(report)) {}
  const InvalidityReport &report() const noexcept { return report_; }

private:
  InvalidityReport report_;
};

/// Enumerates the width-antichains of a width-extensible state model by
/// reconstructing its event model and walking that model's downsets.
/// Results list one state per chain, in chain order.
class WidthAntichainEnumerator {
public:
  /// Throws NotWidthExtensible (also when the chain count differs from the
  /// width) or SETransformFailed.
  explicit WidthAntichainEnumerator(StateModel sm);
  /// Uses a minimum chain partition of `p`.
  explicit WidthAntichainEnumerator(const Poset &p);

  std::optional<std::vector<ElementIndex>> next();
  const StateModel &model() const noexcept { return sm_; }
  const EventModel &events() const noexcept { return *events_; }
  const EnumerationStats &stats() const noexcept { return downsets_->stats(); }

private:
  StateModel sm_;
  std::optional<EventModel> events_;
  std::optional<DownsetEnumerator> downsets_;
};

/// Sorted event ids of a cut.
std::vector<std::string> cut_events(const EventModel &m, const CutVector &cut);
/// Throws NotConsistent, UnknownElement.
CutVector cut_vector(const EventModel &m,
                     const std::vector<std::string> &events);

/// All downsets as sorted id lists, in enumeration order.
std::vector<std::vector<std::string>> enumerate_event_cuts(const EventModel &m);
/// All width-antichains as sorted id lists, in enumeration order.
std::vector<std::vector<std::string>> enumerate_width_antichains(const Poset &p);

/// The state cut of es_transform(m) matching a consistent event cut: per
/// process the state after its last included event, or the initial state.
/// Ids are "i.k", listed in chain order. Throws NotConsistent.
std::vector<std::string> cut_to_antichain(const EventModel &m,
                                          const std::vector<std::string> &cut);

/// Inverse of cut_to_antichain. Throws NotWidthAntichain.
std::vector<std::string>
antichain_to_cut(const EventModel &m, const std::vector<std::string> &states);

struct MeetJoin {
  std::vector<ElementIndex> meet; ///< per-chain minimum, chain order
  std::vector<ElementIndex> join; ///< per-chain maximum, chain order
};

/// Throws NotWidthAntichain unless both sets hold one state per chain,
/// pairwise concurrent, with as many chains as the width.
MeetJoin lattice_meet_join(const StateModel &sm,
                           std::span<const ElementIndex> a,
                           std::span<const ElementIndex> b);

/// Every cut with links to the cuts one event above it.
struct CutLattice {
  std::vector<CutVector> cuts;
  std::vector<std::vector<std::size_t>> successors;
  std::map<CutVector, std::size_t> index;
};

/// Throws CountExceeded past `max_cuts`.
CutLattice materialize_cut_lattice(const EventModel &m,
                                   std::size_t max_cuts = 1'000'000);

class CountExceeded : public Error {
public:
  explicit CountExceeded(const std::string &message)
      : Error("CountExceeded", message) {}
};

} // namespace pomodel
