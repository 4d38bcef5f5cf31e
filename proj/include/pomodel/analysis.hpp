#pragma once

#include <pomodel/lattice.hpp>
#include <pomodel/state_model.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace pomodel {

enum class Comparison { Less, LessEqual, Equal, NotEqual, GreaterEqual, Greater };

/// Accepts "<", "<=", "==", "!=", ">=", ">".
std::optional<Comparison> parse_comparison(std::string_view text);
const char *to_string(Comparison c);

/// Boolean formula over one full cut (a state per process).
///
///   true / false
///   and, or, not
///   position  proc's state index compared to `value`
///   attr      attribute `name` of proc's state compared to `value`
///   all       every process's `name` attribute compared to `value`
///   sum       sum of the numeric `name` attributes compared to `value`
///   count     number of processes whose `name` is true or nonzero,
///             compared to `value`
///
/// Processes are 1-based. A clause that reads a missing attribute, or
/// compares values of different types, is false and records a warning.
struct PredicateNode {
  enum class Op { True, False, And, Or, Not, Position, Attr, All, Sum, Count };

  Op op = Op::True;
  std::vector<std::shared_ptr<const PredicateNode>> children;
  int proc = 0;
  std::string name;
  Comparison cmp = Comparison::Equal;
  AttrValue value = 0.0;
};

using PredicatePtr = std::shared_ptr<const PredicateNode>;

namespace pred {
PredicatePtr truth();
PredicatePtr falsity();
PredicatePtr all_of(std::vector<PredicatePtr> children);
PredicatePtr any_of(std::vector<PredicatePtr> children);
PredicatePtr negate(PredicatePtr child);
PredicatePtr position(int proc, Comparison cmp, std::size_t index);
PredicatePtr attr(int proc, std::string name, Comparison cmp, AttrValue value);
PredicatePtr every(std::string name, Comparison cmp, AttrValue value);
PredicatePtr sum(std::string name, Comparison cmp, double value);
PredicatePtr count(std::string name, Comparison cmp, double value);
} // namespace pred

/// Throws PredicateError when a clause names a process outside the model
/// or a node is malformed.
void validate_predicate(const PredicateNode &node, int processes);

/// `cut` lists one state per chain in chain order.
bool evaluate_predicate(const PredicateNode &node, const StateModel &sm,
                        std::span<const ElementIndex> cut,
                        std::set<std::string> *warnings = nullptr);

using NativePredicate =
    std::function<bool(const StateModel &, std::span<const ElementIndex>)>;

enum class DetectMode { All, First, Count };

struct DetectionResult {
  /// Satisfying cuts in enumeration order; empty in Count mode.
  std::vector<std::vector<ElementIndex>> cuts;
  std::uint64_t count = 0;
  std::uint64_t examined = 0;
  std::vector<std::string> warnings;
};

/// Filters the width-antichains of `sm`. Throws NotWidthExtensible,
/// PredicateError.
DetectionResult detect_width_predicate(const StateModel &sm,
                                       const PredicateNode &predicate,
                                       DetectMode mode = DetectMode::All);
DetectionResult detect_width_predicate(const StateModel &sm,
                                       const NativePredicate &predicate,
                                       DetectMode mode = DetectMode::All);

/// Per chain (in chain order) the marked state indices, strictly increasing
/// and including 0 and the final index.
struct CheckpointMarking {
  std::vector<std::vector<std::size_t>> marks;
};

/// Throws BadMarking.
void validate_marking(const StateModel &sm, const CheckpointMarking &marks);

/// The sub-order on marked states; chain i keeps its marked states in
/// order. Attributes carry over. Throws BadMarking.
StateModel induced_checkpoint_model(const StateModel &sm,
                                    const CheckpointMarking &marks);

enum class CheckpointEngine { Fast, Oracle, Both };
const char *to_string(CheckpointEngine e);

struct CheckpointVerdict {
  std::string id;
  int chain = 0;
  std::size_t state_index = 0; ///< index in the original chain
  std::size_t mark_index = 0;  ///< index in the induced chain
  bool useful = false;
  /// A global checkpoint containing this one, one id per chain in chain
  /// order. Empty when useless.
  std::vector<std::string> witness;
  /// Filled in Both mode.
  std::optional<bool> fast_useful, oracle_useful;
};

struct CheckpointReport {
  StateModel induced;
  CheckpointEngine engine = CheckpointEngine::Fast;
  std::vector<CheckpointVerdict> verdicts; ///< chain order, then index
  /// False only in Both mode when the engines disagree somewhere.
  bool engines_agree = true;

  std::vector<std::string> useless() const;
};

/// A checkpoint is useless when no set of checkpoints, one per process,
/// pairwise concurrent, contains it.
///
/// The fast engine reads this off a graph over the induced model that adds
/// a virtual start before and a virtual sink after each chain: a global
/// checkpoint is a predecessor-closed node set holding every start and no
/// sink, and [i,x] is in one iff neither (i,x+1) nor any sink reaches
/// (i,x) or a start. The oracle engine enumerates every combination.
/// Throws BadMarking, OracleBoundExceeded (oracle engine).
CheckpointReport find_useless_checkpoints(
    const StateModel &sm, const CheckpointMarking &marks,
    CheckpointEngine engine = CheckpointEngine::Fast,
    std::size_t bound = default_oracle_bound());

/// Verdicts by brute force over the product of the chains of `induced`;
/// for each state, the first global checkpoint containing it found in
/// lexicographic order. Throws OracleBoundExceeded when the product has
/// more than 2^bound combinations.
std::vector<std::optional<std::vector<ElementIndex>>>
global_checkpoints_by_enumeration(const StateModel &induced,
                                  std::size_t bound = default_oracle_bound());

/// Same shape, from the reachability criterion; each witness is the least
/// global checkpoint containing the state.
std::vector<std::optional<std::vector<ElementIndex>>>
global_checkpoints_by_reachability(const StateModel &induced);

} // namespace pomodel
