#pragma once

#include <pomodel/analysis.hpp>
#include <pomodel/event_model.hpp>
#include <pomodel/state_model.hpp>

#include <cstdint>
#include <random>

namespace pomodel::testing {

using Rng = std::mt19937_64;

/// Chains of random lengths, interleaved into a random linear extension;
/// each forward pair across chains becomes an edge with probability
/// `density`. The chains are the model's partition, so there may be more
/// chains than the width.
StateModel random_chain_poset(Rng &rng, std::size_t max_elements,
                              int max_chains, double density);

struct EventModelShape {
  int processes = 3;
  std::size_t events_per_process = 4;
  double message_probability = 0.3;
  double shared_probability = 0.0; ///< zero gives an ASC model
};

/// Simulates a run: processes take steps in random order; a step is a
/// local event, a send, a receive of a pending message, or (with
/// `shared_probability`) a synchronous event on two processes.
EventModel random_event_model(Rng &rng, const EventModelShape &shape);

/// Exactly `length` events per process, messages only.
EventModel random_asc_model(Rng &rng, int processes, std::size_t length,
                            double message_probability);

/// Random marking with at most `max_marks` checkpoints per chain,
/// endpoints included.
CheckpointMarking random_marking(Rng &rng, const StateModel &sm,
                                 std::size_t max_marks);

/// Attaches numeric attribute "permits" (0..2) and boolean attributes
/// "waiting" and "at_barrier" to every state.
StateModel with_random_attrs(Rng &rng, const StateModel &sm);

} // namespace pomodel::testing
