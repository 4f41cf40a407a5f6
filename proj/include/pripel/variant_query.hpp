#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "pripel/event_log.hpp"
#include "pripel/rng.hpp"

namespace pripel {

/// Released activity sequences with their noisy multiplicities (all >= 1).
using VariantBag = std::map<ActivitySequence, std::int64_t>;

/// Released sequences in release order, each repeated by its count.
using FlattenedVariants = std::vector<ActivitySequence>;

struct QueryParams {
  double epsilon = 1.0;
  std::size_t max_depth = 30;  // n
  std::int64_t prune = 1;      // k
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument unless epsilon > 0, n >= 1 and k >= 1.
  void validate() const;
};

/// One evaluated candidate of the noisy prefix tree.
struct PrefixNode {
  ActivitySequence prefix;  // for a terminal node, the terminated sequence
  bool terminal = false;    // candidate p.<END>
  std::size_t true_count = 0;
  std::int64_t noisy_count = 0;
  bool expanded = false;
};

/// Every candidate the breadth-first query evaluated, in evaluation order.
///
/// A node p.<a> is a candidate for each activity a of the log (sorted) and for
/// the end marker. Its noisy count is round(true + Laplace(1/epsilon)) clamped
/// at 0. Non-terminal nodes are expanded when noisy >= k; nodes at depth n
/// only evaluate their end marker. The noise of a node is drawn from a stream
/// keyed by (seed, prefix), so changing k never changes the noise of a node
/// that is evaluated under both settings.
std::vector<PrefixNode> noisy_prefix_tree(const EventLog& log, const QueryParams& params);

/// Terminal candidates with noisy count >= 1.
VariantBag trace_variant_query(const EventLog& log, const QueryParams& params);

/// Repeats each sequence by its count and shuffles uniformly.
FlattenedVariants flatten(const VariantBag& bag, Rng& rng);

}  // namespace pripel
