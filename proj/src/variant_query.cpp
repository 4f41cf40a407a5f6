#include "pripel/variant_query.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace pripel {

void QueryParams::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw std::invalid_argument("query epsilon must be positive");
  if (max_depth < 1) throw std::invalid_argument("query max depth n must be >= 1");
  if (prune < 1) throw std::invalid_argument("query pruning threshold k must be >= 1");
}

namespace {

using Symbol = std::uint32_t;
constexpr Symbol kEnd = 0;  // activities are 1..|A| in sorted label order

struct Variants {
  std::vector<ActivityLabel> names;  // names[s - 1] for symbol s
  std::vector<std::vector<Symbol>> seqs;
  std::vector<std::size_t> counts;
};

Variants intern_variants(const EventLog& log) {
  Variants v;
  v.names.assign(log.activities().begin(), log.activities().end());
  std::map<ActivityLabel, Symbol> code;
  for (std::size_t i = 0; i < v.names.size(); ++i) code[v.names[i]] = static_cast<Symbol>(i + 1);
  for (const auto& [seq, count] : variant_counts(log)) {
    std::vector<Symbol> ids;
    ids.reserve(seq.size());
    for (const auto& a : seq) ids.push_back(code.at(a));
    v.seqs.push_back(std::move(ids));
    v.counts.push_back(count);
  }
  return v;
}

struct Frontier {
  std::vector<Symbol> prefix;
  std::uint64_t key;
  std::vector<std::size_t> support;  // indices of variants starting with prefix
};

std::uint64_t child_key(std::uint64_t parent, Symbol s) { return mix64(parent ^ mix64(s + 0x5851F42D4C957F2DULL)); }

// Visits every evaluated candidate in breadth-first order.
template <class Visit>
void explore(const Variants& v, const QueryParams& params, Visit&& visit) {
  params.validate();
  const double scale = 1.0 / params.epsilon;
  const std::uint64_t base = derive_seed(params.seed, Stream::VariantQuery);
  const Symbol alphabet = static_cast<Symbol>(v.names.size());

  auto noisy = [&](std::uint64_t key, std::size_t true_count) {
    double noise = Rng::laplace_quantile(Rng::open_unit(mix64(base ^ key)), scale);
    auto rounded = std::llround(static_cast<double>(true_count) + noise);
    return std::max<std::int64_t>(0, rounded);
  };

  std::deque<Frontier> queue;
  Frontier root{{}, mix64(base), {}};
  for (std::size_t i = 0; i < v.seqs.size(); ++i) root.support.push_back(i);
  queue.push_back(std::move(root));

  while (!queue.empty()) {
    Frontier node = std::move(queue.front());
    queue.pop_front();
    const std::size_t depth = node.prefix.size();

    if (depth < params.max_depth) {
      std::vector<std::vector<std::size_t>> by_next(alphabet + 1);
      for (std::size_t idx : node.support) {
        const auto& seq = v.seqs[idx];
        if (seq.size() > depth) by_next[seq[depth]].push_back(idx);
      }
      for (Symbol s = 1; s <= alphabet; ++s) {
        std::size_t true_count = 0;
        for (std::size_t idx : by_next[s]) true_count += v.counts[idx];
        std::uint64_t key = child_key(node.key, s);
        std::int64_t count = noisy(key, true_count);
        bool expand = count >= params.prune;
        std::vector<Symbol> prefix = node.prefix;
        prefix.push_back(s);
        visit(prefix, false, true_count, count, expand);
        if (expand) queue.push_back(Frontier{std::move(prefix), key, std::move(by_next[s])});
      }
    }
    if (depth == 0) continue;  // the empty sequence is never released

    std::size_t true_count = 0;
    for (std::size_t idx : node.support) {
      if (v.seqs[idx].size() == depth) true_count += v.counts[idx];
    }
    std::int64_t count = noisy(child_key(node.key, kEnd), true_count);
    visit(node.prefix, true, true_count, count, false);
  }
}

ActivitySequence decode(const Variants& v, const std::vector<Symbol>& ids) {
  ActivitySequence out;
  out.reserve(ids.size());
  for (Symbol s : ids) out.push_back(v.names[s - 1]);
  return out;
}

}  // namespace

std::vector<PrefixNode> noisy_prefix_tree(const EventLog& log, const QueryParams& params) {
  const Variants v = intern_variants(log);
  std::vector<PrefixNode> nodes;
  explore(v, params, [&](const std::vector<Symbol>& prefix, bool terminal, std::size_t true_count,
                         std::int64_t noisy_count, bool expanded) {
    nodes.push_back(PrefixNode{decode(v, prefix), terminal, true_count, noisy_count, expanded});
  });
  return nodes;
}

VariantBag trace_variant_query(const EventLog& log, const QueryParams& params) {
  const Variants v = intern_variants(log);
  VariantBag bag;
  explore(v, params, [&](const std::vector<Symbol>& prefix, bool terminal, std::size_t, std::int64_t noisy_count,
                         bool) {
    if (terminal && noisy_count >= 1) bag.emplace(decode(v, prefix), noisy_count);
  });
  return bag;
}

FlattenedVariants flatten(const VariantBag& bag, Rng& rng) {
  FlattenedVariants out;
  for (const auto& [seq, count] : bag) {
    for (std::int64_t i = 0; i < count; ++i) out.push_back(seq);
  }
  for (std::size_t i = out.size(); i > 1; --i) {
    std::size_t j = rng.index(i);
    std::swap(out[i - 1], out[j]);
  }
  return out;
}

}  // namespace pripel
