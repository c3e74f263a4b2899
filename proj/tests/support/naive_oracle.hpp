#pragma once

#include <set>
#include <vector>

#include "regrelax/knowledge_base.hpp"
#include "regrelax/rule.hpp"

namespace regrelax::testsupport {

/// Reference saturation semantics, written independently of the engine:
/// every pass re-matches every rule against the entire fact set by extending
/// partial assignments over raw facts (no indexes, no delta tracking), until
/// a pass adds nothing. Throws std::runtime_error after max_passes.
std::set<Fact> naive_fixpoint(const KnowledgeBase& kb,
                              const std::vector<Rule>& rules,
                              std::size_t max_passes = 10000);

}  // namespace regrelax::testsupport
