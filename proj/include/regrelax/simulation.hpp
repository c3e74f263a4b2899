#pragma once

#include <map>
#include <utility>
#include <vector>

#include "regrelax/regulation.hpp"

namespace regrelax {

struct SimulationConfig {
    int max_steps = 10;
    /// Consecutive steps a vehicle waits stopped behind a stopped vehicle
    /// before its emotion is rewritten to Nervous.
    int nervous_after = 3;
    std::size_t derived_fact_cap = 100000;
};

struct StepTrace {
    int step_index = 0;
    DecisionSet decisions;
    std::map<Identifier, int> waiting_counters;
    KnowledgeBase post_update_scene;
};

/// The non-monotone half of a step. Builds a fresh scene where decided
/// relocations and motions replace the old facts (hold-state otherwise),
/// next-state and derived-only facts are dropped, isClear membership is
/// recomputed closed-world, and waiting counters drive the Relaxed/Nervous
/// emotion rewrite. Returns the new scene and the new counters, one entry
/// per Car individual.
std::pair<KnowledgeBase, std::map<Identifier, int>> update_phase(
    const KnowledgeBase& kb, const DecisionSet& decisions,
    const std::map<Identifier, int>& counters, const SimulationConfig& config);

/// Alternates decide_next and update_phase until config.max_steps steps ran
/// or a step leaves both scene and counters unchanged. ConflictError and
/// ResourceLimitError propagate annotated with the failing step index.
std::vector<StepTrace> run_simulation(const KnowledgeBase& scene,
                                      const RuleSet& rules,
                                      const SimulationConfig& config = {});

}  // namespace regrelax
