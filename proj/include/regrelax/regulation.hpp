#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "regrelax/engine.hpp"
#include "regrelax/rule.hpp"

namespace regrelax {

struct RuleSet {
    std::vector<Rule> rules;
    std::string version;
};

/// Per-vehicle next-step outcome. Absent fields mean hold-state: the update
/// phase keeps the vehicle's current motion and location.
struct Decision {
    Identifier vehicle;
    std::optional<Identifier> next_motion;
    std::optional<Identifier> next_location;

    friend bool operator==(const Decision&, const Decision&) = default;
};

struct DecisionSet {
    /// One entry per Car individual of the input scene.
    std::map<Identifier, Decision> decisions;
    SaturationResult trace;
};

class ConflictError : public std::runtime_error {
public:
    ConflictError(Identifier vehicle, std::vector<Fact> facts,
                  const std::string& message)
        : std::runtime_error(message),
          vehicle_(std::move(vehicle)),
          facts_(std::move(facts)) {}

    const Identifier& vehicle() const { return vehicle_; }
    /// The mutually exclusive facts derived for the vehicle.
    const std::vector<Fact>& facts() const { return facts_; }

    std::optional<int> step_index() const { return step_index_; }
    void set_step_index(int step) { step_index_ = step; }

private:
    Identifier vehicle_;
    std::vector<Fact> facts_;
    std::optional<int> step_index_;
};

/// The built-in relaxation rules R1 through R6.
RuleSet default_ruleset();

/// Saturates the scene and reads one Decision per Car individual off the
/// fixpoint. Throws ConflictError when a vehicle ends up with two or more
/// distinct hasNextMotion objects or two or more distinct isNextOn objects.
DecisionSet decide_next(const KnowledgeBase& kb, const RuleSet& rules,
                        const SaturationOptions& options = {});

}  // namespace regrelax
