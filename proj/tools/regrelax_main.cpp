#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "regrelax/explain.hpp"
#include "regrelax/road_ontology.hpp"
#include "regrelax/scenario_io.hpp"
#include "regrelax/simulation.hpp"

namespace {

using nlohmann::json;
using namespace regrelax;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitNotDerived = 2;
constexpr int kExitConflict = 3;
constexpr int kExitResourceLimit = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void print_parse_errors(const std::vector<ParseError>& errors) {
    for (const auto& e : errors) {
        std::cerr << e.position.line << ":" << e.position.column << " "
                  << to_string(e.code) << " " << e.message << "\n";
    }
}

/// Loads and validates a scene, or exits with kExitInvalid.
KnowledgeBase load_scene(const std::string& path,
                         bool print_warnings = false) {
    const SceneParseResult parsed = parse_scene(read_file(path));
    if (!parsed.ok()) {
        print_parse_errors(parsed.errors);
        std::exit(kExitInvalid);
    }
    const ValidationReport report = validate_scene(*parsed.kb);
    auto position_of = [&](const Identifier& subject) {
        auto it = parsed.individual_positions.find(subject);
        return it == parsed.individual_positions.end() ? SourcePosition{1, 1}
                                                       : it->second;
    };
    if (print_warnings) {
        for (const auto& w : report.warnings) {
            const auto pos = position_of(w.subject);
            std::cerr << pos.line << ":" << pos.column << " " << w.code << " "
                      << w.message << " (warning)\n";
        }
    }
    if (!report.ok()) {
        for (const auto& e : report.errors) {
            const auto pos = position_of(e.subject);
            std::cerr << pos.line << ":" << pos.column << " " << e.code << " "
                      << e.message << "\n";
        }
        std::exit(kExitInvalid);
    }
    return *parsed.kb;
}

/// --rules beats REGRELAX_RULES beats the built-in rules.
RuleSet load_rules(const std::string& rules_path) {
    std::string path = rules_path;
    if (path.empty()) {
        if (const char* env = std::getenv("REGRELAX_RULES")) path = env;
    }
    if (path.empty()) return default_ruleset();
    const RulesParseResult parsed = parse_rules(read_file(path));
    if (!parsed.ok()) {
        print_parse_errors(parsed.errors);
        std::exit(kExitInvalid);
    }
    return *parsed.rules;
}

std::vector<std::string> sorted_fact_lines(const std::set<Fact>& facts) {
    std::vector<std::string> lines;
    for (const auto& fact : facts) lines.push_back(to_string(fact));
    std::ranges::sort(lines);
    return lines;
}

json decisions_to_json(const DecisionSet& decisions) {
    json out = json::object();
    for (const auto& [vehicle, decision] : decisions.decisions) {
        json entry = json::object();
        if (decision.next_motion) entry["next_motion"] = decision.next_motion->str();
        if (decision.next_location) {
            entry["next_location"] = decision.next_location->str();
        }
        out[vehicle.str()] = std::move(entry);
    }
    return out;
}

int run_infer(const std::string& scene_path, const std::string& rules_path,
              const std::string& format, std::size_t derived_cap) {
    const KnowledgeBase scene = load_scene(scene_path);
    const RuleSet rules = load_rules(rules_path);

    const auto start = std::chrono::steady_clock::now();
    const DecisionSet decisions = decide_next(scene, rules, {derived_cap});
    const auto elapsed = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();

    const auto derived = sorted_fact_lines(decisions.trace.kb.derived_facts());
    if (format == "json") {
        json out;
        out["derived"] = derived;
        out["decisions"] = decisions_to_json(decisions);
        out["timing_ms"] = elapsed;
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& line : derived) std::cout << line << "\n";
    }
    return kExitOk;
}

int run_run(const std::string& scene_path, const std::string& rules_path,
            const std::string& format, const SimulationConfig& config) {
    const KnowledgeBase scene = load_scene(scene_path);
    const RuleSet rules = load_rules(rules_path);
    const std::vector<StepTrace> trace = run_simulation(scene, rules, config);

    if (format == "json") {
        json out = json::array();
        for (const auto& step : trace) {
            json block;
            block["step"] = step.step_index;
            block["decisions"] = decisions_to_json(step.decisions);
            json counters = json::object();
            for (const auto& [vehicle, count] : step.waiting_counters) {
                counters[vehicle.str()] = count;
            }
            block["counters"] = std::move(counters);
            block["scene"] = serialize_scene(step.post_update_scene);
            out.push_back(std::move(block));
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& step : trace) {
            std::cout << "step " << step.step_index << "\n";
            for (const auto& [vehicle, decision] : step.decisions.decisions) {
                std::cout << "decision " << vehicle.str() << " motion="
                          << (decision.next_motion ? decision.next_motion->str() : "-")
                          << " location="
                          << (decision.next_location ? decision.next_location->str()
                                                     : "-")
                          << "\n";
            }
            for (const auto& [vehicle, count] : step.waiting_counters) {
                std::cout << "counter " << vehicle.str() << " " << count << "\n";
            }
            if (&step != &trace.back()) std::cout << "\n";
        }
    }
    return kExitOk;
}

int run_explain(const std::string& scene_path, const std::string& rules_path,
                const std::string& fact_text, std::size_t derived_cap) {
    const KnowledgeBase scene = load_scene(scene_path);
    const RuleSet rules = load_rules(rules_path);

    std::optional<Fact> fact;
    try {
        fact = parse_ground_fact(fact_text, scene.schema());
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad --fact: " << e.what() << "\n";
        return kExitInvalid;
    }

    const SaturationResult result = saturate(scene, rules.rules, {derived_cap});
    const auto tree = explain_fact(result.kb, rules, *fact);
    if (!tree) {
        std::cerr << "fact does not hold: " << to_string(*fact) << "\n";
        return kExitNotDerived;
    }
    std::cout << render_explanation(*tree);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ontology-based traffic-regulation relaxation engine"};
    app.require_subcommand(1);

    std::string scene_path;
    std::string rules_path;
    std::string format = "text";
    std::string fact_text;
    SimulationConfig config;

    auto add_common = [&](CLI::App* cmd, bool with_rules) {
        cmd->add_option("--scene", scene_path, "scene document")->required();
        if (with_rules) {
            cmd->add_option("--rules", rules_path, "rules document");
            cmd->add_option("--derived-cap", config.derived_fact_cap,
                            "maximum number of derived facts");
        }
    };

    CLI::App* validate = app.add_subcommand("validate", "check a scene document");
    add_common(validate, false);

    CLI::App* infer = app.add_subcommand("infer", "run one decision step");
    add_common(infer, true);
    infer->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* run = app.add_subcommand("run", "run the simulation loop");
    add_common(run, true);
    run->add_option("--steps", config.max_steps, "maximum number of steps")
        ->check(CLI::PositiveNumber);
    run->add_option("--nervous-after", config.nervous_after,
                    "waiting steps before a vehicle turns Nervous")
        ->check(CLI::NonNegativeNumber);
    run->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* explain = app.add_subcommand("explain", "derivation tree for a fact");
    add_common(explain, true);
    explain->add_option("--fact", fact_text, "fact, e.g. \"isOn(Car1, LaneA)\"")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (app.got_subcommand(validate)) {
            load_scene(scene_path, /*print_warnings=*/true);
            std::cout << "OK\n";
            return kExitOk;
        }
        if (app.got_subcommand(infer)) {
            return run_infer(scene_path, rules_path, format, config.derived_fact_cap);
        }
        if (app.got_subcommand(run)) {
            return run_run(scene_path, rules_path, format, config);
        }
        if (app.got_subcommand(explain)) {
            return run_explain(scene_path, rules_path, fact_text,
                               config.derived_fact_cap);
        }
    } catch (const ConflictError& e) {
        std::cerr << "conflict";
        if (e.step_index()) std::cerr << " at step " << *e.step_index();
        std::cerr << ": " << e.what() << "\n";
        return kExitConflict;
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit";
        if (e.step_index()) std::cerr << " at step " << *e.step_index();
        std::cerr << ": " << e.what() << "\n";
        return kExitResourceLimit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitOk;
}
