// End-to-end checks of the engine, the documents, the CLI, and the
// simulation loop. Each check prints one [PASS]/[FAIL] line; the process
// exits nonzero if any check failed.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "regrelax/explain.hpp"
#include "regrelax/road_ontology.hpp"
#include "regrelax/scenario_io.hpp"
#include "regrelax/simulation.hpp"
#include "support/fixtures.hpp"
#include "support/naive_oracle.hpp"
#include "support/scene_gen.hpp"

namespace {

using nlohmann::json;
using namespace regrelax;
using testsupport::load_scene_fixture;
using testsupport::read_fixture;

int failures = 0;

void report(int criterion, const std::string& what, bool ok) {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": "
              << what << "\n";
    if (!ok) ++failures;
}

std::string fixture_path(const std::string& name) {
    return std::string(FIXTURES_DIR) + "/" + name;
}

struct CommandResult {
    std::string output;
    int exit_code = -1;
};

CommandResult run_command(const std::string& args) {
    const std::string command =
        std::string(REGRELAX_BIN) + " " + args + " 2>/dev/null";
    CommandResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) return result;
    char buffer[4096];
    std::size_t n;
    while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) {
        result.output.append(buffer, n);
    }
    const int status = pclose(pipe);
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    return result;
}

std::vector<std::string> output_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) lines.push_back(std::move(current));
    return lines;
}

std::string join_lines(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& line : lines) out += line + "\n";
    return out;
}

// 1: one CLI decision step on the blocked-avenue scene derives exactly the
// relocation facts, within a second.
void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    const CommandResult result =
        run_command("infer --scene " + fixture_path("scenario1.scene"));
    const double elapsed_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();

    const std::vector<std::string> expected{
        "hasMotion(CyberCar1, Stopped)",
        "hasNextMotion(CyberCar1, Forward)",
        "isAfter(CyberCar1, UnloadingTruck1)",
        "isNextOn(CyberCar1, AvenueDeLaLiberteDown)",
    };
    const bool ok = result.exit_code == 0 &&
                    output_lines(result.output) == expected && elapsed_ms < 1000.0;
    report(1, "one decision step derives the lane-change facts", ok);
}

// 2: the same scene with a relaxed driver derives a wait, not a relocation.
void criterion_2() {
    const CommandResult result =
        run_command("infer --scene " + fixture_path("scenario1_relaxed.scene"));
    const auto lines = output_lines(result.output);
    const bool has_wait =
        std::ranges::count(lines, "hasNextMotion(CyberCar1, Stopped)") == 1;
    const bool no_relocation = std::ranges::none_of(lines, [](const std::string& l) {
        return l.starts_with("isNextOn(");
    });
    report(2, "a relaxed driver keeps waiting instead of relocating",
           result.exit_code == 0 && has_wait && no_relocation);
}

// 3: on a one-lane road the nervous driver mounts the bordering sidewalk.
void criterion_3() {
    const CommandResult result =
        run_command("infer --scene " + fixture_path("scenario2.scene"));
    const auto lines = output_lines(result.output);
    const bool ok =
        result.exit_code == 0 &&
        std::ranges::count(lines, "isNextOn(CyberCar2, SwRueDu22Septembre)") == 1 &&
        std::ranges::count(lines, "hasNextMotion(CyberCar2, Forward)") == 1;
    report(3, "a nervous driver mounts the sidewalk when no lane is free", ok);
}

// 4: in-process saturation of each bundled scene stays under 50 ms.
void criterion_4() {
    const RuleSet rules = default_ruleset();
    bool ok = true;
    for (const char* name :
         {"scenario1.scene", "scenario1_relaxed.scene", "scenario2.scene"}) {
        const KnowledgeBase scene = load_scene_fixture(name);
        const auto start = std::chrono::steady_clock::now();
        const SaturationResult result = saturate(scene, rules.rules);
        const double elapsed_ms = std::chrono::duration<double, std::milli>(
                                      std::chrono::steady_clock::now() - start)
                                      .count();
        ok = ok && !result.kb.facts().empty() && elapsed_ms < 50.0;
    }
    report(4, "saturation of the bundled scenes stays under 50 ms", ok);
}

// 5: the engine computes the same fixpoint as a brute-force re-match
// reference on unconstrained random scenes.
void criterion_5() {
    const RuleSet rules = default_ruleset();
    std::mt19937 rng(777);
    bool ok = true;
    for (int i = 0; i < 50 && ok; ++i) {
        const KnowledgeBase scene = testsupport::wild_scene(rng);
        const std::set<Fact> engine = saturate(scene, rules.rules).kb.facts();
        const std::set<Fact> reference =
            testsupport::naive_fixpoint(scene, rules.rules);
        ok = engine == reference;
    }
    report(5, "the engine agrees with a brute-force reference on random scenes", ok);
}

// 6: permuting the rule list and every rule body never changes the fixpoint.
void criterion_6() {
    const KnowledgeBase scene = load_scene_fixture("scenario1.scene");
    RuleSet rules = default_ruleset();
    const std::string baseline = serialize_scene(saturate(scene, rules.rules).kb);

    std::mt19937 rng(4242);
    bool ok = true;
    for (int i = 0; i < 100 && ok; ++i) {
        std::ranges::shuffle(rules.rules, rng);
        for (auto& rule : rules.rules) std::ranges::shuffle(rule.body, rng);
        ok = serialize_scene(saturate(scene, rules.rules).kb) == baseline;
    }
    report(6, "rule and atom order never change the outcome", ok);
}

// 7: saturation is idempotent and monotone, and every fact with an inverse
// has its mirror, on the bundled scenes and on random ones.
void criterion_7() {
    const RuleSet rules = default_ruleset();
    std::mt19937 rng(31337);
    bool ok = true;

    auto check_scene = [&](const KnowledgeBase& scene) {
        const SaturationResult once = saturate(scene, rules.rules);
        const SaturationResult twice = saturate(once.kb, rules.rules);
        if (!twice.derived.empty() || twice.kb.facts() != once.kb.facts()) {
            return false;
        }
        if (!std::ranges::includes(once.kb.facts(), scene.facts())) return false;
        return std::ranges::all_of(once.kb.facts(), [&](const Fact& fact) {
            const auto mirror = inverse_mirror(once.kb.schema(), fact);
            return !mirror || once.kb.facts().contains(*mirror);
        });
    };

    for (const char* name :
         {"scenario1.scene", "scenario1_relaxed.scene", "scenario2.scene"}) {
        ok = ok && check_scene(load_scene_fixture(name));
    }
    for (int i = 0; i < 20 && ok; ++i) {
        ok = check_scene(testsupport::wild_scene(rng));
    }
    report(7, "saturation is idempotent, monotone, and inverse-closed", ok);
}

// 8: scene documents survive a decorated round trip, and a single bad line
// yields a single error at that exact line and column.
void criterion_8() {
    bool ok = true;

    for (const char* name :
         {"scenario1.scene", "scenario1_relaxed.scene", "scenario2.scene"}) {
        const KnowledgeBase scene = load_scene_fixture(name);
        const std::string text = serialize_scene(scene);
        const SceneParseResult back = parse_scene(text);
        ok = ok && back.ok() && back.kb->facts() == scene.facts() &&
             serialize_scene(*back.kb) == text;
    }

    std::mt19937 rng(2468);
    for (int i = 0; i < 100 && ok; ++i) {
        const KnowledgeBase scene = testsupport::wild_scene(rng);
        std::vector<std::string> lines = output_lines(serialize_scene(scene));
        std::ranges::shuffle(lines, rng);
        std::vector<std::string> decorated;
        for (auto& line : lines) {
            if (rng() % 4 == 0) decorated.push_back("# note");
            if (rng() % 4 == 0) decorated.emplace_back();
            if (rng() % 3 == 0) line += "  # inline";
            decorated.push_back(line);
        }
        const SceneParseResult result = parse_scene(join_lines(decorated));
        ok = result.ok() && result.kb->facts() == scene.facts();
    }

    struct BadLine {
        std::string text;
        int column;
        ParseErrorCode code;
    };
    const std::vector<BadLine> menu{
        {"individual Spaceship X", 12, ParseErrorCode::UnknownClass},
        {"assert flies A B", 8, ParseErrorCode::UnknownProperty},
        {"individual Car", 1, ParseErrorCode::ArityMismatch},
        {"frobnicate A B", 1, ParseErrorCode::UnknownDirective},
        {"assert isOn Bad! Lane0", 13, ParseErrorCode::BadIdentifier},
    };
    for (int i = 0; i < 100 && ok; ++i) {
        std::vector<std::string> lines =
            output_lines(serialize_scene(testsupport::wild_scene(rng)));
        const BadLine& bad = menu[rng() % menu.size()];
        const std::size_t at = rng() % (lines.size() + 1);
        lines.insert(lines.begin() + static_cast<std::ptrdiff_t>(at), bad.text);
        const SceneParseResult result = parse_scene(join_lines(lines));
        ok = !result.kb.has_value() && result.errors.size() == 1 &&
             result.errors[0].position ==
                 SourcePosition{static_cast<int>(at) + 1, bad.column} &&
             result.errors[0].code == bad.code;
    }

    report(8, "scene documents round-trip and errors carry exact positions", ok);
}

// 9: the CLI simulation turns the waiting driver nervous, relocates it, and
// reaches a fixed point, step by step.
void criterion_9() {
    const CommandResult result = run_command(
        "run --scene " + fixture_path("scenario1_relaxed.scene") +
        " --nervous-after 2 --steps 4 --format json");
    bool ok = result.exit_code == 0;
    try {
        const json trace = json::parse(result.output);
        ok = ok && trace.is_array() && trace.size() == 4;
        if (ok) {
            const auto& car0 = trace[0]["decisions"]["CyberCar1"];
            ok = ok && car0["next_motion"] == "Stopped" &&
                 trace[0]["counters"]["CyberCar1"] == 1;
            ok = ok && trace[1]["counters"]["CyberCar1"] == 2;
            const std::string scene1 = trace[1]["scene"];
            ok = ok && scene1.find("assert hasEmotion CyberCar1 Nervous") !=
                           std::string::npos;
            const auto& car2 = trace[2]["decisions"]["CyberCar1"];
            ok = ok && car2["next_motion"] == "Forward" &&
                 car2["next_location"] == "AvenueDeLaLiberteDown" &&
                 trace[2]["counters"]["CyberCar1"] == 0;
            const std::string scene2 = trace[2]["scene"];
            ok = ok && scene2.find("assert isOn CyberCar1 AvenueDeLaLiberteDown") !=
                           std::string::npos &&
                 scene2.find("assert hasEmotion CyberCar1 Relaxed") !=
                     std::string::npos;
            ok = ok && trace[3]["decisions"]["CyberCar1"].empty();
        }
    } catch (const json::exception&) {
        ok = false;
    }
    report(9, "the simulation relaxes a blocked driver and reaches a fixed point",
           ok);
}

// Grounds the rule body under the node's binding and checks every positive
// atom against the saturated knowledge base.
bool sound_node(const KnowledgeBase& kb, const RuleSet& rules,
                const ExplanationNode& node) {
    if (node.kind == ExplanationNode::Kind::Rule) {
        const auto it = std::ranges::find_if(rules.rules, [&](const Rule& rule) {
            return node.rule && rule.name == *node.rule;
        });
        if (it == rules.rules.end()) return false;
        for (const auto& atom : it->body) {
            if (const auto* d = std::get_if<DifferentFromAtom>(&atom)) {
                const auto left = std::get_if<Variable>(&d->left);
                const auto right = std::get_if<Variable>(&d->right);
                const Identifier lv = left ? node.binding.at(left->name)
                                           : std::get<IndividualRef>(d->left).individual;
                const Identifier rv = right
                                          ? node.binding.at(right->name)
                                          : std::get<IndividualRef>(d->right).individual;
                if (lv == rv) return false;
                continue;
            }
            const auto grounded = ground_atom(atom, node.binding);
            if (!grounded || !kb.holds(*grounded)) return false;
        }
    }
    return std::ranges::all_of(node.children, [&](const ExplanationNode& child) {
        return sound_node(kb, rules, child);
    });
}

// 10: every derived fact of the blocked-avenue scene explains itself with a
// derivation tree whose every rule node re-grounds soundly, in the library
// and through the CLI.
void criterion_10() {
    const KnowledgeBase scene = load_scene_fixture("scenario1.scene");
    const RuleSet rules = default_ruleset();
    const SaturationResult result = saturate(scene, rules.rules);

    bool ok = !result.kb.derived_facts().empty();
    for (const auto& fact : result.kb.derived_facts()) {
        const auto tree = explain_fact(result.kb, rules, fact);
        ok = ok && tree.has_value() && sound_node(result.kb, rules, *tree);

        const CommandResult cli = run_command(
            "explain --scene " + fixture_path("scenario1.scene") + " --fact '" +
            to_string(fact) + "'");
        ok = ok && cli.exit_code == 0 && !cli.output.empty();
    }
    report(10, "every derived fact carries a sound derivation tree", ok);
}

}  // namespace

int main() {
    unsetenv("REGRELAX_RULES");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures > 0) {
        std::cout << failures << " criterion check(s) failed\n";
        return 1;
    }
    std::cout << "all criteria hold\n";
    return 0;
}
