#include "regrelax/scenario_io.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "regrelax/road_ontology.hpp"

namespace regrelax {

std::string to_string(ParseErrorCode code) {
    switch (code) {
        case ParseErrorCode::UnknownDirective: return "UnknownDirective";
        case ParseErrorCode::UnknownClass: return "UnknownClass";
        case ParseErrorCode::UnknownProperty: return "UnknownProperty";
        case ParseErrorCode::ArityMismatch: return "ArityMismatch";
        case ParseErrorCode::BadIdentifier: return "BadIdentifier";
        case ParseErrorCode::UnsafeRule: return "UnsafeRule";
        case ParseErrorCode::DuplicateRuleName: return "DuplicateRuleName";
    }
    return "ParseError";
}

namespace {

bool valid_utf8(const std::string& text) {
    const auto* bytes = reinterpret_cast<const unsigned char*>(text.data());
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        unsigned char b = bytes[i];
        std::size_t len;
        unsigned cp;
        if (b < 0x80) {
            ++i;
            continue;
        } else if ((b & 0xE0) == 0xC0) {
            len = 2;
            cp = b & 0x1F;
        } else if ((b & 0xF0) == 0xE0) {
            len = 3;
            cp = b & 0x0F;
        } else if ((b & 0xF8) == 0xF0) {
            len = 4;
            cp = b & 0x07;
        } else {
            return false;
        }
        if (i + len > n) return false;
        for (std::size_t k = 1; k < len; ++k) {
            if ((bytes[i + k] & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (bytes[i + k] & 0x3F);
        }
        static constexpr unsigned kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
        if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            return false;
        }
        i += len;
    }
    return true;
}

/// Source lines with comments stripped. Keeps blank lines so rule blocks can
/// end on them.
std::vector<std::string> split_lines(const std::string& text) {
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
    lines.push_back(std::move(current));
    for (auto& line : lines) {
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        if (!line.empty() && line.back() == '\r') line.pop_back();
    }
    return lines;
}

struct RawToken {
    std::string text;
    int column;  // 1-based
};

std::vector<RawToken> split_tokens(const std::string& line) {
    std::vector<RawToken> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t') {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return tokens;
}

bool blank(const std::string& line) {
    return std::ranges::all_of(line, [](char c) { return c == ' ' || c == '\t'; });
}

}  // namespace

SceneParseResult parse_scene(const std::string& text) {
    SceneParseResult result;
    if (!valid_utf8(text)) {
        result.errors.push_back(
            {{1, 1}, ParseErrorCode::BadIdentifier, "document is not valid UTF-8"});
        return result;
    }

    const Schema& schema = *traffic_schema();
    const std::vector<std::string> lines = split_lines(text);
    std::vector<Fact> facts;

    auto fail = [&](int line, int column, ParseErrorCode code, std::string message) {
        result.errors.push_back({{line, column}, code, std::move(message)});
    };
    auto checked_id = [&](const RawToken& token, int line) -> std::optional<Identifier> {
        if (!Identifier::valid(token.text)) {
            fail(line, token.column, ParseErrorCode::BadIdentifier,
                 "'" + token.text + "' is not an identifier ([A-Za-z0-9_]+)");
            return std::nullopt;
        }
        return id(token.text);
    };
    auto note_individual = [&](const Identifier& ind, int line, int column) {
        result.individual_positions.try_emplace(ind, SourcePosition{line, column});
    };

    for (std::size_t n = 0; n < lines.size(); ++n) {
        const int line = static_cast<int>(n) + 1;
        const auto tokens = split_tokens(lines[n]);
        if (tokens.empty()) continue;
        const RawToken& head = tokens[0];

        if (head.text == "individual") {
            if (tokens.size() != 3) {
                fail(line, head.column, ParseErrorCode::ArityMismatch,
                     "individual takes a class name and an individual name");
                continue;
            }
            auto cls = checked_id(tokens[1], line);
            auto ind = checked_id(tokens[2], line);
            if (!cls || !ind) continue;
            if (!schema.has_class(*cls)) {
                fail(line, tokens[1].column, ParseErrorCode::UnknownClass,
                     "unknown class " + cls->str());
                continue;
            }
            note_individual(*ind, line, tokens[2].column);
            facts.push_back(class_fact(*cls, *ind));
        } else if (head.text == "assert") {
            if (tokens.size() != 4) {
                fail(line, head.column, ParseErrorCode::ArityMismatch,
                     "assert takes a property name and two individual names");
                continue;
            }
            auto property = checked_id(tokens[1], line);
            auto subject = checked_id(tokens[2], line);
            auto object = checked_id(tokens[3], line);
            if (!property || !subject || !object) continue;
            if (!schema.has_property(*property)) {
                fail(line, tokens[1].column, ParseErrorCode::UnknownProperty,
                     "unknown property " + property->str());
                continue;
            }
            note_individual(*subject, line, tokens[2].column);
            note_individual(*object, line, tokens[3].column);
            facts.push_back(property_fact(*property, *subject, *object));
        } else {
            fail(line, head.column, ParseErrorCode::UnknownDirective,
                 "unknown directive '" + head.text + "'");
        }
    }

    if (!result.errors.empty()) return result;
    KnowledgeBase kb = new_scene();
    for (const auto& fact : facts) kb = kb.assert_fact(fact);
    result.kb = std::move(kb);
    return result;
}

namespace {

struct RuleToken {
    enum class Kind { Ident, Var, LParen, RParen, Comma, Colon, Arrow };
    Kind kind;
    std::string text;
    SourcePosition pos;
};

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

/// Tokenizes the lines of one rule block. Lexical errors are reported and
/// the offending byte skipped.
std::vector<RuleToken> rule_tokens(const std::vector<std::pair<int, std::string>>& block,
                                   std::vector<ParseError>& errors) {
    std::vector<RuleToken> tokens;
    for (const auto& [line, text] : block) {
        std::size_t i = 0;
        while (i < text.size()) {
            const char c = text[i];
            const SourcePosition pos{line, static_cast<int>(i) + 1};
            if (c == ' ' || c == '\t') {
                ++i;
            } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
                tokens.push_back({RuleToken::Kind::Arrow, "->", pos});
                i += 2;
            } else if (c == '(') {
                tokens.push_back({RuleToken::Kind::LParen, "(", pos});
                ++i;
            } else if (c == ')') {
                tokens.push_back({RuleToken::Kind::RParen, ")", pos});
                ++i;
            } else if (c == ',') {
                tokens.push_back({RuleToken::Kind::Comma, ",", pos});
                ++i;
            } else if (c == ':') {
                tokens.push_back({RuleToken::Kind::Colon, ":", pos});
                ++i;
            } else if (c == '?' || ident_char(c)) {
                const bool is_var = c == '?';
                std::size_t start = is_var ? i + 1 : i;
                std::size_t end = start;
                while (end < text.size() && ident_char(text[end])) ++end;
                if (is_var && end == start) {
                    errors.push_back({pos, ParseErrorCode::BadIdentifier,
                                      "'?' must be followed by a variable name"});
                    ++i;
                    continue;
                }
                tokens.push_back({is_var ? RuleToken::Kind::Var : RuleToken::Kind::Ident,
                                  text.substr(start, end - start), pos});
                i = end;
            } else {
                errors.push_back({pos, ParseErrorCode::BadIdentifier,
                                  std::string("unexpected character '") + c + "'"});
                ++i;
            }
        }
    }
    return tokens;
}

/// Parses one rule block into a Rule. Returns nullopt after reporting
/// errors; never reports and returns a rule at once.
std::optional<Rule> parse_rule_block(const std::vector<std::pair<int, std::string>>& block,
                                     const Schema& schema,
                                     std::vector<ParseError>& errors) {
    const std::size_t before = errors.size();
    const std::vector<RuleToken> tokens = rule_tokens(block, errors);
    std::size_t i = 0;

    auto fail = [&](const SourcePosition& pos, ParseErrorCode code,
                    std::string message) {
        errors.push_back({pos, code, std::move(message)});
    };
    auto at_end = [&] { return i >= tokens.size(); };
    auto end_pos = [&]() -> SourcePosition {
        if (tokens.empty()) return {block.front().first, 1};
        const auto& last = tokens.back().pos;
        return {last.line, last.column + static_cast<int>(tokens.back().text.size())};
    };

    // Header: rule NAME :
    if (at_end() || tokens[i].text != "rule") {
        fail(tokens.empty() ? SourcePosition{block.front().first, 1} : tokens[0].pos,
             ParseErrorCode::UnknownDirective, "expected 'rule NAME:'");
        return std::nullopt;
    }
    ++i;
    if (at_end() || tokens[i].kind != RuleToken::Kind::Ident) {
        fail(at_end() ? end_pos() : tokens[i].pos, ParseErrorCode::BadIdentifier,
             "expected a rule name after 'rule'");
        return std::nullopt;
    }
    const Identifier name = id(tokens[i].text);
    const SourcePosition name_pos = tokens[i].pos;
    ++i;
    if (at_end() || tokens[i].kind != RuleToken::Kind::Colon) {
        fail(at_end() ? end_pos() : tokens[i].pos, ParseErrorCode::BadIdentifier,
             "expected ':' after the rule name");
        return std::nullopt;
    }
    ++i;

    auto parse_atom = [&]() -> std::optional<Atom> {
        if (at_end() || tokens[i].kind != RuleToken::Kind::Ident) {
            fail(at_end() ? end_pos() : tokens[i].pos, ParseErrorCode::BadIdentifier,
                 "expected an atom name");
            return std::nullopt;
        }
        const std::string atom_name = tokens[i].text;
        const SourcePosition atom_pos = tokens[i].pos;
        ++i;
        if (at_end() || tokens[i].kind != RuleToken::Kind::LParen) {
            fail(at_end() ? end_pos() : tokens[i].pos, ParseErrorCode::BadIdentifier,
                 "expected '(' after '" + atom_name + "'");
            return std::nullopt;
        }
        ++i;
        std::vector<Term> terms;
        while (true) {
            if (at_end()) {
                fail(end_pos(), ParseErrorCode::BadIdentifier,
                     "unterminated atom '" + atom_name + "'");
                return std::nullopt;
            }
            if (tokens[i].kind == RuleToken::Kind::Var) {
                terms.push_back(var("?" + tokens[i].text));
                ++i;
            } else if (tokens[i].kind == RuleToken::Kind::Ident) {
                terms.push_back(ref(id(tokens[i].text)));
                ++i;
            } else {
                fail(tokens[i].pos, ParseErrorCode::BadIdentifier,
                     "expected a variable or individual in '" + atom_name + "'");
                return std::nullopt;
            }
            if (!at_end() && tokens[i].kind == RuleToken::Kind::Comma) {
                ++i;
                continue;
            }
            break;
        }
        if (at_end() || tokens[i].kind != RuleToken::Kind::RParen) {
            fail(at_end() ? end_pos() : tokens[i].pos, ParseErrorCode::BadIdentifier,
                 "expected ')' closing '" + atom_name + "'");
            return std::nullopt;
        }
        ++i;

        if (atom_name == "DifferentFrom") {
            if (terms.size() != 2) {
                fail(atom_pos, ParseErrorCode::ArityMismatch,
                     "DifferentFrom takes exactly two arguments");
                return std::nullopt;
            }
            return Atom{DifferentFromAtom{terms[0], terms[1]}};
        }
        if (terms.size() == 1) {
            if (!schema.has_class(id(atom_name))) {
                fail(atom_pos, ParseErrorCode::UnknownClass,
                     "unknown class " + atom_name);
                return std::nullopt;
            }
            return Atom{ClassAtom{id(atom_name), terms[0]}};
        }
        if (terms.size() == 2) {
            if (!schema.has_property(id(atom_name))) {
                fail(atom_pos, ParseErrorCode::UnknownProperty,
                     "unknown property " + atom_name);
                return std::nullopt;
            }
            return Atom{PropertyAtom{id(atom_name), terms[0], terms[1]}};
        }
        fail(atom_pos, ParseErrorCode::ArityMismatch,
             "atom " + atom_name + " has " + std::to_string(terms.size()) +
                 " arguments; expected 1 or 2");
        return std::nullopt;
    };

    // Comma-separated atoms; a trailing comma before `->` or the end of the
    // block is tolerated.
    auto parse_atom_list = [&](std::vector<Atom>& out) -> bool {
        while (!at_end() && tokens[i].kind != RuleToken::Kind::Arrow) {
            auto atom = parse_atom();
            if (!atom) return false;
            out.push_back(std::move(*atom));
            if (!at_end() && tokens[i].kind == RuleToken::Kind::Comma) ++i;
        }
        return true;
    };

    Rule rule{name, {}, {}};
    if (!parse_atom_list(rule.body)) return std::nullopt;
    if (at_end()) {
        fail(name_pos, ParseErrorCode::UnsafeRule,
             "rule " + name.str() + " has no '->' separator");
        return std::nullopt;
    }
    ++i;  // consume ->
    if (!parse_atom_list(rule.head)) return std::nullopt;
    if (!at_end()) {
        fail(tokens[i].pos, ParseErrorCode::UnsafeRule,
             "rule " + name.str() + " has more than one '->'");
        return std::nullopt;
    }
    if (rule.head.empty()) {
        fail(name_pos, ParseErrorCode::UnsafeRule,
             "rule " + name.str() + " has an empty head");
        return std::nullopt;
    }

    try {
        check_safety(rule, schema);
    } catch (const RuleError& e) {
        const ParseErrorCode code = e.code() == RuleError::Code::Undeclared
                                        ? ParseErrorCode::UnknownClass
                                        : ParseErrorCode::UnsafeRule;
        fail(name_pos, code, e.what());
        return std::nullopt;
    }
    if (errors.size() != before) return std::nullopt;
    return rule;
}

}  // namespace

RulesParseResult parse_rules(const std::string& text) {
    RulesParseResult result;
    if (!valid_utf8(text)) {
        result.errors.push_back(
            {{1, 1}, ParseErrorCode::BadIdentifier, "document is not valid UTF-8"});
        return result;
    }

    const Schema& schema = *traffic_schema();
    const std::vector<std::string> lines = split_lines(text);

    std::vector<std::vector<std::pair<int, std::string>>> blocks;
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const int line = static_cast<int>(n) + 1;
        if (blank(lines[n])) continue;
        const auto tokens = split_tokens(lines[n]);
        const bool header = !tokens.empty() && tokens[0].text == "rule";
        if (header || blocks.empty()) {
            blocks.emplace_back();
        }
        blocks.back().emplace_back(line, lines[n]);
        // A blank line closes the current block.
        if (n + 1 < lines.size() && blank(lines[n + 1])) {
            blocks.emplace_back();
        }
    }
    std::erase_if(blocks, [](const auto& block) { return block.empty(); });

    RuleSet set;
    set.version = "custom";
    std::set<Identifier> seen;
    for (const auto& block : blocks) {
        auto rule = parse_rule_block(block, schema, result.errors);
        if (!rule) continue;
        if (!seen.insert(rule->name).second) {
            result.errors.push_back({{block.front().first, 1},
                                     ParseErrorCode::DuplicateRuleName,
                                     "duplicate rule name " + rule->name.str()});
            continue;
        }
        set.rules.push_back(std::move(*rule));
    }

    if (!result.errors.empty()) return result;
    result.rules = std::move(set);
    return result;
}

std::string serialize_scene(const KnowledgeBase& kb) {
    const Schema& schema = kb.schema();
    const auto& designated = designated_individuals();

    std::vector<std::string> class_lines;
    std::vector<std::string> property_lines;
    for (const auto& fact : kb.facts()) {
        if (const auto* c = std::get_if<ClassAssertion>(&fact)) {
            const bool motion = c->cls == id("Motion") &&
                                designated.motions.contains(c->individual);
            const bool emotion = c->cls == id("DriverEmotion") &&
                                 designated.emotions.contains(c->individual);
            if (motion || emotion) continue;
            class_lines.push_back("individual " + c->cls.str() + " " +
                                  c->individual.str());
        } else {
            const auto& p = std::get<PropertyAssertion>(fact);
            if (auto inverse = schema.inverse_of(p.property)) {
                const bool mirror_half =
                    (p.property > *inverse ||
                     (p.property == *inverse && p.subject > p.object)) &&
                    kb.contains(property_fact(*inverse, p.object, p.subject));
                if (mirror_half) continue;
            }
            property_lines.push_back("assert " + p.property.str() + " " +
                                     p.subject.str() + " " + p.object.str());
        }
    }
    std::ranges::sort(class_lines);
    std::ranges::sort(property_lines);

    std::string out;
    for (const auto& line : class_lines) out += line + "\n";
    for (const auto& line : property_lines) out += line + "\n";
    return out;
}

Fact parse_ground_fact(const std::string& text, const Schema& schema) {
    const auto open = text.find('(');
    const auto close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open ||
        text.find_first_not_of(" \t", close + 1) != std::string::npos) {
        throw std::invalid_argument("expected a fact of the form Name(A) or name(A, B)");
    }
    auto trim = [](std::string s) {
        const auto first = s.find_first_not_of(" \t");
        const auto last = s.find_last_not_of(" \t");
        if (first == std::string::npos) return std::string();
        return s.substr(first, last - first + 1);
    };
    const std::string name = trim(text.substr(0, open));
    if (!Identifier::valid(name)) {
        throw std::invalid_argument("'" + name + "' is not an identifier");
    }

    std::vector<std::string> args;
    std::string inner = text.substr(open + 1, close - open - 1);
    std::size_t start = 0;
    while (true) {
        const auto comma = inner.find(',', start);
        args.push_back(trim(inner.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    for (const auto& arg : args) {
        if (!Identifier::valid(arg)) {
            throw std::invalid_argument("'" + arg + "' is not an individual name");
        }
    }

    if (args.size() == 1) {
        if (!schema.has_class(id(name))) {
            throw std::invalid_argument("unknown class " + name);
        }
        return class_fact(id(name), id(args[0]));
    }
    if (args.size() == 2) {
        if (!schema.has_property(id(name))) {
            throw std::invalid_argument("unknown property " + name);
        }
        return property_fact(id(name), id(args[0]), id(args[1]));
    }
    throw std::invalid_argument("a fact takes one or two arguments");
}

}  // namespace regrelax
