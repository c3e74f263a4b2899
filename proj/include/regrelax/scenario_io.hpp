#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regrelax/knowledge_base.hpp"
#include "regrelax/regulation.hpp"

namespace regrelax {

/// 1-based position; column counts bytes.
struct SourcePosition {
    int line = 1;
    int column = 1;

    auto operator<=>(const SourcePosition&) const = default;
};

enum class ParseErrorCode {
    UnknownDirective,
    UnknownClass,
    UnknownProperty,
    ArityMismatch,
    BadIdentifier,
    UnsafeRule,
    DuplicateRuleName,
};

std::string to_string(ParseErrorCode code);

struct ParseError {
    SourcePosition position;
    ParseErrorCode code;
    std::string message;

    friend bool operator==(const ParseError&, const ParseError&) = default;
};

struct SceneParseResult {
    /// Set iff errors is empty.
    std::optional<KnowledgeBase> kb;
    std::vector<ParseError> errors;
    /// First occurrence of each individual name, for diagnostics.
    std::map<Identifier, SourcePosition> individual_positions;

    bool ok() const { return errors.empty(); }
};

struct RulesParseResult {
    /// Set iff errors is empty.
    std::optional<RuleSet> rules;
    std::vector<ParseError> errors;

    bool ok() const { return errors.empty(); }
};

/// Parses a scene document over traffic_schema(). Directives:
///   individual CLASS NAME
///   assert PROPERTY SUBJECT OBJECT
/// `#` starts a comment; blank lines are ignored. All errors in the document
/// are reported; no knowledge base is returned if there is any.
SceneParseResult parse_scene(const std::string& text);

/// Parses a rules document. Each rule starts with `rule NAME:`, carries
/// comma-separated atoms, `->`, comma-separated head atoms, and ends at a
/// blank line, end of input, or the next rule header.
RulesParseResult parse_rules(const std::string& text);

/// Canonical text form: class directives sorted, then property directives
/// sorted, LF endings. Designated individuals and the inverse-mirrored half
/// of each property pair are omitted; parsing reconstructs them.
std::string serialize_scene(const KnowledgeBase& kb);

/// Parses `Name(A)` or `name(A, B)` as a ground fact over `schema`. Throws
/// std::invalid_argument on bad syntax, variables, or undeclared names.
Fact parse_ground_fact(const std::string& text, const Schema& schema);

}  // namespace regrelax
