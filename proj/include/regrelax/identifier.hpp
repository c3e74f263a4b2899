#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace regrelax {

/// Name of a class, property, individual or rule. Identifiers are
/// case-sensitive and compare byte-wise; two equal strings denote the
/// same thing, two distinct strings denote distinct things.
class Identifier {
public:
    explicit Identifier(std::string name) : name_(std::move(name)) {
        if (!valid(name_))
            throw std::invalid_argument("invalid identifier: '" + name_ + "'");
    }

    static bool valid(std::string_view s) {
        if (s.empty()) return false;
        for (char c : s) {
            const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                            (c >= '0' && c <= '9') || c == '_';
            if (!ok) return false;
        }
        return true;
    }

    const std::string& str() const { return name_; }

    auto operator<=>(const Identifier&) const = default;

private:
    std::string name_;
};

inline Identifier id(std::string_view name) { return Identifier(std::string(name)); }

}  // namespace regrelax
