#pragma once

#include <string>

namespace rdl {

/// A projective dimension that is either known exactly or only bounded below
/// (when a resolution was truncated at the cutoff).
struct PdValue {
    enum class Kind { exact, at_least };
    Kind kind = Kind::exact;
    int value = 0;

    static PdValue exact(int v) { return {Kind::exact, v}; }
    static PdValue at_least(int v) { return {Kind::at_least, v}; }

    bool is_exact() const { return kind == Kind::exact; }
    bool operator==(const PdValue&) const = default;

    std::string str() const {
        return kind == Kind::exact ? std::to_string(value) : ">=" + std::to_string(value);
    }
};

/// max of two pd values: an at_least is absorbing once it dominates.
inline PdValue pd_max(const PdValue& a, const PdValue& b) {
    if (a.kind == PdValue::Kind::exact && b.kind == PdValue::Kind::exact)
        return PdValue::exact(std::max(a.value, b.value));
    return PdValue::at_least(std::max(a.value, b.value));
}

}  // namespace rdl
