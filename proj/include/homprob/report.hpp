#pragma once

#include <string>
#include <utility>
#include <vector>

namespace homprob {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // witness or measurement; empty when none
};

/// Outcome of a verification routine: a list of named checks plus free-form
/// notes (caveats that apply even when every check passes).
class Report {
  public:
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;

    void add(std::string name, bool passed, std::string detail = "") {
        checks.push_back({std::move(name), passed, std::move(detail)});
    }
    void note(std::string s) { notes.push_back(std::move(s)); }

    void merge(const Report& o) {
        checks.insert(checks.end(), o.checks.begin(), o.checks.end());
        notes.insert(notes.end(), o.notes.begin(), o.notes.end());
    }

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }

    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    std::string to_text() const {
        std::string out;
        for (const auto& c : checks) {
            out += c.passed ? "[pass] " : "[FAIL] ";
            out += c.name;
            if (!c.detail.empty()) {
                out += ": ";
                out += c.detail;
            }
            out += "\n";
        }
        for (const auto& n : notes) {
            out += "note: ";
            out += n;
            out += "\n";
        }
        return out;
    }
};

}  // namespace homprob
