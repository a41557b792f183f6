#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace repfam {

/// Outcome of the debug-mode stage checks a solver runs against brute-force oracles.
struct VerificationSummary {
    static constexpr std::size_t kMaxMessages = 20;

    std::size_t checks = 0;
    std::size_t failures = 0;
    std::vector<std::string> messages;  // first few failures

    bool passed() const noexcept { return failures == 0; }

    void record(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            ++failures;
            if (messages.size() < kMaxMessages) {
                messages.push_back(what);
            }
        }
    }

    void merge(const VerificationSummary& other) {
        checks += other.checks;
        failures += other.failures;
        for (const auto& m : other.messages) {
            if (messages.size() < kMaxMessages) {
                messages.push_back(m);
            }
        }
    }
};

}  // namespace repfam
