#pragma once

#include <string>
#include <vector>

namespace otg {

/// Signed erasure-work tally in units of k_B*T*ln2. Positive entries are
/// costs, negative entries gains. A value type, threaded through calls.
struct WorkLedger {
    struct Entry {
        std::string label;
        double amount;
    };

    std::vector<Entry> entries;

    void add(std::string label, double amount) { entries.push_back({std::move(label), amount}); }

    double total() const {
        double t = 0.0;
        for (const auto& e : entries) t += e.amount;
        return t;
    }
};

} // namespace otg
