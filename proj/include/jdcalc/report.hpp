#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace jdcalc {

/// One verdict inside a CheckReport: a label, pass/fail, and exact residuals
/// or other details rendered as canonical expression strings (never
/// truncated).
struct CheckItem {
    std::string label;
    bool pass = false;
    std::vector<std::pair<std::string, std::string>> details;
};

/// Deterministic verification report. Failures are verdicts, not errors.
struct CheckReport {
    std::string title;
    std::vector<CheckItem> items;
    std::optional<std::uint64_t> seed;
    std::optional<int> samples;

    bool passed() const {
        for (const auto& it : items)
            if (!it.pass) return false;
        return true;
    }

    CheckItem& add(std::string label, bool pass) {
        items.push_back(CheckItem{std::move(label), pass, {}});
        return items.back();
    }
    CheckItem& add(std::string label, bool pass, std::string detail_key,
                   std::string detail_value) {
        auto& it = add(std::move(label), pass);
        it.details.emplace_back(std::move(detail_key), std::move(detail_value));
        return it;
    }

    std::string text() const;
};

} // namespace jdcalc
