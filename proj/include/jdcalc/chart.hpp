#pragma once

#include "jdcalc/error.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jdcalc {

/// A coordinate chart: an ordered list of distinct variable names.
/// Immutable and cheap to copy; two charts are equal iff their name lists
/// are equal.
class Chart {
public:
    Chart() : names_(std::make_shared<const std::vector<std::string>>()) {}
    explicit Chart(std::vector<std::string> names);

    int dim() const { return static_cast<int>(names_->size()); }
    const std::string& name(int i) const;
    const std::vector<std::string>& names() const { return *names_; }
    std::optional<int> index_of(std::string_view name) const;

    /// Chart restricted to the given (increasing) subset of variable indices.
    Chart sub_chart(const std::vector<int>& keep) const;

    bool operator==(const Chart& o) const { return names_ == o.names_ || *names_ == *o.names_; }
    bool operator!=(const Chart& o) const { return !(*this == o); }

    static bool valid_identifier(std::string_view s);

private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

inline void require_same_chart(const Chart& a, const Chart& b, const char* what) {
    if (a != b) throw input_error(std::string(what) + ": chart mismatch");
}

} // namespace jdcalc
