#pragma once

#include "jdcalc/dirac.hpp"

#include <map>
#include <optional>
#include <string>

namespace jdcalc {

/// One [distribution NAME] block.
struct DistributionBlock {
    DistMode mode = DistMode::aligned;
    int samples = 8;
    std::uint64_t seed = 0;
    bool grid = false;
    std::vector<ExtVec> generators;

    SubbundleSpec to_spec(const Chart& chart) const;
};

/// Parsed structure file. Sections: [chart], [jacobi], [distribution NAME],
/// [omega], [submanifold], [quotient]; comments start with '#'.
struct StructureFile {
    Chart chart;
    std::optional<MultiVec> lambda;
    std::optional<MultiVec> e_field;
    std::map<std::string, DistributionBlock> distributions;
    std::optional<ExtVec> omega;
    std::optional<std::set<int>> submanifold;
    std::optional<Chart> quotient_chart;
    std::optional<MultiVec> quotient_lambda;
    std::optional<MultiVec> quotient_e;
};

/// Parses the sectioned text format; throws parse_error with line/column.
StructureFile parse_structure_file(const std::string& text);

/// Canonical rendering; parsing it back yields an equal value.
std::string render_structure_file(const StructureFile& sf);

} // namespace jdcalc
