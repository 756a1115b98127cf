#include "jdcalc/report.hpp"

#include <sstream>

namespace jdcalc {

std::string CheckReport::text() const {
    std::ostringstream out;
    out << title << "\n";
    if (seed) out << "  seed = " << *seed << (samples ? ", samples = " + std::to_string(*samples) : "") << "\n";
    for (const auto& it : items) {
        out << "  [" << (it.pass ? "ok" : "FAIL") << "] " << it.label;
        for (const auto& [k, v] : it.details) out << "\n        " << k << ": " << v;
        out << "\n";
    }
    out << (passed() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

} // namespace jdcalc
