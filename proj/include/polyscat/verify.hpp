#pragma once

#include <string>
#include <vector>

#include "polyscat/lattice_oracle.hpp"

namespace polyscat {

/// One cross-validation check: a measured worst-case number against its
/// tolerance, plus where the worst case occurred.
struct CheckResult {
    std::string name;
    std::string detail;   ///< scenario / location of the worst case
    double measured = 0;  ///< worst value found
    double tolerance = 0; ///< pass iff measured <= tolerance
    bool pass = false;
    double seconds = 0;   ///< wall time spent in this check
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_pass = false;
    double total_seconds = 0;
    bool quick = false;
};

/// Cross-validation battery: closed forms vs direct lattice solves (single
/// and multi barrier), unitarity and residuals of every solve, transfer
/// matrix determinants, Chebyshev closed forms vs direct matrix powers,
/// closed-form Wigner time vs numerical differentiation, and the
/// multi-to-single phase reduction. `quick` shrinks the grids (~10x faster);
/// `edge` selects the barrier endpoint convention, where full_height is a
/// deliberate negative control that must fail.
VerifyReport run_verification(bool quick,
                              EdgeConvention edge = EdgeConvention::half_height);

std::string verify_report_json(const VerifyReport& report);

/// Library version reported in output metadata.
const char* version_string();

} // namespace polyscat
