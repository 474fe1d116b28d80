// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace qccs {

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    std::string message;
    int line = 0; // 1-based; 0 when no source span is available
    int col = 0;
    std::string rule; // violated formation-rule citation, when applicable
    std::string path; // term path for semantic diagnostics

    std::string str(const std::string& file = "") const;
};

bool has_errors(const std::vector<Diagnostic>& ds);

} // namespace qccs
