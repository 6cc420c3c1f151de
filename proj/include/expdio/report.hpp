#pragma once

#include <string>

#include "expdio/linforms.hpp"
#include "expdio/search.hpp"
#include "expdio/theorem.hpp"

namespace expdio {

/// Structured (JSON) forms. Reals are carried as decimal strings and keys are
/// sorted, so parse(serialize(v)) re-serializes to the same bytes.
std::string to_structured(const Certificate& cert);
std::string to_structured(const BoundResult& bounds);
std::string to_structured(const TheoremReport& report);

Certificate certificate_from_structured(const std::string& text);
BoundResult bound_result_from_structured(const std::string& text);
TheoremReport theorem_report_from_structured(const std::string& text);

std::string to_human(const Certificate& cert);
std::string to_human(const BoundResult& bounds);
std::string to_human(const TheoremReport& report);

}  // namespace expdio
