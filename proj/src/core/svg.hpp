#pragma once

#include <span>
#include <string>
#include <vector>

#include "core/csvio.hpp"
#include "core/scenario.hpp"
#include "core/tracing.hpp"

namespace ctsim {

/// First-contact heatmap over the id-sorted population; earlier contacts
/// render darker, empty cells stay light. Static markup, no scripts.
std::string contact_matrix_svg(const ContactMatrix& matrix, std::span<const AnonymousId> ids);

/// Map panels: zone outlines plus one dot per person at the given steps,
/// colored by final label. Quarantined persons sit at their anchors.
std::string snapshots_svg(const Scenario& scenario, const std::vector<std::size_t>& quarantined,
                          std::span<const std::int64_t> steps,
                          std::span<const RiskLabel> labels);

} // namespace ctsim
