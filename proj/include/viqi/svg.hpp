#pragma once

#include "viqi/clustering.hpp"
#include "viqi/ingestion.hpp"

#include <string>

namespace viqi {

/// Static picture of the first clustering round: one rectangle per field,
/// one scope-of-density circle per field, stroke colour per cluster and a
/// dashed grey style for noise. A trace with no levels yields rectangles
/// only. Throws ValidationError when the trace's first-round items are not
/// exactly the layout's fields.
///
/// Proximity is distance divided by an alignment score, so a circle radius
/// in pixels is eps times the field's mean alignment score over its aligned
/// partners.
[[nodiscard]] std::string render_svg(const InterfaceLayout& layout, const HierarchyTrace& trace);

} // namespace viqi
