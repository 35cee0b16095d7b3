#pragma once

namespace wn {

// Shared vocabulary for refinement-ladder diagnoses.
enum class Trend { Converged, Diverging, Inconclusive };

const char* trend_name(Trend t);

}  // namespace wn
