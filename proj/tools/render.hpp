#pragma once

#include <iosfwd>

#include "hypolog/io.hpp"

namespace hypolog::cli {

// Writes an SVG plot for a gradient-curve, decay-trajectory or cmlsi-table
// CSV. The plot kind comes from the "# command=" header line when present,
// else from the columns. Throws UsageError for empty tables and missing
// columns.
void render_svg(const CsvTable& table, std::ostream& os);

} // namespace hypolog::cli
