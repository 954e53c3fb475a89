#pragma once
// Text ingestion: transaction files (one set per line) and incidence files
// ("vertex: neighbors").  Lines whose first non-blank character is '#' and
// blank lines are skipped.  Item ids are non-negative decimal integers below
// 2^61 - 1 (the hash field order); anything else is a ParseError carrying
// the 1-based line and column of the offending token.

#include <cstddef>
#include <istream>
#include <optional>
#include <vector>

#include "cssample/graphs.hpp"
#include "cssample/subset.hpp"

namespace css {

// One BSet per content line (sorted, deduplicated).  When b_max is given, a
// line whose distinct-item count exceeds it raises IngestError.
std::vector<BSet> read_transactions(std::istream& in,
                                    std::optional<std::size_t> b_max = {});

// "u: v1 v2 ..." per content line.  Duplicate vertex lines, self-loops, and
// (when given) degrees above max_degree raise IngestError with the line
// number; the returned stream satisfies the incidence invariants.
IncidenceStream read_incidence(std::istream& in,
                               std::optional<std::size_t> max_degree = {});

}  // namespace css
