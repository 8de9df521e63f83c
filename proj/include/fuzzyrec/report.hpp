#pragma once

#include <array>
#include <span>
#include <string>

#include "fuzzyrec/ensemble.hpp"
#include "fuzzyrec/wordlist.hpp"

namespace fuzzyrec {

// Five display cells for one segment, top to bottom.
using QuintileColumn = std::array<std::string, 5>;

// Largest-remainder apportionment of the option tallies onto five cells.
// Cells stack by count descending then lexicographic; remainder ties go to
// the lexicographically smaller option.
QuintileColumn to_quintiles(const FuzzySegment& seg);

std::string html_escape(const std::string& text);

// Self-contained HTML (inline styles, no external assets): per cognate set
// the alignment table with the gold proto row when present, the rendered
// fuzzy summary, and the quintile grid with uncertain segments flagged.
// Byte-identical for identical inputs.
std::string emit_report(const Wordlist& wl,
                        std::span<const FuzzyReconstruction> frs,
                        const std::string& title);

}  // namespace fuzzyrec
