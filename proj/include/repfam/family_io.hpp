#pragma once

// Family text format:
//
//   # comment
//   n m k p
//   e1 e2 ... ep [w <decimal>]      (m lines)
//
// A line holding only "-" (optionally followed by a weight) is the empty set.
// Either every member line carries a weight or none does. Writers sort the
// elements of each line ascending. Set-system files used by the partial cover
// solver put "*" in the p column and allow members of any size.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "repfam/element_set.hpp"
#include "repfam/family.hpp"

namespace repfam {

struct FamilyFile {
    Universe universe;
    std::size_t k = 0;
    WeightedFamily family;

    friend bool operator==(const FamilyFile&, const FamilyFile&) = default;
};

struct SetSystemFile {
    Universe universe;
    std::size_t k = 0;
    std::vector<ElementSet> sets;
};

/// Throws ParseError naming the offending line.
FamilyFile read_family(std::istream& in);
FamilyFile read_family_file(const std::filesystem::path& path);
void write_family(std::ostream& out, const FamilyFile& file);
std::string format_family(const FamilyFile& file);

/// Accepts a fixed p (every set must have that size) or "*".
SetSystemFile read_set_system(std::istream& in);
SetSystemFile read_set_system_file(const std::filesystem::path& path);
void write_set_system(std::ostream& out, const SetSystemFile& file);

/// Shortest decimal text that parses back to the same double.
std::string format_weight(double w);

}  // namespace repfam
