#pragma once

// Plain-text schedule format:
//
//   n t rounds
//   <space-separated element ids of comparator 1>
//   ...
//   --                      (separates consecutive rounds)
//   ...
//
// Lines starting with '#' are comments and are skipped on read.

#include <filesystem>
#include <string>
#include <string_view>

#include "tsort/core.hpp"

namespace tsort {

std::string to_text(const Schedule& schedule);

/// Throws parse_error on malformed input and the Schedule::validate()
/// errors on out-of-range or over-wide comparators.
Schedule parse_schedule(std::string_view text);

void write_schedule(const std::filesystem::path& path, const Schedule& schedule,
                    std::string_view comment = {});
Schedule read_schedule(const std::filesystem::path& path);

}  // namespace tsort
