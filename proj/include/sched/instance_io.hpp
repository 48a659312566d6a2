#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sched/instance.hpp"

namespace sched {

/// Reads {"n": int, "times": [int | "digits", ...], "precedences": [[u, v], ...]}.
/// Throws SchedError(kMalformedInput) on bad JSON or shape, kIndexOutOfRange on
/// bad endpoints and CyclicPrecedenceError on cycles. Duplicate edges are fine.
Instance parse_instance(std::string_view text);
Instance read_instance(const std::filesystem::path& path);

/// Times that fit in 64 bits are written as numbers, larger ones as strings.
/// The precedence list is the transitive closure in sorted order.
std::string instance_to_json(const Instance& inst);
void write_instance(const std::filesystem::path& path, const Instance& inst);

/// "0,1,2" -> {0, 1, 2}. Throws SchedError(kMalformedInput).
std::vector<int> parse_index_list(std::string_view text);
std::string join_indices(const std::vector<int>& values);

}  // namespace sched
