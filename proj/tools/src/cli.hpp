#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "stabcat/report.hpp"

namespace stabcat::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Format { text, jsonl };

/// 64-bit FNV-1a of the input text, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

struct ReportHeader {
  std::string command;
  std::string input;  // fixture name or file path
  std::string digest;
  std::uint64_t seed = 0;
};

void render(std::ostream& out, Format fmt, const ReportHeader& h, const std::vector<Report>& reports,
            const double* wall_ms);

/// Exit status: 0 when every row passes, 1 when a row fails or is
/// undecided, 2 on input errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stabcat::cli
