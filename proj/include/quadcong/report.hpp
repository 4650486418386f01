#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "quadcong/theorems.hpp"

namespace quadcong {

enum class Format { Human, Json, Csv };

std::string_view format_name(Format f) noexcept;
Format parse_format(std::string_view name);

// Field order is part of the schema:
// p, d, chi, theorem11_ok, theorem12_vmin, degree_P, method, k_used, elapsed_ms
// A saturated theorem12_vmin is written as k_used.

std::string record_to_json(const VerificationRecord& rec);
/// Inverse of record_to_json. Throws Errc::Precondition on malformed input.
VerificationRecord record_from_json(std::string_view line);

std::string csv_header();
std::string record_to_csv(const VerificationRecord& rec);

std::string human_header();
/// One aligned row; a passing record carries the token "OK", a failing one "FAIL".
std::string record_to_human(const VerificationRecord& rec);

/// One record, with a header line first when `with_header` is set and the
/// format has one.
std::string emit_record(const VerificationRecord& rec, Format fmt, bool with_header = false);
/// All records; CSV and human headers are written once.
void emit_records(std::ostream& os, std::span<const VerificationRecord> records, Format fmt);

} // namespace quadcong
