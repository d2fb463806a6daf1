#pragma once

#include <string>

#include "fraclap/schauder.hpp"

namespace fraclap {

// 17-significant-digit decimal form (round-trips any double).
std::string format17(double v);

// Atomic artifact write: temp file in the same directory, then rename.
void atomic_write(const std::string& path, const std::string& content);

// CSV with exactly the columns probe_id,scale,lhs,rhs,ratio,note (LF line
// endings, '.' decimal point, UTF-8).
std::string report_to_csv(const VerificationReport& r);
// JSON mirror of the VerificationReport record.
std::string report_to_json(const VerificationReport& r);
VerificationReport report_from_json(const std::string& text);

void emit_report(const VerificationReport& r, const std::string& format,
                 const std::string& path);

}  // namespace fraclap
