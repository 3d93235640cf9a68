#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tritime/fieldcheck.hpp"

namespace tritime::report {

inline constexpr const char* kReportVersion = "1.0.0";

struct Claim {
    std::string id;
    std::string paper_anchor;
    bool verdict = false;
    double max_residual = 0.0;  // non-finite values serialize as null
    std::string convention;
    std::string notes;
};

struct Report {
    std::string version = kReportVersion;
    std::uint64_t seed = 0;
    std::vector<Claim> claims;

    bool all_pass() const;
    const Claim* find(const std::string& id) const;
};

Claim from_residual(const fieldcheck::ResidualReport& r);

/// One claim per id in first-seen order: verdicts and-ed, residuals maxed, the
/// convention kept when every case agrees.
std::vector<Claim> aggregate(const std::vector<fieldcheck::ResidualReport>& reports, const std::string& scope = {});

/// Pretty-printed JSON with a trailing newline; key order is fixed.
std::string to_json(const Report& r);
/// Throws ConfigError on malformed input.
Report from_json(const std::string& text);

/// The JSON schema the report validates against.
const std::string& schema_text();

}  // namespace tritime::report
