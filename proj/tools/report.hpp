#ifndef ZH_TOOLS_REPORT_HPP
#define ZH_TOOLS_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace zh::cli {

/// Machine-readable outcome of one verification task. status is pass iff
/// every detail record passes; resource-limit marks tasks stopped by an
/// enumeration budget.
struct VerificationReport {
    enum class Status { pass, fail, resource_limit };

    std::string task;
    std::map<std::string, std::string> params;
    Status status = Status::pass;

    struct Detail {
        std::string equation; // identity id this record checks, e.g. "eq13"
        std::map<std::string, std::string> inputs;
        std::string expected;
        std::string actual;
        bool exact = true; // exact integer/series check vs toleranced numeric
        bool pass = true;
    };
    std::vector<Detail> details;
    std::int64_t elapsed_ms = 0;

    /// Sorts details canonically and derives status from them (an existing
    /// resource-limit status is kept).
    void finalize();
};

std::string to_string(VerificationReport::Status s);

nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const std::vector<VerificationReport>& reports);
VerificationReport report_from_json(const nlohmann::json& j);

std::string to_text(const VerificationReport& report);
std::string to_text(const std::vector<VerificationReport>& reports);

/// 0 pass, 1 mathematical failure, 3 resource limit.
int exit_code(const std::vector<VerificationReport>& reports);

} // namespace zh::cli

#endif
