// verification.hpp: seeded cross-validation campaigns and their report
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace cct {

// How a case is judged:
//   Match:        |observed - expected| <= tolerance
//   AtMost:       observed <= tolerance
//   GreaterThan:  observed > expected
enum class Criterion { Match, AtMost, GreaterThan };

struct CaseResult {
    std::string name;
    std::string anchor; // the relation being checked
    nlohmann::json params = nlohmann::json::object();
    double observed = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    Criterion criterion = Criterion::AtMost;
    bool pass = false;
    std::string error; // set when the case threw instead of producing a value

    void judge();
};

// A place where a reference closed form and the computed solution disagree.
// Recorded for the reader; not counted as pass or fail.
struct Discrepancy {
    std::string name;
    std::string description;
    nlohmann::json params = nlohmann::json::object();
    double observed = 0.0;
    double reference = 0.0;
};

struct CampaignSpec {
    std::vector<std::string> campaigns; // empty = nothing to run
    std::uint64_t seed = 20240611;
    int draws = 0;                      // 0 = campaign default
    std::optional<double> tolerance_override;
    unsigned threads = 0;               // 0 = CCT_NUM_THREADS / hardware
};

struct VerificationReport {
    std::uint64_t seed = 0;
    std::vector<std::string> campaigns;
    std::vector<CaseResult> cases;         // sorted by name
    std::vector<Discrepancy> discrepancies; // sorted by name
    int passed = 0;
    int failed = 0;

    bool all_passed() const { return failed == 0; }
};

const std::vector<std::string>& available_campaigns();

// Throws DomainError for unknown campaign names.
VerificationReport run_campaign(const CampaignSpec& spec);

nlohmann::json to_json(const VerificationReport& report);
std::string text_summary(const VerificationReport& report);

} // namespace cct
