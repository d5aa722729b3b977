#include "doctest.h"

#include "cct/errors.hpp"
#include "cct/verification.hpp"

using namespace cct;

TEST_CASE("empty campaign gives an empty passing report") {
    const auto rep = run_campaign(CampaignSpec{});
    CHECK(rep.cases.empty());
    CHECK(rep.all_passed());
    const auto j = to_json(rep);
    CHECK(j["summary"]["total"] == 0);
    CHECK(j["cases"].empty());
}

TEST_CASE("hermiticity campaign: 20 draws per regime pass") {
    CampaignSpec spec;
    spec.campaigns = {"hermiticity"};
    const auto rep = run_campaign(spec);
    CHECK(rep.cases.size() == 60);
    CHECK(rep.all_passed());
    for (const auto& c : rep.cases) CHECK(c.observed < 1e-10);
}

TEST_CASE("reports are independent of the worker count") {
    CampaignSpec spec;
    spec.campaigns = {"closed_form", "replica"};
    spec.draws = 3;
    spec.threads = 1;
    const std::string one = to_json(run_campaign(spec)).dump();
    spec.threads = 3;
    CHECK(to_json(run_campaign(spec)).dump() == one);
    spec.seed += 1;
    CHECK(to_json(run_campaign(spec)).dump() != one);
}

TEST_CASE("cases are sorted by name") {
    CampaignSpec spec;
    spec.campaigns = {"replica", "cumulants"};
    spec.draws = 4;
    const auto rep = run_campaign(spec);
    for (std::size_t i = 1; i < rep.cases.size(); ++i) CHECK(rep.cases[i - 1].name < rep.cases[i].name);
    CHECK(rep.campaigns == std::vector<std::string>{"cumulants", "replica"});
}

TEST_CASE("zero tolerance turns inexact cases into failures") {
    CampaignSpec spec;
    spec.campaigns = {"replica"};
    spec.draws = 2;
    spec.tolerance_override = 0.0;
    const auto rep = run_campaign(spec);
    CHECK_FALSE(rep.all_passed());
    CHECK(text_summary(rep).find("FAIL replica/") != std::string::npos);
}

TEST_CASE("unknown campaigns are rejected") {
    CampaignSpec spec;
    spec.campaigns = {"no_such_campaign"};
    CHECK_THROWS_AS(run_campaign(spec), DomainError);
}

TEST_CASE("case judgement") {
    CaseResult c;
    c.criterion = Criterion::Match;
    c.observed = 2.1;
    c.expected = 2.0;
    c.tolerance = 0.2;
    c.judge();
    CHECK(c.pass);
    c.criterion = Criterion::AtMost;
    c.judge();
    CHECK_FALSE(c.pass);
    c.criterion = Criterion::GreaterThan;
    c.judge();
    CHECK(c.pass);
    c.error = "boom";
    c.judge();
    CHECK_FALSE(c.pass);
}
