#include <doctest.h>

#include <bit>
#include <cmath>
#include <json.hpp>

#include "edgecontract/assessment.hpp"
#include "edgecontract/contract.hpp"
#include "edgecontract/errors.hpp"
#include "edgecontract/verify.hpp"

using namespace edgecontract;

TEST_SUITE("assessment") {
  TEST_CASE("threshold at the two worked points") {
    const ContractParams p;
    CHECK(assignment_threshold({1.5, 1.5}, p) == doctest::Approx(839.7769440999353).epsilon(1e-12));
    CHECK(oracle_assess({1.5, 1.5}, p) == DifficultyLabel::Low);
    CHECK(assignment_threshold({1.35, 1.70}, p) == doctest::Approx(1.1910061026845176).epsilon(1e-12));
    CHECK(oracle_assess({1.35, 1.70}, p) == DifficultyLabel::High);
  }

  TEST_CASE("scores at the threshold are outside the domain") {
    const ContractParams p;
    CHECK_THROWS_AS(oracle_assess({1.3, 1.5}, p), DomainError);
    CHECK_THROWS_AS(oracle_assess({1.5, 1.3}, p), DomainError);
    CHECK(oracle_assess_routed({1.3, 1.5}, p) == DifficultyLabel::High);
    CHECK(oracle_assess_routed({1.5, 1.2}, p) == DifficultyLabel::Low);
  }

  TEST_CASE("labels are bit-identical on recomputation") {
    const ContractParams p;
    const LabelGrid a = assessment_grid(p, 1.3, 2.3, 50);
    const LabelGrid b = assessment_grid(p, 1.3, 2.3, 50);
    CHECK(a.labels == b.labels);
    for (std::size_t k = 0; k < a.threshold.size(); ++k) CHECK(std::bit_cast<std::uint64_t>(a.threshold[k]) ==
                                                                std::bit_cast<std::uint64_t>(b.threshold[k]));
  }

  TEST_CASE("island check rejects a stray cell") {
    LabelGrid g;
    g.axis = {1.0, 2.0, 3.0};
    g.labels.assign(9, DifficultyLabel::High);
    CHECK(label_grid_island_free(g));
    g.labels[3 * 1 + 1] = DifficultyLabel::Low;
    CHECK_FALSE(label_grid_island_free(g));
    g.labels.assign(9, DifficultyLabel::High);
    g.labels[3 * 2 + 0] = DifficultyLabel::Low;
    CHECK(label_grid_island_free(g));
  }

  TEST_CASE("realized comparison") {
    const ContractParams p;
    const ContractMenu m = solve_contract(p);
    const double u_high = teleoperator_utility(p.theta_high, 1.5, m.high.price, p);
    const double u_low = teleoperator_utility(p.theta_low, 1.5, m.low.price, p);
    CHECK(u_high == doctest::Approx(0.35135881734708807).epsilon(1e-12));
    CHECK(u_low == doctest::Approx(0.8532511995534025).epsilon(1e-12));
    CHECK(realized_comparison_assess({1.5, 1.5}, m, p) == DifficultyLabel::Low);
    CHECK(realized_comparison_assess({1.5, 1.2}, m, p) == DifficultyLabel::Low);

    ContractParams tie = p;
    tie.theta_high = tie.theta_low;
    const ContractMenu same{m.low, m.low};
    CHECK(realized_comparison_assess({1.5, 1.5}, same, tie, PriceVariant::Corrected) == DifficultyLabel::High);
  }

  TEST_CASE("human noise") {
    Rng rng(5);
    for (int k = 0; k < 100; ++k) {
      CHECK(noisy_human_assess(DifficultyLabel::Low, 0.0, rng) == DifficultyLabel::Low);
      CHECK(noisy_human_assess(DifficultyLabel::High, 0.0, rng) == DifficultyLabel::High);
      CHECK(noisy_human_assess(DifficultyLabel::Low, 1.0, rng) == DifficultyLabel::High);
    }
    int flips = 0;
    Rng fixed(2024);
    for (int k = 0; k < 10000; ++k) flips += noisy_human_assess(DifficultyLabel::Low, 0.1, fixed) == DifficultyLabel::High;
    CHECK(std::abs(flips / 10000.0 - 0.1) <= 0.01);
    CHECK_THROWS_AS(noisy_human_assess(DifficultyLabel::Low, 1.5, rng), InvalidParams);
  }

  TEST_CASE("label codes") {
    CHECK(to_int(DifficultyLabel::Low) == 1);
    CHECK(label_from_int(2) == DifficultyLabel::High);
    CHECK_THROWS_AS(label_from_int(3), DomainError);
    CHECK(flipped(DifficultyLabel::Low) == DifficultyLabel::High);
  }

  TEST_CASE("replay labels") {
    const auto replay = std::make_shared<const LabelReplay>(LabelReplay::parse("task_id,difficulty\n42,2\n3,1\n"));
    CHECK(replay->size() == 2);
    const AssessorKind source = VlmReplay{replay};
    CHECK(vlm_assess(42, source).label == DifficultyLabel::High);
    CHECK(vlm_assess(3, source).label == DifficultyLabel::Low);
    const VlmAssessment miss = vlm_assess(7, source);
    CHECK(miss.label == DifficultyLabel::High);
    CHECK(miss.fell_back);
    CHECK(!miss.error.empty());
    CHECK_THROWS_AS(static_cast<void>(replay->lookup(7)), MissingLabel);

    CHECK_THROWS_AS(LabelReplay::parse("task_id,difficulty\n1,3\n"), MalformedResponse);
    CHECK_THROWS_AS(LabelReplay::parse("task_id,difficulty\nx,1\n"), MalformedResponse);
    CHECK_THROWS_AS(LabelReplay::parse("task_id,difficulty\n5\n"), MalformedResponse);
    CHECK(LabelReplay::parse("1,2\n").size() == 0);
  }

  TEST_CASE("wire protocol") {
    CHECK(parse_vlm_response(R"({"difficulty": 1, "reasoning": "dim but clean"})") == DifficultyLabel::Low);
    CHECK(parse_vlm_response(R"({"difficulty": 2})") == DifficultyLabel::High);
    CHECK_THROWS_AS(parse_vlm_response(R"({"difficulty": 3})"), MalformedResponse);
    CHECK_THROWS_AS(parse_vlm_response(R"({"difficulty": "1"})"), MalformedResponse);
    CHECK_THROWS_AS(parse_vlm_response(R"({"difficulty": 1, "reasoning": 4})"), MalformedResponse);
    CHECK_THROWS_AS(parse_vlm_response("not json"), MalformedResponse);
    const auto req = nlohmann::json::parse(build_vlm_request("p", "task-9"));
    CHECK(req["prompt"] == "p");
    CHECK(req["image_ref"] == "task-9");
    CHECK(image_ref_for(9) == "task-9");
  }

  TEST_CASE("unreachable live endpoint falls back") {
    const AssessorKind live = VlmLive{"http://127.0.0.1:1/assess", "prompt", 0.5};
    const VlmAssessment a = vlm_assess(1, live);
    CHECK(a.fell_back);
    CHECK(a.label == DifficultyLabel::High);
  }
}
