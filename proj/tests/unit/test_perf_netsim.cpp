#include <doctest.h>

#include <cmath>

#include "edgecontract/errors.hpp"
#include "edgecontract/netsim.hpp"
#include "edgecontract/perf_model.hpp"

using namespace edgecontract;

TEST_SUITE("perf_model") {
  TEST_CASE("type frequencies follow the mixture") {
    const ContractParams p;
    const PerfModelConfig cfg;
    Rng rng(99);
    int high = 0;
    double low_sum = 0.0;
    double high_sum = 0.0;
    int high_type = 0;
    for (int k = 0; k < 10000; ++k) {
      const AigcTask t = sample_task(k, cfg, p, rng);
      if (t.latent_type == TaskType::High) {
        ++high;
        ++high_type;
        low_sum += t.realized.score_low;
        high_sum += t.realized.score_high;
      }
    }
    CHECK(std::abs(high / 10000.0 - 0.6) <= 0.01);
    CHECK(high_sum / high_type > low_sum / high_type);

    ContractParams all_high;
    all_high.beta_low = 0.0;
    all_high.beta_high = 1.0;
    for (int k = 0; k < 100; ++k) CHECK(sample_task(k, cfg, all_high, rng).latent_type == TaskType::High);
  }

  TEST_CASE("score ranges") {
    const PerfModelConfig cfg;
    Rng rng(3);
    for (int k = 0; k < 1000; ++k) {
      const RealizedPerformance l = realized_scores(TaskType::Low, cfg, rng);
      CHECK(l.score_low >= 1.45);
      CHECK(l.score_low <= 1.60);
      CHECK(l.score_high >= 1.55);
      CHECK(l.score_high <= 1.75);
      const RealizedPerformance h = realized_scores(TaskType::High, cfg, rng);
      CHECK(h.score_low >= 1.28);
      CHECK(h.score_low <= 1.42);
    }
    PerfModelConfig point;
    point.score_low_easy = {1.5, 1.5};
    point.score_high = {1.6, 1.6};
    const RealizedPerformance r = realized_scores(TaskType::Low, point, rng);
    CHECK(r.score_low == 1.5);
    CHECK(r.score_high == 1.6);
  }

  TEST_CASE("task population is reproducible") {
    const ContractParams p;
    const PerfModelConfig cfg;
    Rng a(11);
    Rng b(11);
    const auto ta = sample_tasks(200, 5, cfg, p, a);
    const auto tb = sample_tasks(200, 5, cfg, p, b);
    REQUIRE(ta.size() == tb.size());
    for (std::size_t k = 0; k < ta.size(); ++k) {
      CHECK(ta[k].realized.score_low == tb[k].realized.score_low);
      CHECK(ta[k].realized.score_high == tb[k].realized.score_high);
      CHECK(ta[k].gateway_id == tb[k].gateway_id);
      CHECK(ta[k].gateway_id < 5);
      CHECK(ta[k].compute_demand == cfg.compute_demand);
      CHECK(ta[k].payload_bits == cfg.payload_bits);
      CHECK_FALSE(ta[k].assessed.has_value());
    }
  }

  TEST_CASE("labels are assigned once") {
    AigcTask t;
    assign_label(t, DifficultyLabel::Low);
    CHECK_THROWS_AS(assign_label(t, DifficultyLabel::High), std::logic_error);
  }

  TEST_CASE("invalid intervals are rejected") {
    PerfModelConfig cfg;
    cfg.score_high = {1.7, 1.6};
    CHECK_THROWS_AS(cfg.validate(ContractParams{}), ConfigError);
    PerfModelConfig below;
    below.score_low_easy = {1.2, 1.5};
    CHECK_THROWS_AS(below.validate(ContractParams{}), ConfigError);
    PerfModelConfig hard;
    hard.score_low_hard = {1.1, 1.4};
    CHECK_NOTHROW(hard.validate(ContractParams{}));
  }
}

TEST_SUITE("netsim") {
  TEST_CASE("minimal topology") {
    TopologyConfig cfg;
    cfg.num_servers = 1;
    cfg.num_gateways = 1;
    Rng rng(1);
    const Topology t = build_topology(cfg, PerfModelConfig{}, ContractParams{}, rng);
    CHECK(t.servers().size() == 1);
    CHECK(t.links().size() == 1);
    CHECK(t.route(0, 0).size() == 1);
  }

  TEST_CASE("sampled ranges and model split") {
    const TopologyConfig cfg;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      Rng rng(seed);
      const Topology t = build_topology(cfg, PerfModelConfig{}, ContractParams{}, rng);
      int small = 0;
      for (const auto& s : t.servers()) {
        CHECK(s.capacity >= 1.0 / 0.28326);
        CHECK(s.capacity <= 1.0 / 0.11737);
        small += s.model_class == ModelClass::Small;
      }
      CHECK(small == 12);
      CHECK(t.links().size() == 150);
      for (const auto& l : t.links()) {
        CHECK(l.prop_delay >= 0.001);
        CHECK(l.prop_delay <= 0.003);
        CHECK(l.bandwidth >= 5e6);
        CHECK(l.bandwidth <= 100e6);
      }
    }
  }

  TEST_CASE("nonpositive counts") {
    TopologyConfig cfg;
    cfg.num_servers = 0;
    Rng rng(1);
    CHECK_THROWS_AS(build_topology(cfg, PerfModelConfig{}, ContractParams{}, rng), ConfigError);
  }

  TEST_CASE("transmission and computation time") {
    AigcTask t;
    t.payload_bits = 1e6;
    t.compute_demand = 1.0;
    const Link l{0, 0, 0.002, 10e6};
    CHECK(transmission_time(t, std::span<const Link>(&l, 1)) == doctest::Approx(0.204).epsilon(1e-15));
    const Link two[2] = {l, l};
    CHECK(transmission_time(t, two) == 2.0 * transmission_time(t, std::span<const Link>(&l, 1)));
    AigcTask empty = t;
    empty.payload_bits = 0.0;
    CHECK(transmission_time(empty, std::span<const Link>(&l, 1)) == doctest::Approx(0.004));
    const Link faster{0, 0, 0.002, 20e6};
    CHECK(transmission_time(t, std::span<const Link>(&faster, 1)) < transmission_time(t, std::span<const Link>(&l, 1)));

    CHECK(computation_time(t, {0, ModelClass::Small, 1.0 / 0.11737}) == doctest::Approx(0.11737).epsilon(1e-14));
    CHECK(computation_time(t, {0, ModelClass::Small, 1.0 / 0.28326}) == doctest::Approx(0.28326).epsilon(1e-14));
    AigcTask idle = t;
    idle.compute_demand = 0.0;
    CHECK(computation_time(idle, {0, ModelClass::Small, 2.0}) == 0.0);
  }

  TEST_CASE("label to model class") {
    CHECK(required_class(DifficultyLabel::Low) == ModelClass::Small);
    CHECK(required_class(DifficultyLabel::High) == ModelClass::Large);
    AigcTask t;
    t.realized = {1.4, 1.7};
    CHECK(realized_score_on(t, ModelClass::Small) == 1.4);
    CHECK(realized_score_on(t, ModelClass::Large) == 1.7);
  }
}
