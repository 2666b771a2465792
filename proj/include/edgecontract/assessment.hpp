#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "edgecontract/contract.hpp"
#include "edgecontract/rng.hpp"

namespace edgecontract {

/// Task difficulty level: 1 routes to small-dataset models, 2 to large ones.
enum class DifficultyLabel : int { Low = 1, High = 2 };

int to_int(DifficultyLabel label);
/// Throws DomainError for anything outside {1, 2}.
DifficultyLabel label_from_int(int value);
DifficultyLabel flipped(DifficultyLabel label);

/// Scores a task actually reaches on the small-dataset and large-dataset models.
struct RealizedPerformance {
  double score_low = 0.0;
  double score_high = 0.0;

  friend bool operator==(const RealizedPerformance&, const RealizedPerformance&) = default;
};

/// Which price the low-bundle side of the realized comparison pays.
/// Literal keeps p_H on both sides.
enum class PriceVariant { Corrected, Literal };

/// Right-hand side of the closed-form assignment inequality; label 1 iff eta2 < rhs.
/// Throws DomainError when either score is at or below perf_threshold.
double assignment_threshold(const RealizedPerformance& rp, const ContractParams& params);

/// Closed-form oracle label. Throws DomainError like assignment_threshold.
DifficultyLabel oracle_assess(const RealizedPerformance& rp, const ContractParams& params);

/// Oracle label with threshold failures routed: a failing small-model score
/// gives 2, otherwise a failing large-model score gives 1.
DifficultyLabel oracle_assess_routed(const RealizedPerformance& rp, const ContractParams& params);

/// Label 1 iff U(theta_H; score_high, p_H) < U(theta_L; score_low, p_x), ties give 2.
DifficultyLabel realized_comparison_assess(const RealizedPerformance& rp, const ContractMenu& menu,
                                           const ContractParams& params,
                                           PriceVariant variant = PriceVariant::Corrected);

/// Returns truth with probability 1 - epsilon, the other label otherwise.
DifficultyLabel noisy_human_assess(DifficultyLabel truth, double epsilon, Rng& rng);

inline constexpr double kDefaultHumanNoise = 0.1;

/// Offline labels recorded from a VLM run, `task_id,difficulty` with a header line.
class LabelReplay {
 public:
  LabelReplay() = default;
  explicit LabelReplay(std::map<std::int64_t, DifficultyLabel> labels) : labels_(std::move(labels)) {}

  static LabelReplay load(const std::filesystem::path& path);
  static LabelReplay parse(std::string_view text, std::string_view origin = "<memory>");

  /// Throws MissingLabel.
  [[nodiscard]] DifficultyLabel lookup(std::int64_t task_id) const;
  [[nodiscard]] std::size_t size() const { return labels_.size(); }

 private:
  std::map<std::int64_t, DifficultyLabel> labels_;
};

struct OracleAssessor {};
struct RealizedComparisonAssessor {
  PriceVariant variant = PriceVariant::Corrected;
};
struct NoisyHumanAssessor {
  double epsilon = kDefaultHumanNoise;
};
struct VlmReplay {
  std::shared_ptr<const LabelReplay> labels;
};
struct VlmLive {
  /// http://host:port/path
  std::string endpoint;
  std::string prompt_template;
  double timeout_s = 30.0;
};

using AssessorKind =
    std::variant<OracleAssessor, RealizedComparisonAssessor, NoisyHumanAssessor, VlmReplay, VlmLive>;

/// Outcome of a VLM query. Failures fall back to label 2 and keep the reason.
struct VlmAssessment {
  DifficultyLabel label = DifficultyLabel::High;
  bool fell_back = false;
  std::string error;
};

/// Queries a live endpoint once. Throws TransportError or MalformedResponse.
DifficultyLabel query_vlm(const VlmLive& live, std::string_view image_ref);

/// Parses a response body; throws MalformedResponse.
DifficultyLabel parse_vlm_response(std::string_view body);

/// Request body sent to a live endpoint.
std::string build_vlm_request(std::string_view prompt, std::string_view image_ref);

/// Label from a VLM source. `source` must hold VlmReplay or VlmLive.
VlmAssessment vlm_assess(std::int64_t task_id, const AssessorKind& source);

/// Opaque image reference sent for a task.
std::string image_ref_for(std::int64_t task_id);

/// Reads the prompt template file, throws IoError.
std::string load_prompt_template(const std::filesystem::path& path);

}  // namespace edgecontract
