#include "edgecontract/assessment.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "edgecontract/errors.hpp"

namespace edgecontract {

int to_int(DifficultyLabel label) { return static_cast<int>(label); }

DifficultyLabel label_from_int(int value) {
  if (value == 1) return DifficultyLabel::Low;
  if (value == 2) return DifficultyLabel::High;
  throw DomainError("difficulty label must be 1 or 2, got " + std::to_string(value));
}

DifficultyLabel flipped(DifficultyLabel label) {
  return label == DifficultyLabel::Low ? DifficultyLabel::High : DifficultyLabel::Low;
}

double assignment_threshold(const RealizedPerformance& rp, const ContractParams& params) {
  if (!(rp.score_low > params.perf_threshold) || !(rp.score_high > params.perf_threshold)) {
    throw DomainError("realized scores must exceed perf_threshold");
  }
  if (!params.admissible()) {
    throw AdmissibilityError("assignment threshold needs admissible contract parameters");
  }
  const double gap_low = rp.score_low - params.perf_threshold;
  const double gap_high = rp.score_high - params.perf_threshold;
  const double spread = params.theta_high - params.theta_low;
  const double ratio = (params.theta_high - params.beta_high * params.theta_high) /
                       (params.theta_low - params.beta_high * params.theta_high) * (gap_low / gap_high);
  const double power = params.theta_high / spread;
  const double drift = params.eta3 / (params.beta_low * (params.eta1 - params.eta3)) -
                       params.eta3 / spread * (rp.score_high - rp.score_low);
  // Evaluated in log space so extreme score ratios saturate instead of overflowing mid-way.
  return std::exp(power * std::log(ratio) + drift - std::log(gap_low));
}

DifficultyLabel oracle_assess(const RealizedPerformance& rp, const ContractParams& params) {
  return params.eta2 < assignment_threshold(rp, params) ? DifficultyLabel::Low : DifficultyLabel::High;
}

DifficultyLabel oracle_assess_routed(const RealizedPerformance& rp, const ContractParams& params) {
  if (!(rp.score_low > params.perf_threshold)) return DifficultyLabel::High;
  if (!(rp.score_high > params.perf_threshold)) return DifficultyLabel::Low;
  return oracle_assess(rp, params);
}

DifficultyLabel realized_comparison_assess(const RealizedPerformance& rp, const ContractMenu& menu,
                                           const ContractParams& params, PriceVariant variant) {
  const double price_low = variant == PriceVariant::Corrected ? menu.low.price : menu.high.price;
  const double as_high = teleoperator_utility(params.theta_high, rp.score_high, menu.high.price, params);
  const double as_low = teleoperator_utility(params.theta_low, rp.score_low, price_low, params);
  return as_high < as_low ? DifficultyLabel::Low : DifficultyLabel::High;
}

DifficultyLabel noisy_human_assess(DifficultyLabel truth, double epsilon, Rng& rng) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw InvalidParams("human noise epsilon must lie in [0, 1]");
  }
  return rng.bernoulli(epsilon) ? flipped(truth) : truth;
}

LabelReplay LabelReplay::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open label file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), path.string());
}

LabelReplay LabelReplay::parse(std::string_view text, std::string_view origin) {
  std::map<std::int64_t, DifficultyLabel> labels;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      // Header line is required and carries no data.
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    auto where = [&] { return std::string(origin) + ":" + std::to_string(line_no); };
    if (comma == std::string::npos) throw MalformedResponse("expected task_id,difficulty at " + where());
    try {
      std::size_t used = 0;
      const std::string id_text = line.substr(0, comma);
      const std::string label_text = line.substr(comma + 1);
      const std::int64_t id = std::stoll(id_text, &used);
      if (used != id_text.size()) throw std::invalid_argument(id_text);
      const int value = std::stoi(label_text, &used);
      if (used != label_text.size()) throw std::invalid_argument(label_text);
      labels[id] = label_from_int(value);
    } catch (const DomainError& e) {
      throw MalformedResponse(std::string(e.what()) + " at " + where());
    } catch (const std::logic_error&) {
      throw MalformedResponse("unparseable label row at " + where());
    }
  }
  if (!header_seen) throw MalformedResponse("label file " + std::string(origin) + " has no header line");
  return LabelReplay(std::move(labels));
}

DifficultyLabel LabelReplay::lookup(std::int64_t task_id) const {
  const auto it = labels_.find(task_id);
  if (it == labels_.end()) throw MissingLabel("no recorded label for task " + std::to_string(task_id));
  return it->second;
}

std::string image_ref_for(std::int64_t task_id) { return "task-" + std::to_string(task_id); }

std::string load_prompt_template(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open prompt template " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

VlmAssessment vlm_assess(std::int64_t task_id, const AssessorKind& source) {
  VlmAssessment out;
  try {
    if (const auto* replay = std::get_if<VlmReplay>(&source)) {
      if (!replay->labels) throw MissingLabel("replay source has no label table");
      out.label = replay->labels->lookup(task_id);
    } else if (const auto* live = std::get_if<VlmLive>(&source)) {
      out.label = query_vlm(*live, image_ref_for(task_id));
    } else {
      throw InvalidParams("vlm_assess needs a VLM replay or live source");
    }
  } catch (const MissingLabel& e) {
    out = {DifficultyLabel::High, true, e.what()};
  } catch (const TransportError& e) {
    out = {DifficultyLabel::High, true, e.what()};
  } catch (const MalformedResponse& e) {
    out = {DifficultyLabel::High, true, e.what()};
  }
  return out;
}

}  // namespace edgecontract
