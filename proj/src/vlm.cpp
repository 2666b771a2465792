#include <httplib.h>

#include <json.hpp>
#include <string>

#include "edgecontract/assessment.hpp"
#include "edgecontract/errors.hpp"

namespace edgecontract {

namespace {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint split_endpoint(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw TransportError("VLM endpoint needs a scheme: " + url);
  if (url.compare(0, scheme_end, "http") != 0) {
    throw TransportError("only plain http VLM endpoints are supported: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

std::string build_vlm_request(std::string_view prompt, std::string_view image_ref) {
  nlohmann::json body;
  body["prompt"] = std::string(prompt);
  body["image_ref"] = std::string(image_ref);
  return body.dump();
}

DifficultyLabel parse_vlm_response(std::string_view body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedResponse(std::string("VLM response is not JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("difficulty")) {
    throw MalformedResponse("VLM response has no difficulty field");
  }
  const auto& field = doc["difficulty"];
  if (!field.is_number_integer()) throw MalformedResponse("VLM difficulty must be an integer");
  const auto value = field.get<long long>();
  if (value != 1 && value != 2) {
    throw MalformedResponse("VLM difficulty must be 1 or 2, got " + std::to_string(value));
  }
  if (doc.contains("reasoning") && !doc["reasoning"].is_string()) {
    throw MalformedResponse("VLM reasoning must be a string");
  }
  return label_from_int(static_cast<int>(value));
}

DifficultyLabel query_vlm(const VlmLive& live, std::string_view image_ref) {
  if (live.endpoint.empty()) throw TransportError("VLM endpoint is not configured");
  const Endpoint endpoint = split_endpoint(live.endpoint);
  httplib::Client client(endpoint.origin);
  const auto seconds = static_cast<time_t>(live.timeout_s);
  const auto micros = static_cast<time_t>((live.timeout_s - static_cast<double>(seconds)) * 1e6);
  client.set_connection_timeout(seconds, micros);
  client.set_read_timeout(seconds, micros);

  auto response = client.Post(endpoint.path, build_vlm_request(live.prompt_template, image_ref),
                              "application/json");
  if (!response) {
    throw TransportError("VLM request to " + live.endpoint + " failed: " + httplib::to_string(response.error()));
  }
  if (response->status != 200) {
    throw TransportError("VLM endpoint " + live.endpoint + " returned HTTP " + std::to_string(response->status));
  }
  return parse_vlm_response(response->body);
}

}  // namespace edgecontract
