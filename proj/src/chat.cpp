#include "ovigo/chat.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "ovigo/json_util.hpp"
#include "ovigo/text.hpp"

namespace ovigo {

std::string request_digest(const std::vector<ChatMessage>& messages) {
  std::string canonical;
  for (const ChatMessage& m : messages) {
    canonical += m.role;
    canonical += '\x1f';
    canonical += m.content;
    canonical += '\x1e';
  }
  return fnv1a64_hex(canonical);
}

ScriptedChatClient ScriptedChatClient::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open transcript " + path.string());
  std::map<std::string, std::string> responses;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const Json j = parse_json_text(line, path.string() + ":" + std::to_string(lineno));
    const std::string digest =
        require_field(j, "request_digest", path.string()).get<std::string>();
    responses[digest] =
        require_field(j, "response_text", path.string()).get<std::string>();
  }
  return ScriptedChatClient(std::move(responses));
}

std::string ScriptedChatClient::send(const std::vector<ChatMessage>& messages) {
  const std::string digest = request_digest(messages);
  auto it = responses_.find(digest);
  if (it == responses_.end()) {
    std::string head = messages.empty() ? "" : messages.back().content.substr(0, 120);
    throw Error(Errc::UnexpectedRequest,
                "transcript has no response for digest " + digest + " (request tail: \"" +
                    head + "\")");
  }
  return it->second;
}

std::string RecordingChatClient::send(const std::vector<ChatMessage>& messages) {
  const std::string digest = request_digest(messages);
  const std::string response = oracle_(messages);
  auto it = responses_.find(digest);
  if (it != responses_.end() && it->second != response) {
    throw Error(Errc::UnexpectedRequest,
                "oracle produced two different responses for digest " + digest);
  }
  responses_[digest] = response;
  return response;
}

void RecordingChatClient::write_transcript(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write transcript " + path.string());
  for (const auto& [digest, response] : responses_) {
    const Json j{{"request_digest", digest}, {"response_text", response}};
    out << j.dump() << '\n';
  }
}

HttpChatClient::HttpChatClient(std::string endpoint, std::string api_key, std::string model,
                               double temperature, int max_retries)
    : endpoint_(std::move(endpoint)),
      api_key_(std::move(api_key)),
      model_(std::move(model)),
      temperature_(temperature),
      max_retries_(max_retries) {
  if (endpoint_.empty()) {
    throw Error(Errc::ConfigError, "chat endpoint is empty (set OVIGO_LLM_ENDPOINT)");
  }
}

HttpChatClient HttpChatClient::from_env(double temperature, int max_retries) {
  const char* endpoint = std::getenv("OVIGO_LLM_ENDPOINT");
  const char* key = std::getenv("OVIGO_LLM_API_KEY");
  const char* model = std::getenv("OVIGO_LLM_MODEL");
  return HttpChatClient(endpoint ? endpoint : "", key ? key : "",
                        model ? model : "gpt-4o-mini", temperature, max_retries);
}

std::string HttpChatClient::send(const std::vector<ChatMessage>& messages) {
  // Split the endpoint URL into scheme://host[:port] and path.
  std::string base = endpoint_;
  std::string path = "/v1/chat/completions";
  const std::size_t scheme_end = base.find("://");
  if (scheme_end != std::string::npos) {
    const std::size_t slash = base.find('/', scheme_end + 3);
    if (slash != std::string::npos) {
      path = base.substr(slash);
      base = base.substr(0, slash);
    }
  }

  Json body;
  body["model"] = model_;
  body["temperature"] = temperature_;
  body["messages"] = Json::array();
  for (const ChatMessage& m : messages) {
    body["messages"].push_back(Json{{"role", m.role}, {"content", m.content}});
  }
  const std::string payload = body.dump();

  std::string last_error;
  for (int attempt = 0; attempt <= max_retries_; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(500 << (attempt - 1)));
    }
    httplib::Client client(base);
    client.set_read_timeout(120, 0);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
    auto res = client.Post(path, headers, payload, "application/json");
    if (!res) {
      last_error = "connection failure: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw Error(Errc::TransportError,
                  "chat endpoint returned HTTP " + std::to_string(res->status) + ": " +
                      res->body.substr(0, 200));
    }
    const Json j = parse_json_text(res->body, "chat response");
    const Json& choices = require_field(j, "choices", "chat response");
    if (!choices.is_array() || choices.empty()) {
      throw Error(Errc::TransportError, "chat response has no choices");
    }
    const Json& message = require_field(choices[0], "message", "chat response");
    return require_field(message, "content", "chat response").get<std::string>();
  }
  throw Error(Errc::TransportError,
              "chat request failed after " + std::to_string(max_retries_ + 1) +
                  " attempts (" + last_error + ")");
}

}  // namespace ovigo
