#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ovigo/error.hpp"

namespace ovigo {

struct ChatMessage {
  std::string role;  // system | user | assistant
  std::string content;
};

// Stable 64-bit digest of a request, used to key scripted transcripts.
std::string request_digest(const std::vector<ChatMessage>& messages);

class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual std::string send(const std::vector<ChatMessage>& messages) = 0;
};

// Replays a transcript of {request_digest, response_text} entries (JSON
// Lines). Any request whose digest is not in the transcript throws
// UnexpectedRequest: scripted runs never invent responses.
class ScriptedChatClient final : public ChatClient {
 public:
  explicit ScriptedChatClient(std::map<std::string, std::string> responses)
      : responses_(std::move(responses)) {}
  static ScriptedChatClient from_file(const std::filesystem::path& path);

  std::string send(const std::vector<ChatMessage>& messages) override;

 private:
  std::map<std::string, std::string> responses_;
};

// Wraps an oracle callback and records every exchange, producing a transcript
// that ScriptedChatClient can replay byte-for-byte.
class RecordingChatClient final : public ChatClient {
 public:
  using Oracle = std::function<std::string(const std::vector<ChatMessage>&)>;
  explicit RecordingChatClient(Oracle oracle) : oracle_(std::move(oracle)) {}

  std::string send(const std::vector<ChatMessage>& messages) override;
  void write_transcript(const std::filesystem::path& path) const;
  const std::map<std::string, std::string>& responses() const { return responses_; }

 private:
  Oracle oracle_;
  std::map<std::string, std::string> responses_;
};

// OpenAI-compatible chat-completions client. Transport failures (connect
// errors, 429, 5xx) are retried with exponential backoff up to max_retries;
// other HTTP errors fail immediately.
class HttpChatClient final : public ChatClient {
 public:
  HttpChatClient(std::string endpoint, std::string api_key, std::string model,
                 double temperature = 0.0, int max_retries = 3);
  // Reads OVIGO_LLM_ENDPOINT, OVIGO_LLM_API_KEY, OVIGO_LLM_MODEL.
  static HttpChatClient from_env(double temperature = 0.0, int max_retries = 3);

  std::string send(const std::vector<ChatMessage>& messages) override;

 private:
  std::string endpoint_;
  std::string api_key_;
  std::string model_;
  double temperature_;
  int max_retries_;
};

}  // namespace ovigo
