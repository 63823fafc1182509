// eval/transcriber.cc

// Copyright 2026  The inear Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "inear/eval/transcriber.h"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <regex>
#include <thread>

#include "httplib.h"
#include "inear/core/wav.h"

namespace inear::eval {

Transcription MockTranscriber::Transcribe(const core::AudioBuffer &,
                                          const std::string &,
                                          const TranscriptionContext &context) {
  if (config_.no_speech_above_dba && context.noise_dba > *config_.no_speech_above_dba)
    return {};
  const auto it = config_.table.find(context.utterance_id);
  return {it == config_.table.end() ? std::string() : it->second};
}

void HttpConfig::Validate(const std::string &path) const {
  static const std::regex kUrl(R"(^https?://[^/\s]+(/\S*)?$)");
  if (!std::regex_match(endpoint, kUrl))
    throw ConfigError(json_util::Join(path, "endpoint"),
                      "expected http://host[:port]/path, got \"" + endpoint + "\"");
  if (retries < 0) throw ConfigError(json_util::Join(path, "retries"), "must be >= 0");
  if (!(timeout_s > 0)) throw ConfigError(json_util::Join(path, "timeout"), "must be > 0");
  if (!(backoff_s >= 0)) throw ConfigError(json_util::Join(path, "backoff"), "must be >= 0");
}

HttpTranscriber::HttpTranscriber(HttpConfig config) : config_(std::move(config)) {
  config_.Validate();
  static const std::regex kSplit(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  std::regex_match(config_.endpoint, m, kSplit);
  scheme_host_port_ = m[1].str();
  path_ = m[2].matched ? m[2].str() : "/";
}

Transcription HttpTranscriber::Transcribe(const core::AudioBuffer &audio,
                                          const std::string &language_tag,
                                          const TranscriptionContext &) {
  const std::string body = core::EncodeWav(audio, core::WavFormat::kPcm16);
  const std::string target =
      path_ + (path_.find('?') == std::string::npos ? "?" : "&") +
      "language=" + httplib::detail::encode_query_param(language_tag);
  httplib::Headers headers;
  if (const char *token = std::getenv(config_.token_env.c_str()); token && *token)
    headers.emplace(config_.auth_header, std::string("Bearer ") + token);

  const auto whole = static_cast<time_t>(config_.timeout_s);
  const auto micros =
      static_cast<time_t>(std::lround((config_.timeout_s - whole) * 1e6));
  std::string last_error;
  double backoff = config_.backoff_s;
  const int attempts = config_.retries + 1;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(whole, micros);
    client.set_read_timeout(whole, micros);
    client.set_write_timeout(whole, micros);
    auto res = client.Post(target, headers, body, "audio/wav");
    bool retryable = true;
    if (!res) {
      last_error = "transport: " + httplib::to_string(res.error());
    } else if (res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
    } else if (res->status != 200) {
      last_error = "HTTP " + std::to_string(res->status);
      retryable = false;
    } else {
      try {
        const auto j = json_util::Json::parse(res->body);
        if (j.is_object() && j.value("no_speech", false)) return {};
        if (j.is_object() && j.contains("text") && j["text"].is_string())
          return {j["text"].get<std::string>()};
        last_error = "response lacks \"text\"";
      } catch (const json_util::Json::exception &e) {
        last_error = std::string("malformed response: ") + e.what();
      }
      retryable = false;
    }
    if (!retryable) throw TransportError(last_error, attempt);
    if (attempt < attempts) {
      std::this_thread::sleep_for(std::chrono::duration<double>(backoff));
      backoff *= 2;
    }
  }
  throw TransportError(last_error, attempts);
}

}  // namespace inear::eval
