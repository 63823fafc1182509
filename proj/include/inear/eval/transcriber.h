// eval/transcriber.h

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

#ifndef INEAR_EVAL_TRANSCRIBER_H_
#define INEAR_EVAL_TRANSCRIBER_H_

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "inear/core/audio_buffer.h"
#include "inear/error.h"
#include "inear/json_util.h"

namespace inear::eval {

/// Side information a transcriber may use.  Real engines ignore it; the mock
/// keys its table on utterance_id and its VAD rule on noise_dba.
struct TranscriptionContext {
  std::string utterance_id;
  double noise_dba = 0.0;
};

struct Transcription {
  std::optional<std::string> text;  // nullopt means {no_speech}

  bool no_speech() const { return !text.has_value(); }
};

/// The transcriber could not be reached or answered unusably.
class TransportError : public Error {
 public:
  TransportError(const std::string &what, int attempts)
      : Error(what), attempts_(attempts) {}
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

class Transcriber {
 public:
  virtual ~Transcriber() = default;
  /// Must be safe to call concurrently.
  virtual Transcription Transcribe(const core::AudioBuffer &audio,
                                   const std::string &language_tag,
                                   const TranscriptionContext &context) = 0;
};

struct MockConfig {
  /// utterance_id -> hypothesis.  Unknown ids yield an empty hypothesis.
  std::map<std::string, std::string> table;
  /// {no_speech} whenever context.noise_dba exceeds this.
  std::optional<double> no_speech_above_dba;
};

class MockTranscriber : public Transcriber {
 public:
  explicit MockTranscriber(MockConfig config) : config_(std::move(config)) {}
  Transcription Transcribe(const core::AudioBuffer &audio,
                           const std::string &language_tag,
                           const TranscriptionContext &context) override;

 private:
  MockConfig config_;
};

struct HttpConfig {
  std::string endpoint;  // http[s]://host[:port]/path
  int retries = 3;
  double timeout_s = 30.0;
  double backoff_s = 0.5;  // doubles after each failed attempt
  std::string auth_header = "Authorization";
  std::string token_env = "INEAR_TRANSCRIBER_TOKEN";

  void Validate(const std::string &path = "transcriber") const;
};

/// POSTs 16-bit WAV bytes to endpoint?language=<tag> and expects a JSON body
/// {"text": "..."} or {"no_speech": true}.  When the token variable is set
/// its value is sent as "<auth_header>: Bearer <token>".  Connection errors
/// and 5xx responses are retried with exponential backoff; other failures
/// throw TransportError immediately.
class HttpTranscriber : public Transcriber {
 public:
  explicit HttpTranscriber(HttpConfig config);
  Transcription Transcribe(const core::AudioBuffer &audio,
                           const std::string &language_tag,
                           const TranscriptionContext &context) override;

 private:
  HttpConfig config_;
  std::string scheme_host_port_;
  std::string path_;
};

}  // namespace inear::eval

#endif  // INEAR_EVAL_TRANSCRIBER_H_
