// eval/recognition.h

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

#ifndef INEAR_EVAL_RECOGNITION_H_
#define INEAR_EVAL_RECOGNITION_H_

#include <optional>
#include <string>
#include <vector>

#include "inear/channel/simulator.h"
#include "inear/dataset/corpus.h"
#include "inear/enhance/aec.h"
#include "inear/enhance/gate.h"
#include "inear/eval/transcriber.h"
#include "inear/eval/wer.h"

namespace inear::eval {

/// Signal handed to the transcriber.  kGate uses the gate compensation for
/// the scenario's ANC state; kAec is the identity without playback; kAecGate
/// runs echo cancellation before the gate.
enum class Pipeline { kOuter, kInner, kGate, kAec, kAecGate };

Pipeline ParsePipeline(const std::string &name);
std::string PipelineName(Pipeline p);

core::AudioBuffer RunPipeline(Pipeline p, const channel::MicPair &pair,
                              const channel::ScenarioSpec &scenario,
                              const channel::ChannelProfile &profile,
                              const enhance::GateConfig &gate,
                              const enhance::AecConfig &aec);

struct RecognitionConfig {
  std::vector<Pipeline> pipelines = {Pipeline::kInner};
  int repetitions = 1;
  int parallel = 1;
  std::optional<WerMode> mode;  // per-entry language default when unset
  enhance::GateConfig gate;     // compensation is replaced per ANC state
  enhance::AecConfig aec;
  channel::ChannelProfile profile = channel::ChannelProfile::Default();
  core::CalibrationRef calib;

  void Validate() const;
};

struct RecognitionRow {
  std::string phrase_id;  // manifest audio_path
  int repetition = 0;
  std::string scenario;
  double noise_dba = 0.0;
  bool anc = false;
  Pipeline pipeline = Pipeline::kInner;
  WerMode mode = WerMode::kToken;
  WerEntry wer;
  bool vad_failure = false;
};

struct RecognitionFailure {
  std::string phrase_id;
  int repetition = 0;
  std::string scenario;  // empty for audio failures
  std::string pipeline;  // empty unless the transcriber failed
  std::string stage;     // "audio", "simulate" or "transcribe"
  std::string error;
  int attempts = 0;
};

struct ConditionSummary {
  std::string scenario;
  double noise_dba = 0.0;
  bool anc = false;
  Pipeline pipeline = Pipeline::kInner;
  std::size_t rows = 0;
  std::size_t vad_failures = 0;
  std::size_t failures = 0;
  double wer = 0.0;  // pooled over scored rows
};

struct WerReport {
  std::vector<RecognitionRow> rows;  // manifest x repetition x scenario x pipeline
  std::vector<RecognitionFailure> failures;
  std::vector<ConditionSummary> conditions;  // scenario x pipeline

  std::size_t vad_failures() const;
  json_util::OrderedJson ToJson() const;
  /// phrase_id,noise_dba,anc,pipeline,wer,vad_failure; failures excluded.
  std::string ToCsv() const;
};

/// Mock table mapping every manifest entry to its own transcript.
MockConfig EchoReferences(const dataset::CorpusManifest &manifest);

/// Simulates every (entry, repetition, scenario), runs each pipeline and
/// scores the transcription.  The entry audio replaces the scenario's whisper
/// source; duration and sample rate follow the audio; the noise seed is
/// derived from the scenario seed, entry index and repetition.  {no_speech}
/// counts as a VAD failure scored as full deletion.  Unreadable audio and
/// transcriber failures are itemized and excluded from aggregates.
WerReport RunRecognitionEval(const dataset::CorpusManifest &manifest,
                             const std::vector<channel::ScenarioSpec> &scenarios,
                             const RecognitionConfig &config, Transcriber &transcriber);

}  // namespace inear::eval

#endif  // INEAR_EVAL_RECOGNITION_H_
