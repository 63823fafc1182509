// eval/recognition.cc

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

#include "inear/eval/recognition.h"

#include <set>
#include <sstream>

#include "inear/channel/generators.h"
#include "inear/core/parallel.h"
#include "inear/core/wav.h"

namespace inear::eval {

namespace {

std::string CsvField(const std::string &s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct JobResult {
  std::vector<RecognitionRow> rows;
  std::vector<RecognitionFailure> failures;
};

}  // namespace

Pipeline ParsePipeline(const std::string &name) {
  if (name == "outer") return Pipeline::kOuter;
  if (name == "inner") return Pipeline::kInner;
  if (name == "gate") return Pipeline::kGate;
  if (name == "aec") return Pipeline::kAec;
  if (name == "aec_gate") return Pipeline::kAecGate;
  throw InvalidArgument("unknown pipeline \"" + name +
                        "\" (outer|inner|gate|aec|aec_gate)");
}

std::string PipelineName(Pipeline p) {
  switch (p) {
    case Pipeline::kOuter: return "outer";
    case Pipeline::kInner: return "inner";
    case Pipeline::kGate: return "gate";
    case Pipeline::kAec: return "aec";
    case Pipeline::kAecGate: return "aec_gate";
  }
  return "inner";
}

core::AudioBuffer RunPipeline(Pipeline p, const channel::MicPair &pair,
                              const channel::ScenarioSpec &scenario,
                              const channel::ChannelProfile &profile,
                              const enhance::GateConfig &gate,
                              const enhance::AecConfig &aec) {
  auto cancel = [&] {
    if (!scenario.playback) return pair.inner;
    return enhance::EchoCancel(pair.inner, pair.playback, aec).output;
  };
  auto gated = [&](const core::AudioBuffer &inner) {
    enhance::GateConfig g = gate;
    g.compensation = enhance::GateConfig::CompensationFor(profile, scenario.anc_on);
    return enhance::DoubleNoiseGate(inner, pair.outer, g).output;
  };
  switch (p) {
    case Pipeline::kOuter: return pair.outer;
    case Pipeline::kInner: return pair.inner;
    case Pipeline::kGate: return gated(pair.inner);
    case Pipeline::kAec: return cancel();
    case Pipeline::kAecGate: return gated(cancel());
  }
  return pair.inner;
}

void RecognitionConfig::Validate() const {
  if (pipelines.empty()) throw ConfigError("eval.pipelines", "must be non-empty");
  if (repetitions < 1) throw ConfigError("eval.repetitions", "must be >= 1");
  if (parallel < 1) throw ConfigError("eval.parallel", "must be >= 1");
  gate.Validate();
  aec.Validate();
  profile.Validate();
}

std::size_t WerReport::vad_failures() const {
  std::size_t n = 0;
  for (const auto &r : rows) n += r.vad_failure;
  return n;
}

json_util::OrderedJson WerReport::ToJson() const {
  json_util::OrderedJson j;
  j["vad_failures"] = vad_failures();
  auto jc = json_util::OrderedJson::array();
  for (const auto &c : conditions) {
    json_util::OrderedJson e;
    e["scenario"] = c.scenario;
    e["noise_dba"] = c.noise_dba;
    e["anc"] = c.anc;
    e["pipeline"] = PipelineName(c.pipeline);
    e["rows"] = c.rows;
    e["vad_failures"] = c.vad_failures;
    e["failures"] = c.failures;
    e["wer"] = c.wer;
    jc.push_back(e);
  }
  j["conditions"] = jc;
  auto jr = json_util::OrderedJson::array();
  for (const auto &r : rows) {
    json_util::OrderedJson e;
    e["phrase_id"] = r.phrase_id;
    e["repetition"] = r.repetition;
    e["scenario"] = r.scenario;
    e["noise_dba"] = r.noise_dba;
    e["anc"] = r.anc;
    e["pipeline"] = PipelineName(r.pipeline);
    e["mode"] = WerModeName(r.mode);
    e["reference"] = r.wer.reference;
    e["hypothesis"] = r.wer.hypothesis;
    e["substitutions"] = r.wer.substitutions;
    e["deletions"] = r.wer.deletions;
    e["insertions"] = r.wer.insertions;
    e["reference_length"] = r.wer.reference_length;
    e["wer"] = r.wer.rate;
    e["vad_failure"] = r.vad_failure;
    jr.push_back(e);
  }
  j["rows"] = jr;
  auto jf = json_util::OrderedJson::array();
  for (const auto &f : failures) {
    json_util::OrderedJson e;
    e["phrase_id"] = f.phrase_id;
    e["repetition"] = f.repetition;
    e["scenario"] = f.scenario;
    e["pipeline"] = f.pipeline;
    e["stage"] = f.stage;
    e["error"] = f.error;
    e["attempts"] = f.attempts;
    jf.push_back(e);
  }
  j["failures"] = jf;
  return j;
}

std::string WerReport::ToCsv() const {
  std::ostringstream os;
  os.precision(10);
  os << "phrase_id,noise_dba,anc,pipeline,wer,vad_failure\n";
  for (const auto &r : rows)
    os << CsvField(r.phrase_id) << ',' << r.noise_dba << ',' << (r.anc ? 1 : 0) << ','
       << PipelineName(r.pipeline) << ',' << r.wer.rate << ',' << (r.vad_failure ? 1 : 0)
       << '\n';
  return os.str();
}

MockConfig EchoReferences(const dataset::CorpusManifest &manifest) {
  MockConfig c;
  for (const auto &e : manifest.entries) c.table[e.audio_path] = e.transcript;
  return c;
}

WerReport RunRecognitionEval(const dataset::CorpusManifest &manifest,
                             const std::vector<channel::ScenarioSpec> &scenarios,
                             const RecognitionConfig &config, Transcriber &transcriber) {
  config.Validate();
  std::set<std::string> names;
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    const std::string path = json_util::Index("scenarios", s);
    scenarios[s].Validate(path);
    if (!names.insert(scenarios[s].name).second)
      throw ConfigError(json_util::Join(path, "name"),
                        "duplicate scenario name \"" + scenarios[s].name + "\"");
  }

  WerReport report;
  const std::size_t n_entries = manifest.entries.size();
  std::vector<std::optional<core::AudioBuffer>> audio(n_entries);
  std::vector<std::string> audio_error(n_entries);
  for (std::size_t i = 0; i < n_entries; ++i) {
    try {
      core::AudioBuffer a = core::ReadWav(manifest.Resolve(manifest.entries[i]));
      if (a.channel_count() > 1) a = a.ChannelBuffer(0);
      if (a.empty()) throw IoError("empty audio");
      audio[i] = std::move(a);
    } catch (const Error &err) {
      audio_error[i] = err.what();
    }
  }

  const std::size_t reps = static_cast<std::size_t>(config.repetitions);
  const std::size_t n_jobs = n_entries * reps * scenarios.size();
  std::vector<JobResult> results(n_jobs);
  core::ParallelFor(n_jobs, config.parallel, [&](std::size_t job) {
    const std::size_t s = job % scenarios.size();
    const std::size_t r = (job / scenarios.size()) % reps;
    const std::size_t i = job / (scenarios.size() * reps);
    if (!audio[i]) return;
    const auto &entry = manifest.entries[i];
    JobResult &out = results[job];
    channel::ScenarioSpec spec = scenarios[s];
    spec.whisper_source = channel::SourceSpec::FromBuffer(*audio[i]);
    spec.whisper_source.wav_path = entry.audio_path;
    spec.duration = audio[i]->duration();
    spec.sample_rate = audio[i]->sample_rate();
    spec.rng_seed = channel::DeriveSeed(channel::DeriveSeed(spec.rng_seed, i), r);

    channel::MicPair pair;
    try {
      pair = channel::SimulateScenario(spec, config.profile, config.calib);
    } catch (const Error &err) {
      out.failures.push_back({entry.audio_path, static_cast<int>(r), spec.name, "",
                              "simulate", err.what(), 0});
      return;
    }
    const WerMode mode = config.mode.value_or(DefaultWerMode(entry.language_tag));
    for (Pipeline p : config.pipelines) {
      const core::AudioBuffer signal =
          RunPipeline(p, pair, spec, config.profile, config.gate, config.aec);
      Transcription t;
      try {
        t = transcriber.Transcribe(signal, entry.language_tag,
                                   {entry.audio_path, spec.noise_level});
      } catch (const TransportError &err) {
        out.failures.push_back({entry.audio_path, static_cast<int>(r), spec.name,
                                PipelineName(p), "transcribe", err.what(),
                                err.attempts()});
        continue;
      }
      RecognitionRow row;
      row.phrase_id = entry.audio_path;
      row.repetition = static_cast<int>(r);
      row.scenario = spec.name;
      row.noise_dba = spec.noise_level;
      row.anc = spec.anc_on;
      row.pipeline = p;
      row.mode = mode;
      row.vad_failure = t.no_speech();
      row.wer = WordErrorRate(entry.transcript, t.text.value_or(""), mode);
      out.rows.push_back(std::move(row));
    }
  });

  for (std::size_t i = 0; i < n_entries; ++i) {
    for (std::size_t r = 0; r < reps; ++r) {
      if (!audio[i]) {
        report.failures.push_back({manifest.entries[i].audio_path, static_cast<int>(r),
                                   "", "", "audio", audio_error[i], 0});
        continue;
      }
      for (std::size_t s = 0; s < scenarios.size(); ++s) {
        JobResult &res = results[(i * reps + r) * scenarios.size() + s];
        for (auto &row : res.rows) report.rows.push_back(std::move(row));
        for (auto &f : res.failures) report.failures.push_back(std::move(f));
      }
    }
  }

  for (const auto &spec : scenarios) {
    for (Pipeline p : config.pipelines) {
      ConditionSummary c;
      c.scenario = spec.name;
      c.noise_dba = spec.noise_level;
      c.anc = spec.anc_on;
      c.pipeline = p;
      std::vector<WerEntry> scored;
      for (const auto &row : report.rows) {
        if (row.scenario != spec.name || row.pipeline != p) continue;
        ++c.rows;
        c.vad_failures += row.vad_failure;
        scored.push_back(row.wer);
      }
      for (const auto &f : report.failures)
        if (f.stage != "audio" && f.scenario == spec.name &&
            (f.pipeline.empty() || f.pipeline == PipelineName(p)))
          ++c.failures;
      c.wer = PooledRate(scored);
      report.conditions.push_back(c);
    }
  }
  return report;
}

}  // namespace inear::eval
