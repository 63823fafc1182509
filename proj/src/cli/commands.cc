// cli/commands.cc

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

#include "inear/cli/commands.h"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <memory>
#include <sstream>

#include "inear/channel/simulator.h"
#include "inear/core/parallel.h"
#include "inear/core/wav.h"
#include "inear/eval/snr.h"
#include "inear/eval/transcriber.h"

#ifndef INEAR_VERSION
#define INEAR_VERSION "0.0.0"
#endif

namespace inear::cli {

namespace fs = std::filesystem;
using json_util::OrderedJson;

namespace {

std::string UtcNow() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string Sha256Hex(const std::string &bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
    throw InvariantError("sha256 failed");
  static const char *kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

std::string CommandDir(const RunConfig &c, const std::string &command) {
  const fs::path dir = fs::path(c.output_dir) / command;
  fs::create_directories(dir);
  return dir.string();
}

std::string Fixed(std::optional<double> v, int digits = 2) {
  if (!v) return "n/a";
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << *v;
  return os.str();
}

OrderedJson OptionalNumber(std::optional<double> v) {
  return v ? OrderedJson(*v) : OrderedJson(nullptr);
}

core::AudioBuffer FirstChannel(const core::AudioBuffer &x) {
  return x.channel_count() > 1 ? x.ChannelBuffer(0) : x;
}

double MaxAbsDiff(const core::AudioBuffer &a, const core::AudioBuffer &b) {
  if (a.frames() != b.frames() || a.sample_rate() != b.sample_rate())
    return INFINITY;
  double m = 0.0;
  const auto x = a.samples();
  const auto y = b.samples();
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

double PeakAbs(const core::AudioBuffer &a) {
  double m = 0.0;
  for (double v : a.samples()) m = std::max(m, std::abs(v));
  return m;
}

void Summarize(const std::vector<std::string> &items, const std::string &what,
               Warnings &w) {
  constexpr std::size_t kShown = 10;
  for (std::size_t i = 0; i < items.size() && i < kShown; ++i) w.push_back(items[i]);
  if (items.size() > kShown)
    w.push_back(std::to_string(items.size() - kShown) + " more " + what + " not shown");
}

}  // namespace

RunConfig ResolveConfig(const Overrides &o) {
  RunConfig c;
  if (!o.config_path.empty()) c = LoadRunConfig(o.config_path);
  if (o.out) c.output_dir = *o.out;
  if (o.seed) c.rng_seed = *o.seed;
  if (o.parallel) c.parallel = *o.parallel;
  if (o.transcriber) {
    if (*o.transcriber == "mock") {
      c.transcriber.kind = TranscriberSettings::Kind::kMock;
    } else if (*o.transcriber == "http") {
      c.transcriber.kind = TranscriberSettings::Kind::kHttp;
    } else {
      throw ConfigError("--transcriber",
                        "expected mock or http, got \"" + *o.transcriber + "\"");
    }
  }
  if (o.endpoint) c.transcriber.http.endpoint = *o.endpoint;
  c.Validate();
  return c;
}

void WriteRunRecord(const std::string &dir, const RunConfig &config,
                    const std::string &command, const std::vector<std::string> &argv) {
  const std::string resolved = json_util::Dump(RunConfigToJson(config));
  core::WriteFileBytes((fs::path(dir) / "resolved_config.json").string(), resolved);
  OrderedJson m;
  m["command"] = command;
  m["argv"] = argv;
  m["version"] = INEAR_VERSION;
  m["timestamp_utc"] = UtcNow();
  m["resolved_config_sha256"] = Sha256Hex(resolved);
  core::WriteFileBytes((fs::path(dir) / "run_metadata.json").string(), json_util::Dump(m));
}

Warnings CmdSimulate(const RunConfig &config, std::ostream &out) {
  const auto scenarios = EffectiveScenarios(config);
  if (scenarios.empty()) throw ConfigError("scenarios", "no scenarios to simulate");
  const std::string dir = CommandDir(config, "simulate");
  std::vector<OrderedJson> sidecars(scenarios.size());
  core::ParallelFor(scenarios.size(), config.parallel, [&](std::size_t i) {
    const auto &s = scenarios[i];
    const auto pair = channel::SimulateScenario(s, config.profile, config.calibration);
    channel::WriteMicPair((fs::path(dir) / s.name).string(), s, pair, config.calibration);
    sidecars[i] = channel::GroundTruthSidecar(s, pair, config.calibration);
  });
  for (std::size_t i = 0; i < scenarios.size(); ++i)
    out << scenarios[i].name << ": " << (fs::path(dir) / scenarios[i].name).string()
        << ".wav\n";
  return {};
}

Warnings CmdEnhance(const RunConfig &config, const std::string &input,
                    const std::optional<std::string> &playback, std::ostream &out) {
  Warnings warnings;
  const core::AudioBuffer x = core::ReadWav(input);
  if (x.channel_count() < 2)
    throw InvalidArgument(input + ": expected a stereo WAV (channel 0 inner, 1 outer)");
  const core::AudioBuffer raw_inner = x.ChannelBuffer(0);
  const core::AudioBuffer outer = x.ChannelBuffer(1);

  std::optional<channel::ScenarioSpec> spec;
  const fs::path sidecar = fs::path(input).replace_extension(".json");
  if (fs::exists(sidecar)) {
    const auto j = json_util::Parse(core::ReadFileBytes(sidecar.string()), sidecar.string());
    if (j.is_object() && j.contains("spec"))
      spec = channel::ScenarioFromJson(j.at("spec"), sidecar.string() + ":spec",
                                       sidecar.parent_path().string());
  }
  const bool anc_on = spec ? spec->anc_on : config.gate.anc_on;

  core::AudioBuffer inner = raw_inner;
  if (playback) {
    const core::AudioBuffer pb = FirstChannel(core::ReadWav(*playback));
    if (pb.sample_rate() != inner.sample_rate())
      throw InvalidArgument(*playback + ": sample rate differs from the input");
    inner = enhance::EchoCancel(inner, pb, config.aec).output;
  }
  const enhance::GateConfig gate = GateFor(config, anc_on);
  const auto result = enhance::DoubleNoiseGate(inner, outer, gate);

  const std::string dir = CommandDir(config, "enhance");
  const std::string stem = fs::path(input).stem().string();
  core::WriteWav((fs::path(dir) / (stem + ".enhanced.wav")).string(), result.output,
                 core::WavFormat::kFloat32);
  core::WriteFileBytes((fs::path(dir) / (stem + ".mask.csv")).string(), result.mask.ToCsv());

  std::optional<double> snr_in, snr_out;
  if (spec) {
    const auto pair = channel::SimulateScenario(*spec, config.profile, config.calibration);
    const double tol = 1e-4 * std::max(1.0, PeakAbs(raw_inner));
    if (MaxAbsDiff(pair.inner, raw_inner) > tol) {
      warnings.push_back(sidecar.string() +
                         ": ground truth does not reproduce the input under this "
                         "config; SNR gain not computed");
    } else {
      const auto &whisper = pair.ground_truth.clean_whisper_at_inner;
      const core::AudioBuffer rest = pair.inner - whisper;
      const eval::Band full{0.0, inner.sample_rate() / 2.0};
      snr_in = eval::SnrDb(whisper, rest, full, config.calibration);
      snr_out = eval::SnrDb(enhance::ApplyGateMask(whisper, result.mask, gate),
                            enhance::ApplyGateMask(rest, result.mask, gate), full,
                            config.calibration);
    }
  }
  std::optional<double> gain;
  if (snr_in && snr_out) gain = *snr_out - *snr_in;

  OrderedJson report;
  report["input"] = input;
  report["anc_on"] = anc_on;
  report["echo_cancelled"] = playback.has_value();
  report["open_fraction"] = result.mask.OpenFraction();
  report["snr_in_db"] = OptionalNumber(snr_in);
  report["snr_out_db"] = OptionalNumber(snr_out);
  report["snr_gain_db"] = OptionalNumber(gain);
  core::WriteFileBytes((fs::path(dir) / (stem + ".report.json")).string(),
                       json_util::Dump(report));
  out << stem << ": open fraction " << Fixed(result.mask.OpenFraction(), 3)
      << ", SNR gain " << Fixed(gain) << " dB\n";
  return warnings;
}

Warnings CmdEvents(const RunConfig &config, const std::string &input, std::ostream &out) {
  Warnings warnings;
  const auto &cmp = config.events.comparator;
  const core::AudioBuffer x = FirstChannel(core::ReadWav(input));
  if (x.empty()) throw InvalidArgument(input + ": no samples");
  const auto env = events::ExtractSubaudible(x, cmp.band_low_hz, cmp.band_high_hz);
  const auto onsets = events::DetectOnsets(env, cmp);
  std::vector<events::RhythmMatch> matches;
  for (const auto &p : config.events.patterns) {
    auto m = events::MatchRhythm(onsets, p);
    matches.insert(matches.end(), m.begin(), m.end());
  }
  std::stable_sort(matches.begin(), matches.end(),
                   [](const auto &a, const auto &b) { return a.start < b.start; });

  events::PulseEstimate pulse;
  if (env.duration() >= config.events.heart_rate_window) {
    pulse = events::EstimateHeartRate(env, config.events.heart_rate_window);
  } else {
    warnings.push_back(input + ": shorter than the heart-rate window (" +
                       Fixed(config.events.heart_rate_window, 1) + " s); no pulse estimate");
  }
  std::string pulse_csv = events::PulseCsv(pulse);
  if (!pulse.bpm) pulse_csv = pulse_csv.substr(0, pulse_csv.find('\n') + 1);

  const std::string dir = CommandDir(config, "events");
  const std::string stem = fs::path(input).stem().string();
  core::WriteFileBytes((fs::path(dir) / (stem + ".onsets.csv")).string(),
                       events::OnsetsCsv(onsets));
  core::WriteFileBytes((fs::path(dir) / (stem + ".matches.csv")).string(),
                       events::MatchesCsv(matches));
  core::WriteFileBytes((fs::path(dir) / (stem + ".pulse.csv")).string(), pulse_csv);
  out << stem << ": " << onsets.size() << " onsets, " << matches.size()
      << " rhythm matches, pulse " << Fixed(pulse.bpm, 1) << " bpm\n";
  return warnings;
}

Warnings CmdBcfilter(const RunConfig &config, const std::optional<std::string> &manifest,
                     std::ostream &out) {
  const std::string path = manifest.value_or(config.corpus.manifest);
  if (path.empty())
    throw ConfigError("corpus.manifest", "no manifest given (config or argument)");
  const auto m = dataset::LoadManifest(path);
  const std::string dir = CommandDir(config, "bcfilter");
  const auto report = dataset::BcSimulateCorpus(m, config.corpus.bc_sim, dir,
                                                config.parallel, config.profile);
  std::vector<std::string> items;
  for (const auto &f : report.files)
    if (!f.ok()) items.push_back(f.audio_path + ": " + f.error);
  Warnings warnings;
  Summarize(items, "failed files", warnings);
  out << "bcfilter: " << (report.files.size() - items.size()) << " written, "
      << items.size() << " failed\n";
  return warnings;
}

Warnings CmdEval(const RunConfig &config, std::ostream &out) {
  Warnings warnings;
  const auto scenarios = EffectiveScenarios(config);
  const bool have_corpus = !config.corpus.manifest.empty();
  if (scenarios.empty())
    throw ConfigError("scenarios", "eval needs at least one scenario");
  const std::string dir = CommandDir(config, "eval");

  // Acoustic SNR per scenario.
  const int sr = scenarios.front().sample_rate;
  eval::SnrReport snr;
  eval::SnrReport spectra;
  snr.bands = eval::ReportBands(sr);
  spectra.bands = eval::ThirdOctaveBands(sr);
  snr.conditions.resize(scenarios.size());
  spectra.conditions.resize(scenarios.size());
  core::ParallelFor(scenarios.size(), config.parallel, [&](std::size_t i) {
    const auto pair =
        channel::SimulateScenario(scenarios[i], config.profile, config.calibration);
    snr.conditions[i] = eval::MeasureCondition(scenarios[i].name, pair, snr.bands,
                                               snr.low_band, config.calibration);
    spectra.conditions[i] = eval::MeasureCondition(scenarios[i].name, pair, spectra.bands,
                                                   spectra.low_band, config.calibration);
  });
  auto low_snr = [&](const std::string &name) {
    for (const auto &c : snr.conditions)
      if (c.label == name) return c.inner_snr_low_db;
    return std::optional<double>{};
  };
  for (const auto &[a, b] : config.eval.comparisons) {
    eval::Improvement imp{a, b, {}};
    const auto sa = low_snr(a), sb = low_snr(b);
    if (sa && sb) imp.db = eval::SnrImprovement(*sa, *sb);
    snr.comparisons.push_back(imp);
  }
  core::WriteFileBytes((fs::path(dir) / "snr_report.json").string(),
                       json_util::Dump(snr.ToJson()));
  core::WriteFileBytes((fs::path(dir) / "spectra.csv").string(), spectra.SpectraCsv());
  for (const auto &c : snr.conditions)
    out << c.label << ": inner SNR<1.5k " << Fixed(c.inner_snr_low_db) << " dB, outer "
        << Fixed(c.outer_snr_low_db) << " dB\n";
  for (const auto &imp : snr.comparisons)
    out << imp.a << " vs " << imp.b << ": " << Fixed(imp.db) << " dB\n";

  // Recognition over the corpus.
  if (!have_corpus) return warnings;
  const auto manifest = dataset::LoadManifest(config.corpus.manifest);
  std::vector<std::string> missing;
  for (const auto &issue : manifest.missing)
    missing.push_back(config.corpus.manifest + ":" + std::to_string(issue.line) + ": " +
                      issue.audio_path + ": " + issue.message);
  Summarize(missing, "missing files", warnings);

  std::unique_ptr<eval::Transcriber> transcriber;
  const auto &ts = config.transcriber;
  if (ts.kind == TranscriberSettings::Kind::kHttp) {
    if (ts.http.endpoint.empty()) {
      warnings.push_back("transcriber.endpoint is not set; recognition skipped");
      return warnings;
    }
    transcriber = std::make_unique<eval::HttpTranscriber>(ts.http);
  } else {
    eval::MockConfig mc;
    if (ts.echo_references) mc = eval::EchoReferences(manifest);
    for (const auto &[k, v] : ts.table) mc.table[k] = v;
    mc.no_speech_above_dba = ts.no_speech_above_dba;
    transcriber = std::make_unique<eval::MockTranscriber>(mc);
  }

  eval::RecognitionConfig rc;
  rc.pipelines = config.eval.pipelines;
  rc.repetitions = config.eval.repetitions;
  rc.parallel = config.parallel;
  rc.mode = config.eval.wer_mode;
  rc.gate = GateFor(config, true);
  rc.aec = config.aec;
  rc.profile = config.profile;
  rc.calib = config.calibration;
  const auto wer = eval::RunRecognitionEval(manifest, scenarios, rc, *transcriber);
  core::WriteFileBytes((fs::path(dir) / "wer_report.json").string(),
                       json_util::Dump(wer.ToJson()));
  core::WriteFileBytes((fs::path(dir) / "wer.csv").string(), wer.ToCsv());

  std::vector<std::string> failed;
  for (const auto &f : wer.failures) {
    std::string where = f.phrase_id + " rep " + std::to_string(f.repetition);
    if (!f.scenario.empty()) where += " " + f.scenario;
    if (!f.pipeline.empty()) where += "/" + f.pipeline;
    std::string msg = where + ": " + f.stage + " failed: " + f.error;
    if (f.attempts > 0) msg += " (" + std::to_string(f.attempts) + " attempts)";
    failed.push_back(msg);
  }
  Summarize(failed, "recognition failures", warnings);
  for (const auto &c : wer.conditions)
    out << c.scenario << "/" << eval::PipelineName(c.pipeline) << ": WER " << Fixed(c.wer, 3)
        << " over " << c.rows << " rows, " << c.vad_failures << " VAD failures\n";
  return warnings;
}

}  // namespace inear::cli
