// SPDX-License-Identifier: Apache-2.0
//
// csivitals - WiFi CSI vital-sign simulation and estimation toolkit
// Copyright (C) 2026 The csivitals authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "csivitals/cli.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "csivitals/channel.hpp"
#include "csivitals/dsp.hpp"
#include "csivitals/errors.hpp"
#include "csivitals/eval.hpp"
#include "csivitals/io.hpp"
#include "csivitals/scenario.hpp"
#include "csivitals/streaming.hpp"

namespace csivitals {

namespace {

struct PipelineFlags {
  std::optional<int> hampel_window;
  std::optional<double> hampel_nsigma;
  std::optional<int> butterworth_order;
  std::vector<double> breath_band;
  std::vector<double> heart_band;
  std::optional<double> fft_window;
  std::optional<int> zero_pad;
  std::optional<double> min_confidence;
  std::optional<int> antenna;
  bool no_harmonic_guard = false;
  std::optional<double> threshold;
  std::optional<double> update_interval;
  std::string format = "text";

  StreamConfig stream_config() const {
    StreamConfig sc;
    PipelineConfig &pc = sc.pipeline;
    if (hampel_window)
      pc.hampel_window = *hampel_window;
    if (hampel_nsigma)
      pc.hampel_nsigma = *hampel_nsigma;
    if (butterworth_order)
      pc.butterworth_order = *butterworth_order;
    if (!breath_band.empty())
      pc.breath_band = {breath_band.at(0), breath_band.at(1)};
    if (!heart_band.empty())
      pc.heart_band = {heart_band.at(0), heart_band.at(1)};
    if (zero_pad)
      pc.zero_pad = *zero_pad;
    if (min_confidence)
      pc.min_confidence = *min_confidence;
    if (antenna)
      pc.antenna = *antenna;
    pc.harmonic_guard = !no_harmonic_guard;
    // The accumulation threshold and the FFT window are the same span unless
    // both are given.
    if (fft_window)
      pc.fft_window = *fft_window;
    else if (threshold)
      pc.fft_window = *threshold;
    sc.threshold = threshold ? *threshold : pc.fft_window;
    if (update_interval)
      sc.update_interval = *update_interval;
    return sc;
  }
};

void add_pipeline_flags(CLI::App &app, PipelineFlags &f) {
  app.add_option("--hampel-window", f.hampel_window, "Hampel window in samples (odd; default 1 s)");
  app.add_option("--hampel-nsigma", f.hampel_nsigma, "Hampel threshold in scaled MADs (default 3)");
  app.add_option("--butterworth-order", f.butterworth_order, "Butterworth prototype order (default 4)");
  app.add_option("--breath-band", f.breath_band, "Breathing band LOW,HIGH in Hz (default 0.25,0.5)")
      ->expected(2)
      ->delimiter(',');
  app.add_option("--heart-band", f.heart_band, "Heart band LOW,HIGH in Hz (default 1,2)")->expected(2)->delimiter(',');
  app.add_option("--fft-window", f.fft_window, "Analysis window in seconds (default 40)");
  app.add_option("--zero-pad", f.zero_pad, "FFT zero-padding factor (default 4)");
  app.add_option("--min-confidence", f.min_confidence, "Peak-to-median ratio for a confident estimate (default 8)");
  app.add_option("--antenna", f.antenna, "Receive antenna to use (default: best stream)");
  app.add_flag("--no-harmonic-guard", f.no_harmonic_guard, "Allow heart peaks on breathing harmonics");
  app.add_option("--threshold", f.threshold, "Seconds of data before the first estimate (default: FFT window)");
  app.add_option("--update-interval", f.update_interval, "Seconds between streaming estimates (default 1)");
  app.add_option("--format", f.format, "Output format")->check(CLI::IsMember({"text", "csv"}));
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string estimate_line(const VitalEstimate &e) {
  return fixed(e.window_end, 3) + ", " + fixed(e.breath_bpm, 3) + ", " + fixed(e.heart_bpm, 3) + ", " +
         fixed(e.breath_confidence, 3) + ", " + fixed(e.heart_confidence, 3);
}

void print_estimate(std::ostream &out, const VitalEstimate &e, const std::string &format) {
  if (format == "csv") {
    out << "t_end,breath_bpm,heart_bpm,conf_b,conf_h,breath_confident,heart_confident,antenna,subcarrier\n"
        << fixed(e.window_end, 3) << ',' << fixed(e.breath_bpm, 3) << ',' << fixed(e.heart_bpm, 3) << ','
        << fixed(e.breath_confidence, 3) << ',' << fixed(e.heart_confidence, 3) << ',' << e.breath_confident << ','
        << e.heart_confident << ',' << e.antenna << ',' << e.subcarrier << '\n';
    return;
  }
  auto flag = [](bool ok) { return ok ? "" : "  LOW CONFIDENCE"; };
  out << "window   " << fixed(e.window_start, 3) << " - " << fixed(e.window_end, 3) << " s\n"
      << "stream   antenna " << e.antenna << ", subcarrier " << e.subcarrier << '\n'
      << "breath   " << fixed(e.breath_bpm, 2) << " bpm  (confidence " << fixed(e.breath_confidence, 2) << ")"
      << flag(e.breath_confident) << '\n'
      << "heart    " << fixed(e.heart_bpm, 2) << " bpm  (confidence " << fixed(e.heart_confidence, 2) << ")"
      << flag(e.heart_confident) << '\n';
}

void record_session(const std::string &store, const std::string &id, const std::string &trace_path,
                    const std::vector<VitalEstimate> &estimates) {
  if (store.empty())
    return;
  SessionRecord rec;
  rec.id = id;
  rec.trace_path = trace_path;
  rec.estimates = estimates;
  append_session(store, rec);
}

struct SynthFlags {
  std::string scenario;
  std::optional<double> breath_rate, heart_rate, breath_depth, heart_amplitude;
  std::optional<std::string> posture, pulse;
  std::optional<double> duration, snr_db, outlier_rate, outlier_magnitude;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string truth_prefix;
};

int cmd_synth(const SynthFlags &f, std::ostream &out) {
  Scenario s = f.scenario.empty() ? default_scenario() : load_scenario(f.scenario);
  if (f.breath_rate)
    s.profile.breath_rate_bpm = *f.breath_rate;
  if (f.heart_rate)
    s.profile.heart_rate_bpm = *f.heart_rate;
  if (f.breath_depth)
    s.profile.breath_depth = *f.breath_depth;
  if (f.heart_amplitude)
    s.profile.heart_amplitude = *f.heart_amplitude;
  if (f.posture)
    s.profile.posture = parse_posture(*f.posture);
  if (f.pulse) {
    if (*f.pulse == "sinusoid")
      s.profile.pulse_shape = PulseShape::sinusoid;
    else if (*f.pulse == "raised-cosine")
      s.profile.pulse_shape = PulseShape::raised_cosine;
    else
      throw DomainError("unknown pulse shape '" + *f.pulse + "'");
  }
  if (f.duration)
    s.duration = *f.duration;
  if (f.snr_db)
    s.noise.snr_db = *f.snr_db;
  if (f.outlier_rate)
    s.noise.outlier_rate = *f.outlier_rate;
  if (f.outlier_magnitude)
    s.noise.outlier_magnitude = *f.outlier_magnitude;
  if (f.seed)
    s.seed = *f.seed;

  const CsiTrace trace = synthesize_trace(s.scene(), s.profile, s.duration, s.noise, s.seed);
  write_trace(f.out_path, trace);
  out << "wrote " << trace.frame_count() << " frames (" << trace.layout.n_antennas << " antennas x "
      << trace.layout.n_subcarriers << " subcarriers) to " << f.out_path << '\n';
  if (!f.truth_prefix.empty()) {
    const GroundTruth truth = synth_ground_truth(s.profile, s.duration);
    write_ground_truth(f.truth_prefix + "-breath.csv", truth.breath);
    write_ground_truth(f.truth_prefix + "-pulse.csv", truth.pulse);
    out << "wrote ground truth to " << f.truth_prefix << "-{breath,pulse}.csv\n";
  }
  return kExitOk;
}

struct AnalyzeFlags {
  std::string trace;
  std::string spectra_csv;
  std::string amplitude_csv;
  std::string store;
  std::string session;
};

int cmd_analyze(const AnalyzeFlags &f, const PipelineFlags &pf, std::ostream &out) {
  const CsiTrace trace = read_trace(f.trace);
  const StreamConfig sc = pf.stream_config();
  const PipelineTrace result = run_pipeline(trace, sc.pipeline);
  print_estimate(out, result.estimate, pf.format);
  if (!f.spectra_csv.empty())
    write_spectrum_csv(f.spectra_csv, result.breath_spectrum, result.heart_spectrum);
  if (!f.amplitude_csv.empty())
    write_amplitude_csv(f.amplitude_csv, trace, result.estimate.antenna, result.estimate.subcarrier);
  record_session(f.store, f.session, f.trace, {result.estimate});
  return kExitOk;
}

struct StreamFlags {
  std::string source = "-";
  std::string store;
  std::string session;
};

int cmd_stream(const StreamFlags &f, const PipelineFlags &pf, std::istream &in, std::ostream &out) {
  std::ifstream file;
  std::istream *src = &in;
  if (f.source != "-") {
    if (!std::filesystem::exists(f.source))
      throw FileNotFound("file not found: " + f.source);
    file.open(f.source, std::ios::binary);
    src = &file;
  }
  TraceReader reader(*src);
  StreamingEstimator estimator(reader.layout(), pf.stream_config());
  std::vector<VitalEstimate> emitted;
  CsiFrame frame;
  while (reader.next(frame)) {
    if (const auto est = estimator.push_frame(frame)) {
      out << estimate_line(*est) << '\n' << std::flush;
      emitted.push_back(*est);
    }
  }
  record_session(f.store, f.session, f.source, emitted);
  return kExitOk;
}

int cmd_plan(const std::string &path, std::optional<int> rx, const std::string &format, std::ostream &out) {
  Scenario s = load_scenario(path);
  if (rx)
    s.plan_rx = *rx;
  const auto rows = rank_placements(s);
  if (rows.empty()) {
    out << "no placement candidates in " << path << '\n';
    return kExitOk;
  }
  if (format == "csv") {
    out << "rank,label,x,y,z,zone_index,zone,effective_displacement_m,parity,score\n" << std::setprecision(9);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto &r = rows[i];
      out << i + 1 << ',' << r.label << ',' << r.point.x() << ',' << r.point.y() << ',' << r.point.z() << ','
          << r.zone_index << ',' << r.zone << ',' << r.effective_displacement << ',' << r.parity << ',' << r.score
          << '\n';
    }
    return kExitOk;
  }
  out << std::left << std::setw(6) << "rank" << std::setw(16) << "label" << std::right << std::setw(12)
      << "zone_index" << std::setw(6) << "zone" << std::setw(14) << "eff_disp_mm" << std::setw(9) << "parity"
      << std::setw(10) << "score" << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto &r = rows[i];
    out << std::left << std::setw(6) << i + 1 << std::setw(16) << r.label << std::right << std::setw(12)
        << fixed(r.zone_index, 3) << std::setw(6) << r.zone << std::setw(14) << fixed(r.effective_displacement * 1e3, 4)
        << std::setw(9) << fixed(r.parity, 3) << std::setw(10) << fixed(r.score, 4) << '\n';
  }
  return kExitOk;
}

int cmd_eval(const std::string &manifest, const std::string &csv_path, const PipelineFlags &pf, std::ostream &out) {
  const EvalReport report = evaluate_manifest(manifest, pf.stream_config());
  if (pf.format == "csv")
    write_report_csv(out, report);
  else
    write_report_text(out, report);
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv)
      throw FormatError("cannot open " + csv_path + " for writing");
    write_report_csv(csv, report);
  }
  return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err) {
  CLI::App app{"WiFi CSI vital-sign simulation and estimation toolkit", "csivitals"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Config file with default flag values")->envname(kConfigEnvVar);

  PipelineFlags pf;
  add_pipeline_flags(app, pf);

  SynthFlags sf;
  auto *synth = app.add_subcommand("synth", "Synthesize a CSI trace from a scenario");
  synth->fallthrough();
  synth->add_option("--scenario", sf.scenario, "Scenario file (default: built-in bedside layout)");
  synth->add_option("--breath-rate", sf.breath_rate, "Breathing rate, bpm");
  synth->add_option("--heart-rate", sf.heart_rate, "Heart rate, bpm");
  synth->add_option("--breath-depth", sf.breath_depth, "Chest excursion amplitude, m");
  synth->add_option("--heart-amplitude", sf.heart_amplitude, "Heartbeat displacement amplitude, m");
  synth->add_option("--posture", sf.posture, "supine | prone | left-recumbent | right-recumbent");
  synth->add_option("--pulse", sf.pulse, "raised-cosine | sinusoid");
  synth->add_option("--duration", sf.duration, "Seconds to synthesize");
  synth->add_option("--seed", sf.seed, "RNG seed");
  synth->add_option("--snr-db", sf.snr_db, "Per-stream SNR in dB");
  synth->add_option("--outlier-rate", sf.outlier_rate, "Fraction of samples replaced by spikes");
  synth->add_option("--outlier-magnitude", sf.outlier_magnitude, "Spike height in amplitude standard deviations");
  synth->add_option("--out", sf.out_path, "Output trace file")->required();
  synth->add_option("--truth-prefix", sf.truth_prefix, "Also write PREFIX-breath.csv and PREFIX-pulse.csv");

  AnalyzeFlags af;
  auto *analyze = app.add_subcommand("analyze", "Estimate breathing and heart rate from a trace");
  analyze->fallthrough();
  analyze->add_option("trace", af.trace, "Trace file")->required();
  analyze->add_option("--spectra-csv", af.spectra_csv, "Write in-band spectra to this CSV");
  analyze->add_option("--amplitude-csv", af.amplitude_csv, "Write the selected stream's amplitude to this CSV");
  analyze->add_option("--store", af.store, "Session store directory");
  analyze->add_option("--session", af.session, "Session id for --store")->needs("--store");

  StreamFlags stf;
  auto *stream = app.add_subcommand("stream", "Estimate continuously from a trace file or stdin");
  stream->fallthrough();
  stream->add_option("source", stf.source, "Trace file, or - for stdin");
  stream->add_option("--store", stf.store, "Session store directory");
  stream->add_option("--session", stf.session, "Session id for --store")->needs("--store");

  std::string plan_path;
  std::optional<int> plan_rx;
  auto *plan = app.add_subcommand("plan", "Rank candidate body placements");
  plan->fallthrough();
  plan->add_option("scenario", plan_path, "Scenario file with candidate lines")->required();
  plan->add_option("--rx", plan_rx, "Receive antenna index to plan for");

  std::string manifest, eval_csv;
  auto *eval = app.add_subcommand("eval", "Compare estimates against reference sensors");
  eval->fallthrough();
  eval->add_option("manifest", manifest, "Manifest CSV")->required();
  eval->add_option("--csv", eval_csv, "Write per-window results to this CSV");

  std::vector<const char *> argv{"csivitals"};
  for (const auto &a : args)
    argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!pf.breath_band.empty() && pf.breath_band.size() != 2)
      throw DomainError("--breath-band takes LOW,HIGH");
    if (!pf.heart_band.empty() && pf.heart_band.size() != 2)
      throw DomainError("--heart-band takes LOW,HIGH");
    if (*synth)
      return cmd_synth(sf, out);
    if (*analyze)
      return cmd_analyze(af, pf, out);
    if (*stream)
      return cmd_stream(stf, pf, in, out);
    if (*plan)
      return cmd_plan(plan_path, plan_rx, pf.format, out);
    if (*eval)
      return cmd_eval(manifest, eval_csv, pf, out);
  } catch (const FileNotFound &e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const DomainError &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

} // namespace csivitals
