#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ddcap/channel.hpp"
#include "ddcap/error.hpp"
#include "ddcap/io.hpp"
#include "ddcap/min_phase.hpp"
#include "ddcap/signal.hpp"
#include "ddcap/zeros.hpp"

namespace ddcap::cli {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

struct RunConfig {
  std::string input;
  std::string output;
  std::string reference;
  std::string format = "json";
  std::string receiver = "coherent";
  std::string constellation;  // gaussian for mi, qpsk for counting
  std::size_t M = 4;
  double B = 1.0;
  std::uint64_t seed = 1;
  double snr_db = 10.0;
  double snr = -1.0;  // linear; overrides snr_db when set
  int oversample = 2;
  std::size_t n_samples = 100000;
  std::size_t workers = 1;
  std::size_t block = 1;
  int cap = kDefaultEnumerationCap;
  std::size_t periods = 2;
  std::size_t points = 512;
  std::size_t codebook = 64;
  double tolerance = kMinPhaseTolerance;
  double floor = kIntensityFloor;
  double cluster_tolerance = 1e-9;
  double intensity_check = 1e-8;
};

// Writes data and the key=value summary to their destinations.
class Sink {
 public:
  Sink(const RunConfig& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {}

  void data(const std::string& text) {
    if (cfg_.output.empty()) {
      out_ << text;
    } else {
      write_text_file(cfg_.output, text);
    }
  }

  void summary(const std::string& line) { (cfg_.output.empty() ? err_ : out_) << line << '\n'; }

 private:
  const RunConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double linear_snr(const RunConfig& cfg) { return cfg.snr >= 0.0 ? cfg.snr : std::pow(10.0, cfg.snr_db / 10.0); }

PeriodicSignal load_or_generate(const RunConfig& cfg) {
  if (!cfg.input.empty()) return signal_from_json(read_text_file(cfg.input));
  return random_signal(cfg.M, cfg.B, cfg.seed);
}

ComplexVector named_constellation(const std::string& name) {
  using std::numbers::pi;
  auto psk = [](int order, double offset) {
    ComplexVector out;
    for (int k = 0; k < order; ++k) out.push_back(std::polar(1.0, offset + 2.0 * pi * k / order));
    return out;
  };
  if (name == "bpsk") return {1.0, -1.0};
  if (name == "ook") return {0.0, 1.0};
  if (name == "qpsk") return psk(4, pi / 4);
  if (name == "8psk") return psk(8, 0.0);
  if (name == "16qam") {
    ComplexVector out;
    for (int re : {-3, -1, 1, 3}) {
      for (int im : {-3, -1, 1, 3}) out.emplace_back(re, im);
    }
    return out;
  }
  throw InputError("unknown constellation '" + name + "' (bpsk, ook, qpsk, 8psk, 16qam)");
}

Receiver parse_receiver(const std::string& name) {
  if (name == "coherent") return Receiver::coherent;
  if (name == "direct") return Receiver::direct;
  if (name == "intensity") return Receiver::intensity;
  throw InputError("unknown receiver '" + name + "' (coherent, direct, intensity)");
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (cfg.format == f) return;
  }
  throw InputError("--format " + cfg.format + " is not available for this subcommand");
}

// Flat key/value report as JSON or as a two-row CSV.
std::string render_report(const ordered_json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  std::string header;
  std::string row;
  for (const auto& [key, value] : report.items()) {
    if (value.is_structured()) continue;
    header += (header.empty() ? "" : ",") + key;
    std::string cell = value.is_string() ? value.get<std::string>() : value.dump();
    if (value.is_number_float()) cell = csv_num(value.get<double>());
    row += (row.empty() ? "" : ",") + cell;
  }
  return header + "\n" + row + "\n";
}

// -- subcommands -------------------------------------------------------------

int cmd_generate(const RunConfig& cfg, Sink& sink) {
  require_format(cfg, {"json", "csv"});
  const auto sig = random_signal(cfg.M, cfg.B, cfg.seed);
  if (cfg.format == "csv") {
    sink.data(intensity_to_csv(intensity_grid(sig, cfg.oversample)));
  } else {
    sink.data(signal_to_json(sig));
  }
  sink.summary("M=" + std::to_string(cfg.M) + " B=" + num(cfg.B) + " seed=" + std::to_string(cfg.seed) +
               " energy=" + num(energy(sig)) + " version=" + version());
  return kOk;
}

int cmd_simulate(const RunConfig& cfg, Sink& sink) {
  const auto sig = load_or_generate(cfg);
  const double snr = linear_snr(cfg);
  const auto noisy = apply_noise(sig, {snr, cfg.seed});
  const auto receiver = parse_receiver(cfg.receiver);
  switch (receiver) {
    case Receiver::coherent:
      require_format(cfg, {"json"});
      sink.data(signal_to_json(PeriodicSignal(noisy.bandwidth(), detect_coherent(noisy))));
      break;
    case Receiver::direct:
      require_format(cfg, {"json", "csv"});
      sink.data(intensity_to_csv(intensity_grid(noisy, cfg.oversample)));
      break;
    case Receiver::intensity:
      require_format(cfg, {"json", "csv"});
      sink.data(intensity_to_csv(SampledIntensity{noisy.bandwidth(), detect_intensity_channel(noisy)}));
      break;
  }
  double noise_energy = 0.0;
  for (std::size_t n = 0; n < sig.size(); ++n) noise_energy += std::norm(noisy[n] - sig[n]);
  noise_energy /= static_cast<double>(sig.size());
  sink.summary("receiver=" + std::string(to_string(receiver)) + " snr=" + num(snr) + " seed=" +
               std::to_string(cfg.seed) + " signal_energy=" + num(energy(sig)) + " noise_energy=" +
               num(noise_energy) + " version=" + version());
  return kOk;
}

int cmd_enumerate(const RunConfig& cfg, Sink& sink) {
  require_format(cfg, {"json"});
  const auto sig = load_or_generate(cfg);
  const auto fam = enumerate_family(sig, cfg.cap);
  sink.data(family_to_json(fam));
  sink.summary("members=" + std::to_string(fam.members.size()) +
               " zeros_on_circle=" + std::to_string(fam.zeros.on_circle_count()));
  sink.summary("zeros_off_circle=" + std::to_string(fam.zeros.off_circle_count()) +
               " reflectable=" + std::to_string(fam.zeros.reflectable_count()) + " version=" + version());
  return kOk;
}

int cmd_figure2(const RunConfig& cfg, Sink& sink) {
  require_format(cfg, {"json", "csv"});
  RunConfig gen = cfg;
  gen.M = 4;
  const auto sig = load_or_generate(gen);
  if (sig.size() != 4) throw InputError("figure2 needs an M = 4 signal, got M = " + std::to_string(sig.size()));
  const auto fam = enumerate_family(sig);
  if (fam.members.size() != 8) {
    throw DomainError("input has " + std::to_string(fam.members.size()) +
                      " equal-intensity members instead of 8 (a zero lies on the unit circle); "
                      "rerun with a different --seed");
  }

  const std::size_t P = cfg.points;
  const double period = sig.period();
  std::vector<double> intensity(P);
  std::vector<std::vector<double>> phases(8, std::vector<double>(P));
  double peak = 0.0;
  double mismatch = 0.0;
  for (std::size_t m = 0; m < 8; ++m) {
    const auto spec = samples_to_spectrum(fam.members[m].signal);
    double prev = 0.0;
    for (std::size_t i = 0; i < P; ++i) {
      const Complex e = evaluate_field(spec, period * static_cast<double>(i) / static_cast<double>(P));
      double phase = std::arg(e);
      if (i > 0) phase = prev + std::remainder(phase - prev, 2.0 * std::numbers::pi);
      phases[m][i] = prev = phase;
      const double I = std::norm(e);
      if (m == 0) {
        intensity[i] = I;
        peak = std::max(peak, I);
      } else {
        mismatch = std::max(mismatch, std::abs(I - intensity[i]));
      }
    }
  }
  mismatch /= peak;
  if (mismatch > cfg.intensity_check) {
    throw NumericalError("member intensities disagree by " + num(mismatch) + " relative", mismatch);
  }

  std::string text = "t,intensity";
  for (int m = 0; m < 8; ++m) text += ",phase_" + std::to_string(m);
  text += '\n';
  // Each period repeats the first, phases included, so rows one period
  // apart are identical apart from t.
  for (std::size_t row = 0; row < P * cfg.periods; ++row) {
    const std::size_t i = row % P;
    text += csv_num(period * static_cast<double>(row) / static_cast<double>(P));
    text += ',' + csv_num(intensity[i]);
    for (int m = 0; m < 8; ++m) text += ',' + csv_num(phases[m][i]);
    text += '\n';
  }
  sink.data(text);
  sink.summary("members=8 points=" + std::to_string(P * cfg.periods) + " intensity_mismatch=" + num(mismatch) +
               " seed=" + std::to_string(cfg.seed) + " version=" + version());
  return kOk;
}

int cmd_minphase(const RunConfig& cfg, Sink& sink, bool m_given) {
  require_format(cfg, {"json"});
  if (cfg.input.empty()) throw InputError("minphase needs --input <intensity CSV>");
  if (!m_given) throw InputError("minphase needs --M (number of Fourier coefficients)");
  const auto intensity = intensity_from_csv(read_text_file(cfg.input));
  MinPhaseOptions opts;
  opts.tolerance = cfg.tolerance;
  opts.relative_floor = cfg.floor;
  const auto result = min_phase_from_intensity(intensity, cfg.M, opts);
  sink.data(signal_to_json(result.signal));
  sink.summary("M=" + std::to_string(cfg.M) + " grid_points=" + std::to_string(result.grid_points) +
               " residual=" + num(result.residual) + " tolerance=" + num(result.tolerance) +
               " regularized=" + (result.regularized ? "true" : "false") + " version=" + version());
  if (!cfg.reference.empty()) {
    const auto ref = signal_from_json(read_text_file(cfg.reference));
    const double d = phase_distance(result.signal, ref);
    sink.summary("phase_distance=" + num(d) + " energy=" + num(energy(ref)) +
                 " relative_distance=" + num(d / energy(ref)));
  }
  return kOk;
}

struct Experiment {
  Receiver receiver = Receiver::coherent;
  InputModel input;
  ordered_json input_node;
  double snr = 10.0;
  std::uint64_t seed = 1;
  std::size_t n_samples = 100000;
  std::size_t workers = 1;
};

InputModel input_model(const std::string& constellation, std::size_t block, ordered_json& node) {
  InputModel model;
  model.block = block;
  if (constellation == "gaussian") {
    node = {{"kind", "gaussian"}};
  } else {
    model.kind = InputModel::Kind::constellation;
    model.points = named_constellation(constellation);
    node = {{"kind", "constellation"}, {"name", constellation}, {"block", block}};
  }
  return model;
}

Experiment experiment_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("experiment JSON: ") + e.what());
  }
  try {
    Experiment ex;
    ex.receiver = parse_receiver(doc.at("receiver").get<std::string>());
    const auto& in = doc.at("input");
    const std::size_t block = in.value("block", std::size_t{1});
    const auto kind = in.at("kind").get<std::string>();
    if (kind == "gaussian") {
      ex.input = input_model("gaussian", block, ex.input_node);
    } else if (kind == "constellation" && in.contains("points")) {
      ex.input.kind = InputModel::Kind::constellation;
      ex.input.block = block;
      for (const auto& p : in.at("points")) ex.input.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
      ex.input_node = ordered_json::parse(in.dump());
    } else if (kind == "constellation") {
      ex.input = input_model(in.at("name").get<std::string>(), block, ex.input_node);
    } else {
      throw InputError("input.kind must be 'gaussian' or 'constellation'");
    }
    if (doc.contains("snr")) {
      ex.snr = doc.at("snr").get<double>();
    } else {
      ex.snr = std::pow(10.0, doc.at("snr_db").get<double>() / 10.0);
    }
    ex.seed = doc.at("seed").get<std::uint64_t>();
    ex.n_samples = doc.at("n_samples").get<std::size_t>();
    ex.workers = doc.value("workers", std::size_t{1});
    return ex;
  } catch (const json::exception& e) {
    throw InputError(std::string("experiment JSON: ") + e.what());
  }
}

int cmd_mi(const RunConfig& cfg, Sink& sink) {
  require_format(cfg, {"json", "csv"});
  Experiment ex;
  if (!cfg.input.empty()) {
    ex = experiment_from_json(read_text_file(cfg.input));
  } else {
    ex.receiver = parse_receiver(cfg.receiver);
    ex.input = input_model(cfg.constellation.empty() ? "gaussian" : cfg.constellation, cfg.block, ex.input_node);
    ex.snr = linear_snr(cfg);
    ex.seed = cfg.seed;
    ex.n_samples = cfg.n_samples;
    ex.workers = cfg.workers;
  }
  const auto est = mc_mi(ex.receiver, ex.input, {ex.snr, ex.seed}, ex.n_samples, ex.workers);

  ordered_json report;
  report["version"] = version();
  report["receiver"] = to_string(ex.receiver);
  report["input"] = ex.input_node;
  report["snr"] = ex.snr;
  report["snr_db"] = 10.0 * std::log10(ex.snr);
  report["seed"] = ex.seed;
  report["n_samples"] = est.samples;
  report["workers"] = est.workers;
  report["bits_per_dof"] = est.bits_per_dof;
  report["std_error"] = est.std_error;
  report["method"] = to_string(est.method);
  report["bound_direction"] = to_string(est.bound);
  report["phase_canonicalized"] = false;
  if (ex.receiver == Receiver::coherent && ex.input.kind == InputModel::Kind::gaussian) {
    report["closed_form_bits_per_dof"] = std::log2(1.0 + ex.snr);
  }
  sink.data(render_report(report, cfg.format));
  sink.summary("bits_per_dof=" + num(est.bits_per_dof) + " std_error=" + num(est.std_error) +
               " bound_direction=" + std::string(to_string(est.bound)) + " version=" + version());
  return kOk;
}

int cmd_counting(const RunConfig& cfg, Sink& sink, bool noisy) {
  require_format(cfg, {"json", "csv"});
  const std::string name = cfg.constellation.empty() ? "qpsk" : cfg.constellation;
  const auto points = named_constellation(name);
  const auto r = counting_entropy(points, cfg.M, cfg.cluster_tolerance);
  const double bound = (static_cast<double>(cfg.M) - 1.0) / static_cast<double>(cfg.M);

  ordered_json report;
  report["version"] = version();
  report["constellation"] = name;
  report["M"] = cfg.M;
  report["tolerance"] = cfg.cluster_tolerance;
  report["sequences"] = r.sequences;
  report["distinct_waveforms"] = r.distinct_waveforms;
  report["distinct_intensities"] = r.distinct_intensities;
  report["coherent_entropy_bits"] = r.coherent_entropy_bits;
  report["direct_entropy_bits"] = r.direct_entropy_bits;
  report["gap_bits"] = r.gap_bits;
  report["gap_bits_per_dof"] = r.gap_bits_per_dof;
  report["bound_bits_per_dof"] = bound;
  report["max_fiber"] = r.max_fiber;
  report["holds"] = r.holds;
  report["phase_canonicalized"] = true;
  bool holds = r.holds;

  if (noisy) {
    std::vector<PeriodicSignal> inputs;
    std::size_t total = 1;
    for (std::size_t i = 0; i < cfg.M; ++i) total *= points.size();
    double power = 0.0;
    for (const auto& p : points) power += std::norm(p);
    power /= static_cast<double>(points.size());
    for (std::size_t idx = 0; idx < total; ++idx) {
      ComplexVector s(cfg.M);
      std::size_t rest = idx;
      for (auto& v : s) {
        v = points[rest % points.size()];
        rest /= points.size();
      }
      inputs.emplace_back(1.0, std::move(s));
    }
    const double variance = power / linear_snr(cfg);
    const double bin = std::sqrt(variance) / 4.0;
    const ChainDiscretization disc{fiber_quantizer(bin), noise_codebook(cfg.M, variance, cfg.codebook, cfg.seed)};
    const auto chain =
        chain_bound_check(inputs, std::vector<double>(total, 1.0 / static_cast<double>(total)), disc);
    report["noisy"] = {
        {"snr", linear_snr(cfg)},
        {"codebook", cfg.codebook},
        {"intensity_bin", bin},
        {"coherent_bits_per_dof", chain.coherent.bits_per_dof},
        {"direct_bits_per_dof", chain.direct.bits_per_dof},
        {"gap", chain.gap},
        {"max_fiber", chain.max_fiber},
        {"holds", chain.holds},
    };
    holds = holds && chain.holds;
  }
  sink.data(render_report(report, cfg.format));
  sink.summary("gap_bits_per_dof=" + num(r.gap_bits_per_dof) + " bound=" + num(bound) + " max_fiber=" +
               std::to_string(r.max_fiber) + " holds=" + (holds ? "true" : "false") + " version=" + version());
  if (!holds) throw DomainError("chain-rule bound violated; see report");
  return kOk;
}

}  // namespace

const char* version() { return DDCAP_VERSION; }

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Equal-intensity waveform families and direct-detection information bounds", "ddcap"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  auto positive_size = CLI::PositiveNumber;
  auto add_signal_source = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "Signal JSON (generated from --M/--B/--seed when absent)");
    sub->add_option("--M", cfg.M, "Samples per period")->check(positive_size);
    sub->add_option("--B", cfg.B, "Bandwidth")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Random seed");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", cfg.output, "Output path (standard output when absent)");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_snr = [&](CLI::App* sub) {
    auto* db = sub->add_option("--snr-db", cfg.snr_db, "SNR in dB");
    sub->add_option("--snr", cfg.snr, "Linear SNR (overrides --snr-db)")->check(CLI::NonNegativeNumber)->excludes(db);
  };

  auto* generate = app.add_subcommand("generate", "Random band-limited signal (JSON) or its intensity (CSV)");
  add_signal_source(generate);
  generate->remove_option(generate->get_option("--input"));
  add_output(generate);
  generate->add_option("--oversample", cfg.oversample, "Intensity grid oversampling (>= 2)")->check(CLI::Range(2, 1 << 16));

  auto* simulate = app.add_subcommand("simulate", "Pass a signal through in-band noise and a receiver");
  add_signal_source(simulate);
  add_output(simulate);
  add_snr(simulate);
  simulate->add_option("--receiver", cfg.receiver, "coherent | direct | intensity");
  simulate->add_option("--oversample", cfg.oversample, "Direct-detection grid oversampling (>= 2)")
      ->check(CLI::Range(2, 1 << 16));

  auto* enumerate = app.add_subcommand("enumerate", "All waveforms sharing the input's intensity");
  add_signal_source(enumerate);
  add_output(enumerate);
  enumerate->add_option("--cap", cfg.cap, "Maximum number of reflectable zeros")->check(CLI::Range(0, 63));

  auto* figure2 = app.add_subcommand("figure2", "Intensity and phases of the 8 members of an M = 4 family");
  add_signal_source(figure2);
  figure2->remove_option(figure2->get_option("--M"));
  add_output(figure2);
  figure2->add_option("--points", cfg.points, "Grid points per period")->check(positive_size);
  figure2->add_option("--periods", cfg.periods, "Periods to emit")->check(positive_size);
  figure2->add_option("--intensity-tolerance", cfg.intensity_check, "Relative intensity agreement required")
      ->check(CLI::PositiveNumber);

  auto* minphase = app.add_subcommand("minphase", "Minimum-phase waveform from an intensity CSV");
  minphase->add_option("--input", cfg.input, "Intensity CSV")->required();
  auto* minphase_m = minphase->add_option("--M", cfg.M, "Fourier coefficients to keep")->check(positive_size);
  add_output(minphase);
  minphase->add_option("--reference", cfg.reference, "Signal JSON to compare against");
  minphase->add_option("--tolerance", cfg.tolerance, "Base reconstruction tolerance")->check(CLI::PositiveNumber);
  minphase->add_option("--floor", cfg.floor, "Relative intensity floor")->check(CLI::PositiveNumber);

  auto* mi = app.add_subcommand("mi", "Monte-Carlo mutual information per complex degree of freedom");
  mi->add_option("--input", cfg.input, "Experiment JSON (flags are used when absent)");
  add_output(mi);
  add_snr(mi);
  mi->add_option("--seed", cfg.seed, "Random seed");
  mi->add_option("--receiver", cfg.receiver, "coherent | direct | intensity");
  mi->add_option("--constellation", cfg.constellation, "gaussian | bpsk | ook | qpsk | 8psk | 16qam");
  mi->add_option("--block", cfg.block, "Degrees of freedom per block (direct receiver)")->check(positive_size);
  mi->add_option("--n-samples", cfg.n_samples, "Monte-Carlo samples (>= 10000)")->check(positive_size);
  mi->add_option("--workers", cfg.workers, "Worker threads")->check(positive_size);

  auto* counting = app.add_subcommand("counting", "Noiseless waveform/intensity entropies over a constellation");
  counting->add_option("--constellation", cfg.constellation, "bpsk | ook | qpsk | 8psk | 16qam");
  counting->add_option("--M", cfg.M, "Samples per period")->check(positive_size);
  add_output(counting);
  counting->add_option("--tolerance", cfg.cluster_tolerance, "Clustering tolerance")->check(CLI::PositiveNumber);
  auto* noisy_db = counting->add_option("--snr-db", cfg.snr_db, "Also tabulate the noisy channel at this SNR");
  counting->add_option("--codebook", cfg.codebook, "Noise realizations for the noisy channel")->check(positive_size);
  counting->add_option("--seed", cfg.seed, "Noise codebook seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  Sink sink(cfg, out, err);
  try {
    if (generate->parsed()) return cmd_generate(cfg, sink);
    if (simulate->parsed()) return cmd_simulate(cfg, sink);
    if (enumerate->parsed()) return cmd_enumerate(cfg, sink);
    if (figure2->parsed()) return cmd_figure2(cfg, sink);
    if (minphase->parsed()) return cmd_minphase(cfg, sink, minphase_m->count() > 0);
    if (mi->parsed()) return cmd_mi(cfg, sink);
    if (counting->parsed()) return cmd_counting(cfg, sink, noisy_db->count() > 0);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << " (residual " << e.residual() << ")\n";
    return kNumericalError;
  }
  return kInputError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"ddcap"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ddcap::cli
