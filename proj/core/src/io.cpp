#include "ddcap/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ddcap/error.hpp"

namespace ddcap {
namespace {

using nlohmann::json;

Complex complex_from(const json& node) {
  if (!node.is_array() || node.size() != 2 || !node[0].is_number() || !node[1].is_number()) {
    throw InputError("expected a [re, im] pair, got " + node.dump());
  }
  return {node[0].get<double>(), node[1].get<double>()};
}

ComplexVector complex_vector_from(const json& node, const char* field) {
  if (!node.is_array()) throw InputError(std::string("'") + field + "' must be an array");
  ComplexVector out;
  out.reserve(node.size());
  for (const auto& entry : node) out.push_back(complex_from(entry));
  return out;
}

const json& require(const json& node, const char* field) {
  if (!node.is_object() || !node.contains(field)) {
    throw InputError(std::string("missing field '") + field + "'");
  }
  return node.at(field);
}

PeriodicSignal signal_from_node(const json& node) {
  const auto& m = require(node, "M");
  const auto& b = require(node, "B");
  if (!m.is_number_integer() || m.get<long long>() < 1) throw InputError("'M' must be a positive integer");
  if (!b.is_number()) throw InputError("'B' must be a number");
  auto samples = complex_vector_from(require(node, "samples"), "samples");
  if (samples.size() != m.get<std::size_t>()) {
    throw InputError("'M' is " + m.dump() + " but " + std::to_string(samples.size()) + " samples given");
  }
  return PeriodicSignal(b.get<double>(), std::move(samples));
}

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("JSON parse error: ") + e.what());
  }
}

std::string csv_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Shortest round-trip form, as nlohmann writes it.
std::string number(double v) { return json(v).dump(); }

std::string pair_text(const Complex& z) { return "[" + number(z.real()) + ", " + number(z.imag()) + "]"; }

std::string pairs_text(std::span<const Complex> values, const std::string& pad) {
  if (values.empty()) return "[]";
  std::string out = "[\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += pad + "  " + pair_text(values[i]) + (i + 1 < values.size() ? ",\n" : "\n");
  }
  return out + pad + "]";
}

// {"M", "B", "samples"} in contract order, one sample per line.
std::string signal_text(const PeriodicSignal& sig, const std::string& pad) {
  return "{\n" + pad + "  \"M\": " + std::to_string(sig.size()) + ",\n" + pad + "  \"B\": " +
         number(sig.bandwidth()) + ",\n" + pad + "  \"samples\": " + pairs_text(sig.samples(), pad + "  ") +
         "\n" + pad + "}";
}

}  // namespace

std::string signal_to_json(const PeriodicSignal& sig) { return signal_text(sig, "") + "\n"; }

PeriodicSignal signal_from_json(std::string_view text) {
  try {
    return signal_from_node(parse(text));
  } catch (const json::exception& e) {
    throw InputError(std::string("bad signal JSON: ") + e.what());
  }
}

std::string family_to_json(const EqualIntensityFamily& family) {
  std::string on_circle;
  for (std::size_t i = 0; i < family.zeros.degree(); ++i) {
    on_circle += i ? ", " : "";
    on_circle += family.zeros.location(i) == ZeroLocation::on_circle ? "true" : "false";
  }
  std::string out = "{\n  \"base\": " + signal_text(family.base, "  ") + ",\n";
  out += "  \"zeros\": " + pairs_text(family.zeros.zeros(), "  ") + ",\n";
  out += "  \"on_circle\": [" + on_circle + "],\n";
  out += "  \"members\": [";
  for (std::size_t j = 0; j < family.members.size(); ++j) {
    const auto& m = family.members[j];
    out += j ? ",\n" : "\n";
    out += "    {\"mask\": " + std::to_string(m.mask) + ", \"signal\": " + signal_text(m.signal, "    ") + "}";
  }
  out += family.members.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

FamilyRecord family_from_json(std::string_view text) {
  try {
    const json doc = parse(text);
    FamilyRecord rec{signal_from_node(require(doc, "base")), complex_vector_from(require(doc, "zeros"), "zeros"),
                     {}, {}};
    for (const auto& flag : require(doc, "on_circle")) rec.on_circle.push_back(flag.get<bool>());
    if (rec.on_circle.size() != rec.zeros.size()) throw InputError("'on_circle' and 'zeros' differ in length");
    for (const auto& m : require(doc, "members")) {
      rec.members.push_back({require(m, "mask").get<FlipMask>(), signal_from_node(require(m, "signal"))});
    }
    return rec;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad family JSON: ") + e.what());
  }
}

std::string intensity_to_csv(const SampledIntensity& intensity) {
  std::string out = "t,intensity\n";
  for (std::size_t n = 0; n < intensity.values.size(); ++n) {
    out += csv_double(static_cast<double>(n) / intensity.rate);
    out += ',';
    out += csv_double(intensity.values[n]);
    out += '\n';
  }
  return out;
}

SampledIntensity intensity_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line.substr(0, 11) != "t,intensity") {
    throw InputError("intensity CSV must start with the header 't,intensity'");
  }
  std::vector<double> times;
  SampledIntensity out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    double t = 0.0;
    double v = 0.0;
    char tail = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf%c", &t, &v, &tail) < 2 || (tail != 0 && tail != '\r')) {
      throw InputError("intensity CSV row " + std::to_string(row) + " is not 't,value'");
    }
    if (!std::isfinite(t) || !std::isfinite(v)) throw InputError("non-finite entry on row " + std::to_string(row));
    times.push_back(t);
    out.values.push_back(v);
  }
  if (times.size() < 2) throw InputError("intensity CSV needs at least two rows");
  const double dt = times[1] - times[0];
  if (times[0] != 0.0 || !(dt > 0.0)) throw InputError("intensity grid must start at t = 0 and increase");
  for (std::size_t n = 0; n < times.size(); ++n) {
    if (std::abs(times[n] - static_cast<double>(n) * dt) > 1e-9 * dt * static_cast<double>(n + 1)) {
      throw InputError("intensity grid is not uniform at row " + std::to_string(n + 2));
    }
  }
  out.rate = 1.0 / dt;
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("write to '" + path + "' failed");
}

}  // namespace ddcap
