#include "cforge/io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <string>

#include "cforge/errors.hpp"
#include "cforge/units.hpp"

namespace cforge {

namespace {

using nlohmann::json;

constexpr const char* kRawFormat = "coherence-forge/raw-spectrogram";
constexpr const char* kSpectrumFormat = "coherence-forge/spectrum";

void reject_unknown(const json& object, const std::set<std::string>& allowed,
                    const std::string& scope) {
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) {
      throw validation_error("scheme: unknown key \"" + scope + key + "\"");
    }
  }
}

double require_number(const json& object, const char* key, const char* scope) {
  auto it = object.find(key);
  if (it == object.end() || !it->is_number()) {
    throw validation_error(std::string("scheme: ") + scope + " needs numeric \"" + key +
                           "\"");
  }
  return it->get<double>();
}

void append_double(std::string& out, double value) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 17);
  out.append(buf, ptr);
}

json json_file(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw stage_error(std::string(what) + " file not found: " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& err) {
    throw stage_error(std::string(what) + " " + path.string() + ": " + err.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text,
                std::vector<std::filesystem::path>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw stage_error("cannot open for writing: " + path.string());
  out << text;
  out.close();
  if (!out) throw stage_error("write failed: " + path.string());
  written.push_back(path);
}

std::string csv_text(const Array2D<double>& data) {
  std::string text;
  text.reserve(data.size() * 20);
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const double* row = data.row(r);
    for (std::size_t c = 0; c < data.cols(); ++c) {
      if (c > 0) text.push_back(',');
      append_double(text, row[c]);
    }
    text.push_back('\n');
  }
  return text;
}

std::vector<double> axis_from_json(const json& arr, const char* what) {
  if (!arr.is_array() || arr.size() < 1) {
    throw stage_error(std::string("sidecar: \"") + what + "\" must be an array");
  }
  std::vector<double> axis;
  axis.reserve(arr.size());
  for (const auto& v : arr) axis.push_back(v.get<double>());
  return axis;
}

}  // namespace

LevelScheme scheme_from_json(const json& doc) {
  if (!doc.is_object()) throw validation_error("scheme: top level must be an object");
  reject_unknown(doc, {"levels", "transitions"}, "");
  auto levels_it = doc.find("levels");
  auto transitions_it = doc.find("transitions");
  if (levels_it == doc.end() || !levels_it->is_array()) {
    throw validation_error("scheme: \"levels\" must be an array");
  }
  if (transitions_it == doc.end() || !transitions_it->is_array()) {
    throw validation_error("scheme: \"transitions\" must be an array");
  }

  LevelScheme scheme;
  for (const auto& entry : *levels_it) {
    if (!entry.is_object()) throw validation_error("scheme: level entries must be objects");
    reject_unknown(entry, {"id", "label", "band", "freq_thz"}, "levels[].");
    Level lvl;
    lvl.id = static_cast<int>(require_number(entry, "id", "level"));
    lvl.band = static_cast<int>(require_number(entry, "band", "level"));
    lvl.omega = thz_to_rad_ps(require_number(entry, "freq_thz", "level"));
    if (auto it = entry.find("label"); it != entry.end()) {
      if (!it->is_string()) throw validation_error("scheme: level label must be a string");
      lvl.label = it->get<std::string>();
    }
    scheme.levels.push_back(std::move(lvl));
  }
  for (const auto& entry : *transitions_it) {
    if (!entry.is_object()) {
      throw validation_error("scheme: transition entries must be objects");
    }
    reject_unknown(entry, {"lower", "upper", "dipole", "gamma_thz"}, "transitions[].");
    Transition tr;
    tr.lower = static_cast<int>(require_number(entry, "lower", "transition"));
    tr.upper = static_cast<int>(require_number(entry, "upper", "transition"));
    tr.dipole = require_number(entry, "dipole", "transition");
    tr.gamma = thz_to_rad_ps(require_number(entry, "gamma_thz", "transition"));
    scheme.transitions.push_back(tr);
  }
  validate_scheme(scheme);
  return scheme;
}

LevelScheme load_scheme(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("scheme file not found: " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& err) {
    throw validation_error("scheme " + path.string() + ": " + err.what());
  }
  return scheme_from_json(doc);
}

void write_csv(const std::filesystem::path& path, const Array2D<double>& data) {
  std::vector<std::filesystem::path> sink;
  write_text(path, csv_text(data), sink);
}

Array2D<double> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw stage_error("csv file not found: " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    const char* cursor = line.c_str();
    char* next = nullptr;
    while (*cursor != '\0') {
      const double value = std::strtod(cursor, &next);
      if (next == cursor) {
        throw stage_error("csv parse failure in " + path.string());
      }
      row.push_back(value);
      cursor = next;
      if (*cursor == ',') ++cursor;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw stage_error("csv with ragged rows: " + path.string());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw stage_error("csv empty: " + path.string());
  Array2D<double> data(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) data(r, c) = rows[r][c];
  }
  return data;
}

std::filesystem::path write_raw_spectrogram(const RawSpectrogram& raw,
                                            const std::filesystem::path& dir,
                                            const json& provenance,
                                            std::vector<std::filesystem::path>& written) {
  std::filesystem::create_directories(dir);
  json sidecar;
  sidecar["format"] = kRawFormat;
  sidecar["units"] = {{"time", "ps"}, {"angular_frequency", "rad/ps"}};
  sidecar["tau_ps"] = raw.tau;
  sidecar["t_grid_ps"] = raw.t_grid;
  sidecar["omega_t_rad_ps"] = raw.omega_t_grid;
  json frames = json::array();
  for (std::size_t i = 0; i < raw.frames.size(); ++i) {
    const std::string name = "raw_frame_" + std::to_string(i) + ".csv";
    write_text(dir / name, csv_text(raw.frames[i]), written);
    frames.push_back({{"phi1_rad", raw.frame_phases[i].phi1},
                      {"phi1_prime_rad", raw.frame_phases[i].phi1_prime},
                      {"file", name}});
  }
  sidecar["frames"] = std::move(frames);
  sidecar["provenance"] = provenance;

  const std::filesystem::path sidecar_path = dir / "raw_spectrogram.json";
  write_text(sidecar_path, sidecar.dump(2) + "\n", written);
  return sidecar_path;
}

RawSpectrogram read_raw_spectrogram(const std::filesystem::path& sidecar) {
  const json doc = json_file(sidecar, "raw spectrogram sidecar");
  if (doc.value("format", "") != kRawFormat) {
    throw stage_error("not a raw spectrogram sidecar: " + sidecar.string());
  }
  RawSpectrogram raw;
  raw.tau = doc.at("tau_ps").get<double>();
  raw.t_grid = axis_from_json(doc.at("t_grid_ps"), "t_grid_ps");
  raw.omega_t_grid = axis_from_json(doc.at("omega_t_rad_ps"), "omega_t_rad_ps");
  for (const auto& frame : doc.at("frames")) {
    raw.frame_phases.push_back(PhaseFrame{frame.at("phi1_rad").get<double>(),
                                          frame.at("phi1_prime_rad").get<double>()});
    const auto file = frame.at("file").get<std::string>();
    Array2D<double> data = read_csv(sidecar.parent_path() / file);
    if (data.rows() != raw.t_grid.size() || data.cols() != raw.omega_t_grid.size()) {
      throw stage_error("frame csv shape does not match axes: " + file);
    }
    raw.frames.push_back(std::move(data));
  }
  return raw;
}

std::filesystem::path write_spectrum(const ComplexSpectrum2D& spec,
                                     const std::filesystem::path& dir,
                                     const std::string& stem, const json& provenance,
                                     bool modulus_csv,
                                     std::vector<std::filesystem::path>& written) {
  std::filesystem::create_directories(dir);
  const ComplexSpectrum2D uniform = resample_to_uniform(spec);

  Array2D<double> real_part(uniform.data.rows(), uniform.data.cols());
  Array2D<double> imag_part(uniform.data.rows(), uniform.data.cols());
  for (std::size_t i = 0; i < uniform.data.size(); ++i) {
    real_part.data()[i] = uniform.data.data()[i].real();
    imag_part.data()[i] = uniform.data.data()[i].imag();
  }

  json sidecar;
  sidecar["format"] = kSpectrumFormat;
  sidecar["units"] = {{"time", "ps"}, {"angular_frequency", "rad/ps"}};
  sidecar["quantum"] = to_string(spec.kind);
  sidecar["tau_ps"] = spec.tau;
  sidecar["retrieval_sign"] = spec.retrieval_sign;
  sidecar["calibration_rad_ps"] = spec.calibration_offset;
  sidecar["omega_T_rad_ps"] = uniform.omega_T_axis;
  sidecar["omega_t_rad_ps"] = uniform.omega_t_axis;
  if (!spec.uniform_axis()) {
    sidecar["column_offsets_rad_ps"] = spec.column_offsets;
  }
  json files;
  files["real"] = stem + "_real.csv";
  files["imag"] = stem + "_imag.csv";
  write_text(dir / (stem + "_real.csv"), csv_text(real_part), written);
  write_text(dir / (stem + "_imag.csv"), csv_text(imag_part), written);
  if (modulus_csv) {
    Array2D<double> mag(uniform.data.rows(), uniform.data.cols());
    for (std::size_t i = 0; i < uniform.data.size(); ++i) {
      mag.data()[i] = std::abs(uniform.data.data()[i]);
    }
    files["modulus"] = stem + "_abs.csv";
    write_text(dir / (stem + "_abs.csv"), csv_text(mag), written);
  }
  sidecar["files"] = std::move(files);
  sidecar["provenance"] = provenance;

  const std::filesystem::path sidecar_path = dir / (stem + ".json");
  write_text(sidecar_path, sidecar.dump(2) + "\n", written);
  return sidecar_path;
}

ComplexSpectrum2D read_spectrum(const std::filesystem::path& sidecar) {
  const json doc = json_file(sidecar, "spectrum sidecar");
  if (doc.value("format", "") != kSpectrumFormat) {
    throw stage_error("not a spectrum sidecar: " + sidecar.string());
  }
  ComplexSpectrum2D spec;
  const auto quantum = doc.at("quantum").get<std::string>();
  spec.kind = quantum == "2Q" ? Quantum::TwoQuantum : Quantum::ZeroQuantum;
  spec.tau = doc.at("tau_ps").get<double>();
  spec.retrieval_sign = doc.at("retrieval_sign").get<int>();
  spec.calibration_offset = doc.at("calibration_rad_ps").get<double>();
  spec.omega_T_axis = axis_from_json(doc.at("omega_T_rad_ps"), "omega_T_rad_ps");
  spec.omega_t_axis = axis_from_json(doc.at("omega_t_rad_ps"), "omega_t_rad_ps");

  const auto dir = sidecar.parent_path();
  const Array2D<double> real_part =
      read_csv(dir / doc.at("files").at("real").get<std::string>());
  const Array2D<double> imag_part =
      read_csv(dir / doc.at("files").at("imag").get<std::string>());
  if (!real_part.same_shape(imag_part) ||
      real_part.rows() != spec.omega_T_axis.size() ||
      real_part.cols() != spec.omega_t_axis.size()) {
    throw stage_error("spectrum csv shapes do not match axes: " + sidecar.string());
  }
  spec.data = Array2D<cplx>(real_part.rows(), real_part.cols());
  for (std::size_t i = 0; i < spec.data.size(); ++i) {
    spec.data.data()[i] = cplx(real_part.data()[i], imag_part.data()[i]);
  }
  return spec;
}

json match_report_json(const MatchReport& report) {
  auto peak_json = [](const Peak& p) {
    return json{{"omega_T_thz", rad_ps_to_thz(p.omega_T)},
                {"omega_t_thz", rad_ps_to_thz(p.omega_t)},
                {"modulus", p.modulus},
                {"label", p.label},
                {"masked", p.masked}};
  };
  json matched = json::array();
  for (const auto& pair : report.matched) {
    matched.push_back({{"predicted", peak_json(pair.predicted)},
                       {"found", peak_json(pair.found)},
                       {"residual_thz",
                        {{"omega_T", rad_ps_to_thz(pair.d_omega_T)},
                         {"omega_t", rad_ps_to_thz(pair.d_omega_t)}}}});
  }
  json missed = json::array();
  for (const auto& p : report.missed) missed.push_back(peak_json(p));
  json extras = json::array();
  for (const auto& p : report.extras) extras.push_back(peak_json(p));
  return json{{"complete", report.complete()},
              {"tolerance_thz", rad_ps_to_thz(report.tolerance)},
              {"matched", std::move(matched)},
              {"missed", std::move(missed)},
              {"extras", std::move(extras)}};
}

}  // namespace cforge
