// io.hpp — CSV/JSON serialization of results, flat key-value config files
// and atomic output writes.
#pragma once

#include "ptring/dynamics.hpp"
#include "ptring/phase.hpp"
#include "ptring/spectra.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace ptring::io {

/// %.12g formatting; the canonical number representation in all CSV output.
std::string fmt12(double x);
/// %.6g rounded copy for human diffing of normalized quantities.
std::string fmt6(double x);

// CSV renderers. Single header row, comma separators, LF endings.
std::string spectrum_csv(const Spectrum& s);
std::string ring_chain_csv(const std::vector<double>& diff);
std::string phase_csv(const std::vector<PhaseDiagram>& diagrams);
std::string chirality_csv(const ChiralityCurve& curve, double gamma_pt);

/// Trajectory dump rows (t, site, re_f, im_f, intensity) for the states
/// sampled at t = 0, dt, ..., T. Site intensity column is |f_site|^2.
std::string trajectory_csv(const std::vector<WaveState>& samples);

// JSON mirrors of the CSV payloads. Normalized quantities carry an extra
// 6-digit rounded copy.
nlohmann::json spectrum_json(const Spectrum& s);
nlohmann::json ring_chain_json(const std::vector<double>& diff);
nlohmann::json phase_json(const std::vector<PhaseDiagram>& diagrams);
nlohmann::json chirality_json(const ChiralityCurve& curve, double gamma_pt);
nlohmann::json trajectory_json(const std::vector<WaveState>& samples);

/// Writes content to path atomically: data lands in "<path>.partial" first
/// and is renamed on success, so an interrupted run leaves only .partial
/// files behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Parses a flat key-value text file: one `key = value` (or `key value`)
/// pair per line, '#' comments, blank lines ignored. Duplicate keys are an
/// error.
std::map<std::string, std::string> parse_flat_config(const std::filesystem::path& path);

}  // namespace ptring::io
