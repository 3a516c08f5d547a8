#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "irrsim/domain.hpp"
#include "irrsim/fitting.hpp"
#include "irrsim/montecarlo.hpp"

// CSV files are UTF-8, comma separated, '.' decimal point, LF line endings.
// Fields are not quoted, so values must not contain commas.
namespace irrsim::io {

// Header: team_id,name,elo,pot,association (pot and association may be empty).
std::vector<TeamRecord> parse_teams_csv(std::istream& in);
std::vector<TeamRecord> parse_teams_csv(const std::filesystem::path& path);

// Header: home_id,away_id,home_goals,away_goals,home_elo,away_elo
std::vector<MatchObservation> parse_matches_csv(std::istream& in);
std::vector<MatchObservation> parse_matches_csv(const std::filesystem::path& path);

// Header: home_id,away_id
Schedule parse_schedule_csv(std::istream& in);
Schedule parse_schedule_csv(const std::filesystem::path& path);
void write_schedule_csv(const Schedule& schedule, std::ostream& out);

// Header: cutoff,points,probability,sample_count,low_sample_flag
// Rows sorted by cutoff (ROUND_OF_16 first) then points; probabilities
// carry six decimals.
void emit_curve_csv(std::span<const ThresholdCurve> curves, std::ostream& out);
void emit_curve_csv(std::span<const ThresholdCurve> curves, const std::filesystem::path& path);
std::vector<ThresholdCurve> parse_curve_csv(std::istream& in);
std::vector<ThresholdCurve> parse_curve_csv(const std::filesystem::path& path);

// rho,avg_draws and rho,cutoff,points,probability,sample_count,low_sample_flag
void emit_sweep_draws_csv(const SweepResult& sweep, std::ostream& out);
void emit_sweep_curves_csv(const SweepResult& sweep, std::ostream& out);

// Flat key=value parameter file. Doubles are written in shortest
// round-trip form so reading a file back reproduces the values exactly.
struct ParamsFile {
    ModelKind kind = ModelKind::Independent;
    ModelParams params;
    std::optional<double> log_likelihood;
    std::optional<std::size_t> n_obs;
    std::optional<bool> converged;
    std::optional<std::vector<double>> std_errors;
};

ParamsFile params_file_from(const FitResult& fit);
void write_params(const ParamsFile& file, std::ostream& out);
ParamsFile read_params(std::istream& in);
ParamsFile read_params(const std::filesystem::path& path);

// Everything needed to regenerate a result file.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;  // role -> path
    std::string params_source;
    ModelKind kind = ModelKind::Independent;
    ModelParams params;
    SimConfig config;
    std::string schedule_mode;
    std::string extra;  // free-form key=value lines, already formatted
    std::string output;
};

void write_manifest(const RunManifest& manifest, std::ostream& out);

void write_summary_table(const MatchSummary& summary, const std::string& label, std::ostream& out);

std::string format_double(double v);  // shortest round-trip
std::string artifact_version();

}  // namespace irrsim::io
