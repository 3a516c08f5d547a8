#include "irrsim/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "irrsim/errors.hpp"

#ifndef IRRSIM_VERSION
#define IRRSIM_VERSION "0.0.0"
#endif

namespace irrsim::io {
namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

// Reads lines, dropping a trailing CR and skipping blank lines. Keeps track of
// the 1-based line number of the last line returned.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++number_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    }
    std::size_t number() const { return number_; }

private:
    std::istream& in_;
    std::size_t number_ = 0;
};

void expect_header(LineReader& r, const std::string& expected) {
    std::string line;
    if (!r.next(line)) throw ParseError("missing header, expected '" + expected + "'", 1);
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (line != expected)
        throw ParseError("unexpected header '" + line + "', expected '" + expected + "'", r.number());
}

double to_double(const std::string& s, const char* what, std::size_t line) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc() || ptr != end)
        throw ParseError(std::string("invalid ") + what + " '" + s + "'", line);
    return v;
}

long long to_int(const std::string& s, const char* what, std::size_t line) {
    long long v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc() || ptr != end)
        throw ParseError(std::string("invalid ") + what + " '" + s + "'", line);
    return v;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    return in;
}

template <typename F>
void with_row(std::size_t line, F&& f) {
    try {
        f();
    } catch (const ParseError&) {
        throw;
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), line);
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw Error("cannot format number");
    return std::string(buf, ptr);
}

std::string artifact_version() { return IRRSIM_VERSION; }

std::vector<TeamRecord> parse_teams_csv(std::istream& in) {
    LineReader r(in);
    expect_header(r, "team_id,name,elo,pot,association");
    std::vector<TeamRecord> out;
    std::unordered_set<std::string> seen;
    std::string line;
    while (r.next(line)) {
        const auto f = split(line);
        const auto ln = r.number();
        if (f.size() != 5) throw ParseError("expected 5 fields, found " + std::to_string(f.size()), ln);
        TeamRecord t;
        t.team_id = f[0];
        t.name = f[1];
        t.elo = to_double(f[2], "elo", ln);
        if (!f[3].empty()) t.pot = static_cast<int>(to_int(f[3], "pot", ln));
        t.association = f[4];
        with_row(ln, [&] { t.validate(); });
        if (!seen.insert(t.team_id).second) throw DuplicateKeyError(t.team_id, ln);
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<TeamRecord> parse_teams_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    return parse_teams_csv(in);
}

std::vector<MatchObservation> parse_matches_csv(std::istream& in) {
    LineReader r(in);
    expect_header(r, "home_id,away_id,home_goals,away_goals,home_elo,away_elo");
    std::vector<MatchObservation> out;
    std::string line;
    while (r.next(line)) {
        const auto f = split(line);
        const auto ln = r.number();
        if (f.size() != 6) throw ParseError("expected 6 fields, found " + std::to_string(f.size()), ln);
        MatchObservation m;
        m.home_id = f[0];
        m.away_id = f[1];
        const auto hg = to_int(f[2], "home_goals", ln);
        const auto ag = to_int(f[3], "away_goals", ln);
        if (hg < 0 || ag < 0) throw ParseError("goals must be non-negative", ln);
        if (hg > 1000 || ag > 1000) throw ParseError("implausible goal count", ln);
        m.home_goals = static_cast<int>(hg);
        m.away_goals = static_cast<int>(ag);
        m.home_elo = to_double(f[4], "home_elo", ln);
        m.away_elo = to_double(f[5], "away_elo", ln);
        with_row(ln, [&] { m.validate(); });
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<MatchObservation> parse_matches_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    return parse_matches_csv(in);
}

Schedule parse_schedule_csv(std::istream& in) {
    LineReader r(in);
    expect_header(r, "home_id,away_id");
    Schedule s;
    std::string line;
    while (r.next(line)) {
        const auto f = split(line);
        const auto ln = r.number();
        if (f.size() != 2) throw ParseError("expected 2 fields, found " + std::to_string(f.size()), ln);
        Fixture fx{f[0], f[1]};
        with_row(ln, [&] { fx.validate(); });
        s.fixtures.push_back(std::move(fx));
    }
    return s;
}

Schedule parse_schedule_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    return parse_schedule_csv(in);
}

void write_schedule_csv(const Schedule& schedule, std::ostream& out) {
    out << "home_id,away_id\n";
    for (const auto& f : schedule.fixtures) out << f.home_id << ',' << f.away_id << '\n';
}

namespace {

std::string curve_row(const ThresholdCurve& c, int points, const CurvePoint& e) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s,%d,%.6f,%lld,%d", std::string(to_string(c.cutoff)).c_str(), points,
                  e.probability, static_cast<long long>(e.sample_count),
                  e.sample_count < kLowSampleThreshold ? 1 : 0);
    return buf;
}

std::vector<const ThresholdCurve*> ordered(std::span<const ThresholdCurve> curves) {
    std::vector<const ThresholdCurve*> out;
    for (auto cut : {Cutoff::RoundOf16, Cutoff::Playoff})
        for (const auto& c : curves)
            if (c.cutoff == cut) out.push_back(&c);
    return out;
}

}  // namespace

void emit_curve_csv(std::span<const ThresholdCurve> curves, std::ostream& out) {
    out << "cutoff,points,probability,sample_count,low_sample_flag\n";
    for (const auto* c : ordered(curves))
        for (const auto& [points, e] : c->entries) out << curve_row(*c, points, e) << '\n';
}

void emit_curve_csv(std::span<const ThresholdCurve> curves, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    emit_curve_csv(curves, out);
    if (!out) throw Error("write failed for '" + path.string() + "'");
}

std::vector<ThresholdCurve> parse_curve_csv(std::istream& in) {
    LineReader r(in);
    expect_header(r, "cutoff,points,probability,sample_count,low_sample_flag");
    std::map<Cutoff, ThresholdCurve> curves;
    std::string line;
    while (r.next(line)) {
        const auto f = split(line);
        const auto ln = r.number();
        if (f.size() != 5) throw ParseError("expected 5 fields, found " + std::to_string(f.size()), ln);
        const auto cut = cutoff_from_string(f[0]);
        if (!cut) throw ParseError("unknown cutoff '" + f[0] + "'", ln);
        const auto points = static_cast<int>(to_int(f[1], "points", ln));
        const double p = to_double(f[2], "probability", ln);
        if (!(p >= 0.0 && p <= 1.0)) throw ParseError("probability outside [0,1]", ln);
        const auto count = to_int(f[3], "sample_count", ln);
        auto& curve = curves[*cut];
        curve.cutoff = *cut;
        if (!curve.entries.emplace(points, CurvePoint{p, count}).second)
            throw DuplicateKeyError(f[0] + "/" + f[1], ln);
    }
    std::vector<ThresholdCurve> out;
    for (auto& [cut, c] : curves) out.push_back(std::move(c));
    return out;
}

std::vector<ThresholdCurve> parse_curve_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    return parse_curve_csv(in);
}

void emit_sweep_draws_csv(const SweepResult& sweep, std::ostream& out) {
    out << "rho,avg_draws\n";
    char buf[96];
    for (std::size_t i = 0; i < sweep.rho_grid.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.4f,%.4f", sweep.rho_grid[i], sweep.avg_draws[i]);
        out << buf << '\n';
    }
}

void emit_sweep_curves_csv(const SweepResult& sweep, std::ostream& out) {
    out << "rho,cutoff,points,probability,sample_count,low_sample_flag\n";
    char rho[32];
    for (std::size_t i = 0; i < sweep.rho_grid.size(); ++i) {
        std::snprintf(rho, sizeof rho, "%.4f", sweep.rho_grid[i]);
        const ThresholdCurve both[] = {sweep.curves[i].direct, sweep.curves[i].playoff};
        for (const auto* c : ordered(both))
            for (const auto& [points, e] : c->entries) out << rho << ',' << curve_row(*c, points, e) << '\n';
    }
}

ParamsFile params_file_from(const FitResult& fit) {
    ParamsFile f;
    f.kind = fit.kind;
    f.params = fit.params;
    f.log_likelihood = fit.log_likelihood;
    f.n_obs = fit.n_obs;
    f.converged = fit.converged;
    f.std_errors = fit.std_errors;
    return f;
}

void write_params(const ParamsFile& file, std::ostream& out) {
    const auto& p = file.params;
    out << "# irrsim fitted parameters\n";
    out << "model=" << to_string(file.kind) << '\n';
    out << "beta0=" << format_double(p.beta0) << '\n';
    out << "beta1=" << format_double(p.beta1) << '\n';
    out << "beta2=" << format_double(p.beta2) << '\n';
    out << "rho=" << format_double(p.rho) << '\n';
    out << "elo_mean=" << format_double(p.elo_mean) << '\n';
    out << "elo_sd=" << format_double(p.elo_sd) << '\n';
    if (file.log_likelihood) out << "log_likelihood=" << format_double(*file.log_likelihood) << '\n';
    if (file.n_obs) out << "n_obs=" << *file.n_obs << '\n';
    if (file.converged) out << "converged=" << (*file.converged ? "true" : "false") << '\n';
    if (file.std_errors) {
        static constexpr const char* names[] = {"se_beta0", "se_beta1", "se_beta2", "se_rho"};
        for (std::size_t i = 0; i < file.std_errors->size() && i < 4; ++i)
            out << names[i] << '=' << format_double((*file.std_errors)[i]) << '\n';
    }
}

ParamsFile read_params(std::istream& in) {
    LineReader r(in);
    std::map<std::string, std::pair<std::string, std::size_t>> kv;
    std::string line;
    while (r.next(line)) {
        if (line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value", r.number());
        const auto key = line.substr(0, eq);
        if (!kv.emplace(key, std::pair{line.substr(eq + 1), r.number()}).second)
            throw DuplicateKeyError(key, r.number());
    }
    auto need = [&](const std::string& key) -> const std::pair<std::string, std::size_t>& {
        const auto it = kv.find(key);
        if (it == kv.end()) throw ParseError("missing key '" + key + "'", r.number());
        return it->second;
    };
    auto num = [&](const std::string& key) {
        const auto& [v, ln] = need(key);
        return to_double(v, key.c_str(), ln);
    };

    ParamsFile f;
    const auto& [model, model_line] = need("model");
    const auto kind = model_kind_from_string(model);
    if (!kind) throw ParseError("unknown model '" + model + "'", model_line);
    f.kind = *kind;
    f.params = {num("beta0"), num("beta1"), num("beta2"), num("rho"), num("elo_mean"), num("elo_sd")};
    with_row(model_line, [&] { f.params.validate(); });
    if (f.kind == ModelKind::Independent && f.params.rho != 0.0)
        throw ParseError("independent model must have rho=0", need("rho").second);
    if (kv.contains("log_likelihood")) f.log_likelihood = num("log_likelihood");
    if (kv.contains("n_obs")) {
        const auto& [v, ln] = need("n_obs");
        f.n_obs = static_cast<std::size_t>(to_int(v, "n_obs", ln));
    }
    if (kv.contains("converged")) {
        const auto& [v, ln] = need("converged");
        if (v != "true" && v != "false") throw ParseError("converged must be true or false", ln);
        f.converged = v == "true";
    }
    if (kv.contains("se_beta0")) {
        std::vector<double> se{num("se_beta0"), num("se_beta1"), num("se_beta2")};
        if (kv.contains("se_rho")) se.push_back(num("se_rho"));
        f.std_errors = std::move(se);
    }
    return f;
}

ParamsFile read_params(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_params(in);
}

void write_manifest(const RunManifest& m, std::ostream& out) {
    out << "# irrsim run manifest\n";
    out << "artifact_version=" << artifact_version() << '\n';
    out << "command=" << m.command << '\n';
    for (const auto& [role, path] : m.inputs) out << "input." << role << '=' << path << '\n';
    out << "params_source=" << m.params_source << '\n';
    out << "model=" << to_string(m.kind) << '\n';
    out << "beta0=" << format_double(m.params.beta0) << '\n';
    out << "beta1=" << format_double(m.params.beta1) << '\n';
    out << "beta2=" << format_double(m.params.beta2) << '\n';
    out << "rho=" << format_double(m.params.rho) << '\n';
    out << "elo_mean=" << format_double(m.params.elo_mean) << '\n';
    out << "elo_sd=" << format_double(m.params.elo_sd) << '\n';
    if (!m.schedule_mode.empty()) out << "schedule_mode=" << m.schedule_mode << '\n';
    out << "runs=" << m.config.n_runs << '\n';
    out << "seed=" << m.config.master_seed << '\n';
    out << "max_goals=" << m.config.max_goals << '\n';
    out << "cutoff_direct=" << m.config.cutoffs.direct << '\n';
    out << "cutoff_playoff=" << m.config.cutoffs.playoff << '\n';
    out << "conditioning=" << to_string(m.config.conditioning) << '\n';
    out << m.extra;
    out << "output=" << m.output << '\n';
}

void write_summary_table(const MatchSummary& s, const std::string& label, std::ostream& out) {
    char buf[256];
    out << "League | Home win | Draw | Away win | Avg points per match | Home goals | Away goals | "
           "Total goals | Lopsided matches\n";
    std::snprintf(buf, sizeof buf, "%s | %.2f%% | %.2f%% | %.2f%% | %.2f | %.2f | %.2f | %.2f | %.2f%%\n",
                  label.c_str(), 100.0 * s.home_win_share(), 100.0 * s.draw_share(), 100.0 * s.away_win_share(),
                  s.avg_points_per_match(), s.avg_home_goals(), s.avg_away_goals(), s.avg_total_goals(),
                  100.0 * s.lopsided_share());
    out << buf;
    out << "matches=" << s.matches << '\n';
}

}  // namespace irrsim::io
