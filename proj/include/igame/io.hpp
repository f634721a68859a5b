#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "igame/multigrid.hpp"
#include "igame/policy.hpp"
#include "igame/solver.hpp"

namespace igame {

namespace fs = std::filesystem;

/// 64-bit FNV-1a, as 16 hex digits.
inline std::string content_hash(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Shortest text that reads back to the same double.
inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::ofstream open_out(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  return f;
}

inline void write_json(const fs::path& p, const nlohmann::json& j) { open_out(p) << j.dump(2) << '\n'; }

inline nlohmann::json read_json(const fs::path& p) {
  std::ifstream f(p);
  if (!f) throw std::runtime_error("cannot read " + p.string());
  return nlohmann::json::parse(f);
}

template <std::size_t N>
std::string point_header(const char* prefix = "x") {
  std::string s;
  for (std::size_t i = 0; i < N; ++i) s += "," + std::string(prefix) + std::to_string(i);
  return s;
}

template <std::size_t N>
std::string point_cells(const Point<N>& p) {
  std::string s;
  for (std::size_t i = 0; i < N; ++i) s += "," + fmt(p[i]);
  return s;
}

inline nlohmann::json to_json(const Schedule& s) {
  return {{"alpha_exp", s.alpha_exp}, {"d", s.d},           {"h", s.h},
          {"kappa", s.kappa},         {"dilation", s.dilation}, {"goal_halo", s.goal_halo}};
}

inline nlohmann::json to_json(const ControlPool& p) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto c = p[i];
    rows.push_back(std::vector<double>(c.begin(), c.end()));
  }
  return rows;
}

// Solver traces --------------------------------------------------------------

/// id,x0..: the sample set in insertion order.
template <std::size_t N>
void write_samples_csv(const fs::path& p, const std::vector<Point<N>>& pts) {
  auto f = open_out(p);
  f << "id" << point_header<N>() << '\n';
  for (std::size_t i = 0; i < pts.size(); ++i) f << i << point_cells(pts[i]) << '\n';
}

/// id,value,control,child,flag; control and child are -1 when unset.
inline void write_values_csv(const fs::path& p, const Checkpoint& cp) {
  auto f = open_out(p);
  f << "id,value,control,child,flag\n";
  for (std::size_t i = 0; i < cp.values.size(); ++i) {
    f << i << ',' << fmt(cp.values[i]) << ',';
    if (cp.controls[i] == kNoControl) f << -1; else f << cp.controls[i];
    f << ',';
    if (cp.child[i] == kNoSample) f << -1; else f << cp.child[i];
    f << ',' << cp.flag[i] << '\n';
  }
}

/// n,d,h,kappa,dilation,goal_halo,wall_ms; one row per checkpoint.
inline void write_schedule_csv(const fs::path& p, const std::vector<Checkpoint>& cps) {
  auto f = open_out(p);
  f << "n,d,h,kappa,dilation,goal_halo,wall_ms\n";
  for (const auto& c : cps)
    f << c.n << ',' << fmt(c.schedule.d) << ',' << fmt(c.schedule.h) << ',' << fmt(c.schedule.kappa) << ','
      << fmt(c.schedule.dilation) << ',' << fmt(c.schedule.goal_halo) << ',' << fmt(c.wall_ms) << '\n';
}

/// Whole trace under `dir`: samples.csv, values_<n>.csv, schedule.csv.
template <std::size_t N>
void write_trace(const fs::path& dir, const SolutionTrace<N>& t) {
  write_samples_csv<N>(dir / "samples.csv", t.samples);
  for (const auto& cp : t.checkpoints) write_values_csv(dir / ("values_" + std::to_string(cp.n) + ".csv"), cp);
  write_schedule_csv(dir / "schedule.csv", t.checkpoints);
}

// Grid solutions -------------------------------------------------------------

/// id,i0..,x0..,value
template <std::size_t N>
void write_grid_csv(const fs::path& p, const GridSolution<N>& s) {
  auto f = open_out(p);
  f << "id" << point_header<N>("i") << point_header<N>() << ",value\n";
  for (SampleId id = 0; id < s.lattice.size(); ++id) {
    f << id;
    const auto k = s.lattice.multi_index(id);
    for (std::size_t i = 0; i < N; ++i) f << ',' << k[i];
    f << point_cells(s.lattice.point(id)) << ',' << fmt(s.values[id]) << '\n';
  }
}

template <std::size_t N>
nlohmann::json grid_metadata(const std::string& game_id, const GridSolution<N>& s) {
  nlohmann::json j;
  j["game"] = game_id;
  j["resolution"] = std::vector<std::size_t>(s.lattice.counts().begin(), s.lattice.counts().end());
  j["schedule"] = to_json(s.schedule);
  j["halo_rule"] = to_string(s.disc.halo_rule);
  j["tol"] = s.tol;
  j["sweeps"] = s.sweeps;
  j["wall_ms"] = s.wall_ms;
  j["angel_pool"] = to_json(s.angel_pool);
  j["demon_pool"] = to_json(s.demon_pool);
  return j;
}

template <std::size_t N>
void write_grid(const fs::path& stem, const std::string& game_id, const GridSolution<N>& s) {
  write_grid_csv(fs::path(stem.string() + ".csv"), s);
  write_json(fs::path(stem.string() + ".json"), grid_metadata(game_id, s));
}

/// Reads the values column back into a solution whose lattice, schedule and
/// pools the caller already set up.
template <std::size_t N>
void read_grid_values(const fs::path& p, GridSolution<N>& s) {
  std::ifstream f(p);
  if (!f) throw std::runtime_error("cannot read " + p.string());
  std::string line;
  std::getline(f, line);
  s.values.assign(s.lattice.size(), 1.0);
  std::size_t rows = 0;
  while (std::getline(f, line)) {
    const auto cut = line.rfind(',');
    const auto id = std::stoul(line.substr(0, line.find(',')));
    if (id >= s.values.size()) throw std::runtime_error("grid csv: id out of range in " + p.string());
    s.values[id] = std::stod(line.substr(cut + 1));
    ++rows;
  }
  if (rows != s.lattice.size()) throw std::runtime_error("grid csv: row count mismatch in " + p.string());
}

// Outcome maps ---------------------------------------------------------------

/// i0..,x0..,kind,time
template <std::size_t N>
void write_outcome_csv(const fs::path& p, const OutcomeMap<N>& m) {
  auto f = open_out(p);
  f << point_header<N>("i").substr(1) << point_header<N>() << ",kind,time\n";
  for (SampleId id = 0; id < m.starts.size(); ++id) {
    const auto k = m.starts.multi_index(id);
    for (std::size_t i = 0; i < N; ++i) f << (i ? "," : "") << k[i];
    f << point_cells(m.starts.point(id)) << ',' << to_string(m.kinds[id]) << ',' << fmt(m.times[id]) << '\n';
  }
}

template <std::size_t N>
nlohmann::json outcome_summary(const OutcomeMap<N>& m) {
  return {{"starts", m.starts.size()},
          {"capture", m.captures},
          {"escape", m.escapes},
          {"timeout", m.timeouts}};
}

}  // namespace igame
