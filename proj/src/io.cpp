#include "lhydro/io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

namespace lhydro {

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& value, const std::string& key, int line) {
  double x = 0.0;
  std::size_t pos = 0;
  try {
    x = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("invalid number for " + key + ": '" + value + "'", line);
  }
  if (pos != value.size()) throw ConfigError("trailing characters after " + key + " value", line);
  if (!std::isfinite(x)) throw ConfigError(key + " must be finite", line);
  return x;
}

long parse_long(const std::string& value, const std::string& key, int line) {
  long x = 0;
  std::size_t pos = 0;
  try {
    x = std::stol(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for " + key + ": '" + value + "'", line);
  }
  if (pos != value.size()) throw ConfigError("trailing characters after " + key + " value", line);
  return x;
}

std::uint64_t parse_u64(const std::string& value, const std::string& key, int line) {
  if (!value.empty() && value[0] == '-') throw ConfigError(key + " must be non-negative", line);
  std::uint64_t x = 0;
  std::size_t pos = 0;
  try {
    x = std::stoull(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for " + key + ": '" + value + "'", line);
  }
  if (pos != value.size()) throw ConfigError("trailing characters after " + key + " value", line);
  return x;
}

std::string init_to_string(InitKind kind, const std::string& path) {
  switch (kind) {
    case InitKind::TaylorGreen: return "taylor_green";
    case InitKind::RandomSolenoidal: return "random_solenoidal";
    case InitKind::File: return "file:" + path;
  }
  return "taylor_green";
}

}  // namespace

void RunConfig::validate() const {
  if (n < 4) throw ConfigError("n must be at least 4");
  if (n % 2 != 0) throw ConfigError("n must be even");
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("h must be positive and finite");
  if (nu < 0.0 || !std::isfinite(nu)) throw ConfigError("nu must be non-negative and finite");
  if (dt < 0.0 || !std::isfinite(dt)) throw ConfigError("dt must be non-negative and finite");
  if (t_end < 0.0 || !std::isfinite(t_end)) throw ConfigError("t_end must be non-negative and finite");
  if (!std::isfinite(amplitude)) throw ConfigError("amplitude must be finite");
  if (output_every < 1) throw ConfigError("output_every must be at least 1");
  if (!(solver_tol > 0.0) || !std::isfinite(solver_tol)) throw ConfigError("solver_tol must be positive and finite");
  if (init == InitKind::File && init_path.empty()) throw ConfigError("init = file: requires a path");
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (std::size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", lineno);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key", lineno);
    if (value.empty()) throw ConfigError("missing value for " + key, lineno);

    if (key == "n") {
      long v = parse_long(value, key, lineno);
      if (v % 2 != 0) throw ConfigError("n must be even", lineno);
      if (v < 4) throw ConfigError("n must be at least 4", lineno);
      cfg.n = static_cast<int>(v);
    } else if (key == "h") {
      cfg.h = parse_double(value, key, lineno);
    } else if (key == "nu") {
      cfg.nu = parse_double(value, key, lineno);
    } else if (key == "dt") {
      cfg.dt = parse_double(value, key, lineno);
    } else if (key == "t_end") {
      cfg.t_end = parse_double(value, key, lineno);
    } else if (key == "init") {
      if (value == "taylor_green") {
        cfg.init = InitKind::TaylorGreen;
        cfg.init_path.clear();
      } else if (value == "random_solenoidal") {
        cfg.init = InitKind::RandomSolenoidal;
        cfg.init_path.clear();
      } else if (value.rfind("file:", 0) == 0) {
        cfg.init = InitKind::File;
        cfg.init_path = value.substr(5);
        if (cfg.init_path.empty()) throw ConfigError("init = file: requires a path", lineno);
      } else {
        throw ConfigError("init must be taylor_green, random_solenoidal or file:<path>", lineno);
      }
    } else if (key == "seed") {
      cfg.seed = parse_u64(value, key, lineno);
    } else if (key == "amplitude") {
      cfg.amplitude = parse_double(value, key, lineno);
    } else if (key == "output_every") {
      cfg.output_every = parse_long(value, key, lineno);
      if (cfg.output_every < 1) throw ConfigError("output_every must be at least 1", lineno);
    } else if (key == "out_dir") {
      cfg.out_dir = value;
    } else if (key == "solver_tol") {
      cfg.solver_tol = parse_double(value, key, lineno);
    } else {
      throw ConfigError("unknown key '" + key + "'", lineno);
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string format_config(const RunConfig& config) {
  std::ostringstream out;
  out << "n = " << config.n << "\n";
  out << "h = " << g17(config.h) << "\n";
  out << "nu = " << g17(config.nu) << "\n";
  out << "dt = " << g17(config.dt) << "\n";
  out << "t_end = " << g17(config.t_end) << "\n";
  out << "init = " << init_to_string(config.init, config.init_path) << "\n";
  out << "seed = " << config.seed << "\n";
  out << "amplitude = " << g17(config.amplitude) << "\n";
  out << "output_every = " << config.output_every << "\n";
  out << "out_dir = " << config.out_dir << "\n";
  out << "solver_tol = " << g17(config.solver_tol) << "\n";
  return out.str();
}

void write_snapshot(std::ostream& os, const Snapshot& snap) {
  const int n = snap.n;
  os << "lhydro v1, n=" << n << ", h=" << g17(snap.h) << ", t=" << g17(snap.t) << "\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        int s = (i * n + j) * n + k;
        os << i << ',' << j << ',' << k << ',' << g17(snap.field.at(0, s)) << ','
           << g17(snap.field.at(1, s)) << ',' << g17(snap.field.at(2, s)) << "\n";
      }
    }
  }
}

void write_snapshot(const std::string& path, const Snapshot& snap) {
  std::ofstream os(path);
  if (!os) throw SnapshotError("cannot write snapshot: " + path);
  write_snapshot(os, snap);
  os.flush();
  if (!os) throw SnapshotError("write failed: " + path);
}

Snapshot read_snapshot(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw SnapshotError("empty snapshot file");
  Snapshot snap;
  if (std::sscanf(line.c_str(), "lhydro v1, n=%d, h=%lf, t=%lf", &snap.n, &snap.h, &snap.t) != 3) {
    throw SnapshotError("bad snapshot header: '" + line + "'");
  }
  if (snap.n < 1) throw SnapshotError("bad snapshot n");
  const int n = snap.n;
  snap.field = VectorField(n);
  long expected = static_cast<long>(n) * n * n;
  for (long row = 0; row < expected; ++row) {
    if (!std::getline(is, line)) {
      throw SnapshotError("truncated snapshot: expected " + std::to_string(expected) + " data lines");
    }
    int i, j, k;
    double vx, vy, vz;
    if (std::sscanf(line.c_str(), "%d,%d,%d,%lf,%lf,%lf", &i, &j, &k, &vx, &vy, &vz) != 6) {
      throw SnapshotError("bad snapshot data line " + std::to_string(row + 2) + ": '" + line + "'");
    }
    long want = row;
    int wk = static_cast<int>(want % n);
    int wj = static_cast<int>((want / n) % n);
    int wi = static_cast<int>(want / (static_cast<long>(n) * n));
    if (i != wi || j != wj || k != wk) {
      throw SnapshotError("snapshot indices out of order at data line " + std::to_string(row + 2));
    }
    int s = (i * n + j) * n + k;
    snap.field.at(0, s) = vx;
    snap.field.at(1, s) = vy;
    snap.field.at(2, s) = vz;
  }
  while (std::getline(is, line)) {
    if (!trim(line).empty()) throw SnapshotError("trailing content after snapshot data");
  }
  return snap;
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw SnapshotError("cannot open snapshot: " + path);
  return read_snapshot(is);
}

VectorField make_initial(const RunConfig& config) {
  config.validate();
  Lattice lat(config.lattice());
  const int n = config.n;
  VectorField V(n);

  switch (config.init) {
    case InitKind::TaylorGreen: {
      const double w = 2.0 * std::numbers::pi / n;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          for (int k = 0; k < n; ++k) {
            int s = (i * n + j) * n + k;
            V.at(0, s) = config.amplitude * std::sin(w * i) * std::cos(w * j);
            V.at(1, s) = -config.amplitude * std::cos(w * i) * std::sin(w * j);
          }
        }
      }
      break;
    }
    case InitKind::RandomSolenoidal: {
      SplitMix64 rng(config.seed);
      for (int s = 0; s < lat.sites(); ++s) {
        for (int c = 0; c < 3; ++c) {
          V.at(c, s) = rng.uniform(-config.amplitude, config.amplitude);
        }
      }
      break;
    }
    case InitKind::File: {
      Snapshot snap = read_snapshot(config.init_path);
      if (snap.n != config.n) {
        throw SnapshotError("snapshot n=" + std::to_string(snap.n) + " does not match config n=" +
                            std::to_string(config.n));
      }
      V = snap.field;
      break;
    }
  }

  SolverOptions opts;
  opts.tol = config.solver_tol;
  return unbraces(lat, project_divergence_free(lat, braces(V), opts));
}

namespace {

void write_diagnostics_row(std::ostream& os, const Lattice& lat, long step_idx, const SimState& st) {
  const int nsites = lat.sites();
  double ke = 0.5 * dot(st.u, st.u);
  double div = norm(lat.boundary(st.u));
  Chain vort = lat.star(lat.coboundary(st.u));
  double ens = dot(vort, vort);
  std::array<double, 3> p{};
  for (int axis = 0; axis < 3; ++axis) {
    double sum = 0.0;
    for (int s = 0; s < nsites; ++s) sum += st.u[static_cast<std::size_t>(axis) * nsites + s];
    p[static_cast<std::size_t>(axis)] = sum;
  }
  os << step_idx << ',' << g17(st.t) << ',' << g17(ke) << ',' << g17(div) << ',' << g17(ens) << ','
     << g17(p[0]) << ',' << g17(p[1]) << ',' << g17(p[2]) << "\n";
}

}  // namespace

int cmd_simulate(const RunConfig& config, std::ostream& err) {
  config.validate();
  Lattice lat(config.lattice());
  StepControl ctrl;
  ctrl.solver.tol = config.solver_tol;

  VectorField V0 = make_initial(config);
  SimState state{lat, 0.0, braces(V0), config.nu, config.dt};
  if (state.dt <= 0.0) {
    state.dt = suggest_dt(state, ctrl);
    if (config.t_end > 0.0 && state.dt > config.t_end) state.dt = config.t_end;
  }

  long nsteps = 0;
  if (config.t_end > 0.0) {
    nsteps = static_cast<long>(std::ceil(config.t_end / state.dt - 1e-12));
    if (nsteps < 1) nsteps = 1;
  }

  namespace fs = std::filesystem;
  fs::path dir(config.out_dir);
  fs::create_directories(dir);
  std::ofstream diag(dir / "diagnostics.csv");
  if (!diag) {
    err << "cannot write " << (dir / "diagnostics.csv").string() << "\n";
    return 1;
  }
  diag << "step,t,kinetic_energy,divergence_norm,enstrophy,px,py,pz\n";

  auto emit = [&](long step_idx, const SimState& st) {
    write_diagnostics_row(diag, lat, step_idx, st);
    fs::path snap_path = dir / ("snapshot_" + std::to_string(step_idx) + ".csv");
    write_snapshot(snap_path.string(), Snapshot{config.n, config.h, st.t, unbraces(lat, st.u)});
  };

  emit(0, state);
  for (long s = 1; s <= nsteps; ++s) {
    try {
      state = step(state, Scheme::RK4, ctrl);
    } catch (const std::exception& e) {
      err << "aborted at step " << s << ": " << e.what() << "\n";
      return 1;
    }
    if (s % config.output_every == 0 || s == nsteps) emit(s, state);
  }
  diag.flush();
  if (!diag) {
    err << "write failed: " << (dir / "diagnostics.csv").string() << "\n";
    return 1;
  }
  return 0;
}

int cmd_decompose(const RunConfig& config, const std::string& snapshot_path, std::ostream& out) {
  config.validate();
  Snapshot snap = read_snapshot(snapshot_path);
  if (snap.n != config.n) {
    throw SnapshotError("snapshot n=" + std::to_string(snap.n) + " does not match config n=" +
                        std::to_string(config.n));
  }
  Lattice lat(config.lattice());
  Chain u = braces(snap.field);
  SolverOptions opts;
  opts.tol = config.solver_tol;
  HodgeParts parts = hodge_decompose(lat, u, opts);
  out << "exact_norm = " << g17(norm(parts.exact)) << "\n";
  out << "coexact_norm = " << g17(norm(parts.coexact)) << "\n";
  out << "harmonic_norm = " << g17(norm(parts.harmonic)) << "\n";
  out << "divergence_norm = " << g17(norm(lat.boundary(u))) << "\n";
  return 0;
}

}  // namespace lhydro
