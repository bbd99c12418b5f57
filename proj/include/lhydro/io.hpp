#pragma once

#include "lhydro/dynamics.hpp"
#include "lhydro/fields.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace lhydro {

/// Config file problem; line is 1-based, 0 when not tied to a line.
struct ConfigError : std::runtime_error {
  int line;
  explicit ConfigError(const std::string& msg, int line_ = 0)
      : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg : msg),
        line(line_) {}
};

/// Snapshot file problem (missing, malformed, or shape mismatch).
struct SnapshotError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class InitKind { TaylorGreen, RandomSolenoidal, File };

struct RunConfig {
  int n = 4;
  double h = 1.0;
  double nu = 0.01;
  double dt = 0.0;  // 0 = auto via suggest_dt
  double t_end = 0.0;
  InitKind init = InitKind::TaylorGreen;
  std::string init_path;  // only for init = file:<path>
  std::uint64_t seed = 0;
  double amplitude = 1.0;
  long output_every = 1;
  std::string out_dir = "out";
  double solver_tol = 1e-10;

  LatticeConfig lattice() const { return LatticeConfig{n, h}; }
  void validate() const;  // throws ConfigError (line 0)

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Line-oriented "key = value" text with "#" comments. Unknown keys, odd n
/// and non-finite numbers are reported with their line number.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical rendering, one key per line in a fixed order, doubles at 17
/// significant digits. parse_config(format_config(c)) == c, and the
/// rendering is a fixed point of parse-then-format.
std::string format_config(const RunConfig& config);

/// SplitMix64 (Steele, Lea, Flood 2014). Chosen so the seeded runs are
/// reproducible bit for bit from the seed alone, in any language: the whole
/// generator is three xor-shift-multiply lines on a 64-bit counter.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi) from the top 53 bits.
  double uniform(double lo, double hi) {
    double u01 = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u01;
  }
};

/// On-disk velocity snapshot: header "lhydro v1, n=<n>, h=<h>, t=<t>", then
/// n^3 lines "i,j,k,vx,vy,vz" with i major, then j, then k, 17 significant
/// digits. Write, read, write is byte identical.
struct Snapshot {
  int n = 0;
  double h = 1.0;
  double t = 0.0;
  VectorField field;
};

void write_snapshot(std::ostream& os, const Snapshot& snap);
void write_snapshot(const std::string& path, const Snapshot& snap);
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot(const std::string& path);

/// Initial velocity per config.init, then projected divergence free:
///   taylor_green      amplitude * (sin(2*pi*i/n) cos(2*pi*j/n),
///                                  -cos(2*pi*i/n) sin(2*pi*j/n), 0)
///   random_solenoidal seeded uniform components in [-amplitude, amplitude],
///                     drawn site by site, components x then y then z
///   file:<path>       read snapshot (n must match config)
VectorField make_initial(const RunConfig& config);

/// Fixed-step RK4 run over ceil(t_end / dt) steps. Writes
/// out_dir/diagnostics.csv (header "step,t,kinetic_energy,divergence_norm,
/// enstrophy,px,py,pz") and out_dir/snapshot_<step>.csv at step 0, every
/// output_every steps, and the final step. Deterministic given the config.
/// Returns 0, or 1 after reporting a non-finite field with its step index.
int cmd_simulate(const RunConfig& config, std::ostream& err);

/// Reads a snapshot, prints the norms of the three Hodge parts of the
/// braced field and the divergence norm. Returns 0.
int cmd_decompose(const RunConfig& config, const std::string& snapshot_path, std::ostream& out);

}  // namespace lhydro
