#ifndef ACG_PERSIST_HPP
#define ACG_PERSIST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "acg/sampler.hpp"

namespace acg {

/// Path-archive format, little-endian binary:
///   magic "ACPATH1\0", u32 version, u32 n (interior points),
///   f64 x_minus, f64 x_plus, u64 count, u64 config_hash,
///   then count * (n+2) f64 values.
struct ArchiveHeader {
  std::uint32_t version = 1;
  std::uint32_t n = 0;
  double x_minus = 0.0;
  double x_plus = 0.0;
  std::uint64_t count = 0;
  std::uint64_t config_hash = 0;
};

void save_paths(const std::string& file, const Grid& grid, const std::vector<Path>& paths,
                std::uint64_t config_hash = 0);
std::vector<Path> load_paths(const std::string& file, ArchiveHeader* header = nullptr);

void save_ensemble(const std::string& file, const Ensemble& ens);
Ensemble load_ensemble(const std::string& file);

/// CSV export with (x, u) columns, one block per path separated by blank
/// lines (gnuplot-friendly).
void export_csv(const std::string& file, const std::vector<Path>& paths);

/// Atomic write of a text/JSON payload (write temp + rename).
void write_text_atomic(const std::string& file, const std::string& payload);
std::string read_text(const std::string& file);

}  // namespace acg

#endif
